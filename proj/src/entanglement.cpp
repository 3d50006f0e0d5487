#include "entxfer/entanglement.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace entxfer::ent {

namespace {

void check_keep(const states::SubsystemLayout& layout, const std::vector<std::size_t>& keep) {
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
    for (std::size_t k : keep) {
        if (k >= layout.size()) throw std::invalid_argument("partial_trace: factor index out of range");
    }
    for (std::size_t i = 1; i < keep.size(); ++i) {
        if (keep[i] <= keep[i - 1]) throw std::invalid_argument("partial_trace: keep must be strictly increasing");
    }
}

// offsets of every kept (resp. traced) multi-index inside the flat composite index
std::vector<Eigen::Index> subset_offsets(const states::SubsystemLayout& layout,
                                         const std::vector<std::size_t>& subset) {
    const auto strides = layout.strides();
    std::vector<Eigen::Index> offsets{0};
    for (std::size_t k : subset) {
        const Eigen::Index d = layout.factors[k].dim;
        const Eigen::Index st = strides[k];
        std::vector<Eigen::Index> next;
        next.reserve(offsets.size() * d);
        for (Eigen::Index o : offsets) {
            for (Eigen::Index i = 0; i < d; ++i) next.push_back(o + i * st);
        }
        offsets = std::move(next);
    }
    return offsets;
}

} // namespace

void validate(const DensityOperator& rho, double herm_tol, double trace_tol, double psd_tol) {
    if (rho.matrix.rows() != rho.matrix.cols()) throw std::runtime_error("DensityOperator: not square");
    if (rho.matrix.rows() != rho.layout.total_dim()) throw std::runtime_error("DensityOperator: layout mismatch");
    const double herm = (rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm > herm_tol) throw std::runtime_error("DensityOperator: not Hermitian, defect " + std::to_string(herm));
    const double tr = rho.matrix.trace().real();
    if (std::abs(tr - 1.0) > trace_tol) throw std::runtime_error("DensityOperator: trace " + std::to_string(tr));
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -psd_tol) {
        throw std::runtime_error("DensityOperator: negative eigenvalue " +
                                 std::to_string(es.eigenvalues().minCoeff()));
    }
}

DensityOperator partial_trace(const states::PureState& s, const std::vector<std::size_t>& keep) {
    check_keep(s.layout, keep);
    std::vector<std::size_t> traced;
    for (std::size_t k = 0; k < s.layout.size(); ++k) {
        if (std::find(keep.begin(), keep.end(), k) == keep.end()) traced.push_back(k);
    }
    const auto keep_off = subset_offsets(s.layout, keep);
    const auto trace_off = subset_offsets(s.layout, traced);
    const auto d_keep = static_cast<Eigen::Index>(keep_off.size());

    // pack the nonzero trace columns of the (keep x trace) reshaping, then rho = A A†;
    // structural zeros are common (excitation-correlated sectors) and exact.
    Matrix packed(d_keep, static_cast<Eigen::Index>(trace_off.size()));
    Eigen::Index cols = 0;
    Vector column(d_keep);
    for (Eigen::Index t = 0; t < static_cast<Eigen::Index>(trace_off.size()); ++t) {
        const Eigen::Index base = trace_off[t];
        double norm2 = 0.0;
        for (Eigen::Index k = 0; k < d_keep; ++k) {
            const Complex v = s.amplitudes[base + keep_off[k]];
            column[k] = v;
            norm2 += std::norm(v);
        }
        if (norm2 == 0.0) continue;
        packed.col(cols++) = column;
    }

    Matrix rho = Matrix::Zero(d_keep, d_keep);
    rho.selfadjointView<Eigen::Lower>().rankUpdate(packed.leftCols(cols));
    rho.triangularView<Eigen::StrictlyUpper>() = rho.adjoint();

    states::SubsystemLayout layout;
    for (std::size_t k : keep) layout.factors.push_back(s.layout.factors[k]);
    return DensityOperator{std::move(layout), std::move(rho)};
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::size_t>& keep) {
    check_keep(rho.layout, keep);
    std::vector<std::size_t> traced;
    for (std::size_t k = 0; k < rho.layout.size(); ++k) {
        if (std::find(keep.begin(), keep.end(), k) == keep.end()) traced.push_back(k);
    }
    const auto keep_off = subset_offsets(rho.layout, keep);
    const auto trace_off = subset_offsets(rho.layout, traced);
    const auto d_keep = static_cast<Eigen::Index>(keep_off.size());

    Matrix out = Matrix::Zero(d_keep, d_keep);
    for (Eigen::Index i = 0; i < d_keep; ++i) {
        for (Eigen::Index j = 0; j < d_keep; ++j) {
            Complex sum = 0.0;
            for (Eigen::Index t : trace_off) {
                sum += rho.matrix(t + keep_off[i], t + keep_off[j]);
            }
            out(i, j) = sum;
        }
    }
    states::SubsystemLayout layout;
    for (std::size_t k : keep) layout.factors.push_back(rho.layout.factors[k]);
    return DensityOperator{std::move(layout), std::move(out)};
}

Matrix partial_transpose(const DensityOperator& rho, const std::vector<std::size_t>& transpose_side) {
    if (transpose_side.empty() || transpose_side.size() >= rho.layout.size()) {
        throw std::invalid_argument("partial_transpose: side must be a proper nonempty factor subset");
    }
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < rho.layout.size(); ++k) {
        if (std::find(transpose_side.begin(), transpose_side.end(), k) == transpose_side.end()) {
            rest.push_back(k);
        }
    }
    const auto side_off = subset_offsets(rho.layout, transpose_side);
    const auto rest_off = subset_offsets(rho.layout, rest);

    Matrix out(rho.dim(), rho.dim());
    for (Eigen::Index ra : rest_off) {
        for (Eigen::Index rb : rest_off) {
            for (Eigen::Index sa : side_off) {
                for (Eigen::Index sb : side_off) {
                    out(ra + sb, rb + sa) = rho.matrix(ra + sa, rb + sb);
                }
            }
        }
    }
    return out;
}

EntanglementReport negativity_report(const DensityOperator& rho,
                                     const std::vector<std::size_t>& transpose_side, double tol) {
    const Matrix pt = partial_transpose(rho, transpose_side);
    Eigen::SelfAdjointEigenSolver<Matrix> es(pt, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("negativity: eigensolver failed");

    EntanglementReport rep;
    rep.transposed_factors = transpose_side;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double lambda = es.eigenvalues()[i];
        if (lambda < -tol) {
            rep.negative_eigenvalues.push_back(lambda);
            rep.negativity -= lambda;
        }
    }
    rep.log_negativity = std::log2(2.0 * rep.negativity + 1.0);
    return rep;
}

double negativity(const DensityOperator& rho, const std::vector<std::size_t>& transpose_side) {
    return negativity_report(rho, transpose_side).negativity;
}

double log_negativity(const DensityOperator& rho, const std::vector<std::size_t>& transpose_side) {
    return negativity_report(rho, transpose_side).log_negativity;
}

double tmss_log_negativity_exact(double r) {
    if (!(r >= 0.0)) throw std::invalid_argument("tmss_log_negativity_exact: r must be >= 0");
    return 2.0 * r / std::numbers::ln2;
}

double bell_overlap(const DensityOperator& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("bell_overlap: expected a two-qubit state");
    // (<00| - <11|) rho (|00> - |11>) / 2
    const Complex v = rho.matrix(0, 0) - rho.matrix(0, 3) - rho.matrix(3, 0) + rho.matrix(3, 3);
    return 0.5 * v.real();
}

double purity(const DensityOperator& rho) {
    return rho.matrix.squaredNorm();   // Tr(rho^2) for Hermitian rho
}

} // namespace entxfer::ent
