#include "entxfer/operators.hpp"

#include <cmath>

namespace entxfer::ops {

LadderOperator dicke_raising(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("dicke_raising: n_qubits must be >= 1");
    const Eigen::Index d = n_qubits + 1;
    Matrix m = Matrix::Zero(d, d);
    for (int n = 0; n < n_qubits; ++n) {
        m(n + 1, n) = std::sqrt(double(n_qubits - n) * double(n + 1));
    }
    return {LadderKind::DickeRaise, std::move(m)};
}

LadderOperator boson_annihilation(int cutoff) {
    if (cutoff < 0) throw std::invalid_argument("boson_annihilation: cutoff must be >= 0");
    const Eigen::Index d = cutoff + 1;
    Matrix m = Matrix::Zero(d, d);
    for (int n = 1; n <= cutoff; ++n) {
        m(n - 1, n) = std::sqrt(double(n));
    }
    return {LadderKind::BosonAnnihilate, std::move(m)};
}

LadderOperator truncated_boson_raising(int top) {
    if (top < 1) throw std::invalid_argument("truncated_boson_raising: top must be >= 1");
    const Eigen::Index d = top + 1;
    Matrix m = Matrix::Zero(d, d);
    for (int n = 0; n < top; ++n) {
        m(n + 1, n) = std::sqrt(double(n + 1));
    }
    return {LadderKind::TruncatedBosonRaise, std::move(m)};
}

SiteHamiltonian site_hamiltonian(int n_qubits, int cutoff, CouplingKind kind) {
    if (n_qubits < 1) throw std::invalid_argument("site_hamiltonian: n_qubits must be >= 1");
    if (cutoff < 1) throw std::invalid_argument("site_hamiltonian: cutoff must be >= 1");
    const Eigen::Index df = cutoff + 1;
    const Eigen::Index d = (n_qubits + 1) * df;
    const double root_n = std::sqrt(double(n_qubits));

    // spin-major composite index (s, f) -> s*(cutoff+1) + f; conjugate pairs are
    // placed together so H is Hermitian exactly.
    Matrix h = Matrix::Zero(d, d);
    for (int s = 0; s < n_qubits; ++s) {
        for (int f = 1; f <= cutoff; ++f) {
            const double raise = (kind == CouplingKind::Collective)
                                     ? std::sqrt(double(n_qubits - s) * double(s + 1))
                                     : root_n * std::sqrt(double(s + 1));
            const double v = raise * std::sqrt(double(f));
            const Eigen::Index lo = s * df + f;            // |s, f>
            const Eigen::Index hi = (s + 1) * df + (f - 1); // |s+1, f-1>
            h(hi, lo) = v;
            h(lo, hi) = v;
        }
    }
    auto blocks = excitation_blocks(h, n_qubits, cutoff);
    return SiteHamiltonian{n_qubits, cutoff, kind, std::move(h), std::move(blocks)};
}

std::vector<ExcitationBlock> excitation_blocks(const Matrix& h, int n_qubits, int cutoff) {
    const Eigen::Index df = cutoff + 1;
    if (h.rows() != (n_qubits + 1) * df || h.cols() != h.rows()) {
        throw std::invalid_argument("excitation_blocks: matrix shape does not match (n_qubits, cutoff)");
    }
    std::vector<ExcitationBlock> blocks;
    for (int e = 0; e <= n_qubits + cutoff; ++e) {
        ExcitationBlock b;
        b.excitation = e;
        for (int s = std::max(0, e - cutoff); s <= std::min(n_qubits, e); ++s) {
            b.indices.push_back(s * df + (e - s));
        }
        const auto n = static_cast<Eigen::Index>(b.indices.size());
        b.h.resize(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                b.h(i, j) = h(b.indices[i], b.indices[j]);
            }
        }
        blocks.push_back(std::move(b));
    }
    return blocks;
}

} // namespace entxfer::ops
