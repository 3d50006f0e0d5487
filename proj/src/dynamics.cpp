#include "entxfer/dynamics.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace entxfer::dyn {

namespace {

PropagatorSource source_of(ops::CouplingKind kind) {
    return kind == ops::CouplingKind::Collective ? PropagatorSource::Collective
                                                 : PropagatorSource::BosonicReference;
}

} // namespace

Matrix SitePropagator::dense() const {
    Matrix m = Matrix::Zero(dim, dim);
    for (const auto& b : blocks) {
        const auto n = static_cast<Eigen::Index>(b.indices.size());
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                m(b.indices[i], b.indices[j]) = b.u(i, j);
            }
        }
    }
    return m;
}

SiteEvolver::SiteEvolver(const ops::SiteHamiltonian& h)
    : dim_(h.dim()), source_(source_of(h.kind)) {
    blocks_.reserve(h.blocks.size());
    for (const auto& b : h.blocks) {
        EigBlock eb;
        eb.excitation = b.excitation;
        eb.indices = b.indices;
        if (b.indices.size() == 1) {
            eb.eigenvalues = Eigen::VectorXd::Constant(1, b.h(0, 0).real());
            eb.vectors = Matrix::Identity(1, 1);
        } else {
            Eigen::SelfAdjointEigenSolver<Matrix> es(b.h);
            if (es.info() != Eigen::Success) {
                throw std::runtime_error("SiteEvolver: eigensolver failed on excitation block " +
                                         std::to_string(b.excitation));
            }
            eb.eigenvalues = es.eigenvalues();
            eb.vectors = es.eigenvectors();
        }
        blocks_.push_back(std::move(eb));
    }
}

SitePropagator SiteEvolver::propagator(double tau) const {
    SitePropagator p{tau, source_, dim_, {}};
    p.blocks.reserve(blocks_.size());
    for (const auto& b : blocks_) {
        const auto n = b.eigenvalues.size();
        Vector phases(n);
        for (Eigen::Index k = 0; k < n; ++k) {
            phases[k] = std::polar(1.0, -b.eigenvalues[k] * tau);
        }
        PropagatorBlock pb;
        pb.indices = b.indices;
        pb.u = b.vectors * phases.asDiagonal() * b.vectors.adjoint();
        p.blocks.push_back(std::move(pb));
    }
    return p;
}

SitePropagator site_propagator(const ops::SiteHamiltonian& h, double tau) {
    return SiteEvolver(h).propagator(tau);
}

SitePropagator analytic_jc_propagator(int cutoff, double tau) {
    if (cutoff < 1) throw std::invalid_argument("analytic_jc_propagator: cutoff must be >= 1");
    const Eigen::Index df = cutoff + 1;
    const Eigen::Index d = 2 * df;
    Matrix u = Matrix::Zero(d, d);
    const Complex mi(0.0, -1.0);
    for (int f = 0; f <= cutoff; ++f) {
        u(f, f) = std::cos(tau * std::sqrt(double(f)));                    // <0;f|U|0;f>
        u(df + f, df + f) = std::cos(tau * std::sqrt(double(f + 1)));      // <1;f|U|1;f>
        if (f >= 1) u(df + f - 1, f) = mi * std::sin(tau * std::sqrt(double(f)));
        if (f + 1 <= cutoff) u(f + 1, df + f) = mi * std::sin(tau * std::sqrt(double(f + 1)));
    }
    PropagatorBlock all;
    all.indices.resize(d);
    for (Eigen::Index i = 0; i < d; ++i) all.indices[i] = i;
    all.u = std::move(u);
    return SitePropagator{tau, PropagatorSource::AnalyticJc, d, {std::move(all)}};
}

states::PureState apply_site_propagator(const states::PureState& s, const SitePropagator& u,
                                        std::size_t first_factor) {
    const auto& factors = s.layout.factors;
    if (first_factor + 2 > factors.size()) {
        throw std::invalid_argument("apply_site_propagator: factor index out of range");
    }
    const Eigen::Index d_site = factors[first_factor].dim * factors[first_factor + 1].dim;
    if (d_site != u.dim) {
        throw std::invalid_argument("apply_site_propagator: propagator dimension " +
                                    std::to_string(u.dim) + " does not match site dimension " +
                                    std::to_string(d_site));
    }
    Eigen::Index d_outer = 1, d_inner = 1;
    for (std::size_t k = 0; k < first_factor; ++k) d_outer *= factors[k].dim;
    for (std::size_t k = first_factor + 2; k < factors.size(); ++k) d_inner *= factors[k].dim;

    Vector out = s.amplitudes;
    // chunk for one outer index, viewed column-major as (inner x site): C(inner, c)
    for (Eigen::Index o = 0; o < d_outer; ++o) {
        Eigen::Map<Matrix> c(out.data() + o * d_site * d_inner, d_inner, d_site);
        for (const auto& b : u.blocks) {
            const Matrix sub = c(Eigen::all, b.indices);
            c(Eigen::all, b.indices) = sub * b.u.transpose();
        }
    }
    return states::PureState{s.layout, std::move(out)};
}

states::PureState evolve(const states::PureState& s, const SitePropagator& u1, const SitePropagator& u2) {
    if (s.layout.size() != 4) {
        throw std::invalid_argument("evolve: expected layout (spin1, field1, spin2, field2)");
    }
    return apply_site_propagator(apply_site_propagator(s, u1, 0), u2, 2);
}

} // namespace entxfer::dyn
