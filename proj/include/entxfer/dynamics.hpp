// dynamics.hpp — Per-site unitary propagators (block eigendecomposition, analytic N=1 form)
// and their application to composite pure states.
#pragma once

#include "entxfer/operators.hpp"
#include "entxfer/statespace.hpp"

namespace entxfer::dyn {

enum class PropagatorSource { Collective, BosonicReference, AnalyticJc };

struct PropagatorBlock {
    std::vector<Eigen::Index> indices;
    Matrix u;
};

struct SitePropagator {
    double tau;
    PropagatorSource source;
    Eigen::Index dim;
    std::vector<PropagatorBlock> blocks;

    Matrix dense() const;
};

// Caches the per-block eigendecomposition of a site Hamiltonian so propagators at
// any tau cost only a phase exponentiation and two small multiplies per block.
class SiteEvolver {
public:
    explicit SiteEvolver(const ops::SiteHamiltonian& h);

    SitePropagator propagator(double tau) const;
    Eigen::Index dim() const { return dim_; }

private:
    struct EigBlock {
        int excitation;
        std::vector<Eigen::Index> indices;
        Eigen::VectorXd eigenvalues;
        Matrix vectors;
    };
    std::vector<EigBlock> blocks_;
    Eigen::Index dim_{0};
    PropagatorSource source_{PropagatorSource::Collective};
};

// exp(-i H tau) per excitation block.
SitePropagator site_propagator(const ops::SiteHamiltonian& h, double tau);

// The closed-form N=1 propagator assembled entrywise on the truncated space,
// ordered (spin, field) with spin ground first:
//   <0;f | U | 0;f>   = cos(tau sqrt(f))
//   <1;f | U | 1;f>   = cos(tau sqrt(f+1))
//   <1;f-1| U | 0;f>  = -i sin(tau sqrt(f))
//   <0;f+1| U | 1;f>  = -i sin(tau sqrt(f+1))
// The |1; cutoff> column loses its sine partner to the truncation; rows and columns
// touching f = cutoff are excluded when comparing against the block-numeric path.
SitePropagator analytic_jc_propagator(int cutoff, double tau);

// Applies a site propagator to the two adjacent factors starting at first_factor.
states::PureState apply_site_propagator(const states::PureState& s, const SitePropagator& u,
                                        std::size_t first_factor);

// Canonical layout (spin1, field1, spin2, field2): U1 acts on factors (0,1), U2 on (2,3).
states::PureState evolve(const states::PureState& s, const SitePropagator& u1, const SitePropagator& u2);

} // namespace entxfer::dyn
