// entanglement.hpp — Partial trace, partial transpose, negativity measures, state diagnostics
#pragma once

#include "entxfer/statespace.hpp"

namespace entxfer::ent {

// Threshold separating numerical noise from genuine partial-transpose negativity.
inline constexpr double kNegativityTol = 1e-12;

struct DensityOperator {
    states::SubsystemLayout layout;
    Matrix matrix;

    Eigen::Index dim() const { return matrix.rows(); }
};

// Hermiticity / trace / positivity check; throws with a description on violation.
void validate(const DensityOperator& rho, double herm_tol = 1e-10, double trace_tol = 1e-10,
              double psd_tol = 1e-9);

// Reduced operator over the kept factors (original relative order). Pure-state path
// contracts the amplitudes directly; the global density matrix is never formed.
DensityOperator partial_trace(const states::PureState& s, const std::vector<std::size_t>& keep);
DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::size_t>& keep);

// Index swap on the chosen factors; Hermitian, trace-preserving, involutive.
Matrix partial_transpose(const DensityOperator& rho, const std::vector<std::size_t>& transpose_side);

struct EntanglementReport {
    double negativity{0.0};
    double log_negativity{0.0};
    std::vector<double> negative_eigenvalues;
    std::vector<std::size_t> transposed_factors;
};

// negativity = |sum of partial-transpose eigenvalues below -tol|, E_N = log2(2 negativity + 1).
EntanglementReport negativity_report(const DensityOperator& rho,
                                     const std::vector<std::size_t>& transpose_side,
                                     double tol = kNegativityTol);
double negativity(const DensityOperator& rho, const std::vector<std::size_t>& transpose_side);
double log_negativity(const DensityOperator& rho, const std::vector<std::size_t>& transpose_side);

// E_N of the untruncated two-mode squeezed state: 2 r / ln 2.
double tmss_log_negativity_exact(double r);

// <Phi-| rho |Phi-> with |Phi-> = (|00> - |11>)/sqrt(2); rho must be two-qubit.
double bell_overlap(const DensityOperator& rho);

double purity(const DensityOperator& rho);

} // namespace entxfer::ent
