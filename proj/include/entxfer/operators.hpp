// operators.hpp — Ladder operators and per-site interaction Hamiltonians with excitation blocks
#pragma once

#include "entxfer/statespace.hpp"

namespace entxfer::ops {

enum class LadderKind { BosonAnnihilate, DickeRaise, TruncatedBosonRaise };

struct LadderOperator {
    LadderKind kind;
    Matrix matrix;
};

// sigma+ |n> = sqrt((N-n)(n+1)) |n+1>, sigma+ |N> = 0 (Clebsch-Gordan on the Dicke ladder)
LadderOperator dicke_raising(int n_qubits);

// a |n> = sqrt(n) |n-1>
LadderOperator boson_annihilation(int cutoff);

// b† |n> = sqrt(n+1) |n+1> with b† |N> = 0
LadderOperator truncated_boson_raising(int top);

enum class CouplingKind { Collective, BosonicReference };

// One excitation sector: composite indices with n_spin + n_field = excitation.
struct ExcitationBlock {
    int excitation;
    std::vector<Eigen::Index> indices;   // positions in the (spin x field) row-major composite
    Matrix h;                            // Hermitian sub-matrix
};

// H on one site's spin (x) field factor, in units of the coupling g.
//   Collective:        H = sigma+ (x) a + sigma- (x) a†
//   BosonicReference:  H = sqrt(N) (b† (x) a + b (x) a†)
// Both commute with the total excitation number; blocks partition the indices.
struct SiteHamiltonian {
    int n_qubits;
    int cutoff;
    CouplingKind kind;
    Matrix matrix;                       // dense (N+1)(cutoff+1) square
    std::vector<ExcitationBlock> blocks;

    Eigen::Index dim() const { return matrix.rows(); }
};

SiteHamiltonian site_hamiltonian(int n_qubits, int cutoff, CouplingKind kind);

// Block decomposition of a dense site Hamiltonian by total excitation; blocks cover
// every index exactly once and reassemble the input exactly.
std::vector<ExcitationBlock> excitation_blocks(const Matrix& h, int n_qubits, int cutoff);

} // namespace entxfer::ops
