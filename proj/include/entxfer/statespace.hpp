// statespace.hpp — Truncated Hilbert-space layouts, initial states, tensor/permute plumbing
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace entxfer {

using Complex = std::complex<double>;
using Vector  = Eigen::VectorXcd;
using Matrix  = Eigen::MatrixXcd;

namespace states {

// Role of one tensor factor. Spin = collective Dicke ladder of a site ensemble,
// Field = truncated bosonic mode, Qubit = a single two-level system (ancilla pairs).
enum class Role { Spin, Field, Qubit };

struct Factor {
    Role role;
    int site;            // 1 or 2 for the two sites; ancilla qubits carry their label (3, 4, ...)
    Eigen::Index dim;
};

struct ModeSpace {
    int cutoff;          // highest retained Fock number; dimension = cutoff + 1
    Eigen::Index dim() const { return cutoff + 1; }
};

struct SpinSpace {
    int n_qubits;        // symmetric Dicke ladder |n>, n = 0..N; dimension = N + 1
    Eigen::Index dim() const { return n_qubits + 1; }
};

// Ordered factor list; the order fixes row-major composite indexing
// (factor 0 is the most significant digit). Permutations are explicit, never implicit.
struct SubsystemLayout {
    std::vector<Factor> factors;

    Eigen::Index total_dim() const {
        Eigen::Index d = 1;
        for (const auto& f : factors) d *= f.dim;
        return d;
    }
    std::size_t size() const { return factors.size(); }

    // strides[k] = product of dims of factors right of k
    std::vector<Eigen::Index> strides() const {
        std::vector<Eigen::Index> s(factors.size());
        Eigen::Index acc = 1;
        for (std::size_t k = factors.size(); k-- > 0;) {
            s[k] = acc;
            acc *= factors[k].dim;
        }
        return s;
    }
};

bool same_shape(const SubsystemLayout& a, const SubsystemLayout& b);

// Normalized pure state over a layout.
struct PureState {
    SubsystemLayout layout;
    Vector amplitudes;
};

// Normalizes to unit 2-norm; throws on dimension mismatch or zero vector.
PureState make_state(SubsystemLayout layout, Vector amplitudes);

struct TwoModeSqueezedSpec {
    double r;            // two-mode squeezing parameter, dimensionless, >= 0
    int cutoff;
};

// Smallest n_max with truncated-norm deficit 1 - sum_{n<=n_max} tanh(r)^{2n}/cosh(r)^2 <= eps.
int choose_cutoff(double r, double eps);

struct TwoModeSqueezedState {
    PureState state;                 // over [field site 1, field site 2]
    double retained_weight;          // pre-normalization weight kept by the truncation
};

// |xi_r> truncated: c_{n,n} = tanh(r)^n / cosh(r), renormalized.
TwoModeSqueezedState two_mode_squeezed_state(const TwoModeSqueezedSpec& spec);

// |0>^(x site_count) in the Dicke-ladder basis (n = 0 everywhere).
PureState polarised_ground(int n_qubits, int site_count);

// Row-major Kronecker product; factor lists concatenate.
PureState tensor(const PureState& a, const PureState& b);

// Exact reindexing: result factor j = input factor new_order[j]. No arithmetic on amplitudes.
PureState permute(const PureState& s, const std::vector<std::size_t>& new_order);

} // namespace states
} // namespace entxfer
