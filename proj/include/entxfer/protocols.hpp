// protocols.hpp — End-to-end procedures: passive simultaneous transfer, bosonic reference,
// field-parity postselection, and the sequential ancilla-pair measurement protocol.
#pragma once

#include "entxfer/dynamics.hpp"
#include "entxfer/entanglement.hpp"

#include <array>
#include <map>
#include <optional>

namespace entxfer::proto {

struct TransferParams {
    int n_qubits = 1;
    double r = 0.0;
    double tau = 0.0;
    std::optional<int> cutoff;                          // auto from choose_cutoff(r, epsilon) when unset
    ops::CouplingKind kind = ops::CouplingKind::Collective;
    double epsilon = 1e-8;
};

struct ProtocolResult {
    double log_negativity = 0.0;
    double negativity = 0.0;
    double probability = 1.0;                           // 1 for the passive protocols
    ent::DensityOperator reduced_state;
    std::map<std::string, double> diagnostics;          // truncation_deficit, cutoff, cutoff_leak, purity, ...
};

// A requested measurement outcome chain has (numerically) vanishing probability.
class ZeroProbabilityOutcome : public std::runtime_error {
public:
    ZeroProbabilityOutcome(const std::string& what, int round)
        : std::runtime_error(what), round_(round) {}
    int round() const { return round_; }

private:
    int round_;
};

enum class Parity { Even, Odd };

// The policy for reading "parity of the field's photon number" with two modes present:
// Total = parity of n1 + n2 (default); PerMode = both modes individually even (or both odd).
enum class ParityMode { Total, PerMode };

enum class AncillaOutcome { Psi, PsiPerp };

// Measurement basis {|psi_a>, |psi_a \perp>} with |psi_a> = alpha|0> + beta|1>,
// beta = sqrt(1 - alpha^2) fixed real nonnegative. One outcome pair per measured round.
struct MeasurementSpec {
    double alpha = 0.0;
    std::vector<std::array<AncillaOutcome, 2>> outcomes;
};

struct SequentialParams {
    double r = 0.0;
    std::vector<double> taus;                            // tau_1 .. tau_k; rounds 2..k are measured
    MeasurementSpec measurement;
    std::optional<int> cutoff;
    double epsilon = 1e-8;
};

// Precomputed pipeline for one (N, r, cutoff, kind): initial state plus cached block
// eigendecomposition, so a tau sweep costs one propagator + evolution per point.
class PassiveEngine {
public:
    explicit PassiveEngine(const TransferParams& params);

    ProtocolResult at(double tau) const;
    ProtocolResult parity_at(double tau, Parity parity, ParityMode mode = ParityMode::Total) const;

    int cutoff() const { return cutoff_; }
    double truncation_deficit() const { return 1.0 - retained_weight_; }

private:
    states::PureState evolved(double tau) const;
    ProtocolResult reduce(const states::PureState& state, double probability) const;

    int n_qubits_;
    int cutoff_;
    double retained_weight_;
    states::PureState initial_;                          // (spin1, field1, spin2, field2)
    dyn::SiteEvolver evolver_;
};

class SequentialEngine {
public:
    SequentialEngine(double r, std::optional<int> cutoff, double epsilon);

    ProtocolResult run(const std::vector<double>& taus, const MeasurementSpec& measurement) const;

    int cutoff() const { return cutoff_; }

private:
    int cutoff_;
    double retained_weight_;
    states::PureState initial_;                          // (qubit1, field1, qubit2, field2)
    dyn::SiteEvolver evolver_;
};

ProtocolResult passive_transfer(const TransferParams& params);
ProtocolResult bosonic_reference_transfer(TransferParams params);
ProtocolResult parity_postselect(const TransferParams& params, Parity parity,
                                 ParityMode mode = ParityMode::Total);
ProtocolResult sequential_postselect(const SequentialParams& params);

// Structure report against the X-form: diagonal A1..A4, -B on the antidiagonal corners,
// zeros elsewhere.
struct XFormReport {
    double off_pattern_max = 0.0;
    std::array<double, 4> diagonal{};
    double corner = 0.0;                                 // B, from -rho(0,3)
};

XFormReport xform_check(const ent::DensityOperator& rho);

} // namespace entxfer::proto
