#include "entxfer/protocols.hpp"

#include <cmath>

namespace entxfer::proto {

namespace {

constexpr double kZeroProbability = 1e-12;

int resolve_cutoff(double r, const std::optional<int>& requested, double epsilon) {
    if (requested) {
        if (*requested < 1) throw std::invalid_argument("cutoff must be >= 1");
        return *requested;
    }
    return std::max(1, states::choose_cutoff(r, epsilon));
}

// weight carried by field levels >= ceil(0.9 cutoff) in the given factor
double field_tail_weight(const states::PureState& s, std::size_t factor, int cutoff) {
    const auto strides = s.layout.strides();
    const Eigen::Index df = s.layout.factors[factor].dim;
    const Eigen::Index stride = strides[factor];
    const auto level = static_cast<Eigen::Index>(std::ceil(0.9 * cutoff));
    const Eigen::Index total = s.amplitudes.size();
    double w = 0.0;
    for (Eigen::Index i = 0; i < total; ++i) {
        const Eigen::Index f = (i / stride) % df;
        if (f >= level) w += std::norm(s.amplitudes[i]);
    }
    return w;
}

states::PureState assemble_two_site(const states::PureState& tmss, int n_qubits,
                                    states::Role pair_role) {
    using states::Role;
    const Eigen::Index ds = n_qubits + 1;
    states::SubsystemLayout spin1{{{pair_role, 1, ds}}};
    states::SubsystemLayout spin2{{{pair_role, 2, ds}}};
    Vector ground = Vector::Zero(ds);
    ground[0] = 1.0;
    states::PureState g1{spin1, ground};
    states::PureState g2{spin2, ground};
    // (spin1) (x) (field1, field2) (x) (spin2) -> permute to (spin1, field1, spin2, field2)
    auto joint = states::tensor(states::tensor(g1, tmss), g2);
    return states::permute(joint, {0, 1, 3, 2});
}

// contract one factor against a measurement bra; the factor is removed from the layout
states::PureState project_out_factor(const states::PureState& s, std::size_t factor,
                                     const Vector& outcome_ket) {
    const auto& factors = s.layout.factors;
    const Eigen::Index d = factors[factor].dim;
    if (outcome_ket.size() != d) throw std::invalid_argument("project_out_factor: outcome dimension mismatch");
    Eigen::Index d_outer = 1, d_inner = 1;
    for (std::size_t k = 0; k < factor; ++k) d_outer *= factors[k].dim;
    for (std::size_t k = factor + 1; k < factors.size(); ++k) d_inner *= factors[k].dim;

    Vector out = Vector::Zero(d_outer * d_inner);
    for (Eigen::Index o = 0; o < d_outer; ++o) {
        for (Eigen::Index a = 0; a < d; ++a) {
            const Complex w = std::conj(outcome_ket[a]);
            if (w == Complex(0.0, 0.0)) continue;
            out.segment(o * d_inner, d_inner) +=
                w * s.amplitudes.segment((o * d + a) * d_inner, d_inner);
        }
    }
    states::SubsystemLayout layout;
    for (std::size_t k = 0; k < factors.size(); ++k) {
        if (k != factor) layout.factors.push_back(factors[k]);
    }
    return states::PureState{std::move(layout), std::move(out)};
}

} // namespace

PassiveEngine::PassiveEngine(const TransferParams& params)
    : n_qubits_(params.n_qubits),
      cutoff_(resolve_cutoff(params.r, params.cutoff, params.epsilon)),
      retained_weight_(0.0),
      initial_{},
      evolver_(ops::site_hamiltonian(params.n_qubits, cutoff_, params.kind)) {
    if (params.n_qubits < 1) throw std::invalid_argument("PassiveEngine: n_qubits must be >= 1");
    if (!(params.r >= 0.0)) throw std::invalid_argument("PassiveEngine: r must be >= 0");
    auto tmss = states::two_mode_squeezed_state({params.r, cutoff_});
    retained_weight_ = tmss.retained_weight;
    initial_ = assemble_two_site(tmss.state, params.n_qubits, states::Role::Spin);
}

states::PureState PassiveEngine::evolved(double tau) const {
    const auto u = evolver_.propagator(tau);
    return dyn::evolve(initial_, u, u);
}

ProtocolResult PassiveEngine::reduce(const states::PureState& state, double probability) const {
    ProtocolResult res;
    res.reduced_state = ent::partial_trace(state, {0, 2});
    auto rep = ent::negativity_report(res.reduced_state, {1});
    res.log_negativity = rep.log_negativity;
    res.negativity = rep.negativity;
    res.probability = probability;
    res.diagnostics["cutoff"] = cutoff_;
    res.diagnostics["truncation_deficit"] = truncation_deficit();
    res.diagnostics["cutoff_leak"] =
        std::max(field_tail_weight(state, 1, cutoff_), field_tail_weight(state, 3, cutoff_));
    res.diagnostics["purity"] = ent::purity(res.reduced_state);
    if (res.reduced_state.dim() == 4) {
        res.diagnostics["bell_overlap"] = ent::bell_overlap(res.reduced_state);
    }
    return res;
}

ProtocolResult PassiveEngine::at(double tau) const {
    return reduce(evolved(tau), 1.0);
}

ProtocolResult PassiveEngine::parity_at(double tau, Parity parity, ParityMode mode) const {
    auto state = evolved(tau);
    const auto strides = state.layout.strides();
    const Eigen::Index df = cutoff_ + 1;
    const int want = parity == Parity::Even ? 0 : 1;

    Vector amps = state.amplitudes;
    double p = 0.0;
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        const Eigen::Index f1 = (i / strides[1]) % df;
        const Eigen::Index f2 = (i / strides[3]) % df;
        const bool keep = mode == ParityMode::Total
                              ? ((f1 + f2) % 2 == want)
                              : (f1 % 2 == want && f2 % 2 == want);
        if (keep) {
            p += std::norm(amps[i]);
        } else {
            amps[i] = 0.0;
        }
    }
    if (p < kZeroProbability) {
        throw ZeroProbabilityOutcome("parity outcome has vanishing probability at tau = " +
                                     std::to_string(tau), 1);
    }
    amps /= std::sqrt(p);
    auto res = reduce(states::PureState{state.layout, std::move(amps)}, p);
    return res;
}

ProtocolResult passive_transfer(const TransferParams& params) {
    return PassiveEngine(params).at(params.tau);
}

ProtocolResult bosonic_reference_transfer(TransferParams params) {
    params.kind = ops::CouplingKind::BosonicReference;
    return PassiveEngine(params).at(params.tau);
}

ProtocolResult parity_postselect(const TransferParams& params, Parity parity, ParityMode mode) {
    return PassiveEngine(params).parity_at(params.tau, parity, mode);
}

SequentialEngine::SequentialEngine(double r, std::optional<int> cutoff, double epsilon)
    : cutoff_(resolve_cutoff(r, cutoff, epsilon)),
      retained_weight_(0.0),
      initial_{},
      evolver_(ops::site_hamiltonian(1, cutoff_, ops::CouplingKind::Collective)) {
    auto tmss = states::two_mode_squeezed_state({r, cutoff_});
    retained_weight_ = tmss.retained_weight;
    initial_ = assemble_two_site(tmss.state, 1, states::Role::Qubit);
}

ProtocolResult SequentialEngine::run(const std::vector<double>& taus,
                                     const MeasurementSpec& measurement) const {
    if (taus.empty()) throw std::invalid_argument("sequential: at least one round required");
    if (measurement.outcomes.size() + 1 != taus.size()) {
        throw std::invalid_argument("sequential: need exactly one outcome pair per measured round");
    }
    const double alpha = measurement.alpha;
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("sequential: alpha must lie in [0,1]");
    const double beta = std::sqrt(1.0 - alpha * alpha);
    Vector ket_psi(2), ket_perp(2);
    ket_psi << alpha, beta;
    ket_perp << beta, -alpha;

    // round 1: the kept pair interacts, no measurement
    auto u1 = evolver_.propagator(taus[0]);
    auto state = dyn::evolve(initial_, u1, u1);
    double probability = 1.0;

    for (std::size_t i = 1; i < taus.size(); ++i) {
        const int label = 2 * static_cast<int>(i);       // ancillas 2i+1, 2i+2 in paper labelling
        Vector ground = Vector::Zero(2);
        ground[0] = 1.0;
        states::PureState anc1{{{ {states::Role::Qubit, label + 1, 2} }}, ground};
        states::PureState anc2{{{ {states::Role::Qubit, label + 2, 2} }}, ground};

        // (q1,f1,q2,f2,a1,a2) -> (q1,a1,f1,q2,a2,f2)
        auto big = states::permute(states::tensor(states::tensor(state, anc1), anc2),
                                   {0, 4, 1, 2, 5, 3});
        const auto u = evolver_.propagator(taus[i]);
        big = dyn::apply_site_propagator(big, u, 1);
        big = dyn::apply_site_propagator(big, u, 4);

        const auto& pair = measurement.outcomes[i - 1];
        big = project_out_factor(big, 1, pair[0] == AncillaOutcome::Psi ? ket_psi : ket_perp);
        big = project_out_factor(big, 3, pair[1] == AncillaOutcome::Psi ? ket_psi : ket_perp);

        const double p = big.amplitudes.squaredNorm();
        if (p < kZeroProbability) {
            throw ZeroProbabilityOutcome("sequential: outcome of round " + std::to_string(i + 1) +
                                         " has vanishing probability", static_cast<int>(i + 1));
        }
        big.amplitudes /= std::sqrt(p);
        probability *= p;
        state = std::move(big);                          // back to (q1,f1,q2,f2)
    }

    ProtocolResult res;
    res.reduced_state = ent::partial_trace(state, {0, 2});
    auto rep = ent::negativity_report(res.reduced_state, {1});
    res.log_negativity = rep.log_negativity;
    res.negativity = rep.negativity;
    res.probability = probability;
    res.diagnostics["cutoff"] = cutoff_;
    res.diagnostics["truncation_deficit"] = 1.0 - retained_weight_;
    res.diagnostics["cutoff_leak"] =
        std::max(field_tail_weight(state, 1, cutoff_), field_tail_weight(state, 3, cutoff_));
    res.diagnostics["purity"] = ent::purity(res.reduced_state);
    res.diagnostics["bell_overlap"] = ent::bell_overlap(res.reduced_state);
    return res;
}

ProtocolResult sequential_postselect(const SequentialParams& params) {
    SequentialEngine engine(params.r, params.cutoff, params.epsilon);
    return engine.run(params.taus, params.measurement);
}

XFormReport xform_check(const ent::DensityOperator& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("xform_check: expected a two-qubit state");
    XFormReport rep;
    double off = 0.0;
    for (Eigen::Index i = 0; i < 4; ++i) {
        for (Eigen::Index j = 0; j < 4; ++j) {
            const bool pattern = (i == j) || (i == 0 && j == 3) || (i == 3 && j == 0);
            if (!pattern) off = std::max(off, std::abs(rho.matrix(i, j)));
        }
        rep.diagonal[static_cast<std::size_t>(i)] = rho.matrix(i, i).real();
        off = std::max(off, std::abs(rho.matrix(i, i).imag()));
    }
    // the X-form corner is -B with B real; an imaginary part is off-pattern
    off = std::max(off, std::abs(rho.matrix(0, 3).imag()));
    rep.corner = -rho.matrix(0, 3).real();
    rep.off_pattern_max = off;
    return rep;
}

} // namespace entxfer::proto
