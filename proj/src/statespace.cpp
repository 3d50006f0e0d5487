#include "entxfer/statespace.hpp"

#include <cmath>

namespace entxfer::states {

bool same_shape(const SubsystemLayout& a, const SubsystemLayout& b) {
    if (a.factors.size() != b.factors.size()) return false;
    for (std::size_t k = 0; k < a.factors.size(); ++k) {
        if (a.factors[k].dim != b.factors[k].dim) return false;
    }
    return true;
}

PureState make_state(SubsystemLayout layout, Vector amplitudes) {
    if (amplitudes.size() != layout.total_dim()) {
        throw std::invalid_argument("make_state: amplitude length " +
                                    std::to_string(amplitudes.size()) + " does not match layout dimension " +
                                    std::to_string(layout.total_dim()));
    }
    const double n = amplitudes.norm();
    if (n == 0.0) throw std::invalid_argument("make_state: zero amplitude vector");
    if (std::abs(n - 1.0) > 1e-15) amplitudes /= n;
    return PureState{std::move(layout), std::move(amplitudes)};
}

int choose_cutoff(double r, double eps) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("choose_cutoff: r must be finite and >= 0");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("choose_cutoff: eps must lie in (0,1)");
    const double t2 = std::tanh(r) * std::tanh(r);
    const double c2 = std::cosh(r) * std::cosh(r);
    double weight = 0.0;
    double term = 1.0 / c2;            // tanh^{2n}/cosh^2 at n = 0
    for (int n = 0;; ++n) {
        weight += term;
        if (1.0 - weight <= eps) return n;
        term *= t2;
        if (n > 1'000'000) throw std::runtime_error("choose_cutoff: did not converge");
    }
}

TwoModeSqueezedState two_mode_squeezed_state(const TwoModeSqueezedSpec& spec) {
    if (!(spec.r >= 0.0)) throw std::invalid_argument("two_mode_squeezed_state: r must be >= 0");
    if (spec.cutoff < 0) throw std::invalid_argument("two_mode_squeezed_state: cutoff must be >= 0");
    const Eigen::Index d = spec.cutoff + 1;
    SubsystemLayout layout{{{Role::Field, 1, d}, {Role::Field, 2, d}}};

    const double t = std::tanh(spec.r);
    Vector amps = Vector::Zero(d * d);
    double coeff = 1.0 / std::cosh(spec.r);    // tanh^n / cosh at n = 0
    double weight = 0.0;
    for (Eigen::Index n = 0; n < d; ++n) {
        amps[n * d + n] = coeff;               // populates |n,n> only
        weight += coeff * coeff;
        coeff *= t;
    }
    amps /= std::sqrt(weight);
    return TwoModeSqueezedState{PureState{std::move(layout), std::move(amps)}, weight};
}

PureState polarised_ground(int n_qubits, int site_count) {
    if (n_qubits < 1) throw std::invalid_argument("polarised_ground: n_qubits must be >= 1");
    if (site_count < 1) throw std::invalid_argument("polarised_ground: site_count must be >= 1");
    SubsystemLayout layout;
    for (int k = 0; k < site_count; ++k) {
        layout.factors.push_back({Role::Spin, k + 1, static_cast<Eigen::Index>(n_qubits + 1)});
    }
    Vector amps = Vector::Zero(layout.total_dim());
    amps[0] = 1.0;
    return PureState{std::move(layout), std::move(amps)};
}

PureState tensor(const PureState& a, const PureState& b) {
    const Eigen::Index da = a.amplitudes.size();
    const Eigen::Index db = b.amplitudes.size();
    SubsystemLayout layout = a.layout;
    layout.factors.insert(layout.factors.end(), b.layout.factors.begin(), b.layout.factors.end());
    Vector amps(da * db);
    for (Eigen::Index i = 0; i < da; ++i) {
        amps.segment(i * db, db) = a.amplitudes[i] * b.amplitudes;
    }
    return PureState{std::move(layout), std::move(amps)};
}

PureState permute(const PureState& s, const std::vector<std::size_t>& new_order) {
    const std::size_t nf = s.layout.size();
    if (new_order.size() != nf) throw std::invalid_argument("permute: order length mismatch");
    std::vector<bool> seen(nf, false);
    for (std::size_t k : new_order) {
        if (k >= nf || seen[k]) throw std::invalid_argument("permute: not a permutation");
        seen[k] = true;
    }

    SubsystemLayout out_layout;
    out_layout.factors.reserve(nf);
    for (std::size_t k : new_order) out_layout.factors.push_back(s.layout.factors[k]);

    const auto in_strides = s.layout.strides();
    // stride of output digit j in the input index
    std::vector<Eigen::Index> src_stride(nf);
    std::vector<Eigen::Index> out_dims(nf);
    for (std::size_t j = 0; j < nf; ++j) {
        src_stride[j] = in_strides[new_order[j]];
        out_dims[j] = out_layout.factors[j].dim;
    }

    const Eigen::Index total = s.amplitudes.size();
    Vector amps(total);
    std::vector<Eigen::Index> digit(nf, 0);
    Eigen::Index src = 0;
    for (Eigen::Index dst = 0; dst < total; ++dst) {
        amps[dst] = s.amplitudes[src];
        // increment mixed-radix counter over output digits, least significant last
        for (std::size_t j = nf; j-- > 0;) {
            src += src_stride[j];
            if (++digit[j] < out_dims[j]) break;
            src -= src_stride[j] * out_dims[j];
            digit[j] = 0;
        }
    }
    return PureState{std::move(out_layout), std::move(amps)};
}

} // namespace entxfer::states
