#include "entxfer/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <thread>

namespace entxfer::sweep {

std::vector<double> Range::points() const {
    if (!(step > 0.0)) throw std::invalid_argument("Range: step must be > 0");
    if (max < min) throw std::invalid_argument("Range: empty range");
    std::vector<double> pts;
    const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) pts.push_back(min + static_cast<double>(i) * step);
    return pts;
}

Range default_r_grid() { return {0.5, 1.6, 0.02}; }
Range default_tau_grid() { return {0.0, 2.0 * std::numbers::pi, 0.02}; }

std::size_t worker_count() {
    if (const char* env = std::getenv("ENTXFER_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::vector<CurvePoint> scan_time(const ProtocolAt& protocol, const Range& tau_grid) {
    const auto taus = tau_grid.points();
    std::vector<CurvePoint> curve(taus.size());
    parallel_for_index(taus.size(), [&](std::size_t i) {
        CurvePoint& pt = curve[i];
        pt.tau = taus[i];
        try {
            const auto res = protocol(taus[i]);
            pt.log_negativity = res.log_negativity;
            pt.probability = res.probability;
        } catch (const std::exception& e) {
            pt.ok = false;
            pt.error = e.what();
        }
    });
    return curve;
}

namespace {

// golden-section maximization of a unimodal bracket, absolute tolerance in x
std::pair<double, double> golden_max(const std::function<double(double)>& f, double a, double b,
                                     double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2; f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1; f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 > f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

struct RowMax {
    double value = -1.0;
    double tau = 0.0;
    std::size_t tau_index = 0;
    int cutoff = 0;
};

RowMax scan_row(const proto::PassiveEngine& engine, const std::vector<double>& taus) {
    RowMax best;
    best.cutoff = engine.cutoff();
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const double v = engine.at(taus[i]).log_negativity;
        if (v > best.value) {
            best.value = v;
            best.tau = taus[i];
            best.tau_index = i;
        }
    }
    return best;
}

} // namespace

OptimumRow optimize_transfer(int n_qubits, const Range& r_grid, const Range& tau_grid,
                             bool refine, double epsilon) {
    const auto rs = r_grid.points();
    const auto taus = tau_grid.points();

    std::vector<RowMax> rows(rs.size());
    parallel_for_index(rs.size(), [&](std::size_t i) {
        proto::PassiveEngine engine(
            {n_qubits, rs[i], 0.0, std::nullopt, ops::CouplingKind::Collective, epsilon});
        rows[i] = scan_row(engine, taus);
    });

    std::size_t best_r = 0;
    for (std::size_t i = 1; i < rs.size(); ++i) {
        if (rows[i].value > rows[best_r].value) best_r = i;
    }

    OptimumRow row;
    row.n_qubits = n_qubits;
    row.r_opt = rs[best_r];
    row.log_negativity_max = rows[best_r].value;
    row.tau_at_max = rows[best_r].tau;
    row.cutoff = rows[best_r].cutoff;
    row.boundary_warning = best_r == 0 || best_r + 1 == rs.size() ||
                           rows[best_r].tau_index == 0 || rows[best_r].tau_index + 1 == taus.size();

    if (refine) {
        constexpr double tol = 1e-3;
        auto value_at = [&](double r, double tau) {
            proto::PassiveEngine engine(
                {n_qubits, r, 0.0, std::nullopt, ops::CouplingKind::Collective, epsilon});
            return engine.at(tau).log_negativity;
        };
        // tau at fixed r (reuse one engine), then r at fixed tau, then tau once more
        {
            proto::PassiveEngine engine(
                {n_qubits, row.r_opt, 0.0, std::nullopt, ops::CouplingKind::Collective, epsilon});
            auto [tau, val] = golden_max([&](double t) { return engine.at(t).log_negativity; },
                                         std::max(tau_grid.min, row.tau_at_max - tau_grid.step),
                                         std::min(tau_grid.max, row.tau_at_max + tau_grid.step), tol);
            if (val > row.log_negativity_max) {
                row.log_negativity_max = val;
                row.tau_at_max = tau;
            }
        }
        {
            auto [r, val] = golden_max([&](double r) { return value_at(r, row.tau_at_max); },
                                       std::max(r_grid.min, row.r_opt - r_grid.step),
                                       std::min(r_grid.max, row.r_opt + r_grid.step), tol);
            if (val > row.log_negativity_max) {
                row.log_negativity_max = val;
                row.r_opt = r;
            }
        }
        {
            proto::PassiveEngine engine(
                {n_qubits, row.r_opt, 0.0, std::nullopt, ops::CouplingKind::Collective, epsilon});
            row.cutoff = engine.cutoff();
            auto [tau, val] = golden_max([&](double t) { return engine.at(t).log_negativity; },
                                         std::max(tau_grid.min, row.tau_at_max - tau_grid.step),
                                         std::min(tau_grid.max, row.tau_at_max + tau_grid.step), tol);
            if (val > row.log_negativity_max) {
                row.log_negativity_max = val;
                row.tau_at_max = tau;
            }
        }
    }

    row.eff = row.log_negativity_max * std::numbers::ln2 / (2.0 * row.r_opt);
    return row;
}

Table1Result table1(int n_max, int budget, bool refine, double epsilon, const Range& r_grid,
                    const Range& tau_grid) {
    if (n_max < 1) throw std::invalid_argument("table1: n_max must be >= 1");
    Table1Result result;
    result.truncated = n_max > budget;
    const int top = std::min(n_max, budget);
    for (int n = 1; n <= top; ++n) {
        result.rows.push_back(optimize_transfer(n, r_grid, tau_grid, refine, epsilon));
    }
    for (std::size_t i = 1; i < result.rows.size(); ++i) {
        if (result.rows[i].eff < result.rows[i - 1].eff - 1e-9) result.eff_monotone = false;
        if (result.rows[i].r_opt < result.rows[i - 1].r_opt - 1e-3) result.r_opt_monotone = false;
    }
    return result;
}

} // namespace entxfer::sweep
