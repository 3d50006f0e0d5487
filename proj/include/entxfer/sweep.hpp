// sweep.hpp — Parameter scans and maximization: E_N(tau) curves, joint (r, tau)
// optimization, transfer-efficiency rows.
#pragma once

#include "entxfer/protocols.hpp"

#include <functional>

namespace entxfer::sweep {

struct Range {
    double min = 0.0;
    double max = 0.0;
    double step = 0.0;

    std::vector<double> points() const;
};

struct ScanGrid {
    Range tau;
    Range r;
    std::vector<int> n_values;
};

// default optimization grids: r in [0.5, 1.6] step 0.02, tau in [0, 2 pi] step 0.02
Range default_r_grid();
Range default_tau_grid();

struct CurvePoint {
    double tau = 0.0;
    double log_negativity = 0.0;
    double probability = 1.0;
    bool ok = true;
    std::string error;                         // set when the protocol failed at this point
};

using ProtocolAt = std::function<proto::ProtocolResult(double)>;

// One protocol evaluation per grid point, parallel with deterministic ordering;
// per-point failures are recorded without aborting the scan.
std::vector<CurvePoint> scan_time(const ProtocolAt& protocol, const Range& tau_grid);

struct OptimumRow {
    int n_qubits = 0;
    double r_opt = 0.0;
    double log_negativity_max = 0.0;
    double eff = 0.0;                          // E_N ln2 / (2 r_opt)
    double tau_at_max = 0.0;
    int cutoff = 0;
    bool boundary_warning = false;             // optimum landed on a grid edge
};

OptimumRow optimize_transfer(int n_qubits, const Range& r_grid, const Range& tau_grid,
                             bool refine, double epsilon = 1e-8);

struct Table1Result {
    std::vector<OptimumRow> rows;
    bool truncated = false;                    // n_max exceeded the compute budget
    bool eff_monotone = true;
    bool r_opt_monotone = true;
};

Table1Result table1(int n_max, int budget = 10, bool refine = true, double epsilon = 1e-8,
                    const Range& r_grid = default_r_grid(), const Range& tau_grid = default_tau_grid());

// ENTXFER_THREADS caps the worker count; 0 or unset means hardware concurrency.
std::size_t worker_count();
void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace entxfer::sweep
