#include "entxfer/sweep.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace entxfer;
using namespace entxfer::sweep;

TEST_CASE("range points are inclusive and evenly spaced") {
    const auto pts = Range{0.0, 1.0, 0.25}.points();
    REQUIRE(pts.size() == 5);
    CHECK(pts.front() == 0.0);
    CHECK(pts.back() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS((Range{0.0, 1.0, 0.0}.points()), std::invalid_argument);
    CHECK_THROWS_AS((Range{1.0, 0.0, 0.1}.points()), std::invalid_argument);
}

TEST_CASE("single-point scan equals a direct protocol call") {
    proto::PassiveEngine engine({1, 0.86, 0.0});
    const auto curve = scan_time([&](double tau) { return engine.at(tau); }, {1.3, 1.3, 1.0});
    REQUIRE(curve.size() == 1);
    CHECK(curve[0].ok);
    CHECK(curve[0].log_negativity == engine.at(1.3).log_negativity);
}

TEST_CASE("scan_time records per-point failures without aborting") {
    proto::SequentialEngine engine(0.86, std::nullopt, 1e-8);
    proto::MeasurementSpec spec;
    spec.alpha = 0.0;
    spec.outcomes = {{proto::AncillaOutcome::Psi, proto::AncillaOutcome::Psi}};
    // tau2 = 0 with alpha = 0 never excites the ancillas: every point fails cleanly
    const auto curve = scan_time([&](double t) { return engine.run({t, 0.0}, spec); }, {0.5, 1.5, 0.5});
    REQUIRE(curve.size() == 3);
    for (const auto& pt : curve) {
        CHECK(!pt.ok);
        CHECK(pt.error.find("round 2") != std::string::npos);
    }
}

TEST_CASE("scan results do not depend on the worker count") {
    proto::PassiveEngine engine({1, 0.7, 0.0});
    const Range grid{0.0, 2.0, 0.1};
    const char* saved = std::getenv("ENTXFER_THREADS");
    setenv("ENTXFER_THREADS", "1", 1);
    const auto serial = scan_time([&](double tau) { return engine.at(tau); }, grid);
    setenv("ENTXFER_THREADS", "4", 1);
    const auto parallel = scan_time([&](double tau) { return engine.at(tau); }, grid);
    if (saved) setenv("ENTXFER_THREADS", saved, 1);
    else unsetenv("ENTXFER_THREADS");

    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].tau == parallel[i].tau);
        CHECK(serial[i].log_negativity == parallel[i].log_negativity);   // bit-stable
    }
}

TEST_CASE("optimize_transfer N=1 lands on the known optimum") {
    // coarse grids bracketing the optimum keep this test fast; acceptance runs the defaults
    const auto row = optimize_transfer(1, {0.7, 1.0, 0.02}, {3.8, 5.4, 0.02}, true);
    CHECK(row.n_qubits == 1);
    CHECK(row.r_opt == doctest::Approx(0.86).epsilon(0.035));
    CHECK(row.log_negativity_max == doctest::Approx(0.90).epsilon(0.025));
    CHECK(row.eff == doctest::Approx(row.log_negativity_max * 0.6931471805599453 / (2 * row.r_opt))
                         .epsilon(1e-12));
    CHECK(!row.boundary_warning);
}

TEST_CASE("refinement never loses to the coarse grid") {
    const Range r_grid{0.75, 0.95, 0.05};
    const Range tau_grid{4.0, 5.2, 0.05};
    const auto coarse = optimize_transfer(1, r_grid, tau_grid, false);
    const auto refined = optimize_transfer(1, r_grid, tau_grid, true);
    CHECK(refined.log_negativity_max >= coarse.log_negativity_max);
}

TEST_CASE("boundary optima carry a warning") {
    const auto row = optimize_transfer(1, {0.3, 0.5, 0.1}, {4.0, 5.0, 0.05}, false);
    CHECK(row.boundary_warning);                    // r_opt pinned at the 0.5 edge
}

TEST_CASE("peak transfer has an interior maximum in r") {
    auto peak_at = [](double r) {
        return optimize_transfer(1, {r, r, 1.0}, {3.9, 5.3, 0.05}, false).log_negativity_max;
    };
    const double lo = peak_at(0.55), mid = peak_at(0.86), hi = peak_at(1.5);
    CHECK(mid > lo);
    CHECK(mid > hi);
}

TEST_CASE("table1 basics") {
    // tight grids keep this test fast; the default grids run in the acceptance suite
    const Range r_grid{0.8, 0.95, 0.05};
    const Range tau_grid{3.9, 5.3, 0.05};
    const auto t = table1(1, 10, false, 1e-8, r_grid, tau_grid);
    REQUIRE(t.rows.size() == 1);
    CHECK(!t.truncated);
    CHECK(t.rows[0].n_qubits == 1);
    CHECK(t.rows[0].log_negativity_max == doctest::Approx(0.90).epsilon(0.03));

    const auto capped = table1(3, 2, false, 1e-8, r_grid, tau_grid);
    CHECK(capped.truncated);
    CHECK(capped.rows.size() == 2);
    CHECK(capped.eff_monotone);
}
