#include "entxfer/entanglement.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace entxfer;
using namespace entxfer::ent;
using states::PureState;
using states::Role;
using states::SubsystemLayout;

namespace {

const SubsystemLayout kTwoQubits{{{Role::Qubit, 1, 2}, {Role::Qubit, 2, 2}}};

PureState bell_minus() {
    Vector v = Vector::Zero(4);
    v[0] = 1.0 / std::numbers::sqrt2;
    v[3] = -1.0 / std::numbers::sqrt2;
    return PureState{kTwoQubits, v};
}

Matrix random_unitary(Eigen::Index d, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss;
    Matrix a(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
    }
    const Eigen::HouseholderQR<Matrix> qr(a);
    return qr.householderQ();
}

DensityOperator random_two_qubit_state(unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss;
    Matrix a(4, 6);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
    }
    Matrix rho = a * a.adjoint();
    rho /= rho.trace();
    return DensityOperator{kTwoQubits, rho};
}

} // namespace

TEST_CASE("partial trace of a product state gives the kept factor") {
    Vector psi(2), phi(3);
    psi << Complex(0.6, 0.0), Complex(0.0, 0.8);
    phi << 0.0, 1.0, 0.0;
    SubsystemLayout layout{{{Role::Qubit, 1, 2}, {Role::Field, 1, 3}}};
    const auto product = states::tensor(PureState{{{layout.factors[0]}}, psi},
                                        PureState{{{layout.factors[1]}}, phi});
    const auto rho = partial_trace(product, {0});
    const Matrix expect = psi * psi.adjoint();
    CHECK((rho.matrix - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("partial trace of a Bell pair is maximally mixed") {
    const auto rho = partial_trace(bell_minus(), {0});
    CHECK((rho.matrix - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("reduced TMSS is thermal-like with tanh^2 ratios") {
    const double r = 0.86;
    const auto tmss = states::two_mode_squeezed_state({r, 20});
    const auto rho = partial_trace(tmss.state, {0});
    CHECK(std::abs(rho.matrix.trace().real() - 1.0) < 1e-12);
    for (int n = 0; n < 5; ++n) {
        const double ratio = rho.matrix(n + 1, n + 1).real() / rho.matrix(n, n).real();
        CHECK(ratio == doctest::Approx(std::tanh(r) * std::tanh(r)).epsilon(1e-10));
    }
    // off-diagonals vanish: photon number of the kept mode is classically correlated
    Matrix diag = rho.matrix.diagonal().asDiagonal();
    CHECK((rho.matrix - diag).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("density-operator partial trace agrees with the pure-state path") {
    std::mt19937 rng(17);
    std::normal_distribution<double> gauss;
    SubsystemLayout layout{{{Role::Qubit, 1, 2}, {Role::Field, 1, 3}, {Role::Qubit, 2, 2}}};
    Vector amps(layout.total_dim());
    for (Eigen::Index i = 0; i < amps.size(); ++i) amps[i] = Complex(gauss(rng), gauss(rng));
    const auto s = states::make_state(layout, std::move(amps));
    const DensityOperator global{layout, Matrix(s.amplitudes * s.amplitudes.adjoint())};
    for (const std::vector<std::size_t>& keep :
         {std::vector<std::size_t>{0}, {1}, {2}, {0, 2}, {1, 2}}) {
        const auto a = partial_trace(s, keep);
        const auto b = partial_trace(global, keep);
        CHECK((a.matrix - b.matrix).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("partial transpose basics") {
    const auto rho = random_two_qubit_state(23);

    SUBCASE("double application is the identity map") {
        const Matrix once = partial_transpose(rho, {1});
        const Matrix twice = partial_transpose(DensityOperator{rho.layout, once}, {1});
        CHECK((twice - rho.matrix).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("trace unchanged, hermitian") {
        const Matrix pt = partial_transpose(rho, {1});
        CHECK(std::abs(pt.trace().real() - 1.0) < 1e-12);
        CHECK((pt - pt.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("product state stays a state under partial transpose") {
        Vector psi(2);
        psi << std::cos(0.3), std::sin(0.3);
        Matrix rho_b(2, 2);
        rho_b << 0.7, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.3;
        Matrix prod = Matrix::Zero(4, 4);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                prod.block(2 * i, 2 * j, 2, 2) = psi[i] * std::conj(psi[j]) * rho_b;
            }
        }
        const Matrix pt = partial_transpose(DensityOperator{kTwoQubits, prod}, {1});
        Eigen::SelfAdjointEigenSolver<Matrix> es(pt, Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() > -1e-14);
    }
}

TEST_CASE("Bell state partial transpose spectrum and E_N") {
    const auto rho = partial_trace(bell_minus(), {0, 1});
    const Matrix pt = partial_transpose(rho, {1});
    Eigen::SelfAdjointEigenSolver<Matrix> es(pt, Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + 4);
    std::sort(ev.begin(), ev.end());
    CHECK(ev[0] == doctest::Approx(-0.5).epsilon(1e-13));
    CHECK(ev[1] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(ev[3] == doctest::Approx(0.5).epsilon(1e-13));

    const auto rep = negativity_report(rho, {1});
    CHECK(rep.log_negativity == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.negativity == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rep.negative_eigenvalues.size() == 1);
    // E_N = log2(2 negativity + 1) exactly
    CHECK(rep.log_negativity == std::log2(2.0 * rep.negativity + 1.0));
}

TEST_CASE("product states have zero negativity") {
    Vector v = Vector::Zero(4);
    v[2] = 1.0;
    const PureState s{kTwoQubits, v};
    CHECK(log_negativity(partial_trace(s, {0, 1}), {1}) == 0.0);
}

TEST_CASE("truncated TMSS log negativity") {
    // paper anchor: cutoff 15 keeps E_N ~ 2.47 of the full 2.48
    const auto tmss = states::two_mode_squeezed_state({0.86, 15});
    const DensityOperator pure{tmss.state.layout,
                               Matrix(tmss.state.amplitudes * tmss.state.amplitudes.adjoint())};
    CHECK(log_negativity(pure, {1}) == doctest::Approx(2.47).epsilon(0.005));
}

TEST_CASE("truncated TMSS E_N grows monotonically to 2r/ln2") {
    for (double r : {0.3, 0.55, 0.86}) {
        double prev = -1.0;
        for (int cutoff : {2, 4, 8, 16}) {
            const auto tmss = states::two_mode_squeezed_state({r, cutoff});
            const DensityOperator pure{
                tmss.state.layout, Matrix(tmss.state.amplitudes * tmss.state.amplitudes.adjoint())};
            const double en = log_negativity(pure, {1});
            CHECK(en >= prev - 1e-12);
            CHECK(en <= tmss_log_negativity_exact(r) + 1e-9);
            prev = en;
        }
        CHECK(prev == doctest::Approx(tmss_log_negativity_exact(r)).epsilon(2e-3));
    }
}

TEST_CASE("exact TMSS values") {
    CHECK(tmss_log_negativity_exact(0.0) == 0.0);
    CHECK(tmss_log_negativity_exact(0.86) == doctest::Approx(2.4814354703).epsilon(1e-10));
    CHECK(tmss_log_negativity_exact(1.57) == doctest::Approx(4.53).epsilon(1e-3));
}

TEST_CASE("E_N is invariant under local unitaries") {
    for (unsigned seed = 0; seed < 6; ++seed) {
        const auto rho = random_two_qubit_state(100 + seed);
        const double before = log_negativity(rho, {1});
        Matrix local = Matrix::Zero(4, 4);
        const Matrix v1 = random_unitary(2, 200 + seed);
        const Matrix v2 = random_unitary(2, 300 + seed);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                local.block(2 * i, 2 * j, 2, 2) = v1(i, j) * v2;
            }
        }
        const Matrix rotated = local * rho.matrix * local.adjoint();
        const double after = log_negativity(DensityOperator{rho.layout, rotated}, {1});
        CHECK(std::abs(after - before) < 1e-9);
    }
}

TEST_CASE("E_N is symmetric in the transposed side and bounded by log2 d") {
    for (unsigned seed : {11u, 12u}) {
        const auto rho = random_two_qubit_state(seed);
        const double side2 = log_negativity(rho, {1});
        const double side1 = log_negativity(rho, {0});
        CHECK(std::abs(side1 - side2) < 1e-10);
        CHECK(side2 <= std::log2(2.0) + 1e-12);
    }
    // maximal value attained by the Bell state: log2(2) = 1
    CHECK(log_negativity(partial_trace(bell_minus(), {0, 1}), {1}) ==
          doctest::Approx(std::log2(2.0)).epsilon(1e-12));
}

TEST_CASE("bell overlap and purity") {
    const auto bell = partial_trace(bell_minus(), {0, 1});
    CHECK(bell_overlap(bell) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(purity(bell) == doctest::Approx(1.0).epsilon(1e-13));

    const DensityOperator mixed{kTwoQubits, 0.25 * Matrix::Identity(4, 4)};
    CHECK(bell_overlap(mixed) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(purity(mixed) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("validate flags malformed density operators") {
    auto rho = random_two_qubit_state(5);
    CHECK_NOTHROW(validate(rho));
    rho.matrix(0, 1) += Complex(0.0, 1e-3);
    CHECK_THROWS(validate(rho));
    CHECK_THROWS_AS(partial_trace(bell_minus(), {}), std::invalid_argument);
    CHECK_THROWS_AS(bell_overlap(DensityOperator{{{{Role::Qubit, 1, 2}}}, Matrix::Identity(2, 2)}),
                    std::invalid_argument);
}
