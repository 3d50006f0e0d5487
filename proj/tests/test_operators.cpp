#include "entxfer/operators.hpp"

#include <doctest.h>

#include <cmath>

using namespace entxfer;
using namespace entxfer::ops;

TEST_CASE("dicke raising entries follow the Clebsch-Gordan rule") {
    const auto s1 = dicke_raising(1);
    REQUIRE(s1.matrix.rows() == 2);
    CHECK(s1.matrix(1, 0) == Complex(1.0, 0.0));
    CHECK(s1.matrix.cwiseAbs().sum() == 1.0);

    const auto s2 = dicke_raising(2);
    CHECK(s2.matrix(1, 0).real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(s2.matrix(2, 1).real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    // N=4, n=1 -> sqrt((4-1)(1+1)) = sqrt(6)
    const auto s4 = dicke_raising(4);
    CHECK(s4.matrix(2, 1).real() == doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));
}

TEST_CASE("bosonic ladders") {
    const auto a = boson_annihilation(4);
    CHECK(a.matrix.col(0).norm() == 0.0);                       // a|0> = 0
    const Matrix number = a.matrix.adjoint() * a.matrix;
    for (int n = 0; n <= 4; ++n) {
        CHECK(number(n, n).real() == doctest::Approx(double(n)).epsilon(1e-14));
    }

    const auto b = truncated_boson_raising(3);
    CHECK(b.matrix.col(3).norm() == 0.0);                       // b†|N> = 0
    CHECK(b.matrix(1, 0).real() == doctest::Approx(1.0));
    CHECK(b.matrix(3, 2).real() == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("dicke raising approaches sqrt(N) times the truncated boson ladder") {
    // sigma+ / sqrt(N) -> b† entrywise on the polarised subspace
    const int n_qubits = 100;
    const auto s = dicke_raising(n_qubits);
    for (int n = 0; n <= 5; ++n) {
        const double ratio = s.matrix(n + 1, n).real() / std::sqrt(double(n_qubits));
        CHECK(std::abs(ratio - std::sqrt(double(n + 1))) < 0.03);
    }
}

TEST_CASE("site hamiltonian N=1 structure") {
    const auto h = site_hamiltonian(1, 1, CouplingKind::Collective);
    REQUIRE(h.matrix.rows() == 4);
    // exactly two entries of magnitude 1 coupling |1,0> <-> |0,1>; composite index s*(c+1)+f
    CHECK(h.matrix(2, 1) == Complex(1.0, 0.0));
    CHECK(h.matrix(1, 2) == Complex(1.0, 0.0));
    CHECK(h.matrix.cwiseAbs().sum() == doctest::Approx(2.0));
}

TEST_CASE("hamiltonian is exactly hermitian and excitation-block diagonal") {
    for (auto kind : {CouplingKind::Collective, CouplingKind::BosonicReference}) {
        const auto h = site_hamiltonian(3, 6, kind);
        CHECK((h.matrix - h.matrix.adjoint()).cwiseAbs().maxCoeff() == 0.0);
        const Eigen::Index df = 7;
        for (Eigen::Index i = 0; i < h.dim(); ++i) {
            for (Eigen::Index j = 0; j < h.dim(); ++j) {
                const auto ei = i / df + i % df;
                const auto ej = j / df + j % df;
                if (ei != ej) CHECK(h.matrix(i, j) == Complex(0.0, 0.0));
            }
        }
    }
}

TEST_CASE("one-excitation block of N=1 is the vacuum Rabi doublet") {
    const auto h = site_hamiltonian(1, 3, CouplingKind::Collective);
    const auto& block = h.blocks[1];
    REQUIRE(block.indices.size() == 2);
    Eigen::SelfAdjointEigenSolver<Matrix> es(block.h);
    CHECK(es.eigenvalues()[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(es.eigenvalues()[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("collective and bosonic-reference kinds coincide at N=1") {
    const auto a = site_hamiltonian(1, 5, CouplingKind::Collective);
    const auto b = site_hamiltonian(1, 5, CouplingKind::BosonicReference);
    CHECK((a.matrix - b.matrix).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("excitation blocks cover all indices exactly once and reassemble") {
    const auto h = site_hamiltonian(1, 2, CouplingKind::Collective);
    std::vector<std::size_t> sizes;
    for (const auto& b : h.blocks) sizes.push_back(b.indices.size());
    CHECK(sizes == std::vector<std::size_t>{1, 2, 2, 1});
    CHECK(h.blocks[0].h.cwiseAbs().maxCoeff() == 0.0);          // zero-excitation block is 1x1 zero

    for (int n : {2, 4}) {
        for (int cutoff : {3, 7}) {
            const auto ham = site_hamiltonian(n, cutoff, CouplingKind::Collective);
            std::vector<int> covered(ham.dim(), 0);
            Matrix rebuilt = Matrix::Zero(ham.dim(), ham.dim());
            Eigen::Index total = 0;
            for (const auto& b : ham.blocks) {
                total += static_cast<Eigen::Index>(b.indices.size());
                CHECK(static_cast<int>(b.indices.size()) <= n + 1);
                for (std::size_t i = 0; i < b.indices.size(); ++i) {
                    covered[b.indices[i]] += 1;
                    for (std::size_t j = 0; j < b.indices.size(); ++j) {
                        rebuilt(b.indices[i], b.indices[j]) = b.h(i, j);
                    }
                }
            }
            CHECK(total == ham.dim());
            for (int c : covered) CHECK(c == 1);
            CHECK((rebuilt - ham.matrix).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}
