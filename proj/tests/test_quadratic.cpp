#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "oscnet/quadratic.hpp"

using namespace oscnet;

namespace {

Eigen::MatrixXd block_generator(const Eigen::MatrixXd& v, double t) {
    const int n = static_cast<int>(v.rows());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    a.topRightCorner(n, n) = v * t;
    a.bottomLeftCorner(n, n) = -v * t;
    return a;
}

}

TEST_CASE("assemble a single edge") {
    const double c = 0.7;
    OscillatorNetwork net({"a", "b"}, {{0, 1, c}});
    HamiltonianMatrices ham = assemble(net);
    Eigen::Matrix2d expected;
    expected << 1.0 + c / 2.0, -c / 2.0, -c / 2.0, 1.0 + c / 2.0;
    CHECK((ham.V - expected).cwiseAbs().maxCoeff() == 0.0);
    CHECK(ham.T == ham.V);
}

TEST_CASE("assemble an edgeless network") {
    OscillatorNetwork net({"a", "b", "c"}, {});
    HamiltonianMatrices ham = assemble(net);
    CHECK(ham.V == Eigen::MatrixXd::Identity(3, 3));
}

TEST_CASE("assemble the bare ring") {
    const double c = 0.4;
    HamiltonianMatrices ham = assemble(build_interferometric(2, c));
    for (int i = 0; i < 4; ++i) CHECK(ham.V(i, i) == 1.0 + c);
    for (auto [i, j] : {std::pair{0, 2}, {0, 3}, {1, 2}, {1, 3}})
        CHECK(ham.V(i, j) == -c / 2.0);
    CHECK(ham.V(0, 1) == 0.0);
    CHECK(ham.V(2, 3) == 0.0);
}

TEST_CASE("V keeps the Laplacian structure on random networks") {
    std::mt19937_64 rng(0x9d2f);
    for (int trial = 0; trial < 40; ++trial) {
        HamiltonianMatrices ham = assemble(oracles::random_network(rng));
        const Eigen::MatrixXd lap = ham.V - Eigen::MatrixXd::Identity(ham.n, ham.n);
        CHECK(lap.rowwise().sum().cwiseAbs().maxCoeff() < 1e-13);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(ham.V, Eigen::EigenvaluesOnly);
        CHECK(eig.eigenvalues().minCoeff() >= 1.0 - 1e-12);
    }
}

TEST_CASE("propagator at t=0 is the identity") {
    SpectralPropagator spectral{assemble(build_interferometric(4, 0.3))};
    Propagator e0 = spectral.at(0.0);
    CHECK((e0.E - Eigen::MatrixXd::Identity(12, 12)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("single free oscillator rotates in phase space") {
    HamiltonianMatrices ham{1, Eigen::MatrixXd::Identity(1, 1), Eigen::MatrixXd::Identity(1, 1)};
    SpectralPropagator spectral(ham);
    for (double t : {0.3, 1.0, 7.7, -2.5}) {
        Propagator prop = spectral.at(t);
        CHECK(prop.E(0, 0) == doctest::Approx(std::cos(t)).epsilon(1e-15));
        CHECK(prop.E(0, 1) == doctest::Approx(std::sin(t)).epsilon(1e-15));
        CHECK(prop.E(1, 0) == doctest::Approx(-std::sin(t)).epsilon(1e-15));
        CHECK(prop.E(1, 1) == doctest::Approx(std::cos(t)).epsilon(1e-15));
    }
}

TEST_CASE("one-parameter group property") {
    std::mt19937_64 rng(0xabcd);
    std::uniform_real_distribution<double> time(-10.0, 10.0);
    for (int trial = 0; trial < 25; ++trial) {
        SpectralPropagator spectral{assemble(oracles::random_network(rng, 8))};
        const double t1 = time(rng), t2 = time(rng);
        const Eigen::MatrixXd composed = spectral.at(t1).E * spectral.at(t2).E;
        CHECK((spectral.at(t1 + t2).E - composed).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("propagators are orthogonal and symplectic") {
    std::mt19937_64 rng(0x7777);
    std::uniform_real_distribution<double> time(0.0, 100.0);
    for (int trial = 0; trial < 100; ++trial) {
        OscillatorNetwork net = oracles::random_network(rng);
        SpectralPropagator spectral{assemble(net)};
        const Propagator prop = spectral.at(time(rng));
        const int d = 2 * prop.n;
        const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(d, d);
        CHECK((prop.E * prop.E.transpose() - identity).cwiseAbs().maxCoeff() < 1e-10);
        const Eigen::MatrixXd omega = symplectic_form(prop.n);
        CHECK((prop.E * omega * prop.E.transpose() - omega).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("spectral propagator matches a generic matrix exponential") {
    std::mt19937_64 rng(0x1533);
    std::uniform_real_distribution<double> time(0.0, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        HamiltonianMatrices ham = assemble(oracles::random_network(rng, 6));
        const double t = time(rng);
        const Eigen::MatrixXd reference =
            oracles::expm_scaling_squaring(block_generator(ham.V, t));
        CHECK((propagator(ham, t).E - reference).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("input validation") {
    HamiltonianMatrices ham = assemble(build_chain(3, 1.0));

    HamiltonianMatrices asym = ham;
    asym.V(0, 1) += 1e-9;
    CHECK_THROWS_AS(SpectralPropagator{asym}, std::invalid_argument);

    HamiltonianMatrices non_rwa = ham;
    non_rwa.T(0, 0) += 1e-6;
    CHECK_THROWS_AS(SpectralPropagator{non_rwa}, std::invalid_argument);

    SpectralPropagator good(ham);
    CHECK_THROWS_AS(good.at(std::numeric_limits<double>::infinity()), std::invalid_argument);
    CHECK_THROWS_AS(good.at(std::nan("")), std::invalid_argument);

    // asymmetry at 1e-13 is inside the tolerance
    HamiltonianMatrices tiny = ham;
    tiny.V(0, 1) += 1e-13;
    CHECK_NOTHROW(SpectralPropagator{tiny});
}
