#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "oscnet/analytic.hpp"
#include "oscnet/negativity.hpp"

using namespace oscnet;

namespace {

// fully evolved ring state with both references squeezed by r at angles 0, delta
CovarianceState ring_state(double r, double delta, double ct, double c = 1.0) {
    SpectralPropagator spectral{assemble(build_interferometric(2, c))};
    CovarianceState initial = initial_covariance(
        {ModePreparation::squeezed(r, 0.0), ModePreparation::squeezed(r, delta),
         ModePreparation::vacuum(), ModePreparation::vacuum()});
    return evolve(initial, spectral.at(ct / c));
}

CovarianceState random_two_mode(std::mt19937_64& rng) {
    auto sample = oracles::random_evolved_state(rng);
    std::uniform_int_distribution<int> pick(0, sample.state.n - 1);
    int a = pick(rng), b = pick(rng);
    while (b == a) b = pick(rng);
    const int modes[] = {a, b};
    return reduce(sample.state, modes);
}

}

TEST_CASE("partial transpose basics") {
    CovarianceState vac = initial_covariance(
        std::vector<ModePreparation>(2, ModePreparation::vacuum()));
    CHECK(partial_transpose(vac).gamma == Eigen::MatrixXd::Identity(4, 4));

    std::mt19937_64 rng(0x5150);
    for (int trial = 0; trial < 20; ++trial) {
        CovarianceState state = random_two_mode(rng);
        CovarianceState twice = partial_transpose(partial_transpose(state));
        CHECK((twice.gamma - state.gamma).cwiseAbs().maxCoeff() == 0.0);
    }

    CovarianceState three = initial_covariance(
        std::vector<ModePreparation>(3, ModePreparation::vacuum()));
    CHECK_THROWS_AS(partial_transpose(three), std::invalid_argument);
}

TEST_CASE("ring at the quarter period reaches nu = 1/e") {
    CovarianceState state = ring_state(1.0, 0.0, std::numbers::pi / 2);
    NegativityReport rep = log_negativity(state, {2, 3});
    CHECK(rep.nus.front() == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(rep.N == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("symplectic eigenvalues of simple states") {
    for (int n : {1, 2, 4}) {
        CovarianceState vac = initial_covariance(
            std::vector<ModePreparation>(n, ModePreparation::vacuum()));
        for (double nu : symplectic_eigenvalues(vac)) CHECK(nu == doctest::Approx(1.0));
    }
    for (double r : {0.3, 1.0, 1.75}) {
        CovarianceState squeezed = initial_covariance({ModePreparation::squeezed(r, 0.0)});
        auto nus = symplectic_eigenvalues(squeezed);
        REQUIRE(nus.size() == 1);
        CHECK(nus[0] == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("symplectic eigenvalues match the two-mode invariant formula") {
    std::mt19937_64 rng(0xc0ffee);
    for (int trial = 0; trial < 300; ++trial) {
        CovarianceState state = random_two_mode(rng);
        auto nus = symplectic_eigenvalues(state);
        auto [lo, hi] = oracles::two_mode_symplectic_closed_form(state.gamma);
        CHECK(nus[0] == doctest::Approx(lo).epsilon(1e-9));
        CHECK(nus[1] == doctest::Approx(hi).epsilon(1e-9));
    }
}

TEST_CASE("physical states satisfy the uncertainty bound") {
    std::mt19937_64 rng(0xacdc);
    for (int trial = 0; trial < 50; ++trial) {
        auto sample = oracles::random_evolved_state(rng);
        for (double nu : symplectic_eigenvalues(sample.state)) CHECK(nu >= 1.0 - 1e-8);
    }
}

TEST_CASE("asymmetric input is rejected") {
    CovarianceState state = initial_covariance(
        std::vector<ModePreparation>(2, ModePreparation::vacuum()));
    state.gamma(0, 1) += 1e-6;
    CHECK_THROWS_AS(symplectic_eigenvalues(state), std::invalid_argument);
}

TEST_CASE("global vacuum has no negativity anywhere") {
    CovarianceState vac = initial_covariance(
        std::vector<ModePreparation>(4, ModePreparation::vacuum()));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (a != b) CHECK(log_negativity(vac, {a, b}).N == 0.0);
}

TEST_CASE("aligned squeezing entangles the ring, opposite squeezing never does") {
    for (double ct : {0.4, 1.2, std::numbers::pi / 2, 3.0}) {
        CHECK(log_negativity(ring_state(1.0, 0.0, ct), {2, 3}).N > 0.0);
        CHECK(log_negativity(ring_state(1.0, std::numbers::pi, ct), {2, 3}).N == 0.0);
    }
    // delta inside the entangling window
    CHECK(log_negativity(ring_state(1.0, 0.5, std::numbers::pi / 2), {2, 3}).N > 0.0);
}

TEST_CASE("pair validation") {
    CovarianceState vac = initial_covariance(
        std::vector<ModePreparation>(3, ModePreparation::vacuum()));
    CHECK_THROWS_AS(log_negativity(vac, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(log_negativity(vac, {0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(log_negativity(vac, {-1, 0}), std::invalid_argument);
}

TEST_CASE("negativity does not depend on which side is transposed") {
    std::mt19937_64 rng(0x90210);
    for (int trial = 0; trial < 60; ++trial) {
        auto sample = oracles::random_evolved_state(rng);
        std::uniform_int_distribution<int> pick(0, sample.state.n - 1);
        int a = pick(rng), b = pick(rng);
        while (b == a) b = pick(rng);
        const double forward = log_negativity(sample.state, {a, b}).N;
        const double backward = log_negativity(sample.state, {b, a}).N;
        CHECK(forward == doctest::Approx(backward).epsilon(1e-10));
    }
}

TEST_CASE("N turns on exactly when the smallest eigenvalue crosses 1") {
    // sweep the ring through a quarter period: nu falls, N rises strictly
    double previous_nu = 2.0, previous_n = -1.0;
    for (double ct = 0.1; ct <= std::numbers::pi / 2 + 1e-9; ct += 0.1) {
        NegativityReport rep = log_negativity(ring_state(1.0, 0.0, ct), {2, 3});
        CHECK(rep.nus.front() < previous_nu);
        CHECK(rep.N > previous_n);
        CHECK((rep.N == 0.0) == (rep.nus.front() >= 1.0));
        previous_nu = rep.nus.front();
        previous_n = rep.N;
    }
}

TEST_CASE("at most one eigenvalue of the transposed ring state drops below 1") {
    for (double r : {0.5, 1.0, 2.0})
        for (double delta = 0.0; delta < 2.0 * std::numbers::pi; delta += 0.7)
            for (double ct = 0.0; ct <= 6.3; ct += 0.35) {
                NegativityReport rep = log_negativity(ring_state(r, delta, ct), {2, 3});
                CHECK(rep.nus.back() >= 1.0 - 1e-9);
            }
}

TEST_CASE("closed form agrees with the eigensolver route") {
    CovarianceState vac = initial_covariance(
        std::vector<ModePreparation>(2, ModePreparation::vacuum()));
    CHECK(two_mode_negativity_closed_form(vac) == 0.0);

    CovarianceState anchor = ring_state(1.0, 0.0, std::numbers::pi / 2);
    const int hubs[] = {2, 3};
    CHECK(two_mode_negativity_closed_form(reduce(anchor, hubs)) ==
          doctest::Approx(1.0).epsilon(1e-12));

    std::mt19937_64 rng(0xd1ce);
    for (int trial = 0; trial < 2000; ++trial) {
        CovarianceState state = random_two_mode(rng);
        const double direct = log_negativity(state, {0, 1}).N;
        const double closed = two_mode_negativity_closed_form(state);
        CHECK(std::abs(direct - closed) < 1e-10);
    }

    CovarianceState three = initial_covariance(
        std::vector<ModePreparation>(3, ModePreparation::vacuum()));
    CHECK_THROWS_AS(two_mode_negativity_closed_form(three), std::invalid_argument);
}
