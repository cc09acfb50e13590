#include "oscnet/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

namespace oscnet {

ModePreparation::ModePreparation(Kind kind, double a, double b) : kind_(kind) {
    switch (kind) {
        case Kind::squeezed: r_ = a; phi_ = b; break;
        case Kind::thermal: nbar_ = a; break;
        default: break;
    }
}

ModePreparation ModePreparation::squeezed(double r, double phi) {
    if (r < 0.0 || !std::isfinite(r))
        throw std::invalid_argument("squeezing magnitude must be >= 0");
    if (!std::isfinite(phi))
        throw std::invalid_argument("squeezing phase must be finite");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    phi = std::fmod(phi, two_pi);
    if (phi < 0.0) phi += two_pi;
    return {Kind::squeezed, r, phi};
}

ModePreparation ModePreparation::thermal(double nbar) {
    if (nbar < 0.0 || !std::isfinite(nbar))
        throw std::invalid_argument("mean occupation must be >= 0");
    return {Kind::thermal, nbar, 0.0};
}

Eigen::Matrix2d ModePreparation::covariance_block() const {
    Eigen::Matrix2d block = Eigen::Matrix2d::Identity();
    switch (kind_) {
        case Kind::vacuum:
        case Kind::coherent:
            break;
        case Kind::thermal:
            block *= 2.0 * nbar_ + 1.0;
            break;
        case Kind::squeezed: {
            // squeeze operator convention a -> a cosh r - a^+ e^{i phi} sinh r;
            // phi = 0 squeezes q
            const double ch = std::cosh(2.0 * r_);
            const double sh = std::sinh(2.0 * r_);
            block(0, 0) = ch - sh * std::cos(phi_);
            block(1, 1) = ch + sh * std::cos(phi_);
            block(0, 1) = block(1, 0) = -sh * std::sin(phi_);
            break;
        }
    }
    return block;
}

Eigen::MatrixXd symplectic_form(int n) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    omega.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
    omega.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
    return omega;
}

CovarianceState initial_covariance(const std::vector<ModePreparation>& preps) {
    const int n = static_cast<int>(preps.size());
    if (n == 0) throw std::invalid_argument("preparation list must be nonempty");

    Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        const Eigen::Matrix2d block = preps[k].covariance_block();
        gamma(k, k) = block(0, 0);
        gamma(k, n + k) = block(0, 1);
        gamma(n + k, k) = block(1, 0);
        gamma(n + k, n + k) = block(1, 1);
    }
    return {n, std::move(gamma), 0.0};
}

CovarianceState evolve(const CovarianceState& state, const Propagator& propagator) {
    if (state.n != propagator.n)
        throw std::invalid_argument("state has " + std::to_string(state.n) +
                                    " modes but propagator has " +
                                    std::to_string(propagator.n));
    Eigen::MatrixXd evolved = propagator.E * state.gamma * propagator.E.transpose();
    evolved = 0.5 * (evolved + evolved.transpose()).eval();
    return {state.n, std::move(evolved), state.t + propagator.t};
}

CovarianceState reduce(const CovarianceState& state, std::span<const int> modes) {
    const int k = static_cast<int>(modes.size());
    std::unordered_set<int> seen;
    for (int m : modes) {
        if (m < 0 || m >= state.n)
            throw std::invalid_argument("mode index " + std::to_string(m) + " out of range");
        if (!seen.insert(m).second)
            throw std::invalid_argument("duplicate mode index " + std::to_string(m));
    }

    Eigen::MatrixXd gamma(2 * k, 2 * k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            gamma(i, j) = state.gamma(modes[i], modes[j]);
            gamma(i, k + j) = state.gamma(modes[i], state.n + modes[j]);
            gamma(k + i, j) = state.gamma(state.n + modes[i], modes[j]);
            gamma(k + i, k + j) = state.gamma(state.n + modes[i], state.n + modes[j]);
        }
    }
    return {k, std::move(gamma), state.t};
}

double physicality_eigenvalue(const CovarianceState& state) {
    using Complex = std::complex<double>;
    Eigen::MatrixXcd h = state.gamma.cast<Complex>() +
                         Complex(0.0, 1.0) * symplectic_form(state.n).cast<Complex>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool is_physical(const CovarianceState& state, double tol) {
    return physicality_eigenvalue(state) >= -tol;
}

}
