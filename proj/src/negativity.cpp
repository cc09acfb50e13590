#include "oscnet/negativity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oscnet {

namespace {

constexpr double unit_clamp_tol = 1e-12;
constexpr double symmetry_tol = 1e-10;
constexpr double pairing_rel_tol = 1e-9;

// values indistinguishable from 1 are reported as exactly 1, so separable
// states come out with N = 0 instead of 1e-15-scale residue
double clamp_unit(double nu) {
    return std::abs(nu - 1.0) <= unit_clamp_tol ? 1.0 : nu;
}

void require_two_modes(const CovarianceState& state, const char* where) {
    if (state.n != 2)
        throw std::invalid_argument(std::string(where) + " requires exactly 2 modes, got " +
                                    std::to_string(state.n));
}

}

CovarianceState partial_transpose(const CovarianceState& two_mode) {
    require_two_modes(two_mode, "partial_transpose");
    CovarianceState out = two_mode;
    out.gamma.row(3) *= -1.0;
    out.gamma.col(3) *= -1.0;
    return out;
}

std::vector<double> symplectic_eigenvalues(const CovarianceState& state) {
    const int n = state.n;
    const double asym = (state.gamma - state.gamma.transpose()).cwiseAbs().maxCoeff();
    if (asym > symmetry_tol)
        throw std::invalid_argument("covariance matrix is not symmetric (max deviation " +
                                    std::to_string(asym) + ")");

    // eigenvalues of Omega gamma come in +-i nu pairs; collect moduli
    Eigen::MatrixXd omega_gamma(2 * n, 2 * n);
    omega_gamma.topRows(n) = state.gamma.bottomRows(n);
    omega_gamma.bottomRows(n) = -state.gamma.topRows(n);

    std::vector<double> moduli(2 * n);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(omega_gamma, /*computeEigenvectors=*/false);
    if (solver.info() == Eigen::Success) {
        for (int i = 0; i < 2 * n; ++i) moduli[i] = std::abs(solver.eigenvalues()[i]);
    } else {
        // the real Francis iteration occasionally stalls on the clustered
        // +-i spectrum of near-vacuum states; the complex Schur route does not
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> fallback(
            omega_gamma.cast<std::complex<double>>(), /*computeEigenvectors=*/false);
        if (fallback.info() != Eigen::Success)
            throw std::runtime_error("eigensolver failed on Omega gamma");
        for (int i = 0; i < 2 * n; ++i) moduli[i] = std::abs(fallback.eigenvalues()[i]);
    }
    std::sort(moduli.begin(), moduli.end());

    std::vector<double> nus(n);
    for (int i = 0; i < n; ++i) {
        const double lo = moduli[2 * i];
        const double hi = moduli[2 * i + 1];
        if (hi - lo > pairing_rel_tol * std::max(1.0, hi))
            throw std::runtime_error("symplectic spectrum does not pair into +-i nu");
        nus[i] = 0.5 * (lo + hi);
    }
    return nus;
}

NegativityReport log_negativity(const CovarianceState& state, std::pair<int, int> pair) {
    if (pair.first == pair.second)
        throw std::invalid_argument("negativity pair must name two distinct modes");
    if (pair.first < 0 || pair.first >= state.n || pair.second < 0 || pair.second >= state.n)
        throw std::invalid_argument("negativity pair index out of range");

    const int modes[2] = {pair.first, pair.second};
    CovarianceState transposed = partial_transpose(reduce(state, modes));
    std::vector<double> nus = symplectic_eigenvalues(transposed);
    for (double& nu : nus) nu = clamp_unit(nu);

    double total = 0.0;
    for (double nu : nus)
        if (nu < 1.0) total -= std::log(nu);
    return {pair, std::move(nus), total, state.t};
}

namespace {

// Compensated (double-double) products for the symplectic invariants: the
// discriminant Delta^2 - 4 det(gamma) cancels catastrophically whenever the
// two symplectic eigenvalues degenerate, which is the generic situation for
// near-vacuum marginals, and plain doubles lose half their digits there.
struct Twofold {
    double hi = 0.0, lo = 0.0;
};

Twofold two_sum(double a, double b) {
    const double s = a + b;
    const double bv = s - a;
    return {s, (a - (s - bv)) + (b - bv)};
}

Twofold two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

Twofold renormalize(double hi, double lo) {
    const double s = hi + lo;
    return {s, lo - (s - hi)};
}

Twofold add(const Twofold& a, const Twofold& b) {
    const Twofold s = two_sum(a.hi, b.hi);
    return renormalize(s.hi, s.lo + a.lo + b.lo);
}

Twofold mul(const Twofold& a, const Twofold& b) {
    const Twofold p = two_prod(a.hi, b.hi);
    return renormalize(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

Twofold negate(const Twofold& a) { return {-a.hi, -a.lo}; }

Twofold scale_pow2(const Twofold& a, double c) { return {a.hi * c, a.lo * c}; }

Twofold det2(double a, double b, double c, double d) {   // of [[a, b], [c, d]]
    return add(two_prod(a, d), negate(two_prod(b, c)));
}

Twofold det4(const Eigen::Matrix4d& g) {
    // Laplace expansion over complementary 2x2 minors of rows (0,1) and (2,3)
    auto top = [&g](int i, int j) { return det2(g(0, i), g(0, j), g(1, i), g(1, j)); };
    auto bottom = [&g](int i, int j) { return det2(g(2, i), g(2, j), g(3, i), g(3, j)); };
    Twofold total = mul(top(0, 1), bottom(2, 3));
    total = add(total, negate(mul(top(0, 2), bottom(1, 3))));
    total = add(total, mul(top(0, 3), bottom(1, 2)));
    total = add(total, mul(top(1, 2), bottom(0, 3)));
    total = add(total, negate(mul(top(1, 3), bottom(0, 2))));
    return add(total, mul(top(2, 3), bottom(0, 1)));
}

}

double two_mode_negativity_closed_form(const CovarianceState& two_mode) {
    require_two_modes(two_mode, "two_mode_negativity_closed_form");
    const Eigen::Matrix4d g = two_mode.gamma;

    // per-mode blocks of the (q_A, q_B, p_A, p_B) ordering
    const Twofold det_a = det2(g(0, 0), g(0, 2), g(2, 0), g(2, 2));
    const Twofold det_b = det2(g(1, 1), g(1, 3), g(3, 1), g(3, 3));
    const Twofold det_c = det2(g(0, 1), g(0, 3), g(2, 1), g(2, 3));
    const Twofold det_g = det4(g);

    // partial transposition flips the sign of det C
    const Twofold delta_pt = add(add(det_a, det_b), scale_pow2(det_c, -2.0));
    const Twofold disc = add(mul(delta_pt, delta_pt), scale_pow2(det_g, -4.0));
    const double root = std::sqrt(std::max(disc.hi, 0.0));

    // larger root additively, smaller via the product: splitting them by
    // subtraction would reintroduce the cancellation
    const double nu_plus_sq = 0.5 * (delta_pt.hi + root);
    if (!(nu_plus_sq > 0.0))
        throw std::invalid_argument("covariance matrix is not a valid two-mode state");
    const double nu_minus_sq = std::max(det_g.hi, 0.0) / nu_plus_sq;

    double total = 0.0;
    for (double nu : {clamp_unit(std::sqrt(nu_minus_sq)), clamp_unit(std::sqrt(nu_plus_sq))})
        if (nu < 1.0) total -= std::log(nu);
    return total;
}

}
