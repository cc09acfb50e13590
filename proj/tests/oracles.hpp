// Test-only oracles and generators, kept independent of the library paths
// they are used to check.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "oscnet/gaussian.hpp"
#include "oscnet/network.hpp"
#include "oscnet/quadratic.hpp"

namespace oracles {

/// Plain scaling-and-squaring matrix exponential: scale until the inf-norm
/// is below 1/2, run the Taylor series to machine precision, square back.
inline Eigen::MatrixXd expm_scaling_squaring(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    while (norm > 0.5) {
        norm *= 0.5;
        ++squarings;
    }
    const Eigen::MatrixXd scaled = a / std::ldexp(1.0, squarings);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd sum = term;
    for (int k = 1; k <= 24; ++k) {
        term = (term * scaled / static_cast<double>(k)).eval();
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) sum = (sum * sum).eval();
    return sum;
}

/// Covariance block of squeezed vacuum from its Fock expansion
/// |r e^{i phi}> = sum_k c_{2k} |2k>, c_{2(k+1)}/c_{2k} =
/// -e^{i phi} tanh(r) sqrt((2k+1)/(2k+2)), truncated at the photon cutoff,
/// normalized, moments taken with ladder-operator matrix elements and
/// doubled into the covariance convention where vacuum = identity.
inline Eigen::Matrix2d squeezed_block_fock(double r, double phi, int photon_cutoff) {
    using Complex = std::complex<double>;
    const int pairs = photon_cutoff / 2;
    std::vector<Complex> amps(pairs + 1);
    amps[0] = Complex(1.0, 0.0);
    const Complex ratio = -std::polar(std::tanh(r), phi);
    for (int k = 0; k < pairs; ++k)
        amps[k + 1] = amps[k] * ratio * std::sqrt((2.0 * k + 1.0) / (2.0 * k + 2.0));

    double norm2 = 0.0;
    for (const Complex& c : amps) norm2 += std::norm(c);
    for (Complex& c : amps) c /= std::sqrt(norm2);

    double mean_n = 0.0;
    Complex a_squared(0.0, 0.0);
    for (int k = 0; k <= pairs; ++k) {
        mean_n += 2.0 * k * std::norm(amps[k]);
        if (k >= 1)
            a_squared += std::conj(amps[k - 1]) * amps[k] *
                         std::sqrt(2.0 * k * (2.0 * k - 1.0));
    }

    Eigen::Matrix2d block;
    block(0, 0) = 1.0 + 2.0 * mean_n + 2.0 * a_squared.real();
    block(1, 1) = 1.0 + 2.0 * mean_n - 2.0 * a_squared.real();
    block(0, 1) = block(1, 0) = 2.0 * a_squared.imag();
    return block;
}

// compensated dot products for the invariant formula: without them the
// discriminant loses half its digits near degenerate spectra
namespace compensated {

struct Value {
    double hi = 0.0, lo = 0.0;
};

inline Value two_sum(double a, double b) {
    const double s = a + b;
    const double bv = s - a;
    return {s, (a - (s - bv)) + (b - bv)};
}

inline Value two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline Value normalize(double hi, double lo) {
    const double s = hi + lo;
    return {s, lo - (s - hi)};
}

inline Value add(Value a, Value b) {
    const Value s = two_sum(a.hi, b.hi);
    return normalize(s.hi, s.lo + a.lo + b.lo);
}

inline Value mul(Value a, Value b) {
    const Value p = two_prod(a.hi, b.hi);
    return normalize(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline Value neg(Value a) { return {-a.hi, -a.lo}; }

inline Value det2(double a, double b, double c, double d) {
    return add(two_prod(a, d), neg(two_prod(b, c)));
}

inline Value det4(const Eigen::Matrix4d& g) {
    auto top = [&g](int i, int j) { return det2(g(0, i), g(0, j), g(1, i), g(1, j)); };
    auto bot = [&g](int i, int j) { return det2(g(2, i), g(2, j), g(3, i), g(3, j)); };
    Value total = mul(top(0, 1), bot(2, 3));
    total = add(total, neg(mul(top(0, 2), bot(1, 3))));
    total = add(total, mul(top(0, 3), bot(1, 2)));
    total = add(total, mul(top(1, 2), bot(0, 3)));
    total = add(total, neg(mul(top(1, 3), bot(0, 2))));
    return add(total, mul(top(2, 3), bot(0, 1)));
}

}

/// Symplectic spectrum of a two-mode covariance matrix from its invariants:
/// nu_{+-}^2 = (Delta +- sqrt(Delta^2 - 4 det g)) / 2 with
/// Delta = det A + det B + 2 det C. Smaller root via the product to stay
/// accurate near degeneracy. Input ordering (q_A, q_B, p_A, p_B).
inline std::pair<double, double> two_mode_symplectic_closed_form(const Eigen::Matrix4d& g) {
    namespace cc = compensated;
    const cc::Value det_a = cc::det2(g(0, 0), g(0, 2), g(2, 0), g(2, 2));
    const cc::Value det_b = cc::det2(g(1, 1), g(1, 3), g(3, 1), g(3, 3));
    const cc::Value det_c = cc::det2(g(0, 1), g(0, 3), g(2, 1), g(2, 3));
    const cc::Value det_g = cc::det4(g);
    const cc::Value delta = cc::add(cc::add(det_a, det_b), {2.0 * det_c.hi, 2.0 * det_c.lo});
    const cc::Value disc = cc::add(cc::mul(delta, delta), {-4.0 * det_g.hi, -4.0 * det_g.lo});
    const double root = std::sqrt(std::max(disc.hi, 0.0));
    const double nu_plus_sq = 0.5 * (delta.hi + root);
    const double nu_minus_sq = std::max(det_g.hi, 0.0) / nu_plus_sq;
    return {std::sqrt(nu_minus_sq), std::sqrt(nu_plus_sq)};
}

inline oscnet::OscillatorNetwork random_network(std::mt19937_64& rng, int max_nodes = 12,
                                                double max_weight = 2.0) {
    std::uniform_int_distribution<int> node_count(2, max_nodes);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n = node_count(rng);

    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    std::vector<oscnet::Edge> edges;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (unit(rng) < 0.35)
                edges.push_back({a, b, max_weight * (1.0 - unit(rng))});  // (0, max]
    if (edges.empty()) edges.push_back({0, 1, max_weight * (1.0 - unit(rng))});
    return oscnet::OscillatorNetwork(std::move(labels), std::move(edges));
}

inline std::vector<oscnet::ModePreparation> random_preparations(std::mt19937_64& rng, int n,
                                                                bool pure_only = false) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<oscnet::ModePreparation> preps;
    preps.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double pick = unit(rng);
        if (pick < 0.40) {
            preps.push_back(oscnet::ModePreparation::vacuum());
        } else if (pick < 0.75 || pure_only) {
            preps.push_back(oscnet::ModePreparation::squeezed(1.8 * unit(rng),
                                                              2.0 * M_PI * unit(rng)));
        } else if (pick < 0.90) {
            preps.push_back(oscnet::ModePreparation::thermal(3.0 * unit(rng)));
        } else {
            preps.push_back(oscnet::ModePreparation::coherent());
        }
    }
    return preps;
}

struct EvolvedSample {
    oscnet::OscillatorNetwork net;
    oscnet::CovarianceState state;   // full evolved state
    double t;
};

inline EvolvedSample random_evolved_state(std::mt19937_64& rng, bool pure_only = false,
                                          double max_time = 50.0, int max_nodes = 8) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    oscnet::OscillatorNetwork net = random_network(rng, max_nodes);
    auto preps = random_preparations(rng, net.size(), pure_only);
    oscnet::SpectralPropagator spectral{oscnet::assemble(net)};
    const double t = max_time * unit(rng);
    oscnet::CovarianceState state =
        oscnet::evolve(oscnet::initial_covariance(preps), spectral.at(t));
    return {std::move(net), std::move(state), t};
}

}
