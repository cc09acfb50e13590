#include "oscnet/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace oscnet {

double m2_symplectic_eigenvalue(double r, double delta, double ct) {
    if (r < 0.0 || !std::isfinite(r))
        throw std::invalid_argument("squeezing magnitude must be >= 0");
    const double cos_ct = std::cos(ct);
    const double sin_ct = std::sin(ct);
    const double bracket = std::cosh(2.0 * r) -
                           std::sinh(2.0 * r) * std::abs(std::cos(0.5 * delta));
    return std::sqrt(std::abs(cos_ct * cos_ct + sin_ct * sin_ct * bracket));
}

LocalizationVerdict entanglement_condition(double r, double delta) {
    if (r < 0.0 || !std::isfinite(r))
        throw std::invalid_argument("squeezing magnitude must be >= 0");

    const double rhs = std::tanh(r);
    if (r > 0.0 && r < 20.0) {
        // the (cosh - 1)/sinh form from the original derivation must agree
        const double legacy = (std::cosh(2.0 * r) - 1.0) / std::sinh(2.0 * r);
        if (std::abs(legacy - rhs) > 1e-12)
            throw std::logic_error("entanglement condition forms disagree");
    }

    // strict inequality: at the boundary the minimal symplectic eigenvalue
    // only reaches 1, and r = 0 references are classical
    const bool entangling = r > 0.0 && std::abs(std::cos(0.5 * delta)) > rhs;
    const double threshold = r > 0.0 ? delta_threshold(r) : std::acos(-1.0);
    return {r, delta, entangling, threshold};
}

double delta_threshold(double r) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw std::invalid_argument("threshold requires r > 0");
    return 2.0 * std::acos(std::tanh(r));
}

}
