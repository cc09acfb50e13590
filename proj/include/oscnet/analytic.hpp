#pragma once

namespace oscnet {

/// Closed-form verdict for the ring with both references squeezed by the
/// same magnitude r and relative angle delta. `entangling` is true exactly
/// when |cos(delta/2)| > tanh(r), strictly: at the boundary and at r = 0
/// the minimal symplectic eigenvalue never drops below 1. `threshold` is
/// delta*(r), the half-width of the entangling window in [-pi, pi].
struct LocalizationVerdict {
    double r = 0.0;
    double delta = 0.0;
    bool entangling = false;
    double threshold = 0.0;
};

/// The one symplectic eigenvalue of the partially transposed hub pair that
/// can drop below 1 for the ring (chain length 2):
///
///   nu = sqrt(|cos^2(ct) + sin^2(ct) [cosh(2r) - sinh(2r) |cos(delta/2)|]|)
///
/// Depends on c and t only through the product ct.
double m2_symplectic_eigenvalue(double r, double delta, double ct);

/// Entangling iff |cos(delta/2)| exceeds tanh(r); independent of the
/// coupling constant. Both algebraic forms of the right-hand side,
/// (cosh(2r)-1)/sinh(2r) and tanh(r), are evaluated and must agree.
LocalizationVerdict entanglement_condition(double r, double delta);

/// delta*(r) = 2 arccos(tanh r): entangling for |delta| < delta* within
/// [-pi, pi], non-entangling on [delta*, 2pi - delta*]. Requires r > 0.
double delta_threshold(double r);

}
