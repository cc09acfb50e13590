#pragma once

#include <utility>
#include <vector>

#include "oscnet/gaussian.hpp"

namespace oscnet {

/// Result of a two-mode logarithmic-negativity evaluation. `nus` holds the
/// symplectic eigenvalues of the partially transposed reduced state,
/// ascending, after the unit clamp (values within 1e-12 of 1 are reported
/// as exactly 1), so N == -sum ln(min(1, nu)) holds identically and
/// separable states report N = 0 exactly.
struct NegativityReport {
    std::pair<int, int> pair{0, 0};
    std::vector<double> nus;
    double N = 0.0;
    double t = 0.0;
};

/// gamma^{T_B} = P gamma P with P = diag(1,1,1,-1) in (q_A,q_B,p_A,p_B)
/// ordering: the sign of mode B's momentum row/column flips.
CovarianceState partial_transpose(const CovarianceState& two_mode);

/// Moduli of the eigenvalues of Omega gamma, which come in +-i nu pairs;
/// each nu returned once, ascending. The +- pairing is validated with a
/// 1e-9 relative tolerance.
std::vector<double> symplectic_eigenvalues(const CovarianceState& state);

/// N = -sum_j ln min(1, nu_j) over the symplectic spectrum of the
/// partially transposed (A, B) marginal. Base-e, dimensionless.
NegativityReport log_negativity(const CovarianceState& state, std::pair<int, int> pair);

/// Same N from the symplectic invariants Dtilde = det A + det B - 2 det C
/// without forming P gamma P; the smaller root is evaluated in product
/// form to dodge the cancellation at near-degenerate spectra. Used as an
/// internal cross-check of log_negativity (agreement to 1e-10).
double two_mode_negativity_closed_form(const CovarianceState& two_mode);

}
