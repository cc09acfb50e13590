#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "oscnet/quadratic.hpp"

namespace oscnet {

/// Initial Gaussian preparation of a single mode. Only second moments are
/// tracked anywhere in this library, so a coherent state is handled as
/// vacuum: displacements never enter the negativity.
class ModePreparation {
public:
    enum class Kind { vacuum, squeezed, thermal, coherent };

    static ModePreparation vacuum() { return {Kind::vacuum, 0.0, 0.0}; }
    static ModePreparation coherent() { return {Kind::coherent, 0.0, 0.0}; }
    static ModePreparation squeezed(double r, double phi);
    static ModePreparation thermal(double nbar);

    Kind kind() const { return kind_; }
    double squeeze_magnitude() const { return r_; }
    double squeeze_phase() const { return phi_; }   // reduced to [0, 2pi)
    double mean_occupation() const { return nbar_; }

    /// 2x2 covariance block in this mode's (q, p) basis; vacuum = identity.
    Eigen::Matrix2d covariance_block() const;

private:
    ModePreparation(Kind kind, double a, double b);

    Kind kind_;
    double r_ = 0.0;      // squeezed
    double phi_ = 0.0;    // squeezed
    double nbar_ = 0.0;   // thermal
};

/// Covariance matrix gamma_ij = 2 Re <(R_i - <R_i>)(R_j - <R_j>)> in the
/// fixed ordering R = (q_0..q_{n-1}, p_0..p_{n-1}); single-mode vacuum is
/// the 2x2 identity. Physical states satisfy gamma + i Omega >= 0.
struct CovarianceState {
    int n = 0;
    Eigen::MatrixXd gamma;
    double t = 0.0;
};

/// Symplectic form Omega = [[0, I], [-I, 0]] for n modes.
Eigen::MatrixXd symplectic_form(int n);

/// Direct sum of the per-mode blocks, placed into the qq/pp/qp sectors.
CovarianceState initial_covariance(const std::vector<ModePreparation>& preps);

/// gamma' = E gamma E^T, resymmetrized; time stamps add.
CovarianceState evolve(const CovarianceState& state, const Propagator& propagator);

/// Marginal state of the selected modes, in the order given.
CovarianceState reduce(const CovarianceState& state, std::span<const int> modes);

/// Smallest eigenvalue of the Hermitian matrix gamma + i Omega.
double physicality_eigenvalue(const CovarianceState& state);

/// gamma + i Omega >= -tol, the Heisenberg constraint up to roundoff.
bool is_physical(const CovarianceState& state, double tol = 1e-8);

}
