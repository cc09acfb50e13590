#pragma once

#include <Eigen/Dense>

#include "oscnet/network.hpp"

namespace oscnet {

/// Quadratic forms of H = (1/2)(q V q^T + p T p^T). In the rotating wave
/// regime treated here T == V always; both are kept so the contract is
/// explicit at the boundaries.
struct HamiltonianMatrices {
    int n = 0;
    Eigen::MatrixXd V;
    Eigen::MatrixXd T;
};

/// Symplectic one-parameter propagator E(t), 2n x 2n in (q-block, p-block)
/// ordering. E is orthogonal and symplectic to 1e-10.
struct Propagator {
    int n = 0;
    double t = 0.0;
    Eigen::MatrixXd E;
};

/// V = I + (1/2) sum_e w_e L_e with L_e the single-edge Laplacian, T = V.
HamiltonianMatrices assemble(const OscillatorNetwork& net);

/// Holds the eigendecomposition V = O diag(lambda) O^T so that repeated
/// evaluation of E(t) over a time grid costs O(n^2) per point:
///
///   E(t) = [[cos(Vt), sin(Vt)], [-sin(Vt), cos(Vt)]]
///
/// which equals exp([[0,T],[-V,0]] t) when T = V. Rejects inputs with
/// max|V - V^T| > 1e-12 or max|T - V| > 1e-12.
class SpectralPropagator {
public:
    explicit SpectralPropagator(const HamiltonianMatrices& ham);

    int size() const { return n_; }
    Propagator at(double t) const;

    /// cos(Vt) and sin(Vt) as n x n blocks, cheaper than assembling E.
    void trig_blocks(double t, Eigen::MatrixXd& cos_vt, Eigen::MatrixXd& sin_vt) const;

    const Eigen::VectorXd& frequencies() const { return frequencies_; }
    const Eigen::MatrixXd& basis() const { return basis_; }

private:
    int n_;
    Eigen::VectorXd frequencies_;   // eigenvalues of V
    Eigen::MatrixXd basis_;         // orthonormal eigenvectors, columns
};

/// One-shot convenience; decomposes V on every call.
Propagator propagator(const HamiltonianMatrices& ham, double t);

}
