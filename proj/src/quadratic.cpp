#include "oscnet/quadratic.hpp"

#include <cmath>
#include <stdexcept>

namespace oscnet {

HamiltonianMatrices assemble(const OscillatorNetwork& net) {
    const int n = net.size();
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    // each coupling term (w/4)[(q_i - q_j)^2 + ...] adds w/2 of the
    // single-edge Laplacian to both quadratic forms
    for (const Edge& e : net.edges()) {
        const double half = 0.5 * e.weight;
        v(e.a, e.a) += half;
        v(e.b, e.b) += half;
        v(e.a, e.b) -= half;
        v(e.b, e.a) -= half;
    }
    return {n, v, v};
}

SpectralPropagator::SpectralPropagator(const HamiltonianMatrices& ham) : n_(ham.n) {
    if (ham.V.rows() != n_ || ham.V.cols() != n_ || ham.T.rows() != n_ || ham.T.cols() != n_)
        throw std::invalid_argument("Hamiltonian matrix dimensions do not match mode count");
    if (n_ < 1)
        throw std::invalid_argument("Hamiltonian must have at least one mode");

    const double asym = (ham.V - ham.V.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12)
        throw std::invalid_argument("V is not symmetric (max |V - V^T| = " +
                                    std::to_string(asym) + ")");
    const double rwa_gap = (ham.T - ham.V).cwiseAbs().maxCoeff();
    if (rwa_gap > 1e-12)
        throw std::invalid_argument("T != V: outside the supported rotating-wave regime");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(ham.V);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition of V failed");
    frequencies_ = solver.eigenvalues();
    basis_ = solver.eigenvectors();
}

void SpectralPropagator::trig_blocks(double t, Eigen::MatrixXd& cos_vt,
                                     Eigen::MatrixXd& sin_vt) const {
    if (!std::isfinite(t)) throw std::invalid_argument("time must be finite");
    const Eigen::ArrayXd phase = frequencies_.array() * t;
    cos_vt.noalias() = basis_ * phase.cos().matrix().asDiagonal() * basis_.transpose();
    sin_vt.noalias() = basis_ * phase.sin().matrix().asDiagonal() * basis_.transpose();
}

Propagator SpectralPropagator::at(double t) const {
    Eigen::MatrixXd cos_vt, sin_vt;
    trig_blocks(t, cos_vt, sin_vt);
    Eigen::MatrixXd e(2 * n_, 2 * n_);
    e.topLeftCorner(n_, n_) = cos_vt;
    e.topRightCorner(n_, n_) = sin_vt;
    e.bottomLeftCorner(n_, n_) = -sin_vt;
    e.bottomRightCorner(n_, n_) = cos_vt;
    return {n_, t, std::move(e)};
}

Propagator propagator(const HamiltonianMatrices& ham, double t) {
    return SpectralPropagator(ham).at(t);
}

}
