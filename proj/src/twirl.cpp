#include "relframe/twirl.hpp"

#include <algorithm>
#include <cmath>

namespace relframe {

DensityMatrix4 DensityMatrix4::from_matrix(const Matrix4cd& m) {
  if (!all_finite(m)) throw InvalidInput("density matrix entries must be finite");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw InvalidInput("density matrix must be Hermitian");
  }
  if (std::abs(m.trace() - Complexd(1.0, 0.0)) > kTraceTol) {
    throw InvalidInput("density matrix must have unit trace");
  }
  const Matrix4cd herm = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix4cd> eig(herm);
  const Eigen::Vector4d evals = eig.eigenvalues();
  if (evals.minCoeff() < -kNegativeEigenTol) {
    throw InvalidInput("density matrix must be positive semidefinite");
  }
  if (evals.minCoeff() >= 0.0) return DensityMatrix4(herm);

  const Eigen::Vector4d clamped = evals.cwiseMax(0.0);
  const Matrix4cd rebuilt = eig.eigenvectors() * clamped.cast<Complexd>().asDiagonal() *
                            eig.eigenvectors().adjoint();
  return DensityMatrix4(rebuilt / clamped.sum());
}

DensityMatrix4 DensityMatrix4::pure(const StateVector2Q& s) {
  return DensityMatrix4(s.amps() * s.amps().adjoint());
}

Matrix4cd singlet_projector() {
  const Vector4cd v = singlet_state().amps();
  return v * v.adjoint();
}

Matrix4cd triplet_projector() {
  return Matrix4cd::Identity() - singlet_projector();
}

double p_singlet_closed(const RelativeParams& p) {
  return (1 - std::cos(p.theta())) * (1 + std::sin(2 * p.alpha()) * std::cos(p.psi())) / 4;
}

OutcomeProbs p_outcomes_state(const StateVector2Q& s) {
  const double p0 = std::clamp((s.amps().adjoint() * singlet_projector() * s.amps())(0).real(), 0.0, 1.0);
  return {p0, 1 - p0};
}

DensityMatrix4 twirl_analytic(const DensityMatrix4& rho) {
  const Matrix4cd p0 = singlet_projector();
  const double w0 = (p0 * rho.matrix()).trace().real();
  const double w1 = rho.trace() - w0;
  return DensityMatrix4::from_matrix(w0 * p0 + (w1 / 3.0) * triplet_projector());
}

DensityMatrix4 twirl_monte_carlo(const DensityMatrix4& rho, std::size_t n, RandomStream& stream) {
  return twirl_monte_carlo(rho, n, [&stream] { return haar_su2<double>(stream); });
}

double max_entry_distance(const Matrix4cd& a, const Matrix4cd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace relframe
