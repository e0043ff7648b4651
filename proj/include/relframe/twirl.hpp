#pragma once

#include <concepts>
#include <cstddef>

#include "relframe/relative_state.hpp"
#include "relframe/su2.hpp"

namespace relframe {

// Hermitian, unit-trace, positive semidefinite 4x4 matrix.
class DensityMatrix4 {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kNegativeEigenTol = 1e-10;

  // Validates; eigenvalues in [-1e-10, 0) are clamped to zero and the trace
  // renormalised.
  static DensityMatrix4 from_matrix(const Matrix4cd& m);
  static DensityMatrix4 pure(const StateVector2Q& s);

  const Matrix4cd& matrix() const { return m_; }
  double trace() const { return m_.trace().real(); }

 private:
  explicit DensityMatrix4(const Matrix4cd& m) : m_(m) {}
  Matrix4cd m_;
};

struct OutcomeProbs {
  double p_singlet;
  double p_triplet;
};

// Projector onto (|01> - |10>)/sqrt(2), total spin 0.
Matrix4cd singlet_projector();
// I - singlet_projector(), total spin 1.
Matrix4cd triplet_projector();

// (1 - cos theta)(1 + sin 2alpha cos psi) / 4
double p_singlet_closed(const RelativeParams& p);

OutcomeProbs p_outcomes_state(const StateVector2Q& s);

// Collective SU(2) twirl via the spin-0 (+) spin-1 decomposition:
//   rho -> Tr(P0 rho) P0 + Tr(P1 rho) P1 / 3.
DensityMatrix4 twirl_analytic(const DensityMatrix4& rho);

// (1/n) sum_k (U_k (x) U_k) rho (U_k (x) U_k)^dagger with U_k drawn from
// `sample`. Used to check twirl_analytic.
template <typename Sampler>
  requires std::invocable<Sampler&> && std::convertible_to<std::invoke_result_t<Sampler&>, Unitary2>
DensityMatrix4 twirl_monte_carlo(const DensityMatrix4& rho, std::size_t n, Sampler&& sample) {
  if (n < 1) throw InvalidInput("twirl_monte_carlo: need at least one sample");
  Matrix4cd acc = Matrix4cd::Zero();
  for (std::size_t k = 0; k < n; ++k) {
    const Unitary2 u = sample();
    const Unitary4 uu = collective(u);
    acc.noalias() += uu * rho.matrix() * uu.adjoint();
  }
  acc /= static_cast<double>(n);
  const Matrix4cd herm = (acc + acc.adjoint()) / 2.0;
  return DensityMatrix4::from_matrix(herm / herm.trace().real());
}

DensityMatrix4 twirl_monte_carlo(const DensityMatrix4& rho, std::size_t n, RandomStream& stream);

double max_entry_distance(const Matrix4cd& a, const Matrix4cd& b);

}  // namespace relframe
