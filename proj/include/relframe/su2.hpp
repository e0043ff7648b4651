#pragma once

// Dense complex algebra for one and two qubits: gates, collective rotations,
// Haar sampling on SU(2) and phase-insensitive state comparison.
//
// Basis order is |00>, |01>, |10>, |11>; the first tensor factor is the most
// significant index.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "relframe/errors.hpp"

namespace relframe {

template <typename Scalar>
using Complex = std::complex<Scalar>;
template <typename Scalar>
using Matrix2 = Eigen::Matrix<Complex<Scalar>, 2, 2>;
template <typename Scalar>
using Matrix4 = Eigen::Matrix<Complex<Scalar>, 4, 4>;
template <typename Scalar>
using Vector2 = Eigen::Matrix<Complex<Scalar>, 2, 1>;
template <typename Scalar>
using Vector4 = Eigen::Matrix<Complex<Scalar>, 4, 1>;

using Complexd = Complex<double>;
using Unitary2 = Matrix2<double>;
using Unitary4 = Matrix4<double>;
using Matrix4cd = Matrix4<double>;
using Vector4cd = Vector4<double>;

inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kNormTol = 1e-12;

template <typename Derived>
typename Derived::RealScalar unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
  using Plain = typename Derived::PlainObject;
  return (u.adjoint() * u - Plain::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& u, double tol = kUnitaryTol) {
  return unitarity_defect(u) <= tol;
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const auto z = m.derived().coeff(i);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

// R_y(angle) = exp(-i angle sigma_y / 2).
template <typename Scalar = double>
Matrix2<Scalar> rotation_y(Scalar angle) {
  if (!std::isfinite(angle)) throw InvalidInput("rotation_y: angle must be finite");
  const Scalar c = std::cos(angle / 2);
  const Scalar s = std::sin(angle / 2);
  Matrix2<Scalar> r;
  r << c, -s,
       s, c;
  return r;
}

// R_z(angle) = diag(e^{-i angle/2}, e^{+i angle/2}).
template <typename Scalar = double>
Matrix2<Scalar> rotation_z(Scalar angle) {
  if (!std::isfinite(angle)) throw InvalidInput("rotation_z: angle must be finite");
  Matrix2<Scalar> r = Matrix2<Scalar>::Zero();
  r(0, 0) = std::polar(Scalar(1), -angle / 2);
  r(1, 1) = std::polar(Scalar(1), angle / 2);
  return r;
}

// Control on the first qubit, target on the second.
template <typename Scalar = double>
Matrix4<Scalar> cnot() {
  Matrix4<Scalar> m = Matrix4<Scalar>::Zero();
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

// Kronecker product with entry[(2i+k), (2j+l)] = u(i,j) * v(k,l).
template <typename Scalar>
Matrix4<Scalar> tensor(const Matrix2<Scalar>& u, const Matrix2<Scalar>& v) {
  if (!all_finite(u) || !all_finite(v) || !is_unitary(u) || !is_unitary(v)) {
    throw InvalidInput("tensor: both factors must be finite unitaries");
  }
  Matrix4<Scalar> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.template block<2, 2>(2 * i, 2 * j) = u(i, j) * v;
  return out;
}

// Collective rotation D(Omega) (x) D(Omega).
template <typename Scalar>
Matrix4<Scalar> collective(const Matrix2<Scalar>& u) {
  return tensor(u, u);
}

// Seeded source of randomness. Identical (seed, algorithm) pairs replay the
// same sequence within one build of the library.
class RandomStream {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64+normal";

  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::string_view algorithm() const { return kAlgorithm; }

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }

  // Independent child stream for a parallel task.
  RandomStream split(std::uint64_t task_index) const {
    return RandomStream(mix(seed_ ^ mix(task_index + 0x9e3779b97f4a7c15ULL)));
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// Haar-distributed element of SU(2) from a uniformly random unit quaternion.
template <typename Scalar = double>
Matrix2<Scalar> haar_su2(RandomStream& stream) {
  Eigen::Matrix<Scalar, 4, 1> q;
  do {
    for (int i = 0; i < 4; ++i) q(i) = static_cast<Scalar>(stream.normal());
  } while (q.norm() < Scalar(1e-8));
  q.normalize();
  const Complex<Scalar> x(q(0), q(3));
  const Complex<Scalar> y(q(2), q(1));
  Matrix2<Scalar> u;
  u << x, y,
       -std::conj(y), std::conj(x);
  return u;
}

// Normalised pure state a|00> + b|01> + c|10> + d|11>.
template <typename Scalar>
class BasicStateVector2Q {
 public:
  using Amplitudes = Vector4<Scalar>;

  // Requires unit norm within kNormTol.
  explicit BasicStateVector2Q(const Amplitudes& amps) : amps_(amps) {
    if (!all_finite(amps_)) throw InvalidInput("state amplitudes must be finite");
    if (std::abs(amps_.squaredNorm() - Scalar(1)) > Scalar(kNormTol)) {
      throw InvalidInput("state amplitudes must have unit norm");
    }
  }

  static BasicStateVector2Q from_amplitudes(Complex<Scalar> a, Complex<Scalar> b,
                                            Complex<Scalar> c, Complex<Scalar> d) {
    Amplitudes v;
    v << a, b, c, d;
    return BasicStateVector2Q(v);
  }

  // Rescales any finite non-zero vector to unit norm.
  static BasicStateVector2Q normalized(const Amplitudes& v) {
    if (!all_finite(v)) throw InvalidInput("state amplitudes must be finite");
    const Scalar n = v.norm();
    if (!(n > Scalar(0))) throw InvalidInput("state vector must be non-zero");
    return BasicStateVector2Q(Amplitudes(v / n));
  }

  static BasicStateVector2Q basis(int index) {
    if (index < 0 || index > 3) throw InvalidInput("basis index must be in 0..3");
    return BasicStateVector2Q(Amplitudes::Unit(index));
  }

  const Amplitudes& amps() const { return amps_; }
  Complex<Scalar> a() const { return amps_(0); }
  Complex<Scalar> b() const { return amps_(1); }
  Complex<Scalar> c() const { return amps_(2); }
  Complex<Scalar> d() const { return amps_(3); }

  // Coefficient matrix [[a, b], [c, d]]; transforms as U M U^T under U (x) U.
  Matrix2<Scalar> coefficient_matrix() const {
    Matrix2<Scalar> m;
    m << a(), b(),
         c(), d();
    return m;
  }

  BasicStateVector2Q phased(Scalar eta) const {
    return BasicStateVector2Q(Amplitudes(amps_ * std::polar(Scalar(1), eta)));
  }

 private:
  Amplitudes amps_;
};

using StateVector2Q = BasicStateVector2Q<double>;

template <typename Scalar>
BasicStateVector2Q<Scalar> apply(const Matrix4<Scalar>& u, const BasicStateVector2Q<Scalar>& s) {
  return BasicStateVector2Q<Scalar>(typename BasicStateVector2Q<Scalar>::Amplitudes(u * s.amps()));
}

template <typename Scalar>
Complex<Scalar> inner(const BasicStateVector2Q<Scalar>& s1, const BasicStateVector2Q<Scalar>& s2) {
  return s1.amps().dot(s2.amps());
}

template <typename Scalar>
bool equal_up_to_phase(const BasicStateVector2Q<Scalar>& s1, const BasicStateVector2Q<Scalar>& s2,
                       Scalar tol) {
  if (!(tol > 0)) throw InvalidInput("equal_up_to_phase: tol must be positive");
  return std::abs(inner(s1, s2)) >= Scalar(1) - tol;
}

inline StateVector2Q singlet_state() {
  const double h = 1.0 / std::sqrt(2.0);
  return StateVector2Q::from_amplitudes(0.0, h, -h, 0.0);
}

}  // namespace relframe
