#include "relframe/relative_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace relframe {

namespace {

constexpr double kPi = std::numbers::pi;

// Below these the corresponding parameter is treated as degenerate.
constexpr double kProductTol = 1e-12;     // |ad - bc|
constexpr double kMaximalTol = 1e-10;     // cos(alpha) - sin(alpha)
constexpr double kAlignedTol = 1e-12;     // sin(theta/2)

double snap(double x, Range r, std::string_view name) {
  if (!std::isfinite(x)) {
    throw InvalidInput(std::string(name) + " must be finite");
  }
  if (!r.contains(x, kRangeSlack)) {
    throw InvalidInput(std::string(name) + " = " + std::to_string(x) + " outside [" +
                       std::to_string(r.lo) + ", " + std::to_string(r.hi) + "]");
  }
  return std::clamp(x, r.lo, r.hi);
}

// Global phase that makes ad - bc real and non-negative, applied to b - c.
Complexd phase_fixed_cross(const InvariantPair& inv) {
  return std::polar(1.0, -std::arg(inv.det_inv) / 2) * inv.cross_inv;
}

}  // namespace

std::string_view to_string(Param p) {
  switch (p) {
    case Param::Alpha: return "alpha";
    case Param::Theta: return "theta";
    case Param::Psi: return "psi";
  }
  return "?";
}

Param param_from_string(std::string_view name) {
  if (name == "alpha") return Param::Alpha;
  if (name == "theta") return Param::Theta;
  if (name == "psi") return Param::Psi;
  throw InvalidInput("unknown parameter '" + std::string(name) + "' (expected alpha, theta or psi)");
}

Range param_range(Param p) {
  switch (p) {
    case Param::Alpha: return {0.0, kPi / 4};
    case Param::Theta: return {0.0, kPi};
    case Param::Psi: return {0.0, 2 * kPi};
  }
  return {0.0, 0.0};
}

Range encoding_range(Param p) {
  switch (p) {
    case Param::Alpha: return {0.0, kPi / 4};
    case Param::Theta: return {0.0, kPi};
    case Param::Psi: return {0.0, kPi};
  }
  return {0.0, 0.0};
}

RelativeParams::RelativeParams(double alpha, double theta, double psi)
    : alpha_(snap(alpha, param_range(Param::Alpha), "alpha")),
      theta_(snap(theta, param_range(Param::Theta), "theta")),
      psi_(snap(psi, param_range(Param::Psi), "psi")) {}

double RelativeParams::get(Param p) const {
  switch (p) {
    case Param::Alpha: return alpha_;
    case Param::Theta: return theta_;
    case Param::Psi: return psi_;
  }
  return 0.0;
}

RelativeParams RelativeParams::with(Param p, double value) const {
  switch (p) {
    case Param::Alpha: return {value, theta_, psi_};
    case Param::Theta: return {alpha_, value, psi_};
    case Param::Psi: return {alpha_, theta_, value};
  }
  return *this;
}

StateVector2Q prepare_canonical(const RelativeParams& p) {
  const double ca = std::cos(p.alpha());
  const double sa = std::sin(p.alpha());
  const double ct = std::cos(p.theta() / 2);
  const double st = std::sin(p.theta() / 2);
  const Complexd em = std::polar(1.0, -p.psi() / 2);
  const Complexd ep = std::polar(1.0, p.psi() / 2);
  // Renormalise away the last-ulp drift of the trig products.
  Vector4cd v;
  v << em * ca * ct, em * ca * st, -ep * sa * st, ep * sa * ct;
  return StateVector2Q::normalized(v);
}

StateVector2Q prepare_via_circuit(const RelativeParams& p) {
  const Unitary2 id = Unitary2::Identity();
  const Unitary4 circuit = tensor(rotation_z(p.psi()), rotation_y(p.theta())) * cnot<double>() *
                           tensor(rotation_y(2 * p.alpha()), id);
  return StateVector2Q::normalized(circuit.col(0));
}

InvariantPair invariants_of(const StateVector2Q& s) {
  return {s.a() * s.d() - s.b() * s.c(), s.b() - s.c()};
}

double concurrence(const StateVector2Q& s) {
  return std::min(1.0, 2 * std::abs(invariants_of(s).det_inv));
}

ExtractedParams extract_params(const StateVector2Q& s) {
  const InvariantPair inv = invariants_of(s);
  const Unitary2 m = s.coefficient_matrix();
  const Unitary2 rho_a = m * m.adjoint();

  // cos(2 alpha) = lambda0^2 - lambda1^2 and sin(2 alpha) = 2|ad - bc|,
  // evaluated independently so alpha stays well conditioned near pi/4.
  const double diag_gap = rho_a(0, 0).real() - rho_a(1, 1).real();
  const double cos2a = std::sqrt(diag_gap * diag_gap + 4 * std::norm(rho_a(0, 1)));
  const double det_abs = std::abs(inv.det_inv);
  const double alpha = std::clamp(0.5 * std::atan2(2 * det_abs, cos2a), 0.0, kPi / 4);

  if (det_abs <= kProductTol) {
    // Product state: only |b - c| = sin(theta/2) survives the free global phase.
    const double theta = 2 * std::asin(std::min(1.0, std::abs(inv.cross_inv)));
    return {RelativeParams(alpha, theta, 0.0), false};
  }

  const Complexd cross = phase_fixed_cross(inv);
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);

  if (ca - sa <= kMaximalTol) {
    // b - c = sqrt(2) sin(theta/2) cos(psi/2): one invariant for two angles.
    const double r = std::abs(cross.real()) / (ca + sa);
    return {RelativeParams(kPi / 4, 2 * std::asin(std::min(1.0, r)), 0.0), false};
  }

  // b - c = sin(theta/2) [cos(psi/2)(ca + sa) + i sin(psi/2)(sa - ca)], up to sign.
  double x = cross.real() / (ca + sa);
  double y = cross.imag() / (sa - ca);
  if (y < 0 || (y == 0 && x < 0)) {
    x = -x;
    y = -y;
  }
  const double r = std::hypot(x, y);
  if (r <= kAlignedTol) {
    return {RelativeParams(alpha, 0.0, 0.0), false};
  }
  const double theta = 2 * std::asin(std::min(1.0, r));
  double psi = 2 * std::atan2(y, x);
  if (psi >= 2 * kPi) psi -= 2 * kPi;
  return {RelativeParams(alpha, theta, psi), true};
}

Eigen::Vector3d bloch_vector(const Vector2<double>& v) {
  const Complexd off = std::conj(v(0)) * v(1);
  const double n2 = v.squaredNorm();
  return Eigen::Vector3d(2 * off.real(), 2 * off.imag(), std::norm(v(0)) - std::norm(v(1))) / n2;
}

double bloch_angle(const Eigen::Vector3d& u, const Eigen::Vector3d& v) {
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

SchmidtForm schmidt_form(const StateVector2Q& s) {
  const Unitary2 m = s.coefficient_matrix();
  const Unitary2 rho_a = m * m.adjoint();
  Eigen::SelfAdjointEigenSolver<Unitary2> eig(rho_a);
  // Eigen sorts ascending.
  const double l1sq = std::max(0.0, eig.eigenvalues()(0));
  const double l0sq = std::max(0.0, eig.eigenvalues()(1));

  Vector2<double> top;
  if (l0sq - l1sq <= 2 * kMaximalTol) {
    top = Vector2<double>::UnitX();
  } else {
    top = eig.eigenvectors().col(1);
  }
  // Partner of m on the second qubit: (<m| (x) I)|Psi> = M^T conj(m).
  const Vector2<double> partner = m.transpose() * top.conjugate();

  SchmidtForm out;
  out.lambda0 = std::sqrt(l0sq);
  out.lambda1 = std::sqrt(l1sq);
  out.m_vec = bloch_vector(top);
  out.n_vec = partner.norm() > 0 ? bloch_vector(partner) : out.m_vec;
  out.phase = extract_params(s).params.psi();
  return out;
}

bool orbit_equal(const StateVector2Q& s1, const StateVector2Q& s2, double tol) {
  if (!(tol > 0)) throw InvalidInput("orbit_equal: tol must be positive");
  const InvariantPair i1 = invariants_of(s1);
  const InvariantPair i2 = invariants_of(s2);
  const double d1 = std::abs(i1.det_inv);
  const double d2 = std::abs(i2.det_inv);
  if (std::abs(d1 - d2) > tol) return false;
  if (std::max(d1, d2) <= tol) {
    return std::abs(std::abs(i1.cross_inv) - std::abs(i2.cross_inv)) <= tol;
  }
  const Complexd x1 = phase_fixed_cross(i1);
  const Complexd x2 = phase_fixed_cross(i2);
  return std::min(std::abs(x1 - x2), std::abs(x1 + x2)) <= tol;
}

}  // namespace relframe
