#pragma once

#include <numbers>
#include <string_view>

#include <Eigen/Dense>

#include "relframe/su2.hpp"

namespace relframe {

enum class Param { Alpha, Theta, Psi };

std::string_view to_string(Param p);
Param param_from_string(std::string_view name);

struct Range {
  double lo;
  double hi;
  bool contains(double x, double slack = 0.0) const { return x >= lo - slack && x <= hi + slack; }
};

// Accepted when constructing RelativeParams. psi covers a full period: for
// alpha < pi/4 the values psi and 2pi - psi label different orbits.
Range param_range(Param p);

// Ranges over which a parameter is swept or used as a message:
// alpha in [0, pi/4], theta in [0, pi], psi in [0, pi].
Range encoding_range(Param p);

// Inputs within this distance of a range endpoint are snapped onto it.
inline constexpr double kRangeSlack = 1e-9;

// Frame-invariant description (alpha, theta, psi) of a pure two-qubit state
//   e^{-i psi/2} cos(alpha) |m>|n> + e^{i psi/2} sin(alpha) |m_perp>|n_perp>,
// with theta the angle between the Bloch vectors of m and n.
class RelativeParams {
 public:
  RelativeParams(double alpha, double theta, double psi);

  double alpha() const { return alpha_; }
  double theta() const { return theta_; }
  double psi() const { return psi_; }
  double get(Param p) const;
  RelativeParams with(Param p, double value) const;

 private:
  double alpha_;
  double theta_;
  double psi_;
};

struct InvariantPair {
  Complexd det_inv;    // ad - bc
  Complexd cross_inv;  // b - c
};

struct SchmidtForm {
  double lambda0;  // cos(alpha)
  double lambda1;  // sin(alpha)
  Eigen::Vector3d m_vec;
  Eigen::Vector3d n_vec;
  double phase;  // psi, from the invariants
};

struct ExtractedParams {
  RelativeParams params;
  bool psi_identifiable;
};

StateVector2Q prepare_canonical(const RelativeParams& p);

// (R_z(psi) (x) R_y(theta)) CNOT (R_y(2 alpha) (x) I) |00>
StateVector2Q prepare_via_circuit(const RelativeParams& p);

InvariantPair invariants_of(const StateVector2Q& s);

double concurrence(const StateVector2Q& s);

ExtractedParams extract_params(const StateVector2Q& s);

// Schmidt coefficients and the Bloch vectors of the first-qubit Schmidt
// vector m and its partner n. At alpha = pi/4 m is taken as the eigenvector
// closest to |0>.
SchmidtForm schmidt_form(const StateVector2Q& s);

// Same orbit under collective rotations, judged by the invariants.
bool orbit_equal(const StateVector2Q& s1, const StateVector2Q& s2, double tol);

// Angle between Bloch vectors, in [0, pi].
double bloch_angle(const Eigen::Vector3d& u, const Eigen::Vector3d& v);

Eigen::Vector3d bloch_vector(const Vector2<double>& v);

}  // namespace relframe
