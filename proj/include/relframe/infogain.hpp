#pragma once

#include <array>
#include <span>
#include <variant>
#include <vector>

#include "relframe/relative_state.hpp"
#include "relframe/twirl.hpp"

namespace relframe {

enum class Outcome { Singlet = 0, Triplet = 1 };

struct UniformPrior {
  double lo;
  double hi;
};

struct TwoPointPrior {
  double x0;
  double x1;
  double weight0 = 0.5;
};

class PriorModel {
 public:
  static PriorModel uniform(double lo, double hi);
  static PriorModel two_point(double x0, double x1, double weight0 = 0.5);

  // Flat over the message parameter's encoding range.
  static PriorModel default_uniform(Param message);
  // {0, pi} for theta and psi; {0, pi/4} for alpha.
  static PriorModel default_discrete(Param message);

  bool is_discrete() const { return std::holds_alternative<TwoPointPrior>(v_); }
  const std::variant<UniformPrior, TwoPointPrior>& variant() const { return v_; }

 private:
  explicit PriorModel(std::variant<UniformPrior, TwoPointPrior> v) : v_(v) {}
  std::variant<UniformPrior, TwoPointPrior> v_;
};

// One relative parameter carries the message; the other two are fixed.
class EncodingScheme {
 public:
  // The value in the message slot is ignored.
  EncodingScheme(Param message, const RelativeParams& fixed);

  static EncodingScheme theta(double alpha0, double psi0);
  static EncodingScheme psi(double alpha0, double theta0);
  static EncodingScheme alpha(double theta0, double psi0);

  Param message() const { return message_; }
  // The two fixed parameters in (alpha, theta, psi) order.
  std::array<Param, 2> fixed_params() const;
  double fixed_value(Param p) const;
  EncodingScheme with_fixed(Param p, double value) const;
  RelativeParams at(double x) const;

 private:
  Param message_;
  RelativeParams base_;
};

std::array<Param, 2> fixed_params_of(Param message);

struct QuadratureConfig {
  static constexpr int kDefaultPoints = 4097;
  int n_points = kDefaultPoints;  // odd, >= 3; composite Simpson
  void validate() const;
};

struct InfoGainResult {
  std::array<double, 2> p_outcome;
  std::array<double, 2> gain_per_outcome;  // bits
  double avg_gain;                         // bits
};

// Posterior over the message parameter. For a continuous prior `values` are
// densities at `nodes`; for a discrete prior they are point masses.
struct SampledDensity {
  std::vector<double> nodes;
  std::vector<double> values;
  bool discrete;
};

OutcomeProbs likelihood(const EncodingScheme& scheme, double x);

SampledDensity posterior(const EncodingScheme& scheme, const PriorModel& prior, Outcome outcome,
                         const QuadratureConfig& quad = {});

InfoGainResult info_gain(const EncodingScheme& scheme, const PriorModel& prior,
                         const QuadratureConfig& quad = {});

// Composite Simpson weights for n (odd) equally spaced nodes on [lo, hi].
std::vector<double> simpson_weights(double lo, double hi, int n);

// Pairwise (cascade) summation; fixed association order.
double pairwise_sum(std::span<const double> xs);

// t log2(t / q) with 0 log 0 = 0.
double kl_term(double t, double q);

}  // namespace relframe
