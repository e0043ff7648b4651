#include "relframe/infogain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace relframe {

namespace {

constexpr double kClampTol = 1e-12;
constexpr double kNegligibleMarginal = 1e-15;
constexpr double kImpossibleMarginal = 1e-300;

double clamp_probability(double p) {
  if (p >= 0.0 && p <= 1.0) return p;
  if (p < 0.0 && p >= -kClampTol) return 0.0;
  if (p > 1.0 && p <= 1.0 + kClampTol) return 1.0;
  throw NumericalDomainError("likelihood " + std::to_string(p) + " outside [0, 1]");
}

// Prior discretised on the message axis. The prior mass at node k is
// quad_weight[k] * density[k].
struct PriorNodes {
  std::vector<double> x;
  std::vector<double> quad_weight;
  std::vector<double> density;
  bool discrete;
};

void check_support(Param message, double x, std::string_view what) {
  if (!encoding_range(message).contains(x, kRangeSlack)) {
    const Range r = encoding_range(message);
    throw InvalidInput(std::string(what) + " " + std::to_string(x) + " outside the " +
                       std::string(to_string(message)) + " range [" + std::to_string(r.lo) + ", " +
                       std::to_string(r.hi) + "]");
  }
}

PriorNodes discretise(Param message, const PriorModel& prior, const QuadratureConfig& quad) {
  PriorNodes out;
  if (const auto* tp = std::get_if<TwoPointPrior>(&prior.variant())) {
    check_support(message, tp->x0, "prior point");
    check_support(message, tp->x1, "prior point");
    out.x = {tp->x0, tp->x1};
    out.quad_weight = {1.0, 1.0};
    out.density = {tp->weight0, 1.0 - tp->weight0};
    out.discrete = true;
    return out;
  }
  quad.validate();
  const auto& u = std::get<UniformPrior>(prior.variant());
  check_support(message, u.lo, "prior bound");
  check_support(message, u.hi, "prior bound");
  const Range r = encoding_range(message);
  const double lo = std::clamp(u.lo, r.lo, r.hi);
  const double hi = std::clamp(u.hi, r.lo, r.hi);
  const int n = quad.n_points;
  out.x.resize(n);
  const double h = (hi - lo) / (n - 1);
  for (int k = 0; k < n; ++k) out.x[k] = k == n - 1 ? hi : lo + k * h;
  out.quad_weight = simpson_weights(lo, hi, n);
  out.density.assign(n, 1.0 / (hi - lo));
  out.discrete = false;
  return out;
}

std::vector<double> outcome_likelihoods(const EncodingScheme& scheme, const PriorNodes& nodes,
                                        Outcome outcome) {
  std::vector<double> l(nodes.x.size());
  for (std::size_t k = 0; k < l.size(); ++k) {
    const OutcomeProbs p = likelihood(scheme, nodes.x[k]);
    l[k] = outcome == Outcome::Singlet ? p.p_singlet : p.p_triplet;
  }
  return l;
}

double marginal(const PriorNodes& nodes, const std::vector<double>& l) {
  std::vector<double> mass(l.size());
  for (std::size_t k = 0; k < l.size(); ++k) mass[k] = nodes.quad_weight[k] * nodes.density[k] * l[k];
  return pairwise_sum(mass);
}

}  // namespace

PriorModel PriorModel::uniform(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw InvalidInput("uniform prior needs finite lo < hi");
  }
  return PriorModel(UniformPrior{lo, hi});
}

PriorModel PriorModel::two_point(double x0, double x1, double weight0) {
  if (!std::isfinite(x0) || !std::isfinite(x1) || x0 == x1) {
    throw InvalidInput("two-point prior needs two distinct finite points");
  }
  if (!(weight0 > 0.0 && weight0 < 1.0)) {
    throw InvalidInput("two-point prior weight must lie in (0, 1)");
  }
  return PriorModel(TwoPointPrior{x0, x1, weight0});
}

PriorModel PriorModel::default_uniform(Param message) {
  const Range r = encoding_range(message);
  return uniform(r.lo, r.hi);
}

PriorModel PriorModel::default_discrete(Param message) {
  const Range r = encoding_range(message);
  return two_point(r.lo, r.hi, 0.5);
}

EncodingScheme::EncodingScheme(Param message, const RelativeParams& fixed)
    : message_(message), base_(fixed.with(message, 0.0)) {}

EncodingScheme EncodingScheme::theta(double alpha0, double psi0) {
  return EncodingScheme(Param::Theta, RelativeParams(alpha0, 0.0, psi0));
}

EncodingScheme EncodingScheme::psi(double alpha0, double theta0) {
  return EncodingScheme(Param::Psi, RelativeParams(alpha0, theta0, 0.0));
}

EncodingScheme EncodingScheme::alpha(double theta0, double psi0) {
  return EncodingScheme(Param::Alpha, RelativeParams(0.0, theta0, psi0));
}

std::array<Param, 2> fixed_params_of(Param message) {
  switch (message) {
    case Param::Alpha: return {Param::Theta, Param::Psi};
    case Param::Theta: return {Param::Alpha, Param::Psi};
    case Param::Psi: return {Param::Alpha, Param::Theta};
  }
  return {Param::Alpha, Param::Theta};
}

std::array<Param, 2> EncodingScheme::fixed_params() const { return fixed_params_of(message_); }

double EncodingScheme::fixed_value(Param p) const {
  if (p == message_) {
    throw InvalidConfiguration(std::string(to_string(p)) + " carries the message, it has no fixed value");
  }
  return base_.get(p);
}

EncodingScheme EncodingScheme::with_fixed(Param p, double value) const {
  if (p == message_) {
    throw InvalidConfiguration("cannot fix " + std::string(to_string(p)) + ": it carries the message");
  }
  return EncodingScheme(message_, base_.with(p, value));
}

RelativeParams EncodingScheme::at(double x) const {
  check_support(message_, x, "message value");
  const Range r = encoding_range(message_);
  return base_.with(message_, std::clamp(x, r.lo, r.hi));
}

void QuadratureConfig::validate() const {
  if (n_points < 3 || n_points % 2 == 0) {
    throw InvalidInput("quadrature needs an odd number of points >= 3, got " + std::to_string(n_points));
  }
}

OutcomeProbs likelihood(const EncodingScheme& scheme, double x) {
  const double p0 = clamp_probability(p_singlet_closed(scheme.at(x)));
  return {p0, 1.0 - p0};
}

SampledDensity posterior(const EncodingScheme& scheme, const PriorModel& prior, Outcome outcome,
                         const QuadratureConfig& quad) {
  const PriorNodes nodes = discretise(scheme.message(), prior, quad);
  const std::vector<double> l = outcome_likelihoods(scheme, nodes, outcome);
  const double p = marginal(nodes, l);
  if (!(p > kImpossibleMarginal)) {
    throw ImpossibleOutcome("outcome has zero marginal probability under this prior");
  }
  SampledDensity out{nodes.x, std::vector<double>(l.size()), nodes.discrete};
  for (std::size_t k = 0; k < l.size(); ++k) out.values[k] = nodes.density[k] * l[k] / p;
  return out;
}

InfoGainResult info_gain(const EncodingScheme& scheme, const PriorModel& prior,
                         const QuadratureConfig& quad) {
  const PriorNodes nodes = discretise(scheme.message(), prior, quad);
  InfoGainResult out{};
  std::vector<double> terms(nodes.x.size());
  for (Outcome o : {Outcome::Singlet, Outcome::Triplet}) {
    const auto i = static_cast<std::size_t>(o);
    const std::vector<double> l = outcome_likelihoods(scheme, nodes, o);
    const double p = marginal(nodes, l);
    out.p_outcome[i] = p;
    if (p < kNegligibleMarginal) {
      out.gain_per_outcome[i] = 0.0;
      continue;
    }
    for (std::size_t k = 0; k < l.size(); ++k) {
      const double post = nodes.density[k] * l[k] / p;
      terms[k] = nodes.quad_weight[k] * kl_term(post, nodes.density[k]);
    }
    out.gain_per_outcome[i] = pairwise_sum(terms);
  }
  out.avg_gain = out.p_outcome[0] * out.gain_per_outcome[0] + out.p_outcome[1] * out.gain_per_outcome[1];
  return out;
}

std::vector<double> simpson_weights(double lo, double hi, int n) {
  QuadratureConfig{n}.validate();
  const double h = (hi - lo) / (n - 1);
  std::vector<double> w(n);
  for (int k = 0; k < n; ++k) {
    const double c = (k == 0 || k == n - 1) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    w[k] = c * h / 3.0;
  }
  return w;
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

double kl_term(double t, double q) {
  if (t == 0.0) return 0.0;
  if (q == 0.0) throw NumericalDomainError("posterior mass where the prior vanishes");
  return t * std::log2(t / q);
}

}  // namespace relframe
