#include "relframe/scans.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace relframe {

namespace {

constexpr double kPi = std::numbers::pi;
// Gains closer than this count as ties.
constexpr double kTieTol = 1e-12;

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs(n);
  const double h = (hi - lo) / (n - 1);
  for (int k = 0; k < n; ++k) xs[k] = k == n - 1 ? hi : lo + k * h;
  return xs;
}

void require_fixed(const EncodingScheme& scheme, const ScanGrid& grid) {
  if (grid.param == scheme.message()) {
    throw InvalidConfiguration("cannot scan " + std::string(to_string(grid.param)) +
                               ": it carries the message");
  }
}

// Golden-section maximisation of a unimodal f on [lo, hi].
std::pair<double, double> golden_max(const std::function<double(double)>& f, double lo, double hi,
                                     int iterations = 48) {
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace

ScanGrid ScanGrid::over(Param p, int n) {
  const Range r = encoding_range(p);
  return {p, r.lo, r.hi, n};
}

void ScanGrid::validate() const {
  if (n < 2) throw InvalidConfiguration("scan grid needs at least 2 nodes");
  if (!(lo < hi)) throw InvalidConfiguration("scan grid needs lo < hi");
  const Range r = param_range(param);
  if (!r.contains(lo, kRangeSlack) || !r.contains(hi, kRangeSlack)) {
    throw InvalidInput("scan grid for " + std::string(to_string(param)) + " must lie in [" +
                       std::to_string(r.lo) + ", " + std::to_string(r.hi) + "]");
  }
}

std::vector<double> ScanGrid::nodes() const {
  validate();
  return linspace(lo, hi, n);
}

double sensitivity(const RelativeParams& p, Param wrt) {
  const double a = p.alpha(), t = p.theta(), s = p.psi();
  switch (wrt) {
    case Param::Theta:
      return std::abs(std::sin(t) * (1 + std::sin(2 * a) * std::cos(s)) / 4);
    case Param::Psi:
      return std::abs((1 - std::cos(t)) * std::sin(2 * a) * std::sin(s) / 4);
    case Param::Alpha:
      return std::abs((1 - std::cos(t)) * std::cos(2 * a) * std::cos(s) / 2);
  }
  return 0.0;
}

double mean_sensitivity(const EncodingScheme& scheme, int n) {
  const Range r = encoding_range(scheme.message());
  double acc = 0.0;
  for (double x : linspace(r.lo, r.hi, n)) acc += sensitivity(scheme.at(x), scheme.message());
  return acc / n;
}

OptimalSetting sensitivity_optimum(Param message, int resolution) {
  if (resolution < 2) throw InvalidConfiguration("resolution must be at least 2");
  const auto fixed = fixed_params_of(message);
  const auto as = ScanGrid::over(fixed[0], resolution).nodes();
  const auto bs = ScanGrid::over(fixed[1], resolution).nodes();
  const EncodingScheme base(message, RelativeParams(0.0, 0.0, 0.0));
  OptimalSetting best{fixed, {as.front(), bs.front()}, -1.0};
  for (double a : as) {
    for (double b : bs) {
      const double m = mean_sensitivity(base.with_fixed(fixed[0], a).with_fixed(fixed[1], b));
      if (m > best.avg_gain + kTieTol) best = {fixed, {a, b}, m};
    }
  }
  return best;
}

ScanResult scan1d(const EncodingScheme& scheme, const ScanGrid& vary, const PriorModel& prior,
                  const QuadratureConfig& quad) {
  require_fixed(scheme, vary);
  ScanResult out{vary.param, vary.nodes(), {}, scheme, prior, quad};
  out.avg_gain.reserve(out.axis.size());
  for (double x : out.axis) out.avg_gain.push_back(info_gain(scheme.with_fixed(vary.param, x), prior, quad).avg_gain);
  return out;
}

ScanResult2D scan2d(const EncodingScheme& scheme, const ScanGrid& grid_a, const ScanGrid& grid_b,
                    const PriorModel& prior, const QuadratureConfig& quad) {
  require_fixed(scheme, grid_a);
  require_fixed(scheme, grid_b);
  if (grid_a.param == grid_b.param) {
    throw InvalidConfiguration("scan2d needs the two fixed parameters on separate axes");
  }
  ScanResult2D out{grid_a, grid_b, grid_a.nodes(), grid_b.nodes(), {}, scheme, prior, quad};
  out.avg_gain.resize(grid_a.n, grid_b.n);
  for (int i = 0; i < grid_a.n; ++i) {
    const EncodingScheme row = scheme.with_fixed(grid_a.param, out.a_values[i]);
    for (int j = 0; j < grid_b.n; ++j) {
      out.avg_gain(i, j) = info_gain(row.with_fixed(grid_b.param, out.b_values[j]), prior, quad).avg_gain;
    }
  }
  return out;
}

OptimalSetting optimize_setting(Param message, const PriorModel& prior, const QuadratureConfig& quad,
                                int resolution) {
  if (resolution < 2) throw InvalidConfiguration("resolution must be at least 2");
  const auto fixed = fixed_params_of(message);
  const ScanGrid ga = ScanGrid::over(fixed[0], resolution);
  const ScanGrid gb = ScanGrid::over(fixed[1], resolution);
  const EncodingScheme base(message, RelativeParams(0.0, 0.0, 0.0));
  const ScanResult2D grid = scan2d(base, ga, gb, prior, quad);

  int bi = 0, bj = 0;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      if (grid.avg_gain(i, j) > grid.avg_gain(bi, bj) + kTieTol) {
        bi = i;
        bj = j;
      }
    }
  }
  OptimalSetting best{fixed, {grid.a_values[bi], grid.b_values[bj]}, grid.avg_gain(bi, bj)};

  auto gain_at = [&](double a, double b) {
    return info_gain(base.with_fixed(fixed[0], a).with_fixed(fixed[1], b), prior, quad).avg_gain;
  };
  auto refine = [&](int axis, const std::vector<double>& nodes, int idx) {
    const double lo = nodes[std::max(idx - 1, 0)];
    const double hi = nodes[std::min<int>(idx + 1, static_cast<int>(nodes.size()) - 1)];
    auto f = [&](double v) {
      return axis == 0 ? gain_at(v, best.values[1]) : gain_at(best.values[0], v);
    };
    const auto [v, g] = golden_max(f, lo, hi);
    if (g > best.avg_gain + kTieTol) {
      best.values[axis] = v;
      best.avg_gain = g;
    }
  };
  refine(0, grid.a_values, bi);
  refine(1, grid.b_values, bj);
  return best;
}

const TableOneCell& TableOneReport::at(PriorKind prior, Param message) const {
  const int row = prior == PriorKind::Uniform ? 0 : 1;
  const int col = message == Param::Theta ? 0 : (message == Param::Psi ? 1 : 2);
  return cells[row][col];
}

TableOneReport table_one(const QuadratureConfig& quad, int resolution) {
  TableOneReport report{};
  for (PriorKind kind : {PriorKind::Uniform, PriorKind::Discrete}) {
    for (Param message : {Param::Theta, Param::Psi, Param::Alpha}) {
      const PriorModel prior = kind == PriorKind::Uniform ? PriorModel::default_uniform(message)
                                                          : PriorModel::default_discrete(message);
      TableOneCell cell{message, kind, optimize_setting(message, prior, quad, resolution), std::nullopt};
      if (message == Param::Alpha) {
        const EncodingScheme mirrored =
            EncodingScheme::alpha(cell.best.values[0], kPi - cell.best.values[1]);
        cell.reflected_psi_gain = info_gain(mirrored, prior, quad).avg_gain;
      }
      const int row = kind == PriorKind::Uniform ? 0 : 1;
      const int col = message == Param::Theta ? 0 : (message == Param::Psi ? 1 : 2);
      report.cells[row][col] = cell;
    }
  }
  return report;
}

}  // namespace relframe
