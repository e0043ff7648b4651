#include "relframe/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "relframe/infogain.hpp"
#include "relframe/relative_state.hpp"
#include "relframe/scans.hpp"
#include "relframe/su2.hpp"
#include "relframe/twirl.hpp"

namespace relframe::cli {

namespace {

using json = nlohmann::json;
constexpr double kPi = std::numbers::pi;

// A malformed request detected while assembling it from flags.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

using Cell = std::variant<double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  json metadata = json::object();
};

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      std::visit(
          [&os](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) os << fmt12(v);
            else if constexpr (std::is_same_v<V, bool>) os << (v ? "true" : "false");
            else os << v;
          },
          row[i]);
    }
    os << '\n';
  }
}

void write_json(const Table& t, std::ostream& os) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) obj[t.columns[i]] = std::stod(fmt12(v));
            else obj[t.columns[i]] = v;
          },
          row[i]);
    }
    rows.push_back(std::move(obj));
  }
  json doc = json::object();
  doc["metadata"] = t.metadata;
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << '\n';
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("cannot parse " + what + " '" + s + "' as a number");
  }
}

struct Common {
  std::string format = "csv";
  std::string output;
  bool degrees = false;
  std::optional<std::uint64_t> seed;

  double angle(double v) const { return degrees ? v * kPi / 180.0 : v; }
};

struct StateArgs {
  std::optional<double> alpha, theta, psi;
  std::string amps;
};

StateVector2Q state_from(const StateArgs& a, const Common& c) {
  if (!a.amps.empty()) {
    if (a.alpha || a.theta || a.psi) throw UsageError("give either --amps or --alpha/--theta/--psi, not both");
    const auto parts = split(a.amps, ',');
    if (parts.size() != 8) throw UsageError("--amps needs 8 comma-separated numbers (re,im for a,b,c,d)");
    Vector4cd v;
    for (int k = 0; k < 4; ++k) {
      v(k) = Complexd(parse_number(parts[2 * k], "--amps"), parse_number(parts[2 * k + 1], "--amps"));
    }
    return StateVector2Q::normalized(v);
  }
  if (!a.alpha || !a.theta || !a.psi) throw UsageError("--alpha, --theta and --psi are all required");
  return prepare_canonical(RelativeParams(c.angle(*a.alpha), c.angle(*a.theta), c.angle(*a.psi)));
}

PriorModel prior_from(const std::string& text, Param message, const Common& c) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::vector<std::string> args =
      colon == std::string::npos ? std::vector<std::string>{} : split(text.substr(colon + 1), ',');
  if (kind == "uniform") {
    if (args.empty()) return PriorModel::default_uniform(message);
    if (args.size() != 2) throw UsageError("uniform prior takes uniform or uniform:lo,hi");
    return PriorModel::uniform(c.angle(parse_number(args[0], "prior bound")),
                               c.angle(parse_number(args[1], "prior bound")));
  }
  if (kind == "discrete") {
    if (args.empty()) return PriorModel::default_discrete(message);
    if (args.size() != 2 && args.size() != 3) throw UsageError("discrete prior takes discrete:x0,x1[,w0]");
    const double w0 = args.size() == 3 ? parse_number(args[2], "prior weight") : 0.5;
    return PriorModel::two_point(c.angle(parse_number(args[0], "prior point")),
                                 c.angle(parse_number(args[1], "prior point")), w0);
  }
  throw UsageError("unknown prior '" + text + "' (expected uniform or discrete:x0,x1[,w0])");
}

json prior_json(const PriorModel& p) {
  if (const auto* u = std::get_if<UniformPrior>(&p.variant())) {
    return {{"kind", "uniform"}, {"lo", u->lo}, {"hi", u->hi}};
  }
  const auto& t = std::get<TwoPointPrior>(p.variant());
  return {{"kind", "discrete"}, {"x0", t.x0}, {"x1", t.x1}, {"weight0", t.weight0}};
}

// Builds a scheme from --encode and --fixed. Parameters named in `skip` may
// be left unset; they default to 0 and are overwritten by the caller.
EncodingScheme scheme_from(const std::string& encode, const std::string& fixed, const Common& c,
                           const std::vector<Param>& skip = {}) {
  const Param message = param_from_string(encode);
  std::map<Param, double> values;
  if (!fixed.empty()) {
    for (const auto& binding : split(fixed, ',')) {
      const auto eq = binding.find('=');
      if (eq == std::string::npos) throw UsageError("--fixed expects name=value pairs, got '" + binding + "'");
      const Param p = param_from_string(binding.substr(0, eq));
      if (p == message) throw UsageError("--fixed cannot bind the message parameter " + encode);
      values[p] = c.angle(parse_number(binding.substr(eq + 1), "--fixed value"));
    }
  }
  RelativeParams base(0.0, 0.0, 0.0);
  for (Param p : fixed_params_of(message)) {
    const bool skipped = std::find(skip.begin(), skip.end(), p) != skip.end();
    if (!values.contains(p) && !skipped) {
      throw UsageError("--fixed must give a value for " + std::string(to_string(p)));
    }
    if (values.contains(p)) base = base.with(p, values[p]);
  }
  return EncodingScheme(message, base);
}

json scheme_json(const EncodingScheme& s) {
  json j = {{"encode", to_string(s.message())}};
  for (Param p : s.fixed_params()) j[std::string(to_string(p))] = s.fixed_value(p);
  return j;
}

Table amplitude_table(const StateVector2Q& s) {
  Table t;
  t.columns = {"a_re", "a_im", "b_re", "b_im", "c_re", "c_im", "d_re", "d_im"};
  std::vector<Cell> row;
  for (int k = 0; k < 4; ++k) {
    row.emplace_back(s.amps()(k).real());
    row.emplace_back(s.amps()(k).imag());
  }
  t.rows.push_back(std::move(row));
  return t;
}

Table matrix_table(const Matrix4cd& m) {
  Table t;
  t.columns = {"row", "col", "re", "im"};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      t.rows.push_back({double(i), double(j), m(i, j).real(), m(i, j).imag()});
  return t;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Relational encoding in two-qubit states without a shared reference frame", "relframe"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output,-o", common.output, "Write to this file instead of standard output");
  app.add_flag("--degrees", common.degrees, "Interpret input angles in degrees");
  std::uint64_t seed_flag = 0;
  auto* seed_opt = app.add_option("--seed", seed_flag, "Monte Carlo seed (overrides $RELFRAME_SEED)");

  StateArgs state;
  auto add_state = [&state](CLI::App* sub, bool with_amps) {
    sub->add_option("--alpha", state.alpha, "Entanglement angle, [0, pi/4]");
    sub->add_option("--theta", state.theta, "Bloch angle between m and n, [0, pi]");
    sub->add_option("--psi", state.psi, "Relative phase, [0, 2pi)");
    if (with_amps) sub->add_option("--amps", state.amps, "a_re,a_im,b_re,b_im,c_re,c_im,d_re,d_im");
  };

  bool use_circuit = false;
  auto* prepare = app.add_subcommand("prepare", "Amplitudes of the canonical state for (alpha, theta, psi)");
  add_state(prepare, false);
  prepare->add_flag("--circuit", use_circuit, "Build the state with the gate circuit");

  auto* extract = app.add_subcommand("extract", "Relative parameters and invariants of a state");
  extract->add_option("--amps", state.amps, "a_re,a_im,b_re,b_im,c_re,c_im,d_re,d_im")->required();

  auto* twirl = app.add_subcommand("twirl", "Collective SU(2) twirl of a pure state (analytic)");
  add_state(twirl, true);

  std::size_t samples = 100000;
  auto* check_twirl = app.add_subcommand("check-twirl", "Compare Monte Carlo and analytic twirl");
  add_state(check_twirl, true);
  check_twirl->add_option("--samples", samples, "Haar samples")->check(CLI::PositiveNumber);

  std::string encode, prior_text = "uniform", fixed, vary;
  int quad_points = QuadratureConfig::kDefaultPoints;
  int n_nodes = kDefaultScanNodes, na = kDefaultScanNodes, nb = kDefaultScanNodes;
  int resolution = kDefaultScanNodes;
  std::optional<double> lo, hi;
  auto add_encoding = [&](CLI::App* sub) {
    sub->add_option("--encode", encode, "Message parameter")
        ->required()
        ->check(CLI::IsMember({"alpha", "theta", "psi"}));
    sub->add_option("--prior", prior_text, "uniform[:lo,hi] or discrete[:x0,x1[,w0]]");
    sub->add_option("--quad-points", quad_points, "Odd Simpson node count");
  };

  auto* infogain = app.add_subcommand("infogain", "Average information gain for one encoding");
  add_encoding(infogain);
  infogain->add_option("--fixed", fixed, "Fixed parameters, e.g. alpha=0.785,psi=0")->required();

  auto* scan = app.add_subcommand("scan", "Average gain along one fixed parameter");
  add_encoding(scan);
  scan->add_option("--vary", vary, "Fixed parameter to sweep")->required()->check(CLI::IsMember({"alpha", "theta", "psi"}));
  scan->add_option("--fixed", fixed, "Value of the other fixed parameter, e.g. psi=0");
  scan->add_option("--lo", lo, "Sweep start (default: start of range)");
  scan->add_option("--hi", hi, "Sweep end (default: end of range)");
  scan->add_option("--n", n_nodes, "Number of nodes")->check(CLI::Range(2, 1 << 20));

  auto* scan2 = app.add_subcommand("scan2d", "Average gain over both fixed parameters");
  add_encoding(scan2);
  scan2->add_option("--na", na, "Nodes along the first fixed parameter")->check(CLI::Range(2, 1 << 16));
  scan2->add_option("--nb", nb, "Nodes along the second fixed parameter")->check(CLI::Range(2, 1 << 16));

  auto* table1 = app.add_subcommand("table1", "Best average gain for every encoding and prior");
  table1->add_option("--quad-points", quad_points, "Odd Simpson node count");
  table1->add_option("--resolution", resolution, "Grid nodes per axis")->check(CLI::Range(2, 1 << 12));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (*seed_opt) {
    common.seed = seed_flag;
  } else if (const char* env = std::getenv(kSeedEnv)) {
    try {
      common.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: " << kSeedEnv << "='" << env << "' is not an unsigned integer\n";
      return 2;
    }
  }

  Table table;
  try {
    const QuadratureConfig quad{quad_points};
    if (prepare->parsed()) {
      if (!state.alpha || !state.theta || !state.psi) throw UsageError("--alpha, --theta and --psi are all required");
      const RelativeParams p(common.angle(*state.alpha), common.angle(*state.theta), common.angle(*state.psi));
      table = amplitude_table(use_circuit ? prepare_via_circuit(p) : prepare_canonical(p));
      table.metadata = {{"alpha", p.alpha()}, {"theta", p.theta()}, {"psi", p.psi()},
                        {"route", use_circuit ? "circuit" : "closed_form"}};
    } else if (extract->parsed()) {
      const StateVector2Q s = state_from(state, common);
      const ExtractedParams e = extract_params(s);
      const InvariantPair inv = invariants_of(s);
      table.columns = {"alpha", "theta", "psi", "psi_identifiable", "concurrence",
                       "det_re", "det_im", "cross_re", "cross_im"};
      table.rows.push_back({e.params.alpha(), e.params.theta(), e.params.psi(), e.psi_identifiable,
                            concurrence(s), inv.det_inv.real(), inv.det_inv.imag(),
                            inv.cross_inv.real(), inv.cross_inv.imag()});
    } else if (twirl->parsed()) {
      const StateVector2Q s = state_from(state, common);
      table = matrix_table(twirl_analytic(DensityMatrix4::pure(s)).matrix());
      table.metadata = {{"p_singlet", p_outcomes_state(s).p_singlet}};
    } else if (check_twirl->parsed()) {
      const StateVector2Q s = state_from(state, common);
      const std::uint64_t seed = common.seed.value_or(1);
      RandomStream stream(seed);
      const DensityMatrix4 rho = DensityMatrix4::pure(s);
      const double dev = max_entry_distance(twirl_monte_carlo(rho, samples, stream).matrix(),
                                            twirl_analytic(rho).matrix());
      table.columns = {"samples", "seed", "max_entry_deviation"};
      table.rows.push_back({double(samples), std::to_string(seed), dev});
      table.metadata = {{"algorithm", std::string(stream.algorithm())}};
    } else if (infogain->parsed()) {
      const EncodingScheme scheme = scheme_from(encode, fixed, common);
      const PriorModel prior = prior_from(prior_text, scheme.message(), common);
      const InfoGainResult r = info_gain(scheme, prior, quad);
      table.columns = {"p_singlet", "p_triplet", "gain_singlet", "gain_triplet", "avg_gain"};
      table.rows.push_back({r.p_outcome[0], r.p_outcome[1], r.gain_per_outcome[0], r.gain_per_outcome[1],
                            r.avg_gain});
      table.metadata = {{"scheme", scheme_json(scheme)}, {"prior", prior_json(prior)},
                        {"quad_points", quad.n_points}};
    } else if (scan->parsed()) {
      const Param varied = param_from_string(vary);
      const EncodingScheme scheme = scheme_from(encode, fixed, common, {varied});
      if (varied == scheme.message()) throw InvalidConfiguration("--vary must name a fixed parameter, not the message");
      const PriorModel prior = prior_from(prior_text, scheme.message(), common);
      const Range r = encoding_range(varied);
      const ScanGrid grid{varied, lo ? common.angle(*lo) : r.lo, hi ? common.angle(*hi) : r.hi, n_nodes};
      grid.validate();
      const ScanResult res = scan1d(scheme, grid, prior, quad);
      table.columns = {"axis_value", "avg_gain"};
      for (std::size_t k = 0; k < res.axis.size(); ++k) table.rows.push_back({res.axis[k], res.avg_gain[k]});
      json sj = scheme_json(scheme);
      sj.erase(std::string(to_string(varied)));
      table.metadata = {{"scheme", sj}, {"vary", vary}, {"prior", prior_json(prior)}, {"quad_points", quad.n_points}};
    } else if (scan2->parsed()) {
      const Param message = param_from_string(encode);
      const auto fixed_ps = fixed_params_of(message);
      const PriorModel prior = prior_from(prior_text, message, common);
      const EncodingScheme scheme(message, RelativeParams(0.0, 0.0, 0.0));
      const ScanResult2D res = scan2d(scheme, ScanGrid::over(fixed_ps[0], na), ScanGrid::over(fixed_ps[1], nb),
                                      prior, quad);
      table.columns = {"a_value", "b_value", "avg_gain"};
      for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
          table.rows.push_back({res.a_values[i], res.b_values[j], res.avg_gain(i, j)});
      table.metadata = {{"encode", encode}, {"a", to_string(fixed_ps[0])}, {"b", to_string(fixed_ps[1])},
                        {"prior", prior_json(prior)}, {"quad_points", quad.n_points}};
    } else if (table1->parsed()) {
      quad.validate();
      const TableOneReport report = table_one(quad, resolution);
      table.columns = {"prior", "encoding", "fixed_1", "value_1", "fixed_2", "value_2",
                       "max_avg_gain", "reflected_psi_gain"};
      for (const auto& row : report.cells) {
        for (const auto& cell : row) {
          table.rows.push_back({std::string(cell.prior == PriorKind::Uniform ? "uniform" : "discrete"),
                                std::string(to_string(cell.message)),
                                std::string(to_string(cell.best.params[0])), cell.best.values[0],
                                std::string(to_string(cell.best.params[1])), cell.best.values[1],
                                cell.best.avg_gain,
                                cell.reflected_psi_gain ? Cell(*cell.reflected_psi_gain) : Cell(std::string())});
        }
      }
      table.metadata = {{"quad_points", quad.n_points}, {"resolution", resolution}};
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidConfiguration& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalDomainError& e) {
    err << "numerical error: " << e.what() << '\n';
    return 1;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!common.output.empty()) {
    file.open(common.output);
    if (!file) {
      err << "error: cannot open " << common.output << " for writing\n";
      return 2;
    }
    sink = &file;
  }
  if (common.format == "json") {
    write_json(table, *sink);
  } else {
    write_csv(table, *sink);
  }
  return 0;
}

}  // namespace relframe::cli
