// mmahh-lab: command-line driver around the library. Subcommands:
//   simulate      run a JSON-configured sweep and emit one CSV row per cell
//   validate      run named validation suites (closed forms vs oracles vs MC)
//   formula       evaluate a single closed form / bound from flags
//   oracle        exact linear-solve answers (phase outcome law, hitting time)
//   sweep-report  fit scaling exponents on simulate CSV and attach bounds
// Exit codes: 0 success, 1 usage/config error, 2 validation failure.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mmahh/checks.hpp"
#include "mmahh/engine.hpp"
#include "mmahh/exact.hpp"
#include "mmahh/stats.hpp"
#include "mmahh/sweep.hpp"
#include "mmahh/unitation.hpp"

namespace {

using nlohmann::json;
using namespace mmahh;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("short write to '" + path + "'");
}

std::optional<std::uint64_t> env_seed() {
  const char* v = std::getenv("MMAHH_LAB_SEED");
  if (v == nullptr || *v == '\0') return std::nullopt;
  std::uint64_t value = 0;
  const char* end = v + std::strlen(v);
  const auto [ptr, ec] = std::from_chars(v, end, value);
  if (ec != std::errc() || ptr != end)
    throw std::invalid_argument("MMAHH_LAB_SEED must be an unsigned 64-bit integer");
  return value;
}

Operator parse_operator(const std::string& s) {
  if (s == "oi") return Operator::oi;
  if (s == "am") return Operator::am;
  if (s == "ow") return Operator::ow;
  throw std::invalid_argument("unknown operator '" + s + "' (expected oi, am, or ow)");
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_file(out_path, content);
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  unsigned parallel = std::max(1u, std::thread::hardware_concurrency());
};

int cmd_simulate(const SimulateArgs& args) {
  if (args.config.empty())
    throw std::invalid_argument("simulate requires --config PATH (or --print-schema)");
  SweepSpec spec = sweep_from_json(read_file(args.config));
  if (const auto es = env_seed()) spec.seed = *es;
  if (args.seed) spec.seed = *args.seed;
  if (!args.out.empty()) spec.out = args.out;

  std::size_t planned = spec.ns.size();
  if (spec.family == Family::seqopt)
    planned *= spec.optima_vectors.size();
  else if (!spec.family_params.empty())
    planned *= spec.family_params.size();

  const std::vector<CellResult> cells = run_sweep(spec, args.parallel, &std::cerr);
  const std::string csv = csv_text(cells);
  std::ostream& summary = spec.out.empty() ? std::cerr : std::cout;
  if (spec.out.empty())
    std::cout << csv;
  else
    write_file(spec.out, csv);
  summary << "simulate: " << cells.size() << " of " << planned << " cells completed ("
          << planned - cells.size() << " skipped), " << spec.trials
          << " trials per cell, base seed " << spec.seed;
  if (!spec.out.empty()) summary << ", wrote " << spec.out;
  summary << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

int cmd_validate(const std::string& suite) {
  const std::vector<std::string> suites =
      suite.empty() ? validate_suite_names() : std::vector<std::string>{suite};
  std::size_t total = 0, failed = 0;
  for (const std::string& s : suites) {
    for (const CheckResult& r : validate_suite(s)) {
      ++total;
      if (!r.pass) ++failed;
      std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << s << "/" << r.name << ": " << r.detail
                << std::endl;
    }
  }
  std::cout << "validate: " << total - failed << "/" << total << " checks passed" << std::endl;
  return failed == 0 ? kExitOk : kExitValidation;
}

// ---------------------------------------------------------------------------
// formula
// ---------------------------------------------------------------------------

struct FormulaArgs {
  std::string name;
  std::string out;
  std::optional<std::uint32_t> n, k, h, m, ones;
  std::optional<double> p, q, c, i;
  std::optional<int> gap_exponent;
  std::vector<std::uint32_t> optima;
};

int cmd_formula(const FormulaArgs& a) {
  const auto need = [&](const auto& opt, const char* flag) {
    if (!opt)
      throw std::invalid_argument("formula " + a.name + " requires " + flag);
    return *opt;
  };
  json doc;
  doc["formula"] = a.name;
  if (a.name == "pkh") {
    doc["value"] = pkh_closed_form(need(a.n, "--n"), need(a.p, "--p"), need(a.k, "--k"),
                                   need(a.h, "--target"));
  } else if (a.name == "p0n") {
    doc["value"] = p0n_at(need(a.n, "--n"), a.c.value_or(1.0));
  } else if (a.name == "drift-am") {
    doc["value"] = drift_am(need(a.n, "--n"), need(a.q, "--q"), need(a.i, "--i"));
  } else if (a.name == "drift-oi") {
    doc["value"] = drift_oi(need(a.n, "--n"), need(a.p, "--p"), need(a.i, "--i"));
  } else if (a.name == "drift-am-oi") {
    doc["value"] =
        drift_am_oi(need(a.n, "--n"), need(a.p, "--p"), need(a.q, "--q"), need(a.i, "--i"));
  } else if (a.name == "stationary") {
    doc["value"] = stationary_nonelitist_fraction({need(a.p, "--p"), need(a.q, "--q"),
                                                   Operator::ow});
  } else if (a.name == "am-success") {
    doc["value"] = am_phase_success_lower_bound(need(a.n, "--n"), need(a.m, "--m"),
                                                need(a.q, "--q"));
  } else if (a.name == "potential") {
    doc["value"] = potential_d(need(a.n, "--n"), need(a.m, "--m"), need(a.ones, "--ones"));
  } else if (a.name == "gap-drift") {
    doc["value"] =
        gap_drift_lower_bound(need(a.n, "--n"), need(a.m, "--m"), need(a.ones, "--ones"));
  } else if (a.name == "bound-jump") {
    const BoundReport b = bound_jump_oi_am(need(a.n, "--n"), need(a.m, "--m"), need(a.p, "--p"),
                                           need(a.q, "--q"), a.gap_exponent);
    doc["scaling_term"] = b.scaling_term;
    doc["phase_factor"] = b.phase_factor;
    doc["attempts_term"] = b.attempts_term;
    doc["precondition_ok"] = b.precondition_ok;
    if (!b.note.empty()) doc["note"] = b.note;
  } else if (a.name == "bound-seqopt") {
    const BoundReport b = bound_seqopt(need(a.n, "--n"), a.optima);
    doc["scaling_term"] = b.scaling_term;
    doc["attempts_term"] = b.attempts_term;
    doc["precondition_ok"] = b.precondition_ok;
  } else {
    throw std::invalid_argument(
        "unknown formula '" + a.name +
        "' (expected pkh, p0n, drift-am, drift-oi, drift-am-oi, stationary, am-success, "
        "potential, gap-drift, bound-jump, or bound-seqopt)");
  }
  emit(a.out, doc.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// oracle
// ---------------------------------------------------------------------------

struct OracleArgs {
  std::string name;
  std::string out;
  std::string instance;                  // path to a serialized instance
  std::string family;                    // alternative: construct by family
  std::optional<std::uint32_t> n, m, d;
  std::vector<std::uint32_t> optima;     // seqopt interior optima
  std::optional<std::uint64_t> instance_seed;
  std::string op = "oi";
  std::optional<double> rate;
  std::optional<std::uint32_t> start;
  std::string pair;                      // oi_ow | oi_am
  std::optional<double> p, q, mixing;
  std::string initial_op = "oi";
};

UnitationFunction oracle_function(const OracleArgs& a) {
  if (!a.instance.empty()) return unitation_from_json(read_file(a.instance));
  if (a.family.empty())
    throw std::invalid_argument("oracle needs --instance PATH or --family NAME");
  const auto need = [&](const auto& opt, const char* flag) {
    if (!opt) throw std::invalid_argument("oracle --family " + a.family + " requires " + flag);
    return *opt;
  };
  if (a.family == "onemax") return make_onemax(need(a.n, "--n"));
  if (a.family == "jump") return make_jump(need(a.n, "--n"), need(a.m, "--m"));
  if (a.family == "cliff") return make_cliff(need(a.n, "--n"), need(a.d, "--d"));
  if (a.family == "trap") return make_trap(need(a.n, "--n"));
  if (a.family == "seqopt") {
    if (a.optima.empty() || !a.instance_seed)
      throw std::invalid_argument(
          "oracle --family seqopt requires --optima and --instance-seed (the sweep cell seed "
          "reproduces that cell's instance)");
    // Same derivation the sweep uses, so a recorded cell seed rebuilds the
    // exact instance that cell simulated.
    RandomSource rng(*a.instance_seed, std::uint64_t{1} << 63);
    return random_seqopt(need(a.n, "--n"), a.optima, rng);
  }
  throw std::invalid_argument("unknown family '" + a.family +
                              "' (expected onemax, jump, cliff, trap, or seqopt)");
}

int cmd_oracle(const OracleArgs& a) {
  const UnitationFunction f = oracle_function(a);
  json doc;
  doc["function"] = f.label;
  doc["n"] = f.n;
  if (a.name == "phase-outcome") {
    if (!a.rate) throw std::invalid_argument("oracle phase-outcome requires --rate");
    if (!a.start) throw std::invalid_argument("oracle phase-outcome requires --start");
    const Operator op = parse_operator(a.op);
    const std::vector<double> law = exact_phase_outcome(f, op, *a.rate, *a.start);
    doc["operator"] = operator_name(op);
    doc["rate"] = *a.rate;
    doc["start_layer"] = *a.start;
    doc["end_layer_law"] = law;
    double expectation = 0;
    for (std::size_t y = 0; y < law.size(); ++y) expectation += static_cast<double>(y) * law[y];
    doc["expected_end_layer"] = expectation;
  } else if (a.name == "hitting-time") {
    ExactChain chain = [&] {
      if (a.mixing) {
        if (!a.pair.empty())
          throw std::invalid_argument("oracle hitting-time takes --mixing or --pair, not both");
        return make_mixture_chain(f, *a.mixing);
      }
      if (a.pair.empty())
        throw std::invalid_argument("oracle hitting-time requires --pair oi_ow|oi_am or --mixing");
      MarkovParams mp;
      mp.p = a.p.value_or(0);
      mp.q = a.q.value_or(0);
      if (a.pair == "oi_ow")
        mp.partner = Operator::ow;
      else if (a.pair == "oi_am")
        mp.partner = Operator::am;
      else
        throw std::invalid_argument("unknown pair '" + a.pair + "' (expected oi_ow or oi_am)");
      return make_pair_chain(f, mp);
    }();
    StartSpec start;
    start.uniform = !a.start.has_value();
    start.layer = a.start.value_or(0);
    start.op = parse_operator(a.initial_op);
    doc["states"] = chain.state_count();
    doc["start"] = start.uniform ? json("uniform") : json(start.layer);
    doc["expected_hitting_time"] = exact_hitting_time(chain, start);
  } else {
    throw std::invalid_argument("unknown oracle '" + a.name +
                                "' (expected phase-outcome or hitting-time)");
  }
  emit(a.out, doc.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep-report
// ---------------------------------------------------------------------------

// Interior optima implied by a CSV row, for the matching runtime bound.
std::optional<std::vector<std::uint32_t>> interior_optima_for(const CellResult& c) {
  const auto param_value = [&]() -> std::uint32_t {
    return static_cast<std::uint32_t>(std::stoul(c.param_label.substr(2)));
  };
  if (c.family == "onemax") return std::vector<std::uint32_t>{};
  if (c.family == "trap") return std::vector<std::uint32_t>{1};
  if (c.family == "jump") {
    const std::uint32_t m = param_value();
    if (m <= 1) return std::vector<std::uint32_t>{};
    if (m >= c.n) return std::vector<std::uint32_t>{1};
    return std::vector<std::uint32_t>{m, 1};
  }
  if (c.family == "cliff") {
    const std::uint32_t d = param_value();
    if (d <= 1) return std::vector<std::uint32_t>{};
    return std::vector<std::uint32_t>{d, d - 1};
  }
  if (c.family == "seqopt") {
    std::vector<std::uint32_t> layers;
    std::string rest = c.param_label.substr(4);  // after "opt="
    std::stringstream ss(rest);
    std::string piece;
    while (std::getline(ss, piece, ';'))
      layers.push_back(static_cast<std::uint32_t>(std::stoul(piece)));
    return layers;
  }
  return std::nullopt;
}

double bound_scaling_for(const CellResult& c) {
  try {
    if (c.algo == "mmahh_oi_am" && c.family == "jump") {
      const std::uint32_t m = static_cast<std::uint32_t>(std::stoul(c.param_label.substr(2)));
      return bound_jump_oi_am(c.n, m, c.p, c.q).scaling_term;
    }
    if (c.algo == "mmahh_oi_ow") {
      if (const auto optima = interior_optima_for(c))
        return bound_seqopt(c.n, *optima).scaling_term;
    }
  } catch (const std::exception&) {
    // fall through: no applicable bound for this row
  }
  return std::numeric_limits<double>::quiet_NaN();
}

json fit_to_json(const FitResult& fit) {
  return json{{"model", fit.model == ScalingModel::pure_power ? "pure-power" : "power-times-log"},
              {"exponent", fit.exponent},
              {"intercept", fit.intercept},
              {"residual_norm", fit.residual_norm},
              {"points", fit.points}};
}

int cmd_sweep_report(const std::string& csv_path, const std::string& out_path) {
  const std::vector<CellResult> cells = cells_from_csv(read_file(csv_path));
  std::vector<std::string> order;
  std::map<std::string, std::vector<const CellResult*>> groups;
  for (const CellResult& c : cells) {
    const std::string key = c.family + "|" + c.param_label + "|" + c.algo;
    auto [it, fresh] = groups.try_emplace(key);
    if (fresh) order.push_back(key);
    it->second.push_back(&c);
  }
  json doc;
  doc["source"] = csv_path;
  doc["groups"] = json::array();
  for (const std::string& key : order) {
    const std::vector<const CellResult*>& rows = groups[key];
    json g;
    g["family"] = rows.front()->family;
    g["params"] = rows.front()->param_label;
    g["algo"] = rows.front()->algo;
    json points = json::array();
    std::vector<FitPoint> fit_points;
    std::vector<double> seen_n;
    for (const CellResult* row : rows) {
      // Exponent fits only trust cells where nearly every trial finished.
      const bool eligible =
          row->successes > 0 && 20 * row->successes >= 19 * row->trials && row->mean_t > 0;
      json pt{{"n", row->n},
              {"trials", row->trials},
              {"successes", row->successes},
              {"mean_T", row->mean_t},
              {"ci95", {row->ci95_lo, row->ci95_hi}},
              {"included_in_fit", eligible}};
      const double bound = bound_scaling_for(*row);
      if (std::isfinite(bound)) {
        pt["bound_scaling"] = bound;
        if (row->mean_t > 0 && std::isfinite(row->mean_t))
          pt["mean_to_bound_ratio"] = row->mean_t / bound;
      }
      points.push_back(pt);
      if (eligible) {
        fit_points.push_back({static_cast<double>(row->n), row->mean_t});
        if (std::find(seen_n.begin(), seen_n.end(), static_cast<double>(row->n)) == seen_n.end())
          seen_n.push_back(static_cast<double>(row->n));
      }
    }
    g["points"] = points;
    if (fit_points.size() >= 3 && seen_n.size() >= 2) {
      g["fit_pure_power"] = fit_to_json(fit_exponent(fit_points, ScalingModel::pure_power));
      g["fit_power_times_log"] =
          fit_to_json(fit_exponent(fit_points, ScalingModel::power_times_log));
    } else {
      std::cerr << "sweep-report: group " << key << " has only " << fit_points.size()
                << " eligible points; exponent fit omitted\n";
    }
    doc["groups"].push_back(g);
  }
  emit(out_path, doc.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Markov move-acceptance hyper-heuristic laboratory"};
  app.require_subcommand(0, 1);
  bool print_schema = false;
  app.add_flag("--print-schema", print_schema, "print the simulate config schema and exit");

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand("simulate", "run a configured sweep, emit CSV");
  simulate->add_option("--config", sim.config, "JSON sweep configuration");
  simulate->add_option("--seed", sim.seed,
                       "base seed (overrides MMAHH_LAB_SEED and the config value)");
  simulate->add_option("--out", sim.out, "CSV path (overrides the config; default stdout)");
  simulate->add_option("--parallel", sim.parallel, "trial worker threads");
  bool sim_schema = false;
  simulate->add_flag("--print-schema", sim_schema, "print the config schema and exit");

  std::string suite;
  CLI::App* validate = app.add_subcommand("validate", "run validation suites");
  validate->add_option("suite", suite,
                       "one of pkh, drifts, phases, minimality, limit, bounds (default: all)");

  FormulaArgs fa;
  CLI::App* formula = app.add_subcommand("formula", "evaluate one closed form or bound");
  formula->add_option("name", fa.name, "formula name (see --help text)")->required();
  formula->add_option("--n", fa.n, "problem size");
  formula->add_option("--k", fa.k, "start layer");
  formula->add_option("--target", fa.h, "target layer");
  formula->add_option("--m", fa.m, "gap width");
  formula->add_option("--ones", fa.ones, "number of one-bits");
  formula->add_option("--p", fa.p, "improving-side switch rate / probability");
  formula->add_option("--q", fa.q, "partner-side switch rate");
  formula->add_option("--c", fa.c, "rate constant for p = 1/(c n ln n)");
  formula->add_option("--i", fa.i, "start distance for drift formulas");
  formula->add_option("--gap-exponent", fa.gap_exponent, "override the (1-q) exponent");
  formula->add_option("--optima", fa.optima, "interior optima layers (descending)")
      ->delimiter(',');
  formula->add_option("--out", fa.out, "write the JSON result here instead of stdout");

  OracleArgs oa;
  CLI::App* oracle = app.add_subcommand("oracle", "exact linear-solve reference values");
  oracle->add_option("name", oa.name, "phase-outcome or hitting-time")->required();
  oracle->add_option("--instance", oa.instance, "function instance JSON file");
  oracle->add_option("--family", oa.family, "onemax, jump, cliff, trap, or seqopt");
  oracle->add_option("--n", oa.n, "problem size");
  oracle->add_option("--m", oa.m, "jump gap width");
  oracle->add_option("--d", oa.d, "cliff depth");
  oracle->add_option("--optima", oa.optima, "seqopt interior optima layers")->delimiter(',');
  oracle->add_option("--instance-seed", oa.instance_seed,
                     "seed deriving the seqopt instance (sweep cell seed)");
  oracle->add_option("--op", oa.op, "phase operator: oi, am, or ow (default oi)");
  oracle->add_option("--rate", oa.rate, "phase end probability per iteration");
  oracle->add_option("--start", oa.start, "start layer (hitting-time default: uniform)");
  oracle->add_option("--pair", oa.pair, "operator pair oi_ow or oi_am");
  oracle->add_option("--p", oa.p, "switch rate toward the partner");
  oracle->add_option("--q", oa.q, "switch rate back to improving");
  oracle->add_option("--mixing", oa.mixing, "i.i.d. partner probability instead of a pair");
  oracle->add_option("--initial-op", oa.initial_op, "initial operator (default oi)");
  oracle->add_option("--out", oa.out, "write the JSON result here instead of stdout");

  std::string report_csv, report_out;
  CLI::App* report = app.add_subcommand("sweep-report", "fit exponents on simulate CSV");
  report->add_option("--config", report_csv, "CSV produced by simulate")->required();
  report->add_option("--out", report_out, "write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (print_schema || sim_schema) {
      std::cout << sweep_schema();
      return kExitOk;
    }
    if (simulate->parsed()) return cmd_simulate(sim);
    if (validate->parsed()) return cmd_validate(suite);
    if (formula->parsed()) return cmd_formula(fa);
    if (oracle->parsed()) return cmd_oracle(oa);
    if (report->parsed()) return cmd_sweep_report(report_csv, report_out);
    std::cout << app.help();
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
