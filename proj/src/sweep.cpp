#include "mmahh/sweep.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "mmahh/engine.hpp"

namespace mmahh {

namespace {

using nlohmann::json;

Family parse_family(const std::string& s) {
  if (s == "onemax") return Family::onemax;
  if (s == "jump") return Family::jump;
  if (s == "cliff") return Family::cliff;
  if (s == "trap") return Family::trap;
  if (s == "seqopt") return Family::seqopt;
  throw std::invalid_argument("config: unknown family '" + s + "'");
}

AlgoChoice parse_algo(const std::string& s) {
  if (s == "mmahh_oi_ow") return AlgoChoice::mmahh_oi_ow;
  if (s == "mmahh_oi_am") return AlgoChoice::mmahh_oi_am;
  if (s == "mahh") return AlgoChoice::mahh;
  throw std::invalid_argument("config: unknown algorithm '" + s + "'");
}

void require_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) known = true;
    if (!known)
      throw std::invalid_argument(std::string("config: unknown key '") + it.key() + "' in " + where);
  }
}

ParamRule parse_rule(const json& jp, AlgoChoice algo) {
  require_keys(jp, {"p", "q", "preset", "c", "d", "mixing", "mixing_c"}, "params");
  ParamRule rule;
  const bool mixture = (algo == AlgoChoice::mahh);
  if (jp.contains("preset")) {
    if (mixture) throw std::invalid_argument("config: presets apply to the Markov pair, not mahh");
    const std::string preset = jp.at("preset").get<std::string>();
    if (preset == "quasilinear")
      rule.kind = ParamRule::Kind::quasilinear;
    else if (preset == "thm1-case1")
      rule.kind = ParamRule::Kind::case1;
    else if (preset == "thm1-case2")
      rule.kind = ParamRule::Kind::case2;
    else
      throw std::invalid_argument("config: unknown preset '" + preset + "'");
    rule.c = jp.value("c", 2.0);
    rule.d = jp.value("d", 1.0);
    if (!(rule.c > 0) || !(rule.d > 0))
      throw std::invalid_argument("config: preset constants c, d must be positive");
    return rule;
  }
  if (mixture) {
    if (jp.contains("mixing")) {
      rule.kind = ParamRule::Kind::mixing_explicit;
      rule.mixing = jp.at("mixing").get<double>();
      if (!(rule.mixing > 0 && rule.mixing < 1))
        throw std::invalid_argument("config: mixing must lie in (0, 1)");
    } else if (jp.contains("mixing_c")) {
      rule.kind = ParamRule::Kind::mixing_over_cn;
      rule.c = jp.at("mixing_c").get<double>();
      if (!(rule.c > 0)) throw std::invalid_argument("config: mixing_c must be positive");
    } else {
      throw std::invalid_argument("config: mahh needs 'mixing' or 'mixing_c'");
    }
    return rule;
  }
  if (!jp.contains("p") || !jp.contains("q"))
    throw std::invalid_argument("config: pair algorithms need 'p' and 'q' (or a preset)");
  rule.kind = ParamRule::Kind::pair_explicit;
  rule.p = jp.at("p").get<double>();
  rule.q = jp.at("q").get<double>();
  if (!(rule.p > 0 && rule.p < 1 && rule.q > 0 && rule.q < 1))
    throw std::invalid_argument("config: p and q must lie in (0, 1)");
  return rule;
}

// Per-cell rule evaluation; returns false with a reason for invalid cells.
struct CellParams {
  double p = 0, q = 0, mixing = 0;
};

bool evaluate_rule(const ParamRule& rule, Family family, std::uint32_t n,
                   std::uint32_t family_param, CellParams& out, std::string& reason) {
  const auto in_unit = [](double v) { return v > 0.0 && v < 1.0; };
  switch (rule.kind) {
    case ParamRule::Kind::pair_explicit:
      out.p = rule.p;
      out.q = rule.q;
      return true;
    case ParamRule::Kind::quasilinear: {
      if (n < 2) {
        reason = "quasilinear preset needs n >= 2";
        return false;
      }
      const double v = 1.0 / (static_cast<double>(n) * std::log(static_cast<double>(n)));
      if (!in_unit(v)) {
        reason = "quasilinear rate leaves (0, 1)";
        return false;
      }
      out.p = out.q = v;
      return true;
    }
    case ParamRule::Kind::case1:
    case ParamRule::Kind::case2: {
      if (family != Family::jump) {
        reason = "preset needs the gap width m (jump family)";
        return false;
      }
      const double m = static_cast<double>(family_param);
      if (rule.kind == ParamRule::Kind::case1) {
        out.q = 0.5;
        out.p = m * out.q / (2.0 * static_cast<double>(n));
      } else {
        out.q = 1.0 / (rule.d * m);
        out.p = m * out.q / (rule.c * static_cast<double>(n));
      }
      if (!in_unit(out.p) || !in_unit(out.q)) {
        reason = "preset rates leave (0, 1)";
        return false;
      }
      return true;
    }
    case ParamRule::Kind::mixing_explicit:
      out.mixing = rule.mixing;
      return true;
    case ParamRule::Kind::mixing_over_cn: {
      const double v = 1.0 / (rule.c * static_cast<double>(n));
      if (!in_unit(v)) {
        reason = "mixing 1/(c n) leaves (0, 1)";
        return false;
      }
      out.mixing = v;
      return true;
    }
  }
  reason = "unhandled rule";
  return false;
}

std::string join_layers(std::span<const std::uint32_t> xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(xs[i]);
  }
  return s;
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::onemax: return "onemax";
    case Family::jump: return "jump";
    case Family::cliff: return "cliff";
    case Family::trap: return "trap";
    case Family::seqopt: return "seqopt";
  }
  return "?";
}

const char* algo_name(AlgoChoice a) {
  switch (a) {
    case AlgoChoice::mmahh_oi_ow: return "mmahh_oi_ow";
    case AlgoChoice::mmahh_oi_am: return "mmahh_oi_am";
    case AlgoChoice::mahh: return "mahh";
  }
  return "?";
}

SweepSpec sweep_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: parse error: ") + e.what());
  }
  try {
    require_keys(j, {"family", "n", "m", "d", "optima", "algorithm", "params", "trials", "budget",
                     "seed", "initial", "out"},
                 "config");
    SweepSpec spec;
    spec.family = parse_family(j.at("family").get<std::string>());
    spec.ns = j.at("n").get<std::vector<std::uint32_t>>();
    if (spec.ns.empty()) throw std::invalid_argument("config: 'n' must be a non-empty list");
    for (std::uint32_t n : spec.ns)
      if (n == 0) throw std::invalid_argument("config: sizes must be positive");

    if (spec.family == Family::jump) {
      spec.family_params = j.at("m").get<std::vector<std::uint32_t>>();
      if (spec.family_params.empty()) throw std::invalid_argument("config: jump needs a non-empty 'm' list");
    } else if (spec.family == Family::cliff) {
      spec.family_params = j.at("d").get<std::vector<std::uint32_t>>();
      if (spec.family_params.empty()) throw std::invalid_argument("config: cliff needs a non-empty 'd' list");
    } else if (spec.family == Family::seqopt) {
      spec.optima_vectors = j.at("optima").get<std::vector<std::vector<std::uint32_t>>>();
      if (spec.optima_vectors.empty())
        throw std::invalid_argument("config: seqopt needs a non-empty 'optima' list");
    } else if (j.contains("m") || j.contains("d") || j.contains("optima")) {
      throw std::invalid_argument("config: family parameters given for a parameter-free family");
    }

    spec.algo = parse_algo(j.at("algorithm").get<std::string>());
    spec.rule = parse_rule(j.at("params"), spec.algo);
    spec.trials = j.value("trials", std::uint64_t{100});
    if (spec.trials == 0) throw std::invalid_argument("config: trials must be positive");
    spec.budget = j.value("budget", std::uint64_t{1'000'000'000});
    if (spec.budget == 0) throw std::invalid_argument("config: budget must be positive");
    spec.seed = j.value("seed", std::uint64_t{1});
    if (j.contains("initial")) {
      const json& ji = j.at("initial");
      require_keys(ji, {"uniform", "layer"}, "initial");
      if (ji.contains("layer")) {
        spec.uniform_start = false;
        spec.start_layer = ji.at("layer").get<std::uint32_t>();
      } else if (!ji.value("uniform", true)) {
        throw std::invalid_argument("config: non-uniform start needs 'layer'");
      }
    }
    spec.out = j.value("out", std::string{});
    return spec;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: bad fields: ") + e.what());
  }
}

std::string sweep_schema() {
  return R"({
  "family": "onemax | jump | cliff | trap | seqopt",
  "n": [16, 24, 32],
  "m": [3],                  // jump only: gap widths
  "d": [4, 8],               // cliff only: drop distances
  "optima": [[5, 2]],        // seqopt only: interior optima layer vectors
  "algorithm": "mmahh_oi_ow | mmahh_oi_am | mahh",
  "params": {
    "p": 0.05, "q": 0.3,     // explicit pair rates (pair algorithms), or:
    "preset": "quasilinear", //   p = q = 1/(n ln n)
    "preset": "thm1-case1",  //   q = 1/2, p = m q / (2 n)        (jump)
    "preset": "thm1-case2",  //   q = 1/(d m), p = m q / (c n)    (jump)
    "c": 2, "d": 1,          //   constants for thm1-case2
    "mixing": 0.01,          // mahh: explicit mixing probability, or:
    "mixing_c": 2            //   mixing = 1/(c n)
  },
  "trials": 200,             // runs per cell (default 100)
  "budget": 100000000,       // iteration cap per run (default 1e9)
  "seed": 1,                 // base seed; cell i uses seed + i
  "initial": {"uniform": true} /* or {"layer": 5} */,
  "out": "results.csv"       // optional; --out overrides; empty = stdout
}
)";
}

std::vector<CellResult> run_sweep(const SweepSpec& spec, unsigned parallel,
                                  std::ostream* skip_log) {
  std::vector<CellResult> rows;
  std::uint64_t cell_index = 0;

  const bool seqopt = (spec.family == Family::seqopt);
  const std::size_t outer = seqopt ? spec.optima_vectors.size()
                                   : (spec.family_params.empty() ? 1 : spec.family_params.size());

  for (std::size_t pi = 0; pi < outer; ++pi) {
    for (std::uint32_t n : spec.ns) {
      const std::uint64_t cell_seed = spec.seed + cell_index;
      ++cell_index;

      const std::uint32_t family_param =
          (!seqopt && !spec.family_params.empty()) ? spec.family_params[pi] : 0;
      std::string label = "-";
      if (spec.family == Family::jump) label = "m=" + std::to_string(family_param);
      if (spec.family == Family::cliff) label = "d=" + std::to_string(family_param);
      if (seqopt) label = "opt=" + join_layers(spec.optima_vectors[pi]);

      const auto skip = [&](const std::string& why) {
        if (skip_log)
          *skip_log << "skip cell family=" << family_name(spec.family) << " n=" << n << " "
                    << label << ": " << why << "\n";
      };

      CellParams cp;
      std::string reason;
      if (!evaluate_rule(spec.rule, spec.family, n, family_param, cp, reason)) {
        skip(reason);
        continue;
      }
      if (!spec.uniform_start && spec.start_layer > n) {
        skip("start layer exceeds n");
        continue;
      }

      UnitationFunction f;
      try {
        switch (spec.family) {
          case Family::onemax: f = make_onemax(n); break;
          case Family::jump: f = make_jump(n, family_param); break;
          case Family::cliff: f = make_cliff(n, family_param); break;
          case Family::trap: f = make_trap(n); break;
          case Family::seqopt: {
            // The instance is part of the cell: drawn from a reserved stream
            // of the cell seed, disjoint from all trial streams.
            RandomSource inst_rng(cell_seed, std::uint64_t{1} << 63);
            f = random_seqopt(n, spec.optima_vectors[pi], inst_rng);
            break;
          }
        }
      } catch (const std::exception& e) {
        skip(e.what());
        continue;
      }

      EngineConfig cfg;
      cfg.function = std::move(f);
      cfg.initial.uniform = spec.uniform_start;
      cfg.initial.layer = spec.start_layer;
      cfg.max_iterations = spec.budget;
      cfg.seed = cell_seed;

      AlgoKind kind = AlgoKind::markov_pair;
      double mixing = 0;
      if (spec.algo == AlgoChoice::mahh) {
        kind = AlgoKind::iid_mixture;
        mixing = cp.mixing;
      } else {
        cfg.params.p = cp.p;
        cfg.params.q = cp.q;
        cfg.params.partner =
            (spec.algo == AlgoChoice::mmahh_oi_ow) ? Operator::ow : Operator::am;
      }

      const std::vector<RunResult> runs = run_trials(cfg, kind, mixing, spec.trials, parallel);
      const TrialsSummary s = summarize_trials(runs);

      CellResult row;
      row.family = family_name(spec.family);
      row.n = n;
      row.param_label = label;
      row.algo = algo_name(spec.algo);
      if (spec.algo == AlgoChoice::mahh) {
        row.p = mixing;
        row.q = std::nan("");
      } else {
        row.p = cfg.params.p;
        row.q = cfg.params.q;
      }
      row.trials = s.trials;
      row.successes = s.successes;
      row.mean_t = s.mean_hitting_time;
      row.sd_t = s.sd_hitting_time;
      row.ci95_lo = s.ci95_lo;
      row.ci95_hi = s.ci95_hi;
      row.seed = cell_seed;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_text(std::span<const CellResult> cells) {
  std::string out = "family,n,params,algo,p,q,trials,successes,mean_T,sd_T,ci95_lo,ci95_hi,seed\n";
  for (const CellResult& c : cells) {
    out += c.family;
    out += ',';
    out += std::to_string(c.n);
    out += ',';
    out += c.param_label;
    out += ',';
    out += c.algo;
    out += ',';
    out += format_double(c.p);
    out += ',';
    out += format_double(c.q);
    out += ',';
    out += std::to_string(c.trials);
    out += ',';
    out += std::to_string(c.successes);
    out += ',';
    out += format_double(c.mean_t);
    out += ',';
    out += format_double(c.sd_t);
    out += ',';
    out += format_double(c.ci95_lo);
    out += ',';
    out += format_double(c.ci95_hi);
    out += ',';
    out += std::to_string(c.seed);
    out += '\n';
  }
  return out;
}

std::vector<CellResult> cells_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "family,n,params,algo,p,q,trials,successes,mean_T,sd_T,ci95_lo,ci95_hi,seed")
    throw std::invalid_argument("csv: missing or unexpected header");

  const auto parse_u64 = [](const std::string& s) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
      throw std::invalid_argument("csv: bad integer field '" + s + "'");
    return v;
  };
  const auto parse_f64 = [](const std::string& s) {
    double v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
      throw std::invalid_argument("csv: bad numeric field '" + s + "'");
    return v;
  };

  std::vector<CellResult> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(pos));
        break;
      }
      fields.push_back(line.substr(pos, comma - pos));
      pos = comma + 1;
    }
    if (fields.size() != 13) throw std::invalid_argument("csv: expected 13 fields per row");
    CellResult c;
    c.family = fields[0];
    c.n = static_cast<std::uint32_t>(parse_u64(fields[1]));
    c.param_label = fields[2];
    c.algo = fields[3];
    c.p = parse_f64(fields[4]);
    c.q = parse_f64(fields[5]);
    c.trials = parse_u64(fields[6]);
    c.successes = parse_u64(fields[7]);
    c.mean_t = parse_f64(fields[8]);
    c.sd_t = parse_f64(fields[9]);
    c.ci95_lo = parse_f64(fields[10]);
    c.ci95_hi = parse_f64(fields[11]);
    c.seed = parse_u64(fields[12]);
    rows.push_back(std::move(c));
  }
  return rows;
}

}  // namespace mmahh
