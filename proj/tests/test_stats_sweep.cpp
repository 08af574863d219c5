#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmahh/engine.hpp"
#include "mmahh/rng.hpp"
#include "mmahh/stats.hpp"
#include "mmahh/sweep.hpp"
#include "mmahh/unitation.hpp"

using namespace mmahh;

namespace {

std::vector<FitPoint> curve(double coeff, double expo, bool with_log) {
  std::vector<FitPoint> pts;
  for (double n : {8.0, 16.0, 32.0, 64.0, 128.0}) {
    double t = coeff * std::pow(n, expo);
    if (with_log) t *= std::log(n);
    pts.push_back({n, t});
  }
  return pts;
}

}  // namespace

TEST_CASE("exponent fits recover synthetic power laws") {
  const FitResult cube = fit_exponent(curve(1.0, 3.0, false), ScalingModel::pure_power);
  CHECK(cube.exponent == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(cube.intercept == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(cube.residual_norm <= 1e-9);
  CHECK(cube.points == 5);

  const FitResult logged = fit_exponent(curve(7.0, 3.0, true), ScalingModel::power_times_log);
  CHECK(logged.exponent == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(logged.intercept == doctest::Approx(std::log(7.0)).epsilon(1e-9));

  // Fitting the wrong model leaves a visible residual.
  const FitResult mismatched = fit_exponent(curve(7.0, 3.0, true), ScalingModel::pure_power);
  CHECK(mismatched.residual_norm > 1e-3);
}

TEST_CASE("exponent fits tolerate small multiplicative noise") {
  RandomSource rng(0xf17);
  std::vector<FitPoint> pts = curve(2.0, 3.0, false);
  for (FitPoint& pt : pts) pt.t *= 0.99 + 0.02 * rng.next_double();
  const FitResult fit = fit_exponent(pts, ScalingModel::pure_power);
  CHECK(fit.exponent > 2.9);
  CHECK(fit.exponent < 3.1);
}

TEST_CASE("rescaling every runtime shifts the intercept, not the exponent") {
  const std::vector<FitPoint> base = curve(1.5, 2.5, false);
  std::vector<FitPoint> scaled = base;
  for (FitPoint& pt : scaled) pt.t *= 10.0;
  const FitResult a = fit_exponent(base, ScalingModel::pure_power);
  const FitResult b = fit_exponent(scaled, ScalingModel::pure_power);
  CHECK(std::abs(a.exponent - b.exponent) <= 1e-12);
  CHECK(b.intercept - a.intercept == doctest::Approx(std::log(10.0)).epsilon(1e-9));
}

TEST_CASE("exponent fits reject degenerate inputs") {
  std::vector<FitPoint> two = {{8.0, 10.0}, {16.0, 20.0}};
  CHECK_THROWS_AS(fit_exponent(two, ScalingModel::pure_power), std::invalid_argument);

  std::vector<FitPoint> same_n = {{8.0, 10.0}, {8.0, 11.0}, {8.0, 12.0}};
  CHECK_THROWS_AS(fit_exponent(same_n, ScalingModel::pure_power), std::invalid_argument);

  std::vector<FitPoint> zero_t = {{8.0, 10.0}, {16.0, 0.0}, {32.0, 12.0}};
  CHECK_THROWS_AS(fit_exponent(zero_t, ScalingModel::pure_power), std::invalid_argument);

  std::vector<FitPoint> tiny_n = {{1.0, 10.0}, {16.0, 20.0}, {32.0, 30.0}};
  CHECK_THROWS_AS(fit_exponent(tiny_n, ScalingModel::pure_power), std::invalid_argument);
}

TEST_CASE("summary statistics match hand fixtures") {
  const std::vector<double> xs = {10.0, 20.0, 30.0};
  const SummaryStats s = summarize(xs);
  CHECK(s.count == 3);
  CHECK(s.mean == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(s.sd == doctest::Approx(10.0).epsilon(1e-12));
  const double half = 1.959963984540054 * 10.0 / std::sqrt(3.0);
  CHECK(s.ci95_lo == doctest::Approx(20.0 - half).epsilon(1e-12));
  CHECK(s.ci95_hi == doctest::Approx(20.0 + half).epsilon(1e-12));

  const std::vector<double> one = {7.5};
  const SummaryStats s1 = summarize(one);
  CHECK(s1.sd == 0.0);
  CHECK(s1.ci95_lo == 7.5);
  CHECK(s1.ci95_hi == 7.5);

  const SummaryStats empty = summarize(std::vector<double>{});
  CHECK(empty.count == 0);
  CHECK(std::isnan(empty.mean));
}

TEST_CASE("sweep configs parse with full field coverage") {
  const std::string text = R"({
    "family": "jump",
    "n": [10, 12],
    "m": [3],
    "algorithm": "mmahh_oi_am",
    "params": {"preset": "thm1-case1"},
    "trials": 40,
    "budget": 10000000,
    "seed": 7,
    "initial": {"uniform": true},
    "out": "rows.csv"
  })";
  const SweepSpec spec = sweep_from_json(text);
  CHECK(spec.family == Family::jump);
  CHECK(spec.ns == std::vector<std::uint32_t>{10, 12});
  CHECK(spec.family_params == std::vector<std::uint32_t>{3});
  CHECK(spec.algo == AlgoChoice::mmahh_oi_am);
  CHECK(spec.rule.kind == ParamRule::Kind::case1);
  CHECK(spec.trials == 40);
  CHECK(spec.budget == 10000000);
  CHECK(spec.seed == 7);
  CHECK(spec.uniform_start);
  CHECK(spec.out == "rows.csv");

  const SweepSpec fixed = sweep_from_json(
      R"({"family": "onemax", "n": [9], "algorithm": "mmahh_oi_ow",
          "params": {"p": 0.1, "q": 0.2}, "initial": {"layer": 4}})");
  CHECK_FALSE(fixed.uniform_start);
  CHECK(fixed.start_layer == 4);
  CHECK(fixed.rule.p == 0.1);
  CHECK(fixed.rule.q == 0.2);
  CHECK(fixed.trials == 100);  // defaults
  CHECK(fixed.out.empty());

  const SweepSpec mixture = sweep_from_json(
      R"({"family": "trap", "n": [8], "algorithm": "mahh", "params": {"mixing_c": 2}})");
  CHECK(mixture.rule.kind == ParamRule::Kind::mixing_over_cn);
  CHECK(mixture.rule.c == 2.0);
}

TEST_CASE("sweep configs reject malformed input") {
  auto bad = [](const std::string& text) {
    CHECK_THROWS_AS(sweep_from_json(text), std::invalid_argument);
  };
  bad("{/");  // not JSON
  bad(R"({"family": "onemax", "n": [8], "algorithm": "mmahh_oi_ow",
          "params": {"p": 0.1, "q": 0.2}, "frobnicate": 1})");
  bad(R"({"family": "hills", "n": [8], "algorithm": "mmahh_oi_ow", "params": {"p": 0.1, "q": 0.2}})");
  bad(R"({"family": "onemax", "n": [], "algorithm": "mmahh_oi_ow", "params": {"p": 0.1, "q": 0.2}})");
  bad(R"({"family": "onemax", "n": [8], "algorithm": "mahh", "params": {"preset": "quasilinear"}})");
  bad(R"({"family": "onemax", "n": [8], "algorithm": "mahh", "params": {}})");
  bad(R"({"family": "onemax", "n": [8], "algorithm": "mmahh_oi_ow", "params": {"p": 0.1}})");
  bad(R"({"family": "onemax", "n": [8], "m": [2], "algorithm": "mmahh_oi_ow", "params": {"p": 0.1, "q": 0.2}})");
  bad(R"({"family": "onemax", "n": [8], "algorithm": "mmahh_oi_ow",
          "params": {"p": 0.1, "q": 0.2}, "trials": 0})");
  bad(R"({"family": "onemax", "n": [8], "algorithm": "mmahh_oi_ow",
          "params": {"p": 0.1, "q": 0.2}, "initial": {"uniform": false}})");
  bad(R"({"family": "jump", "n": [8], "algorithm": "mmahh_oi_ow", "params": {"p": 0.1, "q": 0.2}})");
}

TEST_CASE("the printable schema names every accepted key") {
  const std::string schema = sweep_schema();
  for (const char* key : {"family", "algorithm", "preset", "mixing_c", "thm1-case2", "budget"})
    CHECK(schema.find(key) != std::string::npos);
}

TEST_CASE("a small sweep produces one row per cell with consecutive seeds") {
  SweepSpec spec;
  spec.family = Family::onemax;
  spec.ns = {6, 8};
  spec.algo = AlgoChoice::mmahh_oi_ow;
  spec.rule.kind = ParamRule::Kind::pair_explicit;
  spec.rule.p = 0.3;
  spec.rule.q = 0.4;
  spec.trials = 30;
  spec.seed = 9;
  const std::vector<CellResult> rows = run_sweep(spec, 1, nullptr);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].family == "onemax");
  CHECK(rows[0].n == 6);
  CHECK(rows[0].param_label == "-");
  CHECK(rows[0].algo == "mmahh_oi_ow");
  CHECK(rows[0].p == 0.3);
  CHECK(rows[0].q == 0.4);
  CHECK(rows[0].trials == 30);
  CHECK(rows[0].successes == 30);
  CHECK(rows[0].seed == 9);
  CHECK(rows[1].n == 8);
  CHECK(rows[1].seed == 10);
  for (const CellResult& row : rows) {
    CHECK(row.mean_t > 0.0);
    CHECK(row.ci95_lo <= row.mean_t);
    CHECK(row.mean_t <= row.ci95_hi);
  }
}

TEST_CASE("sweep output is byte-identical across reruns and parallelism degrees") {
  SweepSpec spec;
  spec.family = Family::jump;
  spec.ns = {8, 10};
  spec.family_params = {2};
  spec.algo = AlgoChoice::mmahh_oi_am;
  spec.rule.kind = ParamRule::Kind::quasilinear;
  spec.trials = 25;
  spec.budget = 2000000;
  spec.seed = 3;
  const std::string reference = csv_text(run_sweep(spec, 1, nullptr));
  for (unsigned par : {1u, 2u, 8u}) CHECK(csv_text(run_sweep(spec, par, nullptr)) == reference);
}

TEST_CASE("infeasible cells are skipped with a logged reason and stable seeds") {
  SweepSpec spec;
  spec.family = Family::jump;
  spec.ns = {10, 12};
  spec.family_params = {3, 15};  // the second gap width exceeds both sizes
  spec.algo = AlgoChoice::mmahh_oi_ow;
  spec.rule.kind = ParamRule::Kind::pair_explicit;
  spec.rule.p = 0.1;
  spec.rule.q = 0.3;
  spec.trials = 5;
  spec.budget = 1000000;
  spec.seed = 100;
  std::ostringstream log;
  const std::vector<CellResult> rows = run_sweep(spec, 1, &log);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].param_label == "m=3");
  CHECK(rows[0].seed == 100);
  CHECK(rows[1].seed == 101);
  CHECK(log.str().find("skip cell family=jump n=10 m=15:") != std::string::npos);
  CHECK(log.str().find("skip cell family=jump n=12 m=15:") != std::string::npos);
}

TEST_CASE("gap presets on gap-free families skip every cell") {
  SweepSpec spec;
  spec.family = Family::onemax;
  spec.ns = {10, 20};
  spec.algo = AlgoChoice::mmahh_oi_am;
  spec.rule.kind = ParamRule::Kind::case1;
  std::ostringstream log;
  const std::vector<CellResult> rows = run_sweep(spec, 1, &log);
  CHECK(rows.empty());
  CHECK(log.str().find("preset needs the gap width") != std::string::npos);
}

TEST_CASE("any row can be reproduced from its recorded seed and rates") {
  SweepSpec spec;
  spec.family = Family::onemax;
  spec.ns = {7};
  spec.algo = AlgoChoice::mmahh_oi_ow;
  spec.rule.kind = ParamRule::Kind::pair_explicit;
  spec.rule.p = 0.2;
  spec.rule.q = 0.35;
  spec.trials = 5;
  spec.seed = 1234;
  const std::vector<CellResult> rows = run_sweep(spec, 1, nullptr);
  REQUIRE(rows.size() == 1);

  EngineConfig cfg;
  cfg.function = make_onemax(rows[0].n);
  cfg.params = {rows[0].p, rows[0].q, Operator::ow};
  cfg.max_iterations = spec.budget;
  cfg.seed = rows[0].seed;
  const TrialsSummary s = summarize_trials(run_trials(cfg, AlgoKind::markov_pair, 0.0, 5, 1));
  CHECK(s.mean_hitting_time == rows[0].mean_t);
  CHECK(s.sd_hitting_time == rows[0].sd_t);
}

TEST_CASE("CSV text round-trips through the parser, preserving missing rates") {
  SweepSpec spec;
  spec.family = Family::onemax;
  spec.ns = {6};
  spec.algo = AlgoChoice::mahh;
  spec.rule.kind = ParamRule::Kind::mixing_explicit;
  spec.rule.mixing = 0.05;
  spec.trials = 4;
  spec.budget = 50000;
  spec.seed = 5;
  std::vector<CellResult> rows = run_sweep(spec, 1, nullptr);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].p == 0.05);
  CHECK(std::isnan(rows[0].q));

  const std::string csv = csv_text(rows);
  CHECK(csv.find(",nan,") != std::string::npos);
  const std::vector<CellResult> back = cells_from_csv(csv);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].family == rows[i].family);
    CHECK(back[i].n == rows[i].n);
    CHECK(back[i].param_label == rows[i].param_label);
    CHECK(back[i].algo == rows[i].algo);
    CHECK(back[i].p == rows[i].p);
    CHECK(std::isnan(back[i].q) == std::isnan(rows[i].q));
    CHECK(back[i].trials == rows[i].trials);
    CHECK(back[i].successes == rows[i].successes);
    CHECK(back[i].mean_t == rows[i].mean_t);
    CHECK(back[i].sd_t == rows[i].sd_t);
    CHECK(back[i].ci95_lo == rows[i].ci95_lo);
    CHECK(back[i].ci95_hi == rows[i].ci95_hi);
    CHECK(back[i].seed == rows[i].seed);
  }

  CHECK_THROWS_AS(cells_from_csv("not,a,header\n"), std::invalid_argument);
}

TEST_CASE("numbers render in shortest round-trip form") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(std::nan("")) == "nan");
}

// Byte-frozen output of a fixed sweep: any change to the RNG, the engine's
// draw order, the summarizer, or the number formatter shows up here.
TEST_CASE("a fixed cliff sweep reproduces its golden CSV bytes") {
  SweepSpec spec;
  spec.family = Family::cliff;
  spec.ns = {10, 14};
  spec.family_params = {3};
  spec.algo = AlgoChoice::mmahh_oi_ow;
  spec.rule.kind = ParamRule::Kind::pair_explicit;
  spec.rule.p = 0.1;
  spec.rule.q = 0.4;
  spec.trials = 12;
  spec.budget = 2000000;
  spec.seed = 42;
  const std::string golden =
      "family,n,params,algo,p,q,trials,successes,mean_T,sd_T,ci95_lo,ci95_hi,seed\n"
      "cliff,10,d=3,mmahh_oi_ow,0.1,0.4,12,12,629.5833333333334,395.41864082912366,"
      "405.85828685832035,853.3083798083464,42\n"
      "cliff,14,d=3,mmahh_oi_ow,0.1,0.4,12,12,1939.0833333333333,2999.5594966998774,"
      "241.95396584419177,3636.2127008224747,43\n";
  CHECK(csv_text(run_sweep(spec, 4, nullptr)) == golden);
}

TEST_CASE("staircase sweeps label cells with their optima layers") {
  SweepSpec spec;
  spec.family = Family::seqopt;
  spec.ns = {12};
  spec.optima_vectors = {{5, 2}};
  spec.algo = AlgoChoice::mmahh_oi_ow;
  spec.rule.kind = ParamRule::Kind::quasilinear;
  spec.trials = 10;
  spec.budget = 5000000;
  spec.seed = 77;
  const std::vector<CellResult> a = run_sweep(spec, 1, nullptr);
  const std::vector<CellResult> b = run_sweep(spec, 1, nullptr);
  REQUIRE(a.size() == 1);
  CHECK(a[0].param_label == "opt=5;2");
  CHECK(a[0].successes == a[0].trials);
  CHECK(csv_text(a) == csv_text(b));
}
