#include "mmahh/checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "mmahh/acceptance.hpp"
#include "mmahh/engine.hpp"
#include "mmahh/exact.hpp"
#include "mmahh/rng.hpp"
#include "mmahh/unitation.hpp"

namespace mmahh {
namespace {

template <class... Args>
std::string text(const char* fmt, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return std::string(buf);
}

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0 ? 0.0 : std::abs(a - b) / scale;
}

// Expected end layer of a phase-outcome law.
double law_expectation(const std::vector<double>& law) {
  double e = 0;
  for (std::size_t y = 0; y < law.size(); ++y) e += static_cast<double>(y) * law[y];
  return e;
}

// One engine-style iteration on the layer walk: uniform flip, acceptance by op.
void layer_step(const UnitationFunction& f, Operator op, std::uint32_t& y, RandomSource& rng) {
  const std::uint32_t idx = rng.uniform_below(f.n);
  const std::uint32_t cand = idx < y ? y - 1 : y + 1;
  if (accepts(op, f.values[y], f.values[cand])) y = cand;
}

// Exact single-iteration expectation of d(x) - d(x') inside the jump gap.
double one_step_potential_drift(const UnitationFunction& f, std::uint32_t m, std::uint32_t y,
                                Operator op) {
  const std::uint32_t n = f.n;
  const auto pot = [&](std::uint32_t layer) { return potential_d(n, m, n - layer); };
  const double down = static_cast<double>(y) / n;
  double drift = 0;
  if (y > 0) {
    const std::uint32_t cand = y - 1;
    drift += down * (pot(y) - pot(accepts(op, f.values[y], f.values[cand]) ? cand : y));
  }
  if (y < n) {
    const std::uint32_t cand = y + 1;
    drift += (1.0 - down) * (pot(y) - pot(accepts(op, f.values[y], f.values[cand]) ? cand : y));
  }
  return drift;
}

}  // namespace

CheckResult check_pkh_vs_phase_oracle() {
  constexpr double kTol = 1e-9;
  double worst = 0;
  std::size_t comparisons = 0;
  for (std::uint32_t n : {5u, 10u, 20u}) {
    const UnitationFunction f = make_onemax(n);
    const double quasip = 1.0 / (n * std::log(static_cast<double>(n)));
    for (double p : {0.5, 0.1, quasip}) {
      const auto laws = exact_phase_outcomes(f, Operator::oi, p);
      for (std::uint32_t k = 0; k <= n; ++k) {
        double cdf = 0;
        for (std::uint32_t h = 0; h <= n; ++h) {
          cdf += laws[k][h];
          worst = std::max(worst, std::abs(pkh_closed_form(n, p, k, h) - cdf));
          ++comparisons;
        }
      }
    }
  }
  return {"pkh-vs-phase-oracle", worst <= kTol,
          text("max |closed form - linear-solve CDF| = %.3e over %zu (n,p,k,h) combinations "
               "(tolerance %.0e)",
               worst, comparisons, kTol)};
}

CheckResult check_pkh_recurrence() {
  // One-step decomposition from start layer k > h: the first iteration moves
  // down with probability k/n (else stays), then the phase ends with
  // probability p at the new layer or continues from it.
  constexpr double kTol = 1e-12;
  RandomSource rng(0x70cab1e5u, 0);
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint32_t n = 2 + rng.uniform_below(59);
    const std::uint32_t k = 1 + rng.uniform_below(n);
    const std::uint32_t h = rng.uniform_below(k);
    const double p = 0.05 + 0.85 * rng.next_double();
    const double lhs = pkh_closed_form(n, p, k, h);
    const double down = static_cast<double>(k) / n;
    const double reach_now = (k - 1 == h) ? 1.0 : 0.0;
    const double rhs = down * (p * reach_now + (1 - p) * pkh_closed_form(n, p, k - 1, h)) +
                       (1 - down) * (1 - p) * lhs;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return {"pkh-one-step-recurrence", worst <= kTol,
          text("max recurrence residual = %.3e over 1000 random (n,p,k,h) tuples (tolerance %.0e)",
               worst, kTol)};
}

CheckResult check_pkh_gamma_form() {
  // prod_{j=h+1..k} j/(r+j) = Gamma(k+1) Gamma(r+h+1) / (Gamma(h+1) Gamma(r+k+1)).
  constexpr double kTol = 1e-9;
  RandomSource rng(0x9a77a5u, 0);
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint32_t n = 2 + rng.uniform_below(199);
    const std::uint32_t k = 1 + rng.uniform_below(n);
    const std::uint32_t h = rng.uniform_below(k);
    const double p = 0.01 + 0.89 * rng.next_double();
    const double r = n * p / (1 - p);
    const double direct = pkh_closed_form(n, p, k, h);
    const double via_gamma = std::exp(-std::log1p(-p) + std::lgamma(k + 1.0) -
                                      std::lgamma(h + 1.0) + std::lgamma(r + h + 1) -
                                      std::lgamma(r + k + 1));
    worst = std::max(worst, relative_gap(direct, via_gamma));
  }
  return {"pkh-gamma-form", worst <= kTol,
          text("max relative gap product vs Gamma-ratio form = %.3e over 1000 tuples "
               "(tolerance %.0e)",
               worst, kTol)};
}

CheckResult check_pkh_ow_mirror() {
  // An only-worsening phase descends the reversed slope: started at layer
  // n-k with switch rate q it ends at layer >= n-h with the same probability
  // the mirrored only-improving phase reaches <= h from k.
  constexpr double kTol = 1e-9;
  double worst = 0;
  std::size_t comparisons = 0;
  for (std::uint32_t n : {5u, 12u}) {
    const UnitationFunction f = make_onemax(n);
    for (double q : {0.3, 0.05}) {
      const auto laws = exact_phase_outcomes(f, Operator::ow, q);
      for (std::uint32_t k = 0; k <= n; ++k) {
        for (std::uint32_t h = 0; h <= n; ++h) {
          double tail = 0;
          for (std::uint32_t y = n - h; y <= n; ++y) tail += laws[n - k][y];
          worst = std::max(worst, std::abs(pkh_ow_symmetric(n, q, k, h) - tail));
          ++comparisons;
        }
      }
    }
  }
  return {"pkh-ow-mirror", worst <= kTol,
          text("max |mirrored closed form - OW phase oracle| = %.3e over %zu combinations "
               "(tolerance %.0e)",
               worst, comparisons, kTol)};
}

CheckResult check_drift_exact_grid() {
  constexpr double kTol = 1e-9;
  const std::array<double, 3> rates{0.05, 0.3, 0.7};
  double worst = 0;
  std::size_t comparisons = 0;
  for (std::uint32_t n = 2; n <= 50; ++n) {
    const UnitationFunction f = make_onemax(n);
    std::array<std::vector<std::vector<double>>, 3> law_am, law_oi;
    std::array<std::vector<double>, 3> end_oi;  // end_oi[b][j]: expected end from j at rate b
    for (std::size_t a = 0; a < rates.size(); ++a) {
      law_am[a] = exact_phase_outcomes(f, Operator::am, rates[a]);
      law_oi[a] = exact_phase_outcomes(f, Operator::oi, rates[a]);
      end_oi[a].resize(n + 1);
      for (std::uint32_t j = 0; j <= n; ++j) end_oi[a][j] = law_expectation(law_oi[a][j]);
    }
    for (std::size_t a = 0; a < rates.size(); ++a) {
      for (std::uint32_t i = 0; i <= n; ++i) {
        const double i_d = static_cast<double>(i);
        worst = std::max(
            worst, std::abs(drift_am(n, rates[a], i_d) - (i_d - law_expectation(law_am[a][i]))));
        worst = std::max(worst, std::abs(drift_oi(n, rates[a], i_d) - (i_d - end_oi[a][i])));
        comparisons += 2;
        // Composed phase pair: AM at rate q = rates[a], then OI at rate p.
        for (std::size_t b = 0; b < rates.size(); ++b) {
          double end_pair = 0;
          for (std::uint32_t j = 0; j <= n; ++j) end_pair += law_am[a][i][j] * end_oi[b][j];
          worst = std::max(
              worst, std::abs(drift_am_oi(n, rates[b], rates[a], i_d) - (i_d - end_pair)));
          ++comparisons;
        }
      }
    }
  }
  return {"drift-exact-grid", worst <= kTol,
          text("max |drift formula - phase-kernel expectation| = %.3e over %zu combinations, "
               "n <= 50 (tolerance %.0e)",
               worst, comparisons, kTol)};
}

CheckResult check_drift_mc_spots() {
  struct Spot {
    char kind;  // 'a' = AM phase, 'o' = OI phase, '2' = AM-then-OI pair
    std::uint32_t n;
    std::uint32_t i;
    double p;  // OI switch rate (unused for 'a')
    double q;  // partner switch rate (unused for 'o')
  };
  const std::array<Spot, 10> spots{{{'a', 2, 2, 0, 0.5},
                                    {'a', 10, 7, 0, 0.3},
                                    {'a', 30, 5, 0, 0.05},
                                    {'o', 2, 1, 0.5, 0},
                                    {'o', 10, 10, 0.1, 0},
                                    {'o', 30, 17, 0.7, 0},
                                    {'o', 50, 25, 0.05, 0},
                                    {'2', 10, 8, 0.1, 0.3},
                                    {'2', 20, 15, 0.05, 0.5},
                                    {'2', 40, 20, 0.1, 0.1}}};
  constexpr std::uint64_t kTrials = 1'000'000;
  double worst_z = 0;
  bool all_pass = true;
  for (std::size_t s = 0; s < spots.size(); ++s) {
    const Spot& sp = spots[s];
    const UnitationFunction f = make_onemax(sp.n);
    const std::uint64_t seed = 0xd21f7ull + s;
    double mean = 0, se = 0, closed = 0;
    if (sp.kind == 'a') {
      const DriftEstimate est = measure_phase_drift(f, sp.i, Operator::am, sp.q, kTrials, seed);
      mean = est.mean;
      se = est.se;
      closed = drift_am(sp.n, sp.q, sp.i);
    } else if (sp.kind == 'o') {
      const DriftEstimate est = measure_phase_drift(f, sp.i, Operator::oi, sp.p, kTrials, seed);
      mean = est.mean;
      se = est.se;
      closed = drift_oi(sp.n, sp.p, sp.i);
    } else {
      RandomSource rng(seed, 0);
      double sum = 0, sumsq = 0;
      for (std::uint64_t t = 0; t < kTrials; ++t) {
        std::uint32_t y = sp.i;
        do layer_step(f, Operator::am, y, rng);
        while (!rng.bernoulli(sp.q));
        do layer_step(f, Operator::oi, y, rng);
        while (!rng.bernoulli(sp.p));
        const double dec = static_cast<double>(sp.i) - y;
        sum += dec;
        sumsq += dec * dec;
      }
      mean = sum / kTrials;
      const double var = std::max(0.0, (sumsq - kTrials * mean * mean) / (kTrials - 1.0));
      se = std::sqrt(var / kTrials);
      closed = drift_am_oi(sp.n, sp.p, sp.q, sp.i);
    }
    const double z = se > 0 ? std::abs(mean - closed) / se : (mean == closed ? 0.0 : 1e18);
    worst_z = std::max(worst_z, z);
    all_pass = all_pass && z <= 3.0;
  }
  return {"drift-mc-spots", all_pass,
          text("max |simulated - formula| over 10 spot configurations = %.2f standard errors "
               "(1e6 phases each, band 3 SE)",
               worst_z)};
}

CheckResult check_minimality() {
  // The full-slope success probability is the floor: p_k^h >= p_n^0 for every
  // start/target pair, non-increasing in k and non-decreasing in h.
  constexpr double kSlack = 1e-12;
  std::uint64_t violations = 0;
  std::uint64_t checked = 0;
  for (std::uint32_t n = 2; n <= 50; ++n) {
    const double quasip = 1.0 / (n * std::log(static_cast<double>(n)));
    for (double p : {0.5, 0.1, quasip}) {
      std::vector<std::vector<double>> table(n + 1, std::vector<double>(n + 1));
      for (std::uint32_t k = 0; k <= n; ++k)
        for (std::uint32_t h = 0; h <= n; ++h) table[k][h] = pkh_closed_form(n, p, k, h);
      const double floor = table[n][0];
      for (std::uint32_t k = 0; k <= n; ++k) {
        for (std::uint32_t h = 0; h <= n; ++h) {
          if (table[k][h] < floor - kSlack) ++violations;
          if (k < n && table[k + 1][h] > table[k][h] + kSlack) ++violations;
          if (h < n && table[k][h + 1] < table[k][h] - kSlack) ++violations;
          checked += 3;
        }
      }
    }
  }
  return {"minimality-monotonicity", violations == 0,
          text("%llu violations over %llu ordering comparisons, n <= 50, three rates per n "
               "(slack %.0e)",
               static_cast<unsigned long long>(violations),
               static_cast<unsigned long long>(checked), kSlack)};
}

CheckResult check_limit_sequence() {
  const std::array<std::uint32_t, 4> ns{1000, 10000, 100000, 1000000};
  const double target = std::exp(-1.0);
  bool pass = true;
  std::string detail = "|success probability - exp(-1)| at rate 1/(n ln n):";
  double prev = 1e18;
  for (std::uint32_t n : ns) {
    const double dev = std::abs(p0n_at(n, 1.0) - target);
    const double cap = 2.0 / std::log(static_cast<double>(n));
    pass = pass && dev < prev && dev <= cap;
    detail += text(" n=%u: %.3e (cap %.3e)", n, dev, cap);
    prev = dev;
  }
  detail += "; required strictly decreasing and within 2/ln n";
  return {"limit-deviation-shrinks", pass, detail};
}

CheckResult check_phase_geometric() {
  // Phase lengths are geometric: mean 1/rate, theoretical standard error
  // sqrt((1-rate)/rate^2/N) for the N-phase average.
  constexpr std::uint64_t kPhases = 100'000;
  const auto mean_phase_length = [](Operator start, const MarkovParams& mp, std::uint64_t seed) {
    RandomSource rng(seed, 0);
    double sum = 0;
    for (std::uint64_t i = 0; i < kPhases; ++i) {
      Operator s = start;
      std::uint64_t len = 0;
      for (;;) {
        ++len;
        const Operator nxt = next_operator(s, mp, rng);
        if (nxt != s) break;
      }
      sum += static_cast<double>(len);
    }
    return sum / static_cast<double>(kPhases);
  };
  const MarkovParams slow{0.02, 0.37, Operator::ow};
  const MarkovParams fast{0.3, 0.05, Operator::ow};
  const double mean_oi = mean_phase_length(Operator::oi, slow, 0x6e001ull);
  const double mean_ow = mean_phase_length(Operator::ow, fast, 0x6e002ull);
  const double se_oi = std::sqrt((1 - slow.p) / (slow.p * slow.p) / kPhases);
  const double se_ow = std::sqrt((1 - fast.q) / (fast.q * fast.q) / kPhases);
  const double dev_oi = std::abs(mean_oi - 1 / slow.p);
  const double dev_ow = std::abs(mean_ow - 1 / fast.q);
  const bool pass = dev_oi <= 3 * se_oi && dev_ow <= 3 * se_ow;
  return {"phase-length-geometric", pass,
          text("OI mean %.3f vs 1/p = %.0f (dev %.2f SE), partner mean %.3f vs 1/q = %.0f "
               "(dev %.2f SE); 1e5 phases each, band 3 SE",
               mean_oi, 1 / slow.p, dev_oi / se_oi, mean_ow, 1 / fast.q, dev_ow / se_ow)};
}

CheckResult check_stationary_fraction() {
  const MarkovParams mp{0.01, 0.5, Operator::am};
  constexpr std::uint64_t kIters = 1'000'000;
  RandomSource rng(0x57a7ull, 0);
  Operator s = Operator::oi;
  std::uint64_t partner_iters = 0;
  for (std::uint64_t t = 0; t < kIters; ++t) {
    if (s == mp.partner) ++partner_iters;
    s = next_operator(s, mp, rng);
  }
  const double frac = static_cast<double>(partner_iters) / static_cast<double>(kIters);
  const double pi = stationary_nonelitist_fraction(mp);
  // Markov-chain-corrected standard error: the i.i.d. binomial variance is
  // inflated by (2 - p - q)/(p + q) for this two-state chain.
  const double se = std::sqrt(pi * (1 - pi) / kIters * (2 - mp.p - mp.q) / (mp.p + mp.q));
  const double dev = std::abs(frac - pi);
  return {"stationary-partner-fraction", dev <= 3 * se,
          text("partner fraction %.6f vs p/(p+q) = %.6f over 1e6 iterations "
               "(dev %.2f chain-corrected SE, band 3 SE)",
               frac, pi, dev / se)};
}

CheckResult check_independence() {
  // Selector draws never look at the search point, so phase lengths are
  // independent of phase start layers; the empirical correlation over many
  // logged phases must sit in the 3/sqrt(N) null band.
  constexpr std::size_t kWanted = 100'000;
  EngineConfig cfg;
  cfg.function = make_onemax(30);
  cfg.params = {0.3, 0.3, Operator::ow};
  cfg.initial.uniform = true;
  cfg.record_phases = true;
  cfg.max_iterations = 100'000;
  cfg.seed = 0xfeedull;
  std::vector<double> starts, lengths;
  starts.reserve(kWanted);
  lengths.reserve(kWanted);
  for (std::uint64_t run = 0; starts.size() < kWanted && run < 200'000; ++run) {
    cfg.stream = run;
    const RunResult res = run_mmahh(cfg);
    for (const PhaseRecord& ph : res.phases) {
      if (ph.op != Operator::oi) continue;
      starts.push_back(static_cast<double>(ph.start_layer));
      lengths.push_back(static_cast<double>(ph.length));
      if (starts.size() == kWanted) break;
    }
  }
  if (starts.size() < kWanted)
    return {"phase-start-independence", false,
            text("collected only %zu of %zu phases", starts.size(), kWanted)};
  const double n = static_cast<double>(kWanted);
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < kWanted; ++i) {
    sx += starts[i];
    sy += lengths[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < kWanted; ++i) {
    sxx += (starts[i] - mx) * (starts[i] - mx);
    syy += (lengths[i] - my) * (lengths[i] - my);
    sxy += (starts[i] - mx) * (lengths[i] - my);
  }
  const double r = sxy / std::sqrt(sxx * syy);
  const double band = 3.0 / std::sqrt(n);
  return {"phase-start-independence", std::abs(r) <= band,
          text("corr(start layer, phase length) = %.5f over %zu logged phases (null band %.5f)",
               r, kWanted, band)};
}

CheckResult check_mean_phases_to_optimum() {
  // Every improving phase reaches the optimum with probability at least the
  // full-slope value, so the mean number of improving phases consumed by a
  // run is at most its reciprocal (checked with a 3-SE sampling band).
  constexpr std::uint64_t kTrials = 2000;
  bool pass = true;
  std::string detail;
  for (std::uint32_t n : {50u, 100u, 200u}) {
    const double rate = 1.0 / (n * std::log(static_cast<double>(n)));
    EngineConfig cfg;
    cfg.function = make_onemax(n);
    cfg.params = {rate, rate, Operator::ow};
    cfg.initial.uniform = false;
    cfg.initial.layer = n;
    cfg.record_phases = true;
    cfg.max_iterations = 100'000'000;
    cfg.seed = 0xace0ull + n;
    double sum = 0, sumsq = 0;
    for (std::uint64_t trial = 0; trial < kTrials; ++trial) {
      cfg.stream = trial;
      const RunResult res = run_mmahh(cfg);
      if (!res.hit) {
        return {"mean-phases-to-optimum", false,
                text("run at n=%u stream %llu missed the optimum within 1e8 iterations", n,
                     static_cast<unsigned long long>(trial))};
      }
      std::uint64_t improving = 0;
      for (const PhaseRecord& ph : res.phases)
        if (ph.op == Operator::oi) ++improving;
      // Phases strictly alternate, so the open phase at the hit is improving
      // exactly when the last closed one is not (or none closed yet).
      const bool open_is_oi = res.phases.empty() || res.phases.back().op != Operator::oi;
      if (open_is_oi) ++improving;
      const double x = static_cast<double>(improving);
      sum += x;
      sumsq += x * x;
    }
    const double mean = sum / kTrials;
    const double var = std::max(0.0, (sumsq - kTrials * mean * mean) / (kTrials - 1.0));
    const double se = std::sqrt(var / kTrials);
    const double cap = 1.0 / p0n_at(n, 1.0);
    pass = pass && mean <= cap + 3 * se;
    detail += text("%sn=%u: mean %.3f vs cap %.3f (SE %.3f)", detail.empty() ? "" : "; ", n,
                   mean, cap, se);
  }
  detail += "; 2000 runs each from the far layer, band 3 SE above the cap";
  return {"mean-phases-to-optimum", pass, detail};
}

CheckResult check_am_success_bound() {
  // Event: one any-move phase started on the local-optimum ring reaches the
  // optimum, or the single iteration right after the phase does. Its
  // probability is bounded below by (1-q)^(m-2) m!/n^m.
  constexpr std::uint64_t kTrials = 1'000'000;
  constexpr std::uint32_t n = 10;
  constexpr double q = 0.5;
  bool pass = true;
  std::string detail;
  for (std::uint32_t m : {2u, 3u}) {
    const UnitationFunction f = make_jump(n, m);
    RandomSource rng(0xa5b0ull + m, 0);
    std::uint64_t successes = 0;
    for (std::uint64_t trial = 0; trial < kTrials; ++trial) {
      std::uint32_t y = m;
      for (;;) {
        layer_step(f, Operator::am, y, rng);
        if (y == 0) {
          ++successes;
          break;
        }
        if (rng.bernoulli(q)) {  // phase over; the next iteration is improving
          layer_step(f, Operator::oi, y, rng);
          if (y == 0) ++successes;
          break;
        }
      }
    }
    const double rate = static_cast<double>(successes) / static_cast<double>(kTrials);
    const double bound = am_phase_success_lower_bound(n, m, q);
    const double se = std::sqrt(rate * (1 - rate) / static_cast<double>(kTrials));
    pass = pass && rate >= bound - 3 * se;
    detail += text("%sm=%u: observed %.5f vs bound %.5f (SE %.1e)", detail.empty() ? "" : "; ", m,
                   rate, bound, se);
  }
  detail += "; 1e6 phases each, observed must reach bound - 3 SE";
  return {"am-phase-success-bound", pass, detail};
}

CheckResult check_bound_shapes() {
  std::vector<std::string> failures;
  std::size_t checked = 0;
  const auto expect = [&](bool cond, const char* what) {
    ++checked;
    if (!cond) failures.push_back(what);
  };

  expect(std::abs(am_phase_success_lower_bound(10, 2, 0.5) - 0.02) <= 1e-12,
         "phase success bound value at (n,m,q)=(10,2,1/2)");
  expect(std::abs(am_phase_success_lower_bound(10, 3, 0.5) - 0.003) <= 1e-12,
         "phase success bound value at (10,3,1/2)");

  expect(potential_d(12, 4, 12) == 0 && potential_d(12, 4, 8) == 0 && potential_d(12, 4, 10) == 2 &&
             potential_d(12, 4, 3) == 5,
         "distance potential samples at n=12, m=4");
  expect(std::abs(gap_drift_lower_bound(12, 4, 9) - 1.0 / 6) <= 1e-15 &&
             std::abs(gap_drift_lower_bound(12, 4, 10) - 1.0 / 3) <= 1e-15 &&
             std::abs(gap_drift_lower_bound(12, 4, 11) - 0.5) <= 1e-15,
         "gap drift bound values 2d/n at n=12, m=4");

  for (const auto& [n, m] : std::array<std::pair<std::uint32_t, std::uint32_t>, 2>{
           {{12u, 4u}, {16u, 3u}}}) {
    const UnitationFunction f = make_jump(n, m);
    for (std::uint32_t ones = n - m + 1; ones < n; ++ones) {
      for (Operator op : {Operator::oi, Operator::am}) {
        const double drift = one_step_potential_drift(f, m, n - ones, op);
        expect(drift >= gap_drift_lower_bound(n, m, ones) - 1e-12,
               "exact one-step potential drift inside the gap reaches 2d/n");
      }
    }
  }

  const BoundReport b = bound_jump_oi_am(30, 3, 0.025, 0.5);
  expect(b.precondition_ok, "switch rates p = mq/(2n), q = 1/2 satisfy the preconditions");
  expect(relative_gap(b.phase_factor, 73.5) <= 1e-12 &&
             relative_gap(b.attempts_term, 27030.0) <= 1e-12 &&
             relative_gap(b.scaling_term, 1986705.0) <= 1e-12,
         "jump bound frozen terms at n=30, m=3");
  expect(!bound_jump_oi_am(20, 10, 0.01, 0.5).precondition_ok, "oversized gap is flagged");
  expect(!bound_jump_oi_am(30, 3, 0.05, 0.5).precondition_ok,
         "too-aggressive improving-side switch rate is flagged");
  expect(relative_gap(bound_jump_oi_am(30, 3, 0.025, 0.5, 2).attempts_term, 54030.0) <= 1e-12,
         "gap-exponent override doubles the attempt term at q = 1/2");
  const double ratio = bound_jump_oi_am(200, 3, 1.5 / 400, 0.5).scaling_term /
                       bound_jump_oi_am(100, 3, 1.5 / 200, 0.5).scaling_term;
  expect(ratio > 15.5 && ratio < 16.5, "doubling n scales the jump bound by about 2^4");

  const std::array<std::uint32_t, 2> o31{3, 1};
  expect(relative_gap(bound_seqopt(30, o31).scaling_term, 27000.0 * std::log(30.0) / 3.0) <= 1e-12,
         "two-optima bound n^3 ln n / (d1 d2) at n=30");
  const std::array<std::uint32_t, 2> o87{8, 7};
  expect(relative_gap(bound_seqopt(48, o87).scaling_term,
                      110592.0 * std::log(48.0) / 56.0) <= 1e-12,
         "two-optima bound at n=48");
  const std::array<std::uint32_t, 2> deep{16, 15}, shallow{4, 3};
  expect(bound_seqopt(48, deep).scaling_term < bound_seqopt(48, shallow).scaling_term,
         "deeper interior optima shrink the bound");
  expect(relative_gap(bound_seqopt(30, {}).scaling_term, 30.0 * std::log(30.0)) <= 1e-12,
         "slope-only bound n ln n");

  std::string detail;
  if (failures.empty()) {
    detail = text("all %zu shape and fixture assertions hold", checked);
  } else {
    detail = text("%zu of %zu assertions failed:", failures.size(), checked);
    for (const std::string& f : failures) detail += " [" + f + "]";
  }
  return {"bound-shapes", failures.empty(), detail};
}

std::vector<std::string> validate_suite_names() {
  return {"pkh", "drifts", "phases", "minimality", "limit", "bounds"};
}

std::vector<CheckResult> validate_suite(const std::string& suite) {
  if (suite == "pkh")
    return {check_pkh_vs_phase_oracle(), check_pkh_recurrence(), check_pkh_gamma_form(),
            check_pkh_ow_mirror()};
  if (suite == "drifts") return {check_drift_exact_grid(), check_drift_mc_spots()};
  if (suite == "phases")
    return {check_phase_geometric(), check_stationary_fraction(), check_independence(),
            check_mean_phases_to_optimum()};
  if (suite == "minimality") return {check_minimality()};
  if (suite == "limit") return {check_limit_sequence()};
  if (suite == "bounds") return {check_am_success_bound(), check_bound_shapes()};
  throw std::invalid_argument("unknown validation suite '" + suite +
                              "' (expected pkh, drifts, phases, minimality, limit, or bounds)");
}

}  // namespace mmahh
