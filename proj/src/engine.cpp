#include "mmahh/engine.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "mmahh/parallel.hpp"

namespace mmahh {

namespace {

constexpr std::size_t kTraceCapacity = 1u << 20;

void validate_engine_config(const EngineConfig& cfg, AlgoKind kind, double mixing) {
  if (cfg.function.n == 0 ||
      cfg.function.values.size() != static_cast<std::size_t>(cfg.function.n) + 1)
    throw std::invalid_argument("engine: malformed unitation function");
  if (cfg.max_iterations == 0) throw std::invalid_argument("engine: max_iterations must be positive");
  if (!cfg.initial.uniform && cfg.initial.layer > cfg.function.n)
    throw std::invalid_argument("engine: start layer exceeds n");
  if (kind == AlgoKind::markov_pair) {
    validate(cfg.params);
    if (cfg.initial_operator != Operator::oi && cfg.initial_operator != cfg.params.partner)
      throw std::invalid_argument("engine: initial operator is not part of the pair");
  } else {
    if (!(mixing > 0.0 && mixing < 1.0))
      throw std::invalid_argument("engine: mixing probability must lie in (0, 1)");
  }
}

// Strided layer trace with bounded memory: when full, drop every second
// sample and double the stride.
struct TraceSink {
  std::uint32_t stride = 0;
  std::vector<TracePoint>* out = nullptr;

  void maybe_record(std::uint64_t t, std::uint32_t layer) {
    if (stride == 0 || t % stride != 0) return;
    if (out->size() == kTraceCapacity) {
      std::size_t keep = 0;
      for (std::size_t i = 0; i < out->size(); i += 2) (*out)[keep++] = (*out)[i];
      out->resize(keep);
      stride *= 2;
      if (t % stride != 0) return;
    }
    out->push_back({t, layer});
  }
};

RunResult run_common(const EngineConfig& cfg, AlgoKind kind, double mixing) {
  validate_engine_config(cfg, kind, mixing);
  const UnitationFunction& f = cfg.function;
  const std::uint32_t n = f.n;
  const double* values = f.values.data();

  RandomSource rng(cfg.seed, cfg.stream);

  // Starting point. Uniform starts materialize a bit-string in both engine
  // modes so their RNG streams stay aligned.
  std::optional<BitString> x;
  std::uint32_t y;
  if (cfg.initial.uniform) {
    BitString x0 = BitString::uniform(n, rng);
    y = x0.zeros_count();
    if (cfg.faithful_bitstrings) x.emplace(std::move(x0));
  } else {
    y = cfg.initial.layer;
    if (cfg.faithful_bitstrings) x.emplace(BitString::with_ones(n, n - y));
  }

  RunResult out;
  TraceSink trace{cfg.trace_stride, &out.trace};
  trace.maybe_record(0, y);

  if (y == 0) {
    out.hit = true;
    out.hitting_time = 0;
    out.final_layer = 0;
    return out;
  }

  const bool pair_mode = (kind == AlgoKind::markov_pair);
  Operator s = pair_mode ? cfg.initial_operator : Operator::oi;
  bool phase_open = pair_mode;  // mixture mode opens its phase on the first draw
  std::uint64_t phase_start = 0;
  std::uint32_t phase_start_layer = y;

  std::uint64_t t = 0;
  while (t < cfg.max_iterations) {
    if (!pair_mode) {
      const Operator drawn = rng.bernoulli(mixing) ? Operator::am : Operator::oi;
      if (!phase_open || drawn != s) {
        if (phase_open && cfg.record_phases)
          out.phases.push_back({s, phase_start, t - phase_start, phase_start_layer});
        s = drawn;
        phase_open = true;
        phase_start = t;
        phase_start_layer = y;
      }
    }

    // Candidate: flipping one of the y zeros (rank idx) moves toward the
    // optimum, flipping one of the n-y ones (rank idx-y) moves away. The
    // rank-to-position map is a bijection, so the flipped position is still
    // uniform in the faithful mode.
    const std::uint32_t idx = rng.uniform_below(n);
    const bool zero_flip = idx < y;
    const std::uint32_t cand = zero_flip ? y - 1 : y + 1;
    const bool take = accepts(s, values[y], values[cand]);
    if (x && take) {
      x->flip(zero_flip ? x->select_zero(idx) : x->select_one(idx - y));
    }
    if (take) y = cand;
    if (x && x->zeros_count() != y)
      throw std::logic_error("engine: bit-string state diverged from layer state");

    ++out.operator_usage[static_cast<std::size_t>(s)];

    if (pair_mode) {
      const Operator s_next = next_operator(s, cfg.params, rng);
      ++t;
      if (s_next != s) {
        if (cfg.record_phases)
          out.phases.push_back({s, phase_start, t - phase_start, phase_start_layer});
        phase_start = t;
        phase_start_layer = y;
        s = s_next;
      }
    } else {
      ++t;
    }

    trace.maybe_record(t, y);
    if (y == 0) {
      out.hit = true;
      out.hitting_time = t;
      break;
    }
  }

  out.iterations_used = t;
  out.final_layer = y;
  return out;
}

}  // namespace

RunResult run_mmahh(const EngineConfig& cfg) { return run_common(cfg, AlgoKind::markov_pair, 0.0); }

RunResult run_mahh(const EngineConfig& cfg, double mixing) {
  return run_common(cfg, AlgoKind::iid_mixture, mixing);
}

std::vector<RunResult> run_trials(const EngineConfig& cfg, AlgoKind kind, double mixing,
                                  std::uint64_t trials, unsigned parallel) {
  validate_engine_config(cfg, kind, mixing);
  std::vector<RunResult> results(trials);
  parallel_for_index(trials, parallel, [&](std::uint64_t i) {
    EngineConfig local = cfg;  // cheap: the value table is the only payload
    local.stream = i;
    results[i] = run_common(local, kind, mixing);
  });
  return results;
}

TrialsSummary summarize_trials(const std::vector<RunResult>& runs) {
  TrialsSummary s;
  s.trials = runs.size();
  double sum = 0.0;
  for (const RunResult& r : runs) {  // index order: summaries are reproducible
    if (!r.hit) continue;
    ++s.successes;
    sum += static_cast<double>(r.hitting_time);
  }
  if (s.successes == 0) {
    s.mean_hitting_time = s.sd_hitting_time = s.ci95_lo = s.ci95_hi =
        std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  const double k = static_cast<double>(s.successes);
  const double mean = sum / k;
  double ss = 0.0;
  for (const RunResult& r : runs) {
    if (!r.hit) continue;
    const double d = static_cast<double>(r.hitting_time) - mean;
    ss += d * d;
  }
  const double sd = (s.successes > 1) ? std::sqrt(ss / (k - 1.0)) : 0.0;
  const double half = 1.959963984540054 * sd / std::sqrt(k);
  s.mean_hitting_time = mean;
  s.sd_hitting_time = sd;
  s.ci95_lo = mean - half;
  s.ci95_hi = mean + half;
  return s;
}

DriftEstimate measure_phase_drift(const UnitationFunction& f, std::uint32_t start_layer,
                                  Operator op, double rate, std::uint64_t trials,
                                  std::uint64_t seed) {
  if (f.n == 0 || f.values.size() != static_cast<std::size_t>(f.n) + 1)
    throw std::invalid_argument("measure_phase_drift: malformed unitation function");
  if (start_layer > f.n) throw std::invalid_argument("measure_phase_drift: start layer exceeds n");
  if (!(rate > 0.0 && rate < 1.0))
    throw std::invalid_argument("measure_phase_drift: rate must lie in (0, 1)");
  if (trials == 0) throw std::invalid_argument("measure_phase_drift: trials must be positive");

  const std::uint32_t n = f.n;
  const double* values = f.values.data();
  RandomSource rng(seed);
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::uint32_t y = start_layer;
    for (;;) {
      const std::uint32_t idx = rng.uniform_below(n);
      const std::uint32_t cand = (idx < y) ? y - 1 : y + 1;
      if (accepts(op, values[y], values[cand])) y = cand;
      if (rng.bernoulli(rate)) break;  // selector leaves op: phase over
    }
    const double dec = static_cast<double>(start_layer) - static_cast<double>(y);
    sum += dec;
    sum_sq += dec * dec;
  }
  DriftEstimate est;
  est.trials = trials;
  const double kt = static_cast<double>(trials);
  est.mean = sum / kt;
  const double var = (trials > 1) ? std::max(0.0, (sum_sq - kt * est.mean * est.mean) / (kt - 1.0))
                                  : 0.0;
  est.se = std::sqrt(var / kt);
  return est;
}

}  // namespace mmahh
