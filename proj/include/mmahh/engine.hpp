#pragma once

// Trajectory simulator for a (1+1)-style search on unitation landscapes.
// One iteration = one uniformly random one-bit flip, one acceptance decision
// by the active operator, then one selector step. The hitting time T is the
// first t with x_t equal to the all-ones optimum.
//
// Because fitness only depends on the distance-to-optimum layer y, the
// default engine tracks y alone (a flip proposes y-1 with probability y/n,
// else y+1). A bit-string-faithful mode materializes real bit-strings and
// is bit-identical to the fast path under the same seed; tests assert that.

#include <array>
#include <cstdint>
#include <vector>

#include "mmahh/acceptance.hpp"
#include "mmahh/unitation.hpp"

namespace mmahh {

struct InitialState {
  bool uniform = true;      // x_0 uniform on {0,1}^n; otherwise a fixed start layer
  std::uint32_t layer = 0;  // used when uniform == false
};

struct EngineConfig {
  UnitationFunction function;
  MarkovParams params;       // Markov-selected operator pair (OI + partner)
  InitialState initial;
  Operator initial_operator = Operator::oi;
  std::uint64_t max_iterations = 1'000'000'000;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;  // run_trials overrides this with the trial index
  bool record_phases = false;
  std::uint32_t trace_stride = 0;    // record (t, y_t) every stride iterations; 0 = off
  bool faithful_bitstrings = false;  // maintain real bit-strings instead of the layer fast path
};

struct PhaseRecord {
  Operator op;
  std::uint64_t start;        // iteration index at which the phase began
  std::uint64_t length;       // number of iterations using op
  std::uint32_t start_layer;  // distance to optimum when the phase began
};

struct TracePoint {
  std::uint64_t t;
  std::uint32_t layer;
};

struct RunResult {
  bool hit = false;
  std::uint64_t hitting_time = 0;  // first t with y_t = 0 (meaningful when hit)
  std::uint64_t iterations_used = 0;
  std::uint32_t final_layer = 0;
  std::array<std::uint64_t, 3> operator_usage{};  // iterations per Operator enum value
  std::vector<PhaseRecord> phases;                // closed phases, oldest first
  std::vector<TracePoint> trace;                  // strided (t, y_t) samples, starts at t=0
};

// Markov-selected pair (initial operator from the config, OI by default).
RunResult run_mmahh(const EngineConfig& cfg);

// Independent per-iteration operator draw: AM with probability `mixing`,
// OI otherwise. cfg.params and cfg.initial_operator are ignored.
RunResult run_mahh(const EngineConfig& cfg, double mixing);

enum class AlgoKind : std::uint8_t { markov_pair, iid_mixture };

struct TrialsSummary {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;  // runs that hit the optimum within budget
  // Statistics over successful runs only; NaN when there are none.
  double mean_hitting_time = 0;
  double sd_hitting_time = 0;
  double ci95_lo = 0;
  double ci95_hi = 0;
};

// Runs `trials` independent trials; trial i uses stream (cfg.seed, i). The
// result vector is indexed by trial, so the outcome is identical at every
// parallelism degree. `mixing` is only read for iid_mixture.
std::vector<RunResult> run_trials(const EngineConfig& cfg, AlgoKind kind, double mixing,
                                  std::uint64_t trials, unsigned parallel);

TrialsSummary summarize_trials(const std::vector<RunResult>& runs);

struct DriftEstimate {
  double mean = 0;  // mean layer decrease start - end over simulated phases
  double se = 0;    // standard error of that mean
  std::uint64_t trials = 0;
};

// Simulates single phases of `op` from a fixed start layer: iterate
// move-then-maybe-switch with switch probability `rate` (phase length >= 1)
// and record start_layer - end_layer.
DriftEstimate measure_phase_drift(const UnitationFunction& f, std::uint32_t start_layer,
                                  Operator op, double rate, std::uint64_t trials,
                                  std::uint64_t seed);

}  // namespace mmahh
