#pragma once

// Closed-form phase/drift formulas for OneMax-shaped slopes and exact
// finite-chain oracles for arbitrary strict unitation landscapes. The
// oracles (dense linear solves over the layer chain) are an independent
// route against which the closed forms and the simulator are checked.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mmahh/acceptance.hpp"
#include "mmahh/unitation.hpp"

namespace mmahh {

// ---------------------------------------------------------------------------
// Closed forms (log-domain evaluation throughout).
// ---------------------------------------------------------------------------

// Probability that a single only-improving phase on an n-bit OneMax slope,
// started at distance k with switch-away rate p, ends at distance <= h:
//   1 for k <= h, else 1/(1-p) * prod_{j=h+1..k} j / (n p/(1-p) + j).
double pkh_closed_form(std::uint32_t n, double p, std::uint32_t k, std::uint32_t h);

// Mirror image for an only-worsening phase descending the reversed slope
// (start distance n-k, target distance >= n-h): same expression with rate q.
double pkh_ow_symmetric(std::uint32_t n, double q, std::uint32_t k, std::uint32_t h);

// Full-slope phase success probability at rate p = 1/(c n ln n); converges
// to exp(-1/c) as n grows. Requires n >= 2.
double p0n_at(std::uint32_t n, double c);

// Expected layer decrease of a single phase started at distance i on the
// OneMax slope (affine in i; exact including the reflecting boundaries).
double drift_am(std::uint32_t n, double q, double i);  // (2i - n) / (2 + q(n-2))
double drift_oi(std::uint32_t n, double p, double i);  // i / (1 + p(n-1))
// Composition over an AM phase followed by an OI phase.
double drift_am_oi(std::uint32_t n, double p, double q, double i);

// Lower bound on the probability that one AM phase started at distance m
// walks straight to the optimum: (1-q)^(m-2) * m! / n^m. Requires 2 <= m <= n.
double am_phase_success_lower_bound(std::uint32_t n, std::uint32_t m, double q);

// Distance potential |n - m - ones| used in the gap regime (0 at the optimum).
double potential_d(std::uint32_t n, std::uint32_t m, std::uint32_t x_ones);

// One-step potential drift lower bound 2 d(x) / n inside the gap
// (n - m < ones < n).
double gap_drift_lower_bound(std::uint32_t n, std::uint32_t m, std::uint32_t x_ones);

struct BoundReport {
  double scaling_term = 0;    // full asymptotic expression evaluated with constant 1
  double phase_factor = 0;    // (1 + p n)(1/p + 1/q); zero where not applicable
  double attempts_term = 0;   // expected-attempts factor (see note)
  bool precondition_ok = true;
  std::string note;
};

// Expected-runtime scaling for the OI+AM pair on Jump_m:
//   (1 + p n)(1/p + 1/q) * (n + n^m / ((m-1)! (1-q)^g)),
// with gap exponent g defaulting to m-2. Precondition (flagged, not fatal):
// 1 < m < n/2 and (m / (2(n - 2m))) (q + 4/n) >= p.
BoundReport bound_jump_oi_am(std::uint32_t n, std::uint32_t m, double p, double q,
                             std::optional<int> gap_exponent = {});

// Expected-runtime scaling for the OI+OW pair on a SEQOPT_k landscape with
// interior optima d_1..d_k: n^(k+1) ln n / (d_1 ... d_k).
BoundReport bound_seqopt(std::uint32_t n, std::span<const std::uint32_t> interior_optima);

// ---------------------------------------------------------------------------
// Exact oracles (dense linear solves on the layer chain).
// ---------------------------------------------------------------------------

// Law of the end layer of one phase of `op` on f, started at `start_layer`,
// where each iteration first moves (flip + acceptance) and then ends the
// phase with probability `rate`. Returns a distribution over layers 0..n.
std::vector<double> exact_phase_outcome(const UnitationFunction& f, Operator op, double rate,
                                        std::uint32_t start_layer);

// Same, for every start layer at once (factorizes the system once);
// result[k] is the end-layer law from start k.
std::vector<std::vector<double>> exact_phase_outcomes(const UnitationFunction& f, Operator op,
                                                      double rate);

// Expected end layer of one phase (helper over exact_phase_outcome).
double exact_phase_end_expectation(const UnitationFunction& f, Operator op, double rate,
                                   std::uint32_t start_layer);

// Finite absorbing chain of a full run: states are (layer, operator) for the
// Markov pair, or plain layers for the i.i.d. mixture; layer 0 absorbs.
struct ExactChain {
  UnitationFunction f;
  bool mixture = false;
  MarkovParams params;  // pair mode
  double mixing = 0;    // mixture mode

  std::uint32_t state_count() const { return mixture ? f.n + 1 : 2 * (f.n + 1); }
};

ExactChain make_pair_chain(UnitationFunction f, MarkovParams params);
ExactChain make_mixture_chain(UnitationFunction f, double mixing);

// Row-stochastic one-step matrix over all states (absorbing rows included),
// indexed by state_index(). Exposed for invariant checks.
std::vector<std::vector<double>> full_transition_matrix(const ExactChain& chain);
std::uint32_t state_index(const ExactChain& chain, std::uint32_t layer, Operator op);

struct StartSpec {
  bool uniform = true;          // binomial layer mixture from a uniform bit-string
  std::uint32_t layer = 0;      // fixed start layer when uniform == false
  Operator op = Operator::oi;   // initial operator (pair chains)
};

// Expected iterations until layer 0 is first reached. Dense partial-pivot
// solve; chains beyond 4000 states are rejected with guidance to simulate.
double exact_hitting_time(const ExactChain& chain, const StartSpec& start);

}  // namespace mmahh
