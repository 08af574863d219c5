#include "mmahh/exact.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mmahh {

namespace {

constexpr std::uint32_t kMaxDenseStates = 4000;

void require_rate(double rate, const char* what) {
  if (!(rate > 0.0 && rate < 1.0))
    throw std::invalid_argument(std::string(what) + " must lie in (0, 1)");
}

// The oracles need a strict direction profile: a plateau would make the
// acceptance-filtered layer chain ambiguous as a landscape model.
void require_strict_profile(const UnitationFunction& f) {
  if (f.n == 0 || f.values.size() != static_cast<std::size_t>(f.n) + 1)
    throw std::invalid_argument("exact: malformed unitation function");
  for (std::uint32_t h = 0; h < f.n; ++h)
    if (f.values[h] == f.values[h + 1])
      throw std::invalid_argument("exact: direction profile has a plateau between layers " +
                                  std::to_string(h + 1) + " and " + std::to_string(h));
}

// Acceptance-filtered one-iteration move law of `op` at layer y.
void op_move(const UnitationFunction& f, Operator op, std::uint32_t y, double& down, double& up) {
  const std::uint32_t n = f.n;
  down = up = 0.0;
  if (y > 0 && accepts(op, f.values[y], f.values[y - 1])) down = static_cast<double>(y) / n;
  if (y < n && accepts(op, f.values[y], f.values[y + 1])) up = static_cast<double>(n - y) / n;
}

Eigen::MatrixXd phase_move_matrix(const UnitationFunction& f, Operator op) {
  const std::uint32_t n = f.n;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (std::uint32_t y = 0; y <= n; ++y) {
    double down = 0, up = 0;
    op_move(f, op, y, down, up);
    if (down > 0) M(y, y - 1) = down;
    if (up > 0) M(y, y + 1) = up;
    M(y, y) = 1.0 - down - up;
  }
  return M;
}

// Binomial(n, 1/2) layer weights of a uniform starting bit-string.
std::vector<double> uniform_layer_weights(std::uint32_t n) {
  std::vector<double> w(n + 1);
  const double lg_n = std::lgamma(static_cast<double>(n) + 1.0);
  double sum = 0.0;
  for (std::uint32_t y = 0; y <= n; ++y) {
    w[y] = std::exp(lg_n - std::lgamma(static_cast<double>(y) + 1.0) -
                    std::lgamma(static_cast<double>(n - y) + 1.0) -
                    static_cast<double>(n) * std::numbers::ln2);
    sum += w[y];
  }
  for (double& v : w) v /= sum;
  return w;
}

}  // namespace

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

double pkh_closed_form(std::uint32_t n, double p, std::uint32_t k, std::uint32_t h) {
  if (n == 0) throw std::invalid_argument("pkh_closed_form: n must be positive");
  require_rate(p, "pkh_closed_form: p");
  if (k > n || h > n) throw std::invalid_argument("pkh_closed_form: layers must lie in [0, n]");
  if (k <= h) return 1.0;
  const double r = static_cast<double>(n) * p / (1.0 - p);
  double log_prob = -std::log1p(-p);
  for (std::uint32_t j = h + 1; j <= k; ++j) log_prob -= std::log1p(r / static_cast<double>(j));
  return std::exp(log_prob);
}

double pkh_ow_symmetric(std::uint32_t n, double q, std::uint32_t k, std::uint32_t h) {
  // Identical expression: descending the reversed slope swaps the roles of
  // zeros and ones but leaves the layer-count combinatorics unchanged.
  return pkh_closed_form(n, q, k, h);
}

double p0n_at(std::uint32_t n, double c) {
  if (n < 2) throw std::invalid_argument("p0n_at: n must be at least 2");
  if (!(c > 0.0)) throw std::invalid_argument("p0n_at: c must be positive");
  const double p = 1.0 / (c * static_cast<double>(n) * std::log(static_cast<double>(n)));
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p0n_at: rate 1/(c n ln n) leaves (0, 1)");
  return pkh_closed_form(n, p, n, 0);
}

double drift_am(std::uint32_t n, double q, double i) {
  if (n < 2) throw std::invalid_argument("drift_am: n must be at least 2");
  require_rate(q, "drift_am: q");
  if (!(i >= 0.0 && i <= static_cast<double>(n)))
    throw std::invalid_argument("drift_am: start layer must lie in [0, n]");
  return (2.0 * i - static_cast<double>(n)) / (2.0 + q * (static_cast<double>(n) - 2.0));
}

double drift_oi(std::uint32_t n, double p, double i) {
  if (n == 0) throw std::invalid_argument("drift_oi: n must be positive");
  require_rate(p, "drift_oi: p");
  if (!(i >= 0.0 && i <= static_cast<double>(n)))
    throw std::invalid_argument("drift_oi: start layer must lie in [0, n]");
  return i / (1.0 + p * (static_cast<double>(n) - 1.0));
}

double drift_am_oi(std::uint32_t n, double p, double q, double i) {
  // Both phase drifts are affine in the start layer, so evaluating the OI
  // drift at the (generally non-integer) expected post-AM layer is exact.
  const double am = drift_am(n, q, i);
  return am + drift_oi(n, p, i - am);
}

double am_phase_success_lower_bound(std::uint32_t n, std::uint32_t m, double q) {
  if (n == 0) throw std::invalid_argument("am_phase_success_lower_bound: n must be positive");
  if (m < 2 || m > n)
    throw std::invalid_argument("am_phase_success_lower_bound: m must lie in [2, n]");
  require_rate(q, "am_phase_success_lower_bound: q");
  return std::exp(static_cast<double>(m - 2) * std::log1p(-q) +
                  std::lgamma(static_cast<double>(m) + 1.0) -
                  static_cast<double>(m) * std::log(static_cast<double>(n)));
}

double potential_d(std::uint32_t n, std::uint32_t m, std::uint32_t x_ones) {
  if (m < 1 || m > n) throw std::invalid_argument("potential_d: m must lie in [1, n]");
  if (x_ones > n) throw std::invalid_argument("potential_d: ones count exceeds n");
  if (x_ones == n) return 0.0;
  const auto target = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(m);
  return static_cast<double>(std::llabs(target - static_cast<std::int64_t>(x_ones)));
}

double gap_drift_lower_bound(std::uint32_t n, std::uint32_t m, std::uint32_t x_ones) {
  if (m < 1 || m > n) throw std::invalid_argument("gap_drift_lower_bound: m must lie in [1, n]");
  if (!(x_ones > n - m && x_ones < n))
    throw std::invalid_argument("gap_drift_lower_bound: ones count must lie in (n-m, n)");
  return 2.0 * potential_d(n, m, x_ones) / static_cast<double>(n);
}

BoundReport bound_jump_oi_am(std::uint32_t n, std::uint32_t m, double p, double q,
                             std::optional<int> gap_exponent) {
  if (n == 0) throw std::invalid_argument("bound_jump_oi_am: n must be positive");
  if (m < 1 || m > n) throw std::invalid_argument("bound_jump_oi_am: m must lie in [1, n]");
  require_rate(p, "bound_jump_oi_am: p");
  require_rate(q, "bound_jump_oi_am: q");
  const int g = gap_exponent.value_or(static_cast<int>(m) - 2);

  BoundReport r;
  const double nd = static_cast<double>(n);
  r.attempts_term = nd + std::exp(static_cast<double>(m) * std::log(nd) -
                                  std::lgamma(static_cast<double>(m)) -
                                  static_cast<double>(g) * std::log1p(-q));
  r.phase_factor = (1.0 + p * nd) * (1.0 / p + 1.0 / q);
  r.scaling_term = r.phase_factor * r.attempts_term;

  const bool size_ok = (m > 1) && (2 * m < n);
  bool rate_ok = false;
  if (size_ok) {
    const double lhs = (static_cast<double>(m) / (2.0 * (nd - 2.0 * m))) * (q + 4.0 / nd);
    rate_ok = lhs >= p;
  }
  r.precondition_ok = size_ok && rate_ok;
  if (!size_ok)
    r.note = "requires 1 < m < n/2";
  else if (!rate_ok)
    r.note = "rate condition (m/(2(n-2m)))(q + 4/n) >= p violated";
  else
    r.note = "gap exponent " + std::to_string(g);
  return r;
}

BoundReport bound_seqopt(std::uint32_t n, std::span<const std::uint32_t> interior_optima) {
  if (n < 2) throw std::invalid_argument("bound_seqopt: n must be at least 2");
  if (interior_optima.size() > static_cast<std::size_t>(n) - 2)
    throw std::invalid_argument("bound_seqopt: at most n-2 interior optima layers allowed");
  std::uint32_t prev = n;
  double log_d_product = 0.0;
  for (std::uint32_t d : interior_optima) {
    if (d == 0 || d >= prev)
      throw std::invalid_argument("bound_seqopt: optima layers must be strictly decreasing in (0, n)");
    log_d_product += std::log(static_cast<double>(d));
    prev = d;
  }
  const auto k = static_cast<double>(interior_optima.size());
  const double log_n = std::log(static_cast<double>(n));

  BoundReport r;
  r.attempts_term = std::exp((k + 1.0) * log_n - log_d_product);
  r.phase_factor = 0.0;
  r.scaling_term = r.attempts_term * log_n;
  r.note = "n^(k+1) ln n / (d_1...d_k), k = " + std::to_string(interior_optima.size());
  return r;
}

// ---------------------------------------------------------------------------
// Exact oracles
// ---------------------------------------------------------------------------

std::vector<std::vector<double>> exact_phase_outcomes(const UnitationFunction& f, Operator op,
                                                      double rate) {
  require_strict_profile(f);
  require_rate(rate, "exact_phase_outcome: rate");
  const std::uint32_t n = f.n;
  const Eigen::MatrixXd M = phase_move_matrix(f, op);

  // End-layer law from start k: rate * e_k^T M (I - (1-rate) M)^{-1}; solved
  // in transposed form with one factorization for all starts.
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n + 1, n + 1) - (1.0 - rate) * M.transpose();
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);

  std::vector<std::vector<double>> laws(n + 1);
  for (std::uint32_t k = 0; k <= n; ++k) {
    const Eigen::VectorXd b = M.row(k).transpose();
    Eigen::VectorXd w = lu.solve(b);
    if (!w.allFinite()) throw std::runtime_error("exact_phase_outcome: singular linear system");
    laws[k].resize(n + 1);
    for (std::uint32_t y = 0; y <= n; ++y) laws[k][y] = rate * w(y);
  }
  return laws;
}

std::vector<double> exact_phase_outcome(const UnitationFunction& f, Operator op, double rate,
                                        std::uint32_t start_layer) {
  require_strict_profile(f);
  require_rate(rate, "exact_phase_outcome: rate");
  if (start_layer > f.n)
    throw std::invalid_argument("exact_phase_outcome: start layer exceeds n");
  const std::uint32_t n = f.n;
  const Eigen::MatrixXd M = phase_move_matrix(f, op);
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n + 1, n + 1) - (1.0 - rate) * M.transpose();
  const Eigen::VectorXd b = M.row(start_layer).transpose();
  Eigen::VectorXd w = A.partialPivLu().solve(b);
  if (!w.allFinite()) throw std::runtime_error("exact_phase_outcome: singular linear system");
  std::vector<double> law(n + 1);
  for (std::uint32_t y = 0; y <= n; ++y) law[y] = rate * w(y);
  return law;
}

double exact_phase_end_expectation(const UnitationFunction& f, Operator op, double rate,
                                   std::uint32_t start_layer) {
  const std::vector<double> law = exact_phase_outcome(f, op, rate, start_layer);
  double e = 0.0;
  for (std::size_t y = 0; y < law.size(); ++y) e += static_cast<double>(y) * law[y];
  return e;
}

ExactChain make_pair_chain(UnitationFunction f, MarkovParams params) {
  require_strict_profile(f);
  validate(params);
  ExactChain c;
  c.f = std::move(f);
  c.mixture = false;
  c.params = params;
  return c;
}

ExactChain make_mixture_chain(UnitationFunction f, double mixing) {
  require_strict_profile(f);
  require_rate(mixing, "make_mixture_chain: mixing");
  ExactChain c;
  c.f = std::move(f);
  c.mixture = true;
  c.mixing = mixing;
  return c;
}

std::uint32_t state_index(const ExactChain& chain, std::uint32_t layer, Operator op) {
  if (layer > chain.f.n) throw std::invalid_argument("state_index: layer exceeds n");
  if (chain.mixture) return layer;
  if (op == Operator::oi) return 2 * layer;
  if (op == chain.params.partner) return 2 * layer + 1;
  throw std::invalid_argument("state_index: operator is not part of the pair");
}

std::vector<std::vector<double>> full_transition_matrix(const ExactChain& chain) {
  const std::uint32_t n = chain.f.n;
  const std::uint32_t states = chain.state_count();
  std::vector<std::vector<double>> P(states, std::vector<double>(states, 0.0));

  if (chain.mixture) {
    for (std::uint32_t y = 0; y <= n; ++y) {
      if (y == 0) {
        P[y][y] = 1.0;  // absorbing
        continue;
      }
      double d_oi = 0, u_oi = 0, d_am = 0, u_am = 0;
      op_move(chain.f, Operator::oi, y, d_oi, u_oi);
      op_move(chain.f, Operator::am, y, d_am, u_am);
      const double down = chain.mixing * d_am + (1.0 - chain.mixing) * d_oi;
      const double up = chain.mixing * u_am + (1.0 - chain.mixing) * u_oi;
      if (down > 0) P[y][y - 1] = down;
      if (up > 0) P[y][y + 1] = up;
      P[y][y] += std::max(0.0, 1.0 - down - up);  // guard the float cancellation
    }
    return P;
  }

  const Operator ops[2] = {Operator::oi, chain.params.partner};
  for (std::uint32_t y = 0; y <= n; ++y) {
    for (int si = 0; si < 2; ++si) {
      const std::uint32_t row = 2 * y + static_cast<std::uint32_t>(si);
      if (y == 0) {
        P[row][row] = 1.0;  // absorbing regardless of operator
        continue;
      }
      const Operator s = ops[si];
      const double out_rate = (s == Operator::oi) ? chain.params.p : chain.params.q;
      double down = 0, up = 0;
      op_move(chain.f, s, y, down, up);
      const double stay = 1.0 - down - up;
      // One iteration: move with the active operator, then one selector step.
      const double to_same = 1.0 - out_rate;
      const std::uint32_t other = static_cast<std::uint32_t>(1 - si);
      auto deposit = [&](std::uint32_t layer, double prob) {
        if (prob <= 0) return;
        P[row][2 * layer + static_cast<std::uint32_t>(si)] += prob * to_same;
        P[row][2 * layer + other] += prob * out_rate;
      };
      deposit(y - 1, down);
      deposit(y + 1, up);
      deposit(y, stay);
    }
  }
  return P;
}

double exact_hitting_time(const ExactChain& chain, const StartSpec& start) {
  const std::uint32_t n = chain.f.n;
  const std::uint32_t states = chain.state_count();
  if (states > kMaxDenseStates)
    throw std::invalid_argument(
        "exact_hitting_time: chain exceeds the dense-solve limit of 4000 states; "
        "use the simulator for instances this large");
  if (!start.uniform && start.layer > n)
    throw std::invalid_argument("exact_hitting_time: start layer exceeds n");
  if (!chain.mixture && start.op != Operator::oi && start.op != chain.params.partner)
    throw std::invalid_argument("exact_hitting_time: start operator is not part of the pair");

  const std::vector<std::vector<double>> P = full_transition_matrix(chain);

  // Transient states are those with layer >= 1.
  std::vector<std::int32_t> transient_of(states, -1);
  std::vector<std::uint32_t> full_of;
  full_of.reserve(states);
  for (std::uint32_t idx = 0; idx < states; ++idx) {
    const std::uint32_t layer = chain.mixture ? idx : idx / 2;
    if (layer == 0) continue;
    transient_of[idx] = static_cast<std::int32_t>(full_of.size());
    full_of.push_back(idx);
  }

  const auto tcount = static_cast<Eigen::Index>(full_of.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(tcount, tcount);
  for (Eigen::Index i = 0; i < tcount; ++i) {
    const std::vector<double>& row = P[full_of[static_cast<std::size_t>(i)]];
    for (Eigen::Index j = 0; j < tcount; ++j)
      A(i, j) = -row[full_of[static_cast<std::size_t>(j)]];
    A(i, i) += 1.0;
  }
  const Eigen::VectorXd t = A.partialPivLu().solve(Eigen::VectorXd::Ones(tcount));
  if (!t.allFinite()) throw std::runtime_error("exact_hitting_time: singular linear system");

  const auto time_from_layer = [&](std::uint32_t layer) -> double {
    if (layer == 0) return 0.0;
    const std::uint32_t idx = state_index(chain, layer, start.op);
    return t(transient_of[idx]);
  };

  if (!start.uniform) return time_from_layer(start.layer);
  const std::vector<double> w = uniform_layer_weights(n);
  double e = 0.0;
  for (std::uint32_t y = 0; y <= n; ++y) e += w[y] * time_from_layer(y);
  return e;
}

}  // namespace mmahh
