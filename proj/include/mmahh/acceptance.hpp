#pragma once

// Move-acceptance operators and the two-state Markov selector that decides
// which operator is active in each iteration: from only-improving it moves
// to the partner with probability p, from the partner back with probability
// q. Expected phase lengths are geometric (1/p resp. 1/q) and the stationary
// share of partner iterations is p/(p+q).

#include <cstdint>
#include <stdexcept>

#include "mmahh/rng.hpp"

namespace mmahh {

enum class Operator : std::uint8_t {
  oi = 0,  // only-improving: accept strictly better candidates
  am = 1,  // any-move: accept every candidate (ties and worsenings included)
  ow = 2,  // only-worsening: accept strictly worse candidates
};

constexpr bool accepts(Operator op, double current, double candidate) noexcept {
  switch (op) {
    case Operator::oi: return candidate > current;
    case Operator::am: return true;
    case Operator::ow: return candidate < current;
  }
  return false;
}

constexpr const char* operator_name(Operator op) noexcept {
  switch (op) {
    case Operator::oi: return "OI";
    case Operator::am: return "AM";
    case Operator::ow: return "OW";
  }
  return "?";
}

struct MarkovParams {
  double p = 0.0;                    // switch probability OI -> partner
  double q = 0.0;                    // switch probability partner -> OI
  Operator partner = Operator::ow;   // AM or OW
};

inline void validate(const MarkovParams& mp) {
  if (!(mp.p > 0.0 && mp.p < 1.0)) throw std::invalid_argument("MarkovParams: p must lie in (0, 1)");
  if (!(mp.q > 0.0 && mp.q < 1.0)) throw std::invalid_argument("MarkovParams: q must lie in (0, 1)");
  if (mp.partner == Operator::oi)
    throw std::invalid_argument("MarkovParams: partner must be AM or OW");
}

// One selector step; consumes exactly one double from rng.
inline Operator next_operator(Operator current, const MarkovParams& mp, RandomSource& rng) {
  if (current == Operator::oi) return rng.bernoulli(mp.p) ? mp.partner : Operator::oi;
  if (current == mp.partner) return rng.bernoulli(mp.q) ? Operator::oi : mp.partner;
  throw std::invalid_argument("next_operator: current operator is not part of the pair");
}

// Long-run fraction of iterations spent in the non-elitist partner state.
inline double stationary_nonelitist_fraction(const MarkovParams& mp) {
  validate(mp);
  return mp.p / (mp.p + mp.q);
}

}  // namespace mmahh
