#pragma once

// Unitation landscapes: fitness depends on a bit-string only through its
// distance to the all-ones optimum, so a function is a table of per-layer
// values (layer y = distance y). The interesting family here is SEQOPT_k —
// landscapes whose fitness is strictly monotone between consecutive local
// optima located at a decreasing sequence of layers
//   n = d_0 > d_1 > ... > d_k > d_{k+1} = 0,
// ending in a strict climb to the unique global optimum at layer 0. The
// classic OneMax / Jump / Cliff / Trap benchmarks are all members.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mmahh/bitstring.hpp"
#include "mmahh/rng.hpp"

namespace mmahh {

struct UnitationFunction {
  std::uint32_t n = 0;
  std::vector<double> values;                // values[y] = fitness at distance y, size n+1
  std::vector<std::uint32_t> optima_layers;  // n = d_0 > d_1 > ... > d_k > d_{k+1} = 0
  std::string label;

  // Number of interior optima layers (the k of SEQOPT_k).
  std::uint32_t interior_count() const {
    return static_cast<std::uint32_t>(optima_layers.size()) - 2;
  }
};

// Direction of the fitness slope between adjacent layers h+1 and h.
enum class LayerDirection : std::uint8_t {
  increasing_toward_optimum,  // values[h] > values[h+1]
  decreasing_toward_optimum,  // values[h] < values[h+1]
};

UnitationFunction make_onemax(std::uint32_t n);            // f = n - y
UnitationFunction make_jump(std::uint32_t n, std::uint32_t m);   // slope, deceptive gap of width m-1, jump
UnitationFunction make_cliff(std::uint32_t n, std::uint32_t d);  // slope, drop of ~d at distance d, slope
UnitationFunction make_trap(std::uint32_t n);              // jump with maximal gap (m = n)

// Random SEQOPT instance with the given interior optima layers: per-block
// strictly monotone values built from increments in [2^-40, 1], with
// values[0] forced strictly maximal. Postcondition: verify_seqopt passes.
UnitationFunction random_seqopt(std::uint32_t n, std::span<const std::uint32_t> interior_optima,
                                RandomSource& rng, std::string label = {});

// Fitness of a concrete bit-string; throws if lengths mismatch.
double evaluate(const UnitationFunction& f, const BitString& x);

// Slope between layers h+1 and h (h in [0, n-1]); throws on a plateau.
LayerDirection layer_direction(const UnitationFunction& f, std::uint32_t h);

struct SeqoptReport {
  bool ok = true;
  // First violated adjacent-layer pair (upper = lower + 1), when !ok and the
  // failure is a direction violation.
  std::uint32_t upper_layer = 0;
  std::uint32_t lower_layer = 0;
  std::string message;
};

// Checks membership in SEQOPT_k for the given interior optima layers:
// strict alternating monotonicity between consecutive optima layers (the
// final block climbing to layer 0) and a unique global maximum at layer 0.
// Throws if the layer sequence itself is invalid (not strictly decreasing
// inside (0, n), or k > n-2).
SeqoptReport verify_seqopt(const UnitationFunction& f, std::span<const std::uint32_t> interior_optima);

// JSON instance format: {"n":, "values":[], "optima_layers":[], "label":}.
// The loader re-validates all invariants and throws on violations.
std::string to_json(const UnitationFunction& f);
UnitationFunction unitation_from_json(const std::string& text);

}  // namespace mmahh
