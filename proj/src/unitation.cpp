#include "mmahh/unitation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace mmahh {

namespace {

// Smallest allowed gap between adjacent layer values in random instances.
constexpr double kMinIncrement = 0x1.0p-40;

void check_function_shape(const UnitationFunction& f) {
  if (f.n == 0) throw std::invalid_argument("unitation: n must be positive");
  if (f.values.size() != static_cast<std::size_t>(f.n) + 1)
    throw std::invalid_argument("unitation: values must have n+1 entries");
  for (double v : f.values)
    if (!std::isfinite(v)) throw std::invalid_argument("unitation: values must be finite");
}

// Validates an interior optima sequence and returns the full layer sequence
// n = d_0 > d_1 > ... > d_k > d_{k+1} = 0.
std::vector<std::uint32_t> full_layer_sequence(std::uint32_t n,
                                               std::span<const std::uint32_t> interior) {
  if (n < 2) throw std::invalid_argument("seqopt: n must be at least 2");
  if (interior.size() > static_cast<std::size_t>(n) - 2)
    throw std::invalid_argument("seqopt: at most n-2 interior optima layers allowed");
  std::vector<std::uint32_t> seq;
  seq.reserve(interior.size() + 2);
  seq.push_back(n);
  for (std::uint32_t d : interior) {
    if (d == 0 || d >= n) throw std::invalid_argument("seqopt: interior layers must lie in (0, n)");
    if (d >= seq.back())
      throw std::invalid_argument("seqopt: optima layers must be strictly decreasing");
    seq.push_back(d);
  }
  seq.push_back(0);
  return seq;
}

}  // namespace

UnitationFunction make_onemax(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("make_onemax: n must be positive");
  UnitationFunction f;
  f.n = n;
  f.values.resize(n + 1);
  for (std::uint32_t y = 0; y <= n; ++y) f.values[y] = static_cast<double>(n - y);
  f.optima_layers = {n, 0};
  f.label = "onemax-" + std::to_string(n);
  return f;
}

UnitationFunction make_jump(std::uint32_t n, std::uint32_t m) {
  if (n == 0) throw std::invalid_argument("make_jump: n must be positive");
  if (m < 1 || m > n) throw std::invalid_argument("make_jump: m must lie in [1, n]");
  UnitationFunction f;
  f.n = n;
  f.values.resize(n + 1);
  for (std::uint32_t y = 0; y <= n; ++y) {
    const std::uint32_t ones = n - y;
    if (ones <= n - m || ones == n)
      f.values[y] = static_cast<double>(m + ones);
    else
      f.values[y] = static_cast<double>(y);  // deceptive gap: fitness = distance
  }
  // Local optima: gap entrance at layer m and gap floor at layer 1. The
  // degenerate widths collapse the sequence (m=1: strictly monotone; m=n:
  // the slope itself is the deceptive stretch).
  if (m == 1)
    f.optima_layers = {n, 0};
  else if (m == n)
    f.optima_layers = {n, 1, 0};
  else
    f.optima_layers = {n, m, 1, 0};
  f.label = "jump-" + std::to_string(n) + "-" + std::to_string(m);
  return f;
}

UnitationFunction make_cliff(std::uint32_t n, std::uint32_t d) {
  if (n < 2) throw std::invalid_argument("make_cliff: n must be at least 2");
  if (d < 1 || d > n - 1) throw std::invalid_argument("make_cliff: d must lie in [1, n-1]");
  UnitationFunction f;
  f.n = n;
  f.values.resize(n + 1);
  for (std::uint32_t y = 0; y <= n; ++y) {
    const std::uint32_t ones = n - y;
    if (ones <= n - d)
      f.values[y] = static_cast<double>(ones);
    else
      f.values[y] = static_cast<double>(ones) - static_cast<double>(d) + 0.5;
  }
  if (d == 1)
    f.optima_layers = {n, 0};  // the half-step drop never reverses the slope
  else
    f.optima_layers = {n, d, d - 1, 0};
  f.label = "cliff-" + std::to_string(n) + "-" + std::to_string(d);
  return f;
}

UnitationFunction make_trap(std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("make_trap: n must be at least 2");
  UnitationFunction f = make_jump(n, n);
  f.label = "trap-" + std::to_string(n);
  return f;
}

UnitationFunction random_seqopt(std::uint32_t n, std::span<const std::uint32_t> interior_optima,
                                RandomSource& rng, std::string label) {
  const std::vector<std::uint32_t> seq = full_layer_sequence(n, interior_optima);
  const std::uint32_t k = static_cast<std::uint32_t>(seq.size()) - 2;

  const auto increment = [&rng]() {
    return kMinIncrement + (1.0 - kMinIncrement) * rng.next_double();
  };

  UnitationFunction f;
  f.n = n;
  f.values.assign(n + 1, 0.0);
  f.optima_layers = seq;
  // Walk from the outermost layer toward the optimum, block by block, with
  // strictly monotone random increments in the block's direction.
  for (std::uint32_t block = 0; block <= k; ++block) {
    const std::uint32_t hi = seq[block];
    const std::uint32_t lo = seq[block + 1];
    const bool increasing = ((k - block) % 2 == 0);
    for (std::uint32_t upper = hi; upper > lo; --upper) {
      const std::uint32_t y = upper - 1;
      if (y == 0) break;  // layer 0 is pinned below
      f.values[y] = f.values[upper] + (increasing ? increment() : -increment());
    }
  }
  // Pin the global optimum strictly above everything else; this keeps the
  // final block increasing since values[1] is included in the maximum.
  double best = f.values[1];
  for (std::uint32_t y = 2; y <= n; ++y) best = std::max(best, f.values[y]);
  f.values[0] = best + increment();

  f.label = label.empty() ? "seqopt-" + std::to_string(n) : std::move(label);

  const SeqoptReport report = verify_seqopt(f, interior_optima);
  if (!report.ok)
    throw std::logic_error("random_seqopt: generated instance failed validation: " + report.message);
  return f;
}

double evaluate(const UnitationFunction& f, const BitString& x) {
  check_function_shape(f);
  if (x.size() != f.n) throw std::invalid_argument("evaluate: bit-string length mismatch");
  return f.values[distance_to_optimum(x)];
}

LayerDirection layer_direction(const UnitationFunction& f, std::uint32_t h) {
  check_function_shape(f);
  if (h >= f.n) throw std::invalid_argument("layer_direction: h must lie in [0, n-1]");
  if (f.values[h] > f.values[h + 1]) return LayerDirection::increasing_toward_optimum;
  if (f.values[h] < f.values[h + 1]) return LayerDirection::decreasing_toward_optimum;
  throw std::invalid_argument("layer_direction: plateau between layers " + std::to_string(h + 1) +
                              " and " + std::to_string(h));
}

SeqoptReport verify_seqopt(const UnitationFunction& f,
                           std::span<const std::uint32_t> interior_optima) {
  check_function_shape(f);
  const std::vector<std::uint32_t> seq = full_layer_sequence(f.n, interior_optima);
  const std::uint32_t k = static_cast<std::uint32_t>(seq.size()) - 2;

  for (std::uint32_t block = 0; block <= k; ++block) {
    const std::uint32_t hi = seq[block];
    const std::uint32_t lo = seq[block + 1];
    const bool increasing = ((k - block) % 2 == 0);
    for (std::uint32_t upper = hi; upper > lo; --upper) {
      const std::uint32_t lower = upper - 1;
      const bool ok = increasing ? f.values[lower] > f.values[upper]
                                 : f.values[lower] < f.values[upper];
      if (!ok) {
        SeqoptReport r;
        r.ok = false;
        r.upper_layer = upper;
        r.lower_layer = lower;
        r.message = "values not strictly " + std::string(increasing ? "increasing" : "decreasing") +
                    " toward the optimum between layers " + std::to_string(upper) + " and " +
                    std::to_string(lower);
        return r;
      }
    }
  }
  for (std::uint32_t y = 1; y <= f.n; ++y) {
    if (!(f.values[0] > f.values[y])) {
      SeqoptReport r;
      r.ok = false;
      r.upper_layer = y;
      r.lower_layer = 0;
      r.message = "layer 0 is not the unique global maximum (matched or beaten at layer " +
                  std::to_string(y) + ")";
      return r;
    }
  }
  return {};
}

std::string to_json(const UnitationFunction& f) {
  check_function_shape(f);
  nlohmann::json j;
  j["n"] = f.n;
  j["values"] = f.values;
  j["optima_layers"] = f.optima_layers;
  j["label"] = f.label;
  return j.dump();
}

UnitationFunction unitation_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("unitation_from_json: parse error: ") + e.what());
  }
  UnitationFunction f;
  try {
    f.n = j.at("n").get<std::uint32_t>();
    f.values = j.at("values").get<std::vector<double>>();
    f.optima_layers = j.at("optima_layers").get<std::vector<std::uint32_t>>();
    f.label = j.value("label", std::string{});
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("unitation_from_json: bad fields: ") + e.what());
  }
  check_function_shape(f);
  if (f.optima_layers.size() < 2 || f.optima_layers.front() != f.n || f.optima_layers.back() != 0)
    throw std::invalid_argument("unitation_from_json: optima_layers must run from n down to 0");
  if (f.n == 1) {
    // Too small for the layered-optima definition; require a strict single slope.
    if (f.optima_layers != std::vector<std::uint32_t>{1, 0} || !(f.values[0] > f.values[1]))
      throw std::invalid_argument("unitation_from_json: n=1 instance must strictly increase to layer 0");
    return f;
  }
  const std::span<const std::uint32_t> interior{f.optima_layers.data() + 1,
                                                f.optima_layers.size() - 2};
  const SeqoptReport report = verify_seqopt(f, interior);
  if (!report.ok) throw std::invalid_argument("unitation_from_json: " + report.message);
  return f;
}

}  // namespace mmahh
