#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mmahh/bitstring.hpp"
#include "mmahh/rng.hpp"
#include "mmahh/unitation.hpp"

using namespace mmahh;

namespace {
// Evaluate by ones count (layouts never matter for unitation functions).
double value_at_ones(const UnitationFunction& f, std::uint32_t ones) {
  return evaluate(f, BitString::with_ones(f.n, ones));
}
}  // namespace

TEST_CASE("onemax values, optima, and slope") {
  const UnitationFunction f = make_onemax(5);
  CHECK(value_at_ones(f, 5) == 5);
  CHECK(value_at_ones(f, 2) == 2);
  CHECK(value_at_ones(f, 0) == 0);
  CHECK(f.optima_layers == std::vector<std::uint32_t>{5, 0});
  CHECK(f.interior_count() == 0);

  const UnitationFunction g = make_onemax(3);
  CHECK(g.values == std::vector<double>{3, 2, 1, 0});  // y = 3..0 reads 0,1,2,3
  for (std::uint32_t h = 0; h < 3; ++h)
    CHECK(layer_direction(g, h) == LayerDirection::increasing_toward_optimum);
  CHECK_THROWS_AS(make_onemax(0), std::invalid_argument);
}

TEST_CASE("jump slope, gap, and optimum values") {
  const UnitationFunction f = make_jump(5, 2);
  CHECK(value_at_ones(f, 3) == 5);
  CHECK(value_at_ones(f, 4) == 1);
  CHECK(value_at_ones(f, 5) == 7);
  CHECK(f.optima_layers == std::vector<std::uint32_t>{5, 2, 1, 0});
  CHECK(layer_direction(f, 1) == LayerDirection::decreasing_toward_optimum);

  CHECK(make_jump(6, 1).optima_layers == std::vector<std::uint32_t>{6, 0});
  CHECK(make_jump(6, 6).optima_layers == std::vector<std::uint32_t>{6, 1, 0});
  CHECK_THROWS_AS(make_jump(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_jump(5, 6), std::invalid_argument);
}

TEST_CASE("cliff drop and recovery values") {
  const UnitationFunction f = make_cliff(6, 2);
  CHECK(value_at_ones(f, 4) == 4.0);
  CHECK(value_at_ones(f, 5) == 3.5);
  CHECK(value_at_ones(f, 6) == 4.5);
  CHECK(f.optima_layers == std::vector<std::uint32_t>{6, 2, 1, 0});
  // Slope direction from the value table: 4.5 > 3.5 climbing into the
  // optimum, 3.5 < 4.0 across the drop.
  CHECK(layer_direction(f, 0) == LayerDirection::increasing_toward_optimum);
  CHECK(layer_direction(f, 1) == LayerDirection::decreasing_toward_optimum);

  CHECK(make_cliff(6, 1).optima_layers == std::vector<std::uint32_t>{6, 0});
  CHECK_THROWS_AS(make_cliff(6, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_cliff(6, 6), std::invalid_argument);
}

TEST_CASE("trap equals the full-width jump") {
  const UnitationFunction f = make_trap(4);
  CHECK(value_at_ones(f, 0) == 4);
  CHECK(value_at_ones(f, 3) == 1);
  CHECK(value_at_ones(f, 4) == 8);
  CHECK(f.values == make_jump(4, 4).values);
  CHECK(f.optima_layers == std::vector<std::uint32_t>{4, 1, 0});
  CHECK_THROWS_AS(make_trap(1), std::invalid_argument);
}

TEST_CASE("evaluate depends only on the ones count and checks lengths") {
  const UnitationFunction f = make_jump(5, 2);
  RandomSource rng(7, 0);
  for (int i = 0; i < 50; ++i) {
    const BitString x = BitString::uniform(5, rng);
    CHECK(evaluate(f, x) == value_at_ones(f, x.ones_count()));
  }
  CHECK_THROWS_AS(evaluate(f, BitString::with_ones(6, 2)), std::invalid_argument);
  CHECK(evaluate(make_onemax(5), BitString(5)) == 0);
}

TEST_CASE("layer_direction rejects plateaus") {
  UnitationFunction f = make_onemax(4);
  f.values[2] = f.values[3];
  CHECK_THROWS_AS(layer_direction(f, 2), std::invalid_argument);
}

TEST_CASE("membership verification for the classic benchmarks") {
  const std::array<std::uint32_t, 2> d31{3, 1};
  CHECK(verify_seqopt(make_jump(8, 3), d31).ok);
  CHECK(verify_seqopt(make_onemax(8), {}).ok);
  const std::array<std::uint32_t, 2> d21{2, 1};
  CHECK(verify_seqopt(make_cliff(9, 2), d21).ok);
  const std::array<std::uint32_t, 1> d1{1};
  CHECK(verify_seqopt(make_trap(7), d1).ok);

  // Wrong first optimum layer: the block between layers 4 and 3 breaks first.
  const std::array<std::uint32_t, 2> d41{4, 1};
  const SeqoptReport r = verify_seqopt(make_jump(8, 3), d41);
  CHECK_FALSE(r.ok);
  CHECK(r.upper_layer == 4);
  CHECK(r.lower_layer == 3);
}

TEST_CASE("membership verification rejects malformed layer sequences") {
  const UnitationFunction f = make_onemax(8);
  const std::array<std::uint32_t, 2> rising{1, 4};
  CHECK_THROWS_AS(verify_seqopt(f, rising), std::invalid_argument);
  const std::array<std::uint32_t, 2> repeated{4, 4};
  CHECK_THROWS_AS(verify_seqopt(f, repeated), std::invalid_argument);
  const std::array<std::uint32_t, 1> zero{0};
  CHECK_THROWS_AS(verify_seqopt(f, zero), std::invalid_argument);
  const std::array<std::uint32_t, 1> top{8};
  CHECK_THROWS_AS(verify_seqopt(f, top), std::invalid_argument);
  const std::array<std::uint32_t, 7> toomany{7, 6, 5, 4, 3, 2, 1};
  CHECK_THROWS_AS(verify_seqopt(f, toomany), std::invalid_argument);
}

TEST_CASE("random instances satisfy their declared membership") {
  RandomSource rng(99, 0);
  const std::array<std::uint32_t, 2> d73{7, 3};
  for (int i = 0; i < 1000; ++i) {
    const UnitationFunction f = random_seqopt(30, d73, rng);
    const SeqoptReport r = verify_seqopt(f, d73);
    REQUIRE(r.ok);
    REQUIRE(f.optima_layers == std::vector<std::uint32_t>{30, 7, 3, 0});
  }
}

TEST_CASE("random instance shapes: pure climb at k=0, valley at k=1") {
  RandomSource rng(5, 0);
  const UnitationFunction climb = random_seqopt(10, {}, rng);
  for (std::uint32_t h = 0; h < 10; ++h)
    CHECK(layer_direction(climb, h) == LayerDirection::increasing_toward_optimum);

  const std::array<std::uint32_t, 1> d3{3};
  const UnitationFunction valley = random_seqopt(10, d3, rng);
  for (std::uint32_t h = 3; h < 10; ++h)  // descends from layer 10 down to layer 3
    CHECK(layer_direction(valley, h) == LayerDirection::decreasing_toward_optimum);
  for (std::uint32_t h = 0; h < 3; ++h)  // climbs from layer 3 into the optimum
    CHECK(layer_direction(valley, h) == LayerDirection::increasing_toward_optimum);
  const double top = valley.values[0];
  for (std::uint32_t y = 1; y <= 10; ++y) CHECK(top > valley.values[y]);
}

TEST_CASE("random instance generation is deterministic and stream-aligned") {
  RandomSource a(123, 4), b(123, 4);
  const std::array<std::uint32_t, 2> d{6, 2};
  const UnitationFunction fa = random_seqopt(20, d, a);
  const UnitationFunction fb = random_seqopt(20, d, b);
  CHECK(fa.values == fb.values);
  // Both sources consumed the same number of draws.
  CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("json round trip preserves instances and the loader re-validates") {
  RandomSource rng(17, 0);
  const std::array<std::uint32_t, 2> d{5, 2};
  const UnitationFunction f = random_seqopt(12, d, rng, "sample");
  const UnitationFunction g = unitation_from_json(to_json(f));
  CHECK(g.n == f.n);
  CHECK(g.values == f.values);
  CHECK(g.optima_layers == f.optima_layers);
  CHECK(g.label == f.label);

  // Tampering with the value table breaks the declared monotonicity.
  UnitationFunction broken = f;
  std::swap(broken.values[1], broken.values[2]);
  CHECK_THROWS_AS(unitation_from_json(to_json(broken)), std::invalid_argument);
  CHECK_THROWS_AS(unitation_from_json("{/"), std::invalid_argument);
  CHECK_THROWS_AS(unitation_from_json("{\"n\": 3}"), std::invalid_argument);
}
