#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mmahh/bitstring.hpp"
#include "mmahh/rng.hpp"

using namespace mmahh;

TEST_CASE("random source reproduces per (seed, stream) and streams are distinct") {
  RandomSource a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  bool all_equal = true, c_differs = false, d_differs = false;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t va = a.next_u64();
    all_equal = all_equal && va == b.next_u64();
    c_differs = c_differs || va != c.next_u64();
    d_differs = d_differs || va != d.next_u64();
  }
  CHECK(all_equal);
  CHECK(c_differs);
  CHECK(d_differs);
}

TEST_CASE("doubles live in [0,1) and bernoulli tracks its probability") {
  RandomSource rng(1, 0);
  double lo = 1, hi = 0;
  for (int i = 0; i < 100'000; ++i) {
    const double x = rng.next_double();
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);

  RandomSource coin(2, 0);
  const int trials = 100'000;
  int hits = 0;
  for (int i = 0; i < trials; ++i) hits += coin.bernoulli(0.3) ? 1 : 0;
  const double se = std::sqrt(0.3 * 0.7 / trials);
  CHECK(std::abs(hits / static_cast<double>(trials) - 0.3) <= 3 * se);
}

TEST_CASE("uniform_below stays in range and covers it evenly") {
  RandomSource rng(3, 0);
  std::array<int, 7> counts{};
  const int trials = 140'000;
  for (int i = 0; i < trials; ++i) {
    const std::uint32_t v = rng.uniform_below(7);
    REQUIRE(v < 7);
    ++counts[v];
  }
  const double expected = trials / 7.0;
  const double se = std::sqrt(trials * (1.0 / 7) * (6.0 / 7));
  for (int v = 0; v < 7; ++v) CHECK(std::abs(counts[v] - expected) <= 4 * se);
}

TEST_CASE("bit string construction, flips, and cached counts") {
  CHECK_THROWS_AS(BitString(0), std::invalid_argument);
  CHECK_THROWS_AS(BitString::with_ones(5, 6), std::invalid_argument);

  BitString x(70);  // multi-word
  CHECK(x.size() == 70);
  CHECK(x.ones_count() == 0);
  CHECK(x.zeros_count() == 70);
  x.flip(0);
  x.flip(69);
  CHECK(x.ones_count() == 2);
  CHECK(x.bit(0));
  CHECK(x.bit(69));
  CHECK_FALSE(x.bit(1));
  x.flip(69);
  CHECK(x.ones_count() == 1);
  CHECK(distance_to_optimum(x) == 69);

  const BitString y = BitString::with_ones(10, 4);
  CHECK(y.ones_count() == 4);
  for (std::uint32_t i = 0; i < 4; ++i) CHECK(y.bit(i));
  for (std::uint32_t i = 4; i < 10; ++i) CHECK_FALSE(y.bit(i));
  CHECK(y == BitString::with_ones(10, 4));
  CHECK_FALSE(y == BitString::with_ones(10, 5));
}

TEST_CASE("select walks set and clear bits in position order") {
  RandomSource rng(9, 0);
  const BitString x = BitString::uniform(133, rng);
  std::vector<std::uint32_t> ones, zeros;
  for (std::uint32_t i = 0; i < 133; ++i) (x.bit(i) ? ones : zeros).push_back(i);
  REQUIRE(x.ones_count() == ones.size());
  REQUIRE(x.zeros_count() == zeros.size());
  for (std::uint32_t r = 0; r < ones.size(); ++r) CHECK(x.select_one(r) == ones[r]);
  for (std::uint32_t r = 0; r < zeros.size(); ++r) CHECK(x.select_zero(r) == zeros[r]);
  CHECK_THROWS_AS(x.select_one(static_cast<std::uint32_t>(ones.size())), std::out_of_range);
  CHECK_THROWS_AS(x.select_zero(static_cast<std::uint32_t>(zeros.size())), std::out_of_range);
}

TEST_CASE("uniform strings have binomial ones counts") {
  RandomSource rng(11, 0);
  const int trials = 2000;
  double sum = 0;
  for (int i = 0; i < trials; ++i) sum += BitString::uniform(64, rng).ones_count();
  const double mean = sum / trials;
  const double se = std::sqrt(64 * 0.25 / trials);
  CHECK(std::abs(mean - 32.0) <= 3 * se);
}

TEST_CASE("one-bit flip changes exactly one position, uniformly") {
  RandomSource rng(13, 0);
  const BitString x = BitString::with_ones(8, 3);
  std::array<int, 8> flips{};
  const int trials = 80'000;
  for (int t = 0; t < trials; ++t) {
    const BitString y = random_one_bit_flip(x, rng);
    int diff = 0;
    std::uint32_t pos = 0;
    for (std::uint32_t i = 0; i < 8; ++i)
      if (x.bit(i) != y.bit(i)) {
        ++diff;
        pos = i;
      }
    REQUIRE(diff == 1);
    ++flips[pos];
  }
  const double expected = trials / 8.0;
  const double se = std::sqrt(trials * (1.0 / 8) * (7.0 / 8));
  for (int v = 0; v < 8; ++v) CHECK(std::abs(flips[v] - expected) <= 4 * se);
}
