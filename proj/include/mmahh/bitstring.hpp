#pragma once

// Fixed-length bit-strings over packed 64-bit words with a cached ones
// count, plus the two primitives every heuristic here is built from:
// uniform sampling and single-bit-flip mutation. The search optimum is the
// all-ones string; "distance to optimum" is therefore the zeros count.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mmahh/rng.hpp"

namespace mmahh {

class BitString {
 public:
  explicit BitString(std::uint32_t n) : n_(n), ones_(0), words_(word_count(n), 0) {
    if (n == 0) throw std::invalid_argument("BitString: length must be positive");
  }

  // Uniform sample from {0,1}^n. Fills whole words, masks the tail.
  static BitString uniform(std::uint32_t n, RandomSource& rng) {
    BitString x(n);
    for (std::size_t w = 0; w < x.words_.size(); ++w) x.words_[w] = rng.next_u64();
    x.words_.back() &= tail_mask(n);
    std::uint32_t ones = 0;
    for (std::uint64_t w : x.words_) ones += static_cast<std::uint32_t>(std::popcount(w));
    x.ones_ = ones;
    return x;
  }

  // Deterministic string with `ones` one-bits in the low positions.
  static BitString with_ones(std::uint32_t n, std::uint32_t ones) {
    if (ones > n) throw std::invalid_argument("BitString: ones count exceeds length");
    BitString x(n);
    for (std::uint32_t i = 0; i < ones; ++i) x.words_[i >> 6] |= 1ull << (i & 63);
    x.ones_ = ones;
    return x;
  }

  bool bit(std::uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  void flip(std::uint32_t i) {
    const std::uint64_t mask = 1ull << (i & 63);
    std::uint64_t& w = words_[i >> 6];
    ones_ += (w & mask) ? -1 : 1;
    w ^= mask;
  }

  std::uint32_t size() const { return n_; }
  std::uint32_t ones_count() const { return ones_; }
  std::uint32_t zeros_count() const { return n_ - ones_; }

  // Position of the (rank+1)-th zero / one bit, in increasing position order.
  std::uint32_t select_zero(std::uint32_t rank) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      const std::uint64_t zeros = ~words_[w] & word_mask(w);
      const auto c = static_cast<std::uint32_t>(std::popcount(zeros));
      if (rank < c) return static_cast<std::uint32_t>(w << 6) + nth_set_bit(zeros, rank);
      rank -= c;
    }
    throw std::out_of_range("BitString::select_zero: rank exceeds zeros count");
  }

  std::uint32_t select_one(std::uint32_t rank) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      const auto c = static_cast<std::uint32_t>(std::popcount(words_[w]));
      if (rank < c) return static_cast<std::uint32_t>(w << 6) + nth_set_bit(words_[w], rank);
      rank -= c;
    }
    throw std::out_of_range("BitString::select_one: rank exceeds ones count");
  }

  bool operator==(const BitString&) const = default;

 private:
  static std::size_t word_count(std::uint32_t n) { return (static_cast<std::size_t>(n) + 63) / 64; }

  // Mask of the valid (in-range) bits of the last word.
  static std::uint64_t tail_mask(std::uint32_t n) {
    const std::uint32_t rem = n & 63;
    return rem ? (~0ull >> (64 - rem)) : ~0ull;
  }

  std::uint64_t word_mask(std::size_t w) const {
    return (w + 1 == words_.size()) ? tail_mask(n_) : ~0ull;
  }

  static std::uint32_t nth_set_bit(std::uint64_t word, std::uint32_t rank) {
    for (std::uint32_t i = 0; i < rank; ++i) word &= word - 1;  // clear lowest set bit
    return static_cast<std::uint32_t>(std::countr_zero(word));
  }

  std::uint32_t n_;
  std::uint32_t ones_;
  std::vector<std::uint64_t> words_;
};

inline BitString uniform_bitstring(std::uint32_t n, RandomSource& rng) {
  return BitString::uniform(n, rng);
}

// Returns a copy of x with one uniformly chosen bit flipped.
inline BitString random_one_bit_flip(const BitString& x, RandomSource& rng) {
  BitString y = x;
  y.flip(rng.uniform_below(x.size()));
  return y;
}

// Hamming distance to the all-ones optimum.
inline std::uint32_t distance_to_optimum(const BitString& x) { return x.zeros_count(); }

}  // namespace mmahh
