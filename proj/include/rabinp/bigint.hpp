#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace rabinp {

using bigint = boost::multiprecision::cpp_int;

// Least non-negative residue. cpp_int's % follows the dividend's sign.
inline bigint mod_floor(const bigint& a, const bigint& m) {
  bigint r = a % m;
  if (r < 0) r += m;
  return r;
}

inline std::size_t bit_length(const bigint& n) {
  return n == 0 ? 0 : boost::multiprecision::msb(n) + 1;
}

inline bigint pow2(std::size_t e) { return bigint(1) << e; }

/// Source of uniform big integers. Seed it for reproducible runs; the
/// default constructor pulls entropy from std::random_device. Each
/// computation should own its own instance (no internal locking).
class RandomSource {
 public:
  RandomSource() : engine_(std::random_device{}()) {}
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t word() { return engine_(); }

  // Uniform in [0, 2^n).
  bigint bits(std::size_t n) {
    bigint r = 0;
    std::size_t filled = 0;
    while (filled < n) {
      std::uint64_t w = engine_();
      std::size_t take = std::min<std::size_t>(64, n - filled);
      if (take < 64) w &= (std::uint64_t(1) << take) - 1;
      r |= bigint(w) << filled;
      filled += take;
    }
    return r;
  }

  // Uniform in [0, bound) by rejection.
  bigint below(const bigint& bound) {
    if (bound <= 0) throw std::invalid_argument("RandomSource: empty range");
    std::size_t n = bit_length(bound);
    for (;;) {
      bigint r = bits(n);
      if (r < bound) return r;
    }
  }

  // Uniform in [lo, hi], inclusive.
  bigint between(const bigint& lo, const bigint& hi) {
    return lo + below(hi - lo + 1);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rabinp
