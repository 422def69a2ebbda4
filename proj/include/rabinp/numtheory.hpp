#pragma once

#include "rabinp/bigint.hpp"
#include "rabinp/errors.hpp"

#include <array>
#include <cstdint>
#include <tuple>
#include <vector>

namespace rabinp {

/// Counts the expensive operations a computation performed. Counters only
/// go up while a computation runs; call reset() to start over. Give each
/// concurrent computation its own instance.
struct OpCounters {
  std::uint64_t modexp_count = 0;
  std::uint64_t crt_count = 0;
  std::uint64_t modinv_count = 0;

  void reset() { modexp_count = crt_count = modinv_count = 0; }
};

/// base^exponent mod modulus, counted as one modular exponentiation.
inline bigint modexp(const bigint& base, const bigint& exponent,
                     const bigint& modulus, OpCounters& counters) {
  if (modulus < 2) throw DomainError("modexp: modulus must be >= 2");
  if (exponent < 0) throw DomainError("modexp: exponent must be >= 0");
  counters.modexp_count += 1;
  return boost::multiprecision::powm(mod_floor(base, modulus), exponent,
                                     modulus);
}

struct EgcdResult {
  bigint g;  // gcd(a, b) > 0
  bigint x;  // a*x + b*y == g
  bigint y;
};

/// Extended Euclid. Accepts any signs; a and b must not both be zero.
inline EgcdResult egcd(const bigint& a, const bigint& b) {
  if (a == 0 && b == 0) throw DomainError("egcd: gcd(0, 0) is undefined");
  bigint r0 = a, r1 = b;
  bigint x0 = 1, x1 = 0;
  bigint y0 = 0, y1 = 1;
  while (r1 != 0) {
    bigint q = r0 / r1;  // truncated division keeps the identity exact
    bigint r2 = r0 - q * r1;
    r0 = r1; r1 = r2;
    bigint x2 = x0 - q * x1;
    x0 = x1; x1 = x2;
    bigint y2 = y0 - q * y1;
    y0 = y1; y1 = y2;
  }
  if (r0 < 0) { r0 = -r0; x0 = -x0; y0 = -y0; }
  return {r0, x0, y0};
}

/// a^-1 mod modulus via extended Euclid. Deliberately not a Fermat
/// exponentiation: inversion must not disturb modexp_count.
inline bigint modinv(const bigint& a, const bigint& modulus,
                     OpCounters& counters) {
  if (modulus < 2) throw DomainError("modinv: modulus must be >= 2");
  bigint r = mod_floor(a, modulus);
  EgcdResult e = egcd(r, modulus);
  if (e.g != 1)
    throw NotInvertibleError("modinv: argument shares a factor with the modulus",
                             e.g);
  counters.modinv_count += 1;
  return mod_floor(e.x, modulus);
}

namespace detail {

// Odd primes below 2048, for cheap candidate screening.
inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<std::uint32_t> out;
    std::array<bool, 2048> sieve{};
    for (std::uint32_t i = 3; i < 2048; i += 2) {
      if (sieve[i]) continue;
      out.push_back(i);
      for (std::uint32_t j = i * i; j < 2048; j += 2 * i) sieve[j] = true;
    }
    return out;
  }();
  return primes;
}

inline bool miller_rabin_witness(const bigint& n, const bigint& a,
                                 const bigint& d, std::size_t s) {
  bigint x = boost::multiprecision::powm(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (std::size_t i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return false;
  }
  return true;  // a witnesses compositeness
}

}  // namespace detail

/// Miller-Rabin with `rounds` random witnesses after trial division.
/// Composites slip through with probability <= 4^-rounds; primes always
/// pass. Exact (no randomness consumed) below 2048^2.
inline bool is_probable_prime(const bigint& n, unsigned rounds,
                              RandomSource& rng) {
  if (n < 2) return false;
  if (n == 2) return true;
  if (n % 2 == 0) return false;
  for (std::uint32_t p : detail::small_primes()) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < bigint(2048) * 2048) return true;  // fully screened above

  bigint d = n - 1;
  std::size_t s = 0;
  while (d % 2 == 0) { d >>= 1; ++s; }
  for (unsigned i = 0; i < rounds; ++i) {
    bigint a = rng.between(2, n - 2);
    if (detail::miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

inline constexpr unsigned kDefaultPrimalityRounds = 40;

/// A probable prime p with 2^(bits-1) <= p < 2^bits and p = 3 (mod 4).
/// Samples a candidate = 3 (mod 4), scans upward in steps of 4, resamples
/// when the scan leaves the range; gives up after 64*bits candidates.
inline bigint gen_blum_prime(unsigned bits, RandomSource& rng,
                             unsigned rounds = kDefaultPrimalityRounds) {
  if (bits < 3) throw DomainError("gen_blum_prime: need bits >= 3");
  const bigint lo = pow2(bits - 1);
  const bigint hi = pow2(bits);
  std::uint64_t budget = std::uint64_t(64) * bits;
  bigint candidate = (lo + rng.bits(bits - 1)) | 3;
  while (budget-- > 0) {
    if (candidate >= hi) {
      candidate = (lo + rng.bits(bits - 1)) | 3;
      continue;
    }
    if (is_probable_prime(candidate, rounds, rng)) return candidate;
    candidate += 4;
  }
  throw GenerationFailure("gen_blum_prime: attempt budget exhausted");
}

/// Square root of a modulo a Blum prime, via the single exponentiation
/// a^((p+1)/4) mod p. Verifies r^2 = a (mod p) and rejects non-residues.
inline bigint sqrt_mod_blum_prime(const bigint& a, const bigint& p,
                                  OpCounters& counters) {
  if (p < 3 || p % 4 != 3)
    throw DomainError("sqrt_mod_blum_prime: p must be a prime = 3 (mod 4)");
  bigint w = mod_floor(a, p);
  bigint r = modexp(w, (p + 1) / 4, p, counters);
  if ((r * r) % p != w)
    throw NonResidueError("sqrt_mod_blum_prime: input is not a quadratic residue");
  return r;
}

/// floor(sqrt(n)) for n >= 0.
inline bigint isqrt(const bigint& n) {
  if (n < 0) throw DomainError("isqrt: negative input");
  return boost::multiprecision::sqrt(n);
}

}  // namespace rabinp
