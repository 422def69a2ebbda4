#pragma once

#include "rabinp/bigint.hpp"
#include "rabinp/errors.hpp"
#include "rabinp/numtheory.hpp"

#include <utility>

namespace rabinp {

/// Modulus N = p^2 q plus the security parameter k (primes are drawn from
/// (2^k, 2^(k+1)), so bit_length(N) lands in [3k, 3k+3]).
struct PublicKey {
  bigint N;
  unsigned k = 0;
};

/// Decryption needs only the single Blum prime p.
struct PrivateKey {
  bigint p;
  unsigned k = 0;
};

struct Plaintext {
  bigint m;
  bool lower_enforced = false;  // provenance of the bound check
};

struct Ciphertext {
  bigint c;
};

inline constexpr unsigned kMinSecurityParam = 8;

/// Distinct Blum primes p, q in (2^k, 2^(k+1)); N = p^2 q. The open range
/// keeps 2^(2k) < p^2, so every message below 2^(2k-1) sits below p^2 / 2.
/// For real use k >= 512; the floor of 8 only rules out degenerate sizes.
inline std::pair<PublicKey, PrivateKey> keygen(unsigned k, RandomSource& rng) {
  if (k < kMinSecurityParam)
    throw DomainError("keygen: k must be >= " +
                      std::to_string(kMinSecurityParam));
  bigint p = gen_blum_prime(k + 1, rng);
  bigint q = gen_blum_prime(k + 1, rng);
  while (q == p) q = gen_blum_prime(k + 1, rng);
  bigint N = p * p * q;
  return {PublicKey{N, k}, PrivateKey{p, k}};
}

/// Smallest value every acceptable message must exceed: the Coppersmith
/// floor 2^ceil(3k/2), raised to floor(sqrt(N)) when that is larger. Below
/// sqrt(N) the ciphertext m^2 mod N is m^2 itself and an integer square
/// root recovers m without the key.
inline bigint message_lower_bound(const PublicKey& pub) {
  bigint floor_k = pow2((3 * std::size_t(pub.k) + 1) / 2);
  bigint floor_n = isqrt(pub.N);
  return floor_k > floor_n ? floor_k : floor_n;
}

inline bigint message_upper_bound(const PublicKey& pub) {
  if (pub.k == 0) throw DomainError("message bounds need k >= 1");
  return pow2(2 * std::size_t(pub.k) - 1);
}

/// Checks m against the message bounds and gcd(m, N) = 1. The lower bound
/// is skippable (enforce_lower = false) for toy and exhaustive tests; the
/// upper bound never is, since decryption is only unique below p^2 / 2.
inline Plaintext validate_message(const bigint& m, const PublicKey& pub,
                                  bool enforce_lower = true) {
  const bigint upper = message_upper_bound(pub);
  if (m >= upper)
    throw BoundError("message >= 2^(2k-1) = " + message_upper_bound(pub).str() +
                         "; decryption would not be unique",
                     BoundKind::too_large, upper);
  if (enforce_lower) {
    const bigint lower = message_lower_bound(pub);
    if (m <= lower)
      throw BoundError(
          "message <= " + lower.str() + " (Coppersmith floor 2^ceil(3k/2) = " +
              pow2((3 * std::size_t(pub.k) + 1) / 2).str() +
              ", square-root floor isqrt(N) = " + isqrt(pub.N).str() +
              "); a small root would be recoverable without the key",
          BoundKind::too_small, lower);
  } else if (m <= 0) {
    throw BoundError("message must be positive", BoundKind::too_small, 0);
  }
  bigint g = boost::multiprecision::gcd(m, pub.N);
  if (g != 1)
    throw BoundError("gcd(m, N) = " + g.str() +
                         " != 1: the message shares a factor with the modulus;"
                         " this gcd REVEALS A FACTOR of N (key-compromising)",
                     BoundKind::not_coprime, g, /*compromising=*/true);
  return Plaintext{m, enforce_lower};
}

/// c = m^2 mod N. A single modular squaring; no exponentiation loop, so
/// counters are untouched. The plaintext must already be validated.
inline Ciphertext encrypt(const Plaintext& pt, const PublicKey& pub,
                          OpCounters& counters) {
  (void)counters;
  return Ciphertext{(pt.m * pt.m) % pub.N};
}

inline Ciphertext encrypt(const Plaintext& pt, const PublicKey& pub) {
  OpCounters scratch;
  return encrypt(pt, pub, scratch);
}

/// Recovers the unique root m < p^2 / 2 of c modulo p^2:
///   w  = c mod p
///   mp = w^((p+1)/4) mod p          (the only modular exponentiation)
///   i  = (c - mp^2) / p             (exact signed division)
///   j  = i / (2 mp) mod p
///   m1 = mp + j p, then fold m1 or p^2 - m1 below p^2 / 2.
/// No CRT recombination happens anywhere on this path.
inline bigint decrypt(const Ciphertext& ct, const PrivateKey& priv,
                      OpCounters& counters) {
  const bigint& p = priv.p;
  const bigint p2 = p * p;

  bigint w = mod_floor(ct.c, p);
  if (w == 0)
    throw DegenerateCiphertextError(
        "decrypt: gcd(c, p) != 1; ciphertext is degenerate");
  bigint mp;
  try {
    mp = sqrt_mod_blum_prime(w, p, counters);
  } catch (const NonResidueError&) {
    throw InvalidCiphertextError("decrypt: ciphertext has no root mod p");
  }

  bigint num = ct.c - mp * mp;  // may be negative
  if (num % p != 0)
    throw InvalidCiphertextError("decrypt: (c - mp^2) not divisible by p");
  bigint i = num / p;
  bigint j = mod_floor(i * modinv(2 * mp, p, counters), p);
  bigint m1 = mp + j * p;

  // p^2 is odd, so m1 == p^2 / 2 cannot happen.
  bigint m = (2 * m1 < p2) ? m1 : p2 - m1;
  if ((m * m) % p2 != mod_floor(ct.c, p2))
    throw InvalidCiphertextError("decrypt: square-check failed");
  return m;
}

inline bigint decrypt(const Ciphertext& ct, const PrivateKey& priv) {
  OpCounters scratch;
  return decrypt(ct, priv, scratch);
}

}  // namespace rabinp
