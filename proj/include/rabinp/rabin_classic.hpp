#pragma once

#include "rabinp/bigint.hpp"
#include "rabinp/errors.hpp"
#include "rabinp/numtheory.hpp"

#include <algorithm>
#include <vector>

namespace rabinp::classic {

/// Textbook Rabin key: N = pq with two Blum primes. Kept as the benchmark
/// baseline; decryption is 4-to-1.
struct ClassicKeyPair {
  bigint N;
  bigint p;
  bigint q;
  bigint p_inv_q;  // p^-1 mod q, precomputed for Garner recombination

  static ClassicKeyPair from_primes(const bigint& p, const bigint& q) {
    if (p == q || p % 4 != 3 || q % 4 != 3)
      throw DomainError("ClassicKeyPair: need distinct primes = 3 (mod 4)");
    OpCounters scratch;
    return ClassicKeyPair{p * q, p, q, modinv(p, q, scratch)};
  }

  static ClassicKeyPair generate(unsigned k, RandomSource& rng) {
    bigint p = gen_blum_prime(k + 1, rng);
    bigint q = gen_blum_prime(k + 1, rng);
    while (q == p) q = gen_blum_prime(k + 1, rng);
    return from_primes(p, q);
  }
};

/// One Garner step: the x mod pq with x = rp (mod p), x = rq (mod q).
inline bigint crt_combine(const bigint& rp, const bigint& rq,
                          const ClassicKeyPair& key, OpCounters& counters) {
  counters.crt_count += 1;
  bigint t = mod_floor((rq - rp) * key.p_inv_q, key.q);
  return rp + t * key.p;
}

inline bigint classic_encrypt(const bigint& m, const bigint& N,
                              OpCounters& counters) {
  (void)counters;
  if (m <= 0 || m >= N)
    throw DomainError("classic_encrypt: need 0 < m < N");
  if (boost::multiprecision::gcd(m, N) != 1)
    throw BoundError("classic_encrypt: gcd(m, N) != 1",
                     BoundKind::not_coprime,
                     boost::multiprecision::gcd(m, N), true);
  return (m * m) % N;
}

/// All four square roots of c mod N, ascending. Two Blum-prime square
/// roots (one modexp each), then Garner recombination for each of the
/// two sign choices; the other two roots are the negations.
inline std::vector<bigint> classic_decrypt(const bigint& c,
                                           const ClassicKeyPair& key,
                                           OpCounters& counters) {
  if (boost::multiprecision::gcd(mod_floor(c, key.N), key.N) != 1)
    throw DegenerateCiphertextError(
        "classic_decrypt: gcd(c, N) != 1; ciphertext is degenerate");
  // sqrt_mod_blum_prime square-checks the candidates, so a non-residue c
  // is rejected without any Euler-criterion exponentiation.
  bigint rp = sqrt_mod_blum_prime(c, key.p, counters);
  bigint rq = sqrt_mod_blum_prime(c, key.q, counters);

  bigint r1 = crt_combine(rp, rq, key, counters);
  bigint r2 = crt_combine(rp, mod_floor(-rq, key.q), key, counters);
  std::vector<bigint> roots = {r1, key.N - r1, r2, key.N - r2};
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace rabinp::classic
