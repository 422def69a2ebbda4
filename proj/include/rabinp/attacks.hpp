#pragma once

#include "rabinp/bigint.hpp"
#include "rabinp/errors.hpp"
#include "rabinp/numtheory.hpp"
#include "rabinp/rabinp.hpp"

#include <functional>
#include <optional>
#include <utility>

namespace rabinp::attacks {

/// A decryption oracle: ciphertext in, unique root below p^2 / 2 out.
using DecryptionOracle = std::function<bigint(const Ciphertext&)>;

inline DecryptionOracle make_inprocess_oracle(PrivateKey priv) {
  return [priv = std::move(priv)](const Ciphertext& ct) {
    OpCounters scratch;
    return decrypt(ct, priv, scratch);
  };
}

struct FactoringResult {
  bigint p_squared;
  bigint q;
  unsigned attempts = 0;  // oracle queries spent
};

namespace detail {

// Accept g as p^2 iff it is a proper factor, a perfect square, and its
// root is prime. The complementary gcd can land on 1, q, or N.
inline std::optional<FactoringResult> accept_square_factor(
    const bigint& g, const bigint& N, RandomSource& rng) {
  if (g <= 1 || g >= N) return std::nullopt;
  bigint r = isqrt(g);
  if (r * r != g) return std::nullopt;
  if (!is_probable_prime(r, kDefaultPrimalityRounds, rng)) return std::nullopt;
  bigint q = N / g;
  if (g * q != N) return std::nullopt;
  if (!is_probable_prime(q, kDefaultPrimalityRounds, rng)) return std::nullopt;
  return FactoringResult{g, q, 1};
}

}  // namespace detail

/// One oracle query with a chosen m_hat (coprime to N): submit m_hat^2,
/// receive the unique small root m', and test gcd(m_hat -+ m', N) for a
/// prime-square factor. Returns nothing when both gcds are trivial, which
/// is exactly the m_hat < p^2 / 2 echo case.
inline std::optional<FactoringResult> cca_factor_attempt(
    const PublicKey& pub, const DecryptionOracle& oracle, const bigint& m_hat,
    RandomSource& rng) {
  Ciphertext chat{(m_hat * m_hat) % pub.N};
  bigint m_prime = oracle(chat);
  bigint g_minus = boost::multiprecision::gcd(m_hat - m_prime, pub.N);
  bigint g_plus = boost::multiprecision::gcd(m_hat + m_prime, pub.N);
  if (auto hit = detail::accept_square_factor(g_minus, pub.N, rng)) return hit;
  if (auto hit = detail::accept_square_factor(g_plus, pub.N, rng)) return hit;
  return std::nullopt;
}

// m_hat is drawn from (2^(2k-1), 2^(2k+2)). The upper end deliberately
// clears the largest possible p^2 < 2^(2k+2): a draw fails only when it
// lands below p^2 / 2, which leaves a success chance of at least 4/7 per
// query for every key in the keygen range.
inline std::pair<bigint, bigint> cca_sample_range(const PublicKey& pub) {
  if (pub.k == 0) throw DomainError("cca_factor: public key lacks k");
  std::size_t k = pub.k;
  return {pow2(2 * k - 1) + 1, pow2(2 * k + 2) - 1};
}

/// Factors N = p^2 q with a decryption oracle: the Rabin-p analogue of the
/// classic chosen-ciphertext factoring reduction.
inline FactoringResult cca_factor(const PublicKey& pub,
                                  const DecryptionOracle& oracle,
                                  RandomSource& rng,
                                  unsigned max_attempts = 64) {
  if (max_attempts == 0) throw DomainError("cca_factor: max_attempts == 0");
  auto [lo, hi] = cca_sample_range(pub);
  for (unsigned attempt = 1; attempt <= max_attempts; ++attempt) {
    bigint m_hat = rng.between(lo, hi);
    while (boost::multiprecision::gcd(m_hat, pub.N) != 1)
      m_hat = rng.between(lo, hi);
    if (auto hit = cca_factor_attempt(pub, oracle, m_hat, rng)) {
      hit->attempts = attempt;
      return *hit;
    }
  }
  throw AttackFailure("cca_factor: no factor after " +
                      std::to_string(max_attempts) + " oracle queries");
}

/// The degenerate small-message recovery: when m < sqrt(N) the
/// "ciphertext" m^2 mod N is m^2 itself, and an integer square root
/// recovers m with no key at all. This is the attack the message lower
/// bound exists to block.
inline std::optional<bigint> small_root_recover(const Ciphertext& ct,
                                                const PublicKey& pub) {
  (void)pub;
  if (ct.c < 0) return std::nullopt;
  bigint r = isqrt(ct.c);
  if (r * r == ct.c) return r;
  return std::nullopt;
}

}  // namespace rabinp::attacks
