#include "rabinp/attacks.hpp"

#include "rabinp/subprocess_oracle.hpp"
#include "support/oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <csignal>

using rabinp::bigint;
using rabinp::Ciphertext;
using rabinp::PrivateKey;
using rabinp::PublicKey;
namespace attacks = rabinp::attacks;

namespace {

const PublicKey kToyPub{539, 2};
const PrivateKey kToyPriv{7, 2};

}  // namespace

TEST_CASE("the worked chosen-ciphertext trace factors the toy modulus") {
  auto oracle = attacks::make_inprocess_oracle(kToyPriv);
  rabinp::RandomSource rng(1);
  // m_hat = 30: oracle answers 19, gcd(30+19, 539) = 49 = 7^2
  auto hit = attacks::cca_factor_attempt(kToyPub, oracle, 30, rng);
  REQUIRE(hit.has_value());
  CHECK(hit->p_squared == 49);
  CHECK(hit->q == 11);
}

TEST_CASE("an echoing query yields nothing and forces a retry") {
  auto oracle = attacks::make_inprocess_oracle(kToyPriv);
  rabinp::RandomSource rng(1);
  // 10 < p^2/2, so the oracle hands back 10 itself
  auto hit = attacks::cca_factor_attempt(kToyPub, oracle, 10, rng);
  CHECK_FALSE(hit.has_value());
}

TEST_CASE("every upper-half toy query factors in one attempt") {
  auto oracle = attacks::make_inprocess_oracle(kToyPriv);
  rabinp::RandomSource rng(2);
  for (std::uint32_t m_hat = 25; m_hat < 49; ++m_hat) {
    if (oracles::naive_gcd(m_hat, 539) != 1) continue;
    CAPTURE(m_hat);
    auto hit = attacks::cca_factor_attempt(kToyPub, oracle, m_hat, rng);
    REQUIRE(hit.has_value());
    REQUIRE(hit->p_squared == 49);
    REQUIRE(hit->q == 11);
  }
}

TEST_CASE("cca_factor drives the loop on the toy key") {
  auto oracle = attacks::make_inprocess_oracle(kToyPriv);
  rabinp::RandomSource rng(7);
  auto result = attacks::cca_factor(kToyPub, oracle, rng, 64);
  CHECK(result.p_squared == 49);
  CHECK(result.q == 11);
  CHECK(result.attempts >= 1);
  CHECK(result.attempts <= 64);
}

TEST_CASE("cca_factor succeeds within budget on random keys") {
  rabinp::RandomSource rng(1337);
  for (int trial = 0; trial < 30; ++trial) {
    auto [pub, priv] = rabinp::keygen(16, rng);
    auto oracle = attacks::make_inprocess_oracle(priv);
    auto result = attacks::cca_factor(pub, oracle, rng, 64);
    CAPTURE(pub.N);
    REQUIRE(result.p_squared * result.q == pub.N);
    bigint root = rabinp::isqrt(result.p_squared);
    REQUIRE(root * root == result.p_squared);
    REQUIRE(root == priv.p);
    REQUIRE(rabinp::is_probable_prime(result.q, 40, rng));
    REQUIRE(result.attempts <= 64);
  }
}

TEST_CASE("cca_factor gives up against a lying oracle") {
  // always echoes something below p^2/2 that shares no structure
  attacks::DecryptionOracle liar = [](const Ciphertext&) { return bigint(5); };
  rabinp::RandomSource rng(3);
  CHECK_THROWS_AS(attacks::cca_factor(kToyPub, liar, rng, 8),
                  rabinp::AttackFailure);
}

TEST_CASE("small_root_recover worked values") {
  CHECK(attacks::small_root_recover(Ciphertext{100}, kToyPub) == bigint(10));
  CHECK(attacks::small_root_recover(Ciphertext{361}, kToyPub) == bigint(19));
  CHECK_FALSE(attacks::small_root_recover(Ciphertext{538}, kToyPub));
}

TEST_CASE("small_root_recover succeeds exactly below sqrt(N), exhaustively") {
  auto blum = oracles::blum_primes_upto(50);
  for (std::uint32_t p : blum) {
    for (std::uint32_t q : blum) {
      if (p == q) continue;
      const std::uint64_t N64 = std::uint64_t(p) * p * q;
      const PublicKey pub{bigint(N64), 0};
      const std::uint32_t p2 = p * p;
      for (std::uint32_t m = 1; 2 * m < p2; ++m) {
        if (oracles::naive_gcd(m, N64) != 1) continue;
        CAPTURE(p, q, m);
        Ciphertext ct{bigint(std::uint64_t(m) * m % N64)};
        auto got = attacks::small_root_recover(ct, pub);
        if (std::uint64_t(m) * m < N64) {
          REQUIRE(got == bigint(m));
        } else {
          REQUIRE_FALSE(got.has_value());
        }
      }
    }
  }
}

TEST_CASE("messages passing the lower bound defeat small_root_recover") {
  rabinp::RandomSource rng(909);
  auto [pub, priv] = rabinp::keygen(16, rng);
  bigint lo = rabinp::message_lower_bound(pub) + 1;
  bigint hi = rabinp::message_upper_bound(pub) - 1;
  int done = 0;
  while (done < 200) {
    bigint m = rng.between(lo, hi);
    if (boost::multiprecision::gcd(m, pub.N) != 1) continue;
    auto pt = rabinp::validate_message(m, pub, true);
    auto ct = rabinp::encrypt(pt, pub);
    REQUIRE_FALSE(attacks::small_root_recover(ct, pub).has_value());
    ++done;
  }
}

TEST_CASE("subprocess oracle plumbing handles the protocol edges") {
  std::signal(SIGPIPE, SIG_IGN);
  SECTION("well-formed decimal replies flow through") {
    attacks::SubprocessOracle fake("while read line; do echo 123; done");
    CHECK(fake(Ciphertext{100}) == 123);
    CHECK(fake(Ciphertext{361}) == 123);
  }
  SECTION("ERR replies raise") {
    attacks::SubprocessOracle fake("while read line; do echo ERR; done");
    CHECK_THROWS_AS(fake(Ciphertext{100}), rabinp::OracleError);
  }
  SECTION("a dead child raises") {
    attacks::SubprocessOracle fake("true");
    CHECK_THROWS_AS(fake(Ciphertext{100}), rabinp::OracleError);
  }
}
