#include "rabinp/numtheory.hpp"

#include "support/oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using rabinp::bigint;
using rabinp::OpCounters;

TEST_CASE("modexp matches the worked values") {
  OpCounters c;
  CHECK(rabinp::modexp(2, 2, 7, c) == 4);
  CHECK(rabinp::modexp(5, 0, 13, c) == 1);
  bigint r = rabinp::modexp(2, (7 + 1) / 4, 7, c);
  CHECK(r == 4);
  CHECK((r * r) % 7 == 2);
  CHECK(rabinp::modexp(-2, 2, 7, c) == 4);  // base is reduced first
  CHECK(c.modexp_count == 4);
}

TEST_CASE("modexp rejects bad domains") {
  OpCounters c;
  CHECK_THROWS_AS(rabinp::modexp(2, 3, 1, c), rabinp::DomainError);
  CHECK_THROWS_AS(rabinp::modexp(2, 3, 0, c), rabinp::DomainError);
  CHECK_THROWS_AS(rabinp::modexp(2, -1, 7, c), rabinp::DomainError);
}

TEST_CASE("modexp agrees with a naive square-and-multiply oracle") {
  std::mt19937_64 gen(20240811);
  std::uniform_int_distribution<std::uint64_t> val(0, 0xffff);
  std::uniform_int_distribution<std::uint64_t> mod(2, 0xffff);
  OpCounters c;
  for (int i = 0; i < 500; ++i) {
    std::uint64_t b = val(gen), e = val(gen), m = mod(gen);
    CAPTURE(b, e, m);
    REQUIRE(rabinp::modexp(b, e, m, c) == oracles::naive_modexp(b, e, m));
  }
  CHECK(c.modexp_count == 500);
}

TEST_CASE("egcd worked values and Bezout identity") {
  auto r = rabinp::egcd(49, 539);
  CHECK(r.g == 49);
  CHECK(rabinp::egcd(1, 987654321).g == 1);
  CHECK(rabinp::egcd(11, 539).g == 11);

  std::mt19937_64 gen(7);
  std::uniform_int_distribution<std::int64_t> val(-100000, 100000);
  for (int i = 0; i < 300; ++i) {
    bigint a = val(gen), b = val(gen);
    if (a == 0 && b == 0) continue;
    auto e = rabinp::egcd(a, b);
    CAPTURE(a, b);
    REQUIRE(e.g > 0);
    REQUIRE(a % e.g == 0);
    REQUIRE(b % e.g == 0);
    REQUIRE(a * e.x + b * e.y == e.g);
  }
  CHECK_THROWS_AS(rabinp::egcd(0, 0), rabinp::DomainError);
}

TEST_CASE("modinv worked values") {
  OpCounters c;
  CHECK(rabinp::modinv(4, 7, c) == 2);
  CHECK(rabinp::modinv(1, 101, c) == 1);
  CHECK(rabinp::modinv(8 % 7, 7, c) == 1);
  CHECK(c.modinv_count == 3);
  CHECK(c.modexp_count == 0);  // inversion must not look like a modexp
}

TEST_CASE("modinv inverts random units and rejects non-units") {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<std::uint64_t> val(2, 1000000);
  OpCounters c;
  int done = 0;
  while (done < 200) {
    bigint a = val(gen), m = val(gen);
    if (oracles::naive_gcd(static_cast<std::uint64_t>(a),
                           static_cast<std::uint64_t>(m)) != 1)
      continue;
    bigint inv = rabinp::modinv(a, m, c);
    REQUIRE(inv >= 1);
    REQUIRE(inv < m);
    REQUIRE((inv * a) % m == 1);
    ++done;
  }

  try {
    rabinp::modinv(6, 9, c);
    FAIL("expected NotInvertibleError");
  } catch (const rabinp::NotInvertibleError& e) {
    CHECK(e.gcd == 3);
  }
}

TEST_CASE("is_probable_prime agrees with trial division below 10000") {
  rabinp::RandomSource rng(424242);
  for (std::uint64_t n = 0; n < 10000; ++n) {
    CAPTURE(n);
    REQUIRE(rabinp::is_probable_prime(n, 10, rng) ==
            oracles::trial_division_is_prime(n));
  }
}

TEST_CASE("is_probable_prime worked values and Carmichael numbers") {
  rabinp::RandomSource rng(1);
  CHECK(rabinp::is_probable_prime(7, 40, rng));
  CHECK_FALSE(rabinp::is_probable_prime(49, 40, rng));
  CHECK(rabinp::is_probable_prime((bigint(1) << 61) - 1, 40, rng));
  for (std::uint64_t carmichael : {561u, 1105u, 1729u, 6601u, 8911u, 41041u})
    CHECK_FALSE(rabinp::is_probable_prime(carmichael, 40, rng));
}

TEST_CASE("gen_blum_prime pins the tiny sizes") {
  rabinp::RandomSource rng(5);
  CHECK(rabinp::gen_blum_prime(3, rng) == 7);   // only 3-bit Blum prime
  CHECK(rabinp::gen_blum_prime(4, rng) == 11);  // 13 = 1 (mod 4)
  CHECK_THROWS_AS(rabinp::gen_blum_prime(2, rng), rabinp::DomainError);
}

TEST_CASE("gen_blum_prime output is a Blum prime in range") {
  rabinp::RandomSource rng(77);
  for (unsigned bits = 3; bits <= 20; ++bits) {
    bigint p = rabinp::gen_blum_prime(bits, rng);
    CAPTURE(bits, p);
    REQUIRE(p % 4 == 3);
    REQUIRE(p >= rabinp::pow2(bits - 1));
    REQUIRE(p < rabinp::pow2(bits));
    REQUIRE(oracles::trial_division_is_prime(p.convert_to<std::uint64_t>()));
  }
}

TEST_CASE("sqrt_mod_blum_prime worked values") {
  OpCounters c;
  bigint r = rabinp::sqrt_mod_blum_prime(2, 7, c);
  CHECK(r == 4);
  CHECK(c.modexp_count == 1);  // exactly one exponentiation per root
  CHECK(rabinp::sqrt_mod_blum_prime(1, 499, c) == 1);
  CHECK(rabinp::sqrt_mod_blum_prime(4, 7, c) == 2);
  CHECK(c.modexp_count == 3);
  CHECK_THROWS_AS(rabinp::sqrt_mod_blum_prime(2, 13, c), rabinp::DomainError);
}

TEST_CASE("sqrt_mod_blum_prime is exhaustive over Blum primes <= 1000") {
  OpCounters c;
  for (std::uint32_t p : oracles::blum_primes_upto(1000)) {
    for (std::uint32_t a = 1; a < p; ++a) {
      bigint r = rabinp::sqrt_mod_blum_prime(bigint(a) * a % p, p, c);
      CAPTURE(p, a);
      REQUIRE((r == a || r == p - a));
    }
  }
}

TEST_CASE("sqrt_mod_blum_prime rejects non-residues") {
  OpCounters c;
  // 3 is not a residue mod 7 (squares mod 7: 1, 2, 4).
  CHECK_THROWS_AS(rabinp::sqrt_mod_blum_prime(3, 7, c),
                  rabinp::NonResidueError);
}

TEST_CASE("isqrt worked values and floor property") {
  CHECK(rabinp::isqrt(100) == 10);
  CHECK(rabinp::isqrt(99) == 9);
  CHECK(rabinp::isqrt(0) == 0);
  CHECK_THROWS_AS(rabinp::isqrt(-1), rabinp::DomainError);

  rabinp::RandomSource rng(31337);
  for (int i = 0; i < 300; ++i) {
    bigint n = rng.bits(1 + static_cast<std::size_t>(rng.word() % 200));
    bigint r = rabinp::isqrt(n);
    CAPTURE(n);
    REQUIRE(r * r <= n);
    REQUIRE((r + 1) * (r + 1) > n);
  }
}

TEST_CASE("counters reset explicitly and never move on their own") {
  OpCounters c;
  rabinp::modexp(3, 100, 101, c);
  rabinp::modinv(5, 7, c);
  CHECK(c.modexp_count == 1);
  CHECK(c.modinv_count == 1);
  CHECK(c.crt_count == 0);
  c.reset();
  CHECK(c.modexp_count == 0);
  CHECK(c.modinv_count == 0);
  CHECK(c.crt_count == 0);
}
