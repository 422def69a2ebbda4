#pragma once

#include "rabinp/bigint.hpp"

#include <stdexcept>
#include <string>

namespace rabinp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Precondition violations (modulus < 2, egcd(0,0), k out of range, ...).
struct DomainError : Error {
  using Error::Error;
};

// modinv on a non-unit; carries gcd(a, modulus) as the witness.
struct NotInvertibleError : Error {
  NotInvertibleError(std::string msg, bigint g)
      : Error(std::move(msg)), gcd(std::move(g)) {}
  bigint gcd;
};

// sqrt_mod_blum_prime: the square-check exposed a non-residue.
struct NonResidueError : Error {
  using Error::Error;
};

// Prime generation ran out of its attempt budget.
struct GenerationFailure : Error {
  using Error::Error;
};

// Message bound violations from validate_message.
enum class BoundKind { too_small, too_large, not_coprime };

struct BoundError : Error {
  BoundError(std::string msg, BoundKind k, bigint w, bool compromising = false)
      : Error(std::move(msg)),
        kind(k),
        witness(std::move(w)),
        key_compromising(compromising) {}
  BoundKind kind;
  // The violated bound, or for not_coprime the leaked factor gcd(m, N).
  bigint witness;
  bool key_compromising;
};

// gcd(c, p) != 1: the ciphertext shares a factor with the key.
struct DegenerateCiphertextError : Error {
  using Error::Error;
};

// Decryption postcondition (result^2 = c mod p^2) did not hold.
struct InvalidCiphertextError : Error {
  using Error::Error;
};

struct AttackFailure : Error {
  using Error::Error;
};

// Subprocess oracle misbehaved (died, replied ERR, replied garbage).
struct OracleError : Error {
  using Error::Error;
};

// Malformed key files, hex strings, or padded messages.
struct FormatError : Error {
  using Error::Error;
};

}  // namespace rabinp
