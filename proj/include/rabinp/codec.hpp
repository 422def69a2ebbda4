#pragma once

#include "rabinp/bigint.hpp"
#include "rabinp/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace rabinp::codec {

/// Lowercase hex, no leading zeros ("0" for zero).
inline std::string to_hex(const bigint& n) {
  if (n < 0) throw DomainError("to_hex: negative value");
  if (n == 0) return "0";
  static const char digits[] = "0123456789abcdef";
  std::string out;
  bigint v = n;
  while (v != 0) {
    out.push_back(digits[static_cast<unsigned>(v & 0xf)]);
    v >>= 4;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

inline bigint from_hex(const std::string& s) {
  if (s.empty()) throw FormatError("from_hex: empty string");
  bigint v = 0;
  for (char c : s) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw FormatError(std::string("from_hex: invalid digit '") + c + "'");
    v = (v << 4) | d;
  }
  return v;
}

/// Big-endian bytes -> integer (empty -> 0).
inline bigint bytes_to_int(const std::vector<std::uint8_t>& bytes) {
  bigint v = 0;
  for (std::uint8_t b : bytes) v = (v << 8) | b;
  return v;
}

/// Integer -> minimal big-endian bytes (0 -> empty).
inline std::vector<std::uint8_t> int_to_bytes(const bigint& n) {
  if (n < 0) throw DomainError("int_to_bytes: negative value");
  std::vector<std::uint8_t> out;
  bigint v = n;
  while (v != 0) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    v >>= 8;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

enum class Padding { none, prefix_bit };

inline Padding padding_from_name(const std::string& name) {
  if (name == "none") return Padding::none;
  if (name == "prefix-bit") return Padding::prefix_bit;
  throw FormatError("unknown padding '" + name + "' (use none or prefix-bit)");
}

// Payload room under the prefix bit: the bits between the Coppersmith
// floor and bit 2k-2. One byte of it is spent on the 0x01 sentinel that
// keeps leading zero bytes of the payload significant.
inline std::size_t prefix_bit_capacity_bits(unsigned k) {
  if (k < 2) return 0;
  std::size_t top = 2 * std::size_t(k) - 2;
  std::size_t floor_bits = (3 * std::size_t(k) + 1) / 2;  // ceil(3k/2)
  return top > floor_bits ? top - floor_bits : 0;
}

inline std::size_t prefix_bit_max_payload_bytes(unsigned k) {
  std::size_t cap = prefix_bit_capacity_bits(k);
  return cap >= 8 ? cap / 8 - 1 : 0;  // minus the sentinel byte
}

/// Bytes -> message integer. prefix_bit sets bit 2k-2 (satisfying both
/// message bounds for keygen'd keys) and stores 0x01 || payload below it.
inline bigint pad_message(const std::vector<std::uint8_t>& payload, unsigned k,
                          Padding pad) {
  switch (pad) {
    case Padding::none:
      return bytes_to_int(payload);
    case Padding::prefix_bit: {
      std::size_t cap = prefix_bit_capacity_bits(k);
      if (8 * (payload.size() + 1) > cap)
        throw FormatError("payload of " + std::to_string(payload.size()) +
                          " bytes exceeds prefix-bit capacity of " +
                          std::to_string(prefix_bit_max_payload_bytes(k)) +
                          " bytes at k = " + std::to_string(k));
      std::vector<std::uint8_t> framed;
      framed.reserve(payload.size() + 1);
      framed.push_back(0x01);
      framed.insert(framed.end(), payload.begin(), payload.end());
      return pow2(2 * std::size_t(k) - 2) + bytes_to_int(framed);
    }
  }
  throw DomainError("pad_message: bad padding");
}

/// Inverse of pad_message; rejects messages that lack the expected shape.
inline std::vector<std::uint8_t> unpad_message(const bigint& m, unsigned k,
                                               Padding pad) {
  switch (pad) {
    case Padding::none:
      return int_to_bytes(m);
    case Padding::prefix_bit: {
      if (k < 2) throw FormatError("unpad: prefix-bit needs k >= 2");
      const bigint prefix = pow2(2 * std::size_t(k) - 2);
      if (m < prefix || m >= 2 * prefix)
        throw FormatError("unpad: prefix bit 2k-2 is not set");
      bigint body = m - prefix;
      std::size_t cap = prefix_bit_capacity_bits(k);
      if (bit_length(body) > cap)
        throw FormatError("unpad: nonzero bits above the payload capacity");
      std::vector<std::uint8_t> framed = int_to_bytes(body);
      if (framed.empty() || framed.front() != 0x01)
        throw FormatError("unpad: missing 0x01 sentinel byte");
      return {framed.begin() + 1, framed.end()};
    }
  }
  throw DomainError("unpad_message: bad padding");
}

}  // namespace rabinp::codec
