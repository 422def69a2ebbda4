#pragma once

#include "rabinp/codec.hpp"
#include "rabinp/errors.hpp"
#include "rabinp/rabinp.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <fcntl.h>
#include <unistd.h>

namespace rabinp::keyfile {

inline constexpr const char* kPublicMagic = "RABINP PUBLIC v1";
inline constexpr const char* kPrivateMagic = "RABINP PRIVATE v1";

inline std::string serialize(const PublicKey& pub) {
  std::ostringstream out;
  out << kPublicMagic << "\n"
      << "k = " << pub.k << "\n"
      << "N = " << codec::to_hex(pub.N) << "\n";
  return out.str();
}

inline std::string serialize(const PrivateKey& priv) {
  std::ostringstream out;
  out << kPrivateMagic << "\n"
      << "k = " << priv.k << "\n"
      << "p = " << codec::to_hex(priv.p) << "\n";
  return out.str();
}

namespace detail {

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open key file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

inline std::string expect_field(const std::string& line, const std::string& key,
                                const std::string& path) {
  const std::string prefix = key + " = ";
  if (line.rfind(prefix, 0) != 0)
    throw FormatError(path + ": expected '" + prefix + "...', got '" + line + "'");
  return line.substr(prefix.size());
}

inline unsigned parse_k(const std::string& text, const std::string& path) {
  if (text.empty() || text.size() > 7 ||
      text.find_first_not_of("0123456789") != std::string::npos)
    throw FormatError(path + ": k is not a reasonable decimal integer");
  unsigned long k = std::stoul(text);
  if (k == 0 || k > 1u << 20)
    throw FormatError(path + ": k is out of range");
  return static_cast<unsigned>(k);
}

// Strict: lowercase, canonical (no leading zeros), so write -> parse ->
// write is byte-identical.
inline bigint parse_hex_canonical(const std::string& text,
                                  const std::string& path) {
  if (text.empty() ||
      text.find_first_not_of("0123456789abcdef") != std::string::npos)
    throw FormatError(path + ": value is not lowercase hex");
  if (text.size() > 1 && text.front() == '0')
    throw FormatError(path + ": hex value has a leading zero");
  return codec::from_hex(text);
}

}  // namespace detail

inline PublicKey read_public(const std::string& path) {
  auto lines = detail::read_lines(path);
  if (lines.size() != 3 || lines[0] != kPublicMagic)
    throw FormatError(path + ": not a '" + std::string(kPublicMagic) + "' file");
  PublicKey pub;
  pub.k = detail::parse_k(detail::expect_field(lines[1], "k", path), path);
  pub.N = detail::parse_hex_canonical(detail::expect_field(lines[2], "N", path),
                                      path);
  return pub;
}

inline PrivateKey read_private(const std::string& path) {
  auto lines = detail::read_lines(path);
  if (lines.size() != 3 || lines[0] != kPrivateMagic)
    throw FormatError(path + ": not a '" + std::string(kPrivateMagic) + "' file");
  PrivateKey priv;
  priv.k = detail::parse_k(detail::expect_field(lines[1], "k", path), path);
  priv.p = detail::parse_hex_canonical(detail::expect_field(lines[2], "p", path),
                                       path);
  return priv;
}

inline void write_file(const std::string& path, const std::string& content,
                       bool owner_only) {
  int flags = O_WRONLY | O_CREAT | O_TRUNC;
  int fd = ::open(path.c_str(), flags, owner_only ? 0600 : 0644);
  if (fd < 0) throw FormatError("cannot create file: " + path);
  const char* data = content.data();
  std::size_t left = content.size();
  while (left > 0) {
    ssize_t n = ::write(fd, data, left);
    if (n <= 0) {
      ::close(fd);
      throw FormatError("short write: " + path);
    }
    data += n;
    left -= static_cast<std::size_t>(n);
  }
  ::close(fd);
}

inline void write_public(const std::string& path, const PublicKey& pub) {
  write_file(path, serialize(pub), /*owner_only=*/false);
}

inline void write_private(const std::string& path, const PrivateKey& priv) {
  write_file(path, serialize(priv), /*owner_only=*/true);
}

}  // namespace rabinp::keyfile
