// Command-line front end: key lifecycle, encryption/decryption of byte
// messages, the chosen-ciphertext factoring demo, and benchmarks.

#include "rabinp/attacks.hpp"
#include "rabinp/bench.hpp"
#include "rabinp/codec.hpp"
#include "rabinp/keyfile.hpp"
#include "rabinp/rabinp.hpp"
#include "rabinp/subprocess_oracle.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using rabinp::bigint;

rabinp::RandomSource make_rng(const std::optional<std::uint64_t>& seed) {
  return seed ? rabinp::RandomSource(*seed) : rabinp::RandomSource();
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    std::string s = buf.str();
    return {s.begin(), s.end()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rabinp::Error("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string s = buf.str();
  return {s.begin(), s.end()};
}

std::string strip_ws(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' ||
                        s.back() == ' ' || s.back() == '\t'))
    s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

int cmd_keygen(unsigned k, const std::string& out_prefix,
               std::optional<std::uint64_t> seed) {
  auto rng = make_rng(seed);
  auto [pub, priv] = rabinp::keygen(k, rng);
  rabinp::keyfile::write_public(out_prefix + ".pub", pub);
  rabinp::keyfile::write_private(out_prefix + ".priv", priv);
  std::cerr << "wrote " << out_prefix << ".pub and " << out_prefix
            << ".priv (k = " << k << ", |N| = " << rabinp::bit_length(pub.N)
            << " bits)\n";
  return 0;
}

int cmd_encrypt(const std::string& pubfile, const std::string& in_path,
                const std::string& pad_name, bool allow_small) {
  auto pub = rabinp::keyfile::read_public(pubfile);
  auto pad = rabinp::codec::padding_from_name(pad_name);
  bigint m = rabinp::codec::pad_message(read_bytes(in_path), pub.k, pad);
  rabinp::Plaintext pt;
  try {
    pt = rabinp::validate_message(m, pub, /*enforce_lower=*/!allow_small);
  } catch (const rabinp::BoundError& e) {
    if (e.kind == rabinp::BoundKind::not_coprime) {
      std::cerr << "KEY COMPROMISE: " << e.what() << "\n"
                << "refusing to encrypt; rotate this key\n";
      return 3;
    }
    throw;
  }
  rabinp::Ciphertext ct = rabinp::encrypt(pt, pub);
  std::cout << rabinp::codec::to_hex(ct.c) << "\n";
  return 0;
}

int cmd_decrypt(const std::string& privfile, std::string hex,
                const std::string& in_path, const std::string& pad_name) {
  auto priv = rabinp::keyfile::read_private(privfile);
  auto pad = rabinp::codec::padding_from_name(pad_name);
  if (hex.empty()) {
    auto raw = read_bytes(in_path);
    hex = strip_ws(std::string(raw.begin(), raw.end()));
  }
  bigint c = rabinp::codec::from_hex(hex);
  bigint m = rabinp::decrypt(rabinp::Ciphertext{c}, priv);
  auto payload = rabinp::codec::unpad_message(m, priv.k, pad);
  std::cout.write(reinterpret_cast<const char*>(payload.data()),
                  static_cast<std::streamsize>(payload.size()));
  std::cout.flush();
  return 0;
}

int cmd_attack(const std::string& pubfile, const std::string& privfile,
               const std::string& oracle_cmd, unsigned max_attempts,
               std::optional<std::uint64_t> seed) {
  auto pub = rabinp::keyfile::read_public(pubfile);
  if (privfile.empty() == oracle_cmd.empty())
    throw rabinp::Error("attack: give exactly one of --priv or --oracle-cmd");

  rabinp::attacks::DecryptionOracle oracle;
  std::shared_ptr<rabinp::attacks::SubprocessOracle> child;
  if (!privfile.empty()) {
    oracle = rabinp::attacks::make_inprocess_oracle(
        rabinp::keyfile::read_private(privfile));
  } else {
    child = std::make_shared<rabinp::attacks::SubprocessOracle>(oracle_cmd);
    oracle = rabinp::attacks::SubprocessOracle::as_oracle(child);
  }

  auto rng = make_rng(seed);
  auto result = rabinp::attacks::cca_factor(pub, oracle, rng, max_attempts);
  if (result.p_squared * result.q != pub.N)
    throw rabinp::Error("attack: recovered factors do not multiply back to N");
  std::cout << "p2 = " << result.p_squared << "\n"
            << "q = " << result.q << "\n"
            << "attempts = " << result.attempts << "\n";
  return 0;
}

int cmd_bench(unsigned k, unsigned trials, const std::string& format,
              const std::string& out_path,
              std::optional<std::uint64_t> seed) {
  rabinp::bench::ReportFormat fmt;
  if (format == "csv") fmt = rabinp::bench::ReportFormat::csv;
  else if (format == "markdown") fmt = rabinp::bench::ReportFormat::markdown;
  else throw rabinp::Error("bench: --format must be csv or markdown");

  auto rng = make_rng(seed);
  auto reports = rabinp::bench::run_bench(k, trials, rng);
  std::string text = rabinp::bench::render_report(reports, fmt);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw rabinp::Error("cannot open output file: " + out_path);
    out << text;
  }
  return 0;
}

// Serving side of the subprocess oracle protocol: hex ciphertext lines in,
// decimal plaintext lines out ("ERR" when decryption rejects the input).
int cmd_oracle(const std::string& privfile) {
  auto priv = rabinp::keyfile::read_private(privfile);
  std::string line;
  while (std::getline(std::cin, line)) {
    line = strip_ws(line);
    if (line.empty()) continue;
    try {
      bigint c = rabinp::codec::from_hex(line);
      std::cout << rabinp::decrypt(rabinp::Ciphertext{c}, priv) << "\n";
    } catch (const rabinp::Error&) {
      std::cout << "ERR\n";
    }
    std::cout.flush();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGPIPE, SIG_IGN);

  CLI::App app{"Rabin-p cryptosystem: keygen, encrypt, decrypt, factoring "
               "attack demo, benchmarks"};
  app.require_subcommand(1);

  unsigned k = 512;
  std::string out_prefix, pubfile, privfile, in_path = "-";
  std::string pad_name = "prefix-bit";
  std::string hex, oracle_cmd, format = "markdown", out_path;
  unsigned trials = 100, max_attempts = 64;
  bool allow_small = false;
  std::optional<std::uint64_t> seed;

  auto* keygen = app.add_subcommand("keygen", "generate a key pair");
  keygen->add_option("--k", k, "security parameter (prime size class)")
      ->required();
  keygen->add_option("--out", out_prefix, "output path prefix")->required();
  keygen->add_option("--seed", seed, "deterministic RNG seed");

  auto* encrypt = app.add_subcommand("encrypt", "encrypt bytes to hex");
  encrypt->add_option("--pub", pubfile, "public key file")->required();
  encrypt->add_option("--in", in_path, "payload file ('-' = stdin)");
  encrypt->add_option("--pad", pad_name, "padding: none | prefix-bit");
  encrypt->add_flag("--allow-small", allow_small,
                    "waive the small-message lower bound (unsafe)");

  auto* decrypt = app.add_subcommand("decrypt", "decrypt hex to bytes");
  decrypt->add_option("--priv", privfile, "private key file")->required();
  decrypt->add_option("ciphertext", hex, "ciphertext hex (or use --in)");
  decrypt->add_option("--in", in_path, "ciphertext hex file ('-' = stdin)");
  decrypt->add_option("--pad", pad_name, "padding: none | prefix-bit");

  auto* attack = app.add_subcommand(
      "attack", "factor N with a decryption oracle (chosen-ciphertext demo)");
  attack->add_option("--pub", pubfile, "public key file")->required();
  attack->add_option("--priv", privfile, "private key file (in-process oracle)");
  attack->add_option("--oracle-cmd", oracle_cmd,
                     "shell command speaking the oracle protocol");
  attack->add_option("--max-attempts", max_attempts, "oracle query budget");
  attack->add_option("--seed", seed, "deterministic RNG seed");

  auto* bench = app.add_subcommand("bench", "compare rabin-p vs textbook rabin");
  bench->add_option("--k", k, "security parameter");
  bench->add_option("--trials", trials, "round trips per scheme");
  bench->add_option("--format", format, "csv | markdown");
  bench->add_option("--out", out_path, "write report here instead of stdout");
  bench->add_option("--seed", seed, "deterministic RNG seed");

  auto* oracle = app.add_subcommand(
      "oracle", "serve the decryption-oracle protocol on stdin/stdout");
  oracle->add_option("--priv", privfile, "private key file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(keygen)) return cmd_keygen(k, out_prefix, seed);
    if (app.got_subcommand(encrypt))
      return cmd_encrypt(pubfile, in_path, pad_name, allow_small);
    if (app.got_subcommand(decrypt))
      return cmd_decrypt(privfile, hex, in_path, pad_name);
    if (app.got_subcommand(attack))
      return cmd_attack(pubfile, privfile, oracle_cmd, max_attempts, seed);
    if (app.got_subcommand(bench))
      return cmd_bench(k, trials, format, out_path, seed);
    if (app.got_subcommand(oracle)) return cmd_oracle(privfile);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
