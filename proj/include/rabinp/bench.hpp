#pragma once

#include "rabinp/bigint.hpp"
#include "rabinp/errors.hpp"
#include "rabinp/rabin_classic.hpp"
#include "rabinp/rabinp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace rabinp::bench {

struct BenchReport {
  std::string scheme;
  unsigned k = 0;
  unsigned trials = 0;
  double modexp_per_decrypt = 0.0;
  double crt_per_decrypt = 0.0;
  double median_decrypt_us = 0.0;
  double median_encrypt_us = 0.0;
};

enum class ReportFormat { csv, markdown };

namespace detail {

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

template <typename F>
double timed_us(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::micro>(t1 - t0).count();
}

inline bigint random_valid_message(const PublicKey& pub, RandomSource& rng) {
  bigint lo = message_lower_bound(pub) + 1;
  bigint hi = message_upper_bound(pub) - 1;
  for (;;) {
    bigint m = rng.between(lo, hi);
    if (boost::multiprecision::gcd(m, pub.N) == 1) return m;
  }
}

inline constexpr unsigned kWarmupIterations = 5;

}  // namespace detail

/// Round-trip benchmark of Rabin-p decryption against the textbook
/// baseline. Counter columns are exact and reproducible; the timing
/// columns are medians over `trials` runs (5 untimed warm-up rounds
/// absorb allocator noise) and vary run to run.
inline std::vector<BenchReport> run_bench(unsigned k, unsigned trials,
                                          RandomSource& rng) {
  if (k < 16) throw DomainError("run_bench: k must be >= 16");
  if (trials == 0) throw DomainError("run_bench: trials must be positive");

  std::vector<BenchReport> reports;

  {  // Rabin-p: one modexp, no CRT.
    auto [pub, priv] = keygen(k, rng);
    OpCounters counters;
    std::vector<double> enc_us, dec_us;
    for (unsigned t = 0; t < trials + detail::kWarmupIterations; ++t) {
      bool warm = t < detail::kWarmupIterations;
      OpCounters scratch;
      OpCounters& sink = warm ? scratch : counters;
      Plaintext pt = validate_message(detail::random_valid_message(pub, rng),
                                      pub);
      Ciphertext ct;
      double e = detail::timed_us([&] { ct = encrypt(pt, pub, sink); });
      bigint back;
      double d = detail::timed_us([&] { back = decrypt(ct, priv, sink); });
      if (back != pt.m) throw Error("bench: rabin-p round trip failed");
      if (!warm) {
        enc_us.push_back(e);
        dec_us.push_back(d);
      }
    }
    reports.push_back(BenchReport{
        "rabin-p", k, trials,
        double(counters.modexp_count) / trials,
        double(counters.crt_count) / trials,
        detail::median(dec_us), detail::median(enc_us)});
  }

  {  // Textbook Rabin: two modexps plus CRT recombination.
    auto key = classic::ClassicKeyPair::generate(k, rng);
    OpCounters counters;
    std::vector<double> enc_us, dec_us;
    for (unsigned t = 0; t < trials + detail::kWarmupIterations; ++t) {
      bool warm = t < detail::kWarmupIterations;
      bigint m = rng.between(2, key.N - 1);
      while (boost::multiprecision::gcd(m, key.N) != 1)
        m = rng.between(2, key.N - 1);
      bigint c;
      OpCounters scratch;
      double e = detail::timed_us(
          [&] { c = classic::classic_encrypt(m, key.N, warm ? scratch : counters); });
      std::vector<bigint> roots;
      double d = detail::timed_us([&] {
        roots = classic::classic_decrypt(c, key, warm ? scratch : counters);
      });
      if (std::find(roots.begin(), roots.end(), m) == roots.end())
        throw Error("bench: classic round trip lost the message");
      if (!warm) {
        enc_us.push_back(e);
        dec_us.push_back(d);
      }
    }
    reports.push_back(BenchReport{
        "classic-rabin", k, trials,
        double(counters.modexp_count) / trials,
        double(counters.crt_count) / trials,
        detail::median(dec_us), detail::median(enc_us)});
  }

  return reports;
}

namespace detail {

// "1" not "1.000000" for exact counts; timings keep 3 decimals.
inline std::string format_ratio(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    std::ostringstream out;
    out << static_cast<long long>(v);
    return out.str();
  }
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(4);
  out << v;
  std::string s = out.str();
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

inline std::string format_time(double v) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(3);
  out << v;
  return out.str();
}

}  // namespace detail

inline std::string render_report(const std::vector<BenchReport>& reports,
                                 ReportFormat format) {
  if (reports.empty()) throw DomainError("render_report: no reports");
  std::ostringstream out;
  const char* cols[] = {"scheme", "k",       "trials",
                        "modexp/dec", "crt/dec", "median_dec_time_us",
                        "median_enc_time_us"};
  if (format == ReportFormat::csv) {
    for (std::size_t i = 0; i < 7; ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const auto& r : reports) {
      out << r.scheme << "," << r.k << "," << r.trials << ","
          << detail::format_ratio(r.modexp_per_decrypt) << ","
          << detail::format_ratio(r.crt_per_decrypt) << ","
          << detail::format_time(r.median_decrypt_us) << ","
          << detail::format_time(r.median_encrypt_us) << "\n";
    }
  } else {
    out << "|";
    for (const auto* c : cols) out << " " << c << " |";
    out << "\n|";
    for (std::size_t i = 0; i < 7; ++i) out << " --- |";
    out << "\n";
    for (const auto& r : reports) {
      out << "| " << r.scheme << " | " << r.k << " | " << r.trials << " | "
          << detail::format_ratio(r.modexp_per_decrypt) << " | "
          << detail::format_ratio(r.crt_per_decrypt) << " | "
          << detail::format_time(r.median_decrypt_us) << " | "
          << detail::format_time(r.median_encrypt_us) << " |\n";
    }
  }
  return out.str();
}

}  // namespace rabinp::bench
