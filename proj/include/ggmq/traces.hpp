#pragma once

// Trace construction: seeded generators and CSV / JSONL ingestion.
//
// Random streams come from std::mt19937_64, whose output sequence is fixed
// by the C++ standard. Variates are derived by hand rather than through
// <random> distributions (which are implementation-defined):
//   u    = ((x >> 11) + 0.5) * 2^-53          uniform on the open (0,1)
//   exp  = -ln(u) / rate
//   unif = a + (b - a) * u
//   uint = a + (x mod (b - a + 1)), rejecting x below 2^64 mod (b - a + 1)
// Each customer draws alpha_k then tau_k.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "ggmq/trace.hpp"

namespace ggmq {

struct Distribution {
  enum class Kind { deterministic, exponential, uniform, uniform_int };
  Kind kind = Kind::deterministic;
  double a = 0;  ///< value, rate, or lower bound
  double b = 0;  ///< upper bound for the uniform kinds

  /// "det:X", "exp:RATE", "unif:A,B", "uint:A,B". Throws DomainError.
  static Distribution parse(std::string_view text);
  std::string to_string() const;
  double mean() const;
};

struct GenSpec {
  Distribution arrival;
  Distribution service;
  std::size_t n = 1;
  std::uint64_t seed = 1;

  /// Rejects negative interarrival support, service distributions that can
  /// emit 0, n == 0, and (when integer_mode) non-integer distributions.
  void validate(bool integer_mode) const;
};

/// Deterministic function of the spec, seed included.
template <TimeValue T>
Trace<T> generate(const GenSpec& spec);

enum class TraceFormat { csv, jsonl };

/// csv for ".csv", jsonl for ".jsonl"/".json", nullopt otherwise.
std::optional<TraceFormat> format_from_path(const std::filesystem::path& path);

/// CSV with header `k,alpha,tau`, k contiguous from 1. Integer instantiation
/// accepts integral decimal values such as "5.0". Throws ParseError (with
/// line) or TraceError (with customer index).
template <TimeValue T>
Trace<T> read_trace_csv(std::istream& in);

/// One JSON object per line: {"alpha": x, "tau": y}. Optional "k" must match.
template <TimeValue T>
Trace<T> read_trace_jsonl(std::istream& in);

template <TimeValue T>
Trace<T> load_trace(const std::filesystem::path& path, TraceFormat format);

/// Canonical CSV: LF endings, shortest round-trip decimal for each value.
template <TimeValue T>
void write_trace_csv(std::ostream& out, const Trace<T>& trace);

/// Timeline CSV, header `k,A,C,D,W,T`.
template <TimeValue T>
void write_timeline_csv(std::ostream& out, const Timeline<T>& timeline);

template <TimeValue T>
Timeline<T> read_timeline_csv(std::istream& in, int servers);

/// Shortest decimal string that parses back to the same value.
template <TimeValue T>
std::string format_time(T value);

}  // namespace ggmq
