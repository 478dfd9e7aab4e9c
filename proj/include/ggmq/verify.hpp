#pragma once

// Randomized cross-validation of the recursion evaluators against the
// event-driven and workload-vector oracles, in exact integer arithmetic.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ggmq/engine.hpp"

namespace ggmq::verify {

using Time = std::int64_t;

/// Timeline producer under test. The default runs the real evaluators.
using EngineUnderTest = std::function<Timeline<Time>(const Trace<Time>&, int servers)>;

/// Deliberately broken engines for exercising the harness itself.
enum class Mutant {
  none,
  short_window,   ///< D_k ordered over C_1..C_{k+m-2} instead of C_1..C_{k+m-1}
  single_server,  ///< C_k = (A_k v D_{k-1}) + tau_k regardless of m
};

std::optional<Mutant> parse_mutant(std::string_view s);
EngineUnderTest mutant_engine(Mutant mutant);

struct Case {
  std::uint64_t seed = 0;
  int servers = 1;
  Trace<Time> trace;
};

/// Reproducible random case: N in [1, max_customers] (a quarter of cases at
/// most kNaiveCap so the naive evaluator participates), m in [1, max_servers],
/// integer alpha and tau over small ranges so that ties are frequent.
Case random_case(std::uint64_t seed, std::size_t max_customers, int max_servers);

struct Mismatch {
  std::string check;   ///< which comparison failed
  std::size_t index;   ///< first mismatching 1-based customer index, 0 if n/a
  std::string detail;
};

/// Invariant and property counts accumulated by check_case.
struct Tally {
  std::size_t runs = 0;
  std::size_t naive_runs = 0;
  std::size_t eq4_checks = 0;
  std::size_t m2_closed_form_checks = 0;
};

/// Runs every evaluator (naive where N <= kNaiveCap), the DES oracle and the
/// workload oracle on one case and checks agreement plus the timeline
/// invariants. With a mutant engine, that engine replaces the evaluators.
std::optional<Mismatch> check_case(const Trace<Time>& trace, int servers,
                                   const EngineUnderTest& engine = {}, Tally* tally = nullptr);

/// Greedy shrink: shortest failing prefix, then single-customer removals,
/// then value reduction, as long as the case keeps failing.
Trace<Time> shrink(Trace<Time> trace, int servers, const EngineUnderTest& engine);

struct Options {
  std::size_t cases = 1000;
  std::size_t max_customers = 200;
  int max_servers = 8;
  std::uint64_t seed = 42;
  unsigned threads = 0;  ///< 0 picks hardware concurrency
  Mutant mutant = Mutant::none;
};

struct CaseResult {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::size_t customers = 0;
  int servers = 1;
  std::optional<Mismatch> mismatch;
};

struct Report {
  std::vector<CaseResult> results;  ///< sorted by case index
  std::size_t failures = 0;
  Tally tally;
  /// Shrunk trace and server count for the first failing case.
  std::optional<Case> counterexample;
  std::optional<Mismatch> counterexample_mismatch;
};

/// Per-case seeds are drawn from mt19937_64(options.seed), so case i can be
/// replayed from its own seed with random_case.
Report run(const Options& options);

}  // namespace ggmq::verify
