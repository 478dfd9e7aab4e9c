#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ggmq/errors.hpp"
#include "ggmq/ext_time.hpp"

namespace ggmq {

/// Interarrival times alpha_k and service times tau_k, k = 1..N.
/// Storage is 0-based: alpha[0] is alpha_1.
template <TimeValue T>
struct Trace {
  std::vector<T> alpha;
  std::vector<T> tau;

  std::size_t size() const { return alpha.size(); }

  /// Throws TraceError naming the first offending 1-based index.
  void validate() const {
    if (alpha.size() != tau.size()) {
      throw TraceError("alpha and tau lengths differ (" + std::to_string(alpha.size()) +
                           " vs " + std::to_string(tau.size()) + ")",
                       0);
    }
    if (alpha.empty()) throw TraceError("trace has no customers", 0);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      // Negated comparisons also reject NaN.
      if (!(alpha[i] >= T{0})) {
        throw TraceError("alpha must be >= 0 at customer " + std::to_string(i + 1), i + 1);
      }
      if (!(tau[i] > T{0})) {
        throw TraceError("tau must be > 0 at customer " + std::to_string(i + 1), i + 1);
      }
    }
  }

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Per-customer epochs, indexed by arrival order except `departure`, which is
/// the completions in ascending order.
template <TimeValue T>
struct Timeline {
  int servers = 1;
  std::vector<T> arrival;     ///< A_k
  std::vector<T> completion;  ///< C_k, completion of the k-th arrival
  std::vector<T> departure;   ///< D_k, k-th departure epoch
  std::vector<T> wait;        ///< W_k, service start minus arrival
  std::vector<T> sojourn;     ///< C_k - A_k

  std::size_t size() const { return arrival.size(); }

  friend bool operator==(const Timeline&, const Timeline&) = default;
};

}  // namespace ggmq
