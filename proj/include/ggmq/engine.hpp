#pragma once

// G/G/m FCFS dynamics from the max/min/plus recursion
//
//   A_k = A_{k-1} + alpha_k
//   C_k = (A_k v D_{k-m}) + tau_k
//   D_k = k-th smallest of {C_1, ..., C_{k+m-1}}
//
// with A_j = D_j = 0 for j <= 0. Because D_k < C_{k+m}, completions past
// index k+m-1 can never precede D_k, so D_k only ever needs that finite
// window. For a finite trace the window is truncated at N.

#include <cstddef>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <string_view>
#include <vector>

#include "ggmq/ordstat.hpp"
#include "ggmq/trace.hpp"

namespace ggmq {

enum class Evaluator { naive, incremental, windowed };
enum class NumericMode { f64, integer };

std::string_view to_string(Evaluator e);
std::string_view to_string(NumericMode m);
std::optional<Evaluator> parse_evaluator(std::string_view s);
std::optional<NumericMode> parse_numeric_mode(std::string_view s);

struct SimConfig {
  int servers = 1;
  Evaluator evaluator = Evaluator::windowed;
  NumericMode mode = NumericMode::f64;
};

/// Prefix sums of the interarrival times, A_0 = 0.
template <TimeValue T>
std::vector<T> arrivals(const Trace<T>& trace);

/// D_k as the k-th smallest completion of the window {C_1..C_{k+m-1}},
/// by subset enumeration. Throws CapacityError past kNaiveCap.
template <TimeValue T>
T departure_naive(std::span<const T> window, long long k);

/// D_k from a state that has absorbed C_1..C_{k+m-2}. Inserts
/// c_new = C_{k+m-1} (when present; nullopt past the end of a finite trace),
/// reads rank k and retires it. Throws std::logic_error when the state does
/// not match (k, servers).
template <TimeValue T>
T departure_incremental(OrderStatState<T>& state, std::optional<T> c_new, long long k,
                        int servers);

/// At most m completion epochs that have not departed yet.
template <TimeValue T>
using PendingCompletions = std::priority_queue<T, std::vector<T>, std::greater<T>>;

/// Inserts c_new (if any) and extracts the earliest pending completion, which
/// is the next departure. O(log m).
template <TimeValue T>
T departure_windowed(PendingCompletions<T>& pending, std::optional<T> c_new);

/// Full timeline via the selected evaluator. Validates the trace
/// (TraceError) and the server count (DomainError); the naive evaluator
/// throws CapacityError for more than kNaiveCap customers.
template <TimeValue T>
Timeline<T> simulate(const Trace<T>& trace, const SimConfig& config);

/// Single-server recursion D_k = (A_k v D_{k-1}) + tau_k, where C_k = D_k.
template <TimeValue T>
Timeline<T> simulate_single_server(const Trace<T>& trace);

}  // namespace ggmq
