#pragma once

// Ground truth that shares no code path with the engine recursion.

#include <cstddef>
#include <vector>

#include "ggmq/trace.hpp"

namespace ggmq::oracle {

/// Next-free epoch of each of the m servers.
template <TimeValue T>
struct ServerBank {
  std::vector<T> free_at;

  explicit ServerBank(int servers) : free_at(static_cast<std::size_t>(servers), T{0}) {}
};

/// Event-calendar simulation of an m-server FCFS queue with an unbounded
/// waiting line. At equal epochs departures are processed before arrivals,
/// and simultaneous arrivals join the line in index order.
template <TimeValue T>
Timeline<T> des_simulate(const Trace<T>& trace, int servers);

/// Waiting times from the sorted workload vector (Kiefer-Wolfowitz):
///   W_k = w_(1);  w <- sort((w_(1) + tau_k, w_(2), ..., w_(m)) - alpha_{k+1})^+
template <TimeValue T>
std::vector<T> workload_check(const Trace<T>& trace, int servers);

}  // namespace ggmq::oracle
