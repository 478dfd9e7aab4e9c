#pragma once

#include <cstddef>
#include <string>

#include <nlohmann/json.hpp>

#include "ggmq/trace.hpp"

namespace ggmq {

/// Aggregates over a timeline. The horizon runs from time zero to the last
/// departure; utilization is total service time over servers * horizon.
struct Metrics {
  std::size_t n = 0;
  int servers = 1;
  double mean_wait = 0;
  double max_wait = 0;
  double mean_sojourn = 0;
  double max_sojourn = 0;
  double throughput = 0;
  double utilization = 0;
  // Nearest-rank quantiles of the waiting time.
  double wait_p50 = 0;
  double wait_p95 = 0;
  double wait_p99 = 0;
};

/// Throws DomainError on an empty timeline.
template <TimeValue T>
Metrics compute_metrics(const Timeline<T>& timeline);

/// Exactly the keys n, m, mean_wait, max_wait, mean_sojourn, throughput,
/// utilization.
nlohmann::json to_json(const Metrics& m);

/// Aligned two-column table for terminals.
std::string to_table(const Metrics& m);

}  // namespace ggmq
