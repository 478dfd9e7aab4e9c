#include "ggmq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <iomanip>
#include <vector>

namespace ggmq {

namespace {

double nearest_rank(const std::vector<double>& sorted, double q) {
  const auto n = sorted.size();
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  return sorted[rank - 1];
}

}  // namespace

template <TimeValue T>
Metrics compute_metrics(const Timeline<T>& tl) {
  const std::size_t n = tl.size();
  if (n == 0) throw DomainError("metrics of an empty timeline");
  Metrics m;
  m.n = n;
  m.servers = tl.servers;

  std::vector<double> waits(n);
  double wait_sum = 0;
  double sojourn_sum = 0;
  double busy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto w = static_cast<double>(tl.wait[i]);
    const auto s = static_cast<double>(tl.sojourn[i]);
    waits[i] = w;
    wait_sum += w;
    sojourn_sum += s;
    busy += s - w;
    m.max_sojourn = std::max(m.max_sojourn, s);
  }
  m.mean_wait = wait_sum / static_cast<double>(n);
  m.mean_sojourn = sojourn_sum / static_cast<double>(n);

  std::sort(waits.begin(), waits.end());
  m.max_wait = waits.back();
  m.wait_p50 = nearest_rank(waits, 0.50);
  m.wait_p95 = nearest_rank(waits, 0.95);
  m.wait_p99 = nearest_rank(waits, 0.99);

  const auto horizon = static_cast<double>(tl.departure.back());
  if (horizon > 0) {
    m.throughput = static_cast<double>(n) / horizon;
    m.utilization = busy / (static_cast<double>(tl.servers) * horizon);
  }
  return m;
}

nlohmann::json to_json(const Metrics& m) {
  return {
      {"n", m.n},
      {"m", m.servers},
      {"mean_wait", m.mean_wait},
      {"max_wait", m.max_wait},
      {"mean_sojourn", m.mean_sojourn},
      {"throughput", m.throughput},
      {"utilization", m.utilization},
  };
}

std::string to_table(const Metrics& m) {
  std::ostringstream os;
  os << std::setprecision(6);
  auto row = [&](const char* name, auto value) {
    os << std::left << std::setw(14) << name << value << '\n';
  };
  row("customers", m.n);
  row("servers", m.servers);
  row("mean wait", m.mean_wait);
  row("max wait", m.max_wait);
  row("wait p50", m.wait_p50);
  row("wait p95", m.wait_p95);
  row("wait p99", m.wait_p99);
  row("mean sojourn", m.mean_sojourn);
  row("max sojourn", m.max_sojourn);
  row("throughput", m.throughput);
  row("utilization", m.utilization);
  return os.str();
}

template Metrics compute_metrics(const Timeline<double>&);
template Metrics compute_metrics(const Timeline<std::int64_t>&);

}  // namespace ggmq
