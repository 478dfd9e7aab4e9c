#include "ggmq/oracle.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <tuple>

namespace ggmq::oracle {

namespace {

enum class EventKind { departure = 0, arrival = 1 };

template <TimeValue T>
struct Event {
  T time;
  EventKind kind;
  std::size_t seq;
  std::size_t customer;
  std::size_t server;

  bool operator>(const Event& o) const {
    return std::tie(time, kind, seq) > std::tie(o.time, o.kind, o.seq);
  }
};

void check_servers(int servers) {
  if (servers < 1) throw DomainError("server count must be >= 1");
}

}  // namespace

template <TimeValue T>
Timeline<T> des_simulate(const Trace<T>& trace, int servers) {
  trace.validate();
  check_servers(servers);
  const std::size_t n = trace.size();

  Timeline<T> tl;
  tl.servers = servers;
  tl.arrival.resize(n);
  tl.completion.resize(n);
  tl.wait.resize(n);
  tl.sojourn.resize(n);
  tl.departure.reserve(n);

  std::priority_queue<Event<T>, std::vector<Event<T>>, std::greater<>> calendar;
  std::size_t seq = 0;
  T clock{0};
  for (std::size_t k = 0; k < n; ++k) {
    clock += trace.alpha[k];
    tl.arrival[k] = clock;
    calendar.push({clock, EventKind::arrival, seq++, k, 0});
  }

  ServerBank<T> bank(servers);
  std::vector<std::size_t> idle;
  for (std::size_t s = static_cast<std::size_t>(servers); s-- > 0;) idle.push_back(s);
  std::deque<std::size_t> line;

  auto start_service = [&](std::size_t customer, std::size_t server, T now) {
    const T done = now + trace.tau[customer];
    bank.free_at[server] = done;
    tl.completion[customer] = done;
    tl.wait[customer] = now - tl.arrival[customer];
    tl.sojourn[customer] = done - tl.arrival[customer];
    calendar.push({done, EventKind::departure, seq++, customer, server});
  };

  while (!calendar.empty()) {
    const Event<T> ev = calendar.top();
    calendar.pop();
    if (ev.kind == EventKind::arrival) {
      if (!idle.empty() && line.empty()) {
        const std::size_t s = idle.back();
        idle.pop_back();
        start_service(ev.customer, s, ev.time);
      } else {
        line.push_back(ev.customer);
      }
    } else {
      tl.departure.push_back(ev.time);
      if (!line.empty()) {
        const std::size_t next = line.front();
        line.pop_front();
        start_service(next, ev.server, ev.time);
      } else {
        idle.push_back(ev.server);
      }
    }
  }
  return tl;
}

template <TimeValue T>
std::vector<T> workload_check(const Trace<T>& trace, int servers) {
  trace.validate();
  check_servers(servers);
  const std::size_t n = trace.size();
  std::vector<T> work(static_cast<std::size_t>(servers), T{0});
  std::vector<T> waits(n);
  for (std::size_t k = 0; k < n; ++k) {
    waits[k] = work.front();
    work.front() += trace.tau[k];
    if (k + 1 < n) {
      const T gap = trace.alpha[k + 1];
      for (T& w : work) w = std::max(T{0}, w - gap);
    }
    std::sort(work.begin(), work.end());
  }
  return waits;
}

template Timeline<double> des_simulate(const Trace<double>&, int);
template Timeline<std::int64_t> des_simulate(const Trace<std::int64_t>&, int);
template std::vector<double> workload_check(const Trace<double>&, int);
template std::vector<std::int64_t> workload_check(const Trace<std::int64_t>&, int);

}  // namespace ggmq::oracle
