#include "ggmq/engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ggmq {

std::string_view to_string(Evaluator e) {
  switch (e) {
    case Evaluator::naive: return "naive";
    case Evaluator::incremental: return "incremental";
    case Evaluator::windowed: return "windowed";
  }
  return "?";
}

std::string_view to_string(NumericMode m) {
  return m == NumericMode::integer ? "int" : "f64";
}

std::optional<Evaluator> parse_evaluator(std::string_view s) {
  if (s == "naive") return Evaluator::naive;
  if (s == "incremental") return Evaluator::incremental;
  if (s == "windowed") return Evaluator::windowed;
  return std::nullopt;
}

std::optional<NumericMode> parse_numeric_mode(std::string_view s) {
  if (s == "f64" || s == "float64") return NumericMode::f64;
  if (s == "int" || s == "integer") return NumericMode::integer;
  return std::nullopt;
}

template <TimeValue T>
std::vector<T> arrivals(const Trace<T>& trace) {
  std::vector<T> out(trace.size());
  T epoch{0};
  for (std::size_t i = 0; i < trace.size(); ++i) {
    epoch += trace.alpha[i];
    out[i] = epoch;
  }
  return out;
}

template <TimeValue T>
T departure_naive(std::span<const T> window, long long k) {
  if (window.size() > kNaiveCap) {
    throw CapacityError("naive evaluator window of " + std::to_string(window.size()) +
                        " completions exceeds cap of " + std::to_string(kNaiveCap));
  }
  std::vector<ExtTime<T>> ext(window.begin(), window.end());
  const ExtTime<T> d = kth_smallest_naive<T>(ext, k);
  if (!d.is_finite()) throw DomainError("departure rank must be >= 1");
  return d.value();
}

template <TimeValue T>
T departure_incremental(OrderStatState<T>& state, std::optional<T> c_new, long long k,
                        int servers) {
  if (k < 1) throw DomainError("departure rank must be >= 1");
  const auto rank = static_cast<std::size_t>(k);
  if (c_new) {
    if (state.count() + 1 != rank + static_cast<std::size_t>(servers) - 1) {
      throw std::logic_error("state has absorbed " + std::to_string(state.count()) +
                             " completions; D_" + std::to_string(k) + " needs " +
                             std::to_string(rank + servers - 2));
    }
    state.insert(*c_new);
  }
  const auto d = state.at(k);
  if (!d || !d->is_finite()) {
    throw std::logic_error("rank " + std::to_string(k) + " is not tracked by the state");
  }
  while (state.base() < rank) state.drop_lowest();
  return d->value();
}

template <TimeValue T>
T departure_windowed(PendingCompletions<T>& pending, std::optional<T> c_new) {
  if (c_new) pending.push(*c_new);
  if (pending.empty()) throw std::logic_error("no pending completion to depart");
  const T d = pending.top();
  pending.pop();
  return d;
}

namespace {

// Runs the shared recursion; `depart(j, c_new)` must produce D_j given that
// C_1..C_{min(j+m-1,N)} are final. c_new is C_{j+m-1}, or nullopt in the tail.
template <TimeValue T, typename Depart>
Timeline<T> run_recursion(const Trace<T>& trace, int servers, std::vector<T>& completion,
                          Depart&& depart, auto&& absorb) {
  const std::size_t n = trace.size();
  const auto m = static_cast<std::size_t>(servers);

  Timeline<T> tl;
  tl.servers = servers;
  tl.arrival = arrivals(trace);
  completion.assign(n, T{0});
  tl.departure.assign(n, T{0});
  tl.wait.assign(n, T{0});
  tl.sojourn.assign(n, T{0});

  for (std::size_t k = 1; k <= n; ++k) {
    const T a = tl.arrival[k - 1];
    const T d_prev = k > m ? tl.departure[k - m - 1] : T{0};
    const T start = std::max(a, d_prev);
    const T c = start + trace.tau[k - 1];
    completion[k - 1] = c;
    tl.wait[k - 1] = start - a;
    tl.sojourn[k - 1] = c - a;
    if (k + 1 > m) {
      const std::size_t j = k + 1 - m;
      tl.departure[j - 1] = depart(j, std::optional<T>{c});
    } else {
      absorb(c);
    }
  }
  // Finite-trace tail: no C_{j+m-1} exists, D_j orders all N completions.
  const std::size_t tail_first = n + 2 > m ? std::max<std::size_t>(1, n + 2 - m) : 1;
  for (std::size_t j = tail_first; j <= n; ++j) {
    tl.departure[j - 1] = depart(j, std::optional<T>{});
  }
  tl.completion = completion;
  return tl;
}

}  // namespace

template <TimeValue T>
Timeline<T> simulate(const Trace<T>& trace, const SimConfig& config) {
  trace.validate();
  if (config.servers < 1) throw DomainError("server count must be >= 1");
  const int m = config.servers;
  const std::size_t n = trace.size();
  std::vector<T> completion;

  switch (config.evaluator) {
    case Evaluator::naive: {
      if (n > kNaiveCap) {
        throw CapacityError("naive evaluator cannot order " + std::to_string(n) +
                            " completions (cap " + std::to_string(kNaiveCap) + ")");
      }
      auto depart = [&](std::size_t j, std::optional<T>) {
        const std::size_t len = std::min(j + static_cast<std::size_t>(m) - 1, n);
        return departure_naive<T>(std::span<const T>(completion.data(), len),
                                  static_cast<long long>(j));
      };
      return run_recursion(trace, m, completion, depart, [](T) {});
    }
    case Evaluator::incremental: {
      OrderStatState<T> state(static_cast<std::size_t>(m));
      auto depart = [&](std::size_t j, std::optional<T> c) {
        return departure_incremental(state, c, static_cast<long long>(j), m);
      };
      return run_recursion(trace, m, completion, depart, [&](T c) { state.insert(c); });
    }
    case Evaluator::windowed: {
      std::vector<T> storage;
      storage.reserve(static_cast<std::size_t>(m) + 1);
      PendingCompletions<T> pending(std::greater<T>{}, std::move(storage));
      auto depart = [&](std::size_t, std::optional<T> c) { return departure_windowed(pending, c); };
      return run_recursion(trace, m, completion, depart, [&](T c) { pending.push(c); });
    }
  }
  throw DomainError("unknown evaluator");
}

template <TimeValue T>
Timeline<T> simulate_single_server(const Trace<T>& trace) {
  trace.validate();
  const std::size_t n = trace.size();
  Timeline<T> tl;
  tl.servers = 1;
  tl.arrival = arrivals(trace);
  tl.completion.resize(n);
  tl.wait.resize(n);
  tl.sojourn.resize(n);
  T d_prev{0};
  for (std::size_t i = 0; i < n; ++i) {
    const T a = tl.arrival[i];
    const T start = std::max(a, d_prev);
    d_prev = start + trace.tau[i];
    tl.completion[i] = d_prev;
    tl.wait[i] = start - a;
    tl.sojourn[i] = d_prev - a;
  }
  tl.departure = tl.completion;
  return tl;
}

#define GGMQ_INSTANTIATE(T)                                                                    \
  template std::vector<T> arrivals(const Trace<T>&);                                          \
  template T departure_naive(std::span<const T>, long long);                                  \
  template T departure_incremental(OrderStatState<T>&, std::optional<T>, long long, int);     \
  template T departure_windowed(PendingCompletions<T>&, std::optional<T>);                    \
  template Timeline<T> simulate(const Trace<T>&, const SimConfig&);                           \
  template Timeline<T> simulate_single_server(const Trace<T>&);

GGMQ_INSTANTIATE(double)
GGMQ_INSTANTIATE(std::int64_t)

#undef GGMQ_INSTANTIATE

}  // namespace ggmq
