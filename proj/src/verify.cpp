#include "ggmq/verify.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <random>
#include <thread>

#include "ggmq/oracle.hpp"

namespace ggmq::verify {

namespace {

std::optional<std::size_t> first_difference(const std::vector<Time>& a,
                                            const std::vector<Time>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return i + 1;
  }
  if (a.size() != b.size()) return n + 1;
  return std::nullopt;
}

std::string describe(const std::vector<Time>& a, const std::vector<Time>& b, std::size_t idx) {
  auto at = [&](const std::vector<Time>& v) {
    return idx <= v.size() ? std::to_string(v[idx - 1]) : std::string("<missing>");
  };
  return "got " + at(a) + ", expected " + at(b);
}

std::optional<Mismatch> compare(std::string_view label, const Timeline<Time>& got,
                                const Timeline<Time>& want) {
  const std::pair<const char*, std::pair<const std::vector<Time>*, const std::vector<Time>*>>
      columns[] = {
          {"A", {&got.arrival, &want.arrival}},       {"C", {&got.completion, &want.completion}},
          {"D", {&got.departure, &want.departure}},   {"W", {&got.wait, &want.wait}},
          {"T", {&got.sojourn, &want.sojourn}},
      };
  for (const auto& [name, pair] : columns) {
    if (const auto idx = first_difference(*pair.first, *pair.second)) {
      return Mismatch{std::string(label) + " vs des_simulate: " + name, *idx,
                      describe(*pair.first, *pair.second, *idx)};
    }
  }
  return std::nullopt;
}

std::optional<Mismatch> check_invariants(std::string_view label, const Trace<Time>& trace,
                                         const Timeline<Time>& tl, int servers, Tally& tally) {
  const std::size_t n = tl.size();
  const auto m = static_cast<std::size_t>(servers);
  auto fail = [&](const char* what, std::size_t idx, std::string detail = {}) {
    return Mismatch{std::string(label) + ": " + what, idx, std::move(detail)};
  };
  if (tl.completion.size() != n || tl.departure.size() != n) {
    return fail("column lengths differ", 0);
  }
  for (std::size_t k = 1; k < n; ++k) {
    if (tl.departure[k] < tl.departure[k - 1]) return fail("D not nondecreasing", k + 1);
    if (tl.arrival[k] + tl.wait[k] < tl.arrival[k - 1] + tl.wait[k - 1]) {
      return fail("service starts out of FCFS order", k + 1);
    }
  }
  auto sorted_c = tl.completion;
  std::sort(sorted_c.begin(), sorted_c.end());
  if (const auto idx = first_difference(sorted_c, tl.departure)) {
    return fail("multiset {D} != {C}", *idx);
  }
  for (std::size_t k = 1; k <= n; ++k) {
    if (tl.wait[k - 1] < 0) return fail("negative wait", k);
    if (tl.completion[k - 1] < tl.arrival[k - 1] + trace.tau[k - 1]) {
      return fail("C_k < A_k + tau_k", k);
    }
    if (tl.sojourn[k - 1] < trace.tau[k - 1]) return fail("T_k < tau_k", k);
    if (k + m <= n) {
      ++tally.eq4_checks;
      if (!(tl.departure[k - 1] < tl.completion[k + m - 1])) {
        return fail("D_k < C_{k+m} violated", k,
                    std::to_string(tl.departure[k - 1]) +
                        " >= " + std::to_string(tl.completion[k + m - 1]));
      }
    }
  }
  if (servers == 2) {
    Time running_max = 0;
    for (std::size_t k = 1; k + 1 <= n; ++k) {
      running_max = std::max(running_max, tl.completion[k - 1]);
      ++tally.m2_closed_form_checks;
      if (tl.departure[k - 1] != std::min(running_max, tl.completion[k])) {
        return fail("m=2 closed form violated", k);
      }
    }
  }
  return std::nullopt;
}

Timeline<Time> short_window_engine(const Trace<Time>& trace, int servers) {
  const std::size_t n = trace.size();
  const auto m = static_cast<std::size_t>(servers);
  Timeline<Time> tl;
  tl.servers = servers;
  tl.arrival = arrivals(trace);
  tl.completion.resize(n);
  tl.departure.resize(n);
  tl.wait.resize(n);
  tl.sojourn.resize(n);
  auto kth = [&](std::size_t len, std::size_t j) {
    std::vector<Time> window(tl.completion.begin(), tl.completion.begin() + len);
    std::nth_element(window.begin(), window.begin() + (j - 1), window.end());
    return window[j - 1];
  };
  for (std::size_t k = 1; k <= n; ++k) {
    const Time a = tl.arrival[k - 1];
    const Time start = std::max(a, k > m ? tl.departure[k - m - 1] : Time{0});
    tl.completion[k - 1] = start + trace.tau[k - 1];
    tl.wait[k - 1] = start - a;
    tl.sojourn[k - 1] = tl.completion[k - 1] - a;
    if (k >= m) {
      const std::size_t j = k + 1 - m;
      tl.departure[j - 1] = kth(std::max(j, k - 1), j);
    }
  }
  for (std::size_t j = std::max<std::size_t>(1, n + 2 > m ? n + 2 - m : 1); j <= n; ++j) {
    tl.departure[j - 1] = kth(n, j);
  }
  return tl;
}

}  // namespace

std::optional<Mutant> parse_mutant(std::string_view s) {
  if (s == "none") return Mutant::none;
  if (s == "short-window") return Mutant::short_window;
  if (s == "single-server") return Mutant::single_server;
  return std::nullopt;
}

EngineUnderTest mutant_engine(Mutant mutant) {
  switch (mutant) {
    case Mutant::none: return {};
    case Mutant::short_window: return short_window_engine;
    case Mutant::single_server:
      return [](const Trace<Time>& trace, int servers) {
        auto tl = simulate_single_server(trace);
        tl.servers = servers;
        return tl;
      };
  }
  return {};
}

Case random_case(std::uint64_t seed, std::size_t max_customers, int max_servers) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::uint64_t lo, std::uint64_t hi) {
    return lo + rng() % (hi - lo + 1);
  };
  Case c;
  c.seed = seed;
  c.servers = static_cast<int>(uniform(1, static_cast<std::uint64_t>(max_servers)));
  const std::size_t small_cap = std::min<std::size_t>(kNaiveCap, max_customers);
  const std::size_t n = uniform(0, 3) == 0 ? uniform(1, small_cap) : uniform(1, max_customers);
  // Spread the load: alpha up to amax, tau up to tmax, both small so ties occur.
  const auto amax = uniform(0, 6);
  const auto tmax = uniform(1, 4 + 4 * static_cast<std::uint64_t>(c.servers));
  c.trace.alpha.resize(n);
  c.trace.tau.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.trace.alpha[i] = static_cast<Time>(uniform(0, amax));
    c.trace.tau[i] = static_cast<Time>(uniform(1, tmax));
  }
  return c;
}

std::optional<Mismatch> check_case(const Trace<Time>& trace, int servers,
                                   const EngineUnderTest& engine, Tally* tally) {
  Tally local;
  std::vector<std::pair<std::string, Timeline<Time>>> candidates;
  if (engine) {
    candidates.emplace_back("engine", engine(trace, servers));
  } else {
    SimConfig cfg{servers, Evaluator::incremental, NumericMode::integer};
    candidates.emplace_back("incremental", simulate(trace, cfg));
    cfg.evaluator = Evaluator::windowed;
    candidates.emplace_back("windowed", simulate(trace, cfg));
    if (trace.size() <= kNaiveCap) {
      cfg.evaluator = Evaluator::naive;
      candidates.emplace_back("naive", simulate(trace, cfg));
      ++local.naive_runs;
    }
    if (servers == 1) candidates.emplace_back("single_server", simulate_single_server(trace));
  }

  const auto des = oracle::des_simulate(trace, servers);
  const auto workload = oracle::workload_check(trace, servers);
  if (const auto idx = first_difference(des.wait, workload)) {
    return Mismatch{"des_simulate vs workload_check: W", *idx, describe(des.wait, workload, *idx)};
  }
  if (auto bad = check_invariants("des_simulate", trace, des, servers, local)) return bad;

  for (const auto& [label, tl] : candidates) {
    ++local.runs;
    if (auto bad = compare(label, tl, des)) return bad;
    if (const auto idx = first_difference(tl.wait, workload)) {
      return Mismatch{label + " vs workload_check: W", *idx, describe(tl.wait, workload, *idx)};
    }
    if (auto bad = check_invariants(label, trace, tl, servers, local)) return bad;
  }
  if (tally) {
    tally->runs += local.runs;
    tally->naive_runs += local.naive_runs;
    tally->eq4_checks += local.eq4_checks;
    tally->m2_closed_form_checks += local.m2_closed_form_checks;
  }
  return std::nullopt;
}

Trace<Time> shrink(Trace<Time> trace, int servers, const EngineUnderTest& engine) {
  auto fails = [&](const Trace<Time>& t) {
    try {
      return check_case(t, servers, engine).has_value();
    } catch (const std::exception&) {
      return true;
    }
  };
  auto prefix = [](const Trace<Time>& t, std::size_t len) {
    Trace<Time> p;
    p.alpha.assign(t.alpha.begin(), t.alpha.begin() + len);
    p.tau.assign(t.tau.begin(), t.tau.begin() + len);
    return p;
  };
  for (std::size_t len = 1; len < trace.size(); ++len) {
    if (auto p = prefix(trace, len); fails(p)) {
      trace = std::move(p);
      break;
    }
  }
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t i = 0; i < trace.size() && trace.size() > 1; ++i) {
      auto t = trace;
      t.alpha.erase(t.alpha.begin() + i);
      t.tau.erase(t.tau.begin() + i);
      if (fails(t)) {
        trace = std::move(t);
        progress = true;
        break;
      }
    }
  }
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t i = 0; i < trace.size(); ++i) {
      for (auto* column : {&trace.alpha, &trace.tau}) {
        const Time floor = column == &trace.alpha ? 0 : 1;
        Time& v = (*column)[i];
        for (const Time candidate : {floor, floor + (v - floor) / 2, v - 1}) {
          if (candidate < floor || candidate >= v) continue;
          const Time old = v;
          v = candidate;
          if (fails(trace)) {
            progress = true;
            break;
          }
          v = old;
        }
      }
    }
  }
  return trace;
}

Report run(const Options& options) {
  if (options.cases == 0) throw DomainError("verify needs at least one case");
  if (options.max_customers == 0) throw DomainError("max customers must be >= 1");
  if (options.max_servers < 1) throw DomainError("max servers must be >= 1");

  std::vector<std::uint64_t> seeds(options.cases);
  std::mt19937_64 master(options.seed);
  for (auto& s : seeds) s = master();

  const EngineUnderTest engine = mutant_engine(options.mutant);
  Report report;
  report.results.resize(options.cases);

  std::atomic<std::size_t> next{0};
  std::mutex tally_mutex;
  auto worker = [&] {
    Tally local;
    for (std::size_t i = next++; i < options.cases; i = next++) {
      const Case c = random_case(seeds[i], options.max_customers, options.max_servers);
      CaseResult& r = report.results[i];
      r.index = i;
      r.seed = c.seed;
      r.customers = c.trace.size();
      r.servers = c.servers;
      try {
        r.mismatch = check_case(c.trace, c.servers, engine, &local);
      } catch (const std::exception& e) {
        r.mismatch = Mismatch{"exception", 0, e.what()};
      }
    }
    std::lock_guard lock(tally_mutex);
    report.tally.runs += local.runs;
    report.tally.naive_runs += local.naive_runs;
    report.tally.eq4_checks += local.eq4_checks;
    report.tally.m2_closed_form_checks += local.m2_closed_form_checks;
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(options.cases)));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  for (const auto& r : report.results) {
    if (!r.mismatch) continue;
    ++report.failures;
    if (!report.counterexample) {
      Case c = random_case(r.seed, options.max_customers, options.max_servers);
      c.trace = shrink(std::move(c.trace), c.servers, engine);
      try {
        report.counterexample_mismatch = check_case(c.trace, c.servers, engine);
      } catch (const std::exception& e) {
        report.counterexample_mismatch = Mismatch{"exception", 0, e.what()};
      }
      report.counterexample = std::move(c);
    }
  }
  return report;
}

}  // namespace ggmq::verify
