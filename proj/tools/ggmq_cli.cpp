// ggmq: simulate, verify, gen and metrics front end.
//
// Exit codes:
//   0  success
//   1  verification mismatch (verify, or simulate --check)
//   2  bad command-line arguments or generator parameters
//   3  trace or timeline file errors (unreadable, malformed, invalid values)
//   4  capacity error (naive evaluator asked to order too many completions)

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "ggmq/engine.hpp"
#include "ggmq/metrics.hpp"
#include "ggmq/oracle.hpp"
#include "ggmq/traces.hpp"
#include "ggmq/verify.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTrace = 3;
constexpr int kExitCapacity = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "n=1000;arrival=exp:4;service=exp:1;seed=7"
ggmq::GenSpec parse_gen_spec(const std::string& text) {
  ggmq::GenSpec spec;
  bool have_arrival = false;
  bool have_service = false;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--gen item '" + item + "' must be key=value");
    const auto key = item.substr(0, eq);
    const auto value = item.substr(eq + 1);
    try {
      if (key == "n") {
        spec.n = std::stoull(value);
      } else if (key == "seed") {
        spec.seed = std::stoull(value);
      } else if (key == "arrival") {
        spec.arrival = ggmq::Distribution::parse(value);
        have_arrival = true;
      } else if (key == "service") {
        spec.service = ggmq::Distribution::parse(value);
        have_service = true;
      } else {
        throw UsageError("unknown --gen key '" + key + "'");
      }
    } catch (const std::logic_error& e) {
      throw UsageError("--gen " + key + ": " + e.what());
    }
  }
  if (!have_arrival || !have_service) throw UsageError("--gen needs arrival= and service=");
  return spec;
}

void write_file(const std::string& path, const auto& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  writer(out);
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  int servers = 0;
  std::string trace_path;
  std::string trace_format;
  std::string gen;
  std::string evaluator = "windowed";
  std::string mode = "f64";
  std::string out;
  std::string report;
  bool check = false;
  bool pretty = false;
};

template <ggmq::TimeValue T>
json cross_check(const ggmq::Trace<T>& trace, const ggmq::Timeline<T>& tl, int servers) {
  // Exact in integer mode, 1e-9 absolute in f64 mode.
  const double tol = std::is_same_v<T, double> ? 1e-9 : 0.0;
  auto first_off = [&](const std::vector<T>& a, const std::vector<T>& b) -> json {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::abs(static_cast<double>(a[i]) - static_cast<double>(b[i])) > tol) return i + 1;
    }
    return nullptr;
  };
  const auto des = ggmq::oracle::des_simulate(trace, servers);
  const auto workload = ggmq::oracle::workload_check(trace, servers);
  json des_mismatch = nullptr;
  for (auto col : {&ggmq::Timeline<T>::completion, &ggmq::Timeline<T>::departure,
                          &ggmq::Timeline<T>::wait}) {
    des_mismatch = first_off(tl.*col, des.*col);
    if (!des_mismatch.is_null()) break;
  }
  const json wl_mismatch = first_off(tl.wait, workload);
  return {
      {"des_simulate", {{"pass", des_mismatch.is_null()}, {"first_mismatch", des_mismatch}}},
      {"workload_check", {{"pass", wl_mismatch.is_null()}, {"first_mismatch", wl_mismatch}}},
      {"tolerance", tol},
  };
}

template <ggmq::TimeValue T>
int run_simulate(const SimulateArgs& args, ggmq::Evaluator evaluator, ggmq::NumericMode mode) {
  ggmq::Trace<T> trace;
  if (!args.gen.empty()) {
    const auto spec = parse_gen_spec(args.gen);
    try {
      trace = ggmq::generate<T>(spec);
    } catch (const ggmq::DomainError& e) {
      throw UsageError(e.what());
    }
  } else {
    auto format = ggmq::format_from_path(args.trace_path);
    if (!args.trace_format.empty()) {
      format = args.trace_format == "jsonl" ? ggmq::TraceFormat::jsonl : ggmq::TraceFormat::csv;
    }
    if (!format) throw UsageError("cannot infer trace format of " + args.trace_path + "; pass --format");
    trace = ggmq::load_trace<T>(args.trace_path, *format);
  }

  const ggmq::SimConfig config{args.servers, evaluator, mode};
  const auto timeline = ggmq::simulate(trace, config);
  write_file(args.out, [&](std::ostream& os) { ggmq::write_timeline_csv(os, timeline); });
  const auto metrics = ggmq::compute_metrics(timeline);

  json verdict = nullptr;
  bool pass = true;
  if (args.check) {
    verdict = cross_check(trace, timeline, args.servers);
    pass = verdict["des_simulate"]["pass"].get<bool>() &&
           verdict["workload_check"]["pass"].get<bool>();
    verdict["verdict"] = pass ? "PASS" : "FAIL";
  }
  if (!args.report.empty()) {
    const json report = {
        {"config",
         {{"servers", args.servers},
          {"evaluator", ggmq::to_string(evaluator)},
          {"mode", ggmq::to_string(mode)},
          {"trace", args.gen.empty() ? args.trace_path : "gen:" + args.gen}}},
        {"timeline", args.out},
        {"metrics", ggmq::to_json(metrics)},
        {"verification", verdict},
    };
    write_file(args.report, [&](std::ostream& os) { os << report.dump(2) << '\n'; });
  }
  if (args.pretty) {
    std::cout << ggmq::to_table(metrics);
  } else {
    std::cout << ggmq::to_json(metrics).dump() << '\n';
  }
  return pass ? kExitOk : kExitMismatch;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  long long cases = 1000;
  long long max_customers = 200;
  int max_servers = 8;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::string mutant = "none";
  std::optional<std::uint64_t> replay;
  bool quiet = false;
};

json trace_json(const ggmq::Trace<std::int64_t>& t) {
  return {{"alpha", t.alpha}, {"tau", t.tau}};
}

int run_verify(const VerifyArgs& args) {
  if (args.cases < 1) throw UsageError("--cases must be >= 1");
  if (args.max_customers < 1) throw UsageError("--max-customers must be >= 1");
  if (args.max_servers < 1) throw UsageError("--max-servers must be >= 1");
  const auto mutant = ggmq::verify::parse_mutant(args.mutant);
  if (!mutant) throw UsageError("unknown --mutant '" + args.mutant + "'");

  if (args.replay) {
    const auto c = ggmq::verify::random_case(*args.replay, static_cast<std::size_t>(args.max_customers),
                                             args.max_servers);
    const auto mm = ggmq::verify::check_case(c.trace, c.servers, ggmq::verify::mutant_engine(*mutant));
    json out = {{"seed", c.seed},
                {"servers", c.servers},
                {"customers", c.trace.size()},
                {"ok", !mm},
                {"trace", trace_json(c.trace)}};
    if (mm) out["mismatch"] = {{"check", mm->check}, {"index", mm->index}, {"detail", mm->detail}};
    std::cout << out.dump(2) << '\n';
    return mm ? kExitMismatch : kExitOk;
  }

  ggmq::verify::Options opt;
  opt.cases = static_cast<std::size_t>(args.cases);
  opt.max_customers = static_cast<std::size_t>(args.max_customers);
  opt.max_servers = args.max_servers;
  opt.seed = args.seed;
  opt.threads = args.threads;
  opt.mutant = *mutant;
  const auto report = ggmq::verify::run(opt);

  json results = json::array();
  for (const auto& r : report.results) {
    json entry = {{"case", r.index},
                  {"seed", r.seed},
                  {"customers", r.customers},
                  {"servers", r.servers},
                  {"ok", !r.mismatch}};
    if (r.mismatch) entry["mismatch"] = r.mismatch->check;
    if (!args.quiet || r.mismatch) results.push_back(std::move(entry));
  }
  json out = {{"mode", "int"},
              {"cases", opt.cases},
              {"seed", opt.seed},
              {"max_customers", opt.max_customers},
              {"max_servers", opt.max_servers},
              {"failures", report.failures},
              {"evaluator_runs", report.tally.runs},
              {"naive_runs", report.tally.naive_runs},
              {"eq4_checks", report.tally.eq4_checks},
              {"verdict", report.failures == 0 ? "PASS" : "FAIL"},
              {"results", results}};
  if (report.counterexample) {
    const auto& c = *report.counterexample;
    json cx = {{"seed", c.seed}, {"servers", c.servers}, {"trace", trace_json(c.trace)}};
    if (const auto& mm = report.counterexample_mismatch) {
      cx["check"] = mm->check;
      cx["index"] = mm->index;
      cx["detail"] = mm->detail;
    }
    out["counterexample"] = cx;
    std::cerr << "verify: " << report.failures << " of " << opt.cases
              << " cases failed; minimal counterexample (m=" << c.servers << "):\n";
    ggmq::write_trace_csv(std::cerr, c.trace);
  }
  std::cout << out.dump(2) << '\n';
  return report.failures == 0 ? kExitOk : kExitMismatch;
}

// --------------------------------------------------------------------- gen

struct GenArgs {
  long long n = 0;
  std::string arrival;
  std::string service;
  std::uint64_t seed = 1;
  std::string mode = "f64";
  std::string out;
};

int run_gen(const GenArgs& args) {
  if (args.n < 1) throw UsageError("--n must be >= 1");
  ggmq::GenSpec spec;
  spec.n = static_cast<std::size_t>(args.n);
  spec.seed = args.seed;
  const auto mode = ggmq::parse_numeric_mode(args.mode);
  if (!mode) throw UsageError("unknown --mode '" + args.mode + "'");
  try {
    spec.arrival = ggmq::Distribution::parse(args.arrival);
    spec.service = ggmq::Distribution::parse(args.service);
    if (*mode == ggmq::NumericMode::integer) {
      const auto trace = ggmq::generate<std::int64_t>(spec);
      write_file(args.out, [&](std::ostream& os) { ggmq::write_trace_csv(os, trace); });
    } else {
      const auto trace = ggmq::generate<double>(spec);
      write_file(args.out, [&](std::ostream& os) { ggmq::write_trace_csv(os, trace); });
    }
  } catch (const ggmq::DomainError& e) {
    throw UsageError(e.what());
  }
  return kExitOk;
}

// ----------------------------------------------------------------- metrics

struct MetricsArgs {
  std::string timeline;
  int servers = 0;
  std::string mode = "f64";
  bool pretty = false;
};

int run_metrics(const MetricsArgs& args) {
  std::ifstream in(args.timeline, std::ios::binary);
  if (!in) throw ggmq::TraceError("cannot open " + args.timeline, 0);
  const auto mode = ggmq::parse_numeric_mode(args.mode);
  if (!mode) throw UsageError("unknown --mode '" + args.mode + "'");
  const auto metrics = *mode == ggmq::NumericMode::integer
                           ? ggmq::compute_metrics(ggmq::read_timeline_csv<std::int64_t>(in, args.servers))
                           : ggmq::compute_metrics(ggmq::read_timeline_csv<double>(in, args.servers));
  std::cout << (args.pretty ? ggmq::to_table(metrics) : ggmq::to_json(metrics).dump() + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact G/G/m FCFS queue dynamics from max/min/plus recursions"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Compute the per-customer timeline of a trace");
  simulate->add_option("--servers", sim.servers, "Number of parallel servers")
      ->required()
      ->check(CLI::PositiveNumber);
  auto* trace_opt = simulate->add_option("--trace", sim.trace_path, "Trace file (CSV or JSONL)");
  auto* gen_opt = simulate->add_option(
      "--gen", sim.gen, "Generate instead of loading, e.g. 'n=1000;arrival=exp:4;service=exp:1;seed=7'");
  trace_opt->excludes(gen_opt);
  simulate->add_option("--format", sim.trace_format, "Trace format override")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  simulate->add_option("--evaluator", sim.evaluator, "naive | incremental | windowed")
      ->check(CLI::IsMember({"naive", "incremental", "windowed"}));
  simulate->add_option("--mode", sim.mode, "f64 | int")->check(CLI::IsMember({"f64", "int"}));
  simulate->add_option("--out", sim.out, "Timeline CSV output path")->required();
  simulate->add_option("--report", sim.report, "Write a JSON run report");
  simulate->add_flag("--check", sim.check, "Cross-check against the DES and workload oracles");
  simulate->add_flag("--pretty", sim.pretty, "Human-readable metrics table");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Randomized cross-validation against the oracles");
  verify->add_option("--cases", ver.cases, "Number of random cases");
  verify->add_option("--max-customers", ver.max_customers, "Largest trace length");
  verify->add_option("--max-servers", ver.max_servers, "Largest server count");
  verify->add_option("--seed", ver.seed, "Master seed");
  verify->add_option("--threads", ver.threads, "Worker threads (0 = all cores)");
  verify->add_option("--mutant", ver.mutant, "Inject a known-bad engine: short-window | single-server");
  verify->add_option("--replay", ver.replay,
                     "Re-run the single case with this per-case seed (same --max-* flags)");
  verify->add_flag("--quiet", ver.quiet, "List only failing cases in the report");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random trace");
  gen_cmd->add_option("--n", gen.n, "Customer count")->required();
  gen_cmd->add_option("--arrival", gen.arrival, "det:X | exp:RATE | unif:A,B | uint:A,B")->required();
  gen_cmd->add_option("--service", gen.service, "det:X | exp:RATE | unif:A,B | uint:A,B")->required();
  gen_cmd->add_option("--seed", gen.seed, "RNG seed (mt19937_64)");
  gen_cmd->add_option("--mode", gen.mode, "f64 | int")->check(CLI::IsMember({"f64", "int"}));
  gen_cmd->add_option("--out", gen.out, "Trace CSV output path")->required();

  MetricsArgs met;
  auto* metrics = app.add_subcommand("metrics", "Summarize an existing timeline CSV");
  metrics->add_option("--timeline", met.timeline, "Timeline CSV")->required();
  metrics->add_option("--servers", met.servers, "Server count used for the timeline")
      ->required()
      ->check(CLI::PositiveNumber);
  metrics->add_option("--mode", met.mode, "f64 | int")->check(CLI::IsMember({"f64", "int"}));
  metrics->add_flag("--pretty", met.pretty, "Human-readable table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*simulate) {
      if (sim.trace_path.empty() && sim.gen.empty()) throw UsageError("simulate needs --trace or --gen");
      const auto evaluator = *ggmq::parse_evaluator(sim.evaluator);
      const auto mode = *ggmq::parse_numeric_mode(sim.mode);
      return mode == ggmq::NumericMode::integer
                 ? run_simulate<std::int64_t>(sim, evaluator, mode)
                 : run_simulate<double>(sim, evaluator, mode);
    }
    if (*verify) return run_verify(ver);
    if (*gen_cmd) return run_gen(gen);
    if (*metrics) return run_metrics(met);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ggmq::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const ggmq::TraceError& e) {
    std::cerr << "trace error: " << e.what() << '\n';
    return kExitTrace;
  } catch (const ggmq::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitTrace;
  } catch (const ggmq::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
