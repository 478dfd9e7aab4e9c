#include "ggmq/traces.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <vector>

#include <nlohmann/json.hpp>

namespace ggmq {

namespace {

bool is_integral(double v) {
  return std::isfinite(v) && std::floor(v) == v &&
         std::abs(v) < 9.007199254740992e15;  // 2^53
}

std::optional<double> parse_double(std::string_view s) {
  double v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return v;
}

template <TimeValue T>
std::optional<T> parse_time(std::string_view s) {
  if constexpr (std::is_same_v<T, std::int64_t>) {
    std::int64_t v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec == std::errc{} && ptr == end) return v;
    const auto d = parse_double(s);
    if (d && is_integral(*d)) return static_cast<std::int64_t>(*d);
    return std::nullopt;
  } else {
    return parse_double(s);
  }
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view chomp(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

double uniform_open01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t range) {
  // range == 0 encodes the full 2^64 span.
  if (range == 0) return rng();
  const std::uint64_t threshold = (0 - range) % range;
  while (true) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % range;
  }
}

double draw(const Distribution& d, std::mt19937_64& rng) {
  switch (d.kind) {
    case Distribution::Kind::deterministic: return d.a;
    case Distribution::Kind::exponential: return -std::log(uniform_open01(rng)) / d.a;
    case Distribution::Kind::uniform: return d.a + (d.b - d.a) * uniform_open01(rng);
    case Distribution::Kind::uniform_int: {
      const auto lo = static_cast<std::int64_t>(d.a);
      const auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(d.b) - lo) + 1;
      return static_cast<double>(lo + static_cast<std::int64_t>(bounded(rng, span)));
    }
  }
  return 0;
}

void validate_distribution(const Distribution& d, bool service, bool integer_mode) {
  const char* role = service ? "service" : "arrival";
  auto fail = [&](const std::string& why) {
    throw DomainError(std::string(role) + " distribution " + d.to_string() + ": " + why);
  };
  if (!std::isfinite(d.a) || !std::isfinite(d.b)) fail("parameters must be finite");
  switch (d.kind) {
    case Distribution::Kind::deterministic:
      if (service ? !(d.a > 0) : !(d.a >= 0)) fail(service ? "value must be > 0" : "value must be >= 0");
      if (integer_mode && !is_integral(d.a)) fail("integer mode needs an integral value");
      break;
    case Distribution::Kind::exponential:
      if (!(d.a > 0)) fail("rate must be > 0");
      if (integer_mode) fail("continuous distribution in integer mode");
      break;
    case Distribution::Kind::uniform:
      if (!(d.a >= 0) || !(d.b >= d.a)) fail("need 0 <= a <= b");
      if (service && !(d.b > 0)) fail("service support must exceed 0");
      if (integer_mode) fail("continuous distribution in integer mode");
      break;
    case Distribution::Kind::uniform_int:
      if (!is_integral(d.a) || !is_integral(d.b)) fail("bounds must be integers");
      if (!(d.b >= d.a)) fail("need a <= b");
      if (service ? !(d.a >= 1) : !(d.a >= 0)) fail(service ? "need a >= 1" : "need a >= 0");
      break;
  }
}

[[noreturn]] void rethrow_with_line(const TraceError& e, std::size_t header_lines) {
  if (e.index() == 0) throw;
  throw TraceError(std::string(e.what()) + " (line " + std::to_string(e.index() + header_lines) +
                       ")",
                   e.index());
}

}  // namespace

Distribution Distribution::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw DomainError("distribution '" + std::string(text) + "' must look like kind:params");
  }
  const auto kind = text.substr(0, colon);
  const auto params = split(text.substr(colon + 1), ',');
  std::vector<double> values;
  for (auto p : params) {
    const auto v = parse_double(p);
    if (!v) throw DomainError("bad number '" + std::string(p) + "' in distribution");
    values.push_back(*v);
  }
  Distribution d;
  auto expect = [&](std::size_t count) {
    if (values.size() != count) {
      throw DomainError("distribution '" + std::string(text) + "' expects " +
                        std::to_string(count) + " parameter(s)");
    }
  };
  if (kind == "det") {
    expect(1);
    d.kind = Kind::deterministic;
  } else if (kind == "exp") {
    expect(1);
    d.kind = Kind::exponential;
  } else if (kind == "unif") {
    expect(2);
    d.kind = Kind::uniform;
  } else if (kind == "uint") {
    expect(2);
    d.kind = Kind::uniform_int;
  } else {
    throw DomainError("unknown distribution kind '" + std::string(kind) + "'");
  }
  d.a = values[0];
  d.b = values.size() > 1 ? values[1] : 0;
  return d;
}

std::string Distribution::to_string() const {
  switch (kind) {
    case Kind::deterministic: return "det:" + format_time(a);
    case Kind::exponential: return "exp:" + format_time(a);
    case Kind::uniform: return "unif:" + format_time(a) + "," + format_time(b);
    case Kind::uniform_int: return "uint:" + format_time(a) + "," + format_time(b);
  }
  return "?";
}

double Distribution::mean() const {
  switch (kind) {
    case Kind::deterministic: return a;
    case Kind::exponential: return 1.0 / a;
    case Kind::uniform:
    case Kind::uniform_int: return 0.5 * (a + b);
  }
  return 0;
}

void GenSpec::validate(bool integer_mode) const {
  if (n == 0) throw DomainError("customer count must be >= 1");
  validate_distribution(arrival, false, integer_mode);
  validate_distribution(service, true, integer_mode);
}

template <TimeValue T>
Trace<T> generate(const GenSpec& spec) {
  spec.validate(std::is_same_v<T, std::int64_t>);
  std::mt19937_64 rng(spec.seed);
  Trace<T> trace;
  trace.alpha.reserve(spec.n);
  trace.tau.reserve(spec.n);
  for (std::size_t k = 0; k < spec.n; ++k) {
    trace.alpha.push_back(static_cast<T>(draw(spec.arrival, rng)));
    trace.tau.push_back(static_cast<T>(draw(spec.service, rng)));
  }
  trace.validate();
  return trace;
}

std::optional<TraceFormat> format_from_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".csv") return TraceFormat::csv;
  if (ext == ".jsonl" || ext == ".json") return TraceFormat::jsonl;
  return std::nullopt;
}

template <TimeValue T>
Trace<T> read_trace_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty trace file, expected header", 1);
  ++lineno;
  if (chomp(line) != "k,alpha,tau") {
    throw ParseError("expected header 'k,alpha,tau', got '" + std::string(chomp(line)) + "'", 1);
  }
  Trace<T> trace;
  while (std::getline(in, line)) {
    ++lineno;
    const auto row = chomp(line);
    if (row.empty()) continue;
    const auto fields = split(row, ',');
    if (fields.size() != 3) {
      throw ParseError("expected 3 fields, got " + std::to_string(fields.size()), lineno);
    }
    std::size_t k = 0;
    auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), k);
    if (ec != std::errc{} || ptr != fields[0].data() + fields[0].size()) {
      throw ParseError("bad customer index '" + std::string(fields[0]) + "'", lineno);
    }
    if (k != trace.size() + 1) {
      throw ParseError("customer index " + std::to_string(k) + " out of sequence, expected " +
                           std::to_string(trace.size() + 1),
                       lineno);
    }
    const auto alpha = parse_time<T>(fields[1]);
    const auto tau = parse_time<T>(fields[2]);
    if (!alpha) throw ParseError("bad alpha '" + std::string(fields[1]) + "'", lineno);
    if (!tau) throw ParseError("bad tau '" + std::string(fields[2]) + "'", lineno);
    trace.alpha.push_back(*alpha);
    trace.tau.push_back(*tau);
  }
  try {
    trace.validate();
  } catch (const TraceError& e) {
    rethrow_with_line(e, 1);
  }
  return trace;
}

template <TimeValue T>
Trace<T> read_trace_jsonl(std::istream& in) {
  Trace<T> trace;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (chomp(line).empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(chomp(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(e.what(), lineno);
    }
    if (!obj.is_object()) throw ParseError("expected a JSON object", lineno);
    auto field = [&](const char* name) -> T {
      const auto it = obj.find(name);
      if (it == obj.end() || !it->is_number()) {
        throw ParseError(std::string("missing numeric field '") + name + "'", lineno);
      }
      if constexpr (std::is_same_v<T, std::int64_t>) {
        if (it->is_number_integer()) return it->template get<std::int64_t>();
        const double d = it->template get<double>();
        if (!is_integral(d)) throw ParseError(std::string(name) + " is not integral", lineno);
        return static_cast<std::int64_t>(d);
      } else {
        return it->template get<double>();
      }
    };
    if (const auto k = obj.find("k"); k != obj.end()) {
      if (!k->is_number_unsigned() || k->get<std::size_t>() != trace.size() + 1) {
        throw ParseError("customer index out of sequence", lineno);
      }
    }
    trace.alpha.push_back(field("alpha"));
    trace.tau.push_back(field("tau"));
  }
  if (trace.alpha.empty()) throw ParseError("no records", lineno + 1);
  trace.validate();
  return trace;
}

template <TimeValue T>
Trace<T> load_trace(const std::filesystem::path& path, TraceFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TraceError("cannot open " + path.string(), 0);
  return format == TraceFormat::csv ? read_trace_csv<T>(in) : read_trace_jsonl<T>(in);
}

template <TimeValue T>
std::string format_time(T value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

template <TimeValue T>
void write_trace_csv(std::ostream& out, const Trace<T>& trace) {
  out << "k,alpha,tau\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out << i + 1 << ',' << format_time(trace.alpha[i]) << ',' << format_time(trace.tau[i]) << '\n';
  }
}

template <TimeValue T>
void write_timeline_csv(std::ostream& out, const Timeline<T>& tl) {
  out << "k,A,C,D,W,T\n";
  for (std::size_t i = 0; i < tl.size(); ++i) {
    out << i + 1 << ',' << format_time(tl.arrival[i]) << ',' << format_time(tl.completion[i])
        << ',' << format_time(tl.departure[i]) << ',' << format_time(tl.wait[i]) << ','
        << format_time(tl.sojourn[i]) << '\n';
  }
}

template <TimeValue T>
Timeline<T> read_timeline_csv(std::istream& in, int servers) {
  std::string line;
  if (!std::getline(in, line) || chomp(line) != "k,A,C,D,W,T") {
    throw ParseError("expected header 'k,A,C,D,W,T'", 1);
  }
  Timeline<T> tl;
  tl.servers = servers;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const auto row = chomp(line);
    if (row.empty()) continue;
    const auto fields = split(row, ',');
    if (fields.size() != 6) throw ParseError("expected 6 fields", lineno);
    if (fields[0] != std::to_string(tl.size() + 1)) {
      throw ParseError("customer index out of sequence", lineno);
    }
    std::vector<T>* columns[] = {&tl.arrival, &tl.completion, &tl.departure, &tl.wait,
                                 &tl.sojourn};
    for (std::size_t c = 0; c < 5; ++c) {
      const auto v = parse_time<T>(fields[c + 1]);
      if (!v) throw ParseError("bad value '" + std::string(fields[c + 1]) + "'", lineno);
      columns[c]->push_back(*v);
    }
  }
  return tl;
}

#define GGMQ_INSTANTIATE(T)                                                  \
  template Trace<T> generate(const GenSpec&);                               \
  template Trace<T> read_trace_csv(std::istream&);                          \
  template Trace<T> read_trace_jsonl(std::istream&);                        \
  template Trace<T> load_trace(const std::filesystem::path&, TraceFormat);  \
  template void write_trace_csv(std::ostream&, const Trace<T>&);            \
  template void write_timeline_csv(std::ostream&, const Timeline<T>&);      \
  template Timeline<T> read_timeline_csv(std::istream&, int);               \
  template std::string format_time(T);

GGMQ_INSTANTIATE(double)
GGMQ_INSTANTIATE(std::int64_t)

#undef GGMQ_INSTANTIATE

}  // namespace ggmq
