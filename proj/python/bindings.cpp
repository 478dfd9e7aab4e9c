#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <vector>

#include "ggmq/analytic.hpp"
#include "ggmq/engine.hpp"
#include "ggmq/metrics.hpp"
#include "ggmq/oracle.hpp"
#include "ggmq/ordstat.hpp"
#include "ggmq/traces.hpp"

namespace py = pybind11;

namespace {

template <ggmq::TimeValue T>
void bind_time_type(py::module_& m, const char* suffix) {
  using Trace = ggmq::Trace<T>;
  using Timeline = ggmq::Timeline<T>;

  py::class_<Trace>(m, (std::string("Trace") + suffix).c_str())
      .def(py::init([](std::vector<T> alpha, std::vector<T> tau) {
             Trace t{std::move(alpha), std::move(tau)};
             t.validate();
             return t;
           }),
           py::arg("alpha"), py::arg("tau"))
      .def_readonly("alpha", &Trace::alpha)
      .def_readonly("tau", &Trace::tau)
      .def("__len__", &Trace::size);

  py::class_<Timeline>(m, (std::string("Timeline") + suffix).c_str())
      .def_readonly("servers", &Timeline::servers)
      .def_readonly("A", &Timeline::arrival)
      .def_readonly("C", &Timeline::completion)
      .def_readonly("D", &Timeline::departure)
      .def_readonly("W", &Timeline::wait)
      .def_readonly("T", &Timeline::sojourn)
      .def("__len__", &Timeline::size)
      .def("__eq__", [](const Timeline& a, const Timeline& b) { return a == b; });

  m.def("simulate",
        [](const Trace& trace, int servers, const std::string& evaluator) {
          const auto e = ggmq::parse_evaluator(evaluator);
          if (!e) throw ggmq::DomainError("unknown evaluator '" + evaluator + "'");
          const auto mode =
              std::is_same_v<T, double> ? ggmq::NumericMode::f64 : ggmq::NumericMode::integer;
          return ggmq::simulate(trace, ggmq::SimConfig{servers, *e, mode});
        },
        py::arg("trace"), py::arg("servers"), py::arg("evaluator") = "windowed");
  m.def("simulate_single_server", &ggmq::simulate_single_server<T>, py::arg("trace"));
  m.def("des_simulate", &ggmq::oracle::des_simulate<T>, py::arg("trace"), py::arg("servers"));
  m.def("workload_check", &ggmq::oracle::workload_check<T>, py::arg("trace"), py::arg("servers"));
  m.def("metrics", [](const Timeline& tl) { return ggmq::to_json(ggmq::compute_metrics(tl)).dump(); },
        py::arg("timeline"));
  m.def("kth_smallest_naive",
        [](const std::vector<T>& values, long long k) -> py::object {
          std::vector<ggmq::ExtTime<T>> ext(values.begin(), values.end());
          const auto r = ggmq::kth_smallest_naive<T>(ext, k);
          return r.is_finite() ? py::cast(r.value()) : py::none();
        },
        py::arg("values"), py::arg("k"));
  m.def("kth_smallest_reference",
        [](const std::vector<T>& values, long long k) -> py::object {
          std::vector<ggmq::ExtTime<T>> ext(values.begin(), values.end());
          const auto r = ggmq::kth_smallest_reference<T>(ext, k);
          return r.is_finite() ? py::cast(r.value()) : py::none();
        },
        py::arg("values"), py::arg("k"));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact G/G/m FCFS queue dynamics from max/min/plus recursions.";

  // Translators run most-recently-registered first, so the base goes first.
  auto domain = py::register_exception<ggmq::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ggmq::TraceError>(m, "TraceError", domain.ptr());
  py::register_exception<ggmq::CapacityError>(m, "CapacityError", PyExc_ValueError);
  py::register_exception<ggmq::ParseError>(m, "ParseError", PyExc_ValueError);

  // Integer overloads first: pybind11 tries them in order and rejects floats.
  bind_time_type<std::int64_t>(m, "Int");
  bind_time_type<double>(m, "");

  m.def("generate",
        [](std::size_t n, const std::string& arrival, const std::string& service,
           std::uint64_t seed) {
          ggmq::GenSpec spec{ggmq::Distribution::parse(arrival), ggmq::Distribution::parse(service),
                             n, seed};
          return ggmq::generate<double>(spec);
        },
        py::arg("n"), py::arg("arrival"), py::arg("service"), py::arg("seed") = 1);
  m.def("load_trace", [](const std::string& path) {
    const auto format = ggmq::format_from_path(path);
    if (!format) throw ggmq::DomainError("unknown trace extension: " + path);
    return ggmq::load_trace<double>(path, *format);
  });
  m.def("erlang_c", &ggmq::analytic::erlang_c, py::arg("servers"), py::arg("lam"), py::arg("mu"));
  m.def("mmm_mean_wait", &ggmq::analytic::mmm_mean_wait, py::arg("servers"), py::arg("lam"),
        py::arg("mu"));
  m.attr("NAIVE_CAP") = ggmq::kNaiveCap;

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
