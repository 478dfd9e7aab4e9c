#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>

#include "ggmq/analytic.hpp"
#include "ggmq/engine.hpp"
#include "ggmq/metrics.hpp"

using I = std::int64_t;

namespace {

// Textbook Erlang C, straight from the factorial sums.
double erlang_c_by_sums(int m, double lambda, double mu) {
  const double a = lambda / mu;
  double term = 1.0;
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    sum += term;
    term *= a / (i + 1);
  }
  const double top = term / (1.0 - a / m);
  return top / (sum + top);
}

}  // namespace

TEST_CASE("metrics of the m=2 example") {
  const auto tl = ggmq::simulate<I>({{0, 0, 0}, {5, 1, 1}}, ggmq::SimConfig{2});
  const auto m = ggmq::compute_metrics(tl);
  CHECK(m.n == 3);
  CHECK(m.servers == 2);
  CHECK(m.mean_wait == doctest::Approx(1.0 / 3.0));
  CHECK(m.max_wait == 1.0);
  CHECK(m.mean_sojourn == doctest::Approx(8.0 / 3.0));
  CHECK(m.throughput == doctest::Approx(3.0 / 5.0));
  CHECK(m.utilization == doctest::Approx(7.0 / (2.0 * 5.0)));
  CHECK(m.wait_p50 == 0.0);
  CHECK(m.wait_p99 == 1.0);
}

TEST_CASE("metrics edge cases") {
  const auto single = ggmq::compute_metrics(ggmq::simulate<I>({{4}, {2}}, ggmq::SimConfig{1}));
  CHECK(single.mean_wait == 0.0);
  CHECK(single.max_sojourn == 2.0);

  CHECK_THROWS_AS(ggmq::compute_metrics(ggmq::Timeline<I>{}), ggmq::DomainError);

  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    ggmq::Trace<I> t;
    I max_tau = 0;
    for (std::size_t i = 0; i < 1 + rng() % 50; ++i) {
      t.alpha.push_back(static_cast<I>(rng() % 4));
      t.tau.push_back(1 + static_cast<I>(rng() % 9));
      max_tau = std::max(max_tau, t.tau.back());
    }
    const auto m = ggmq::compute_metrics(ggmq::simulate(t, ggmq::SimConfig{2}));
    REQUIRE(m.max_sojourn >= static_cast<double>(max_tau));
    REQUIRE(m.utilization <= 1.0);
  }
}

TEST_CASE("metrics JSON has exactly the published keys") {
  const auto m = ggmq::compute_metrics(ggmq::simulate<I>({{1, 1}, {3, 3}}, ggmq::SimConfig{1}));
  const auto j = ggmq::to_json(m);
  CHECK(j.size() == 7);
  for (const char* key : {"n", "m", "mean_wait", "max_wait", "mean_sojourn", "throughput", "utilization"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["mean_wait"].get<double>() == 1.0);
  CHECK(ggmq::to_table(m).find("mean wait") != std::string::npos);
}

TEST_CASE("Erlang C") {
  // Reference values from the factorial-sum formula, evaluated offline.
  CHECK(ggmq::analytic::erlang_c(5, 4, 1) == doctest::Approx(0.5541125541125542).epsilon(1e-12));
  CHECK(ggmq::analytic::mmm_mean_wait(5, 4, 1) == doctest::Approx(0.5541125541125542).epsilon(1e-12));
  CHECK(ggmq::analytic::mmm_mean_wait(1, 0.5, 1) == doctest::Approx(1.0));
  CHECK(ggmq::analytic::mmm_mean_wait(3, 2.5, 1) == doctest::Approx(1.404494382022472));
  for (int m = 1; m <= 30; ++m) {
    for (double rho : {0.1, 0.5, 0.9, 0.99}) {
      const double lambda = rho * m * 2.0;
      REQUIRE(ggmq::analytic::erlang_c(m, lambda, 2.0) ==
              doctest::Approx(erlang_c_by_sums(m, lambda, 2.0)).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(ggmq::analytic::erlang_c(2, 2, 1), ggmq::DomainError);
  CHECK_THROWS_AS(ggmq::analytic::erlang_c(0, 1, 1), ggmq::DomainError);
  CHECK_THROWS_AS(ggmq::analytic::erlang_c(2, -1, 1), ggmq::DomainError);
}
