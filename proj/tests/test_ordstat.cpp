#include <doctest.h>

#include <algorithm>
#include <bit>
#include <optional>
#include <cstdint>
#include <random>
#include <vector>

#include "ggmq/ordstat.hpp"

using ggmq::ExtTime;
using ggmq::OrderStatState;
using I = std::int64_t;
using X = ExtTime<I>;

namespace {

std::vector<X> ext(std::initializer_list<I> values) { return {values.begin(), values.end()}; }

// Minimum over k-subsets of {1..n+1} that contain index n+1, by brute force.
X min_over_subsets_with_last(const std::vector<X>& values, int k) {
  const int n = static_cast<int>(values.size()) - 1;
  std::optional<X> best;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != k - 1) continue;
    X mx = values[static_cast<std::size_t>(n)];
    for (int j = 0; j < n; ++j) {
      if (mask & (1u << j)) mx = ggmq::vee(mx, values[static_cast<std::size_t>(j)]);
    }
    best = best ? ggmq::wedge(*best, mx) : mx;
  }
  return *best;
}

}  // namespace

TEST_CASE("ExtTime sentinel algebra") {
  const X neg = X::neg_inf();
  for (I v : {-5, 0, 3, 1'000'000}) {
    CHECK(ggmq::vee(neg, X{v}) == X{v});
    CHECK(ggmq::vee(X{v}, neg) == X{v});
    CHECK(ggmq::wedge(neg, X{v}).is_neg_inf());
    CHECK(ggmq::wedge(X{v}, neg).is_neg_inf());
    CHECK(neg < X{v});
  }
  CHECK(ggmq::vee(neg, neg).is_neg_inf());
  CHECK(X{2} < X{3});
  CHECK(ggmq::vee(X{2}, X{3}) == X{3});
  CHECK(ggmq::wedge(X{2}, X{3}) == X{2});
  CHECK(ExtTime<double>{1.5} > ExtTime<double>{-1e300});
}

TEST_CASE("kth_smallest_naive examples") {
  CHECK(ggmq::kth_smallest_naive<I>(ext({3, 1, 2}), 2) == X{2});
  CHECK(ggmq::kth_smallest_naive<I>(ext({7}), 1) == X{7});
  CHECK(ggmq::kth_smallest_naive<I>(ext({5, 5, 1}), 2) == X{5});
  CHECK(ggmq::kth_smallest_naive<I>(ext({5, 5, 1}), 0).is_neg_inf());
  CHECK(ggmq::kth_smallest_naive<I>(ext({5, 5, 1}), -3).is_neg_inf());
}

TEST_CASE("kth_smallest_naive errors") {
  CHECK_THROWS_AS(ggmq::kth_smallest_naive<I>(ext({1, 2}), 3), ggmq::DomainError);
  std::vector<X> big(ggmq::kNaiveCap + 1, X{1});
  CHECK_THROWS_AS(ggmq::kth_smallest_naive<I>(big, 1), ggmq::CapacityError);
  std::vector<X> at_cap(ggmq::kNaiveCap, X{1});
  CHECK(ggmq::kth_smallest_naive<I>(at_cap, 10) == X{1});
}

TEST_CASE("kth_smallest_reference examples") {
  CHECK(ggmq::kth_smallest_reference<I>(ext({3, 1, 2}), 2) == X{2});
  CHECK(ggmq::kth_smallest_reference<I>(ext({4}), 1) == X{4});
  CHECK(ggmq::kth_smallest_reference<I>(ext({2, 2}), 2) == X{2});
  CHECK(ggmq::kth_smallest_reference<I>(ext({2, 2}), 0).is_neg_inf());
  CHECK_THROWS_AS(ggmq::kth_smallest_reference<I>(ext({2, 2}), 3), ggmq::DomainError);
}

TEST_CASE("naive agrees with reference on random multisets") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10'000; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    std::vector<X> values(n);
    for (auto& v : values) v = X{static_cast<I>(rng() % 6)};
    const long long k = 1 + static_cast<long long>(rng() % n);
    REQUIRE(ggmq::kth_smallest_naive<I>(values, k) == ggmq::kth_smallest_reference<I>(values, k));
  }
}

TEST_CASE("min over subsets containing the new element factors as r_(k-1) v r_new") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2'000; ++trial) {
    const std::size_t n = 1 + rng() % 10;  // n old values plus one new
    std::vector<X> values(n + 1);
    for (auto& v : values) v = X{static_cast<I>(rng() % 8)};
    const std::vector<X> old(values.begin(), values.end() - 1);
    for (int k = 1; k <= static_cast<int>(n) + 1; ++k) {
      const X lhs = min_over_subsets_with_last(values, k);
      const X rhs = ggmq::vee(ggmq::kth_smallest_naive<I>(old, k - 1), values.back());
      REQUIRE(lhs == rhs);
    }
  }
}

TEST_CASE("OrderStatState insert examples") {
  SUBCASE("state over {3,1}, insert 2") {
    OrderStatState<I> s(2);
    s.insert(3);
    s.insert(1);
    CHECK(std::vector<X>(s.stats().begin(), s.stats().end()) == ext({1, 3}));
    s.insert(2);
    CHECK(std::vector<X>(s.stats().begin(), s.stats().end()) == ext({1, 2}));
    CHECK(s.count() == 3);
    CHECK_FALSE(s.at(3).has_value());  // beyond capacity, not a fake number
  }
  SUBCASE("empty state, insert 7") {
    OrderStatState<I> s(4);
    s.insert(7);
    CHECK(s.tracked() == 1);
    CHECK(*s.at(1) == X{7});
    CHECK_FALSE(s.at(2).has_value());
  }
  SUBCASE("state over {1,2}, insert NEG_INF") {
    OrderStatState<I> s(2);
    s.insert(1);
    s.insert(2);
    s.insert(X::neg_inf());
    CHECK(s.at(1)->is_neg_inf());
    CHECK(*s.at(2) == X{1});
  }
  SUBCASE("rank <= 0 is NEG_INF") {
    OrderStatState<I> s(1);
    CHECK(s.at(0)->is_neg_inf());
    CHECK(s.at(-1)->is_neg_inf());
  }
}

TEST_CASE("OrderStatState with full capacity tracks every order statistic") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t len = 1 + rng() % 200;
    OrderStatState<I> s(len);
    std::vector<X> absorbed;
    for (std::size_t i = 0; i < len; ++i) {
      const X x{static_cast<I>(rng() % 50)};
      s.insert(x);
      absorbed.insert(std::upper_bound(absorbed.begin(), absorbed.end(), x), x);
      REQUIRE(std::equal(s.stats().begin(), s.stats().end(), absorbed.begin(), absorbed.end()));
    }
  }
}

TEST_CASE("OrderStatState with bounded capacity keeps the lowest ranks exact") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t cap = 1 + rng() % 6;
    OrderStatState<I> s(cap);
    std::vector<X> absorbed;
    for (int i = 0; i < 40; ++i) {
      const X x{static_cast<I>(rng() % 20)};
      s.insert(x);
      absorbed.insert(std::upper_bound(absorbed.begin(), absorbed.end(), x), x);
      REQUIRE(s.tracked() == std::min(cap, absorbed.size()));
      for (std::size_t r = 1; r <= s.tracked(); ++r) REQUIRE(*s.at(static_cast<long long>(r)) == absorbed[r - 1]);
    }
  }
}

TEST_CASE("OrderStatState sliding window") {
  // Retire the lowest rank after each insertion while inserting values that
  // never fall below the retired floor.
  OrderStatState<I> s(3);
  for (I v : {4, 2, 9}) s.insert(v);
  CHECK(s.drop_lowest() == X{2});
  CHECK(s.base() == 1);
  CHECK(*s.at(1) == X{2});  // the floor is still reported for its own rank
  CHECK(*s.at(2) == X{4});
  s.insert(5);
  CHECK(*s.at(3) == X{5});
  CHECK(*s.at(4) == X{9});
  CHECK_THROWS_AS(s.insert(1), std::logic_error);

  OrderStatState<I> empty(1);
  CHECK_THROWS_AS(empty.drop_lowest(), std::logic_error);
  CHECK_THROWS_AS(OrderStatState<I>(0), ggmq::DomainError);
}

TEST_CASE("OrderStatState: insert uses pre-insertion neighbours") {
  // A left-to-right in-place update would propagate the new minimum upward
  // and report [0, 0, 0].
  OrderStatState<I> s(3);
  for (I v : {1, 2, 3}) s.insert(v);
  s.insert(0);
  CHECK(std::vector<X>(s.stats().begin(), s.stats().end()) == ext({0, 1, 2}));
}
