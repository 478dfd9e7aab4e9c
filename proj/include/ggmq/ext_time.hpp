#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>

namespace ggmq {

/// Time representations the library is instantiated for: exact integers
/// (used for oracle equivalence) and binary64.
template <typename T>
concept TimeValue = std::same_as<T, double> || std::same_as<T, std::int64_t>;

/// A time value extended with a distinguished minus-infinity sentinel.
///
/// Only max, min and comparison are defined on the extended domain; there is
/// deliberately no arithmetic, so the sentinel can never leak into a sum.
/// Order statistics of rank k <= 0 are defined to be this sentinel.
template <TimeValue T>
class ExtTime {
public:
  constexpr ExtTime() = default;
  constexpr ExtTime(T v) : finite_(true), value_(v) {}  // NOLINT(implicit)

  static constexpr ExtTime neg_inf() { return ExtTime{}; }

  constexpr bool is_neg_inf() const { return !finite_; }
  constexpr bool is_finite() const { return finite_; }

  /// Precondition: is_finite().
  constexpr T value() const { return value_; }

  friend constexpr bool operator==(const ExtTime& a, const ExtTime& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }

  friend constexpr std::weak_ordering operator<=>(const ExtTime& a, const ExtTime& b) {
    if (!a.finite_ || !b.finite_) return a.finite_ <=> b.finite_;
    if (a.value_ < b.value_) return std::weak_ordering::less;
    if (b.value_ < a.value_) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtTime& t) {
    if (t.is_neg_inf()) return os << "-inf";
    return os << t.value_;
  }

private:
  bool finite_ = false;
  T value_{};
};

/// Lattice join (maximum). NEG_INF is its identity.
template <TimeValue T>
constexpr ExtTime<T> vee(const ExtTime<T>& a, const ExtTime<T>& b) {
  return a < b ? b : a;
}

/// Lattice meet (minimum). NEG_INF absorbs.
template <TimeValue T>
constexpr ExtTime<T> wedge(const ExtTime<T>& a, const ExtTime<T>& b) {
  return b < a ? b : a;
}

}  // namespace ggmq
