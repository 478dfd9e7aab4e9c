#pragma once

// Three evaluators of the ordering operator r_(k) (k-th smallest of a
// multiset, duplicates counted repeatedly):
//   - kth_smallest_naive:     min over all k-subsets of the subset maximum;
//   - OrderStatState::insert: incremental update r'_(k) = r_(k) ^ (r_(k-1) v x);
//   - kth_smallest_reference: sort and index.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ggmq/errors.hpp"
#include "ggmq/ext_time.hpp"

namespace ggmq {

/// Largest multiset the subset-enumeration evaluator accepts. C(20,10) is
/// about 1.8e5 subsets, which keeps it usable as a test oracle.
inline constexpr std::size_t kNaiveCap = 20;

namespace detail {

// Depth-first walk over strictly increasing index tuples j_1 < ... < j_k,
// carrying the running maximum of the chosen values. Every complete tuple
// contributes its maximum to the overall minimum.
template <TimeValue T>
void min_of_subset_maxima(std::span<const ExtTime<T>> values, std::size_t first,
                          std::size_t remaining, ExtTime<T> running_max,
                          std::optional<ExtTime<T>>& best) {
  if (remaining == 0) {
    best = best ? wedge(*best, running_max) : running_max;
    return;
  }
  const std::size_t last_start = values.size() - remaining;
  for (std::size_t j = first; j <= last_start; ++j) {
    min_of_subset_maxima(values, j + 1, remaining - 1, vee(running_max, values[j]), best);
  }
}

inline void check_rank(long long k, std::size_t n) {
  if (k > static_cast<long long>(n)) {
    throw DomainError("rank " + std::to_string(k) + " exceeds multiset size " +
                      std::to_string(n));
  }
}

}  // namespace detail

/// k-th smallest value by literal enumeration of all k-subsets.
/// Ranks k <= 0 yield NEG_INF. Throws DomainError for k > n and
/// CapacityError for n > kNaiveCap.
template <TimeValue T>
ExtTime<T> kth_smallest_naive(std::span<const ExtTime<T>> values, long long k) {
  if (k <= 0) return ExtTime<T>::neg_inf();
  detail::check_rank(k, values.size());
  if (values.size() > kNaiveCap) {
    throw CapacityError("subset enumeration over " + std::to_string(values.size()) +
                        " values exceeds cap of " + std::to_string(kNaiveCap));
  }
  std::optional<ExtTime<T>> best;
  detail::min_of_subset_maxima(values, 0, static_cast<std::size_t>(k), ExtTime<T>::neg_inf(),
                               best);
  return *best;
}

/// Sort-based reference. Ranks k <= 0 yield NEG_INF; k > n throws DomainError.
template <TimeValue T>
ExtTime<T> kth_smallest_reference(std::span<const ExtTime<T>> values, long long k) {
  if (k <= 0) return ExtTime<T>::neg_inf();
  detail::check_rank(k, values.size());
  std::vector<ExtTime<T>> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted[static_cast<std::size_t>(k - 1)];
}

/// Order statistics r_(base+1) .. r_(base+K) of a growing multiset, kept up
/// to date one insertion at a time.
///
/// A fresh state tracks the lowest ranks (base = 0). drop_lowest() retires
/// the lowest tracked rank into floor(), which lets a caller slide a window
/// of K ranks upward as long as every later insertion is >= floor(); the
/// G/G/m departure recursion satisfies that by D_k < C_{k+m}.
///
/// Ranks above the multiset size, or above what could be retained in K
/// slots, are reported as undefined (std::nullopt), never as a number.
template <TimeValue T>
class OrderStatState {
public:
  explicit OrderStatState(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw DomainError("order statistic state needs capacity >= 1");
    stats_.reserve(capacity);
  }

  std::size_t capacity() const { return capacity_; }
  /// Number of values absorbed so far.
  std::size_t count() const { return count_; }
  /// Number of ranks retired through drop_lowest().
  std::size_t base() const { return base_; }
  /// r_(base): the most recently retired statistic, NEG_INF when base == 0.
  ExtTime<T> floor() const { return floor_; }
  /// Tracked statistics r_(base+1) .. r_(base+tracked()), nondecreasing.
  std::span<const ExtTime<T>> stats() const { return stats_; }
  std::size_t tracked() const { return stats_.size(); }

  /// r_(k) of the absorbed multiset if known. k <= 0 gives NEG_INF.
  std::optional<ExtTime<T>> at(long long k) const {
    if (k <= 0) return ExtTime<T>::neg_inf();
    const auto rank = static_cast<std::size_t>(k);
    if (rank == base_ && base_ > 0) return floor_;
    if (rank <= base_ || rank > base_ + stats_.size()) return std::nullopt;
    return stats_[rank - base_ - 1];
  }

  /// Absorbs one value. For each tracked rank, right to left so that every
  /// step reads the pre-insertion neighbour:
  ///   r'_(k) = r_(k) ^ (r_(k-1) v x)
  /// where an untracked r_(k) above the multiset size acts as +infinity.
  void insert(ExtTime<T> x) {
    if (base_ > 0 && x < floor_) {
      throw std::logic_error("insertion below a retired order statistic");
    }
    // When every absorbed value above floor is tracked, the slot just above
    // the top is +infinity and one more statistic becomes computable.
    const bool grow = stats_.size() == count_ - base_ && stats_.size() < capacity_;
    const std::size_t old_size = stats_.size();
    if (grow) {
      const ExtTime<T> below = stats_.empty() ? floor_ : stats_.back();
      stats_.push_back(vee(below, x));
    }
    for (std::size_t i = old_size; i-- > 0;) {
      const ExtTime<T> below = i == 0 ? floor_ : stats_[i - 1];
      stats_[i] = wedge(stats_[i], vee(below, x));
    }
    ++count_;
  }

  /// Retires r_(base+1); it becomes floor(). Throws if nothing is tracked.
  ExtTime<T> drop_lowest() {
    if (stats_.empty()) throw std::logic_error("no tracked order statistic to drop");
    floor_ = stats_.front();
    stats_.erase(stats_.begin());
    ++base_;
    return floor_;
  }

private:
  std::size_t capacity_;
  std::size_t count_ = 0;
  std::size_t base_ = 0;
  ExtTime<T> floor_ = ExtTime<T>::neg_inf();
  std::vector<ExtTime<T>> stats_;
};

}  // namespace ggmq
