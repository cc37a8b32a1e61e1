#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ncs/error.hpp"
#include "ncs/scalar.hpp"

namespace ncs {

/// Incremental exact linear-span solver over the scalar ring, with keys of an
/// arbitrary hashable type interned as columns.  Elimination is fraction-free:
/// rows are combined as a_p*row - a_r*pivot and the common content is stripped,
/// so every stored entry stays a plain scalar.  Each pivot row remembers the
/// exact combination of original source vectors that produced it, which makes
/// membership answers certifiable: alpha * v == sum_j beta_j * source_j with
/// ring elements on both sides.
template <typename Key, typename Hash = std::hash<Key>, typename Eq = std::equal_to<Key>>
class SpanSolver {
 public:
  using Entry = std::pair<int, Scalar>;  // (column index, value), sorted by column
  using RowVec = std::vector<Entry>;

  int intern_key(const Key& key) {
    auto [it, inserted] = columns_.try_emplace(key, static_cast<int>(keys_.size()));
    if (inserted) keys_.push_back(key);
    return it->second;
  }
  [[nodiscard]] const Key& key_of(int column) const { return keys_.at(column); }
  [[nodiscard]] int column_count() const noexcept { return static_cast<int>(keys_.size()); }

  /// Adds a source vector to the span; returns its source index.
  int add_source(RowVec row) {
    const int index = sources_++;
    normalize_row(row);
    Reduction red = reduce(std::move(row));
    if (!red.residual.empty()) {
      PivotRow pivot;
      pivot.row = std::move(red.residual);
      pivot.combination = std::move(red.combination);
      for (auto& [src, value] : pivot.combination) value = -value;
      insert_sorted(pivot.combination, index, std::move(red.multiplier));
      const int lead = pivot.row.front().first;
      pivot_by_lead_.emplace(lead, static_cast<int>(pivots_.size()));
      pivots_.push_back(std::move(pivot));
    }
    return index;
  }

  struct Reduction {
    RowVec residual;      ///< multiplier * v - sum_j combination_j * source_j
    Scalar multiplier;    ///< nonzero scalar alpha
    std::vector<std::pair<int, Scalar>> combination;  ///< by source index
  };

  /// Reduces v against the accumulated pivots, tracking the exact relation
  /// residual == multiplier * v - sum combination_j * source_j.
  [[nodiscard]] Reduction reduce(RowVec v) const {
    normalize_row(v);
    Reduction out;
    out.multiplier = Scalar::one();
    while (!v.empty()) {
      const int lead = v.front().first;
      const auto pivot_it = pivot_by_lead_.find(lead);
      if (pivot_it == pivot_by_lead_.end()) break;
      const PivotRow& pivot = pivots_[pivot_it->second];
      const Scalar a_p = pivot.row.front().second;
      const Scalar a_r = v.front().second;
      v = axpy(a_p, v, -a_r, pivot.row);
      out.combination = axpy(a_p, out.combination, a_r, pivot.combination);
      out.multiplier = out.multiplier * a_p;
      strip_common_content(v, out.combination, out.multiplier);
    }
    out.residual = std::move(v);
    return out;
  }

  struct MembershipWitness {
    Scalar multiplier;                                ///< nonzero alpha
    std::vector<std::pair<int, Scalar>> combination;  ///< by source index
  };

  /// If v lies in the span of the sources, returns alpha and beta_j with
  /// alpha * v == sum_j beta_j * source_j exactly; otherwise nullopt.
  [[nodiscard]] std::optional<MembershipWitness> solve_membership(RowVec v) const {
    Reduction red = reduce(std::move(v));
    if (!red.residual.empty()) return std::nullopt;
    return MembershipWitness{std::move(red.multiplier), std::move(red.combination)};
  }

  [[nodiscard]] int rank() const noexcept { return static_cast<int>(pivots_.size()); }
  [[nodiscard]] int source_count() const noexcept { return sources_; }

  /// Sorts by column, merges duplicates, drops zeros.
  static RowVec normalized(RowVec v) {
    normalize_row(v);
    return v;
  }

  /// Sorted-merge a*X + b*Y over column-indexed sparse rows, dropping zeros.
  /// Both inputs must be normalised (sorted, unique columns).
  static RowVec axpy(const Scalar& a, const RowVec& x, const Scalar& b, const RowVec& y) {
    RowVec out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.size() || j < y.size()) {
      if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
        Scalar value = a * x[i].second;
        if (!value.is_zero()) out.emplace_back(x[i].first, std::move(value));
        ++i;
      } else if (i == x.size() || y[j].first < x[i].first) {
        Scalar value = b * y[j].second;
        if (!value.is_zero()) out.emplace_back(y[j].first, std::move(value));
        ++j;
      } else {
        Scalar value = a * x[i].second + b * y[j].second;
        if (!value.is_zero()) out.emplace_back(x[i].first, std::move(value));
        ++i;
        ++j;
      }
    }
    return out;
  }

 private:
  struct PivotRow {
    RowVec row;  ///< row == sum_j combination_j * source_j, exactly
    std::vector<std::pair<int, Scalar>> combination;
  };

  static void insert_sorted(std::vector<std::pair<int, Scalar>>& vec, int key, Scalar value) {
    auto it = std::lower_bound(vec.begin(), vec.end(), key,
                               [](const auto& entry, int k) { return entry.first < k; });
    vec.insert(it, {key, std::move(value)});
  }

  static void normalize_row(RowVec& v) {
    std::sort(v.begin(), v.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    RowVec merged;
    for (auto& [col, value] : v) {
      if (!merged.empty() && merged.back().first == col) {
        merged.back().second += value;
        if (merged.back().second.is_zero()) merged.pop_back();
      } else if (!value.is_zero()) {
        merged.emplace_back(col, std::move(value));
      }
    }
    v = std::move(merged);
  }

  /// Strips the common content of the working row, the combination entries and
  /// the multiplier, keeping the tracked relation exact while entries shrink.
  static void strip_common_content(RowVec& v, std::vector<std::pair<int, Scalar>>& comb,
                                   Scalar& multiplier) {
    ScalarContent content = scalar_content(multiplier);
    for (const auto& [col, value] : v) content = content_gcd(content, scalar_content(value));
    for (const auto& [src, value] : comb) content = content_gcd(content, scalar_content(value));
    if (content.rational == 1 && content.mu_shift == 0) return;
    for (auto& [col, value] : v) value = scalar_divide_content(value, content);
    for (auto& [src, value] : comb) value = scalar_divide_content(value, content);
    multiplier = scalar_divide_content(multiplier, content);
  }

  std::unordered_map<Key, int, Hash, Eq> columns_;
  std::vector<Key> keys_;
  std::unordered_map<int, int> pivot_by_lead_;
  std::vector<PivotRow> pivots_;
  int sources_ = 0;
};

}  // namespace ncs
