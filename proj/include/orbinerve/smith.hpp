#pragma once

// Smith normal form invariants of integer matrices.
//
// Large sparse boundary matrices are first reduced by eliminating unit
// pivots (Markowitz-style: sparsest column first, shortest row within it),
// which changes no invariant factor other than adding 1s. Whatever is left
// has no unit entries and goes to a dense big-integer Smith reduction.

#include "orbinerve/numbers.hpp"
#include "orbinerve/sparse_matrix.hpp"

#include <cstdint>
#include <algorithm>
#include <set>
#include <utility>
#include <vector>

namespace orbinerve {

using DenseMatrix = std::vector<std::vector<Integer>>;

namespace detail {

// x - f * y, in the coefficient type of the elimination
inline std::int64_t sub_mul(std::int64_t x, std::int64_t f, std::int64_t y) {
  return checked_add(x, -checked_mul(f, y));
}
inline Integer sub_mul(const Integer& x, const Integer& f, const Integer& y) { return x - f * y; }

inline bool is_unit(std::int64_t v) { return v == 1 || v == -1; }
inline bool is_unit(const Integer& v) { return v == 1 || v == -1; }

/// Diagonalizes in place and returns |diagonal| entries, not yet normalized.
inline std::vector<Integer> dense_diagonalize(DenseMatrix a) {
  std::vector<Integer> diag;
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a[0].size();
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // pivot: least nonzero |entry| in the trailing block
    std::size_t pi = m;
    std::size_t pj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a[i][j] != 0 && (pi == m || abs(a[i][j]) < abs(a[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi == m) break;
    std::swap(a[t], a[pi]);
    for (auto& row : a) std::swap(row[t], row[pj]);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        const Integer q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        const Integer q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (clean) break;
      // a remainder smaller than the pivot is left in row t or column t
      std::size_t bi = t;
      std::size_t bj = t;
      for (std::size_t i = t + 1; i < m; ++i)
        if (a[i][t] != 0 && abs(a[i][t]) < abs(a[bi][bj])) {
          bi = i;
          bj = t;
        }
      for (std::size_t j = t + 1; j < n; ++j)
        if (a[t][j] != 0 && abs(a[t][j]) < abs(a[bi][bj])) {
          bi = t;
          bj = j;
        }
      std::swap(a[t], a[bi]);
      for (auto& row : a) std::swap(row[t], row[bj]);
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

/// diag(a, b) ~ diag(gcd, lcm): turns any nonzero diagonal into the
/// divisibility chain d_1 | d_2 | ...
inline std::vector<Integer> normalize_diagonal(std::vector<Integer> d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      const Integer g = gcd(d[i], d[j]);
      const Integer l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  }
  return d;
}

template <class Coeff>
class UnitEliminator {
 public:
  using Row = std::vector<std::pair<std::uint32_t, Coeff>>;

  explicit UnitEliminator(const SparseMatrix& m)
      : rows_(m.rows()), alive_(m.rows(), 1), col_rows_(m.cols()), col_count_(m.cols(), 0),
        done_(m.cols(), 0), dirty_(m.cols(), 0) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      for (const auto& [i, v] : m.column(j)) {
        rows_[i].push_back({static_cast<std::uint32_t>(j), Coeff(v)});
        col_rows_[j].push_back(i);
      }
      col_count_[j] = m.column(j).size();
    }
  }

  /// Eliminates every available unit pivot; returns how many.
  std::size_t run() {
    for (std::uint32_t j = 0; j < col_count_.size(); ++j)
      if (col_count_[j] > 0) queue_.insert({col_count_[j], j});
    std::size_t pivots = 0;
    while (!queue_.empty()) {
      const auto [count, c] = *queue_.begin();
      queue_.erase(queue_.begin());
      const std::uint32_t r = pick_pivot_row(c);
      if (r == kNone) continue;  // requeued if a later pivot changes the column
      eliminate(r, c);
      ++pivots;
    }
    return pivots;
  }

  /// The part of the matrix that has no unit pivot left.
  DenseMatrix remainder() const {
    std::vector<std::uint32_t> cols;
    std::vector<std::uint32_t> col_index(done_.size(), kNone);
    for (std::uint32_t j = 0; j < done_.size(); ++j) {
      if (!done_[j] && col_count_[j] > 0) {
        col_index[j] = static_cast<std::uint32_t>(cols.size());
        cols.push_back(j);
      }
    }
    DenseMatrix out;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (!alive_[i] || rows_[i].empty()) continue;
      std::vector<Integer> row(cols.size(), 0);
      for (const auto& [j, v] : rows_[i]) row[col_index[j]] = Integer(v);
      out.push_back(std::move(row));
    }
    return out;
  }

 private:
  static constexpr std::uint32_t kNone = 0xffffffffu;

  const Coeff* value(std::uint32_t r, std::uint32_t c) const {
    const Row& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::uint32_t k) { return e.first < k; });
    return it != row.end() && it->first == c ? &it->second : nullptr;
  }

  // Drops stale row references of column c and returns the shortest row
  // holding a unit entry there.
  std::uint32_t pick_pivot_row(std::uint32_t c) {
    auto& list = col_rows_[c];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    std::erase_if(list, [&](std::uint32_t r) { return !alive_[r] || value(r, c) == nullptr; });
    std::uint32_t best = kNone;
    for (std::uint32_t r : list) {
      if (is_unit(*value(r, c)) && (best == kNone || rows_[r].size() < rows_[best].size())) best = r;
    }
    return best;
  }

  // Columns whose count or entries changed during a pivot; requeued once
  // the pivot is done.
  void touch(std::uint32_t c) {
    if (dirty_[c]) return;
    dirty_[c] = 1;
    dirty_list_.push_back(c);
    queue_.erase({col_count_[c], c});
  }

  void requeue() {
    for (std::uint32_t c : dirty_list_) {
      dirty_[c] = 0;
      if (!done_[c] && col_count_[c] > 0) queue_.insert({col_count_[c], c});
    }
    dirty_list_.clear();
  }

  void eliminate(std::uint32_t r, std::uint32_t c) {
    const Coeff u = *value(r, c);  // +-1, its own inverse
    const Row pivot_row = rows_[r];
    const std::vector<std::uint32_t> others = col_rows_[c];
    Row merged;
    for (std::uint32_t r2 : others) {
      if (r2 == r) continue;
      const Coeff f = *value(r2, c) * u;
      const Row& old = rows_[r2];
      merged.clear();
      std::size_t p = 0;
      std::size_t q = 0;
      while (p < old.size() || q < pivot_row.size()) {
        if (q == pivot_row.size() || (p < old.size() && old[p].first < pivot_row[q].first)) {
          merged.push_back(old[p++]);
        } else if (p == old.size() || pivot_row[q].first < old[p].first) {
          const std::uint32_t j = pivot_row[q].first;
          if (j != c) touch(j);
          merged.push_back({j, sub_mul(Coeff(0), f, pivot_row[q].second)});
          ++col_count_[j];
          col_rows_[j].push_back(r2);
          ++q;
        } else {
          const std::uint32_t j = old[p].first;
          if (j != c) touch(j);
          Coeff v = sub_mul(old[p].second, f, pivot_row[q].second);
          if (v == 0) {
            --col_count_[j];
          } else {
            merged.push_back({j, std::move(v)});
          }
          ++p;
          ++q;
        }
      }
      rows_[r2].swap(merged);
    }
    for (const auto& [j, v] : pivot_row) {
      if (j != c) touch(j);
      --col_count_[j];
    }
    rows_[r].clear();
    alive_[r] = 0;
    done_[c] = 1;
    col_rows_[c].clear();
    requeue();
  }

  std::vector<Row> rows_;
  std::vector<char> alive_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<std::size_t> col_count_;
  std::vector<char> done_;
  std::vector<char> dirty_;
  std::vector<std::uint32_t> dirty_list_;
  std::set<std::pair<std::size_t, std::uint32_t>> queue_;  // (count, column), sparsest first
};

template <class Coeff>
std::vector<Integer> smith_via(const SparseMatrix& m) {
  UnitEliminator<Coeff> elim(m);
  const std::size_t units = elim.run();
  std::vector<Integer> rest = normalize_diagonal(dense_diagonalize(elim.remainder()));
  std::vector<Integer> out(units, Integer(1));
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace detail

/// Nonzero invariant factors d_1 | d_2 | ... of an integer matrix.
inline std::vector<Integer> smith_normal_form(const SparseMatrix& m) {
  try {
    return detail::smith_via<std::int64_t>(m);
  } catch (const CoefficientOverflow&) {
    return detail::smith_via<Integer>(m);
  }
}

inline std::vector<Integer> smith_normal_form(const DenseMatrix& m) {
  return detail::normalize_diagonal(detail::dense_diagonalize(m));
}

inline std::size_t matrix_rank(const SparseMatrix& m) { return smith_normal_form(m).size(); }

}  // namespace orbinerve
