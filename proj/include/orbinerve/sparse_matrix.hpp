#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace orbinerve {

class CoefficientOverflow : public std::overflow_error {
 public:
  CoefficientOverflow() : std::overflow_error("64-bit coefficient overflow") {}
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw CoefficientOverflow();
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw CoefficientOverflow();
  return r;
}

}  // namespace detail

/// Column-major sparse integer matrix. Columns are kept sorted by row with
/// no explicit zeros.
class SparseMatrix {
 public:
  using Entry = std::pair<std::uint32_t, std::int64_t>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) m.columns_[j].push_back({static_cast<std::uint32_t>(j), 1});
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }

  std::span<const Entry> column(std::size_t j) const { return columns_[j]; }

  /// Replaces column j; entries may be unsorted and repeated, they are summed.
  void set_column(std::size_t j, std::vector<Entry> entries) {
    for (const auto& [i, v] : entries)
      if (i >= rows_) throw std::out_of_range("SparseMatrix::set_column: row out of range");
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    std::vector<Entry> merged;
    for (const auto& e : entries) {
      if (!merged.empty() && merged.back().first == e.first) {
        merged.back().second = detail::checked_add(merged.back().second, e.second);
      } else {
        merged.push_back(e);
      }
    }
    std::erase_if(merged, [](const Entry& e) { return e.second == 0; });
    columns_[j] = std::move(merged);
  }

  std::int64_t at(std::size_t i, std::size_t j) const {
    const auto& c = columns_.at(j);
    auto it = std::lower_bound(c.begin(), c.end(), i, [](const Entry& e, std::size_t r) { return e.first < r; });
    return it != c.end() && it->first == i ? it->second : 0;
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }

  bool is_zero() const {
    return std::all_of(columns_.begin(), columns_.end(), [](const auto& c) { return c.empty(); });
  }

  SparseMatrix transpose() const {
    std::vector<std::vector<Entry>> rows(rows_);
    for (std::size_t j = 0; j < cols(); ++j)
      for (const auto& [i, v] : columns_[j]) rows[i].push_back({static_cast<std::uint32_t>(j), v});
    SparseMatrix t(cols(), rows_);
    t.columns_ = std::move(rows);
    return t;
  }

  SparseMatrix scaled(std::int64_t s) const {
    SparseMatrix m(rows_, cols());
    for (std::size_t j = 0; j < cols(); ++j) {
      std::vector<Entry> c;
      for (const auto& [i, v] : columns_[j]) c.push_back({i, detail::checked_mul(v, s)});
      m.set_column(j, std::move(c));
    }
    return m;
  }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: shape mismatch");
    SparseMatrix m(a.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
      std::vector<Entry> c(a.columns_[j]);
      c.insert(c.end(), b.columns_[j].begin(), b.columns_[j].end());
      m.set_column(j, std::move(c));
    }
    return m;
  }

  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return a + b.scaled(-1); }

  /// Matrix product: (a * b) applies b first.
  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
    SparseMatrix m(a.rows(), b.cols());
    std::vector<std::int64_t> acc(a.rows(), 0);
    std::vector<std::uint32_t> touched;
    for (std::size_t j = 0; j < b.cols(); ++j) {
      touched.clear();
      for (const auto& [k, bv] : b.columns_[j]) {
        for (const auto& [i, av] : a.columns_[k]) {
          if (acc[i] == 0) touched.push_back(i);
          // an entry may cancel and reappear; duplicates in touched are removed below
          acc[i] = detail::checked_add(acc[i], detail::checked_mul(av, bv));
        }
      }
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      std::vector<Entry> c;
      for (auto i : touched) {
        if (acc[i] != 0) c.push_back({i, acc[i]});
        acc[i] = 0;
      }
      m.columns_[j] = std::move(c);
    }
    return m;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.columns_ == b.columns_;
  }

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<Entry>> columns_;
};

/// Places `block` into `target` with its (0, 0) at (row_offset, col_offset),
/// adding to what is there.
inline void add_block(std::vector<std::vector<SparseMatrix::Entry>>& target_columns, const SparseMatrix& block,
                      std::size_t row_offset, std::size_t col_offset) {
  for (std::size_t j = 0; j < block.cols(); ++j)
    for (const auto& [i, v] : block.column(j))
      target_columns[col_offset + j].push_back({static_cast<std::uint32_t>(row_offset + i), v});
}

inline SparseMatrix assemble(std::size_t rows, std::vector<std::vector<SparseMatrix::Entry>> columns) {
  SparseMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, std::move(columns[j]));
  return m;
}

}  // namespace orbinerve
