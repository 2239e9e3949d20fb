#pragma once

// Enumerated simplicial and cyclic sets, truncated at a maximal level.
//
// Level n holds its simplices as fixed-arity id tuples in lexicographic
// order; faces, degeneracies and (for cyclic sets) the cyclic operator are
// stored as index tables. Degeneracies out of the top level are not stored.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace orbinerve {

using SimplexIndex = std::uint32_t;

struct Level {
  std::size_t arity = 0;
  std::vector<std::uint32_t> entries;                 // size() * arity, sorted
  std::vector<std::vector<SimplexIndex>> faces;        // faces[i][k], i = 0..n; none at level 0
  std::vector<std::vector<SimplexIndex>> degeneracies; // degeneracies[i][k], i = 0..n; none at top
  std::vector<SimplexIndex> cyclic;                    // t_n, empty for plain simplicial sets
  std::vector<char> degenerate;

  std::size_t size() const noexcept { return arity == 0 ? 0 : entries.size() / arity; }
};

class SimplicialLevelSet {
 public:
  SimplicialLevelSet() = default;
  explicit SimplicialLevelSet(std::vector<Level> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) throw std::invalid_argument("level set needs at least level 0");
  }

  std::size_t max_level() const noexcept { return levels_.size() - 1; }
  std::size_t size(std::size_t n) const { return levels_.at(n).size(); }
  std::size_t arity(std::size_t n) const { return levels_.at(n).arity; }

  std::span<const std::uint32_t> simplex(std::size_t n, SimplexIndex k) const {
    const Level& l = levels_[n];
    return {l.entries.data() + static_cast<std::size_t>(k) * l.arity, l.arity};
  }

  SimplexIndex face(std::size_t n, std::size_t i, SimplexIndex k) const { return levels_[n].faces[i][k]; }
  SimplexIndex degeneracy(std::size_t n, std::size_t i, SimplexIndex k) const {
    return levels_[n].degeneracies[i][k];
  }
  bool has_degeneracies(std::size_t n) const { return !levels_.at(n).degeneracies.empty(); }
  bool is_degenerate(std::size_t n, SimplexIndex k) const { return levels_[n].degenerate[k] != 0; }

  bool is_cyclic() const noexcept { return !levels_.front().cyclic.empty(); }
  SimplexIndex cyclic(std::size_t n, SimplexIndex k) const { return levels_[n].cyclic[k]; }

  std::optional<SimplexIndex> find(std::size_t n, std::span<const std::uint32_t> tuple) const;

  std::vector<SimplexIndex> nondegenerate(std::size_t n) const {
    std::vector<SimplexIndex> out;
    for (SimplexIndex k = 0; k < size(n); ++k)
      if (!is_degenerate(n, k)) out.push_back(k);
    return out;
  }

  const std::vector<Level>& levels() const noexcept { return levels_; }

 protected:
  std::vector<Level> levels_;
};

/// A simplicial level set whose levels all carry the cyclic operator.
class CyclicLevelSet : public SimplicialLevelSet {
 public:
  CyclicLevelSet() = default;
  explicit CyclicLevelSet(std::vector<Level> levels) : SimplicialLevelSet(std::move(levels)) {
    for (const auto& l : levels_)
      if (l.cyclic.size() != l.size()) throw std::invalid_argument("cyclic level set: missing cyclic table");
  }
};

namespace detail {

inline bool tuple_less(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline std::optional<SimplexIndex> find_in_level(const Level& l, std::span<const std::uint32_t> tuple) {
  if (tuple.size() != l.arity) return std::nullopt;
  std::size_t lo = 0;
  std::size_t hi = l.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    std::span<const std::uint32_t> x(l.entries.data() + mid * l.arity, l.arity);
    if (tuple_less(x, tuple)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < l.size() && std::equal(tuple.begin(), tuple.end(), l.entries.begin() + lo * l.arity)) {
    return static_cast<SimplexIndex>(lo);
  }
  return std::nullopt;
}

}  // namespace detail

inline std::optional<SimplexIndex> SimplicialLevelSet::find(std::size_t n,
                                                            std::span<const std::uint32_t> tuple) const {
  return detail::find_in_level(levels_.at(n), tuple);
}

/// Structure formulas of a simplicial object on id tuples.
template <class M>
concept SimplicialModel = requires(const M& m, std::size_t n, std::size_t i, std::span<const std::uint32_t> x,
                                   std::vector<std::uint32_t>& out) {
  { m.arity(n) } -> std::convertible_to<std::size_t>;
  m.enumerate(n, out);
  m.face(n, i, x, out);
  m.degeneracy(n, i, x, out);
};

template <class M>
concept CyclicModel = SimplicialModel<M> && requires(const M& m, std::size_t n, std::span<const std::uint32_t> x,
                                                     std::vector<std::uint32_t>& out) { m.cyclic(n, x, out); };

/// Thrown when a structure map leaves the enumerated level set.
class ModelError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

inline void sort_level(Level& l) {
  const std::size_t count = l.size();
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  auto at = [&](std::size_t k) { return std::span<const std::uint32_t>(l.entries.data() + k * l.arity, l.arity); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return tuple_less(at(a), at(b)); });
  std::vector<std::uint32_t> sorted;
  sorted.reserve(l.entries.size());
  for (std::size_t k = 0; k < count; ++k) {
    if (k > 0 && std::ranges::equal(at(order[k]), at(order[k - 1]))) throw ModelError("duplicate simplex");
    auto x = at(order[k]);
    sorted.insert(sorted.end(), x.begin(), x.end());
  }
  l.entries = std::move(sorted);
}

template <class Fn>
std::vector<SimplexIndex> tabulate(const Level& from, const Level& to, Fn&& apply, const char* what) {
  std::vector<SimplexIndex> table(from.size());
  std::vector<std::uint32_t> out;
  for (std::size_t k = 0; k < from.size(); ++k) {
    out.clear();
    apply(std::span<const std::uint32_t>(from.entries.data() + k * from.arity, from.arity), out);
    auto idx = find_in_level(to, out);
    if (!idx) throw ModelError(std::string(what) + " leaves the enumerated level set");
    table[k] = *idx;
  }
  return table;
}

}  // namespace detail

/// Enumerates levels 0..max_level of a model and tabulates its structure maps.
template <SimplicialModel M>
std::vector<Level> tabulate_levels(const M& model, std::size_t max_level) {
  std::vector<Level> levels(max_level + 1);
  for (std::size_t n = 0; n <= max_level; ++n) {
    Level& l = levels[n];
    l.arity = model.arity(n);
    model.enumerate(n, l.entries);
    if (l.arity == 0 || l.entries.size() % l.arity != 0) throw ModelError("malformed enumeration");
    detail::sort_level(l);
    l.degenerate.assign(l.size(), 0);
  }
  for (std::size_t n = 0; n <= max_level; ++n) {
    Level& l = levels[n];
    if (n > 0) {
      for (std::size_t i = 0; i <= n; ++i) {
        l.faces.push_back(detail::tabulate(
            l, levels[n - 1], [&](auto x, auto& out) { model.face(n, i, x, out); }, "face"));
      }
    }
    if (n < max_level) {
      for (std::size_t i = 0; i <= n; ++i) {
        l.degeneracies.push_back(detail::tabulate(
            l, levels[n + 1], [&](auto x, auto& out) { model.degeneracy(n, i, x, out); }, "degeneracy"));
        for (SimplexIndex k : l.degeneracies.back()) levels[n + 1].degenerate[k] = 1;
      }
    }
    if constexpr (CyclicModel<M>) {
      l.cyclic = detail::tabulate(l, l, [&](auto x, auto& out) { model.cyclic(n, x, out); }, "cyclic operator");
    }
  }
  return levels;
}

template <SimplicialModel M>
SimplicialLevelSet build_simplicial(const M& model, std::size_t max_level) {
  return SimplicialLevelSet(tabulate_levels(model, max_level));
}

template <CyclicModel M>
CyclicLevelSet build_cyclic(const M& model, std::size_t max_level) {
  return CyclicLevelSet(tabulate_levels(model, max_level));
}

// --- identity verification --------------------------------------------------

struct IdentityViolation {
  std::string identity;  // e.g. "d_i d_j = d_{j-1} d_i"
  std::size_t level;     // level of the simplex the identity was applied to
  std::size_t i;
  std::size_t j;
  SimplexIndex simplex;

  std::string describe() const {
    return identity + " fails at level " + std::to_string(level) + ", i=" + std::to_string(i) +
           ", j=" + std::to_string(j) + ", simplex #" + std::to_string(simplex);
  }
};

/// Exhaustively checks every simplicial identity, and the cyclic ones when
/// the set carries a cyclic operator, on all enumerated simplices. Relations
/// that would need a level above max_level are skipped.
inline std::vector<IdentityViolation> verify_identities(const SimplicialLevelSet& x, std::size_t max_reported = 64) {
  std::vector<IdentityViolation> report;
  auto add = [&](const char* id, std::size_t n, std::size_t i, std::size_t j, SimplexIndex k) {
    if (report.size() < max_reported) report.push_back({id, n, i, j, k});
  };
  const std::size_t top = x.max_level();
  for (std::size_t n = 0; n <= top; ++n) {
    const auto count = static_cast<SimplexIndex>(x.size(n));
    const bool up = n < top && x.has_degeneracies(n);
    const bool up2 = n + 1 < top && x.has_degeneracies(n) && x.has_degeneracies(n + 1);
    for (SimplexIndex k = 0; k < count; ++k) {
      if (n >= 2) {
        for (std::size_t j = 1; j <= n; ++j)
          for (std::size_t i = 0; i < j; ++i)
            if (x.face(n - 1, i, x.face(n, j, k)) != x.face(n - 1, j - 1, x.face(n, i, k)))
              add("d_i d_j = d_{j-1} d_i", n, i, j, k);
      }
      if (up2) {
        for (std::size_t j = 0; j <= n; ++j)
          for (std::size_t i = 0; i <= j; ++i)
            if (x.degeneracy(n + 1, i, x.degeneracy(n, j, k)) != x.degeneracy(n + 1, j + 1, x.degeneracy(n, i, k)))
              add("s_i s_j = s_{j+1} s_i", n, i, j, k);
      }
      if (up) {
        for (std::size_t j = 0; j <= n; ++j) {
          const SimplexIndex sj = x.degeneracy(n, j, k);
          for (std::size_t i = 0; i <= n + 1; ++i) {
            const SimplexIndex lhs = x.face(n + 1, i, sj);
            if (i == j || i == j + 1) {
              if (lhs != k) add("d_i s_j = id (i = j, j+1)", n, i, j, k);
            } else if (i < j) {
              if (n == 0 || lhs != x.degeneracy(n - 1, j - 1, x.face(n, i, k)))
                add("d_i s_j = s_{j-1} d_i (i < j)", n, i, j, k);
            } else {
              if (n == 0 || lhs != x.degeneracy(n - 1, j, x.face(n, i - 1, k)))
                add("d_i s_j = s_j d_{i-1} (i > j+1)", n, i, j, k);
            }
          }
        }
      }
      if (!x.is_cyclic()) continue;

      SimplexIndex r = k;
      for (std::size_t step = 0; step <= n; ++step) r = x.cyclic(n, r);
      if (r != k) add("t^{n+1} = id", n, 0, 0, k);
      const SimplexIndex tk = x.cyclic(n, k);
      if (n >= 1) {
        for (std::size_t i = 1; i <= n; ++i)
          if (x.face(n, i, tk) != x.cyclic(n - 1, x.face(n, i - 1, k))) add("d_i t = t d_{i-1}", n, i, 0, k);
        if (x.face(n, 0, tk) != x.face(n, n, k)) add("d_0 t = d_n", n, 0, 0, k);
      }
      if (up) {
        for (std::size_t i = 1; i <= n; ++i)
          if (x.degeneracy(n, i, tk) != x.cyclic(n + 1, x.degeneracy(n, i - 1, k)))
            add("s_i t = t s_{i-1}", n, i, 0, k);
        const SimplexIndex sn = x.degeneracy(n, n, k);
        if (x.degeneracy(n, 0, tk) != x.cyclic(n + 1, x.cyclic(n + 1, sn))) add("s_0 t = t^2 s_n", n, 0, 0, k);
      }
    }
  }
  return report;
}

// --- maps between level sets ------------------------------------------------

/// Per-level index maps between two level sets of the same height.
struct LevelMap {
  std::vector<std::vector<SimplexIndex>> levels;
};

struct MapViolation {
  std::string relation;
  std::size_t level;
  std::size_t i;
  SimplexIndex simplex;

  std::string describe() const {
    return relation + " fails at level " + std::to_string(level) + ", i=" + std::to_string(i) + ", simplex #" +
           std::to_string(simplex);
  }
};

/// Checks that f commutes with faces and degeneracies, and with the cyclic
/// operators when both sides are cyclic.
inline std::vector<MapViolation> verify_map(const LevelMap& f, const SimplicialLevelSet& a,
                                            const SimplicialLevelSet& b, std::size_t max_reported = 64) {
  std::vector<MapViolation> report;
  auto add = [&](const char* rel, std::size_t n, std::size_t i, SimplexIndex k) {
    if (report.size() < max_reported) report.push_back({rel, n, i, k});
  };
  const std::size_t top = std::min(a.max_level(), b.max_level());
  if (f.levels.size() < top + 1) {
    add("map covers every level", f.levels.size(), 0, 0);
    return report;
  }
  const bool cyclic = a.is_cyclic() && b.is_cyclic();
  for (std::size_t n = 0; n <= top; ++n) {
    if (f.levels[n].size() != a.size(n)) {
      add("map defined on the whole level", n, 0, 0);
      continue;
    }
    for (SimplexIndex k = 0; k < a.size(n); ++k) {
      const SimplexIndex fk = f.levels[n][k];
      if (n >= 1)
        for (std::size_t i = 0; i <= n; ++i)
          if (f.levels[n - 1][a.face(n, i, k)] != b.face(n, i, fk)) add("f d_i = d_i f", n, i, k);
      if (n < top && a.has_degeneracies(n) && b.has_degeneracies(n))
        for (std::size_t i = 0; i <= n; ++i)
          if (f.levels[n + 1][a.degeneracy(n, i, k)] != b.degeneracy(n, i, fk)) add("f s_i = s_i f", n, i, k);
      if (cyclic && f.levels[n][a.cyclic(n, k)] != b.cyclic(n, fk)) add("f t = t f", n, 0, k);
    }
  }
  return report;
}

inline bool is_bijection(const LevelMap& f, const SimplicialLevelSet& a, const SimplicialLevelSet& b) {
  for (std::size_t n = 0; n < f.levels.size(); ++n) {
    if (f.levels[n].size() != a.size(n) || a.size(n) != b.size(n)) return false;
    std::vector<char> hit(b.size(n), 0);
    for (SimplexIndex k : f.levels[n]) {
      if (k >= hit.size() || hit[k]) return false;
      hit[k] = 1;
    }
  }
  return true;
}

inline LevelMap compose(const LevelMap& first, const LevelMap& second) {
  LevelMap out;
  for (std::size_t n = 0; n < std::min(first.levels.size(), second.levels.size()); ++n) {
    std::vector<SimplexIndex> level;
    for (SimplexIndex k : first.levels[n]) level.push_back(second.levels[n][k]);
    out.levels.push_back(std::move(level));
  }
  return out;
}

inline bool is_identity(const LevelMap& f) {
  for (const auto& level : f.levels)
    for (SimplexIndex k = 0; k < level.size(); ++k)
      if (level[k] != k) return false;
  return true;
}

}  // namespace orbinerve
