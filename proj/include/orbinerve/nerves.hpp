#pragma once

// The nerve of a groupoid, its cyclic nerve, the simplicial inertia space,
// the free cyclic space on a simplicial set, and the isomorphisms f and h
// between the inertia space and the cyclic nerve.
//
// Tuple conventions (all morphism ids unless noted):
//   nerve            level 0: (x) an object;  level n: (g_1, ..., g_n)
//   cyclic nerve     level n: (g_0, ..., g_n), target(g_n) == source(g_0)
//   inertia space    level n: (a, v_1, ..., v_n), a an automorphism at source(v_1)
//   free cyclic      level n: (r, k), 0 <= r <= n, k an index into X_n

#include "orbinerve/groupoid.hpp"
#include "orbinerve/level_set.hpp"

#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace orbinerve {

inline constexpr std::size_t kDefaultCap = 6;

namespace models {

namespace detail {

// Appends every composable extension of `prefix` by `length` morphisms that
// `accept` admits.
template <class Accept>
void chains(const FiniteGroupoid& g, std::size_t length, std::vector<MorphismId>& prefix,
            std::vector<std::uint32_t>& out, Accept&& accept) {
  if (length == 0) {
    if (accept(std::span<const MorphismId>(prefix))) out.insert(out.end(), prefix.begin(), prefix.end());
    return;
  }
  for (MorphismId m = 0; m < g.morphism_count(); ++m) {
    if (!prefix.empty() && g.target(prefix.back()) != g.source(m)) continue;
    prefix.push_back(m);
    chains(g, length - 1, prefix, out, accept);
    prefix.pop_back();
  }
}

}  // namespace detail

class Nerve {
 public:
  explicit Nerve(const FiniteGroupoid& g) : g_(g) {}

  std::size_t arity(std::size_t n) const { return n == 0 ? 1 : n; }

  void enumerate(std::size_t n, std::vector<std::uint32_t>& out) const {
    if (n == 0) {
      for (ObjectId x = 0; x < g_.object_count(); ++x) out.push_back(x);
      return;
    }
    std::vector<MorphismId> prefix;
    detail::chains(g_, n, prefix, out, [](auto) { return true; });
  }

  void face(std::size_t n, std::size_t i, std::span<const std::uint32_t> x, std::vector<std::uint32_t>& out) const {
    if (n == 1) {
      out.push_back(i == 0 ? g_.target(x[0]) : g_.source(x[0]));
      return;
    }
    for (std::size_t p = 0; p < n; ++p) {
      if ((i == 0 && p == 0) || (i == n && p == n - 1)) continue;
      if (i > 0 && i < n && p == i - 1) {
        out.push_back(g_.compose(x[p], x[p + 1]));
        ++p;
        continue;
      }
      out.push_back(x[p]);
    }
  }

  void degeneracy(std::size_t n, std::size_t i, std::span<const std::uint32_t> x,
                  std::vector<std::uint32_t>& out) const {
    if (n == 0) {
      out.push_back(g_.identity(x[0]));
      return;
    }
    const ObjectId vertex = i == 0 ? g_.source(x[0]) : g_.target(x[i - 1]);
    out.insert(out.end(), x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back(g_.identity(vertex));
    out.insert(out.end(), x.begin() + static_cast<std::ptrdiff_t>(i), x.end());
  }

 private:
  const FiniteGroupoid& g_;
};

class CyclicNerve {
 public:
  explicit CyclicNerve(const FiniteGroupoid& g) : g_(g) {}

  std::size_t arity(std::size_t n) const { return n + 1; }

  void enumerate(std::size_t n, std::vector<std::uint32_t>& out) const {
    std::vector<MorphismId> prefix;
    detail::chains(g_, n + 1, prefix, out,
                   [&](std::span<const MorphismId> c) { return g_.target(c.back()) == g_.source(c.front()); });
  }

  void face(std::size_t n, std::size_t i, std::span<const std::uint32_t> x, std::vector<std::uint32_t>& out) const {
    if (i == n) {
      out.push_back(g_.compose(x[n], x[0]));
      out.insert(out.end(), x.begin() + 1, x.begin() + static_cast<std::ptrdiff_t>(n));
      return;
    }
    for (std::size_t p = 0; p <= n; ++p) {
      if (p == i) {
        out.push_back(g_.compose(x[p], x[p + 1]));
        ++p;
      } else {
        out.push_back(x[p]);
      }
    }
  }

  void degeneracy(std::size_t, std::size_t i, std::span<const std::uint32_t> x,
                  std::vector<std::uint32_t>& out) const {
    out.insert(out.end(), x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    out.push_back(g_.identity(g_.target(x[i])));
    out.insert(out.end(), x.begin() + static_cast<std::ptrdiff_t>(i) + 1, x.end());
  }

  void cyclic(std::size_t n, std::span<const std::uint32_t> x, std::vector<std::uint32_t>& out) const {
    out.push_back(x[n]);
    out.insert(out.end(), x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
  }

 private:
  const FiniteGroupoid& g_;
};

class InertiaSpace {
 public:
  explicit InertiaSpace(const FiniteGroupoid& g) : g_(g) {}

  std::size_t arity(std::size_t n) const { return n + 1; }

  void enumerate(std::size_t n, std::vector<std::uint32_t>& out) const {
    std::vector<MorphismId> prefix;
    for (MorphismId a = 0; a < g_.morphism_count(); ++a) {
      if (!g_.is_automorphism(a)) continue;
      prefix.assign({a});
      // a is a loop, so chaining from it constrains v_1 to start at source(a)
      detail::chains(g_, n, prefix, out, [](auto) { return true; });
    }
  }

  void face(std::size_t n, std::size_t i, std::span<const std::uint32_t> x, std::vector<std::uint32_t>& out) const {
    if (i == 0) {
      out.push_back(g_.compose({g_.inverse(x[1]), x[0], x[1]}));
      out.insert(out.end(), x.begin() + 2, x.end());
      return;
    }
    if (i == n) {
      out.insert(out.end(), x.begin(), x.end() - 1);
      return;
    }
    out.insert(out.end(), x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back(g_.compose(x[i], x[i + 1]));
    out.insert(out.end(), x.begin() + static_cast<std::ptrdiff_t>(i) + 2, x.end());
  }

  void degeneracy(std::size_t, std::size_t i, std::span<const std::uint32_t> x,
                  std::vector<std::uint32_t>& out) const {
    const ObjectId vertex = i == 0 ? g_.source(x[0]) : g_.target(x[i]);
    out.insert(out.end(), x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    out.push_back(g_.identity(vertex));
    out.insert(out.end(), x.begin() + static_cast<std::ptrdiff_t>(i) + 1, x.end());
  }

  // (a, v_1..v_n) -> (w^-1 a w, w^-1 a, v_1, ..., v_{n-1}) with w = v_1 ... v_n
  void cyclic(std::size_t n, std::span<const std::uint32_t> x, std::vector<std::uint32_t>& out) const {
    if (n == 0) {
      out.push_back(x[0]);
      return;
    }
    const MorphismId w = g_.compose(x.subspan(1));
    const MorphismId back = g_.compose(g_.inverse(w), x[0]);
    out.push_back(g_.compose(back, w));
    out.push_back(back);
    out.insert(out.end(), x.begin() + 1, x.end() - 1);
  }

 private:
  const FiniteGroupoid& g_;
};

class FreeCyclic {
 public:
  explicit FreeCyclic(const SimplicialLevelSet& x) : x_(x) {}

  std::size_t arity(std::size_t) const { return 2; }

  void enumerate(std::size_t n, std::vector<std::uint32_t>& out) const {
    for (std::uint32_t r = 0; r <= n; ++r)
      for (std::uint32_t k = 0; k < x_.size(n); ++k) {
        out.push_back(r);
        out.push_back(k);
      }
  }

  void face(std::size_t n, std::size_t i, std::span<const std::uint32_t> e, std::vector<std::uint32_t>& out) const {
    const std::size_t r = e[0];
    if (r <= i) {
      // tau^r lives in Z_n one level down, so r = n wraps to 0
      out.push_back(static_cast<std::uint32_t>(r % n));
      out.push_back(x_.face(n, i - r, e[1]));
    } else {
      out.push_back(static_cast<std::uint32_t>(r - 1));
      out.push_back(x_.face(n, n - r + i + 1, e[1]));
    }
  }

  void degeneracy(std::size_t n, std::size_t i, std::span<const std::uint32_t> e,
                  std::vector<std::uint32_t>& out) const {
    const std::size_t r = e[0];
    if (r <= i) {
      out.push_back(static_cast<std::uint32_t>(r));
      out.push_back(x_.degeneracy(n, i - r, e[1]));
    } else {
      out.push_back(static_cast<std::uint32_t>(r + 1));
      out.push_back(x_.degeneracy(n, n - r + i + 1, e[1]));
    }
  }

  void cyclic(std::size_t n, std::span<const std::uint32_t> e, std::vector<std::uint32_t>& out) const {
    out.push_back(static_cast<std::uint32_t>((e[0] + 1) % (n + 1)));
    out.push_back(e[1]);
  }

 private:
  const SimplicialLevelSet& x_;
};

/// A single point in every degree.
struct Point {
  std::size_t arity(std::size_t) const { return 1; }
  void enumerate(std::size_t, std::vector<std::uint32_t>& out) const { out.push_back(0); }
  void face(std::size_t, std::size_t, std::span<const std::uint32_t>, std::vector<std::uint32_t>& out) const {
    out.push_back(0);
  }
  void degeneracy(std::size_t, std::size_t, std::span<const std::uint32_t>, std::vector<std::uint32_t>& out) const {
    out.push_back(0);
  }
};

}  // namespace models

inline SimplicialLevelSet nerve(const FiniteGroupoid& g, std::size_t cap = kDefaultCap) {
  return build_simplicial(models::Nerve(g), cap);
}

inline CyclicLevelSet cyclic_nerve(const FiniteGroupoid& g, std::size_t cap = kDefaultCap) {
  return build_cyclic(models::CyclicNerve(g), cap);
}

inline CyclicLevelSet inertia_simplicial(const FiniteGroupoid& g, std::size_t cap = kDefaultCap) {
  return build_cyclic(models::InertiaSpace(g), cap);
}

inline CyclicLevelSet free_cyclic(const SimplicialLevelSet& x) {
  return build_cyclic(models::FreeCyclic(x), x.max_level());
}

inline SimplicialLevelSet point_set(std::size_t cap) { return build_simplicial(models::Point{}, cap); }

// --- the isomorphisms f and h -----------------------------------------------

/// (a, v_1, ..., v_n) -> (v_n^-1 ... v_1^-1 a, v_1, ..., v_n)
inline std::vector<MorphismId> iso_f(const FiniteGroupoid& g, std::span<const MorphismId> x) {
  if (x.empty() || !g.is_automorphism(x[0])) throw std::invalid_argument("iso_f: first entry must be an automorphism");
  for (std::size_t p = 1; p < x.size(); ++p) {
    const ObjectId expected = p == 1 ? g.source(x[0]) : g.target(x[p - 1]);
    if (g.source(x[p]) != expected) throw std::invalid_argument("iso_f: input is not an inertia simplex");
  }
  std::vector<MorphismId> out(x.begin(), x.end());
  if (x.size() > 1) out[0] = g.compose(g.inverse(g.compose(x.subspan(1))), x[0]);
  return out;
}

/// (g_0, ..., g_n) -> (g_1 ... g_n g_0, g_1, ..., g_n)
inline std::vector<MorphismId> iso_h(const FiniteGroupoid& g, std::span<const MorphismId> y) {
  if (y.empty()) throw std::invalid_argument("iso_h: empty tuple");
  for (std::size_t p = 0; p < y.size(); ++p) {
    if (g.target(y[p]) != g.source(y[(p + 1) % y.size()]))
      throw std::invalid_argument("iso_h: input is not a cyclic-nerve simplex");
  }
  std::vector<MorphismId> out(y.begin(), y.end());
  if (y.size() > 1) out[0] = g.compose(g.compose(y.subspan(1)), y[0]);
  return out;
}

namespace detail {

template <class Fn>
LevelMap tuple_map(const SimplicialLevelSet& a, const SimplicialLevelSet& b, Fn&& fn) {
  LevelMap f;
  const std::size_t top = std::min(a.max_level(), b.max_level());
  for (std::size_t n = 0; n <= top; ++n) {
    std::vector<SimplexIndex> level(a.size(n));
    for (SimplexIndex k = 0; k < a.size(n); ++k) {
      const std::vector<std::uint32_t> image = fn(n, a.simplex(n, k));
      auto idx = b.find(n, image);
      if (!idx) throw ModelError("level map leaves the target level set");
      level[k] = *idx;
    }
    f.levels.push_back(std::move(level));
  }
  return f;
}

}  // namespace detail

/// f as a level map from inertia_simplicial(g) to cyclic_nerve(g).
inline LevelMap iso_f_map(const FiniteGroupoid& g, const CyclicLevelSet& inertia_set, const CyclicLevelSet& cyc) {
  return detail::tuple_map(inertia_set, cyc, [&](std::size_t, auto x) { return iso_f(g, x); });
}

/// h as a level map from cyclic_nerve(g) to inertia_simplicial(g).
inline LevelMap iso_h_map(const FiniteGroupoid& g, const CyclicLevelSet& cyc, const CyclicLevelSet& inertia_set) {
  return detail::tuple_map(cyc, inertia_set, [&](std::size_t, auto y) { return iso_h(g, y); });
}

/// Identifies (a, v_1, ..., v_n) with the chain of inertia morphisms
/// (a, v_1), (a_1, v_2), ..., a_i = v_i^-1 a_{i-1} v_i, inside nerve(inertia(g)).
inline LevelMap inertia_chain_map(const FiniteGroupoid& g, const InertiaGroupoid& ig,
                                  const SimplicialLevelSet& inertia_set, const SimplicialLevelSet& inertia_nerve) {
  std::map<std::pair<MorphismId, MorphismId>, MorphismId> pair_id;
  for (MorphismId m = 0; m < ig.label.morphism_pair.size(); ++m) pair_id[ig.label.morphism_pair[m]] = m;
  std::map<MorphismId, ObjectId> object_id;
  for (ObjectId x = 0; x < ig.label.object_automorphism.size(); ++x) object_id[ig.label.object_automorphism[x]] = x;

  return detail::tuple_map(inertia_set, inertia_nerve, [&](std::size_t n, auto x) {
    std::vector<std::uint32_t> chain;
    if (n == 0) {
      chain.push_back(object_id.at(x[0]));
      return chain;
    }
    MorphismId a = x[0];
    for (std::size_t p = 1; p <= n; ++p) {
      chain.push_back(pair_id.at({a, x[p]}));
      a = g.compose({g.inverse(x[p]), a, x[p]});
    }
    return chain;
  });
}

}  // namespace orbinerve
