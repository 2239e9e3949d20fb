#pragma once

// Finite groupoids, their axioms, and the derived groupoids used throughout:
// groups as one-object groupoids, action groupoids and the inertia groupoid.
//
// Composition is diagrammatic: compose(g, h) is "g then h" and is defined
// exactly when target(g) == source(h).

#include "orbinerve/numbers.hpp"

#include <algorithm>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace orbinerve {

/// Raised when groupoid tables are not even well-formed (sizes, ids out of
/// range). Distinct from an axiom violation, which is reported, not thrown.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by constructors that require a group / action / valid groupoid.
class AxiomError : public std::runtime_error {
 public:
  AxiomError(std::string axiom, const std::string& what)
      : std::runtime_error(what), axiom_(std::move(axiom)) {}
  const std::string& axiom() const noexcept { return axiom_; }

 private:
  std::string axiom_;
};

class FiniteGroupoid {
 public:
  struct Tables {
    std::vector<std::string> object_names;
    std::vector<std::string> morphism_names;
    std::vector<ObjectId> source;
    std::vector<ObjectId> target;
    std::vector<MorphismId> inverse;
    std::vector<MorphismId> identity;     // one per object
    std::vector<MorphismId> composition;  // row-major |G1| x |G1|, kNoMorphism if undefined
  };

  FiniteGroupoid() : FiniteGroupoid(trivial_tables()) {}

  explicit FiniteGroupoid(Tables tables) : t_(std::move(tables)) { check_structure(); }

  std::size_t object_count() const noexcept { return t_.identity.size(); }
  std::size_t morphism_count() const noexcept { return t_.source.size(); }

  ObjectId source(MorphismId g) const { return t_.source[g]; }
  ObjectId target(MorphismId g) const { return t_.target[g]; }
  MorphismId inverse(MorphismId g) const { return t_.inverse[g]; }
  MorphismId identity(ObjectId x) const { return t_.identity[x]; }

  /// kNoMorphism when the table has no entry for (g, h).
  MorphismId compose(MorphismId g, MorphismId h) const {
    return t_.composition[static_cast<std::size_t>(g) * morphism_count() + h];
  }

  /// Product of a composable chain read left to right. Throws on a break.
  MorphismId compose(std::span<const MorphismId> chain) const {
    if (chain.empty()) throw std::invalid_argument("compose: empty chain");
    MorphismId acc = chain.front();
    for (std::size_t i = 1; i < chain.size(); ++i) {
      acc = compose(acc, chain[i]);
      if (acc == kNoMorphism) throw std::invalid_argument("compose: chain is not composable");
    }
    return acc;
  }
  MorphismId compose(std::initializer_list<MorphismId> chain) const {
    return compose(std::span<const MorphismId>(chain.begin(), chain.size()));
  }

  bool is_identity(MorphismId g) const { return t_.identity[t_.source[g]] == g; }
  bool is_automorphism(MorphismId g) const { return t_.source[g] == t_.target[g]; }

  const std::string& object_name(ObjectId x) const { return t_.object_names[x]; }
  const std::string& morphism_name(MorphismId g) const { return t_.morphism_names[g]; }

  const Tables& tables() const noexcept { return t_; }

  friend bool operator==(const FiniteGroupoid& a, const FiniteGroupoid& b) {
    const auto& x = a.t_;
    const auto& y = b.t_;
    return x.source == y.source && x.target == y.target && x.inverse == y.inverse &&
           x.identity == y.identity && x.composition == y.composition;
  }

 private:
  static Tables trivial_tables() {
    return Tables{{"*"}, {"e"}, {0}, {0}, {0}, {0}, {0}};
  }

  void check_structure() const {
    const std::size_t nm = t_.source.size();
    const std::size_t no = t_.identity.size();
    auto fail = [](const std::string& msg) { throw StructuralError("groupoid tables: " + msg); };
    if (no == 0) fail("no objects");
    if (t_.target.size() != nm || t_.inverse.size() != nm) fail("per-morphism tables differ in length");
    if (t_.composition.size() != nm * nm) fail("composition table is not |G1| x |G1|");
    if (t_.object_names.size() != no || t_.morphism_names.size() != nm) fail("name tables differ in length");
    for (std::size_t g = 0; g < nm; ++g) {
      if (t_.source[g] >= no || t_.target[g] >= no) fail("morphism " + std::to_string(g) + " has an unknown endpoint");
      if (t_.inverse[g] >= nm) fail("inverse of morphism " + std::to_string(g) + " out of range");
    }
    for (std::size_t x = 0; x < no; ++x) {
      if (t_.identity[x] >= nm) fail("identity of object " + std::to_string(x) + " out of range");
    }
    for (MorphismId c : t_.composition) {
      if (c != kNoMorphism && c >= nm) fail("composition entry out of range");
    }
  }

  Tables t_;
};

// --- validation -------------------------------------------------------------

enum class Axiom {
  kCompositionDomain,     // compose(g,h) defined iff target(g) == source(h)
  kCompositionEndpoints,  // source/target of a composite
  kAssociativity,
  kIdentityEndpoints,     // identity(x) is a loop at x
  kUnit,
  kInverseEndpoints,
  kInverse,
};

inline const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::kCompositionDomain: return "composition-domain";
    case Axiom::kCompositionEndpoints: return "composition-endpoints";
    case Axiom::kAssociativity: return "associativity";
    case Axiom::kIdentityEndpoints: return "identity-endpoints";
    case Axiom::kUnit: return "unit";
    case Axiom::kInverseEndpoints: return "inverse-endpoints";
    case Axiom::kInverse: return "inverse";
  }
  return "?";
}

struct AxiomViolation {
  Axiom axiom;
  std::vector<std::uint32_t> witnesses;  // morphism ids (object ids for identity axioms)
  std::string message;
};

using ValidationReport = std::vector<AxiomViolation>;

inline ValidationReport validate_groupoid(const FiniteGroupoid& g) {
  ValidationReport report;
  const auto nm = static_cast<MorphismId>(g.morphism_count());
  const auto no = static_cast<ObjectId>(g.object_count());
  auto add = [&](Axiom a, std::vector<std::uint32_t> w, const std::string& detail) {
    report.push_back({a, std::move(w), std::string(axiom_name(a)) + ": " + detail});
  };
  auto nm_of = [&](MorphismId m) { return g.morphism_name(m); };

  for (MorphismId a = 0; a < nm; ++a) {
    for (MorphismId b = 0; b < nm; ++b) {
      const MorphismId ab = g.compose(a, b);
      const bool should = g.target(a) == g.source(b);
      if ((ab != kNoMorphism) != should) {
        add(Axiom::kCompositionDomain, {a, b},
            "(" + nm_of(a) + ", " + nm_of(b) + ") " + (should ? "missing" : "defined but not composable"));
        continue;
      }
      if (ab == kNoMorphism) continue;
      if (g.source(ab) != g.source(a) || g.target(ab) != g.target(b)) {
        add(Axiom::kCompositionEndpoints, {a, b}, nm_of(a) + "." + nm_of(b) + " has wrong endpoints");
      }
    }
  }
  if (!report.empty()) return report;  // associativity is meaningless on a broken domain

  for (MorphismId a = 0; a < nm; ++a) {
    for (MorphismId b = 0; b < nm; ++b) {
      const MorphismId ab = g.compose(a, b);
      if (ab == kNoMorphism) continue;
      for (MorphismId c = 0; c < nm; ++c) {
        const MorphismId bc = g.compose(b, c);
        if (bc == kNoMorphism) continue;
        if (g.compose(ab, c) != g.compose(a, bc)) {
          add(Axiom::kAssociativity, {a, b, c},
              "(" + nm_of(a) + " " + nm_of(b) + ") " + nm_of(c) + " != " + nm_of(a) + " (" + nm_of(b) + " " +
                  nm_of(c) + ")");
        }
      }
    }
  }
  for (ObjectId x = 0; x < no; ++x) {
    const MorphismId e = g.identity(x);
    if (g.source(e) != x || g.target(e) != x) {
      add(Axiom::kIdentityEndpoints, {x}, "identity of " + g.object_name(x) + " is not a loop there");
      continue;
    }
    for (MorphismId a = 0; a < nm; ++a) {
      if (g.source(a) == x && g.compose(e, a) != a) {
        add(Axiom::kUnit, {e, a}, nm_of(e) + " is not a left unit for " + nm_of(a));
      }
      if (g.target(a) == x && g.compose(a, e) != a) {
        add(Axiom::kUnit, {a, e}, nm_of(e) + " is not a right unit for " + nm_of(a));
      }
    }
  }
  for (MorphismId a = 0; a < nm; ++a) {
    const MorphismId ai = g.inverse(a);
    if (g.source(ai) != g.target(a) || g.target(ai) != g.source(a)) {
      add(Axiom::kInverseEndpoints, {a, ai}, "inverse of " + nm_of(a) + " has wrong endpoints");
      continue;
    }
    if (g.compose(a, ai) != g.identity(g.source(a)) || g.compose(ai, a) != g.identity(g.target(a))) {
      add(Axiom::kInverse, {a, ai}, nm_of(a) + " composed with " + nm_of(ai) + " is not an identity");
    }
  }
  return report;
}

inline void require_valid(const FiniteGroupoid& g) {
  auto report = validate_groupoid(g);
  if (!report.empty()) throw AxiomError(axiom_name(report.front().axiom), report.front().message);
}

// --- groups -----------------------------------------------------------------

/// Multiplication table: product[i][j] is the index of element i*j.
struct GroupTable {
  std::vector<std::string> names;
  std::vector<std::vector<std::uint32_t>> product;

  std::size_t order() const noexcept { return product.size(); }
};

namespace detail {

inline std::uint32_t group_identity(const GroupTable& t) {
  const auto n = static_cast<std::uint32_t>(t.order());
  for (std::uint32_t e = 0; e < n; ++e) {
    bool unit = true;
    for (std::uint32_t x = 0; x < n && unit; ++x) unit = t.product[e][x] == x && t.product[x][e] == x;
    if (unit) return e;
  }
  return kNoMorphism;
}

}  // namespace detail

/// A group as a one-object groupoid. Morphism ids are element indices.
inline FiniteGroupoid group_as_groupoid(const GroupTable& table) {
  const auto n = static_cast<std::uint32_t>(table.order());
  if (n == 0) throw StructuralError("group table is empty");
  for (const auto& row : table.product) {
    if (row.size() != n) throw StructuralError("group table is not square");
    for (auto v : row)
      if (v >= n) throw StructuralError("group table entry out of range");
  }
  std::vector<std::string> names = table.names;
  if (names.empty()) {
    for (std::uint32_t i = 0; i < n; ++i) names.push_back("g" + std::to_string(i));
  }
  if (names.size() != n) throw StructuralError("group names do not match table size");

  const std::uint32_t e = detail::group_identity(table);
  if (e == kNoMorphism) throw AxiomError("identity", "group table has no two-sided identity");
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        if (table.product[table.product[a][b]][c] != table.product[a][table.product[b][c]])
          throw AxiomError("associativity", "group table is not associative at (" + names[a] + ", " + names[b] +
                                                ", " + names[c] + ")");
  std::vector<MorphismId> inverse(n, kNoMorphism);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      if (table.product[a][b] == e && table.product[b][a] == e) {
        inverse[a] = b;
        break;
      }
    }
    if (inverse[a] == kNoMorphism) throw AxiomError("inverse", "element " + names[a] + " has no inverse");
  }

  FiniteGroupoid::Tables t;
  t.object_names = {"*"};
  t.morphism_names = std::move(names);
  t.source.assign(n, 0);
  t.target.assign(n, 0);
  t.inverse = std::move(inverse);
  t.identity = {e};
  t.composition.resize(static_cast<std::size_t>(n) * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) t.composition[static_cast<std::size_t>(a) * n + b] = table.product[a][b];
  return FiniteGroupoid(std::move(t));
}

/// Right action of a group on a finite point set: image[g][p] = p . g
struct GroupAction {
  std::vector<std::string> point_names;
  std::vector<std::vector<std::uint32_t>> image;
};

/// The action groupoid: objects are points, morphisms are pairs (p, g) from p
/// to p.g, numbered lexicographically as p * |G| + g.
inline FiniteGroupoid action_groupoid(const FiniteGroupoid& group, const GroupAction& action) {
  if (group.object_count() != 1) throw StructuralError("action_groupoid: acting groupoid must have one object");
  const auto ng = static_cast<std::uint32_t>(group.morphism_count());
  const auto np = static_cast<std::uint32_t>(action.point_names.size());
  if (np == 0) throw StructuralError("action_groupoid: empty point set");
  if (action.image.size() != ng) throw StructuralError("action_groupoid: action table needs one row per element");
  for (const auto& row : action.image) {
    if (row.size() != np) throw StructuralError("action_groupoid: action row has wrong length");
    for (auto p : row)
      if (p >= np) throw StructuralError("action_groupoid: action maps to an unknown point");
  }
  const MorphismId e = group.identity(0);
  for (std::uint32_t p = 0; p < np; ++p) {
    if (action.image[e][p] != p)
      throw AxiomError("action-identity", "identity moves point " + action.point_names[p]);
  }
  for (std::uint32_t g = 0; g < ng; ++g)
    for (std::uint32_t h = 0; h < ng; ++h)
      for (std::uint32_t p = 0; p < np; ++p)
        if (action.image[h][action.image[g][p]] != action.image[group.compose(g, h)][p])
          throw AxiomError("action-compatibility", "(" + action.point_names[p] + "." + group.morphism_name(g) +
                                                       ")." + group.morphism_name(h) + " != " +
                                                       action.point_names[p] + ".(" + group.morphism_name(g) + " " +
                                                       group.morphism_name(h) + ")");

  const std::uint32_t nm = np * ng;
  FiniteGroupoid::Tables t;
  t.object_names = action.point_names;
  t.source.resize(nm);
  t.target.resize(nm);
  t.inverse.resize(nm);
  t.morphism_names.resize(nm);
  t.composition.assign(static_cast<std::size_t>(nm) * nm, kNoMorphism);
  for (std::uint32_t p = 0; p < np; ++p) {
    for (std::uint32_t g = 0; g < ng; ++g) {
      const std::uint32_t m = p * ng + g;
      const std::uint32_t q = action.image[g][p];
      t.source[m] = p;
      t.target[m] = q;
      t.inverse[m] = q * ng + group.inverse(g);
      t.morphism_names[m] = "(" + action.point_names[p] + "," + group.morphism_name(g) + ")";
      for (std::uint32_t h = 0; h < ng; ++h) {
        t.composition[static_cast<std::size_t>(m) * nm + q * ng + h] = p * ng + group.compose(g, h);
      }
    }
  }
  for (std::uint32_t p = 0; p < np; ++p) t.identity.push_back(p * ng + e);
  return FiniteGroupoid(std::move(t));
}

/// Disjoint union; morphisms and objects of b are numbered after those of a.
inline FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  const auto& ta = a.tables();
  const auto& tb = b.tables();
  const auto oa = static_cast<std::uint32_t>(a.object_count());
  const auto ma = static_cast<std::uint32_t>(a.morphism_count());
  const auto mb = static_cast<std::uint32_t>(b.morphism_count());
  const std::uint32_t nm = ma + mb;
  FiniteGroupoid::Tables t;
  t.object_names = ta.object_names;
  t.morphism_names = ta.morphism_names;
  t.source = ta.source;
  t.target = ta.target;
  t.inverse = ta.inverse;
  t.identity = ta.identity;
  for (const auto& n : tb.object_names) t.object_names.push_back(n + "'");
  for (const auto& n : tb.morphism_names) t.morphism_names.push_back(n + "'");
  for (std::uint32_t g = 0; g < mb; ++g) {
    t.source.push_back(tb.source[g] + oa);
    t.target.push_back(tb.target[g] + oa);
    t.inverse.push_back(tb.inverse[g] + ma);
  }
  for (auto e : tb.identity) t.identity.push_back(e + ma);
  t.composition.assign(static_cast<std::size_t>(nm) * nm, kNoMorphism);
  for (std::uint32_t g = 0; g < ma; ++g)
    for (std::uint32_t h = 0; h < ma; ++h) t.composition[static_cast<std::size_t>(g) * nm + h] = a.compose(g, h);
  for (std::uint32_t g = 0; g < mb; ++g)
    for (std::uint32_t h = 0; h < mb; ++h) {
      const MorphismId c = b.compose(g, h);
      t.composition[static_cast<std::size_t>(g + ma) * nm + h + ma] = c == kNoMorphism ? kNoMorphism : c + ma;
    }
  return FiniteGroupoid(std::move(t));
}

// --- inertia ----------------------------------------------------------------

/// Labels of the inertia groupoid in terms of the original groupoid.
struct InertiaLabel {
  std::vector<MorphismId> object_automorphism;                    // object a -> a
  std::vector<std::pair<MorphismId, MorphismId>> morphism_pair;  // (a, v)
};

struct InertiaGroupoid {
  FiniteGroupoid groupoid;
  InertiaLabel label;
};

/// Objects are the automorphisms a of g (in id order); morphisms are pairs
/// (a, v) with source(v) == source(a), going from a to v^-1 a v.
inline InertiaGroupoid inertia(const FiniteGroupoid& g) {
  InertiaLabel label;
  const auto nm = static_cast<MorphismId>(g.morphism_count());
  std::vector<ObjectId> object_of(nm, kNoMorphism);
  for (MorphismId a = 0; a < nm; ++a) {
    if (g.is_automorphism(a)) {
      object_of[a] = static_cast<ObjectId>(label.object_automorphism.size());
      label.object_automorphism.push_back(a);
    }
  }
  std::vector<std::vector<MorphismId>> out_of(g.object_count());
  for (MorphismId v = 0; v < nm; ++v) out_of[g.source(v)].push_back(v);

  // morphism id of (a, v) = offset[object_of[a]] + position of v in out_of[source(a)]
  std::vector<std::uint32_t> offset;
  for (MorphismId a : label.object_automorphism) {
    offset.push_back(static_cast<std::uint32_t>(label.morphism_pair.size()));
    for (MorphismId v : out_of[g.source(a)]) label.morphism_pair.emplace_back(a, v);
  }
  auto position_of = [&](MorphismId v) {
    const auto& list = out_of[g.source(v)];
    return static_cast<std::uint32_t>(std::lower_bound(list.begin(), list.end(), v) - list.begin());
  };
  auto id_of = [&](MorphismId a, MorphismId v) { return offset[object_of[a]] + position_of(v); };
  auto conj = [&](MorphismId a, MorphismId v) { return g.compose({g.inverse(v), a, v}); };

  const auto n1 = static_cast<std::uint32_t>(label.morphism_pair.size());
  FiniteGroupoid::Tables t;
  for (MorphismId a : label.object_automorphism) {
    t.object_names.push_back(g.morphism_name(a));
    t.identity.push_back(id_of(a, g.identity(g.source(a))));
  }
  t.composition.assign(static_cast<std::size_t>(n1) * n1, kNoMorphism);
  for (std::uint32_t m = 0; m < n1; ++m) {
    const auto [a, v] = label.morphism_pair[m];
    const MorphismId b = conj(a, v);
    t.source.push_back(object_of[a]);
    t.target.push_back(object_of[b]);
    t.inverse.push_back(id_of(b, g.inverse(v)));
    t.morphism_names.push_back("(" + g.morphism_name(a) + "," + g.morphism_name(v) + ")");
    for (MorphismId w : out_of[g.source(b)]) {
      t.composition[static_cast<std::size_t>(m) * n1 + id_of(b, w)] = id_of(a, g.compose(v, w));
    }
  }
  return {FiniteGroupoid(std::move(t)), std::move(label)};
}

/// Partition of objects into connected components; blocks sorted, ordered by
/// least object id.
inline std::vector<std::vector<ObjectId>> connected_components(const FiniteGroupoid& g) {
  std::vector<ObjectId> parent(g.object_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](ObjectId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (MorphismId m = 0; m < g.morphism_count(); ++m) {
    ObjectId a = find(g.source(m));
    ObjectId b = find(g.target(m));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<ObjectId>> blocks;
  std::vector<std::size_t> block_of(g.object_count(), 0);
  for (ObjectId x = 0; x < g.object_count(); ++x) {
    const ObjectId r = find(x);
    if (r == x) {
      block_of[x] = blocks.size();
      blocks.push_back({x});
    } else {
      blocks[block_of[r]].push_back(x);
    }
  }
  return blocks;
}

/// Automorphism group at x, elements in morphism-id order.
inline GroupTable isotropy_group(const FiniteGroupoid& g, ObjectId x) {
  if (x >= g.object_count()) throw std::out_of_range("isotropy_group: unknown object " + std::to_string(x));
  std::vector<MorphismId> elements;
  for (MorphismId m = 0; m < g.morphism_count(); ++m)
    if (g.source(m) == x && g.target(m) == x) elements.push_back(m);
  GroupTable table;
  for (MorphismId m : elements) table.names.push_back(g.morphism_name(m));
  auto index = [&](MorphismId m) {
    return static_cast<std::uint32_t>(std::lower_bound(elements.begin(), elements.end(), m) - elements.begin());
  };
  for (MorphismId a : elements) {
    std::vector<std::uint32_t> row;
    for (MorphismId b : elements) row.push_back(index(g.compose(a, b)));
    table.product.push_back(std::move(row));
  }
  return table;
}

}  // namespace orbinerve
