#pragma once

// Shared fixtures and independent oracles for the test binaries. Nothing in
// here calls the homology engine: the oracles are closed forms or brute force.

#include "orbinerve/catalog.hpp"
#include "orbinerve/configuration.hpp"
#include "orbinerve/groupoid.hpp"
#include "orbinerve/homology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace testing_support {

using namespace orbinerve;

inline FiniteGroupoid cyclic(std::uint32_t n) { return group_as_groupoid(catalog::cyclic_group(n)); }
inline FiniteGroupoid s3() { return group_as_groupoid(catalog::symmetric_group(3)); }
inline FiniteGroupoid s3_on_three_points() { return action_groupoid(s3(), catalog::natural_action(3)); }

struct Named {
  std::string name;
  FiniteGroupoid g;
};

/// The six groupoids the acceptance criteria run over.
inline std::vector<Named> six_groupoids() {
  return {{"trivial", FiniteGroupoid()}, {"Z2", cyclic(2)}, {"Z3", cyclic(3)},
          {"Z4", cyclic(4)},             {"S3", s3()},      {"S3 x {1,2,3}", s3_on_three_points()}};
}

/// Integral homology of Z/n: Z, then Z/n in odd degrees and 0 in positive
/// even degrees (the periodic resolution of Z over Z[Z/n]).
inline DegreeHomology cyclic_group_homology(std::uint32_t n, std::size_t degree) {
  DegreeHomology h;
  if (degree == 0) {
    h.free_rank = 1;
  } else if (degree % 2 == 1 && n > 1) {
    h.torsion.push_back(Integer(n));
  }
  return h;
}

/// Integral homology of S3: Z/2 in degrees 1 mod 4, Z/6 in degrees 3 mod 4,
/// 0 in positive even degrees (from the 2- and 3-primary parts).
inline DegreeHomology s3_homology(std::size_t degree) {
  DegreeHomology h;
  if (degree == 0) h.free_rank = 1;
  else if (degree % 4 == 1) h.torsion.push_back(Integer(2));
  else if (degree % 4 == 3) h.torsion.push_back(Integer(6));
  return h;
}

/// Brute-force automorphism group at x: the elements g with source = target = x.
inline std::vector<MorphismId> loops_at(const FiniteGroupoid& g, ObjectId x) {
  std::vector<MorphismId> out;
  for (MorphismId m = 0; m < g.morphism_count(); ++m)
    if (g.source(m) == x && g.target(m) == x) out.push_back(m);
  return out;
}

/// Conjugacy classes of a one-object groupoid, by direct conjugation.
inline std::vector<std::vector<MorphismId>> conjugacy_classes(const FiniteGroupoid& g) {
  std::vector<int> seen(g.morphism_count(), 0);
  std::vector<std::vector<MorphismId>> classes;
  for (MorphismId a = 0; a < g.morphism_count(); ++a) {
    if (seen[a]) continue;
    std::vector<MorphismId> cls;
    for (MorphismId v = 0; v < g.morphism_count(); ++v) {
      const MorphismId c = g.compose(g.compose(g.inverse(v), a), v);
      if (!seen[c]) {
        seen[c] = 1;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(cls);
  }
  return classes;
}

/// Centralizer of a in a one-object groupoid, as a group table.
inline GroupTable centralizer(const FiniteGroupoid& g, MorphismId a) {
  std::vector<MorphismId> elems;
  for (MorphismId v = 0; v < g.morphism_count(); ++v)
    if (g.compose(a, v) == g.compose(v, a)) elems.push_back(v);
  GroupTable t;
  for (auto v : elems) t.names.push_back(g.morphism_name(v));
  t.product.assign(elems.size(), std::vector<std::uint32_t>(elems.size()));
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) {
      const MorphismId p = g.compose(elems[i], elems[j]);
      t.product[i][j] = static_cast<std::uint32_t>(std::find(elems.begin(), elems.end(), p) - elems.begin());
    }
  return t;
}

/// Components of inertia(G) for an action groupoid, counted as pairs
/// (orbit, conjugacy class of the stabilizer of a representative).
inline std::size_t orbit_stabilizer_sector_count(const FiniteGroupoid& g) {
  std::vector<int> seen(g.object_count(), 0);
  std::size_t total = 0;
  for (ObjectId x = 0; x < g.object_count(); ++x) {
    if (seen[x]) continue;
    for (MorphismId m = 0; m < g.morphism_count(); ++m)
      if (g.source(m) == x) seen[g.target(m)] = 1;
    const auto loops = loops_at(g, x);
    std::vector<int> done(g.morphism_count(), 0);
    for (MorphismId a : loops) {
      if (done[a]) continue;
      ++total;
      for (MorphismId v : loops) done[g.compose({g.inverse(v), a, v})] = 1;
    }
  }
  return total;
}

/// Direct sum of finitely generated abelian groups, with the torsion put
/// back into invariant-factor form through prime-power decomposition.
inline DegreeHomology direct_sum(const std::vector<DegreeHomology>& parts) {
  DegreeHomology out;
  std::map<std::uint64_t, std::vector<std::uint64_t>> powers;  // prime -> prime powers
  for (const auto& p : parts) {
    out.free_rank += p.free_rank;
    for (const auto& t : p.torsion) {
      auto n = static_cast<std::uint64_t>(t);
      for (std::uint64_t q = 2; n > 1; ++q) {
        std::uint64_t pw = 1;
        while (n % q == 0) {
          n /= q;
          pw *= q;
        }
        if (pw > 1) powers[q].push_back(pw);
      }
    }
  }
  std::size_t length = 0;
  for (auto& [q, list] : powers) {
    std::sort(list.rbegin(), list.rend());
    length = std::max(length, list.size());
  }
  std::vector<std::uint64_t> factors(length, 1);  // largest first
  for (const auto& [q, list] : powers)
    for (std::size_t i = 0; i < list.size(); ++i) factors[i] *= list[i];
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) out.torsion.push_back(Integer(*it));
  return out;
}

/// Random positive rationals with a common denominator D <= max_den, summing
/// to 1: a random composition of D into `count` positive parts.
inline std::vector<Rational> random_interior_coords(std::size_t count, unsigned max_den, std::mt19937& gen) {
  std::uniform_int_distribution<unsigned> den(static_cast<unsigned>(count), max_den);
  const unsigned d = den(gen);
  // choose count - 1 distinct cut points in 1..d-1
  std::vector<unsigned> cuts(d - 1);
  std::iota(cuts.begin(), cuts.end(), 1u);
  std::shuffle(cuts.begin(), cuts.end(), gen);
  cuts.resize(count - 1);
  cuts.push_back(0);
  cuts.push_back(d);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Rational> u;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) u.emplace_back(cuts[i + 1] - cuts[i], d);
  return u;
}

inline std::mt19937& rng() {
  static std::mt19937 gen(20240917u);
  return gen;
}

}  // namespace testing_support
