#pragma once

// Additive Chen-Ruan orbifold cohomology from sector data: each twisted
// sector contributes its Betti numbers shifted up by twice its age.

#include "orbinerve/groupoid.hpp"
#include "orbinerve/numbers.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbinerve {

/// Exponents a_j in [0, 1) of the eigenvalues exp(2 pi i a_j) of a
/// finite-order linear action.
struct EigenExponents {
  std::vector<Rational> a;
};

struct SectorData {
  std::string id;
  Rational age;
  std::vector<std::size_t> betti;
};

class SectorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Rational age(const EigenExponents& e) {
  Rational sum = 0;
  for (const auto& v : e.a) {
    if (v < 0 || v >= 1) throw SectorError("eigenvalue exponent " + to_string(v) + " outside [0, 1)");
    sum += v;
  }
  return sum;
}

inline bool is_integral(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

inline bool is_sl(const std::vector<EigenExponents>& elements) {
  for (const auto& e : elements)
    if (!is_integral(age(e))) return false;
  return true;
}

inline bool is_sl(const std::vector<SectorData>& sectors) {
  for (const auto& s : sectors)
    if (!is_integral(s.age)) return false;
  return true;
}

/// rank H_orb^m = sum over sectors of betti[m - 2 age]; degrees are exact
/// rationals so that non-SL data keeps its fractional grading.
inline std::map<Rational, std::size_t> orbifold_cohomology_ranks(const std::vector<SectorData>& sectors) {
  std::map<Rational, std::size_t> ranks;
  for (const auto& s : sectors) {
    if (s.age < 0) throw SectorError("sector " + s.id + " has negative age");
    for (std::size_t k = 0; k < s.betti.size(); ++k) {
      if (s.betti[k] == 0) continue;
      ranks[Rational(static_cast<long long>(k)) + 2 * s.age] += s.betti[k];
    }
  }
  return ranks;
}

struct HorbComparison {
  std::size_t even_total = 0;
  std::size_t odd_total = 0;
  std::size_t hp0 = 0;
  std::size_t hp1 = 0;
  bool matches() const { return even_total == hp0 && odd_total == hp1; }
};

/// Even and odd totals of H_orb against HP_0 and HP_1. Only defined for SL
/// data, where every degree is an integer.
inline HorbComparison compare_hp_horb(const std::vector<SectorData>& sectors, std::size_t hp0, std::size_t hp1) {
  if (!is_sl(sectors)) throw SectorError("compare_hp_horb: sector ages must be integers (SL hypothesis)");
  HorbComparison c;
  c.hp0 = hp0;
  c.hp1 = hp1;
  for (const auto& [degree, rank] : orbifold_cohomology_ranks(sectors)) {
    const Integer m = boost::multiprecision::numerator(degree);
    (m % 2 == 0 ? c.even_total : c.odd_total) += rank;
  }
  return c;
}

/// [pt/G]: one point sector per component of the inertia groupoid, age 0.
inline std::vector<SectorData> point_quotient_sectors(const FiniteGroupoid& g) {
  const InertiaGroupoid ig = inertia(g);
  std::vector<SectorData> out;
  for (const auto& block : connected_components(ig.groupoid))
    out.push_back({"(" + g.morphism_name(ig.label.object_automorphism[block.front()]) + ")", Rational(0), {1}});
  return out;
}

/// Rank of K_orb^0 (tensored with C) of [pt/G], taken as the rank of the
/// representation rings: the class count of each isotropy group, summed over
/// isomorphism classes of objects. Counted from the isotropy tables directly,
/// not from the inertia groupoid. K_orb^1 is zero.
inline std::size_t point_quotient_korb_rank(const FiniteGroupoid& g) {
  std::size_t total = 0;
  for (const auto& block : connected_components(g)) {
    const GroupTable h = isotropy_group(g, block.front());
    const std::size_t n = h.order();
    std::uint32_t e = 0;
    while (h.product[e][e] != e) ++e;
    std::vector<std::uint32_t> inv(n);
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b)
        if (h.product[a][b] == e) inv[a] = b;
    std::vector<char> seen(n, 0);
    for (std::uint32_t a = 0; a < n; ++a) {
      if (seen[a]) continue;
      ++total;
      for (std::uint32_t v = 0; v < n; ++v) seen[h.product[h.product[inv[v]][a]][v]] = 1;
    }
  }
  return total;
}

}  // namespace orbinerve
