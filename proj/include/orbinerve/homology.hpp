#pragma once

// Chain complexes of (cyclic) level sets and their homology: simplicial
// homology, Hochschild homology, cyclic homology from the (b, -b', 1-T, N)
// bicomplex, the Connes maps I and S, and periodic homology.
//
// Every result carries a validity bound: the highest degree it is exact in.
// With levels enumerated up to `cap`, degree k needs the boundary out of
// degree k + 1, so results are valid up to cap - 1.

#include "orbinerve/level_set.hpp"
#include "orbinerve/numbers.hpp"
#include "orbinerve/smith.hpp"
#include "orbinerve/sparse_matrix.hpp"

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbinerve {

enum class Ring { kIntegers, kRationals };

inline const char* ring_name(Ring r) { return r == Ring::kIntegers ? "Z" : "Q"; }

/// Asking for a degree the computation cannot vouch for.
class OutOfValidity : public std::out_of_range {
 public:
  OutOfValidity(std::size_t degree, std::size_t validity)
      : std::out_of_range("degree " + std::to_string(degree) + " exceeds validity bound " +
                          std::to_string(validity)) {}
};

/// A complex that fails d o d = 0, or operators that fail their identities.
class ChainComplexError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct ChainComplex {
  Ring ring = Ring::kIntegers;
  std::size_t cap = 0;
  std::vector<std::size_t> dims;                 // degrees 0..cap
  std::vector<SparseMatrix> boundary;            // boundary[n]: C_n -> C_{n-1}; boundary[0] is 0 x dims[0]
  std::vector<std::vector<SimplexIndex>> basis;  // simplex indices per degree, when the basis is simplices
};

struct DegreeHomology {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors >= 2, each dividing the next

  friend bool operator==(const DegreeHomology&, const DegreeHomology&) = default;
};

struct HomologyResult {
  Ring ring = Ring::kIntegers;
  std::vector<DegreeHomology> degrees;  // 0..validity
  std::size_t validity = 0;

  const DegreeHomology& at(std::size_t k) const {
    if (k > validity || k >= degrees.size()) throw OutOfValidity(k, validity);
    return degrees[k];
  }
  std::size_t rank(std::size_t k) const { return at(k).free_rank; }
};

inline std::string describe(const DegreeHomology& h) {
  std::string out;
  if (h.free_rank > 0) out = h.free_rank == 1 ? "Z" : "Z^" + std::to_string(h.free_rank);
  for (const auto& t : h.torsion) out += (out.empty() ? "" : " + ") + ("Z/" + t.str());
  return out.empty() ? "0" : out;
}

inline void check_complex(const ChainComplex& c) {
  for (std::size_t n = 2; n < c.boundary.size(); ++n) {
    if (!(c.boundary[n - 1] * c.boundary[n]).is_zero())
      throw ChainComplexError("boundary squares to a nonzero map out of degree " + std::to_string(n));
  }
}

// --- chains of level sets ---------------------------------------------------

namespace detail {

inline void require_levels(const SimplicialLevelSet& x, std::size_t cap) {
  if (cap > x.max_level())
    throw std::invalid_argument("cap " + std::to_string(cap) + " exceeds the enumerated levels (max " +
                                std::to_string(x.max_level()) + ")");
  if (cap == 0) throw std::invalid_argument("cap must be at least 1");
}

// sum_{i in faces} (-1)^i d_i on the full level
inline SparseMatrix alternating_faces(const SimplicialLevelSet& x, std::size_t n, std::size_t last_face) {
  SparseMatrix m(x.size(n - 1), x.size(n));
  for (SimplexIndex k = 0; k < x.size(n); ++k) {
    std::vector<SparseMatrix::Entry> col;
    for (std::size_t i = 0; i <= last_face; ++i) col.push_back({x.face(n, i, k), i % 2 == 0 ? 1 : -1});
    m.set_column(k, std::move(col));
  }
  return m;
}

}  // namespace detail

/// Normalized chains: nondegenerate simplices, alternating face sum with
/// degenerate faces dropped.
inline ChainComplex normalized_chains(const SimplicialLevelSet& x, Ring ring, std::size_t cap) {
  detail::require_levels(x, cap);
  ChainComplex c;
  c.ring = ring;
  c.cap = cap;
  std::vector<std::vector<std::uint32_t>> position(cap + 1);
  for (std::size_t n = 0; n <= cap; ++n) {
    c.basis.push_back(x.nondegenerate(n));
    c.dims.push_back(c.basis.back().size());
    position[n].assign(x.size(n), kNoMorphism);
    for (std::uint32_t p = 0; p < c.basis[n].size(); ++p) position[n][c.basis[n][p]] = p;
  }
  c.boundary.emplace_back(0, c.dims[0]);
  for (std::size_t n = 1; n <= cap; ++n) {
    SparseMatrix d(c.dims[n - 1], c.dims[n]);
    for (std::uint32_t p = 0; p < c.dims[n]; ++p) {
      std::vector<SparseMatrix::Entry> col;
      for (std::size_t i = 0; i <= n; ++i) {
        const SimplexIndex f = x.face(n, i, c.basis[n][p]);
        if (!x.is_degenerate(n - 1, f)) col.push_back({position[n - 1][f], i % 2 == 0 ? 1 : -1});
      }
      d.set_column(p, std::move(col));
    }
    c.boundary.push_back(std::move(d));
  }
  check_complex(c);
  return c;
}

/// All simplices, degenerate ones included.
inline ChainComplex unnormalized_chains(const SimplicialLevelSet& x, Ring ring, std::size_t cap) {
  detail::require_levels(x, cap);
  ChainComplex c;
  c.ring = ring;
  c.cap = cap;
  for (std::size_t n = 0; n <= cap; ++n) {
    c.dims.push_back(x.size(n));
    std::vector<SimplexIndex> all(x.size(n));
    for (SimplexIndex k = 0; k < all.size(); ++k) all[k] = k;
    c.basis.push_back(std::move(all));
  }
  c.boundary.emplace_back(0, c.dims[0]);
  for (std::size_t n = 1; n <= cap; ++n) c.boundary.push_back(detail::alternating_faces(x, n, n));
  check_complex(c);
  return c;
}

// --- homology -------------------------------------------------------------

/// H_n = ker d_n / im d_{n+1} for n <= cap - 1; over Z via Smith invariants,
/// over Q by rank.
inline HomologyResult homology(const ChainComplex& c) {
  if (c.cap == 0 || c.boundary.size() != c.cap + 1) throw std::invalid_argument("homology: complex needs cap >= 1");
  HomologyResult h;
  h.ring = c.ring;
  h.validity = c.cap - 1;
  std::vector<std::vector<Integer>> invariants(c.cap + 1);
  for (std::size_t n = 1; n <= c.cap; ++n) invariants[n] = smith_normal_form(c.boundary[n]);
  for (std::size_t n = 0; n <= h.validity; ++n) {
    const std::size_t rank_out = n == 0 ? 0 : invariants[n].size();
    const std::size_t rank_in = invariants[n + 1].size();
    DegreeHomology d;
    d.free_rank = c.dims[n] - rank_out - rank_in;
    if (c.ring == Ring::kIntegers) {
      for (const auto& v : invariants[n + 1])
        if (v > 1) d.torsion.push_back(v);
    }
    h.degrees.push_back(std::move(d));
  }
  return h;
}

inline HomologyResult simplicial_homology(const SimplicialLevelSet& x, Ring ring, std::size_t cap) {
  return homology(normalized_chains(x, ring, cap));
}

/// Hochschild homology of a cyclic level set: homology of its normalized
/// chains under b. `max_degree` bounds the work (and the validity).
inline HomologyResult hochschild_homology(const CyclicLevelSet& x, Ring ring, std::size_t cap,
                                          std::size_t max_degree = std::numeric_limits<std::size_t>::max()) {
  const std::size_t effective = max_degree < cap ? max_degree + 1 : cap;
  return homology(normalized_chains(x, ring, effective));
}

// --- the cyclic bicomplex -------------------------------------------------

/// b, b', T and N on the full (unnormalized) chains of a cyclic level set.
/// Index n holds the operators out of degree n; b[0], b'[0] are 0 x dims[0].
struct HochschildOperators {
  Ring ring = Ring::kIntegers;
  std::size_t cap = 0;
  std::vector<SparseMatrix> b;
  std::vector<SparseMatrix> b_prime;
  std::vector<SparseMatrix> t;  // T = (-1)^n t_n
  std::vector<SparseMatrix> n;  // N = 1 + T + ... + T^n
};

/// Builds the operators and checks b^2 = 0, b'^2 = 0, b(1-T) = (1-T)b' and
/// b'N = Nb as exact matrix identities, degree by degree.
inline HochschildOperators hochschild_operators(const CyclicLevelSet& x, Ring ring, std::size_t cap,
                                                bool verify_cyclic_identities = true) {
  detail::require_levels(x, cap);
  if (verify_cyclic_identities) {
    auto report = verify_identities(x, 1);
    if (!report.empty()) throw ChainComplexError("cyclic identities fail: " + report.front().describe());
  }
  HochschildOperators ops;
  ops.ring = ring;
  ops.cap = cap;
  for (std::size_t n = 0; n <= cap; ++n) {
    if (n == 0) {
      ops.b.emplace_back(0, x.size(0));
      ops.b_prime.emplace_back(0, x.size(0));
    } else {
      ops.b.push_back(detail::alternating_faces(x, n, n));
      ops.b_prime.push_back(detail::alternating_faces(x, n, n - 1));
    }
    const std::int64_t sign = n % 2 == 0 ? 1 : -1;
    SparseMatrix t(x.size(n), x.size(n));
    std::vector<std::vector<SparseMatrix::Entry>> ncols(x.size(n));
    for (SimplexIndex k = 0; k < x.size(n); ++k) {
      t.set_column(k, {{x.cyclic(n, k), sign}});
      // N e_k = sum_j T^j e_k = sum_j sign^j e_{t^j k}
      SimplexIndex r = k;
      std::int64_t s = 1;
      for (std::size_t j = 0; j <= n; ++j) {
        ncols[k].push_back({r, s});
        r = x.cyclic(n, r);
        s *= sign;
      }
    }
    ops.t.push_back(std::move(t));
    ops.n.push_back(assemble(x.size(n), std::move(ncols)));
  }

  for (std::size_t n = 1; n <= cap; ++n) {
    const auto one_minus_t = [&](std::size_t d) { return SparseMatrix::identity(x.size(d)) - ops.t[d]; };
    if (n >= 2 && !(ops.b[n - 1] * ops.b[n]).is_zero())
      throw ChainComplexError("b^2 != 0 out of degree " + std::to_string(n));
    if (n >= 2 && !(ops.b_prime[n - 1] * ops.b_prime[n]).is_zero())
      throw ChainComplexError("b'^2 != 0 out of degree " + std::to_string(n));
    if (!(ops.b[n] * one_minus_t(n) == one_minus_t(n - 1) * ops.b_prime[n]))
      throw ChainComplexError("b(1-T) != (1-T)b' out of degree " + std::to_string(n));
    if (!(ops.b_prime[n] * ops.n[n] == ops.n[n - 1] * ops.b[n]))
      throw ChainComplexError("b'N != Nb out of degree " + std::to_string(n));
  }
  return ops;
}

namespace detail {

inline std::vector<std::size_t> total_offsets(const HochschildOperators& ops, std::size_t k) {
  // Tot_k = C_k (column 0) + C_{k-1} (column 1) + ... + C_0 (column k)
  std::vector<std::size_t> offset(k + 2, 0);
  for (std::size_t p = 0; p <= k; ++p) offset[p + 1] = offset[p] + ops.t[k - p].cols();
  return offset;
}

}  // namespace detail

/// Total complex of the first-quadrant bicomplex with columns alternating
/// (b, -b') and horizontal maps alternating (1 - T, N), degrees 0..cap.
inline ChainComplex cyclic_total_complex(const HochschildOperators& ops) {
  ChainComplex c;
  c.ring = ops.ring;
  c.cap = ops.cap;
  for (std::size_t k = 0; k <= ops.cap; ++k) c.dims.push_back(detail::total_offsets(ops, k).back());
  c.boundary.emplace_back(0, c.dims[0]);
  for (std::size_t k = 1; k <= ops.cap; ++k) {
    const auto src = detail::total_offsets(ops, k);
    const auto dst = detail::total_offsets(ops, k - 1);
    std::vector<std::vector<SparseMatrix::Entry>> cols(c.dims[k]);
    for (std::size_t p = 0; p <= k; ++p) {
      const std::size_t q = k - p;
      if (q >= 1) {
        const SparseMatrix v = p % 2 == 0 ? ops.b[q] : ops.b_prime[q].scaled(-1);
        add_block(cols, v, dst[p], src[p]);
      }
      if (p >= 1) {
        const SparseMatrix h =
            p % 2 == 1 ? SparseMatrix::identity(ops.t[q].cols()) - ops.t[q] : ops.n[q];
        add_block(cols, h, dst[p - 1], src[p]);
      }
    }
    c.boundary.push_back(assemble(c.dims[k - 1], std::move(cols)));
  }
  check_complex(c);
  return c;
}

inline HomologyResult cyclic_homology(const CyclicLevelSet& x, Ring ring, std::size_t cap,
                                      std::size_t max_degree = std::numeric_limits<std::size_t>::max()) {
  const std::size_t effective = max_degree < cap ? max_degree + 1 : cap;
  return homology(cyclic_total_complex(hochschild_operators(x, ring, effective)));
}

// --- Connes maps ------------------------------------------------------------

/// Rank over Q of the map induced on homology by a chain map f between
/// degree-k groups: rank [[dA_k, 0], [f_k, dB_{k+1}]] - rank dA_k - rank dB_{k+1}.
inline std::size_t induced_rank(const SparseMatrix& d_source, const SparseMatrix& f, const SparseMatrix& d_target_in) {
  const std::size_t rows = d_source.rows() + f.rows();
  std::vector<std::vector<SparseMatrix::Entry>> cols(d_source.cols() + d_target_in.cols());
  add_block(cols, d_source, 0, 0);
  add_block(cols, f, d_source.rows(), 0);
  add_block(cols, d_target_in, d_source.rows(), d_source.cols());
  const SparseMatrix phi = assemble(rows, std::move(cols));
  return matrix_rank(phi) - matrix_rank(d_source) - matrix_rank(d_target_in);
}

struct ConnesDegree {
  std::size_t degree = 0;
  std::size_t hh_rank = 0;
  std::size_t hc_rank = 0;
  std::size_t hc_minus_two_rank = 0;  // 0 when degree < 2
  std::size_t rank_i = 0;             // rank of I: HH_k -> HC_k
  std::size_t rank_s = 0;             // rank of S: HC_k -> HC_{k-2}
  bool splits = false;                // I injective, S surjective, ranks add up
};

struct ConnesMaps {
  std::vector<SparseMatrix> inclusion;   // I_k: C_k -> Tot_k
  std::vector<SparseMatrix> periodicity; // S_k: Tot_k -> Tot_{k-2}; empty 0-column placeholder for k < 2
  std::vector<ConnesDegree> degrees;     // 0..validity
  std::size_t validity = 0;

  bool all_split() const {
    for (const auto& d : degrees)
      if (!d.splits) return false;
    return true;
  }
};

/// Chain-level I and S, checked to be chain maps, together with the ranks of
/// the maps they induce on rational homology.
inline ConnesMaps connes_maps(const CyclicLevelSet& x, Ring ring, std::size_t cap) {
  const HochschildOperators ops = hochschild_operators(x, ring, cap);
  const ChainComplex tot = cyclic_total_complex(ops);
  ConnesMaps out;
  out.validity = cap - 1;

  for (std::size_t k = 0; k <= cap; ++k) {
    SparseMatrix inc(tot.dims[k], ops.t[k].cols());
    for (std::size_t j = 0; j < inc.cols(); ++j) inc.set_column(j, {{static_cast<std::uint32_t>(j), 1}});
    out.inclusion.push_back(std::move(inc));
    if (k < 2) {
      out.periodicity.emplace_back(0, tot.dims[k]);
      continue;
    }
    // column p >= 2 of Tot_k goes identically onto column p - 2 of Tot_{k-2}
    const auto src = detail::total_offsets(ops, k);
    const auto dst = detail::total_offsets(ops, k - 2);
    SparseMatrix s(tot.dims[k - 2], tot.dims[k]);
    for (std::size_t p = 2; p <= k; ++p)
      for (std::size_t j = 0; j < src[p + 1] - src[p]; ++j)
        s.set_column(src[p] + j, {{static_cast<std::uint32_t>(dst[p - 2] + j), 1}});
    out.periodicity.push_back(std::move(s));
  }
  for (std::size_t k = 1; k <= cap; ++k) {
    if (!(tot.boundary[k] * out.inclusion[k] == out.inclusion[k - 1] * ops.b[k]))
      throw ChainComplexError("I is not a chain map in degree " + std::to_string(k));
    if (k >= 3 && !(tot.boundary[k - 2] * out.periodicity[k] == out.periodicity[k - 1] * tot.boundary[k]))
      throw ChainComplexError("S is not a chain map in degree " + std::to_string(k));
  }

  ChainComplex hh_complex;
  hh_complex.ring = Ring::kRationals;
  hh_complex.cap = cap;
  hh_complex.boundary = ops.b;
  for (std::size_t k = 0; k <= cap; ++k) hh_complex.dims.push_back(ops.t[k].cols());
  ChainComplex tot_q = tot;
  tot_q.ring = Ring::kRationals;
  const HomologyResult hh = homology(hh_complex);
  const HomologyResult hc = homology(tot_q);

  for (std::size_t k = 0; k <= out.validity; ++k) {
    ConnesDegree d;
    d.degree = k;
    d.hh_rank = hh.rank(k);
    d.hc_rank = hc.rank(k);
    d.hc_minus_two_rank = k >= 2 ? hc.rank(k - 2) : 0;
    d.rank_i = induced_rank(ops.b[k], out.inclusion[k], tot.boundary[k + 1]);
    d.rank_s = k >= 2 ? induced_rank(tot.boundary[k], out.periodicity[k], tot.boundary[k - 1]) : 0;
    d.splits = d.rank_i == d.hh_rank && d.rank_s == d.hc_minus_two_rank && d.hc_rank == d.hh_rank + d.hc_minus_two_rank;
    out.degrees.push_back(d);
  }
  return out;
}

// --- periodic homology ------------------------------------------------------

struct PeriodicResult {
  std::size_t hp0 = 0;
  std::size_t hp1 = 0;
  std::size_t stabilization_index = 0;  // l with HP_k = HC_{2l+k}
  std::size_t hh_route[2] = {0, 0};     // sum_{n <= d/2} rank HH_{2n+k}
};

/// Rational HP_0, HP_1 of a cyclic set of homological dimension <= d, as
/// HC_{2l+k} for the least l with 2l >= d, cross-checked against the sums of
/// Hochschild ranks. Throws InconsistencyError if the two routes disagree.
inline PeriodicResult periodic_homology(const CyclicLevelSet& x, std::size_t dim_bound, std::size_t cap) {
  const std::size_t l = (dim_bound + 1) / 2;
  const std::size_t top = 2 * l + 1;
  if (top + 1 > cap || dim_bound + 2 > cap)
    throw std::invalid_argument("periodic_homology: cap " + std::to_string(cap) + " too small for dimension bound " +
                                std::to_string(dim_bound) + " (need " + std::to_string(std::max(top + 1, dim_bound + 2)) +
                                ")");
  const HomologyResult hc = cyclic_homology(x, Ring::kRationals, cap, top);
  const HomologyResult hh = hochschild_homology(x, Ring::kRationals, cap, dim_bound + 1);
  PeriodicResult r;
  r.stabilization_index = l;
  r.hp0 = hc.rank(2 * l);
  r.hp1 = hc.rank(2 * l + 1);
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t n = 0; 2 * n <= dim_bound; ++n) r.hh_route[k] += hh.rank(2 * n + k);
  if (r.hp0 != r.hh_route[0] || r.hp1 != r.hh_route[1])
    throw InconsistencyError("periodic homology: HC route (" + std::to_string(r.hp0) + ", " + std::to_string(r.hp1) +
                             ") disagrees with HH route (" + std::to_string(r.hh_route[0]) + ", " +
                             std::to_string(r.hh_route[1]) + ")");
  return r;
}

}  // namespace orbinerve
