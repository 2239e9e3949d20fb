#pragma once

// Configurations of finitely many morphism-labelled points on the interval
// or the circle, identity everywhere else. Positions are exact rationals in
// [0, 1). The encoding phi sends a circle configuration to a point in the
// interior of a cyclic-nerve simplex; interval configurations correspond to
// interior points of nerve simplices.

#include "orbinerve/groupoid.hpp"
#include "orbinerve/numbers.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbinerve {

enum class Ambient { kInterval, kCircle };

struct SupportPoint {
  Rational position;
  MorphismId morphism = 0;

  friend bool operator==(const SupportPoint&, const SupportPoint&) = default;
};

struct Configuration {
  Ambient ambient = Ambient::kCircle;
  std::vector<SupportPoint> support;  // increasing positions
  ObjectId base_object = 0;           // only meaningful when the support is empty

  friend bool operator==(const Configuration& a, const Configuration& b) {
    if (a.ambient != b.ambient || a.support != b.support) return false;
    return !a.support.empty() || a.base_object == b.base_object;
  }
};

/// Point in the interior of a simplex: a tuple of morphism ids (for a nerve
/// point at level 0, a single object id) and strictly positive coordinates
/// summing to 1, one more than the level.
struct SimplexPoint {
  std::vector<std::uint32_t> simplex;
  std::vector<Rational> coords;

  friend bool operator==(const SimplexPoint&, const SimplexPoint&) = default;
};

class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ConfigurationViolation {
  std::string condition;
  std::size_t index = 0;  // support entry concerned
  std::string message;
};

inline std::vector<ConfigurationViolation> validate_configuration(const FiniteGroupoid& g, const Configuration& c) {
  std::vector<ConfigurationViolation> report;
  const auto& s = c.support;
  if (s.empty() && c.base_object >= g.object_count())
    report.push_back({"base object", 0, "empty configuration needs a base object of the groupoid"});
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].morphism >= g.morphism_count()) {
      report.push_back({"morphism id", i, "unknown morphism id " + std::to_string(s[i].morphism)});
      return report;
    }
    const bool in_range = c.ambient == Ambient::kCircle ? s[i].position >= 0 && s[i].position < 1
                                                        : s[i].position > 0 && s[i].position < 1;
    if (!in_range) report.push_back({"position range", i, "position " + to_string(s[i].position) + " out of range"});
    if (i > 0 && !(s[i - 1].position < s[i].position))
      report.push_back({"increasing positions", i, "positions must increase strictly"});
    if (g.is_identity(s[i].morphism))
      report.push_back({"no identity labels", i, "identity " + g.morphism_name(s[i].morphism) + " in the support"});
    if (i > 0 && g.target(s[i - 1].morphism) != g.source(s[i].morphism))
      report.push_back({"composability", i, g.morphism_name(s[i - 1].morphism) + " then " +
                                                g.morphism_name(s[i].morphism) + " do not compose"});
  }
  if (c.ambient == Ambient::kCircle && !s.empty() && g.target(s.back().morphism) != g.source(s.front().morphism))
    report.push_back({"wrap", s.size() - 1, "target of the last label differs from source of the first"});
  return report;
}

namespace detail {

inline void require_configuration(const FiniteGroupoid& g, const Configuration& c, Ambient ambient, const char* op) {
  if (c.ambient != ambient)
    throw ConfigurationError(std::string(op) + ": wrong ambient space");
  auto report = validate_configuration(g, c);
  if (!report.empty()) throw ConfigurationError(std::string(op) + ": " + report.front().message);
}

inline void require_interior(const std::vector<Rational>& u, const char* op) {
  Rational sum = 0;
  for (const auto& v : u) {
    if (v <= 0) throw ConfigurationError(std::string(op) + ": coordinates must be positive");
    sum += v;
  }
  if (sum != 1) throw ConfigurationError(std::string(op) + ": coordinates must sum to 1");
}

inline Rational fractional(Rational x) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Integer q = numerator(x) / denominator(x);  // truncates toward zero
  Rational r = x - Rational(q);
  if (r < 0) r += 1;
  return r;
}

}  // namespace detail

/// phi: a support {0 = x_0 < ... < x_n} goes to ((g_0, ..., g_n); (x_1, x_2 - x_1, ..., 1 - x_n));
/// with x_0 > 0 an identity is prepended: ((e, g_0, ..., g_n); (x_0, x_1 - x_0, ..., 1 - x_n)).
inline SimplexPoint encode_phi(const FiniteGroupoid& g, const Configuration& c) {
  detail::require_configuration(g, c, Ambient::kCircle, "encode_phi");
  SimplexPoint p;
  if (c.support.empty()) {
    p.simplex = {g.identity(c.base_object)};
    p.coords = {Rational(1)};
    return p;
  }
  std::vector<Rational> marks;
  if (c.support.front().position != 0) {
    p.simplex.push_back(g.identity(g.source(c.support.front().morphism)));
    marks.push_back(Rational(0));
  }
  for (const auto& e : c.support) {
    p.simplex.push_back(e.morphism);
    marks.push_back(e.position);
  }
  marks.push_back(Rational(1));
  for (std::size_t i = 0; i + 1 < marks.size(); ++i) p.coords.push_back(marks[i + 1] - marks[i]);
  return p;
}

/// Inverse of phi: alpha(0) = g_0, alpha(u_0) = g_1, ..., alpha(u_0 + ... + u_{n-1}) = g_n, with
/// identity labels dropped as background. The strict form accepts an
/// identity only in slot 0; the lenient one (used for rotated simplices)
/// drops identities wherever they are.
inline Configuration decode_phi(const FiniteGroupoid& g, const SimplexPoint& p, bool strict = true) {
  const auto& x = p.simplex;
  if (x.empty() || x.size() != p.coords.size())
    throw ConfigurationError("decode_phi: need one coordinate per simplex entry");
  detail::require_interior(p.coords, "decode_phi");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= g.morphism_count()) throw ConfigurationError("decode_phi: unknown morphism id");
    if (g.target(x[i]) != g.source(x[(i + 1) % x.size()]))
      throw ConfigurationError("decode_phi: not a cyclic-nerve simplex");
    if (strict && i > 0 && g.is_identity(x[i]))
      throw ConfigurationError("decode_phi: degenerate simplex (identity in slot " + std::to_string(i) + ")");
  }
  Configuration c;
  c.ambient = Ambient::kCircle;
  c.base_object = g.source(x[0]);
  Rational position = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!g.is_identity(x[i])) c.support.push_back({position, x[i]});
    position += p.coords[i];
  }
  return c;
}

/// rho(theta, alpha)(x) = alpha(theta + x): every point moves to (x - theta) mod 1.
inline Configuration rotate(const FiniteGroupoid& g, const Configuration& c, const Rational& theta) {
  detail::require_configuration(g, c, Ambient::kCircle, "rotate");
  Configuration out = c;
  for (auto& e : out.support) e.position = detail::fractional(e.position - theta);
  std::sort(out.support.begin(), out.support.end(),
            [](const SupportPoint& a, const SupportPoint& b) { return a.position < b.position; });
  return out;
}

/// epsilon(alpha, theta)(x) = alpha(theta + x) on the open interval: rotate so
/// the cut sits at 0 and drop the entry found there.
inline Configuration cut_epsilon(const FiniteGroupoid& g, const Configuration& c, const Rational& theta) {
  Configuration out = rotate(g, c, theta);
  out.ambient = Ambient::kInterval;
  if (!out.support.empty() && out.support.front().position == 0) {
    const MorphismId removed = out.support.front().morphism;
    out.support.erase(out.support.begin());
    if (out.support.empty()) out.base_object = g.target(removed);
  }
  return out;
}

/// (g_1, ..., g_n; t_0, ..., t_n) with t_0 = x_1, t_i = x_{i+1} - x_i, t_n = 1 - x_n.
/// The level-0 point of an empty configuration is its base object.
inline SimplexPoint interval_to_nerve_point(const FiniteGroupoid& g, const Configuration& c) {
  detail::require_configuration(g, c, Ambient::kInterval, "interval_to_nerve_point");
  SimplexPoint p;
  if (c.support.empty()) {
    p.simplex = {c.base_object};
    p.coords = {Rational(1)};
    return p;
  }
  Rational previous = 0;
  for (const auto& e : c.support) {
    p.simplex.push_back(e.morphism);
    p.coords.push_back(e.position - previous);
    previous = e.position;
  }
  p.coords.push_back(1 - previous);
  return p;
}

inline Configuration nerve_point_to_interval(const FiniteGroupoid& g, const SimplexPoint& p) {
  detail::require_interior(p.coords, "nerve_point_to_interval");
  Configuration c;
  c.ambient = Ambient::kInterval;
  if (p.coords.size() == 1) {
    if (p.simplex.size() != 1 || p.simplex[0] >= g.object_count())
      throw ConfigurationError("nerve_point_to_interval: a level-0 point is a single object");
    c.base_object = p.simplex[0];
    return c;
  }
  if (p.simplex.size() + 1 != p.coords.size())
    throw ConfigurationError("nerve_point_to_interval: level n needs n + 1 coordinates");
  Rational position = 0;
  for (std::size_t i = 0; i < p.simplex.size(); ++i) {
    position += p.coords[i];
    c.support.push_back({position, p.simplex[i]});
  }
  auto report = validate_configuration(g, c);
  if (!report.empty()) throw ConfigurationError("nerve_point_to_interval: " + report.front().message);
  return c;
}

/// The identity behind the circle-equivariance of phi:
///   rotate(decode(x; u_r, ..., u_n, u_0, ..., u_{r-1}), u_r + ... + u_n) == decode(t^r x; u_0, ..., u_n)
/// where t rotates the tuple right. A false return is a defect.
inline bool check_equivariance(const FiniteGroupoid& g, const std::vector<MorphismId>& x, const std::vector<Rational>& u,
                               std::size_t r) {
  const std::size_t n1 = x.size();
  if (n1 == 0 || u.size() != n1 || r >= n1) throw ConfigurationError("check_equivariance: bad arguments");
  detail::require_interior(u, "check_equivariance");
  for (std::size_t i = 1; i < n1; ++i)
    if (x[i] < g.morphism_count() && g.is_identity(x[i]))
      throw ConfigurationError("check_equivariance: simplex must be nondegenerate");

  std::vector<Rational> shifted;
  Rational s = 0;
  for (std::size_t i = r; i < n1; ++i) {
    shifted.push_back(u[i]);
    s += u[i];
  }
  for (std::size_t i = 0; i < r; ++i) shifted.push_back(u[i]);
  const Configuration lhs = rotate(g, decode_phi(g, {x, shifted}, false), s);

  std::vector<MorphismId> tx(x);
  std::rotate(tx.rbegin(), tx.rbegin() + static_cast<std::ptrdiff_t>(r), tx.rend());
  const Configuration rhs = decode_phi(g, {tx, u}, false);
  return lhs == rhs;
}

// --- enumeration ------------------------------------------------------------

/// Distinct rationals p/q in [0, 1) with q <= max_den, increasing.
inline std::vector<Rational> fractions(unsigned max_den, bool include_zero = true) {
  std::set<Rational> out;
  for (unsigned q = 1; q <= max_den; ++q)
    for (unsigned p = include_zero ? 0 : 1; p < q; ++p) out.insert(Rational(p, q));
  return {out.begin(), out.end()};
}

/// Chains of k non-identity morphisms, composable; closed into a loop when
/// `loop` is set.
inline std::vector<std::vector<MorphismId>> label_chains(const FiniteGroupoid& g, std::size_t k, bool loop) {
  std::vector<std::vector<MorphismId>> out;
  std::vector<MorphismId> cur;
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == k) {
      if (!loop || k == 0 || g.target(cur.back()) == g.source(cur.front())) out.push_back(cur);
      return;
    }
    for (MorphismId m = 0; m < g.morphism_count(); ++m) {
      if (g.is_identity(m)) continue;
      if (!cur.empty() && g.target(cur.back()) != g.source(m)) continue;
      cur.push_back(m);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

/// Every valid configuration with at most `max_points` support points at
/// positions of denominator <= max_den; empty ones at every object.
template <class Fn>
void for_each_configuration(const FiniteGroupoid& g, Ambient ambient, std::size_t max_points, unsigned max_den,
                            Fn&& fn) {
  const auto pos = fractions(max_den, ambient == Ambient::kCircle);
  for (ObjectId x = 0; x < g.object_count(); ++x) fn(Configuration{ambient, {}, x});
  for (std::size_t k = 1; k <= max_points; ++k) {
    const auto chains = label_chains(g, k, ambient == Ambient::kCircle);
    std::vector<std::size_t> idx(k);
    auto rec = [&](auto&& self, std::size_t depth, std::size_t from) -> void {
      if (depth == k) {
        for (const auto& ch : chains) {
          Configuration c{ambient, {}, 0};
          for (std::size_t i = 0; i < k; ++i) c.support.push_back({pos[idx[i]], ch[i]});
          fn(c);
        }
        return;
      }
      for (std::size_t i = from; i < pos.size(); ++i) {
        idx[depth] = i;
        self(self, depth + 1, i + 1);
      }
    };
    rec(rec, 0, 0);
  }
}

/// Every tuple of `count` positive rationals with denominators <= max_den
/// summing to 1.
template <class Fn>
void for_each_interior_point(std::size_t count, unsigned max_den, Fn&& fn) {
  const auto steps = fractions(max_den, false);
  std::vector<Rational> u;
  auto rec = [&](auto&& self, const Rational& left) -> void {
    if (u.size() + 1 == count) {
      if (left > 0 && boost::multiprecision::denominator(left) <= max_den) {
        u.push_back(left);
        fn(static_cast<const std::vector<Rational>&>(u));
        u.pop_back();
      }
      return;
    }
    for (const auto& v : steps) {
      if (v >= left) break;
      u.push_back(v);
      self(self, left - v);
      u.pop_back();
    }
  };
  if (count > 0) rec(rec, Rational(1));
}

}  // namespace orbinerve
