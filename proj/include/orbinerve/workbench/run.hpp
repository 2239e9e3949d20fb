#pragma once

// Command dispatch for the workbench. Every command writes a deterministic
// report to `out`; problems with the invocation go to `err`.
//
// Exit status: 0 when every requested check passes, 1 when a check fails,
// 2 for usage or input errors.

#include "orbinerve/chen_ruan.hpp"
#include "orbinerve/configuration.hpp"
#include "orbinerve/homology.hpp"
#include "orbinerve/nerves.hpp"
#include "orbinerve/workbench/input.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace orbinerve::workbench {

enum class Format { kTable, kTsv };

struct Invocation {
  std::string command;
  std::string entity;
  std::optional<Ring> ring;
  std::optional<std::size_t> cap;
  Format format = Format::kTable;
  std::string compare;  // cr: groupoid entity whose HP to compare against
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"validate", "inertia", "homology", "hh", "hc", "hp", "verify", "cr"};
  return c;
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void row(std::vector<std::string> r) { rows_.push_back(std::move(r)); }

  void print(std::ostream& out, Format f) const {
    if (f == Format::kTsv) {
      print_tsv(out, header_);
      for (const auto& r : rows_) print_tsv(out, r);
      return;
    }
    std::vector<std::size_t> width(header_.size(), 0);
    auto measure = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    };
    measure(header_);
    for (const auto& r : rows_) measure(r);
    auto line = [&](const std::vector<std::string>& r) {
      std::string s;
      for (std::size_t i = 0; i < r.size(); ++i) {
        s += r[i];
        if (i + 1 < r.size()) s += std::string(width[i] - r[i].size() + 2, ' ');
      }
      out << s << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
  }

 private:
  static void print_tsv(std::ostream& out, const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "\t" : "") << r[i];
    out << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct Settings {
  Ring ring = Ring::kIntegers;
  std::size_t cap = kDefaultCap;
};

inline Settings settings(const Invocation& inv, const WorkbenchInput& in) {
  Settings s;
  s.ring = inv.ring.value_or(in.options.ring.value_or(Ring::kIntegers));
  s.cap = inv.cap.value_or(in.options.cap.value_or(kDefaultCap));
  if (s.cap < 1) throw UsageError("cap must be at least 1");
  return s;
}

inline const Entity& require_entity(const WorkbenchInput& in, const std::string& name, const std::string& command,
                                    bool groupoid) {
  if (name.empty()) throw UsageError(command + ": needs an entity name");
  const Entity* e = in.find(name);
  if (e == nullptr) throw UsageError(command + ": no entity named '" + name + "'");
  if (groupoid && !e->is_groupoid())
    throw UsageError(command + ": '" + name + "' is a sector list, expected a group, action or groupoid");
  if (!groupoid && e->is_groupoid())
    throw UsageError(command + ": '" + name + "' is a " + kind_name(e->kind) + ", expected a sector list");
  return *e;
}

inline std::string torsion_text(const DegreeHomology& h, const char* sep) {
  if (h.torsion.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < h.torsion.size(); ++i) s += (i ? sep : "") + h.torsion[i].str();
  return s;
}

inline void print_homology(std::ostream& out, const HomologyResult& h, Format f) {
  if (f == Format::kTsv) {
    Table t({"degree", "rank", "torsion"});
    for (std::size_t n = 0; n <= h.validity; ++n) {
      const auto& d = h.at(n);
      t.row({std::to_string(n), std::to_string(d.free_rank), d.torsion.empty() ? "" : torsion_text(d, ",")});
    }
    t.print(out, f);
    return;
  }
  Table t({"degree", "rank", "torsion", "group"});
  for (std::size_t n = 0; n <= h.validity; ++n) {
    const auto& d = h.at(n);
    std::string group = describe(d);
    if (h.ring == Ring::kRationals) {
      group = d.free_rank == 0 ? "0" : d.free_rank == 1 ? "Q" : "Q^" + std::to_string(d.free_rank);
    }
    t.row({std::to_string(n), std::to_string(d.free_rank), torsion_text(d, " "), group});
  }
  t.print(out, f);
}

inline void heading(std::ostream& out, Format f, const std::string& text) {
  if (f == Format::kTable) out << "# " << text << '\n';
}

inline std::string validity_text(const HomologyResult& h) {
  return "valid through degree " + std::to_string(h.validity);
}

// --- commands ---------------------------------------------------------------

inline int cmd_validate(const Invocation& inv, const WorkbenchInput& in, std::ostream& out) {
  Table t({"entity", "kind", "objects", "morphisms", "status"});
  bool ok = true;
  for (const auto& e : in.entities) {
    if (!inv.entity.empty() && e.name != inv.entity) continue;
    if (e.is_groupoid()) {
      const auto report = validate_groupoid(e.groupoid);
      ok = ok && report.empty();
      t.row({e.name, kind_name(e.kind), std::to_string(e.groupoid.object_count()),
             std::to_string(e.groupoid.morphism_count()),
             report.empty() ? "valid" : std::string("fails ") + axiom_name(report.front().axiom)});
    } else {
      t.row({e.name, kind_name(e.kind), "-", "-",
             std::to_string(e.sectors.size()) + " sectors, " + (is_sl(e.sectors) ? "integral ages" : "rational ages")});
    }
  }
  if (!inv.entity.empty() && in.find(inv.entity) == nullptr) throw UsageError("validate: no entity named '" + inv.entity + "'");
  t.print(out, inv.format);
  return ok ? kExitOk : kExitCheckFailed;
}

inline void inertia_report(const Entity& e, std::ostream& out, Format f) {
  const FiniteGroupoid& g = e.groupoid;
  const InertiaGroupoid ig = inertia(g);
  const auto blocks = connected_components(ig.groupoid);
  heading(out, f,
          "inertia " + e.name + ": " + std::to_string(ig.groupoid.object_count()) + " objects, " +
              std::to_string(ig.groupoid.morphism_count()) + " morphisms, " + std::to_string(blocks.size()) +
              " sectors");
  Table t({"sector", "representative", "object", "class size", "centralizer order"});
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const MorphismId a = ig.label.object_automorphism[blocks[i].front()];
    t.row({std::to_string(i), g.morphism_name(a), g.object_name(g.source(a)), std::to_string(blocks[i].size()),
           std::to_string(isotropy_group(ig.groupoid, blocks[i].front()).order())});
  }
  t.print(out, f);
}

inline int cmd_inertia(const Invocation& inv, const WorkbenchInput& in, std::ostream& out) {
  if (!inv.entity.empty()) {
    inertia_report(require_entity(in, inv.entity, "inertia", true), out, inv.format);
    return kExitOk;
  }
  bool first = true;
  for (const auto& e : in.entities) {
    if (!e.is_groupoid()) continue;
    if (!first && inv.format == Format::kTable) out << '\n';
    first = false;
    inertia_report(e, out, inv.format);
  }
  return kExitOk;
}

inline int cmd_homology(const Invocation& inv, const WorkbenchInput& in, std::ostream& out) {
  const Entity& e = require_entity(in, inv.entity, inv.command, true);
  const Settings s = settings(inv, in);
  HomologyResult h;
  std::string what;
  if (inv.command == "homology") {
    h = simplicial_homology(nerve(e.groupoid, s.cap), s.ring, s.cap);
    what = "homology of the nerve";
  } else if (inv.command == "hh") {
    h = hochschild_homology(cyclic_nerve(e.groupoid, s.cap), s.ring, s.cap);
    what = "Hochschild homology of the cyclic nerve";
  } else {
    h = cyclic_homology(cyclic_nerve(e.groupoid, s.cap), s.ring, s.cap);
    what = "cyclic homology of the cyclic nerve";
  }
  heading(out, inv.format,
          inv.command + " " + e.name + ": " + what + ", ring " + ring_name(s.ring) + ", cap " + std::to_string(s.cap) +
              ", " + validity_text(h));
  print_homology(out, h, inv.format);
  return kExitOk;
}

// Finite groupoids have homological dimension 0, so HP needs degrees <= 1.
inline PeriodicResult periodic_of(const FiniteGroupoid& g, std::size_t cap) {
  const std::size_t used = std::min<std::size_t>(cap, 2);
  if (used < 2) throw UsageError("hp: cap must be at least 2");
  return periodic_homology(cyclic_nerve(g, used), 0, used);
}

inline int cmd_hp(const Invocation& inv, const WorkbenchInput& in, std::ostream& out) {
  const Entity& e = require_entity(in, inv.entity, "hp", true);
  const Settings s = settings(inv, in);
  const PeriodicResult p = periodic_of(e.groupoid, s.cap);
  heading(out, inv.format,
          "hp " + e.name + ": periodic homology over Q, dimension bound 0, HP_k = HC_{" +
              std::to_string(2 * p.stabilization_index) + "+k}");
  Table t({"k", "rank", "via HC", "via HH"});
  t.row({"0", std::to_string(p.hp0), std::to_string(p.hp0), std::to_string(p.hh_route[0])});
  t.row({"1", std::to_string(p.hp1), std::to_string(p.hp1), std::to_string(p.hh_route[1])});
  t.print(out, inv.format);
  return kExitOk;
}

inline int cmd_cr(const Invocation& inv, const WorkbenchInput& in, std::ostream& out) {
  if (inv.entity.empty()) throw UsageError("cr: needs a sector list or a groupoid entity");
  const Entity* e = in.find(inv.entity);
  if (e == nullptr) throw UsageError("cr: no entity named '" + inv.entity + "'");
  std::vector<SectorData> sectors;
  const Entity* against = nullptr;
  if (e->is_groupoid()) {
    sectors = point_quotient_sectors(e->groupoid);
    against = e;
  } else {
    sectors = e->sectors;
  }
  if (!inv.compare.empty()) against = &require_entity(in, inv.compare, "cr --compare", true);

  heading(out, inv.format, "cr " + e->name + ": orbifold cohomology ranks from " + std::to_string(sectors.size()) +
                               " sectors");
  Table t({"degree", "rank"});
  for (const auto& [degree, rank] : orbifold_cohomology_ranks(sectors)) t.row({to_string(degree), std::to_string(rank)});
  t.print(out, inv.format);
  if (against == nullptr) return kExitOk;

  const Settings s = settings(inv, in);
  if (!is_sl(sectors)) {
    out << "comparison refused: ages are not all integers\n";
    return kExitCheckFailed;
  }
  const PeriodicResult p = periodic_of(against->groupoid, s.cap);
  const HorbComparison c = compare_hp_horb(sectors, p.hp0, p.hp1);
  const std::size_t korb = point_quotient_korb_rank(against->groupoid);
  heading(out, inv.format, "comparison with HP of " + against->name);
  auto status = [](std::size_t a, std::size_t b) { return a == b ? "match" : "MISMATCH"; };
  Table cmp({"quantity", "rank", "HP rank", "status"});
  cmp.row({"H_orb even", std::to_string(c.even_total), std::to_string(c.hp0), status(c.even_total, c.hp0)});
  cmp.row({"H_orb odd", std::to_string(c.odd_total), std::to_string(c.hp1), status(c.odd_total, c.hp1)});
  cmp.row({"K_orb^0 [pt/" + against->name + "]", std::to_string(korb), std::to_string(c.hp0), status(korb, c.hp0)});
  cmp.print(out, inv.format);
  return c.matches() && korb == c.hp0 ? kExitOk : kExitCheckFailed;
}

// --- verify -----------------------------------------------------------------

struct CheckResult {
  bool pass = false;
  std::string detail;
};

inline CheckResult from_report(std::size_t violations, const std::string& ok_detail) {
  if (violations == 0) return {true, ok_detail};
  return {false, std::to_string(violations) + " violations"};
}

inline std::vector<std::pair<std::string, std::function<CheckResult()>>> verify_suites(const FiniteGroupoid& g,
                                                                                        std::size_t cap) {
  std::vector<std::pair<std::string, std::function<CheckResult()>>> suites;
  const std::string levels = "levels 0.." + std::to_string(cap);
  const std::size_t sectors = connected_components(inertia(g).groupoid).size();

  suites.push_back({"groupoid axioms", [&g] {
                      return from_report(validate_groupoid(g).size(), std::to_string(g.object_count()) + " objects, " +
                                                                          std::to_string(g.morphism_count()) +
                                                                          " morphisms");
                    }});
  suites.push_back({"inertia groupoid axioms", [&g] {
                      const auto ig = inertia(g);
                      return from_report(validate_groupoid(ig.groupoid).size(),
                                         std::to_string(ig.groupoid.object_count()) + " objects, " +
                                             std::to_string(ig.groupoid.morphism_count()) + " morphisms");
                    }});
  suites.push_back({"nerve identities", [&g, cap, levels] {
                      return from_report(verify_identities(nerve(g, cap)).size(), levels);
                    }});
  suites.push_back({"cyclic nerve identities", [&g, cap, levels] {
                      return from_report(verify_identities(cyclic_nerve(g, cap)).size(), levels);
                    }});
  suites.push_back({"inertia space identities", [&g, cap, levels] {
                      return from_report(verify_identities(inertia_simplicial(g, cap)).size(), levels);
                    }});
  suites.push_back({"free cyclic identities", [&g, cap, levels] {
                      return from_report(verify_identities(free_cyclic(nerve(g, cap))).size(), levels);
                    }});
  suites.push_back({"f and h cyclic isomorphisms", [&g, cap, levels] {
                      const auto w = inertia_simplicial(g, cap);
                      const auto y = cyclic_nerve(g, cap);
                      const auto f = iso_f_map(g, w, y);
                      const auto h = iso_h_map(g, y, w);
                      std::size_t bad = verify_map(f, w, y).size() + verify_map(h, y, w).size();
                      if (!is_bijection(f, w, y) || !is_identity(compose(f, h)) || !is_identity(compose(h, f))) ++bad;
                      return from_report(bad, levels);
                    }});
  suites.push_back({"inertia space is the inertia nerve", [&g, cap, levels] {
                      const auto ig = inertia(g);
                      const auto w = inertia_simplicial(g, cap);
                      const auto nw = nerve(ig.groupoid, cap);
                      const auto m = inertia_chain_map(g, ig, w, nw);
                      return from_report(verify_map(m, w, nw).size() + (is_bijection(m, w, nw) ? 0 : 1), levels);
                    }});
  suites.push_back({"bicomplex operator identities", [&g, cap, levels] {
                      hochschild_operators(cyclic_nerve(g, cap), Ring::kIntegers, cap);
                      return CheckResult{true, levels};
                    }});
  suites.push_back({"HH equals inertia homology over Z", [&g, cap] {
                      const auto hh = hochschild_homology(cyclic_nerve(g, cap), Ring::kIntegers, cap);
                      const auto hi = simplicial_homology(nerve(inertia(g).groupoid, cap), Ring::kIntegers, cap);
                      std::size_t bad = 0;
                      for (std::size_t n = 0; n <= hh.validity; ++n) bad += hh.at(n) == hi.at(n) ? 0 : 1;
                      return from_report(bad, "degrees 0.." + std::to_string(hh.validity));
                    }});
  suites.push_back({"Connes splitting over Q", [&g, cap] {
                      const auto c = connes_maps(cyclic_nerve(g, cap), Ring::kRationals, cap);
                      std::size_t bad = 0;
                      for (const auto& d : c.degrees) bad += d.splits ? 0 : 1;
                      return from_report(bad, "degrees 0.." + std::to_string(c.validity));
                    }});
  suites.push_back({"periodic homology", [&g, cap, sectors] {
                      const auto p = periodic_of(g, cap);
                      const bool ok = p.hp0 == sectors && p.hp1 == 0;
                      return CheckResult{ok, "HP0 " + std::to_string(p.hp0) + ", HP1 " + std::to_string(p.hp1) + ", " +
                                                 std::to_string(sectors) + " sectors"};
                    }});
  suites.push_back({"phi equivariance", [&g, cap] {
                      const std::size_t top = std::min<std::size_t>(cap, 2);
                      const auto y = cyclic_nerve(g, top);
                      std::size_t cases = 0;
                      std::size_t bad = 0;
                      for (std::size_t n = 0; n <= top; ++n)
                        for (SimplexIndex k : y.nondegenerate(n)) {
                          const auto sx = y.simplex(n, k);
                          const std::vector<MorphismId> x(sx.begin(), sx.end());
                          for_each_interior_point(n + 1, 4, [&](const std::vector<Rational>& u) {
                            for (std::size_t r = 0; r <= n; ++r) {
                              ++cases;
                              bad += check_equivariance(g, x, u, r) ? 0 : 1;
                            }
                          });
                        }
                      return from_report(bad, std::to_string(cases) + " cases, levels <= " + std::to_string(top) +
                                                  ", denominators <= 4");
                    }});
  suites.push_back({"configuration round trips", [&g] {
                      std::size_t cases = 0;
                      std::size_t bad = 0;
                      for_each_configuration(g, Ambient::kCircle, 2, 4, [&](const Configuration& c) {
                        ++cases;
                        bad += decode_phi(g, encode_phi(g, c)) == c ? 0 : 1;
                      });
                      for_each_configuration(g, Ambient::kInterval, 2, 4, [&](const Configuration& c) {
                        ++cases;
                        bad += nerve_point_to_interval(g, interval_to_nerve_point(g, c)) == c ? 0 : 1;
                      });
                      return from_report(bad, std::to_string(cases) + " configurations");
                    }});
  suites.push_back({"Chen-Ruan comparison", [&g, cap] {
                      const auto p = periodic_of(g, cap);
                      const auto c = compare_hp_horb(point_quotient_sectors(g), p.hp0, p.hp1);
                      const std::size_t korb = point_quotient_korb_rank(g);
                      return CheckResult{c.matches() && korb == c.hp0,
                                         "even " + std::to_string(c.even_total) + ", K_orb " + std::to_string(korb) +
                                             " vs HP0 " + std::to_string(c.hp0) + ", odd " +
                                             std::to_string(c.odd_total) + " vs HP1 " + std::to_string(c.hp1)};
                    }});
  return suites;
}

inline int cmd_verify(const Invocation& inv, const WorkbenchInput& in, std::ostream& out) {
  const Entity& e = require_entity(in, inv.entity, "verify", true);
  const Settings s = settings(inv, in);
  if (s.cap < 2) throw UsageError("verify: cap must be at least 2");
  heading(out, inv.format, "verify " + e.name + ": cap " + std::to_string(s.cap));
  Table t({"status", "check", "detail"});
  std::size_t failed = 0;
  const auto suites = verify_suites(e.groupoid, s.cap);
  for (const auto& [name, check] : suites) {
    CheckResult r;
    try {
      r = check();
    } catch (const std::exception& ex) {
      r = {false, std::string("error: ") + ex.what()};
    }
    failed += r.pass ? 0 : 1;
    t.row({r.pass ? "PASS" : "FAIL", name, r.detail});
  }
  t.print(out, inv.format);
  if (inv.format == Format::kTable) {
    if (failed == 0) out << "all " << suites.size() << " checks passed\n";
    else out << failed << " of " << suites.size() << " checks failed\n";
  }
  return failed == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace detail

/// Runs one command; exceptions from the engine are reported on `err`.
inline int run(const Invocation& inv, const WorkbenchInput& in, std::ostream& out, std::ostream& err) {
  try {
    if (inv.command == "validate") return detail::cmd_validate(inv, in, out);
    if (inv.command == "inertia") return detail::cmd_inertia(inv, in, out);
    if (inv.command == "homology" || inv.command == "hh" || inv.command == "hc")
      return detail::cmd_homology(inv, in, out);
    if (inv.command == "hp") return detail::cmd_hp(inv, in, out);
    if (inv.command == "verify") return detail::cmd_verify(inv, in, out);
    if (inv.command == "cr") return detail::cmd_cr(inv, in, out);
    throw UsageError("unknown command '" + inv.command + "'");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InconsistencyError& e) {
    err << "internal inconsistency: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace orbinerve::workbench
