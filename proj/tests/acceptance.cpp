// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// fails. Usage: acceptance [path-to-orbinerve-binary]
//
// With the binary path given, criterion 10 also runs the command line tool
// twice and compares the bytes; otherwise it compares two in-process runs.

#include "orbinerve/chen_ruan.hpp"
#include "orbinerve/configuration.hpp"
#include "orbinerve/homology.hpp"
#include "orbinerve/nerves.hpp"
#include "orbinerve/workbench/run.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace orbinerve;
using namespace testing_support;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream note;  // shown after the criterion name
  std::ostringstream why;   // first failures, shown on following lines
  std::size_t failures = 0;

  void fail(const std::string& what) {
    pass = false;
    if (failures++ < 5) why << "    " << what << '\n';
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
};

std::string show(const DegreeHomology& h) { return describe(h); }

// --- 1 ---------------------------------------------------------------------

void structure_identities(Verdict& v) {
  std::size_t simplices = 0;
  for (const auto& [name, g] : six_groupoids()) {
    const auto n = nerve(g, 5);
    const auto y = cyclic_nerve(g, 5);
    const auto w = inertia_simplicial(g, 5);
    const auto f = free_cyclic(n);
    const std::pair<const char*, const SimplicialLevelSet*> sets[] = {
        {"nerve", &n}, {"cyclic nerve", &y}, {"inertia space", &w}, {"free cyclic", &f}};
    for (const auto& [what, x] : sets) {
      for (std::size_t k = 0; k <= 5; ++k) simplices += x->size(k);
      const auto bad = verify_identities(*x);
      if (!bad.empty()) v.fail(name + " " + what + ": " + bad.front().describe());
    }
  }
  v.note << "6 groupoids x 4 constructions at cap 5, " << simplices << " simplices";
}

// --- 2 ---------------------------------------------------------------------

void cyclic_isomorphisms(Verdict& v) {
  for (const auto& [name, g] : six_groupoids()) {
    const auto w = inertia_simplicial(g, 4);
    const auto y = cyclic_nerve(g, 4);
    const auto f = iso_f_map(g, w, y);
    const auto h = iso_h_map(g, y, w);
    const auto fb = verify_map(f, w, y);
    const auto hb = verify_map(h, y, w);
    if (!fb.empty()) v.fail(name + " f: " + fb.front().describe());
    if (!hb.empty()) v.fail(name + " h: " + hb.front().describe());
    v.expect(is_identity(compose(f, h)), name + ": h after f is not the identity");
    v.expect(is_identity(compose(h, f)), name + ": f after h is not the identity");
  }
  v.note << "6 groupoids at cap 4, faces, degeneracies and t";
}

// --- 3 ---------------------------------------------------------------------

void group_homology(Verdict& v) {
  for (const auto& [n, top] : {std::pair<std::uint32_t, std::size_t>{2, 7}, {3, 5}}) {
    const auto g = cyclic(n);
    const auto h = simplicial_homology(nerve(g, top + 1), Ring::kIntegers, top + 1);
    for (std::size_t k = 0; k <= top; ++k) {
      const auto want = cyclic_group_homology(n, k);
      v.expect(h.at(k) == want, "H_" + std::to_string(k) + "(Z/" + std::to_string(n) + ") = " + show(h.at(k)) +
                                    ", expected " + show(want));
    }
  }
  v.note << "Z/2 through degree 7, Z/3 through degree 5";
}

// --- 4 ---------------------------------------------------------------------

// closed form for the centralizers that occur: cyclic groups and S3
DegreeHomology centralizer_homology(const GroupTable& c, std::size_t k) {
  const auto g = group_as_groupoid(c);
  bool abelian = true;
  for (MorphismId a = 0; a < c.order(); ++a)
    for (MorphismId b = 0; b < c.order(); ++b) abelian = abelian && g.compose(a, b) == g.compose(b, a);
  if (!abelian && c.order() == 6) return s3_homology(k);
  if (!abelian) throw std::logic_error("no closed form for this centralizer");
  // abelian of order 1, 2, 3, 4 generated by one element, else unsupported
  for (MorphismId a = 0; a < c.order(); ++a) {
    std::size_t ord = 1;
    for (MorphismId p = a; !g.is_identity(p); p = g.compose(p, a)) ++ord;
    if (ord == c.order()) return cyclic_group_homology(static_cast<std::uint32_t>(ord), k);
  }
  throw std::logic_error("no closed form for a non-cyclic abelian centralizer");
}

void hochschild_vs_inertia(Verdict& v) {
  for (const auto& [name, g] : std::vector<Named>{{"Z2", cyclic(2)}, {"Z3", cyclic(3)}, {"S3", s3()}}) {
    const auto hh = hochschild_homology(cyclic_nerve(g, 5), Ring::kIntegers, 5);
    const auto hi = simplicial_homology(nerve(inertia(g).groupoid, 5), Ring::kIntegers, 5);
    const auto classes = conjugacy_classes(g);
    for (std::size_t k = 0; k <= hh.validity; ++k) {
      std::vector<DegreeHomology> parts;
      for (const auto& cls : classes) parts.push_back(centralizer_homology(centralizer(g, cls.front()), k));
      const auto sum = direct_sum(parts);
      const std::string at = name + " degree " + std::to_string(k) + ": ";
      v.expect(hh.at(k) == hi.at(k), at + "HH " + show(hh.at(k)) + " vs inertia " + show(hi.at(k)));
      v.expect(hh.at(k) == sum, at + "HH " + show(hh.at(k)) + " vs centralizers " + show(sum));
    }
  }
  v.note << "Z/2, Z/3, S3 at cap 5, degrees 0..4";
}

// --- 5 ---------------------------------------------------------------------

void connes_splitting(Verdict& v) {
  for (const auto& [name, g] : six_groupoids()) {
    const auto c = connes_maps(cyclic_nerve(g, 5), Ring::kRationals, 5);
    std::vector<std::size_t> hh;
    for (const auto& d : c.degrees) hh.push_back(d.hh_rank);
    for (const auto& d : c.degrees) {
      std::size_t sum = 0;
      for (std::size_t j = d.degree % 2; j <= d.degree; j += 2) sum += hh[j];
      const std::string at = name + " degree " + std::to_string(d.degree) + ": ";
      v.expect(d.hc_rank == sum, at + "rank HC " + std::to_string(d.hc_rank) + " vs sum of HH " + std::to_string(sum));
      v.expect(d.splits, at + "I or S does not split (rank I " + std::to_string(d.rank_i) + ", rank S " +
                             std::to_string(d.rank_s) + ")");
    }
  }
  v.note << "6 groupoids over Q at cap 5, degrees 0..4, ranks and the maps I, S";
}

// --- 6 ---------------------------------------------------------------------

void periodic(Verdict& v) {
  const auto six = six_groupoids();
  const std::size_t expected[] = {1, 2, 3, 4, 3, orbit_stabilizer_sector_count(six[5].g)};
  v.expect(expected[5] == 2, "orbit/stabilizer count for S3 x {1,2,3} is " + std::to_string(expected[5]));
  std::string got;
  for (std::size_t i = 0; i < six.size(); ++i) {
    const auto& [name, g] = six[i];
    try {
      const auto p = periodic_homology(cyclic_nerve(g, 4), 0, 4);
      v.expect(p.hp0 == p.hh_route[0] && p.hp1 == p.hh_route[1], name + ": routes disagree");
      v.expect(p.hp0 == expected[i], name + ": HP0 " + std::to_string(p.hp0) + ", expected " +
                                         std::to_string(expected[i]));
      v.expect(p.hp1 == 0, name + ": HP1 " + std::to_string(p.hp1));
      v.expect(p.hp0 == connected_components(inertia(g).groupoid).size(), name + ": HP0 is not the sector count");
      got += (i ? " " : "") + std::to_string(p.hp0) + "/" + std::to_string(p.hp1);
    } catch (const InconsistencyError& e) {
      v.fail(name + ": " + e.what());
    }
  }
  v.note << "HP0/HP1 = " << got;
}

// --- 7 ---------------------------------------------------------------------

void equivariance(Verdict& v) {
  std::size_t exhaustive = 0;
  for (const auto& [name, g] : std::vector<Named>{{"Z2", cyclic(2)}, {"S3", s3()}}) {
    const auto y = cyclic_nerve(g, 2);
    for (std::size_t n = 0; n <= 2; ++n)
      for (SimplexIndex k : y.nondegenerate(n)) {
        const auto sx = y.simplex(n, k);
        const std::vector<MorphismId> x(sx.begin(), sx.end());
        for_each_interior_point(n + 1, 4, [&](const std::vector<Rational>& u) {
          for (std::size_t r = 0; r <= n; ++r) {
            ++exhaustive;
            if (!check_equivariance(g, x, u, r)) v.fail(name + ": level " + std::to_string(n) + " r " + std::to_string(r));
          }
        });
      }
  }
  std::mt19937 gen(20240917u);
  const FiniteGroupoid groups[] = {cyclic(2), s3()};
  const CyclicLevelSet ys[] = {cyclic_nerve(groups[0], 3), cyclic_nerve(groups[1], 3)};
  for (int trial = 0; trial < 1000; ++trial) {
    const auto& g = groups[trial % 2];
    const auto& y = ys[trial % 2];
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 3)(gen);
    const auto nd = y.nondegenerate(n);
    const auto sx = y.simplex(n, nd[std::uniform_int_distribution<std::size_t>(0, nd.size() - 1)(gen)]);
    const std::vector<MorphismId> x(sx.begin(), sx.end());
    const auto u = random_interior_coords(n + 1, 32, gen);
    const std::size_t r = std::uniform_int_distribution<std::size_t>(0, n)(gen);
    if (!check_equivariance(g, x, u, r)) v.fail("random trial " + std::to_string(trial));
  }
  v.note << exhaustive << " exhaustive cases (level <= 2, denominators <= 4), 1000 random (denominators <= 32)";
}

// --- 8 ---------------------------------------------------------------------

void round_trips(Verdict& v) {
  std::size_t circle = 0;
  std::size_t line = 0;
  for (const auto& [name, g] : std::vector<Named>{{"Z2", cyclic(2)}, {"S3 x {1,2,3}", s3_on_three_points()}}) {
    for_each_configuration(g, Ambient::kCircle, 3, 8, [&](const Configuration& c) {
      ++circle;
      if (!(decode_phi(g, encode_phi(g, c)) == c)) v.fail(name + ": decode(encode(c)) != c");
    });
    for_each_configuration(g, Ambient::kInterval, 3, 8, [&](const Configuration& c) {
      ++line;
      if (!(nerve_point_to_interval(g, interval_to_nerve_point(g, c)) == c)) v.fail(name + ": interval round trip");
    });
  }
  v.note << circle << " circle and " << line << " interval configurations, <= 3 points, denominators <= 8";
}

// --- 9 ---------------------------------------------------------------------

void chen_ruan(Verdict& v) {
  std::string got;
  for (const auto& [name, g, classes] : std::vector<std::tuple<std::string, FiniteGroupoid, std::size_t>>{
           {"Z2", cyclic(2), 2}, {"Z3", cyclic(3), 3}, {"S3", s3(), 3}}) {
    v.expect(conjugacy_classes(g).size() == classes, name + ": class count oracle");
    const auto p = periodic_homology(cyclic_nerve(g, 2), 0, 2);
    const auto c = compare_hp_horb(point_quotient_sectors(g), p.hp0, p.hp1);
    v.expect(c.even_total == classes && p.hp0 == classes,
             name + ": even H_orb " + std::to_string(c.even_total) + ", HP0 " + std::to_string(p.hp0) + ", classes " +
                 std::to_string(classes));
    v.expect(c.odd_total == 0 && p.hp1 == 0, name + ": odd parts nonzero");
    v.expect(point_quotient_korb_rank(g) == classes, name + ": K_orb rank " + std::to_string(point_quotient_korb_rank(g)));
    got += (got.empty() ? "" : ", ") + std::to_string(c.even_total);
  }
  v.note << "[pt/G] for Z/2, Z/3, S3: even totals " << got << " = HP0 = K_orb rank, odd 0";
}

// --- 10 --------------------------------------------------------------------

std::string verify_output(const std::string& entity) {
  workbench::Invocation inv;
  inv.command = "verify";
  inv.entity = entity;
  inv.cap = 4;
  std::ostringstream out;
  std::ostringstream err;
  workbench::run(inv, workbench::load_document(""), out, err);
  return out.str() + err.str();
}

bool capture(const std::string& command, std::string& out) {
  FILE* p = popen(command.c_str(), "r");
  if (p == nullptr) return false;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  return pclose(p) == 0;
}

void determinism(Verdict& v, const std::string& binary) {
  for (const char* e : {"Z3", "S3X"}) {
    const auto a = verify_output(e);
    v.expect(!a.empty() && a == verify_output(e), std::string("in-process verify ") + e + " differs between runs");
  }
  if (binary.empty()) {
    v.note << "two in-process verify runs on Z3 and S3X";
    return;
  }
  const std::string command = "'" + binary + "' verify S3 --cap 4";
  std::string a;
  std::string b;
  v.expect(capture(command, a), "first run of " + command + " failed");
  v.expect(capture(command, b), "second run of " + command + " failed");
  v.expect(!a.empty() && a == b, "outputs of " + command + " differ");
  v.note << "two in-process runs on Z3 and S3X, two runs of the binary on S3 (" << a.size() << " bytes)";
}

}  // namespace

int main(int argc, char** argv) {
  const std::string binary = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
      {"structure identities", structure_identities},
      {"f and h are inverse cyclic isomorphisms", cyclic_isomorphisms},
      {"group homology of Z/2 and Z/3", group_homology},
      {"HH = H(inertia nerve) = sum over centralizers", hochschild_vs_inertia},
      {"Connes splitting over Q", connes_splitting},
      {"periodic homology", periodic},
      {"phi equivariance", equivariance},
      {"encode/decode and interval round trips", round_trips},
      {"Chen-Ruan comparison for [pt/G]", chen_ruan},
      {"determinism of verify", [&](Verdict& v) { determinism(v, binary); }},
  };

  std::size_t failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += v.pass ? 0 : 1;
    char time[32];
    std::snprintf(time, sizeof time, "%.1fs", secs);
    std::cout << (v.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first << ": " << v.note.str()
              << " [" << time << "]\n"
              << v.why.str();
    if (v.failures > 5) std::cout << "    ... " << v.failures - 5 << " more\n";
    std::cout.flush();
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << " in "
            << static_cast<int>(total + 0.5) << "s\n";
  return failed == 0 ? 0 : 1;
}
