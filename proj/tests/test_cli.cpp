#include "orbinerve/catalog.hpp"
#include "orbinerve/workbench/input.hpp"
#include "orbinerve/workbench/run.hpp"
#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace orbinerve;
using namespace orbinerve::workbench;
using namespace testing_support;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::string& doc, Invocation inv) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(inv, load_document(doc), out, err);
  return {code, out.str(), err.str()};
}

Invocation cmd(std::string command, std::string entity = "") {
  Invocation inv;
  inv.command = std::move(command);
  inv.entity = std::move(entity);
  return inv;
}

template <class E>
Location error_at(const std::string& doc) {
  try {
    parse_input(doc, &prelude());
  } catch (const E& e) {
    return e.where();
  }
  FAIL("no error of the expected class for: " << doc);
  return {};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("parsing groups, actions, groupoids and sectors") {
  const auto in = parse_input(R"(
    options { ring Q ; cap 4 }
    group Z2 { elements e s ; table e s / s e }
    action Flip { group Z2 ; points x y ; act s : x->y y->x }
    groupoid pair {
      objects a b ;
      mor 1a : a -> a ; mor 1b : b -> b ; mor u : a -> b ; mor v : b -> a ;
      id a = 1a ; id b = 1b ;
      comp u v = 1a ; comp v u = 1b ;
    }
    sectors s { sector age 0 betti 1 0 1 ; sector twisted age 1/2 betti 1 }
  )");
  REQUIRE(in.entities.size() == 4);
  CHECK(in.options.ring == Ring::kRationals);
  CHECK(in.options.cap == 4u);

  const auto& flip = in.find("Flip")->groupoid;
  CHECK(flip.object_count() == 2);
  CHECK(flip.morphism_count() == 4);

  const auto& pair = in.find("pair")->groupoid;
  CHECK(validate_groupoid(pair).empty());
  CHECK(connected_components(pair).size() == 1);

  const auto& s = in.find("s")->sectors;
  REQUIRE(s.size() == 2);
  CHECK(s[0].id == "0");
  CHECK(s[0].betti == std::vector<std::size_t>{1, 0, 1});
  CHECK(s[1].id == "twisted");
  CHECK(s[1].age == Rational(1, 2));
}

TEST_CASE("input errors carry their class and location") {
  CHECK(error_at<SyntaxError>("group G { elements e ; table e").line == 1);
  const Location missing_brace = error_at<SyntaxError>("group G\n  elements e");
  CHECK(missing_brace.line == 2);
  CHECK(missing_brace.column == 3);

  const Location dup = error_at<DuplicateNameError>("group A { elements e ; table e }\ngroup A { elements e ; table e }");
  CHECK(dup.line == 2);
  CHECK(dup.column == 7);
  CHECK(error_at<DuplicateNameError>("group G { elements e e ; table e }").column == 22);

  const Location unres = error_at<UnresolvedReferenceError>("action X {\n group Nope ; points 1 }");
  CHECK(unres.line == 2);
  CHECK(unres.column == 8);
  CHECK(error_at<UnresolvedReferenceError>("group G { elements e ; table f }").column == 30);

  const Location row = error_at<ValidatorError>("group G { elements e a ; table e a /\n  a }");
  CHECK(row.line == 2);
  CHECK(row.column == 3);
  // a table that is not a group: a*a = a leaves a without an inverse
  CHECK(error_at<ValidatorError>("group G { elements e a ; table e a / a a }").column == 1);
  CHECK(error_at<ValidatorError>("action X { group Z2 ; points p q ; act s : p->q }").line == 1);

  try {
    parse_input("group G {\n  elements e ; tabel e }");
    FAIL("accepted a misspelled statement");
  } catch (const SyntaxError& e) {
    CHECK(std::string(e.what()) == "2:16: syntax error: unknown group statement 'tabel'");
  }
  CHECK_THROWS_AS(parse_input("options { cap 1234567890 }"), SyntaxError);
}

TEST_CASE("prelude S3 is the symmetric group of the catalog") {
  const auto& pre = prelude();
  const auto& s3g = pre.find("S3")->groupoid;
  const GroupTable cat = catalog::symmetric_group(3);
  REQUIRE(s3g.morphism_count() == cat.order());
  for (MorphismId a = 0; a < cat.order(); ++a) {
    CHECK(s3g.morphism_name(a) == cat.names[a]);
    for (MorphismId b = 0; b < cat.order(); ++b) CHECK(s3g.compose(a, b) == cat.product[a][b]);
  }
  const auto& x = pre.find("S3X")->groupoid;
  CHECK(x.object_count() == 3);
  CHECK(x.morphism_count() == 18);
  CHECK(connected_components(x).size() == 1);
  for (const auto* name : {"trivial", "Z2", "Z3", "Z4", "S3", "S3X", "ptS3"}) CHECK(pre.find(name)->builtin);
}

TEST_CASE("user entities shadow the prelude") {
  const auto in = load_document("group Z2 { elements e ; table e }");
  CHECK(in.find("Z2")->groupoid.morphism_count() == 1);
  CHECK_FALSE(in.find("Z2")->builtin);
  CHECK(in.find("Z3")->builtin);
  // an action may use a builtin group
  CHECK(load_document("action F { group Z2 ; points a b ; act s : a->b b->a }").find("F")->groupoid.object_count() == 2);
}

TEST_CASE("hh of Z2 over Z") {
  Invocation inv = cmd("hh", "Z2");
  inv.ring = Ring::kIntegers;
  inv.cap = 6;
  inv.format = Format::kTsv;
  const auto r = invoke("", inv);
  REQUIRE(r.code == 0);
  CHECK(lines(r.out) == std::vector<std::string>{"degree\trank\ttorsion", "0\t2\t", "1\t0\t2,2", "2\t0\t", "3\t0\t2,2",
                                                 "4\t0\t", "5\t0\t2,2"});
}

TEST_CASE("homology and hc commands") {
  Invocation inv = cmd("homology", "Z3");
  inv.cap = 4;
  inv.format = Format::kTsv;
  CHECK(lines(invoke("", inv).out) ==
        std::vector<std::string>{"degree\trank\ttorsion", "0\t1\t", "1\t0\t3", "2\t0\t", "3\t0\t3"});

  inv = cmd("hc", "Z2");
  inv.cap = 4;
  inv.ring = Ring::kRationals;
  inv.format = Format::kTsv;
  // HC over Q of a finite group: the class count in even degrees
  CHECK(lines(invoke("", inv).out) ==
        std::vector<std::string>{"degree\trank\ttorsion", "0\t2\t", "1\t0\t", "2\t2\t", "3\t0\t"});

  // options block supplies defaults, flags override them
  inv = cmd("homology", "Z2");
  inv.format = Format::kTsv;
  CHECK(lines(invoke("options { cap 3 ; ring Q }", inv).out).size() == 4);
  inv.cap = 2;
  CHECK(lines(invoke("options { cap 3 ; ring Q }", inv).out).size() == 3);
}

TEST_CASE("hp of Z3") {
  Invocation inv = cmd("hp", "Z3");
  inv.format = Format::kTsv;
  const auto r = invoke("", inv);
  REQUIRE(r.code == 0);
  CHECK(lines(r.out) == std::vector<std::string>{"k\trank\tvia HC\tvia HH", "0\t3\t3\t3", "1\t0\t0\t0"});
}

TEST_CASE("inertia command") {
  Invocation inv = cmd("inertia", "S3");
  inv.format = Format::kTsv;
  const auto out = lines(invoke("", inv).out);
  REQUIRE(out.size() == 4);
  CHECK(out[1] == "0\te\t*\t1\t6");
  CHECK(out[2] == "1\tp132\t*\t3\t2");
  CHECK(out[3] == "2\tp231\t*\t2\t3");
}

TEST_CASE("verify passes on S3 at cap 4") {
  Invocation inv = cmd("verify", "S3");
  inv.cap = 4;
  const auto r = invoke("", inv);
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("all 15 checks passed") != std::string::npos);
}

TEST_CASE("cr with comparison") {
  const std::string doc = "sectors c3 { sector age 0 betti 1 ; sector age 1 betti 1 ; sector age 2 betti 1 }\n"
                          "sectors half { sector age 0 betti 1 ; sector age 1/2 betti 1 }";
  Invocation inv = cmd("cr", "c3");
  inv.compare = "Z3";
  auto r = invoke(doc, inv);
  CHECK(r.code == 0);
  CHECK(r.out.find("MISMATCH") == std::string::npos);

  inv.compare = "Z2";
  CHECK(invoke(doc, inv).code == 1);

  inv = cmd("cr", "half");
  inv.compare = "Z2";
  r = invoke(doc, inv);
  CHECK(r.code == 1);
  CHECK(r.out.find("refused") != std::string::npos);

  // a groupoid stands for its point quotient
  CHECK(invoke("", cmd("cr", "S3")).code == 0);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(invoke("", cmd("hh")).code == 2);
  CHECK(invoke("", cmd("hh", "nothing")).code == 2);
  CHECK(invoke("", cmd("hh", "ptS3")).code == 2);
  CHECK(invoke("", cmd("frobnicate", "Z2")).code == 2);
  Invocation inv = cmd("hp", "Z2");
  inv.cap = 1;
  const auto r = invoke("", inv);
  CHECK(r.code == 2);
  CHECK(r.err.find("cap") != std::string::npos);
}

TEST_CASE("validate reports every entity") {
  const auto r = invoke("", cmd("validate"));
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 8);
}

TEST_CASE("output is deterministic") {
  Invocation inv = cmd("verify", "S3X");
  inv.cap = 3;
  const auto a = invoke("", inv);
  const auto b = invoke("", inv);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}
