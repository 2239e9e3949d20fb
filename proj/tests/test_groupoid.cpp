#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

using namespace orbinerve;
using namespace testing_support;

namespace {

GroupTable z2_table() { return {{"e", "s"}, {{0, 1}, {1, 0}}}; }

bool has_axiom(const ValidationReport& r, Axiom a) {
  return std::any_of(r.begin(), r.end(), [&](const AxiomViolation& v) { return v.axiom == a; });
}

// Random group from a small catalog, as a groupoid.
FiniteGroupoid random_group(std::mt19937& gen) {
  std::uniform_int_distribution<int> pick(0, 6);
  switch (pick(gen)) {
    case 0: return FiniteGroupoid();
    case 1: return cyclic(2);
    case 2: return cyclic(3);
    case 3: return cyclic(4);
    case 4: return cyclic(6);
    case 5: return s3();
    default: return group_as_groupoid(catalog::symmetric_group(4));
  }
}

}  // namespace

TEST_CASE("trivial groupoid validates") {
  FiniteGroupoid g;
  CHECK(g.object_count() == 1);
  CHECK(g.morphism_count() == 1);
  CHECK(validate_groupoid(g).empty());
}

TEST_CASE("Z2 from its table is a one-object groupoid") {
  auto g = group_as_groupoid(z2_table());
  CHECK(g.object_count() == 1);
  CHECK(g.morphism_count() == 2);
  CHECK(validate_groupoid(g).empty());
  CHECK(g.compose(1, 1) == 0);
  CHECK(g.inverse(1) == 1);
}

TEST_CASE("S3 Cayley table gives a valid groupoid with six morphisms") {
  auto g = s3();
  CHECK(g.morphism_count() == 6);
  CHECK(validate_groupoid(g).empty());
}

TEST_CASE("order-1 table is the trivial groupoid") {
  auto g = group_as_groupoid({{"e"}, {{0}}});
  CHECK(g.morphism_count() == 1);
  CHECK(validate_groupoid(g).empty());
}

TEST_CASE("Z2 table with s*s = s reports the inverse axiom at s") {
  FiniteGroupoid::Tables t;
  t.object_names = {"*"};
  t.morphism_names = {"e", "s"};
  t.source = {0, 0};
  t.target = {0, 0};
  t.inverse = {0, 1};
  t.identity = {0};
  t.composition = {0, 1, 1, 1};
  FiniteGroupoid g(t);
  auto report = validate_groupoid(g);
  REQUIRE(has_axiom(report, Axiom::kInverse));
  auto it = std::find_if(report.begin(), report.end(), [](const auto& v) { return v.axiom == Axiom::kInverse; });
  CHECK(std::find(it->witnesses.begin(), it->witnesses.end(), 1u) != it->witnesses.end());
}

TEST_CASE("malformed tables are structural errors, not axiom reports") {
  FiniteGroupoid::Tables t;
  t.object_names = {"*"};
  t.morphism_names = {"e"};
  t.source = {3};
  t.target = {0};
  t.inverse = {0};
  t.identity = {0};
  t.composition = {0};
  CHECK_THROWS_AS(FiniteGroupoid(t), StructuralError);
}

TEST_CASE("non-group tables are rejected naming the axiom") {
  GroupTable not_assoc{{"a", "b", "c"}, {{0, 1, 2}, {1, 0, 0}, {2, 0, 1}}};
  CHECK_THROWS_AS(group_as_groupoid(not_assoc), AxiomError);
  GroupTable no_inverse{{"e", "s"}, {{0, 1}, {1, 1}}};
  try {
    group_as_groupoid(no_inverse);
    FAIL("expected rejection");
  } catch (const AxiomError& e) {
    CHECK_FALSE(e.axiom().empty());
  }
}

TEST_CASE("action groupoids") {
  SECTION("trivial group on two points is two trivial groupoids") {
    auto g = action_groupoid(FiniteGroupoid(), GroupAction{{"1", "2"}, {{0, 1}}});
    CHECK(g.object_count() == 2);
    CHECK(g.morphism_count() == 2);
    CHECK(connected_components(g).size() == 2);
  }
  SECTION("Z2 swapping two points is connected with four morphisms") {
    auto g = action_groupoid(cyclic(2), GroupAction{{"1", "2"}, {{0, 1}, {1, 0}}});
    CHECK(g.object_count() == 2);
    CHECK(g.morphism_count() == 4);
    CHECK(validate_groupoid(g).empty());
    CHECK(connected_components(g).size() == 1);
  }
  SECTION("S3 on three points") {
    auto g = s3_on_three_points();
    CHECK(g.object_count() == 3);
    CHECK(g.morphism_count() == 18);
    CHECK(validate_groupoid(g).empty());
  }
  SECTION("a map that is not an action is rejected") {
    // the swap assigned to the identity element
    CHECK_THROWS_AS(action_groupoid(cyclic(2), GroupAction{{"1", "2"}, {{1, 0}, {1, 0}}}), AxiomError);
  }
}

TEST_CASE("inertia of small groups") {
  SECTION("trivial") {
    auto ig = inertia(FiniteGroupoid());
    CHECK(ig.groupoid.object_count() == 1);
    CHECK(ig.groupoid.morphism_count() == 1);
  }
  SECTION("Z2 splits into two copies of Z2") {
    auto ig = inertia(cyclic(2));
    CHECK(ig.groupoid.object_count() == 2);
    CHECK(ig.groupoid.morphism_count() == 4);
    CHECK(connected_components(ig.groupoid).size() == 2);
  }
  SECTION("S3 has three sectors") {
    auto ig = inertia(s3());
    CHECK(ig.groupoid.object_count() == 6);
    CHECK(ig.groupoid.morphism_count() == 36);
    CHECK(validate_groupoid(ig.groupoid).empty());
    CHECK(connected_components(ig.groupoid).size() == 3);
  }
  SECTION("labels: target of (a, v) is v^-1 a v") {
    auto g = s3();
    auto ig = inertia(g);
    for (MorphismId m = 0; m < ig.groupoid.morphism_count(); ++m) {
      auto [a, v] = ig.label.morphism_pair[m];
      CHECK(ig.label.object_automorphism[ig.groupoid.source(m)] == a);
      CHECK(ig.label.object_automorphism[ig.groupoid.target(m)] == g.compose({g.inverse(v), a, v}));
    }
  }
}

TEST_CASE("connected components and isotropy") {
  CHECK(connected_components(FiniteGroupoid()).size() == 1);
  CHECK(connected_components(disjoint_union(cyclic(2), cyclic(2))).size() == 2);
  CHECK(isotropy_group(FiniteGroupoid(), 0).order() == 1);
  CHECK(isotropy_group(cyclic(2), 0).order() == 2);
  CHECK(isotropy_group(s3_on_three_points(), 0).order() == 2);
  CHECK_THROWS_AS(isotropy_group(cyclic(2), 5), std::out_of_range);
  auto blocks = connected_components(inertia(s3()).groupoid);
  for (std::size_t i = 1; i < blocks.size(); ++i) CHECK(blocks[i - 1].front() < blocks[i].front());
}

TEST_CASE("property: inertia is valid and its components count conjugacy classes") {
  auto& gen = rng();
  for (int trial = 0; trial < 20; ++trial) {
    auto g = random_group(gen);
    auto ig = inertia(g);
    CHECK(validate_groupoid(ig.groupoid).empty());
    CHECK(connected_components(ig.groupoid).size() == conjugacy_classes(g).size());
  }
}

TEST_CASE("property: inertia components of action groupoids match orbit-stabilizer pairs") {
  const std::vector<FiniteGroupoid> cases = {
      s3_on_three_points(),
      action_groupoid(cyclic(2), GroupAction{{"1", "2", "3"}, {{0, 1, 2}, {1, 0, 2}}}),
      action_groupoid(group_as_groupoid(catalog::symmetric_group(4)), catalog::natural_action(4)),
      action_groupoid(cyclic(4), GroupAction{{"a", "b"}, {{0, 1}, {1, 0}, {0, 1}, {1, 0}}}),
  };
  for (const auto& g : cases) {
    REQUIRE(validate_groupoid(g).empty());
    CHECK(connected_components(inertia(g).groupoid).size() == orbit_stabilizer_sector_count(g));
  }
}

TEST_CASE("property: isotropy of the inertia groupoid is the centralizer") {
  for (const auto& g : {cyclic(4), s3(), group_as_groupoid(catalog::symmetric_group(4))}) {
    auto ig = inertia(g);
    for (ObjectId x = 0; x < ig.groupoid.object_count(); ++x) {
      const MorphismId a = ig.label.object_automorphism[x];
      CHECK(isotropy_group(ig.groupoid, x).order() == centralizer(g, a).order());
    }
  }
}
