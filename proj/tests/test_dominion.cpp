#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "domkit/dominion.hpp"
#include "domkit/nil2.hpp"
#include "support.hpp"

using namespace domkit;

#ifndef DOMKIT_FIXTURE_DIR
#define DOMKIT_FIXTURE_DIR "tests/fixtures"
#endif

static std::string fixture(const std::string& name) {
  return std::string(DOMKIT_FIXTURE_DIR) + "/" + name;
}

static ElementSet whole(const FiniteGroup& g) {
  ElementSet all(g.order());
  for (int i = 0; i < g.order(); ++i) all[i] = i;
  return all;
}

TEST_CASE("equalizer basics") {
  GroupPtr s3 = testsupport::symmetric_group(3);
  auto homs = all_homs(s3, make_cyclic(2));
  REQUIRE(homs.size() == 2);  // trivial and sign

  CHECK(equalizer(homs[0], homs[0]) == whole(*s3));

  ElementSet eq = equalizer(homs[0], homs[1]);
  CHECK(eq.size() == 3);
  for (int a : eq) CHECK(testsupport::permutation_parity(s3->name(a)) == 0);

  Homomorphism other{make_cyclic(2), make_cyclic(2), {0, 0}};
  CHECK_THROWS_AS(equalizer(homs[0], other), dominion_error);
}

TEST_CASE("equalizers are subgroups (seeded random pairs)") {
  GroupPtr g = realize_finite(Nil2Params::K(2, 2, 2));
  auto homs = all_homs(g, g);
  std::mt19937 rng(1234);
  std::uniform_int_distribution<size_t> pick(0, homs.size() - 1);
  for (int i = 0; i < 50; ++i) {
    ElementSet eq = equalizer(homs[pick(rng)], homs[pick(rng)]);
    CHECK(is_subgroup(*g, eq));
  }
}

TEST_CASE("family quotient closure and description") {
  GroupPtr s3 = testsupport::symmetric_group(3);
  TestFamily fam = TestFamily::of({s3});
  fam.close_under_quotients();
  CHECK(fam.targets.size() == 3);  // S3 itself, C2, trivial
  CHECK(fam.targets[0].provenance == "explicit");
  CHECK(fam.targets[1].provenance.starts_with("quotient of target 0"));
  CHECK(fam.description() == "3 target(s), orders 6 2 1, quotient-closed");
}

TEST_CASE("family file loads") {
  TestFamily fam = load_family(fixture("family_s3.fam"));
  CHECK(fam.closure_flag);
  CHECK(fam.targets.size() == 3);
  CHECK_THROWS_AS(load_family("missing.fam"), error);
}

TEST_CASE("S3 with the literal family {S3, S3/A3}: dom(A3) = A3") {
  GroupPtr s3 = testsupport::symmetric_group(3);
  ElementSet a3 = normal_closure(*s3, {3});
  REQUIRE(a3.size() == 3);
  TestFamily fam = TestFamily::of({s3, quotient(s3, a3).group});
  CHECK(dominion_overapprox(s3, a3, fam) == a3);
}

TEST_CASE("family products carry provenance and keep results sound") {
  GroupPtr s3 = testsupport::symmetric_group(3);
  TestFamily fam = TestFamily::of({s3});
  fam.close_under_quotients();
  ElementSet h = generated_subgroup(*s3, {2});
  ElementSet before = dominion_overapprox(s3, h, fam);
  fam.add_product(1, 1);  // C2 x C2
  CHECK(fam.targets.back().provenance == "product of targets 1 and 1");
  CHECK(fam.targets.back().group->order() == 4);
  ElementSet after = dominion_overapprox(s3, h, fam);
  // larger family, never a larger dominion
  CHECK(std::includes(before.begin(), before.end(), after.begin(), after.end()));
}

TEST_CASE("dominion of the whole group is the whole group") {
  GroupPtr s3 = testsupport::symmetric_group(3);
  TestFamily fam = TestFamily::of({s3});
  fam.close_under_quotients();
  CHECK(dominion_overapprox(s3, whole(*s3), fam) == whole(*s3));
}

TEST_CASE("normal subgroups are dominion-closed when the quotient is present") {
  GroupPtr s3 = testsupport::symmetric_group(3);
  TestFamily fam = TestFamily::of({s3});
  fam.close_under_quotients();
  for (const ElementSet& n : normal_subgroups(*s3)) {
    CHECK(dominion_overapprox(s3, n, fam) == n);
  }
}

TEST_CASE("optimized dominion equals the definitional reference") {
  GroupPtr s3 = testsupport::symmetric_group(3);
  TestFamily fam = TestFamily::of({s3});
  fam.close_under_quotients();
  for (const ElementSet& h : all_subgroups(*s3)) {
    CHECK(dominion_overapprox(s3, h, fam) == dominion_overapprox_reference(s3, h, fam));
  }

  GroupPtr k = realize_finite(Nil2Params::K(2, 2, 2));
  TestFamily kf = TestFamily::of({k});
  kf.close_under_quotients();
  int x = k->generators()[0], y = k->generators()[1];
  for (const ElementSet& h : {ElementSet{0}, generated_subgroup(*k, {x}),
                              generated_subgroup(*k, {k->op(x, y)})}) {
    CHECK(dominion_overapprox(k, h, kf) == dominion_overapprox_reference(k, h, kf));
  }
}

TEST_CASE("errors on non-subgroups") {
  GroupPtr s3 = testsupport::symmetric_group(3);
  TestFamily fam = TestFamily::of({s3});
  CHECK_THROWS_AS(dominion_overapprox(s3, {0, 2, 3}, fam), dominion_error);
}

TEST_CASE("K(4,4,4): the commutator square sits in the dominion of <x^2,y^2>") {
  GroupPtr g = realize_finite(Nil2Params::K(4, 4, 4));
  int x = g->generators()[0], y = g->generators()[1];
  ElementSet h = generated_subgroup(*g, {g->op(x, x), g->op(y, y)});
  REQUIRE(h.size() == 4);

  TestFamily fam = TestFamily::of({g});
  fam.close_under_quotients();
  DominionEngine engine(g, fam);

  ElementSet dom = engine.overapprox(h);
  int ksq = g->pow(g->comm(x, y), 2);  // (0,0,2)
  CHECK(g->name(ksq) == "(0,0,2)");
  CHECK(contains(dom, ksq));
  CHECK_FALSE(contains(h, ksq));

  // x escapes, with an explicit agreeing pair separating it
  CHECK_FALSE(contains(dom, x));
  auto w = engine.witness(h, x);
  REQUIRE(w.has_value());
  CHECK(w->f.is_valid());
  CHECK(w->g.is_valid());
  for (int a : h) CHECK(w->f(a) == w->g(a));
  CHECK(w->f(x) != w->g(x));

  // no witness against the certified element or subgroup members
  CHECK_FALSE(engine.witness(h, ksq).has_value());
  CHECK_FALSE(engine.witness(h, 0).has_value());

  // deterministic: the same witness pair every run
  auto w2 = engine.witness(h, x);
  CHECK(w->target_index == w2->target_index);
  CHECK(w->f_index == w2->f_index);
  CHECK(w->g_index == w2->g_index);
}

TEST_CASE("enlarging the family never enlarges the dominion") {
  GroupPtr s3 = testsupport::symmetric_group(3);
  ElementSet h = generated_subgroup(*s3, {2});  // a transposition
  TestFamily small = TestFamily::of({s3});
  TestFamily big = TestFamily::of({s3});
  big.close_under_quotients();
  ElementSet dom_small = dominion_overapprox(s3, h, small);
  ElementSet dom_big = dominion_overapprox(s3, h, big);
  CHECK(std::includes(dom_small.begin(), dom_small.end(), dom_big.begin(), dom_big.end()));
}

TEST_CASE("dominion is contained in every equalizer containing H") {
  GroupPtr k = realize_finite(Nil2Params::K(2, 2, 2));
  TestFamily fam = TestFamily::of({k});
  ElementSet h = generated_subgroup(*k, {k->generators()[0]});
  ElementSet dom = dominion_overapprox(k, h, fam);
  auto homs = all_homs(k, k);
  for (size_t i = 0; i < homs.size(); ++i) {
    for (size_t j = i + 1; j < homs.size(); ++j) {
      ElementSet eq = equalizer(homs[i], homs[j]);
      if (std::includes(eq.begin(), eq.end(), h.begin(), h.end())) {
        CHECK(std::includes(eq.begin(), eq.end(), dom.begin(), dom.end()));
      }
    }
  }
}

TEST_CASE("closure operator checks") {
  GroupPtr s3 = testsupport::symmetric_group(3);
  TestFamily fam = TestFamily::of({s3});
  fam.close_under_quotients();
  ClosureReport rep = closure_checks(s3, fam, all_subgroups(*s3));
  CHECK(rep.all_ok());
  CHECK(rep.violations.empty());

  GroupPtr g = realize_finite(Nil2Params::K(4, 4, 4));
  int x = g->generators()[0], y = g->generators()[1];
  TestFamily kf = TestFamily::of({g});
  kf.close_under_quotients();
  std::vector<ElementSet> chain = {
      {0},
      generated_subgroup(*g, {g->op(x, x)}),
      generated_subgroup(*g, {g->op(x, x), g->op(y, y)}),
  };
  ClosureReport krep = closure_checks(g, kf, chain);
  CHECK(krep.all_ok());
}

TEST_CASE("dominion report statuses partition the group") {
  GroupPtr g = realize_finite(Nil2Params::K(4, 4, 4));
  int x = g->generators()[0], y = g->generators()[1];
  ElementSet h = generated_subgroup(*g, {g->op(x, x), g->op(y, y)});
  TestFamily fam = TestFamily::of({g});
  fam.close_under_quotients();
  int ksq = g->pow(g->comm(x, y), 2);
  DominionReport rep = dominion_report(g, h, fam, {ksq});

  int counts[4] = {0, 0, 0, 0};
  for (int a = 0; a < g->order(); ++a) {
    counts[static_cast<int>(rep.status[a])]++;
    switch (rep.status[a]) {
      case ElementStatus::in_subgroup:
        CHECK(contains(h, a));
        break;
      case ElementStatus::certified:
        CHECK(a == ksq);
        break;
      case ElementStatus::retained:
        CHECK(contains(rep.overapprox, a));
        break;
      case ElementStatus::excluded:
        CHECK_FALSE(contains(rep.overapprox, a));
        REQUIRE(rep.witness[a].has_value());
        CHECK(rep.witness[a]->f(a) != rep.witness[a]->g(a));
        break;
    }
  }
  CHECK(counts[0] == 4);
  CHECK(counts[1] == 1);
  CHECK(counts[0] + counts[1] + counts[2] + counts[3] == 64);
  // the subgroup always sits inside the over-approximation
  CHECK(std::includes(rep.overapprox.begin(), rep.overapprox.end(), h.begin(), h.end()));
}

TEST_CASE("quotient respect on a small instance") {
  // G = K(4,4,4), H = the 8-element subgroup of squares, N = <[x,y]^2> <= H.
  GroupPtr g = realize_finite(Nil2Params::K(4, 4, 4));
  int x = g->generators()[0], y = g->generators()[1];
  int k2 = g->pow(g->comm(x, y), 2);
  ElementSet h = generated_subgroup(*g, {g->op(x, x), g->op(y, y), k2});
  ElementSet n = generated_subgroup(*g, {k2});
  REQUIRE(std::includes(h.begin(), h.end(), n.begin(), n.end()));
  REQUIRE_FALSE(normality_violation(*g, n).has_value());

  TestFamily fam = TestFamily::of({g});
  fam.close_under_quotients();
  ElementSet dom_g = dominion_overapprox(g, h, fam);

  auto [q, proj] = quotient(g, n);
  TestFamily qfam = TestFamily::of({q});
  qfam.close_under_quotients();
  ElementSet dom_q = dominion_overapprox(q, image_set(h, proj.images), qfam);

  CHECK(image_set(dom_g, proj.images) == dom_q);
}
