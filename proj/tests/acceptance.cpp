// Acceptance suite: one pass/fail line per criterion, each with its time
// budget enforced. Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "domkit/certify.hpp"
#include "domkit/group_io.hpp"
#include "domkit/parallel.hpp"
#include "support.hpp"

using namespace domkit;

#ifndef DOMKIT_FIXTURE_DIR
#define DOMKIT_FIXTURE_DIR "tests/fixtures"
#endif

namespace {

int g_failures = 0;

void criterion(int num, const std::string& name, double budget_s,
               const std::function<void(std::ostringstream&)>& body) {
  std::ostringstream problems;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(problems);
  } catch (const std::exception& e) {
    problems << "exception: " << e.what() << "; ";
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = problems.str().empty();
  bool in_time = elapsed < budget_s;
  if (ok && in_time) {
    std::printf("criterion %2d: PASS  (%6.2fs < %3.0fs)  %s\n", num, elapsed, budget_s,
                name.c_str());
  } else {
    ++g_failures;
    std::printf("criterion %2d: FAIL  (%6.2fs < %3.0fs)  %s%s%s\n", num, elapsed, budget_s,
                name.c_str(), in_time ? "" : "  [over budget]",
                ok ? "" : ("  [" + problems.str() + "]").c_str());
  }
  std::fflush(stdout);
}

void expect(std::ostringstream& problems, bool cond, const std::string& what) {
  if (!cond) problems << what << "; ";
}

std::string fixture(const std::string& name) {
  return std::string(DOMKIT_FIXTURE_DIR) + "/" + name;
}

ElementSet whole(const FiniteGroup& g) {
  ElementSet all(g.order());
  for (int i = 0; i < g.order(); ++i) all[i] = i;
  return all;
}

// Criterion 1: the four commutator identities, on generators and on 200
// seeded random word substitutions.
void c1(std::ostringstream& p) {
  auto check_all = [&](const Word& a, const Word& b, const Word& c, const Word& d) {
    bool ok = free_equal(mul(a, b), mul(mul(b, a), commutator(a, b)));
    ok = ok && free_equal(conjugate(a, b), mul(a, commutator(a, b)));
    ok = ok && free_equal(inv(commutator(a, b)), commutator(b, a));
    ok = ok && free_equal(commutator(mul(a, b), c),
                          mul(conjugate(commutator(a, c), b), commutator(b, c)));
    ok = ok && free_equal(commutator(mul(a, b), c),
                          mul(commutator(a, c), left_normed({a, c, b}), commutator(b, c)));
    ok = ok && free_equal(commutator(a, mul(c, d)),
                          mul(commutator(a, d), conjugate(commutator(a, c), d)));
    ok = ok && free_equal(commutator(a, mul(c, d)),
                          mul(commutator(a, d), commutator(a, c), left_normed({a, c, d})));
    return ok;
  };
  const GeneratorId X("x"), Y("y"), Z("z"), W("w");
  expect(p, check_all(Word::generator(X), Word::generator(Y), Word::generator(Z),
                      Word::generator(W)),
         "generator case");
  std::mt19937 rng(20240815);
  for (int i = 0; i < 200; ++i) {
    Word a = testsupport::random_word(rng, {X, Y, Z, W});
    Word b = testsupport::random_word(rng, {X, Y, Z, W});
    Word c = testsupport::random_word(rng, {X, Y, Z, W});
    Word d = testsupport::random_word(rng, {X, Y, Z, W});
    if (!check_all(a, b, c, d)) {
      expect(p, false, "random substitution " + std::to_string(i));
      return;
    }
  }
}

// Criterion 2: (a,b,c) -> x^a y^b [x,y]^c is a product-preserving bijection
// from the realized K(n,n,n) onto the Heisenberg oracle, n in {2,3,4}.
void c2(std::ostringstream& p) {
  for (long long n : {2LL, 3LL, 4LL}) {
    GroupPtr k = realize_finite(Nil2Params::K(n, n, n));
    GroupPtr h = heisenberg_oracle(n);
    const int order = k->order();
    expect(p, h->order() == order, "orders differ at n=" + std::to_string(n));
    int hx = h->generators()[0], hy = h->generators()[1];
    int hk = h->comm(hx, hy);
    std::vector<int> map(order);
    std::vector<bool> hit(order, false);
    bool bijection = true;
    for (int i = 0; i < order; ++i) {
      long long a = i / (n * n), b = (i / n) % n, c = i % n;
      map[i] = h->op(h->op(h->pow(hx, a), h->pow(hy, b)), h->pow(hk, c));
      if (hit[map[i]]) bijection = false;
      hit[map[i]] = true;
    }
    expect(p, bijection, "not injective at n=" + std::to_string(n));
    bool hom = true;
    for (int i = 0; i < order && hom; ++i) {
      for (int j = 0; j < order; ++j) {
        if (map[k->op(i, j)] != h->op(map[i], map[j])) {
          hom = false;
          break;
        }
      }
    }
    expect(p, hom, "not product-preserving at n=" + std::to_string(n));
  }
}

// Criterion 3: realized K groups have exactly a0*b0*k0 elements and pass the
// full axiom check.
void c3(std::ostringstream& p) {
  struct Case {
    long long a, b, k, expected;
  };
  for (const Case& c : {Case{2, 2, 2, 8}, Case{4, 4, 4, 64}, Case{9, 9, 9, 729},
                        Case{4, 2, 2, 16}}) {
    GroupPtr g = realize_finite(Nil2Params::K(c.a, c.b, c.k));
    std::string tag = "K(" + std::to_string(c.a) + "," + std::to_string(c.b) + "," +
                      std::to_string(c.k) + ")";
    expect(p, g->order() == c.expected, tag + " order");
    try {
      validate_group(g->table(), g->names(), g->generators(), g->presentation());
    } catch (const std::exception& e) {
      expect(p, false, tag + " validation: " + e.what());
    }
  }
}

// Criterion 4: Theorem-style end-to-end instance at p = 2, params (4,4,4).
void c4(std::ostringstream& p) {
  FirstNontrivialReport rep = build_first_nontrivial(Nil2Params::K(4, 4, 4), 2);
  expect(p, rep.subgroup.size() == 4, "|H| != 4");
  expect(p, rep.group->name(rep.element) == "(0,0,2)", "element is not (0,0,2)");
  expect(p, !rep.element_in_subgroup, "(0,0,2) claimed in H");
  expect(p, !contains(rep.subgroup, rep.element), "(0,0,2) in H's element set");
  expect(p, rep.replay.valid, "certificate invalid");
  expect(p, rep.family.closure_flag, "family not quotient-closed");
  expect(p, rep.element_in_overapprox, "(0,0,2) not in over-approximation");
  expect(p, rep.nontrivial, "instance not nontrivial");
}

// Criterion 5: witness for x in the same instance; report statuses partition.
void c5(std::ostringstream& p) {
  GroupPtr g = realize_finite(Nil2Params::K(4, 4, 4));
  int x = g->generators()[0], y = g->generators()[1];
  ElementSet h = generated_subgroup(*g, {g->op(x, x), g->op(y, y)});
  TestFamily fam = TestFamily::of({g});
  fam.close_under_quotients();
  int ksq = g->pow(g->comm(x, y), 2);
  DominionReport rep = dominion_report(g, h, fam, {ksq});

  expect(p, rep.status[x] == ElementStatus::excluded, "x not excluded");
  auto w = rep.witness[x];
  expect(p, w.has_value(), "no witness for x");
  if (w) {
    bool agree = true;
    for (int a : h) agree = agree && w->f(a) == w->g(a);
    expect(p, agree, "witness pair does not agree on H");
    expect(p, w->f(x) != w->g(x), "witness pair does not separate x");
    expect(p, w->f.is_valid() && w->g.is_valid(), "witness maps invalid");
  }
  long long counts[4] = {0, 0, 0, 0};
  for (int a = 0; a < g->order(); ++a) {
    counts[static_cast<int>(rep.status[a])]++;
    bool in_over = contains(rep.overapprox, a);
    bool consistent = (rep.status[a] == ElementStatus::excluded) ? !in_over : in_over;
    if (!consistent) {
      expect(p, false, "status inconsistent at " + g->name(a));
      break;
    }
  }
  expect(p, counts[0] + counts[1] + counts[2] + counts[3] == g->order(),
         "statuses do not partition");
  expect(p, counts[0] == 4 && counts[1] == 1, "unexpected status counts");
}

// Criterion 6: [a^n,b] = [a,b]^n = [a,b^n] exhaustively in K(4,4,4), |n| <= 6.
void c6(std::ostringstream& p) {
  GroupPtr g = realize_finite(Nil2Params::K(4, 4, 4));
  for (int a = 0; a < g->order(); ++a) {
    for (int b = 0; b < g->order(); ++b) {
      for (long long n = -6; n <= 6; ++n) {
        int lhs = g->comm(g->pow(a, n), b);
        int mid = g->pow(g->comm(a, b), n);
        int rhs = g->comm(a, g->pow(b, n));
        if (lhs != mid || mid != rhs) {
          expect(p, false, "fails at a=" + g->name(a) + " b=" + g->name(b) +
                               " n=" + std::to_string(n));
          return;
        }
      }
    }
  }
}

// Criterion 7: swap-identity scans with zero violations on S4, the dihedral
// group of order 8, and the Heisenberg group mod 3.
void c7(std::ostringstream& p) {
  GroupPtr s4 = testsupport::symmetric_group(4);
  GroupPtr d4 = realize_finite(Nil2Params::K(2, 2, 2));
  expect(p, d4->order() == 8 && !d4->is_abelian(), "dihedral fixture wrong");
  GroupPtr h3 = heisenberg_oracle(3);

  SwapScanReport rs4 = swap_identity_scan(*s4);
  expect(p, rs4.triples == 13824 && rs4.violations == 0, "S4 scan");
  SwapScanReport rd4 = swap_identity_scan(*d4);
  expect(p, rd4.triples == 512 && rd4.violations == 0, "D4 scan");
  SwapScanReport rh3 = swap_identity_scan(*h3);
  expect(p, rh3.triples == 19683 && rh3.violations == 0, "Heisenberg scan");
}

// Criterion 8: for every admissible (x,y,z) with d = 2, the swap-argument
// certificate for [x,y,z] over H = <x, [x,y], [x,z]> validates against the
// quotient-closed family. Runs on the order-21 fixture and on K(4,4,4).
void c8(std::ostringstream& p) {
  for (const auto& [label, group] :
       {std::pair<std::string, GroupPtr>{"f21", load_cayley(fixture("f21.cay"))},
        {"K444", realize_finite(Nil2Params::K(4, 4, 4))}}) {
    TestFamily fam = TestFamily::of({group});
    fam.close_under_quotients();
    CertReplayEngine engine(group, fam);
    DerivedSeries ds = derived_series(*group);
    if (!ds.solvable || ds.length > 2) {
      expect(p, false, label + " not metabelian");
      continue;
    }
    const ElementSet& derived = ds.layers.size() > 1 ? ds.layers[1] : ElementSet{0};
    long long validated = 0, expected = 0;
    for (int x : derived) {
      for (int y = 0; y < group->order(); ++y) {
        for (int z = 0; z < group->order(); ++z) {
          ++expected;
          ElementSet h =
              generated_subgroup(*group, {x, group->comm(x, y), group->comm(x, z)});
          Certificate cert = make_metabelian_certificate(group, h, x, y, z, 2);
          if (!engine.replay(cert).valid) {
            expect(p, false, label + " invalid at (" + group->name(x) + "," + group->name(y) +
                                 "," + group->name(z) + ")");
            return;
          }
          ++validated;
        }
      }
    }
    expect(p, validated == expected,
           label + " validated " + std::to_string(validated) + "/" + std::to_string(expected));
  }
}

// Criterion 9: closure-operator checks plus dominion-closedness of normal
// subgroups, over quotient-closed families.
void c9(std::ostringstream& p) {
  GroupPtr s3 = load_cayley(fixture("s3.cay"));
  TestFamily s3fam = TestFamily::of({s3});
  s3fam.close_under_quotients();
  ClosureReport s3rep = closure_checks(s3, s3fam, all_subgroups(*s3));
  expect(p, s3rep.all_ok(), "S3 closure checks");

  GroupPtr g = realize_finite(Nil2Params::K(4, 4, 4));
  int x = g->generators()[0], y = g->generators()[1];
  TestFamily kfam = TestFamily::of({g});
  kfam.close_under_quotients();
  std::vector<ElementSet> chain = {
      {0},
      generated_subgroup(*g, {g->op(x, x)}),
      generated_subgroup(*g, {g->op(x, x), g->op(y, y)}),
  };
  ClosureReport krep = closure_checks(g, kfam, chain);
  expect(p, krep.all_ok(), "K(4,4,4) chain closure checks");

  for (const auto& [label, group, fam] :
       {std::tuple<std::string, GroupPtr, TestFamily*>{"S3", s3, &s3fam},
        {"K444", g, &kfam}}) {
    DominionEngine engine(group, *fam);
    for (const ElementSet& n : normal_subgroups(*group)) {
      if (engine.overapprox(n) != n) {
        expect(p, false, label + ": normal subgroup of size " + std::to_string(n.size()) +
                             " is not dominion-closed");
      }
    }
  }
}

// Criterion 10: dominions respect quotients on K(8,8,8) at desk scale:
// the projection of dom(G, <x^2,y^2>) equals dom(G/N, H/N) for N = <[x,y]^4>,
// both sides over their quotient-closed families, with presentation-based
// hom enumeration from G.
void c10(std::ostringstream& p) {
  GroupPtr g = realize_finite(Nil2Params::K(8, 8, 8));
  int x = g->generators()[0], y = g->generators()[1];
  ElementSet h = generated_subgroup(*g, {g->op(x, x), g->op(y, y)});
  ElementSet n = generated_subgroup(*g, {g->pow(g->comm(x, y), 4)});
  expect(p, h.size() == 32 && n.size() == 2, "H or N has unexpected size");
  expect(p, std::includes(h.begin(), h.end(), n.begin(), n.end()), "N not inside H");

  TestFamily fam = TestFamily::of({g});
  fam.close_under_quotients();
  DominionEngine engine(g, fam);
  ElementSet dom_g = engine.overapprox(h);
  expect(p, engine.homs_into(0).used_presentation, "hom enumeration not presentation-based");

  auto [q, proj] = quotient(g, n);
  TestFamily qfam = TestFamily::of({q});
  qfam.close_under_quotients();
  ElementSet dom_q = dominion_overapprox(q, image_set(h, proj.images), qfam);

  expect(p, image_set(dom_g, proj.images) == dom_q, "projected dominion differs");
}

}  // namespace

int main() {
  std::printf("acceptance suite (jobs: %d)\n", max_jobs());
  criterion(1, "commutator identities under free reduction", 1, c1);
  criterion(2, "collection law matches the Heisenberg oracle", 5, c2);
  criterion(3, "normal-form counts for realized K groups", 5, c3);
  criterion(4, "nontrivial dominion instance at K(4,4,4), p=2", 60, c4);
  criterion(5, "witness search and status partition", 60, c5);
  criterion(6, "power identities, exhaustive in K(4,4,4)", 10, c6);
  criterion(7, "swap-identity scans: S4, D4, Heisenberg(3)", 30, c7);
  criterion(8, "swap-argument certificates for all admissible triples", 120, c8);
  criterion(9, "closure-operator laws and normal-subgroup closedness", 60, c9);
  criterion(10, "dominions respect quotients on K(8,8,8)", 120, c10);
  if (g_failures == 0) {
    std::printf("acceptance: all 10 criteria passed\n");
  } else {
    std::printf("acceptance: %d criterion/criteria FAILED\n", g_failures);
  }
  return g_failures;
}
