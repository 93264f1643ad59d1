#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "domkit/nil2.hpp"
#include "support.hpp"

using namespace domkit;

namespace {

// Image of a two-letter word in the Heisenberg oracle, via its designated
// generator matrices. Independent route for checking collection.
int oracle_eval(const FiniteGroup& h, const Word& w) {
  return eval_word(h, w, {{GeneratorId("x"), h.generators()[0]},
                          {GeneratorId("y"), h.generators()[1]}});
}

// Oracle element index -> (alpha, beta, gamma) matrix coordinates.
std::array<long long, 3> oracle_coords(int idx, long long n) {
  return {idx / (n * n), (idx / n) % n, idx % n};
}

// phi(a,b,c) = x^a y^b [x,y]^c computed entirely inside the oracle.
int phi(const FiniteGroup& h, long long a, long long b, long long c) {
  int x = h.generators()[0], y = h.generators()[1];
  int k = h.comm(x, y);
  return h.op(h.op(h.pow(x, a), h.pow(y, b)), h.pow(k, c));
}

}  // namespace

TEST_CASE("params validation") {
  CHECK_NOTHROW(Nil2Params::K(4, 4, 4));
  CHECK_NOTHROW(Nil2Params::K(0, 0, 0));
  CHECK_NOTHROW(Nil2Params::K(0, 0, 4));   // finite commutator order, free generators
  CHECK_NOTHROW(Nil2Params::K(4, 2, 2));
  CHECK_THROWS_AS(Nil2Params::K(2, 2, 4), nil2_error);   // 4 does not divide 2
  CHECK_THROWS_AS(Nil2Params::K(4, 0, 0), nil2_error);   // k = 0 forces both moduli 0
  CHECK_THROWS_AS(Nil2Params::K(-1, 2, 2), nil2_error);
  CHECK_NOTHROW(Nil2Params::uniform(3, {4, 4, 4}, 4));
}

TEST_CASE("params text forms") {
  CHECK(to_string(Nil2Params::K(4, 4, 4)) == "K(4,4,4)");
  CHECK(parse_nil2_params("K(4,4,4)") == Nil2Params::K(4, 4, 4));
  CHECK(parse_nil2_params("4,4,4") == Nil2Params::K(4, 4, 4));
  CHECK(parse_nil2_params(" nil2(3; 2,2,2; 2) ") == Nil2Params::uniform(3, {2, 2, 2}, 2));
  CHECK_THROWS_AS(parse_nil2_params("K(4,4)"), nil2_error);
  Nil2Params p = Nil2Params::K(4, 4, 4);
  CHECK(parse_nil2_element("(1,2,3)", p) == nil2_triple(p, 1, 2, 3));
  CHECK(parse_nil2_element("1,2,-1", p) == nil2_triple(p, 1, 2, 3));
  CHECK_THROWS_AS(parse_nil2_element("(1,2)", p), nil2_error);
}

TEST_CASE("collect on the free class-2 group matches the matrix oracle") {
  Nil2Params free2 = Nil2Params::K(0, 0, 0);
  CHECK(collect(parse_word("x y"), free2) == nil2_triple(free2, 1, 1, 0));
  CHECK(collect(parse_word("y x"), free2) == nil2_triple(free2, 1, 1, -1));
  CHECK(collect(parse_word("[x,y]^3 x"), free2) == nil2_triple(free2, 1, 0, 3));

  // Same words pushed through the Heisenberg oracle at n = 7 (large enough
  // to avoid wraparound for these exponents).
  GroupPtr h = heisenberg_oracle(7);
  for (const char* text : {"x y", "y x", "[x,y]^3 x", "x^2 y^-1 x y", "[y,x] x y x"}) {
    Word w = parse_word(text);
    Nil2Element g = collect(w, free2);
    auto [alpha, beta, gamma] = oracle_coords(oracle_eval(*h, w), 7);
    // matrix coordinates of x^a y^b [x,y]^c are (a, b, ab + c)
    auto mod7 = [](long long v) { return ((v % 7) + 7) % 7; };
    CHECK(mod7(g.gen_exps[0]) == alpha);
    CHECK(mod7(g.gen_exps[1]) == beta);
    CHECK(mod7(g.gen_exps[0] * g.gen_exps[1] + g.comm_exps[0]) == gamma);
  }

  CHECK_THROWS_AS(collect(parse_word("x q"), free2), nil2_error);
}

TEST_CASE("collect is a homomorphism from free words (seeded, 500 words)") {
  Nil2Params p = Nil2Params::K(4, 4, 4);
  std::mt19937 rng(50505);
  const GeneratorId X("x"), Y("y");
  for (int i = 0; i < 500; ++i) {
    Word u = testsupport::random_word(rng, {X, Y});
    Word v = testsupport::random_word(rng, {X, Y});
    CHECK(mul(collect(u, p), collect(v, p)) == collect(mul(u, v), p));
    // evaluating the word by repeated generator multiplication agrees
    Nil2Element acc = nil2_identity(p);
    for (const auto& s : u.syllables()) {
      acc = mul(acc, pow(nil2_generator(p, p.gen_index(s.gen.name)), s.exp));
    }
    CHECK(acc == collect(u, p));
  }
}

TEST_CASE("nil2 group operations in K(4,4,4)") {
  Nil2Params p = Nil2Params::K(4, 4, 4);
  CHECK(mul(nil2_triple(p, 1, 0, 0), nil2_triple(p, 0, 1, 0)) == nil2_triple(p, 1, 1, 0));
  CHECK(order(nil2_triple(p, 0, 0, 1)) == 4);
  CHECK(order(nil2_identity(p)) == 1);

  // inverse of (1,1,0): unique triple multiplying to the identity
  Nil2Element g = nil2_triple(p, 1, 1, 0);
  Nil2Element gi = inv(g);
  CHECK(is_identity(mul(g, gi)));
  CHECK(is_identity(mul(gi, g)));
  CHECK(gi == nil2_triple(p, 3, 3, 3));

  // cross-check against the oracle at n = 4
  GroupPtr h = heisenberg_oracle(4);
  int img = phi(*h, 1, 1, 0);
  int img_inv = h->inv(img);
  CHECK(img_inv == phi(*h, 3, 3, 3));
  CHECK(h->element_order(phi(*h, 0, 0, 1)) == 4);

  CHECK_THROWS_AS(mul(nil2_triple(p, 1, 0, 0), nil2_identity(Nil2Params::K(2, 2, 2))), nil2_error);
}

TEST_CASE("pow matches repeated multiplication, including negatives") {
  Nil2Params p = Nil2Params::K(0, 0, 0);
  std::mt19937 rng(8);
  std::uniform_int_distribution<long long> d(-5, 5);
  for (int i = 0; i < 50; ++i) {
    Nil2Element g = nil2_triple(p, d(rng), d(rng), d(rng));
    Nil2Element acc = nil2_identity(p);
    for (int n = 0; n <= 8; ++n) {
      CHECK(pow(g, n) == acc);
      CHECK(pow(g, -n) == inv(acc));
      acc = mul(acc, g);
    }
  }
}

TEST_CASE("infinite order detection") {
  Nil2Params p = Nil2Params::K(0, 0, 0);
  CHECK(order(nil2_triple(p, 1, 0, 0)) == 0);
  CHECK(order(nil2_triple(p, 0, 0, -2)) == 0);
  Nil2Params q = Nil2Params::K(0, 0, 4);
  CHECK(order(nil2_triple(q, 0, 0, 3)) == 4);
  CHECK(order(nil2_triple(q, 1, 0, 0)) == 0);
}

TEST_CASE("exponent overflow throws instead of wrapping") {
  Nil2Params p = Nil2Params::K(0, 0, 0);
  Nil2Element g = nil2_triple(p, (1LL << 62), 2, 0);
  CHECK_THROWS_AS(pow(g, 4), nil2_error);
}

TEST_CASE("kill_subset") {
  Nil2Params p = Nil2Params::K(4, 4, 4);
  Nil2Element g = nil2_triple(p, 1, 2, 3);
  CHECK(kill_subset(g, {0}) == nil2_triple(p, 1, 0, 0));
  CHECK(kill_subset(g, {0, 1}) == g);
  CHECK(kill_subset(g, {}) == nil2_identity(p));
  CHECK(kill_subset(kill_subset(g, {1}), {1}) == kill_subset(g, {1}));

  // endomorphism property, exhaustively over all 64 x 64 pairs
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 64; ++j) {
      Nil2Element a = nil2_triple(p, i / 16, (i / 4) % 4, i % 4);
      Nil2Element b = nil2_triple(p, j / 16, (j / 4) % 4, j % 4);
      CHECK(kill_subset(mul(a, b), {0}) == mul(kill_subset(a, {0}), kill_subset(b, {0})));
    }
  }
}

TEST_CASE("member_subgroup_p") {
  Nil2Params p = Nil2Params::K(4, 4, 4);
  CHECK(member_subgroup_p(nil2_triple(p, 2, 2, 0), 2));
  CHECK_FALSE(member_subgroup_p(nil2_triple(p, 0, 0, 2), 2));
  CHECK(member_subgroup_p(nil2_identity(p), 2));
  CHECK(member_subgroup_p(nil2_identity(p), 3));
  CHECK_THROWS_AS(member_subgroup_p(nil2_identity(p), 4), nil2_error);
  CHECK_THROWS_AS(member_subgroup_p(nil2_identity(Nil2Params::uniform(3, {4, 4, 4}, 4)), 2),
                  nil2_error);
}

TEST_CASE("realize_finite basic shapes") {
  CHECK(realize_finite(Nil2Params::K(1, 1, 1))->order() == 1);
  GroupPtr g8 = realize_finite(Nil2Params::K(2, 2, 2));
  CHECK(g8->order() == 8);
  CHECK_FALSE(g8->is_abelian());
  CHECK(g8->generators().size() == 2);
  CHECK(g8->presentation().has_value());
  CHECK(g8->presentation()->params_tag == std::string("K(2,2,2)"));
  CHECK(realize_finite(Nil2Params::K(4, 2, 2))->order() == 16);
  CHECK_THROWS_AS(realize_finite(Nil2Params::K(0, 0, 4)), nil2_error);
  CHECK_THROWS_AS(realize_finite(Nil2Params::K(32, 32, 32)), nil2_error);  // over the cap
}

TEST_CASE("heisenberg oracle shapes") {
  GroupPtr h2 = heisenberg_oracle(2);
  CHECK(h2->order() == 8);
  CHECK_FALSE(h2->is_abelian());
  CHECK(h2->name(0) == "(0,0,0)");
  CHECK_THROWS_AS(heisenberg_oracle(0), nil2_error);
}

TEST_CASE("collection law agrees with the oracle: full isomorphism n = 2, 3") {
  for (long long n : {2LL, 3LL}) {
    GroupPtr k = realize_finite(Nil2Params::K(n, n, n));
    GroupPtr h = heisenberg_oracle(n);
    REQUIRE(k->order() == h->order());
    const int order = k->order();
    // map index in K to index in oracle via phi on the exponent tuple
    std::vector<int> map(order);
    std::vector<bool> hit(order, false);
    for (int i = 0; i < order; ++i) {
      long long a = i / (n * n), b = (i / n) % n, c = i % n;
      map[i] = phi(*h, a, b, c);
      CHECK_FALSE(hit[map[i]]);
      hit[map[i]] = true;
    }
    for (int i = 0; i < order; ++i) {
      for (int j = 0; j < order; ++j) {
        CHECK(map[k->op(i, j)] == h->op(map[i], map[j]));
      }
    }
  }
}

TEST_CASE("class-2 identities hold elementwise in realized groups") {
  for (GroupPtr g : {realize_finite(Nil2Params::K(2, 2, 2)),
                     realize_finite(Nil2Params::K(4, 4, 4)),
                     realize_finite(Nil2Params::K(4, 2, 2))}) {
    bool ok = true;
    for (int u = 0; u < g->order() && ok; ++u) {
      for (int v = 0; v < g->order(); ++v) {
        if (g->comm(g->comm(u, v), u) != 0 || g->comm(g->comm(u, v), v) != 0) {
          ok = false;
          break;
        }
      }
    }
    CHECK(ok);
  }
}
