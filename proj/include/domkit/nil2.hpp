#pragma once

// Normal-form arithmetic for relatively free nilpotent class-2 groups of
// finite rank with exponent constraints, including the two-generator family
// K(a0,b0,k0), plus the independent Heisenberg matrix oracle.

#include <string>
#include <vector>

#include "domkit/fingroup.hpp"
#include "domkit/word.hpp"

namespace domkit {

struct nil2_error : error {
  using error::error;
};

// Exponent constraints; modulus 0 means infinite order. For every pair
// (i, j) the commutator modulus must divide each finite nonzero generator
// modulus, and a zero commutator modulus forces both generator moduli to 0.
struct Nil2Params {
  int rank = 0;
  std::vector<long long> gen_moduli;   // size rank
  std::vector<long long> comm_moduli;  // size rank*(rank-1)/2, pairs (i,j) i<j in lex order

  static Nil2Params K(long long a0, long long b0, long long k0);
  // rank-m form: every pair gets the same commutator modulus k.
  static Nil2Params uniform(int rank, std::vector<long long> gen_moduli, long long k);

  void validate() const;
  int pair_index(int i, int j) const;  // i < j
  long long comm_modulus(int i, int j) const { return comm_moduli[pair_index(i, j)]; }
  // Generator names: x, y for rank 2; z1..zm otherwise.
  std::string gen_name(int i) const;
  int gen_index(const std::string& name) const;  // -1 when unknown

  bool operator==(const Nil2Params&) const = default;
};

// Canonical normal form: exponents reduced into [0, modulus) where the
// modulus is finite, plain integers where it is 0. For rank 2 this is the
// triple (a, b, c) standing for x^a y^b [x,y]^c.
struct Nil2Element {
  Nil2Params params;
  std::vector<long long> gen_exps;
  std::vector<long long> comm_exps;

  bool operator==(const Nil2Element&) const = default;
};

Nil2Element nil2_identity(const Nil2Params& params);
Nil2Element nil2_generator(const Nil2Params& params, int i);
// Rank-2 convenience: the element x^a y^b [x,y]^c.
Nil2Element nil2_triple(const Nil2Params& params, long long a, long long b, long long c);

// Image of a free word in the relatively free class-2 group: a homomorphism
// from free words, computed by class-2 collection.
Nil2Element collect(const Word& w, const Nil2Params& params);

Nil2Element mul(const Nil2Element& a, const Nil2Element& b);
Nil2Element inv(const Nil2Element& a);
Nil2Element pow(const Nil2Element& a, long long n);
Nil2Element commutator(const Nil2Element& a, const Nil2Element& b);
bool is_identity(const Nil2Element& a);
// Least n >= 1 with a^n = e, or 0 when no such n exists.
long long order(const Nil2Element& a);

// Image under the endomorphism killing every generator outside `keep`.
Nil2Element kill_subset(const Nil2Element& a, const std::vector<int>& keep);

// Membership in <x^p, y^p> for rank-2 groups: p | a, p | b and p^2 | c on
// canonical representatives. p must be prime.
bool member_subgroup_p(const Nil2Element& a, long long p);

bool is_prime(long long p);

// Cayley table over all normal forms; requires every modulus finite (>= 1).
// Attaches names, designated generators and the defining presentation.
GroupPtr realize_finite(const Nil2Params& params);

// Independent ground-truth model for K(n,n,n): 3x3 upper unitriangular
// matrices over Z/n with plain matrix multiplication. No presentation
// metadata on purpose.
GroupPtr heisenberg_oracle(long long n);

std::string to_string(const Nil2Element& a);
std::string to_string(const Nil2Params& params);

// Accepts "K(a0,b0,k0)", "nil2(m; e1,...,em; k)" and the bare "a0,b0,k0".
Nil2Params parse_nil2_params(const std::string& text);
// Accepts "(a,b,...)" or "a,b,..." matching the params' coordinate count.
Nil2Element parse_nil2_element(const std::string& text, const Nil2Params& params);

}  // namespace domkit
