#pragma once

// Replayable certificates for dominion membership: the class-2 power-argument
// chain and the metabelian swap-argument chain. A certificate stores its
// equality chain symbolically once; validation replays every step for every
// pair of homomorphisms into every family target that agrees on the subgroup.

#include <array>

#include "domkit/dominion.hpp"
#include "domkit/nil2.hpp"

namespace domkit {

struct certify_error : error {
  using error::error;
};

enum class CertKind { half_nontrivial, first_nontrivial, metabelian_chain };
const char* to_string(CertKind k);

// Expression over the images, under the pair's two homomorphisms, of words in
// the designated elements.
struct CertExpr {
  enum class Kind { hom_of, comm, pw };
  Kind kind = Kind::hom_of;
  int hom = 0;       // hom_of: which map of the pair (0 or 1)
  Word word;         // hom_of: word over the designated letters
  std::string label; // display form of the word
  long long exp = 1; // pw
  std::vector<CertExpr> kids;

  static CertExpr hom_of(int hom, Word w, std::string label);
  static CertExpr comm(CertExpr a, CertExpr b);
  static CertExpr pw(CertExpr a, long long n);
};

struct CertStep {
  CertExpr lhs, rhs;
  std::string justification;
};

struct Certificate {
  CertKind kind = CertKind::half_nontrivial;
  GroupPtr group;
  ElementSet subgroup;
  std::vector<std::pair<std::string, int>> letters;  // designated letter -> element
  std::array<std::string, 2> hom_symbols = {"f", "g"};
  std::vector<CertStep> steps;
  int element = 0;  // the element the chain proves into the dominion
  long long n = 0;  // half_nontrivial exponent
  int d = 0;        // metabelian solvability bound
};

struct ReplayFailure {
  int target_index = -1;
  size_t f_index = 0, g_index = 0;  // hom enumeration positions
  int step_index = -1;
};

struct ReplayResult {
  bool valid = false;
  int targets = 0;
  long long pairs = 0;  // agreeing pairs examined (f <= g, diagonal included)
  std::optional<ReplayFailure> first_failure;
};

// Builds the ten-step power-argument chain for [v,w]^n. Preconditions (each
// failure named): v^n and w^n lie in h, and [[v,w],v] = [[v,w],w] = e.
Certificate make_half_nontrivial_certificate(GroupPtr g, const ElementSet& h, int v, int w,
                                             long long n,
                                             CertKind kind = CertKind::half_nontrivial);

// Builds the eight-step swap-argument chain for [x,y,z]. Preconditions (each
// failure named): solvability length <= d with x in G^(d-1) and y, z in
// G^(d-2); x, [x,y], [x,z] in h; and the swap hypotheses
// [x,[y^-1,z^-1]] = [[x,y],[x,z]] = e for (x,y,z) and for (x,z,y).
Certificate make_metabelian_certificate(GroupPtr g, const ElementSet& h, int x, int y, int z,
                                        int d);

// Replays certificates against a family. The fast path collapses pairs with
// equal relevant images and falls back to the exact path on any failure, so
// both report identical verdicts, pair counts and first failures; the exact
// path is the reference implementation.
class CertReplayEngine {
 public:
  CertReplayEngine(GroupPtr group, const TestFamily& family);

  ReplayResult replay(const Certificate& cert);
  ReplayResult replay_exact(const Certificate& cert);

  DominionEngine& dominion() { return engine_; }

 private:
  const std::vector<std::vector<int>>& buckets_for(int target_index, const ElementSet& subgroup);

  DominionEngine engine_;
  std::map<std::pair<int, ElementSet>, std::vector<std::vector<int>>> bucket_cache_;
  std::map<std::pair<int, std::string>, bool> universal_cache_;
};

ReplayResult replay(const Certificate& cert, const TestFamily& family);
ReplayResult replay_exact(const Certificate& cert, const TestFamily& family);

std::string render(const Certificate& cert);
std::string render(const Certificate& cert, const ReplayResult& rr);

// Exhaustive scan of all ordered triples (v,w,z): wherever
// [v,[w^-1,z^-1]] = e and [[v,w],[v,z]] = e, assert [v,w,z] = [v,z,w].
// Any violation is an implementation bug, not a property of the group.
struct SwapScanReport {
  long long triples = 0;
  long long hypothesis_triples = 0;
  long long violations = 0;
  std::optional<std::array<int, 3>> first_violation;
};
SwapScanReport swap_identity_scan(const FiniteGroup& g);
SwapScanReport swap_identity_scan_serial(const FiniteGroup& g);

// End-to-end nontrivial-dominion instance: G = K(a0,b0,k0) with p^2 | k0,
// H = <x^p, y^p>; certifies [x,y]^p, checks it is outside H, and confirms it
// against the brute-force over-approximation.
struct FirstNontrivialReport {
  Nil2Params params;
  long long prime = 0;
  GroupPtr group;
  ElementSet subgroup;
  std::optional<long long> expected_subgroup_size;  // (a0/p)(b0/p)(k0/p^2) when p | a0, p | b0
  int element = 0;
  bool element_in_subgroup = true;
  Certificate certificate;
  ReplayResult replay;
  bool element_in_overapprox = false;
  TestFamily family;
  bool nontrivial = false;
};
FirstNontrivialReport build_first_nontrivial(const Nil2Params& params, long long p);
FirstNontrivialReport build_first_nontrivial(const Nil2Params& params, long long p,
                                             const TestFamily& family);

}  // namespace domkit
