#pragma once

// Equalizers and the finite-family over-approximation of the dominion, with
// witness search and closure-operator checks. Restricting the target range to
// a finite family can only grow the set, so every result here is an
// over-approximation relative to that family and is reported as such.

#include <optional>

#include "domkit/fingroup.hpp"

namespace domkit {

struct dominion_error : error {
  using error::error;
};

// Ordered list of target groups. Provenance records where each came from.
struct TestFamily {
  struct Target {
    GroupPtr group;
    std::string provenance;
  };
  std::vector<Target> targets;
  bool closure_flag = false;
  int max_order = 512;

  static TestFamily of(std::vector<GroupPtr> groups, const std::string& provenance = "explicit");

  // Appends, for every original member, all of its quotients (one per normal
  // subgroup, canonical order) up to max_order, deduplicated by table.
  void close_under_quotients();

  // Appends the direct product of two members (subject to max_order).
  void add_product(int i, int j);

  std::string description() const;
};

// Family spec file: `group <path>` lines (relative to the file), optional
// `close-under-quotients`, optional `max-order N`, `#` comments.
TestFamily load_family(const std::string& path);

// { a : f(a) = g(a) }; requires equal sources and targets.
ElementSet equalizer(const Homomorphism& f, const Homomorphism& g);

struct Witness {
  int target_index = -1;
  size_t f_index = 0, g_index = 0;  // positions in the target's hom enumeration
  Homomorphism f, g;
};

// Caches hom enumerations per family target so repeated dominion queries on
// the same (group, family) stay cheap.
class DominionEngine {
 public:
  DominionEngine(GroupPtr group, const TestFamily& family);

  // Intersection of Eq(f,g) over all targets and all hom pairs agreeing on h.
  ElementSet overapprox(const ElementSet& h);
  // First pair (family order, then lexicographic hom pair order) agreeing on
  // h and separating `element`; nullopt when the family has no such pair.
  std::optional<Witness> witness(const ElementSet& h, int element);

  GroupPtr group() const { return group_; }
  const TestFamily& family() const { return family_; }
  const HomSearch& homs_into(int target_index);

 private:
  GroupPtr group_;
  TestFamily family_;
  std::vector<std::optional<HomSearch>> searches_;
};

ElementSet dominion_overapprox(GroupPtr group, const ElementSet& h, const TestFamily& family);
// Literal definition: materialize every hom, intersect equalizers over all
// agreeing pairs. Reference implementation for small instances.
ElementSet dominion_overapprox_reference(GroupPtr group, const ElementSet& h,
                                         const TestFamily& family);
std::optional<Witness> find_witness(GroupPtr group, const ElementSet& h, const TestFamily& family,
                                    int element);

struct ClosureReport {
  bool extensive_ok = true;
  bool monotone_ok = true;
  bool idempotent_ok = true;
  std::vector<std::string> violations;
  std::vector<std::pair<ElementSet, ElementSet>> sample_doms;  // (sample, dom(sample))

  bool all_ok() const { return extensive_ok && monotone_ok && idempotent_ok; }
};

// Extensive / monotone / idempotent checks of H -> dom(H) over the samples.
ClosureReport closure_checks(GroupPtr group, const TestFamily& family,
                             const std::vector<ElementSet>& samples);

enum class ElementStatus { in_subgroup, certified, retained, excluded };

struct DominionReport {
  GroupPtr group;
  ElementSet subgroup;
  std::string family_description;
  ElementSet overapprox;
  std::vector<ElementStatus> status;            // per element
  std::vector<std::optional<Witness>> witness;  // set for excluded elements
  std::vector<int> certified;                   // element indices holding certificates
};

// Per-element classification relative to the family. Elements inside the
// over-approximation are never promoted: without a certificate they are only
// "retained".
DominionReport dominion_report(GroupPtr group, const ElementSet& h, const TestFamily& family,
                               const std::vector<int>& certified = {});

const char* to_string(ElementStatus s);

}  // namespace domkit
