#pragma once

// Finite groups as Cayley tables: validation, subgroup machinery, quotients,
// derived series, homomorphism enumeration and exhaustive identity checking.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "domkit/word.hpp"

namespace domkit {

struct group_error : error {
  using error::error;
};

// Generators-and-relators metadata. Relator words use gen_names; the file
// format normalizes the names to g1..gk.
struct Presentation {
  int gen_count = 0;
  std::vector<std::string> gen_names;
  std::vector<Word> relators;
  std::optional<std::string> params_tag;  // nil2 params in text form, when applicable

  void check() const;  // relators only use declared generators
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Immutable once constructed. Index 0 is always the identity.
class FiniteGroup {
 public:
  int order() const { return n_; }
  int op(int a, int b) const { return table_[a * n_ + b]; }
  int inv(int a) const { return inverse_[a]; }
  int conj(int a, int b) const { return op(op(inv(b), a), b); }  // a^b
  int comm(int a, int b) const { return op(op(inv(a), inv(b)), op(a, b)); }
  int pow(int a, long long k) const;
  long long element_order(int a) const;
  bool is_abelian() const;

  const std::vector<int>& table() const { return table_; }
  const std::string& name(int a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& generators() const { return generators_; }
  const std::optional<Presentation>& presentation() const { return presentation_; }

  // Cheap construction checks only (square table, range, identity at 0,
  // two-sided inverses). Full associativity lives in validate_group.
  static GroupPtr make(std::vector<int> table, std::vector<std::string> names = {},
                       std::vector<int> generators = {},
                       std::optional<Presentation> presentation = {});

 private:
  FiniteGroup() = default;
  int n_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<std::string> names_;
  std::vector<int> generators_;
  std::optional<Presentation> presentation_;
};

// Full validation: identity axiom, inverses, associativity. Throws a
// group_error naming the violated axiom and the offending indices.
GroupPtr validate_group(std::vector<int> table, std::vector<std::string> names = {},
                        std::vector<int> generators = {},
                        std::optional<Presentation> presentation = {});

// Element sets are always sorted index sequences.
using ElementSet = std::vector<int>;

bool contains(const ElementSet& s, int a);
bool is_subgroup(const FiniteGroup& g, const ElementSet& s);
// Empty result means normal; otherwise the first (subgroup element, conjugator)
// whose conjugate escapes the set.
std::optional<std::pair<int, int>> normality_violation(const FiniteGroup& g, const ElementSet& s);

ElementSet generated_subgroup(const FiniteGroup& g, const ElementSet& seeds);
ElementSet commutator_subgroup(const FiniteGroup& g, const ElementSet& a, const ElementSet& b);
ElementSet center(const FiniteGroup& g);
ElementSet normal_closure(const FiniteGroup& g, const ElementSet& seeds);
ElementSet image_set(const ElementSet& s, const std::vector<int>& images);

struct DerivedSeries {
  std::vector<ElementSet> layers;  // G = layers[0] down to the stationary term
  bool solvable = false;
  int length = 0;  // strict steps to reach {e}; meaningful when solvable
};
DerivedSeries derived_series(const FiniteGroup& g);

struct Homomorphism {
  GroupPtr source;
  GroupPtr target;
  std::vector<int> images;

  int operator()(int a) const { return images[a]; }
  bool is_valid() const;
};

struct QuotientResult {
  GroupPtr group;
  Homomorphism projection;
};
// N must be a normal subgroup; error messages name the failing axiom or the
// failing conjugation pair.
QuotientResult quotient(GroupPtr g, const ElementSet& n);

GroupPtr direct_product(GroupPtr g, GroupPtr h);
GroupPtr make_cyclic(int n);

std::vector<ElementSet> conjugacy_classes(const FiniteGroup& g);
// Every subgroup, deterministic order (by size, then lexicographic).
// Refuses groups larger than max_order.
std::vector<ElementSet> all_subgroups(const FiniteGroup& g, int max_order = 200);
// Every normal subgroup: the join closure of the single-conjugacy-class
// normal closures. Deterministic order (by size, then lexicographic).
std::vector<ElementSet> normal_subgroups(const FiniteGroup& g);

// Deterministic small generating sequence: repeatedly add the element that
// enlarges the generated subgroup most, ties broken by lowest index.
std::vector<int> greedy_generating_set(const FiniteGroup& g);
// Same, restricted to a subgroup (the set must be closed).
std::vector<int> subgroup_generators(const FiniteGroup& g, const ElementSet& sub);

// Compact result of enumerating Hom(source, target): accepted generator-image
// tuples in lexicographic order plus the spanning tree needed to extend a
// tuple to a full image vector.
struct HomSearch {
  GroupPtr source;
  GroupPtr target;
  std::vector<int> gen_elements;  // generating sequence (source element indices)
  std::vector<int> tuples;        // flattened, gen_elements.size() per hom
  bool used_presentation = false;

  std::vector<int> tree_parent;  // spanning tree: element = parent * gen_elements[via]
  std::vector<int> tree_via;
  std::vector<int> tree_order;   // BFS order, starting at the identity

  size_t count() const { return gen_elements.empty() ? tuples.size() : tuples.size() / gen_elements.size(); }
  // Writes the full image vector of hom #idx into out (resized to source order).
  void extend(size_t idx, std::vector<int>& out) const;
  Homomorphism materialize(size_t idx) const;
};

// Both strategies produce the same set of homomorphisms (tested); the
// presentation route is used when the source carries presentation metadata
// with a matching designated generator list.
HomSearch hom_search(GroupPtr source, GroupPtr target);
HomSearch hom_search_table(GroupPtr source, GroupPtr target);          // extend + verify full table
HomSearch hom_search_presentation(GroupPtr source, GroupPtr target);   // relators only

// Complete list of homomorphisms, lexicographic in generator images.
std::vector<Homomorphism> all_homs(GroupPtr source, GroupPtr target);

struct IdentityCheck {
  bool holds = false;
  std::vector<std::string> variables;       // sorted variable names
  long long assignments = 0;                // total assignments scanned
  std::optional<std::vector<int>> first_violation;  // first violating assignment
};

// Exhaustive scan over all |G|^k assignments; refuses k > 4 or more than
// 10^7 evaluations. OpenMP-parallel; the serial variant is the reference.
IdentityCheck check_identity(const FiniteGroup& g, const Word& lhs, const Word& rhs);
IdentityCheck check_identity_serial(const FiniteGroup& g, const Word& lhs, const Word& rhs);

// Evaluates a word under an assignment of group elements to its generators.
int eval_word(const FiniteGroup& g, const Word& w,
              const std::map<GeneratorId, int>& assignment);

}  // namespace domkit
