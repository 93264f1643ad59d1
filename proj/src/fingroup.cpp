#include "domkit/fingroup.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace domkit {

void Presentation::check() const {
  if (gen_count < 1) throw group_error("presentation needs at least one generator");
  if (gen_names.size() != static_cast<size_t>(gen_count)) {
    throw group_error("presentation: generator name list does not match gen_count");
  }
  std::set<std::string> declared(gen_names.begin(), gen_names.end());
  for (const Word& r : relators) {
    for (const auto& syl : r.syllables()) {
      if (!declared.count(syl.gen.name)) {
        throw group_error("presentation: relator uses undeclared generator '" + syl.gen.name + "'");
      }
    }
  }
}

GroupPtr FiniteGroup::make(std::vector<int> table, std::vector<std::string> names,
                           std::vector<int> generators,
                           std::optional<Presentation> presentation) {
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  const size_t sz = table.size();
  int n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(sz))));
  if (n < 1 || static_cast<size_t>(n) * n != sz) {
    throw group_error("table is not square");
  }
  for (size_t i = 0; i < sz; ++i) {
    if (table[i] < 0 || table[i] >= n) {
      throw group_error("table entry out of range at position " + std::to_string(i));
    }
  }
  g->n_ = n;
  g->table_ = std::move(table);
  for (int a = 0; a < n; ++a) {
    if (g->op(a, 0) != a || g->op(0, a) != a) {
      throw group_error("identity axiom violated: index 0 is not a two-sided identity at element " +
                        std::to_string(a));
    }
  }
  g->inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (g->op(a, b) == 0 && g->op(b, a) == 0) {
        g->inverse_[a] = b;
        break;
      }
    }
    if (g->inverse_[a] < 0) {
      throw group_error("missing two-sided inverse for element " + std::to_string(a));
    }
  }
  if (names.empty()) {
    names.reserve(n);
    for (int a = 0; a < n; ++a) names.push_back("g" + std::to_string(a));
  }
  if (names.size() != static_cast<size_t>(n)) {
    throw group_error("name list does not match group order");
  }
  g->names_ = std::move(names);
  for (int gen : generators) {
    if (gen < 0 || gen >= n) throw group_error("generator index out of range");
  }
  g->generators_ = std::move(generators);
  if (presentation) {
    presentation->check();
  }
  g->presentation_ = std::move(presentation);
  return g;
}

GroupPtr validate_group(std::vector<int> table, std::vector<std::string> names,
                        std::vector<int> generators, std::optional<Presentation> presentation) {
  GroupPtr g = FiniteGroup::make(std::move(table), std::move(names), std::move(generators),
                                 std::move(presentation));
  const int n = g->order();
  // Associativity scan; reports the lexicographically first violation.
  const long long total = static_cast<long long>(n) * n * n;
  long long bad = total;  // sentinel: no violation found
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(min : bad) if (total > 100000)
#endif
  for (long long t = 0; t < total; ++t) {
    if (t > bad) continue;
    int a = static_cast<int>(t / (static_cast<long long>(n) * n));
    int b = static_cast<int>((t / n) % n);
    int c = static_cast<int>(t % n);
    if (g->op(g->op(a, b), c) != g->op(a, g->op(b, c))) {
      if (t < bad) bad = t;
    }
  }
  if (bad < total) {
    int a = static_cast<int>(bad / (static_cast<long long>(n) * n));
    int b = static_cast<int>((bad / n) % n);
    int c = static_cast<int>(bad % n);
    throw group_error("associativity violated at (" + std::to_string(a) + "," + std::to_string(b) +
                      "," + std::to_string(c) + ")");
  }
  return g;
}

int FiniteGroup::pow(int a, long long k) const {
  int base = k < 0 ? inv(a) : a;
  unsigned long long e = k < 0 ? -static_cast<unsigned long long>(k) : static_cast<unsigned long long>(k);
  int acc = 0;
  while (e > 0) {
    if (e & 1) acc = op(acc, base);
    e >>= 1;
    if (e > 0) base = op(base, base);
  }
  return acc;
}

long long FiniteGroup::element_order(int a) const {
  int acc = a;
  for (long long k = 1; k <= n_; ++k) {
    if (acc == 0) return k;
    acc = op(acc, a);
  }
  throw group_error("element order exceeds group order");  // unreachable on valid tables
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n_; ++a) {
    for (int b = a + 1; b < n_; ++b) {
      if (op(a, b) != op(b, a)) return false;
    }
  }
  return true;
}

bool contains(const ElementSet& s, int a) {
  return std::binary_search(s.begin(), s.end(), a);
}

bool is_subgroup(const FiniteGroup& g, const ElementSet& s) {
  if (s.empty() || !contains(s, 0)) return false;
  for (int a : s) {
    if (a < 0 || a >= g.order()) return false;
    if (!contains(s, g.inv(a))) return false;
    for (int b : s) {
      if (!contains(s, g.op(a, b))) return false;
    }
  }
  return true;
}

std::optional<std::pair<int, int>> normality_violation(const FiniteGroup& g, const ElementSet& s) {
  for (int a : s) {
    for (int c = 0; c < g.order(); ++c) {
      if (!contains(s, g.conj(a, c))) return std::make_pair(a, c);
    }
  }
  return std::nullopt;
}

ElementSet generated_subgroup(const FiniteGroup& g, const ElementSet& seeds) {
  std::vector<bool> in(g.order(), false);
  in[0] = true;
  std::vector<int> frontier = {0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int a : frontier) {
      for (int s : seeds) {
        int b = g.op(a, s);
        if (!in[b]) {
          in[b] = true;
          next.push_back(b);
        }
      }
    }
    frontier = std::move(next);
  }
  ElementSet out;
  for (int a = 0; a < g.order(); ++a) {
    if (in[a]) out.push_back(a);
  }
  return out;
}

ElementSet commutator_subgroup(const FiniteGroup& g, const ElementSet& a, const ElementSet& b) {
  std::set<int> comms;
  for (int x : a) {
    for (int y : b) comms.insert(g.comm(x, y));
  }
  return generated_subgroup(g, ElementSet(comms.begin(), comms.end()));
}

ElementSet center(const FiniteGroup& g) {
  ElementSet out;
  for (int a = 0; a < g.order(); ++a) {
    bool central = true;
    for (int b = 0; b < g.order() && central; ++b) {
      central = g.op(a, b) == g.op(b, a);
    }
    if (central) out.push_back(a);
  }
  return out;
}

ElementSet normal_closure(const FiniteGroup& g, const ElementSet& seeds) {
  std::set<int> conj_closed;
  for (int s : seeds) {
    for (int c = 0; c < g.order(); ++c) conj_closed.insert(g.conj(s, c));
  }
  // The subgroup generated by a conjugation-closed set is normal.
  return generated_subgroup(g, ElementSet(conj_closed.begin(), conj_closed.end()));
}

ElementSet image_set(const ElementSet& s, const std::vector<int>& images) {
  std::set<int> out;
  for (int a : s) out.insert(images[a]);
  return {out.begin(), out.end()};
}

DerivedSeries derived_series(const FiniteGroup& g) {
  DerivedSeries ds;
  ElementSet cur(g.order());
  for (int a = 0; a < g.order(); ++a) cur[a] = a;
  ds.layers.push_back(cur);
  while (true) {
    ElementSet next = commutator_subgroup(g, ds.layers.back(), ds.layers.back());
    if (next == ds.layers.back()) break;
    ds.layers.push_back(next);
    if (next.size() == 1) break;
  }
  ds.solvable = ds.layers.back().size() == 1;
  ds.length = ds.solvable ? static_cast<int>(ds.layers.size()) - 1 : 0;
  return ds;
}

bool Homomorphism::is_valid() const {
  if (!source || !target) return false;
  if (images.size() != static_cast<size_t>(source->order())) return false;
  if (images[0] != 0) return false;
  for (int a = 0; a < source->order(); ++a) {
    for (int b = 0; b < source->order(); ++b) {
      if (images[source->op(a, b)] != target->op(images[a], images[b])) return false;
    }
  }
  return true;
}

namespace {

// Greedy generating sequence for the subgroup `sub` (which must be closed):
// repeatedly add the member that enlarges the generated subgroup the most.
std::vector<int> greedy_generators_of(const FiniteGroup& g, const ElementSet& sub) {
  std::vector<int> gens;
  ElementSet cur = {0};
  while (cur.size() < sub.size()) {
    int best = -1;
    size_t best_size = cur.size();
    for (int cand : sub) {
      if (contains(cur, cand)) continue;
      ElementSet seeds = cur;
      seeds.push_back(cand);
      std::sort(seeds.begin(), seeds.end());
      size_t sz = generated_subgroup(g, seeds).size();
      if (sz > best_size) {
        best_size = sz;
        best = cand;
      }
    }
    gens.push_back(best);
    ElementSet seeds = cur;
    seeds.push_back(best);
    std::sort(seeds.begin(), seeds.end());
    cur = generated_subgroup(g, seeds);
  }
  return gens;
}

}  // namespace

std::vector<int> greedy_generating_set(const FiniteGroup& g) {
  ElementSet all(g.order());
  for (int a = 0; a < g.order(); ++a) all[a] = a;
  return greedy_generators_of(g, all);
}

std::vector<int> subgroup_generators(const FiniteGroup& g, const ElementSet& sub) {
  return greedy_generators_of(g, sub);
}

QuotientResult quotient(GroupPtr gp, const ElementSet& nset) {
  const FiniteGroup& g = *gp;
  if (!is_subgroup(g, nset)) {
    throw group_error("quotient: the given set is not a subgroup");
  }
  if (auto bad = normality_violation(g, nset)) {
    throw group_error("quotient: not normal: conjugate of " + g.name(bad->first) + " by " +
                      g.name(bad->second) + " leaves the subgroup");
  }
  const int n = g.order();
  std::vector<int> rep(n, -1);  // canonical (minimal) member of each coset
  for (int a = 0; a < n; ++a) {
    if (rep[a] >= 0) continue;
    int least = a;  // smaller members were already visited
    for (int m : nset) rep[g.op(a, m)] = least;
  }
  std::vector<int> reps;
  for (int a = 0; a < n; ++a) {
    if (rep[a] == a) reps.push_back(a);
  }
  const int q = static_cast<int>(reps.size());
  std::vector<int> coset_index(n);
  for (int i = 0; i < q; ++i) coset_index[reps[i]] = i;
  for (int a = 0; a < n; ++a) coset_index[a] = coset_index[rep[a]];

  std::vector<int> table(static_cast<size_t>(q) * q);
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      table[static_cast<size_t>(i) * q + j] = coset_index[g.op(reps[i], reps[j])];
    }
  }
  std::vector<std::string> names;
  names.reserve(q);
  for (int r : reps) names.push_back("[" + g.name(r) + "]");

  std::vector<int> gens;
  for (int ge : g.generators()) gens.push_back(coset_index[ge]);

  // A presentation of G/N: G's relators plus spanning-tree words for a
  // generating set of N. Keeps the presentation-based hom route available
  // for quotients of presented groups.
  std::optional<Presentation> pres;
  if (g.presentation() && !g.generators().empty() &&
      g.generators().size() == static_cast<size_t>(g.presentation()->gen_count)) {
    const Presentation& base = *g.presentation();
    const int k = base.gen_count;
    std::vector<int> parent(n, -1), via(n, -1);
    std::vector<int> order_bfs;
    parent[0] = 0;
    order_bfs.push_back(0);
    for (size_t head = 0; head < order_bfs.size(); ++head) {
      int a = order_bfs[head];
      for (int s = 0; s < k; ++s) {
        int b = g.op(a, g.generators()[s]);
        if (parent[b] < 0) {
          parent[b] = a;
          via[b] = s;
          order_bfs.push_back(b);
        }
      }
    }
    auto tree_word = [&](int a) {
      std::vector<Syllable> syls;
      while (a != 0) {
        syls.push_back({GeneratorId(base.gen_names[via[a]]), 1});
        a = parent[a];
      }
      std::reverse(syls.begin(), syls.end());
      return Word::reduce(syls);
    };
    Presentation p = base;
    for (int ngen : greedy_generators_of(g, nset)) {
      p.relators.push_back(tree_word(ngen));
    }
    p.params_tag.reset();
    pres = std::move(p);
  }

  GroupPtr qg = FiniteGroup::make(std::move(table), std::move(names), std::move(gens),
                                  std::move(pres));
  Homomorphism proj{gp, qg, std::move(coset_index)};
  return {qg, std::move(proj)};
}

GroupPtr direct_product(GroupPtr gp, GroupPtr hp) {
  const FiniteGroup& g = *gp;
  const FiniteGroup& h = *hp;
  long long n = static_cast<long long>(g.order()) * h.order();
  if (n > 4096) throw group_error("direct product too large");
  const int gn = g.order(), hn = h.order(), qn = static_cast<int>(n);
  std::vector<int> table(static_cast<size_t>(qn) * qn);
  for (int a = 0; a < qn; ++a) {
    for (int b = 0; b < qn; ++b) {
      int ga = a / hn, ha = a % hn, gb = b / hn, hb = b % hn;
      table[static_cast<size_t>(a) * qn + b] = g.op(ga, gb) * hn + h.op(ha, hb);
    }
  }
  std::vector<std::string> names;
  names.reserve(qn);
  for (int a = 0; a < qn; ++a) {
    names.push_back("(" + g.name(a / hn) + "," + h.name(a % hn) + ")");
  }
  return FiniteGroup::make(std::move(table), std::move(names));
}

GroupPtr make_cyclic(int n) {
  if (n < 1) throw group_error("cyclic group order must be positive");
  std::vector<int> table(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) table[static_cast<size_t>(a) * n + b] = (a + b) % n;
  }
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) names.push_back("r" + std::to_string(a));
  std::vector<int> gens;
  if (n > 1) gens.push_back(1);
  return FiniteGroup::make(std::move(table), std::move(names), std::move(gens));
}

std::vector<ElementSet> conjugacy_classes(const FiniteGroup& g) {
  std::vector<bool> seen(g.order(), false);
  std::vector<ElementSet> classes;
  for (int a = 0; a < g.order(); ++a) {
    if (seen[a]) continue;
    std::set<int> cls;
    for (int c = 0; c < g.order(); ++c) cls.insert(g.conj(a, c));
    for (int m : cls) seen[m] = true;
    classes.emplace_back(cls.begin(), cls.end());
  }
  return classes;
}

std::vector<ElementSet> all_subgroups(const FiniteGroup& g, int max_order) {
  if (g.order() > max_order) {
    throw group_error("all_subgroups: group order " + std::to_string(g.order()) +
                      " exceeds the cap " + std::to_string(max_order));
  }
  std::set<ElementSet> found;
  found.insert(ElementSet{0});
  std::vector<ElementSet> work = {ElementSet{0}};
  while (!work.empty()) {
    ElementSet h = std::move(work.back());
    work.pop_back();
    for (int a = 0; a < g.order(); ++a) {
      if (contains(h, a)) continue;
      ElementSet seeds = h;
      seeds.push_back(a);
      std::sort(seeds.begin(), seeds.end());
      ElementSet bigger = generated_subgroup(g, seeds);
      if (found.insert(bigger).second) work.push_back(bigger);
    }
  }
  std::vector<ElementSet> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const ElementSet& a, const ElementSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<ElementSet> normal_subgroups(const FiniteGroup& g) {
  // Seeds are conjugation-closed, so every generated subgroup here is normal;
  // joins of normal subgroups are normal, and every normal subgroup is the
  // join of the closures of the classes it contains.
  std::map<ElementSet, std::vector<int>> found;  // subgroup -> small generating set
  found[{0}] = {};
  std::vector<ElementSet> work;
  for (const ElementSet& cls : conjugacy_classes(g)) {
    ElementSet n = generated_subgroup(g, cls);
    if (!found.count(n)) {
      found[n] = greedy_generators_of(g, n);
      work.push_back(n);
    }
  }
  while (!work.empty()) {
    ElementSet n = std::move(work.back());
    work.pop_back();
    std::vector<int> ngens = found[n];
    std::vector<std::pair<ElementSet, std::vector<int>>> snapshot(found.begin(), found.end());
    for (const auto& [m, mgens] : snapshot) {
      ElementSet seeds = ngens;
      seeds.insert(seeds.end(), mgens.begin(), mgens.end());
      std::sort(seeds.begin(), seeds.end());
      seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
      ElementSet join = generated_subgroup(g, seeds);
      if (!found.count(join)) {
        found[join] = greedy_generators_of(g, join);
        work.push_back(join);
      }
    }
  }
  std::vector<ElementSet> out;
  out.reserve(found.size());
  for (const auto& [s, gens] : found) out.push_back(s);
  std::sort(out.begin(), out.end(), [](const ElementSet& a, const ElementSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

void HomSearch::extend(size_t idx, std::vector<int>& out) const {
  const int n = source->order();
  out.assign(n, 0);
  const size_t k = gen_elements.size();
  const int* t = tuples.data() + idx * k;
  for (int a : tree_order) {
    if (a == 0) continue;
    out[a] = target->op(out[tree_parent[a]], t[tree_via[a]]);
  }
}

Homomorphism HomSearch::materialize(size_t idx) const {
  std::vector<int> images;
  extend(idx, images);
  return {source, target, std::move(images)};
}

namespace {

void build_tree(HomSearch& hs) {
  const FiniteGroup& g = *hs.source;
  const int n = g.order();
  hs.tree_parent.assign(n, -1);
  hs.tree_via.assign(n, -1);
  hs.tree_order.clear();
  hs.tree_parent[0] = 0;
  hs.tree_order.push_back(0);
  for (size_t head = 0; head < hs.tree_order.size(); ++head) {
    int a = hs.tree_order[head];
    for (size_t s = 0; s < hs.gen_elements.size(); ++s) {
      int b = g.op(a, hs.gen_elements[s]);
      if (hs.tree_parent[b] < 0) {
        hs.tree_parent[b] = a;
        hs.tree_via[b] = static_cast<int>(s);
        hs.tree_order.push_back(b);
      }
    }
  }
  if (hs.tree_order.size() != static_cast<size_t>(n)) {
    throw group_error("hom search: generating set does not generate the group");
  }
}

long long tuple_count_guard(int target_order, size_t k) {
  long long total = 1;
  for (size_t i = 0; i < k; ++i) {
    if (total > 200000000 / std::max(target_order, 1)) {
      throw group_error("hom enumeration too large");
    }
    total *= target_order;
  }
  if (total > 200000000) throw group_error("hom enumeration too large");
  return total;
}

void decode_tuple(long long idx, int base, size_t k, int* out) {
  for (size_t s = k; s-- > 0;) {
    out[s] = static_cast<int>(idx % base);
    idx /= base;
  }
}

void compact_accepted(HomSearch& hs, const std::vector<unsigned char>& accepted, size_t k,
                      long long total, int target_order) {
  for (long long t = 0; t < total; ++t) {
    if (!accepted[t]) continue;
    size_t at = hs.tuples.size();
    hs.tuples.resize(at + k);
    decode_tuple(t, target_order, k, hs.tuples.data() + at);
  }
}

}  // namespace

HomSearch hom_search_table(GroupPtr source, GroupPtr target) {
  HomSearch hs;
  hs.source = source;
  hs.target = target;
  hs.used_presentation = false;
  hs.gen_elements = greedy_generating_set(*source);
  build_tree(hs);
  const size_t k = hs.gen_elements.size();
  const int cn = target->order();
  const int n = source->order();
  if (k == 0) {
    // Trivial source: exactly one homomorphism. count() special-cases k == 0.
    hs.tuples.assign(1, 0);
    return hs;
  }
  long long total = tuple_count_guard(cn, k);
  std::vector<unsigned char> accepted(total, 0);
#ifdef _OPENMP
#pragma omp parallel if (total * n > 100000)
#endif
  {
    std::vector<int> tup(k);
    std::vector<int> img;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 64)
#endif
    for (long long t = 0; t < total; ++t) {
      decode_tuple(t, cn, k, tup.data());
      // Extend over the spanning tree, then check compatibility with
      // right-multiplication by each generator; by induction on tree words
      // that implies the full homomorphism property.
      img.assign(n, 0);
      for (int a : hs.tree_order) {
        if (a == 0) continue;
        img[a] = target->op(img[hs.tree_parent[a]], tup[hs.tree_via[a]]);
      }
      bool ok = true;
      for (int a = 0; a < n && ok; ++a) {
        for (size_t s = 0; s < k; ++s) {
          if (img[source->op(a, hs.gen_elements[s])] != target->op(img[a], tup[s])) {
            ok = false;
            break;
          }
        }
      }
      accepted[t] = ok ? 1 : 0;
    }
  }
  compact_accepted(hs, accepted, k, total, cn);
  return hs;
}

HomSearch hom_search_presentation(GroupPtr source, GroupPtr target) {
  if (!source->presentation()) {
    throw group_error("hom search: source has no presentation");
  }
  const Presentation& pres = *source->presentation();
  if (source->generators().size() != static_cast<size_t>(pres.gen_count)) {
    throw group_error("hom search: designated generators do not match the presentation");
  }
  HomSearch hs;
  hs.source = source;
  hs.target = target;
  hs.used_presentation = true;
  hs.gen_elements = source->generators();
  build_tree(hs);
  const size_t k = hs.gen_elements.size();
  const int cn = target->order();

  // Pre-resolve relator syllables to generator slots.
  std::vector<std::vector<std::pair<int, long long>>> rel;
  for (const Word& r : pres.relators) {
    std::vector<std::pair<int, long long>> syls;
    for (const auto& s : r.syllables()) {
      int slot = -1;
      for (int i = 0; i < pres.gen_count; ++i) {
        if (pres.gen_names[i] == s.gen.name) {
          slot = i;
          break;
        }
      }
      syls.emplace_back(slot, s.exp);
    }
    rel.push_back(std::move(syls));
  }

  long long total = tuple_count_guard(cn, k);
  std::vector<unsigned char> accepted(total, 0);
#ifdef _OPENMP
#pragma omp parallel if (total > 10000)
#endif
  {
    std::vector<int> tup(k);
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 256)
#endif
    for (long long t = 0; t < total; ++t) {
      decode_tuple(t, cn, k, tup.data());
      bool ok = true;
      for (const auto& r : rel) {
        int acc = 0;
        for (const auto& [slot, exp] : r) {
          acc = target->op(acc, target->pow(tup[slot], exp));
        }
        if (acc != 0) {
          ok = false;
          break;
        }
      }
      accepted[t] = ok ? 1 : 0;
    }
  }
  compact_accepted(hs, accepted, k, total, cn);
  return hs;
}

HomSearch hom_search(GroupPtr source, GroupPtr target) {
  if (source->presentation() &&
      source->generators().size() == static_cast<size_t>(source->presentation()->gen_count)) {
    return hom_search_presentation(source, target);
  }
  return hom_search_table(source, target);
}

std::vector<Homomorphism> all_homs(GroupPtr source, GroupPtr target) {
  HomSearch hs = hom_search(source, target);
  std::vector<Homomorphism> out;
  out.reserve(hs.count());
  for (size_t i = 0; i < hs.count(); ++i) out.push_back(hs.materialize(i));
  return out;
}

int eval_word(const FiniteGroup& g, const Word& w, const std::map<GeneratorId, int>& assignment) {
  int acc = 0;
  for (const auto& s : w.syllables()) {
    auto it = assignment.find(s.gen);
    if (it == assignment.end()) {
      throw group_error("eval_word: no assignment for '" + s.gen.name + "'");
    }
    acc = g.op(acc, g.pow(it->second, s.exp));
  }
  return acc;
}

namespace {

struct CompiledWord {
  std::vector<std::pair<int, long long>> syls;  // (variable slot, exponent)
};

CompiledWord compile_word(const Word& w, const std::vector<std::string>& vars) {
  CompiledWord cw;
  for (const auto& s : w.syllables()) {
    int slot = static_cast<int>(
        std::lower_bound(vars.begin(), vars.end(), s.gen.name) - vars.begin());
    cw.syls.emplace_back(slot, s.exp);
  }
  return cw;
}

int eval_compiled(const FiniteGroup& g, const CompiledWord& cw, const int* assign) {
  int acc = 0;
  for (const auto& [slot, exp] : cw.syls) {
    acc = g.op(acc, g.pow(assign[slot], exp));
  }
  return acc;
}

IdentityCheck check_identity_impl(const FiniteGroup& g, const Word& lhs, const Word& rhs,
                                  bool parallel) {
  IdentityCheck res;
  std::set<std::string> vars_set;
  for (const auto& s : lhs.syllables()) vars_set.insert(s.gen.name);
  for (const auto& s : rhs.syllables()) vars_set.insert(s.gen.name);
  res.variables.assign(vars_set.begin(), vars_set.end());
  const size_t k = res.variables.size();
  if (k > 4) throw group_error("check_identity: more than 4 variables");
  long long total = 1;
  for (size_t i = 0; i < k; ++i) {
    total *= g.order();
    if (total > 10000000) throw group_error("check_identity: more than 10^7 assignments");
  }
  res.assignments = total;
  CompiledWord cl = compile_word(lhs, res.variables);
  CompiledWord cr = compile_word(rhs, res.variables);

  long long bad = total;  // sentinel: no violation
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(min : bad) if (parallel && total > 4096)
#endif
  for (long long t = 0; t < total; ++t) {
    if (t > bad) continue;
    int assign[4] = {0, 0, 0, 0};
    long long idx = t;
    for (size_t s = k; s-- > 0;) {
      assign[s] = static_cast<int>(idx % g.order());
      idx /= g.order();
    }
    if (eval_compiled(g, cl, assign) != eval_compiled(g, cr, assign)) {
      if (t < bad) bad = t;
    }
  }
  if (bad < total) {
    std::vector<int> assign(k);
    long long idx = bad;
    for (size_t s = k; s-- > 0;) {
      assign[s] = static_cast<int>(idx % g.order());
      idx /= g.order();
    }
    res.first_violation = std::move(assign);
    res.holds = false;
  } else {
    res.holds = true;
  }
  return res;
}

}  // namespace

IdentityCheck check_identity(const FiniteGroup& g, const Word& lhs, const Word& rhs) {
  return check_identity_impl(g, lhs, rhs, true);
}

IdentityCheck check_identity_serial(const FiniteGroup& g, const Word& lhs, const Word& rhs) {
  return check_identity_impl(g, lhs, rhs, false);
}

}  // namespace domkit
