#include "domkit/dominion.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "domkit/group_io.hpp"

namespace domkit {

TestFamily TestFamily::of(std::vector<GroupPtr> groups, const std::string& provenance) {
  TestFamily fam;
  for (auto& g : groups) fam.targets.push_back({std::move(g), provenance});
  return fam;
}

void TestFamily::close_under_quotients() {
  std::set<std::pair<int, std::vector<int>>> seen;
  for (const auto& t : targets) seen.insert({t.group->order(), t.group->table()});
  const size_t original = targets.size();
  for (size_t i = 0; i < original; ++i) {
    GroupPtr m = targets[i].group;
    for (const ElementSet& n : normal_subgroups(*m)) {
      if (m->order() / static_cast<int>(n.size()) > max_order) continue;
      GroupPtr q = quotient(m, n).group;
      if (seen.insert({q->order(), q->table()}).second) {
        targets.push_back({q, "quotient of target " + std::to_string(i) + " by kernel of order " +
                                  std::to_string(n.size())});
      }
    }
  }
  closure_flag = true;
}

void TestFamily::add_product(int i, int j) {
  GroupPtr a = targets.at(i).group, b = targets.at(j).group;
  if (static_cast<long long>(a->order()) * b->order() > max_order) {
    throw dominion_error("family product exceeds max-order");
  }
  targets.push_back({direct_product(a, b), "product of targets " + std::to_string(i) + " and " +
                                               std::to_string(j)});
}

std::string TestFamily::description() const {
  std::ostringstream os;
  os << targets.size() << " target(s), orders";
  for (const auto& t : targets) os << " " << t.group->order();
  if (closure_flag) os << ", quotient-closed";
  return os.str();
}

TestFamily load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open family file: " + path);
  std::filesystem::path base = std::filesystem::path(path).parent_path();
  TestFamily fam;
  bool close = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream is(line);
    std::string keyword;
    if (!(is >> keyword)) continue;
    if (keyword == "group") {
      std::string rel;
      if (!(is >> rel)) throw parse_error("group needs a path", line_no, 1);
      std::string full = (base / rel).string();
      fam.targets.push_back({load_cayley(full), "file:" + rel});
    } else if (keyword == "close-under-quotients") {
      close = true;
    } else if (keyword == "max-order") {
      int v = 0;
      if (!(is >> v) || v < 1) throw parse_error("max-order needs a positive integer", line_no, 1);
      fam.max_order = v;
    } else {
      throw parse_error("unknown family keyword '" + keyword + "'", line_no, 1);
    }
  }
  if (fam.targets.empty()) throw error("family file declares no groups: " + path);
  if (close) fam.close_under_quotients();
  return fam;
}

ElementSet equalizer(const Homomorphism& f, const Homomorphism& g) {
  if (f.source != g.source || f.target != g.target) {
    throw dominion_error("equalizer: homomorphisms do not share source and target");
  }
  ElementSet out;
  for (int a = 0; a < f.source->order(); ++a) {
    if (f.images[a] == g.images[a]) out.push_back(a);
  }
  return out;
}

namespace {

// Right-multiplication path from the identity to `a` in the spanning tree,
// as generator slot indices. Image of `a` under a tuple is the fold of the
// tuple entries along the path.
std::vector<int> tree_path(const HomSearch& hs, int a) {
  std::vector<int> path;
  while (a != 0) {
    path.push_back(hs.tree_via[a]);
    a = hs.tree_parent[a];
  }
  std::reverse(path.begin(), path.end());
  return path;
}

int eval_path(const FiniteGroup& target, const std::vector<int>& path, const int* tuple) {
  int acc = 0;
  for (int slot : path) acc = target.op(acc, tuple[slot]);
  return acc;
}

struct Buckets {
  std::vector<std::vector<int>> members;  // hom indices, ascending within each bucket
};

Buckets bucket_by_restriction(const HomSearch& hs, const std::vector<int>& hgens) {
  Buckets b;
  const size_t m = hs.count();
  const size_t k = hs.gen_elements.size();
  std::vector<std::vector<int>> paths;
  for (int hg : hgens) paths.push_back(tree_path(hs, hg));
  std::map<std::vector<int>, int> index;
  std::vector<int> key(paths.size());
  for (size_t i = 0; i < m; ++i) {
    const int* tuple = hs.tuples.data() + i * k;
    for (size_t p = 0; p < paths.size(); ++p) {
      key[p] = eval_path(*hs.target, paths[p], tuple);
    }
    auto [it, fresh] = index.try_emplace(key, static_cast<int>(b.members.size()));
    if (fresh) b.members.emplace_back();
    b.members[it->second].push_back(static_cast<int>(i));
  }
  return b;
}

}  // namespace

DominionEngine::DominionEngine(GroupPtr group, const TestFamily& family)
    : group_(std::move(group)), family_(family) {
  if (family_.targets.empty()) throw dominion_error("empty test family");
  searches_.resize(family_.targets.size());
}

const HomSearch& DominionEngine::homs_into(int target_index) {
  auto& slot = searches_[target_index];
  if (!slot) slot = hom_search(group_, family_.targets[target_index].group);
  return *slot;
}

ElementSet DominionEngine::overapprox(const ElementSet& h) {
  if (!is_subgroup(*group_, h)) {
    throw dominion_error("dominion: the given set is not a subgroup");
  }
  const int n = group_->order();
  std::vector<int> hgens = subgroup_generators(*group_, h);
  std::vector<char> in(n, 1);
  for (size_t ti = 0; ti < family_.targets.size(); ++ti) {
    const HomSearch& hs = homs_into(static_cast<int>(ti));
    Buckets buckets = bucket_by_restriction(hs, hgens);
    const long long work = static_cast<long long>(hs.count()) * n;
    // One pass per bucket against its first member; an element survives a
    // bucket exactly when every member sends it to the same value. Threads
    // keep local masks and merge with AND, so the result is schedule-free.
#ifdef _OPENMP
#pragma omp parallel if (work > 2000000)
#endif
    {
      std::vector<char> local(n, 1);
      std::vector<int> ref, ext;
#ifdef _OPENMP
#pragma omp for schedule(dynamic) nowait
#endif
      for (size_t bi = 0; bi < buckets.members.size(); ++bi) {
        const auto& bucket = buckets.members[bi];
        if (bucket.size() < 2) continue;
        hs.extend(bucket[0], ref);
        for (size_t mi = 1; mi < bucket.size(); ++mi) {
          hs.extend(bucket[mi], ext);
          for (int a = 0; a < n; ++a) {
            if (local[a] && ext[a] != ref[a]) local[a] = 0;
          }
        }
      }
#ifdef _OPENMP
#pragma omp critical
#endif
      {
        for (int a = 0; a < n; ++a) {
          if (!local[a]) in[a] = 0;
        }
      }
    }
  }
  ElementSet out;
  for (int a = 0; a < n; ++a) {
    if (in[a]) out.push_back(a);
  }
  return out;
}

std::optional<Witness> DominionEngine::witness(const ElementSet& h, int element) {
  if (!is_subgroup(*group_, h)) {
    throw dominion_error("dominion: the given set is not a subgroup");
  }
  std::vector<int> hgens = subgroup_generators(*group_, h);
  for (size_t ti = 0; ti < family_.targets.size(); ++ti) {
    const HomSearch& hs = homs_into(static_cast<int>(ti));
    const size_t k = hs.gen_elements.size();
    Buckets buckets = bucket_by_restriction(hs, hgens);
    std::vector<int> epath = tree_path(hs, element);
    const size_t m = hs.count();
    std::vector<int> val(m);
    for (size_t i = 0; i < m; ++i) {
      val[i] = eval_path(*hs.target, epath, hs.tuples.data() + i * k);
    }
    // Lexicographically first separating pair: within each bucket that is the
    // first member together with the first later member of different value.
    std::optional<std::pair<size_t, size_t>> best;
    for (const auto& bucket : buckets.members) {
      for (size_t mi = 1; mi < bucket.size(); ++mi) {
        if (val[bucket[mi]] != val[bucket[0]]) {
          std::pair<size_t, size_t> cand{static_cast<size_t>(bucket[0]),
                                         static_cast<size_t>(bucket[mi])};
          if (!best || cand < *best) best = cand;
          break;
        }
      }
    }
    if (best) {
      Witness w;
      w.target_index = static_cast<int>(ti);
      w.f_index = best->first;
      w.g_index = best->second;
      w.f = hs.materialize(best->first);
      w.g = hs.materialize(best->second);
      return w;
    }
  }
  return std::nullopt;
}

ElementSet dominion_overapprox(GroupPtr group, const ElementSet& h, const TestFamily& family) {
  DominionEngine engine(std::move(group), family);
  return engine.overapprox(h);
}

ElementSet dominion_overapprox_reference(GroupPtr group, const ElementSet& h,
                                         const TestFamily& family) {
  if (!is_subgroup(*group, h)) {
    throw dominion_error("dominion: the given set is not a subgroup");
  }
  ElementSet acc(group->order());
  for (int a = 0; a < group->order(); ++a) acc[a] = a;
  for (const auto& t : family.targets) {
    std::vector<Homomorphism> homs = all_homs(group, t.group);
    for (size_t i = 0; i < homs.size(); ++i) {
      for (size_t j = i; j < homs.size(); ++j) {
        bool agree = true;
        for (int a : h) {
          if (homs[i].images[a] != homs[j].images[a]) {
            agree = false;
            break;
          }
        }
        if (!agree) continue;
        ElementSet eq = equalizer(homs[i], homs[j]);
        ElementSet next;
        std::set_intersection(acc.begin(), acc.end(), eq.begin(), eq.end(),
                              std::back_inserter(next));
        acc = std::move(next);
      }
    }
  }
  return acc;
}

std::optional<Witness> find_witness(GroupPtr group, const ElementSet& h, const TestFamily& family,
                                    int element) {
  DominionEngine engine(std::move(group), family);
  return engine.witness(h, element);
}

ClosureReport closure_checks(GroupPtr group, const TestFamily& family,
                             const std::vector<ElementSet>& samples) {
  DominionEngine engine(group, family);
  ClosureReport rep;
  for (const ElementSet& s : samples) {
    rep.sample_doms.emplace_back(s, engine.overapprox(s));
  }
  auto subset = [](const ElementSet& a, const ElementSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  auto set_name = [&](const ElementSet& s) {
    std::string t = "{";
    for (size_t i = 0; i < s.size() && i < 8; ++i) t += (i ? "," : "") + std::to_string(s[i]);
    if (s.size() > 8) t += ",...";
    return t + "} (size " + std::to_string(s.size()) + ")";
  };
  for (const auto& [s, dom] : rep.sample_doms) {
    if (!subset(s, dom)) {
      rep.extensive_ok = false;
      rep.violations.push_back("not extensive on " + set_name(s));
    }
  }
  for (size_t i = 0; i < rep.sample_doms.size(); ++i) {
    for (size_t j = 0; j < rep.sample_doms.size(); ++j) {
      if (i == j) continue;
      const auto& [h1, d1] = rep.sample_doms[i];
      const auto& [h2, d2] = rep.sample_doms[j];
      if (subset(h1, h2) && !subset(d1, d2)) {
        rep.monotone_ok = false;
        rep.violations.push_back("not monotone on " + set_name(h1) + " inside " + set_name(h2));
      }
    }
  }
  for (const auto& [s, dom] : rep.sample_doms) {
    if (!is_subgroup(*group, dom)) {
      rep.idempotent_ok = false;
      rep.violations.push_back("dominion of " + set_name(s) + " is not a subgroup");
      continue;
    }
    if (engine.overapprox(dom) != dom) {
      rep.idempotent_ok = false;
      rep.violations.push_back("not idempotent on " + set_name(s));
    }
  }
  return rep;
}

DominionReport dominion_report(GroupPtr group, const ElementSet& h, const TestFamily& family,
                               const std::vector<int>& certified) {
  DominionEngine engine(group, family);
  DominionReport rep;
  rep.group = group;
  rep.subgroup = h;
  rep.family_description = family.description();
  rep.overapprox = engine.overapprox(h);
  rep.certified = certified;
  const int n = group->order();
  rep.status.resize(n);
  rep.witness.resize(n);
  for (int a = 0; a < n; ++a) {
    if (contains(h, a)) {
      rep.status[a] = ElementStatus::in_subgroup;
    } else if (contains(rep.overapprox, a)) {
      rep.status[a] = std::find(certified.begin(), certified.end(), a) != certified.end()
                          ? ElementStatus::certified
                          : ElementStatus::retained;
    } else {
      rep.status[a] = ElementStatus::excluded;
      rep.witness[a] = engine.witness(h, a);
    }
  }
  return rep;
}

const char* to_string(ElementStatus s) {
  switch (s) {
    case ElementStatus::in_subgroup: return "in_subgroup";
    case ElementStatus::certified: return "certified";
    case ElementStatus::retained: return "retained";
    case ElementStatus::excluded: return "excluded";
  }
  return "?";
}

}  // namespace domkit
