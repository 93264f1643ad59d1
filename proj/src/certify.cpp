#include "domkit/certify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace domkit {

const char* to_string(CertKind k) {
  switch (k) {
    case CertKind::half_nontrivial: return "half_nontrivial";
    case CertKind::first_nontrivial: return "first_nontrivial";
    case CertKind::metabelian_chain: return "metabelian_chain";
  }
  return "?";
}

CertExpr CertExpr::hom_of(int hom, Word w, std::string label) {
  CertExpr e;
  e.kind = Kind::hom_of;
  e.hom = hom;
  e.word = std::move(w);
  e.label = std::move(label);
  return e;
}

CertExpr CertExpr::comm(CertExpr a, CertExpr b) {
  CertExpr e;
  e.kind = Kind::comm;
  e.kids = {std::move(a), std::move(b)};
  return e;
}

CertExpr CertExpr::pw(CertExpr a, long long n) {
  CertExpr e;
  e.kind = Kind::pw;
  e.exp = n;
  e.kids = {std::move(a)};
  return e;
}

namespace {

// Certificate expression with its hom_of words resolved to group elements.
struct RExpr {
  CertExpr::Kind kind = CertExpr::Kind::hom_of;
  int hom = 0;
  int element = 0;
  long long exp = 1;
  std::vector<RExpr> kids;

  bool operator==(const RExpr&) const = default;
};

RExpr resolve(const CertExpr& e, const FiniteGroup& g,
              const std::map<GeneratorId, int>& letters) {
  RExpr r;
  r.kind = e.kind;
  r.hom = e.hom;
  r.exp = e.exp;
  if (e.kind == CertExpr::Kind::hom_of) {
    r.element = eval_word(g, e.word, letters);
  }
  for (const CertExpr& kid : e.kids) r.kids.push_back(resolve(kid, g, letters));
  return r;
}

// Rewrites an expression into a form whose equality with another implies the
// step holds for every agreeing pair: homomorphisms commute with comm and
// pow, and the two maps of a pair coincide on subgroup elements.
RExpr normalize(const RExpr& e, const FiniteGroup& g, const ElementSet& h) {
  auto leaf = [&](int hom, int element) {
    RExpr r;
    r.kind = CertExpr::Kind::hom_of;
    r.hom = (hom == 1 && contains(h, element)) ? 0 : hom;
    r.element = element;
    return r;
  };
  if (e.kind == CertExpr::Kind::hom_of) return leaf(e.hom, e.element);
  RExpr r;
  r.kind = e.kind;
  r.exp = e.exp;
  for (const RExpr& kid : e.kids) r.kids.push_back(normalize(kid, g, h));
  if (r.kind == CertExpr::Kind::pw && r.kids[0].kind == CertExpr::Kind::hom_of) {
    return leaf(r.kids[0].hom, g.pow(r.kids[0].element, r.exp));
  }
  if (r.kind == CertExpr::Kind::comm && r.kids[0].kind == CertExpr::Kind::hom_of &&
      r.kids[1].kind == CertExpr::Kind::hom_of && r.kids[0].hom == r.kids[1].hom) {
    return leaf(r.kids[0].hom, g.comm(r.kids[0].element, r.kids[1].element));
  }
  return r;
}

int eval_expr(const RExpr& e, const FiniteGroup& target, const std::vector<int>& fimg,
              const std::vector<int>& gimg) {
  switch (e.kind) {
    case CertExpr::Kind::hom_of:
      return e.hom == 0 ? fimg[e.element] : gimg[e.element];
    case CertExpr::Kind::comm:
      return target.comm(eval_expr(e.kids[0], target, fimg, gimg),
                         eval_expr(e.kids[1], target, fimg, gimg));
    case CertExpr::Kind::pw:
      return target.pow(eval_expr(e.kids[0], target, fimg, gimg), e.exp);
  }
  return 0;
}

// Evaluation with explicit per-leaf values (fast path).
using LeafVals = std::map<std::pair<int, int>, int>;  // (hom, element) -> target value

int eval_expr_vals(const RExpr& e, const FiniteGroup& target, const LeafVals& vals) {
  switch (e.kind) {
    case CertExpr::Kind::hom_of:
      return vals.at({e.hom, e.element});
    case CertExpr::Kind::comm:
      return target.comm(eval_expr_vals(e.kids[0], target, vals),
                         eval_expr_vals(e.kids[1], target, vals));
    case CertExpr::Kind::pw:
      return target.pow(eval_expr_vals(e.kids[0], target, vals), e.exp);
  }
  return 0;
}

void collect_leaves(const RExpr& e, std::vector<std::pair<int, int>>& out) {
  if (e.kind == CertExpr::Kind::hom_of) {
    std::pair<int, int> key{e.hom, e.element};
    if (std::find(out.begin(), out.end(), key) == out.end()) out.push_back(key);
    return;
  }
  for (const RExpr& kid : e.kids) collect_leaves(kid, out);
}

// Resolved step plus the leaf analysis the fast path needs.
struct RStep {
  RExpr lhs, rhs;
  bool auto_pass = false;
  std::vector<std::pair<int, int>> leaves;            // all (hom, element) leaves
  std::vector<std::pair<int, int>> constant_leaves;   // element in H
  std::vector<std::pair<int, int>> varying_leaves;    // element outside H
};

struct RChain {
  std::vector<RStep> steps;
  std::vector<int> letter_elems;
  bool any_data_dep = false;
};

RChain resolve_chain(const Certificate& cert) {
  const FiniteGroup& g = *cert.group;
  std::map<GeneratorId, int> letters;
  for (const auto& [name, elem] : cert.letters) letters[GeneratorId(name)] = elem;
  RChain chain;
  for (const CertStep& s : cert.steps) {
    RStep r;
    r.lhs = resolve(s.lhs, g, letters);
    r.rhs = resolve(s.rhs, g, letters);
    r.auto_pass = normalize(r.lhs, g, cert.subgroup) == normalize(r.rhs, g, cert.subgroup);
    collect_leaves(r.lhs, r.leaves);
    collect_leaves(r.rhs, r.leaves);
    for (const auto& leaf : r.leaves) {
      (contains(cert.subgroup, leaf.second) ? r.constant_leaves : r.varying_leaves)
          .push_back(leaf);
    }
    if (!r.auto_pass) chain.any_data_dep = true;
    chain.steps.push_back(std::move(r));
  }
  return chain;
}

// Path from the identity to `a` in the hom-search spanning tree; images of a
// under a generator tuple fold along it.
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

// Structural key for the universality cache: the step with constant leaves
// replaced by their bucket values and varying leaves by slot numbers.
void serialize_expr(const RExpr& e, const LeafVals& consts,
                    const std::vector<std::pair<int, int>>& varying, std::string& out) {
  switch (e.kind) {
    case CertExpr::Kind::hom_of: {
      auto it = consts.find({e.hom, e.element});
      if (it != consts.end()) {
        out += "c" + std::to_string(it->second);
      } else {
        size_t slot =
            std::find(varying.begin(), varying.end(), std::make_pair(e.hom, e.element)) -
            varying.begin();
        out += "s" + std::to_string(slot);
      }
      out += ";";
      return;
    }
    case CertExpr::Kind::comm:
      out += "[";
      serialize_expr(e.kids[0], consts, varying, out);
      serialize_expr(e.kids[1], consts, varying, out);
      out += "]";
      return;
    case CertExpr::Kind::pw:
      out += "p" + std::to_string(e.exp) + "(";
      serialize_expr(e.kids[0], consts, varying, out);
      out += ")";
      return;
  }
}

std::string expr_to_text(const CertExpr& e, const std::array<std::string, 2>& symbols) {
  switch (e.kind) {
    case CertExpr::Kind::hom_of:
      return symbols[e.hom] + "(" + e.label + ")";
    case CertExpr::Kind::comm:
      return "[" + expr_to_text(e.kids[0], symbols) + ", " + expr_to_text(e.kids[1], symbols) + "]";
    case CertExpr::Kind::pw:
      return "(" + expr_to_text(e.kids[0], symbols) + ")^" + std::to_string(e.exp);
  }
  return "?";
}

}  // namespace

ReplayResult replay(const Certificate& cert, const TestFamily& family) {
  CertReplayEngine engine(cert.group, family);
  return engine.replay(cert);
}

ReplayResult replay_exact(const Certificate& cert, const TestFamily& family) {
  CertReplayEngine engine(cert.group, family);
  return engine.replay_exact(cert);
}

CertReplayEngine::CertReplayEngine(GroupPtr group, const TestFamily& family)
    : engine_(std::move(group), family) {}

const std::vector<std::vector<int>>& CertReplayEngine::buckets_for(int target_index,
                                                                   const ElementSet& subgroup) {
  auto key = std::make_pair(target_index, subgroup);
  auto it = bucket_cache_.find(key);
  if (it != bucket_cache_.end()) return it->second;

  const HomSearch& hs = engine_.homs_into(target_index);
  const FiniteGroup& g = *engine_.group();
  std::vector<int> hgens = subgroup_generators(g, subgroup);
  std::vector<std::vector<int>> paths;
  for (int hg : hgens) paths.push_back(tree_path(hs, hg));

  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> buckets;
  const size_t k = hs.gen_elements.size();
  std::vector<int> keyvals(paths.size());
  for (size_t i = 0; i < hs.count(); ++i) {
    const int* tuple = hs.tuples.data() + i * k;
    for (size_t p = 0; p < paths.size(); ++p) {
      keyvals[p] = eval_path(*hs.target, paths[p], tuple);
    }
    auto [slot, fresh] = index.try_emplace(keyvals, static_cast<int>(buckets.size()));
    if (fresh) buckets.emplace_back();
    buckets[slot->second].push_back(static_cast<int>(i));
  }
  return bucket_cache_.emplace(std::move(key), std::move(buckets)).first->second;
}

namespace {

// Exact replay of one bucket: evaluates every step for every pair f <= g in
// index order; returns the first failing (f, g, step) if any.
std::optional<ReplayFailure> exact_bucket(const RChain& chain, const HomSearch& hs,
                                          const std::vector<int>& bucket) {
  const FiniteGroup& target = *hs.target;
  std::vector<std::vector<int>> images(bucket.size());
  for (size_t i = 0; i < bucket.size(); ++i) hs.extend(bucket[i], images[i]);
  for (size_t i = 0; i < bucket.size(); ++i) {
    for (size_t j = i; j < bucket.size(); ++j) {
      for (size_t s = 0; s < chain.steps.size(); ++s) {
        const RStep& st = chain.steps[s];
        int lv = eval_expr(st.lhs, target, images[i], images[j]);
        int rv = eval_expr(st.rhs, target, images[i], images[j]);
        if (lv != rv) {
          ReplayFailure fail;
          fail.f_index = static_cast<size_t>(bucket[i]);
          fail.g_index = static_cast<size_t>(bucket[j]);
          fail.step_index = static_cast<int>(s);
          return fail;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

ReplayResult CertReplayEngine::replay_exact(const Certificate& cert) {
  RChain chain = resolve_chain(cert);
  ReplayResult res;
  res.valid = true;
  res.targets = static_cast<int>(engine_.family().targets.size());
  for (int ti = 0; ti < res.targets; ++ti) {
    const auto& buckets = buckets_for(ti, cert.subgroup);
    const HomSearch& hs = engine_.homs_into(ti);
    if (static_cast<long long>(hs.count()) * engine_.group()->order() > 30000000) {
      throw certify_error("exact replay too large; use the collapsed replay");
    }
    for (const auto& bucket : buckets) {
      long long b = static_cast<long long>(bucket.size());
      res.pairs += b * (b + 1) / 2;
      if (!res.valid) continue;  // keep counting pairs after a failure
      if (auto fail = exact_bucket(chain, hs, bucket)) {
        fail->target_index = ti;
        // the first failure within this target is the minimum over buckets
        if (!res.first_failure ||
            std::make_tuple(fail->f_index, fail->g_index, fail->step_index) <
                std::make_tuple(res.first_failure->f_index, res.first_failure->g_index,
                                res.first_failure->step_index)) {
          res.first_failure = *fail;
        }
      }
    }
    if (res.first_failure && res.valid) res.valid = false;
  }
  return res;
}

ReplayResult CertReplayEngine::replay(const Certificate& cert) {
  RChain chain = resolve_chain(cert);
  ReplayResult res;
  res.valid = true;
  res.targets = static_cast<int>(engine_.family().targets.size());

  for (int ti = 0; ti < res.targets; ++ti) {
    const auto& buckets = buckets_for(ti, cert.subgroup);
    const HomSearch& hs = engine_.homs_into(ti);
    const FiniteGroup& target = *hs.target;
    const size_t k = hs.gen_elements.size();

    // tree paths for every leaf element of a data-dependent step
    std::map<int, std::vector<int>> paths;
    if (chain.any_data_dep) {
      for (const RStep& st : chain.steps) {
        if (st.auto_pass) continue;
        for (const auto& [hom, elem] : st.leaves) {
          if (!paths.count(elem)) paths[elem] = tree_path(hs, elem);
        }
      }
    }

    std::optional<ReplayFailure> target_fail;
    for (const auto& bucket : buckets) {
      long long b = static_cast<long long>(bucket.size());
      res.pairs += b * (b + 1) / 2;
      if (!res.valid || !chain.any_data_dep) continue;

      bool bucket_suspect = false;
      for (const RStep& st : chain.steps) {
        if (st.auto_pass || bucket_suspect) continue;

        // constant leaves share one value across the bucket
        LeafVals consts;
        const int* tuple0 = hs.tuples.data() + static_cast<size_t>(bucket[0]) * k;
        for (const auto& leaf : st.constant_leaves) {
          consts[leaf] = eval_path(target, paths[leaf.second], tuple0);
        }

        bool step_ok = false;
        if (st.varying_leaves.size() <= 2) {
          // universality over all target values of the varying slots
          std::string key;
          serialize_expr(st.lhs, consts, st.varying_leaves, key);
          key += "=";
          serialize_expr(st.rhs, consts, st.varying_leaves, key);
          auto cache_key = std::make_pair(ti, key);
          auto hit = universal_cache_.find(cache_key);
          bool universal;
          if (hit != universal_cache_.end()) {
            universal = hit->second;
          } else {
            universal = true;
            const int cn = target.order();
            long long combos = 1;
            for (size_t s = 0; s < st.varying_leaves.size(); ++s) combos *= cn;
            LeafVals vals = consts;
            for (long long c = 0; c < combos && universal; ++c) {
              long long idx = c;
              for (const auto& leaf : st.varying_leaves) {
                vals[leaf] = static_cast<int>(idx % cn);
                idx /= cn;
              }
              universal = eval_expr_vals(st.lhs, target, vals) ==
                          eval_expr_vals(st.rhs, target, vals);
            }
            universal_cache_.emplace(std::move(cache_key), universal);
          }
          step_ok = universal;
        }

        if (!step_ok) {
          // Check every combination of a distinct f-profile with a distinct
          // g-profile over the bucket. That covers all realized pairs (f from
          // one member, g from another) and possibly more; failures fall back
          // to the exact per-pair replay, so the verdict stays exact.
          std::vector<std::pair<int, int>> vf, vg;
          for (const auto& leaf : st.varying_leaves) {
            (leaf.first == 0 ? vf : vg).push_back(leaf);
          }
          std::set<std::vector<int>> fprofs, gprofs;
          std::vector<int> fp(vf.size()), gp(vg.size());
          for (int mi : bucket) {
            const int* tuple = hs.tuples.data() + static_cast<size_t>(mi) * k;
            for (size_t i = 0; i < vf.size(); ++i) {
              fp[i] = eval_path(target, paths[vf[i].second], tuple);
            }
            for (size_t i = 0; i < vg.size(); ++i) {
              gp[i] = eval_path(target, paths[vg[i].second], tuple);
            }
            fprofs.insert(fp);
            gprofs.insert(gp);
          }
          step_ok = true;
          LeafVals vals = consts;
          for (const auto& f : fprofs) {
            for (const auto& gvals : gprofs) {
              for (size_t i = 0; i < vf.size(); ++i) vals[vf[i]] = f[i];
              for (size_t i = 0; i < vg.size(); ++i) vals[vg[i]] = gvals[i];
              if (eval_expr_vals(st.lhs, target, vals) != eval_expr_vals(st.rhs, target, vals)) {
                step_ok = false;
                break;
              }
            }
            if (!step_ok) break;
          }
        }

        if (!step_ok) bucket_suspect = true;
      }

      if (bucket_suspect) {
        if (auto fail = exact_bucket(chain, hs, bucket)) {
          fail->target_index = ti;
          if (!target_fail ||
              std::make_tuple(fail->f_index, fail->g_index, fail->step_index) <
                  std::make_tuple(target_fail->f_index, target_fail->g_index,
                                  target_fail->step_index)) {
            target_fail = *fail;
          }
        }
      }
    }
    if (target_fail && res.valid) {
      res.valid = false;
      res.first_failure = *target_fail;
    }
  }
  return res;
}

namespace {

std::string elem_name(const FiniteGroup& g, int a) { return g.name(a); }

}  // namespace

Certificate make_half_nontrivial_certificate(GroupPtr gp, const ElementSet& h, int v, int w,
                                             long long n, CertKind kind) {
  const FiniteGroup& g = *gp;
  if (!is_subgroup(g, h)) throw certify_error("half_nontrivial: the given set is not a subgroup");
  int vn = g.pow(v, n), wn = g.pow(w, n);
  if (!contains(h, vn)) {
    throw certify_error("half_nontrivial: v^n = " + elem_name(g, vn) + " is not in the subgroup");
  }
  if (!contains(h, wn)) {
    throw certify_error("half_nontrivial: w^n = " + elem_name(g, wn) + " is not in the subgroup");
  }
  int c = g.comm(v, w);
  if (g.comm(c, v) != 0) {
    throw certify_error("half_nontrivial: identity [[v,w],v] = e fails, [[v,w],v] = " +
                        elem_name(g, g.comm(c, v)));
  }
  if (g.comm(c, w) != 0) {
    throw certify_error("half_nontrivial: identity [[v,w],w] = e fails, [[v,w],w] = " +
                        elem_name(g, g.comm(c, w)));
  }

  Certificate cert;
  cert.kind = kind;
  cert.group = gp;
  cert.subgroup = h;
  cert.letters = {{"v", v}, {"w", w}};
  cert.hom_symbols = {"f", "h"};
  cert.n = n;
  cert.element = g.pow(c, n);

  const std::string ns = std::to_string(n);
  Word wv = Word::generator(GeneratorId("v"));
  Word ww = Word::generator(GeneratorId("w"));
  Word cvw = commutator(wv, ww);
  Word cvw_n = pow(cvw, n);
  Word v_n = pow(wv, n);
  Word w_n = pow(ww, n);

  auto F = [&](const Word& word, const std::string& label) {
    return CertExpr::hom_of(0, word, label);
  };
  auto H = [&](const Word& word, const std::string& label) {
    return CertExpr::hom_of(1, word, label);
  };

  std::vector<CertExpr> rhs;
  rhs.push_back(F(commutator(v_n, ww), "[v^" + ns + ",w]"));
  rhs.push_back(CertExpr::comm(F(v_n, "v^" + ns), F(ww, "w")));
  rhs.push_back(CertExpr::comm(H(v_n, "v^" + ns), F(ww, "w")));
  rhs.push_back(CertExpr::comm(CertExpr::pw(H(wv, "v"), n), F(ww, "w")));
  rhs.push_back(CertExpr::pw(CertExpr::comm(H(wv, "v"), F(ww, "w")), n));
  rhs.push_back(CertExpr::comm(H(wv, "v"), CertExpr::pw(F(ww, "w"), n)));
  rhs.push_back(CertExpr::comm(H(wv, "v"), F(w_n, "w^" + ns)));
  rhs.push_back(CertExpr::comm(H(wv, "v"), H(w_n, "w^" + ns)));
  rhs.push_back(H(commutator(wv, w_n), "[v,w^" + ns + "]"));
  rhs.push_back(H(cvw_n, "[v,w]^" + ns));

  std::vector<std::string> why = {
      "[v,w]^n = [v^n,w] in <v,w>, class <= 2",
      "f is a homomorphism",
      "v^n lies in H and f, h agree on H",
      "h is a homomorphism",
      "power identity [a^n,b] = [a,b]^n in the target",
      "power identity [a,b]^n = [a,b^n] in the target",
      "f is a homomorphism",
      "w^n lies in H and f, h agree on H",
      "h is a homomorphism",
      "[v,w^n] = [v,w]^n in <v,w>, class <= 2",
  };

  CertExpr lhs = F(cvw_n, "[v,w]^" + ns);
  for (size_t i = 0; i < rhs.size(); ++i) {
    cert.steps.push_back({lhs, rhs[i], why[i]});
    lhs = rhs[i];
  }
  return cert;
}

Certificate make_metabelian_certificate(GroupPtr gp, const ElementSet& h, int x, int y, int z,
                                        int d) {
  const FiniteGroup& g = *gp;
  if (d < 2) throw certify_error("metabelian chain requires d >= 2");
  if (!is_subgroup(g, h)) throw certify_error("metabelian: the given set is not a subgroup");

  DerivedSeries ds = derived_series(g);
  if (!ds.solvable || ds.length > d) {
    throw certify_error("metabelian: solvability length " +
                        (ds.solvable ? std::to_string(ds.length) : std::string("infinite")) +
                        " exceeds d = " + std::to_string(d));
  }
  auto layer = [&](int i) -> const ElementSet& {
    return ds.layers[std::min<size_t>(i, ds.layers.size() - 1)];
  };
  if (!contains(layer(d - 1), x)) {
    throw certify_error("metabelian: x = " + elem_name(g, x) + " is not in G^(" +
                        std::to_string(d - 1) + ")");
  }
  for (auto [elem, name] : {std::pair<int, const char*>{y, "y"}, {z, "z"}}) {
    if (!contains(layer(d - 2), elem)) {
      throw certify_error(std::string("metabelian: ") + name + " = " + elem_name(g, elem) +
                          " is not in G^(" + std::to_string(d - 2) + ")");
    }
  }
  int cxy = g.comm(x, y), cxz = g.comm(x, z);
  for (auto [elem, what] : {std::pair<int, const char*>{x, "x"}, {cxy, "[x,y]"}, {cxz, "[x,z]"}}) {
    if (!contains(h, elem)) {
      throw certify_error(std::string("metabelian: ") + what + " = " + elem_name(g, elem) +
                          " is not in the subgroup");
    }
  }
  // swap hypotheses for (x,y,z) and (x,z,y)
  struct Hyp {
    int value;
    const char* text;
  };
  Hyp hyps[] = {
      {g.comm(x, g.comm(g.inv(y), g.inv(z))), "[x,[y^-1,z^-1]] = e"},
      {g.comm(cxy, cxz), "[[x,y],[x,z]] = e"},
      {g.comm(x, g.comm(g.inv(z), g.inv(y))), "[x,[z^-1,y^-1]] = e"},
      {g.comm(cxz, cxy), "[[x,z],[x,y]] = e"},
  };
  for (const Hyp& hyp : hyps) {
    if (hyp.value != 0) {
      throw certify_error(std::string("metabelian: hypothesis ") + hyp.text +
                          " fails, value = " + elem_name(g, hyp.value));
    }
  }

  Certificate cert;
  cert.kind = CertKind::metabelian_chain;
  cert.group = gp;
  cert.subgroup = h;
  cert.letters = {{"x", x}, {"y", y}, {"z", z}};
  cert.hom_symbols = {"f", "g"};
  cert.d = d;

  Word wx = Word::generator(GeneratorId("x"));
  Word wy = Word::generator(GeneratorId("y"));
  Word wz = Word::generator(GeneratorId("z"));
  Word cxy_w = commutator(wx, wy);
  Word cxz_w = commutator(wx, wz);
  Word xyz = left_normed({wx, wy, wz});
  Word xzy = left_normed({wx, wz, wy});
  cert.element = g.comm(cxy, z);

  auto F = [&](const Word& word, const std::string& label) {
    return CertExpr::hom_of(0, word, label);
  };
  auto G2 = [&](const Word& word, const std::string& label) {
    return CertExpr::hom_of(1, word, label);
  };

  std::vector<CertExpr> rhs;
  rhs.push_back(CertExpr::comm(F(cxy_w, "[x,y]"), F(wz, "z")));
  rhs.push_back(CertExpr::comm(G2(cxy_w, "[x,y]"), F(wz, "z")));
  rhs.push_back(CertExpr::comm(CertExpr::comm(G2(wx, "x"), G2(wy, "y")), F(wz, "z")));
  rhs.push_back(CertExpr::comm(CertExpr::comm(F(wx, "x"), F(wz, "z")), G2(wy, "y")));
  rhs.push_back(CertExpr::comm(F(cxz_w, "[x,z]"), G2(wy, "y")));
  rhs.push_back(CertExpr::comm(G2(cxz_w, "[x,z]"), G2(wy, "y")));
  rhs.push_back(G2(xzy, "[x,z,y]"));
  rhs.push_back(G2(xyz, "[x,y,z]"));

  std::vector<std::string> why = {
      "f is a homomorphism",
      "[x,y] lies in H and f, g agree on H",
      "g is a homomorphism",
      "x lies in H (so f(x) = g(x)) and the commutator swap holds in the target",
      "f is a homomorphism",
      "[x,z] lies in H and f, g agree on H",
      "g is a homomorphism",
      "commutator swap [x,z,y] = [x,y,z] in G",
  };

  CertExpr lhs = F(xyz, "[x,y,z]");
  for (size_t i = 0; i < rhs.size(); ++i) {
    cert.steps.push_back({lhs, rhs[i], why[i]});
    lhs = rhs[i];
  }
  return cert;
}

std::string render(const Certificate& cert) {
  std::ostringstream os;
  const FiniteGroup& g = *cert.group;
  os << "certificate: " << to_string(cert.kind) << "\n";
  os << "group: order " << g.order() << "\n";
  os << "subgroup: size " << cert.subgroup.size() << "\n";
  os << "letters:";
  for (const auto& [name, elem] : cert.letters) os << " " << name << " = " << g.name(elem);
  os << "\n";
  if (cert.kind != CertKind::metabelian_chain) os << "n: " << cert.n << "\n";
  if (cert.kind == CertKind::metabelian_chain) os << "d: " << cert.d << "\n";
  os << "element: " << g.name(cert.element) << "\n";
  for (size_t i = 0; i < cert.steps.size(); ++i) {
    const CertStep& s = cert.steps[i];
    os << "step " << (i + 1) << ": " << expr_to_text(s.lhs, cert.hom_symbols) << " = "
       << expr_to_text(s.rhs, cert.hom_symbols) << "  [" << s.justification << "]\n";
  }
  return os.str();
}

std::string render(const Certificate& cert, const ReplayResult& rr) {
  std::ostringstream os;
  os << render(cert);
  os << "verdict: " << (rr.valid ? "VALID" : "INVALID") << " (targets=" << rr.targets
     << ", pairs=" << rr.pairs << ")\n";
  if (rr.first_failure) {
    const ReplayFailure& f = *rr.first_failure;
    os << "first failure: target " << f.target_index << ", pair (" << f.f_index << ","
       << f.g_index << "), step " << (f.step_index + 1) << "\n";
  }
  return os.str();
}

namespace {

SwapScanReport swap_scan_impl(const FiniteGroup& g, bool parallel) {
  SwapScanReport rep;
  const int n = g.order();
  const long long total = static_cast<long long>(n) * n * n;
  rep.triples = total;
  long long hyp_count = 0;
  long long violations = 0;
  long long first_bad = total;  // sentinel
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : hyp_count, violations) \
    reduction(min : first_bad) if (parallel && total > 100000)
#endif
  for (long long t = 0; t < total; ++t) {
    int v = static_cast<int>(t / (static_cast<long long>(n) * n));
    int w = static_cast<int>((t / n) % n);
    int z = static_cast<int>(t % n);
    if (g.comm(v, g.comm(g.inv(w), g.inv(z))) != 0) continue;
    if (g.comm(g.comm(v, w), g.comm(v, z)) != 0) continue;
    ++hyp_count;
    if (g.comm(g.comm(v, w), z) != g.comm(g.comm(v, z), w)) {
      ++violations;
      if (t < first_bad) first_bad = t;
    }
  }
  rep.hypothesis_triples = hyp_count;
  rep.violations = violations;
  if (first_bad < total) {
    rep.first_violation = {static_cast<int>(first_bad / (static_cast<long long>(n) * n)),
                           static_cast<int>((first_bad / n) % n),
                           static_cast<int>(first_bad % n)};
  }
  return rep;
}

}  // namespace

SwapScanReport swap_identity_scan(const FiniteGroup& g) { return swap_scan_impl(g, true); }
SwapScanReport swap_identity_scan_serial(const FiniteGroup& g) { return swap_scan_impl(g, false); }

FirstNontrivialReport build_first_nontrivial(const Nil2Params& params, long long p) {
  if (params.rank != 2) throw certify_error("first_nontrivial: rank-2 parameters required");
  GroupPtr g = realize_finite(params);
  TestFamily fam = TestFamily::of({g});
  fam.max_order = std::max(512, g->order());
  fam.close_under_quotients();
  return build_first_nontrivial(params, p, fam);
}

FirstNontrivialReport build_first_nontrivial(const Nil2Params& params, long long p,
                                             const TestFamily& family) {
  if (params.rank != 2) throw certify_error("first_nontrivial: rank-2 parameters required");
  params.validate();
  if (!is_prime(p)) throw certify_error(std::to_string(p) + " is not prime");
  const long long a0 = params.gen_moduli[0], b0 = params.gen_moduli[1];
  const long long k0 = params.comm_moduli[0];
  if (k0 == 0 || k0 % (p * p) != 0) {
    throw certify_error("p^2 = " + std::to_string(p * p) + " does not divide k0 = " +
                        std::to_string(k0));
  }

  FirstNontrivialReport rep;
  rep.params = params;
  rep.prime = p;
  rep.group = realize_finite(params);
  rep.family = family;

  const FiniteGroup& g = *rep.group;
  int x = g.generators()[0], y = g.generators()[1];
  rep.subgroup = generated_subgroup(g, {g.pow(x, p), g.pow(y, p)});
  if (a0 % p == 0 && b0 % p == 0) {
    rep.expected_subgroup_size = (a0 / p) * (b0 / p) * (k0 / (p * p));
  }

  rep.element = g.pow(g.comm(x, y), p);
  rep.element_in_subgroup = member_subgroup_p(nil2_triple(params, 0, 0, p), p);

  rep.certificate = make_half_nontrivial_certificate(rep.group, rep.subgroup, x, y, p,
                                                     CertKind::first_nontrivial);
  CertReplayEngine engine(rep.group, family);
  rep.replay = engine.replay(rep.certificate);
  rep.element_in_overapprox = contains(engine.dominion().overapprox(rep.subgroup), rep.element);
  rep.nontrivial = rep.replay.valid && !rep.element_in_subgroup && rep.element_in_overapprox &&
                   !contains(rep.subgroup, rep.element);
  return rep;
}

}  // namespace domkit
