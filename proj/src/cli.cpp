#include "domkit/cli.hpp"

#include <CLI11.hpp>
#include <functional>
#include <fstream>
#include <iostream>
#include <sstream>

#include "domkit/certify.hpp"
#include "domkit/group_io.hpp"
#include "domkit/parallel.hpp"

namespace domkit::cli {

namespace {

// Report assembled as key/value pairs plus free-form text blocks. keyvalue
// mode emits only the pairs, one key=value per line.
class Out {
 public:
  void kv(const std::string& key, const std::string& value) { items_.push_back({key, value, false}); }
  void kv(const std::string& key, const char* value) { kv(key, std::string(value)); }
  void kv(const std::string& key, long long value) { kv(key, std::to_string(value)); }
  void kv(const std::string& key, int value) { kv(key, static_cast<long long>(value)); }
  void kv(const std::string& key, bool value) { kv(key, std::string(value ? "true" : "false")); }
  void block(const std::string& text) { items_.push_back({"", text, true}); }

  std::string render(bool keyvalue) const {
    std::ostringstream os;
    for (const auto& it : items_) {
      if (it.is_block) {
        if (!keyvalue) os << it.value;
      } else {
        os << it.key << (keyvalue ? "=" : " = ") << it.value << "\n";
      }
    }
    return os.str();
  }

 private:
  struct Item {
    std::string key, value;
    bool is_block;
  };
  std::vector<Item> items_;
};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  size_t b = s.find_last_not_of(" \t");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

// An element is either a plain index or a word over the group's designated
// generators (named by the presentation, g1..gk otherwise).
int parse_element(const FiniteGroup& g, const std::string& spec) {
  std::string t = trim(spec);
  if (t.empty()) throw error("empty element spec");
  if (t.find_first_not_of("0123456789") == std::string::npos) {
    int idx = std::stoi(t);
    if (idx < 0 || idx >= g.order()) throw error("element index out of range: " + t);
    return idx;
  }
  if (g.generators().empty()) {
    throw error("element word '" + t + "' needs a group with designated generators");
  }
  std::map<GeneratorId, int> assign;
  for (size_t i = 0; i < g.generators().size(); ++i) {
    assign[GeneratorId("g" + std::to_string(i + 1))] = g.generators()[i];
    if (g.presentation() && i < g.presentation()->gen_names.size()) {
      assign[GeneratorId(g.presentation()->gen_names[i])] = g.generators()[i];
    }
  }
  return eval_word(g, parse_word(t), assign);
}

// Subgroup spec: semicolon-separated element specs, taken as generators.
ElementSet parse_subgroup(const FiniteGroup& g, const std::string& spec) {
  ElementSet seeds;
  std::string item;
  std::istringstream is(spec);
  while (std::getline(is, item, ';')) {
    item = trim(item);
    if (!item.empty()) seeds.push_back(parse_element(g, item));
  }
  std::sort(seeds.begin(), seeds.end());
  return generated_subgroup(g, seeds);
}

// Default family: the group itself closed under its quotients. Family files
// carry their own max-order; the flag applies to the default construction.
TestFamily family_for(GroupPtr g, const std::string& family_path, int max_order) {
  if (!family_path.empty()) return load_family(family_path);
  TestFamily fam = TestFamily::of({std::move(g)});
  fam.max_order = max_order > 0 ? max_order : std::max(512, fam.targets[0].group->order());
  fam.close_under_quotients();
  return fam;
}

std::string set_names(const FiniteGroup& g, const ElementSet& s, size_t cap = 16) {
  std::string out = "{";
  for (size_t i = 0; i < s.size() && i < cap; ++i) {
    out += (i ? ", " : "") + g.name(s[i]);
  }
  if (s.size() > cap) out += ", ...";
  return out + "}";
}

struct Config {
  int jobs = 0;
  int max_order = 0;
  long long seed = 0;
  bool seed_set = false;
  std::string format = "text";
  std::string out_path;
};

struct Pending {
  Out out;
  int exit_code = 0;
};

}  // namespace

RunResult run(const std::vector<std::string>& args) {
  CLI::App app{"domkit: commutator calculus, class-2 collection and finite dominion checks"};
  app.require_subcommand(1);

  Config cfg;
  app.add_option("--jobs", cfg.jobs, "worker threads (0 = all cores, 1 = sequential)");
  auto* seed_opt = app.add_option("--seed", cfg.seed, "seed echoed into reports");
  app.add_option("--format", cfg.format, "report format: text or keyvalue")
      ->check(CLI::IsMember({"text", "keyvalue"}));
  app.add_option("--out", cfg.out_path, "write the report to a file");
  app.add_option("--max-order", cfg.max_order,
                 "order cap for default quotient-closed families");

  // ---- word ----
  auto* word_cmd = app.add_subcommand("word", "free-group words");
  word_cmd->require_subcommand(1);
  std::string word_a, word_b, word_group;

  auto* word_reduce = word_cmd->add_subcommand("reduce", "reduce a word");
  word_reduce->add_option("word", word_a)->required();

  auto* word_equal = word_cmd->add_subcommand("equal", "free equality of two words");
  word_equal->add_option("lhs", word_a)->required();
  word_equal->add_option("rhs", word_b)->required();

  auto* word_checkid =
      word_cmd->add_subcommand("check-identity", "exhaustive identity check in a finite group");
  word_checkid->add_option("--group", word_group, "Cayley table file")->required();
  word_checkid->add_option("lhs", word_a)->required();
  word_checkid->add_option("rhs", word_b)->required();

  // ---- nil2 ----
  auto* nil2_cmd = app.add_subcommand("nil2", "class-2 normal forms");
  nil2_cmd->require_subcommand(1);
  std::string nil2_params, nil2_word, nil2_op, nil2_a, nil2_b, nil2_prime;

  auto* nil2_collect = nil2_cmd->add_subcommand("collect", "normal form of a word");
  nil2_collect->add_option("--params", nil2_params)->required();
  nil2_collect->add_option("word", nil2_word)->required();

  auto* nil2_opc = nil2_cmd->add_subcommand("op", "group operations on normal forms");
  nil2_opc->add_option("--params", nil2_params)->required();
  nil2_opc->add_option("operation", nil2_op, "mul|inv|pow|comm")->required();
  nil2_opc->add_option("a", nil2_a)->required();
  nil2_opc->add_option("b", nil2_b, "second element, or the exponent for pow");

  auto* nil2_order = nil2_cmd->add_subcommand("order", "order of an element (0 = infinite)");
  nil2_order->add_option("--params", nil2_params)->required();
  nil2_order->add_option("element", nil2_a)->required();

  auto* nil2_member = nil2_cmd->add_subcommand("member", "membership in <x^p, y^p>");
  nil2_member->add_option("--params", nil2_params)->required();
  nil2_member->add_option("--prime", nil2_prime)->required();
  nil2_member->add_option("element", nil2_a)->required();

  auto* nil2_realize = nil2_cmd->add_subcommand("realize", "Cayley table of a finite K group");
  nil2_realize->add_option("--params", nil2_params)->required();

  // ---- group ----
  auto* group_cmd = app.add_subcommand("group", "finite group structure");
  group_cmd->require_subcommand(1);
  std::string group_file, group_target, group_sub;

  auto* group_info = group_cmd->add_subcommand("info", "order, center, series summary");
  group_info->add_option("file", group_file)->required();

  auto* group_validate = group_cmd->add_subcommand("validate", "full axiom check of a table");
  group_validate->add_option("file", group_file)->required();

  auto* group_ds = group_cmd->add_subcommand("derived-series", "derived series and solvability");
  group_ds->add_option("file", group_file)->required();

  auto* group_homs = group_cmd->add_subcommand("homs", "all homomorphisms between two groups");
  group_homs->add_option("source", group_file)->required();
  group_homs->add_option("target", group_target)->required();

  auto* group_quot = group_cmd->add_subcommand("quotient", "quotient by a normal subgroup");
  group_quot->add_option("file", group_file)->required();
  group_quot->add_option("--subgroup", group_sub, "generators of the kernel")->required();

  // ---- dominion ----
  auto* dom_cmd = app.add_subcommand("dominion", "finite-family dominion over-approximation");
  dom_cmd->require_subcommand(1);
  std::string dom_group, dom_family, dom_sub, dom_elem;
  std::vector<std::string> dom_samples;

  auto* dom_approx = dom_cmd->add_subcommand("approx", "per-element dominion report");
  dom_approx->add_option("--group", dom_group)->required();
  dom_approx->add_option("--family", dom_family, "family file (default: group + its quotients)");
  dom_approx->add_option("--subgroup", dom_sub)->required();

  auto* dom_witness = dom_cmd->add_subcommand("witness", "separating pair for one element");
  dom_witness->add_option("--group", dom_group)->required();
  dom_witness->add_option("--family", dom_family);
  dom_witness->add_option("--subgroup", dom_sub)->required();
  dom_witness->add_option("--element", dom_elem)->required();

  auto* dom_closure = dom_cmd->add_subcommand("closure", "closure-operator checks");
  dom_closure->add_option("--group", dom_group)->required();
  dom_closure->add_option("--family", dom_family);
  dom_closure->add_option("--subgroup", dom_samples,
                          "sample subgroup (repeatable; default: all subgroups)");

  // ---- certify ----
  auto* cert_cmd = app.add_subcommand("certify", "replayable dominion certificates");
  cert_cmd->require_subcommand(1);
  std::string cert_params, cert_prime, cert_group, cert_family, cert_sub;
  std::string cert_x, cert_y, cert_z;
  int cert_d = 2;

  auto* cert_nil2 = cert_cmd->add_subcommand("nil2", "nontrivial dominion instance in K(a0,b0,k0)");
  cert_nil2->add_option("--params", cert_params)->required();
  cert_nil2->add_option("--prime", cert_prime)->required();
  cert_nil2->add_option("--family", cert_family);

  auto* cert_metab = cert_cmd->add_subcommand("metabelian", "swap-argument certificate");
  cert_metab->add_option("--group", cert_group)->required();
  cert_metab->add_option("--subgroup", cert_sub)->required();
  cert_metab->add_option("--x", cert_x)->required();
  cert_metab->add_option("--y", cert_y)->required();
  cert_metab->add_option("--z", cert_z)->required();
  cert_metab->add_option("--d", cert_d, "solvability bound (default 2)");
  cert_metab->add_option("--family", cert_family);

  auto* cert_l31 = cert_cmd->add_subcommand("lemma31", "exhaustive swap-identity scan");
  cert_l31->add_option("--group", cert_group)->required();

  // global flags are accepted before or after subcommands
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
    a->fallthrough();
    for (CLI::App* sub : a->get_subcommands([](CLI::App*) { return true; })) {
      enable_fallthrough(sub);
    }
  };
  enable_fallthrough(&app);

  std::vector<const char*> argv_c;
  argv_c.push_back("domkit");
  for (const auto& a : args) argv_c.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv_c.size()), argv_c.data());
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream os;
    os << app.help();
    return {0, os.str()};
  } catch (const CLI::ParseError& e) {
    return {2, std::string("usage error: ") + e.what() + "\n"};
  }

  set_jobs(cfg.jobs);

  Pending p;
  if (cfg.jobs != 0) p.out.kv("config.jobs", cfg.jobs);
  cfg.seed_set = seed_opt->count() > 0;
  if (cfg.seed_set) p.out.kv("config.seed", cfg.seed);

  try {
    if (word_reduce->parsed()) {
      std::string reduced = to_string(parse_word(word_a));
      if (cfg.format == "keyvalue") {
        p.out.kv("word", reduced);
      } else {
        p.out.block(reduced + "\n");
      }
    } else if (word_equal->parsed()) {
      Word u = parse_word(word_a), v = parse_word(word_b);
      p.out.kv("lhs", to_string(u));
      p.out.kv("rhs", to_string(v));
      bool eq = free_equal(u, v);
      p.out.kv("equal", eq);
      p.exit_code = eq ? 0 : 1;
    } else if (word_checkid->parsed()) {
      GroupPtr g = load_cayley(word_group);
      IdentityCheck res = check_identity(*g, parse_word(word_a), parse_word(word_b));
      p.out.kv("group.order", g->order());
      std::string vars;
      for (const auto& v : res.variables) vars += (vars.empty() ? "" : ",") + v;
      p.out.kv("variables", vars);
      p.out.kv("assignments", res.assignments);
      p.out.kv("holds", res.holds);
      if (res.first_violation) {
        std::string v;
        for (size_t i = 0; i < res.first_violation->size(); ++i) {
          v += (i ? "," : "") + res.variables[i] + "=" + g->name((*res.first_violation)[i]);
        }
        p.out.kv("violation", v);
      }
      p.exit_code = res.holds ? 0 : 1;
    } else if (nil2_collect->parsed()) {
      Nil2Params params = parse_nil2_params(nil2_params);
      p.out.kv("params", to_string(params));
      p.out.kv("element", to_string(collect(parse_word(nil2_word), params)));
    } else if (nil2_opc->parsed()) {
      Nil2Params params = parse_nil2_params(nil2_params);
      Nil2Element a = parse_nil2_element(nil2_a, params);
      p.out.kv("params", to_string(params));
      if (nil2_op == "inv") {
        p.out.kv("result", to_string(inv(a)));
      } else if (nil2_op == "pow") {
        if (nil2_b.empty()) throw error("pow needs an exponent");
        p.out.kv("result", to_string(pow(a, std::stoll(nil2_b))));
      } else if (nil2_op == "mul" || nil2_op == "comm") {
        if (nil2_b.empty()) throw error(nil2_op + " needs two elements");
        Nil2Element b = parse_nil2_element(nil2_b, params);
        p.out.kv("result", to_string(nil2_op == "mul" ? mul(a, b) : commutator(a, b)));
      } else {
        throw error("unknown operation '" + nil2_op + "' (mul|inv|pow|comm)");
      }
    } else if (nil2_order->parsed()) {
      Nil2Params params = parse_nil2_params(nil2_params);
      p.out.kv("params", to_string(params));
      p.out.kv("order", order(parse_nil2_element(nil2_a, params)));
    } else if (nil2_member->parsed()) {
      Nil2Params params = parse_nil2_params(nil2_params);
      bool member = member_subgroup_p(parse_nil2_element(nil2_a, params), std::stoll(nil2_prime));
      p.out.kv("params", to_string(params));
      p.out.kv("prime", nil2_prime);
      p.out.kv("member", member);
      p.exit_code = member ? 0 : 1;
    } else if (nil2_realize->parsed()) {
      Nil2Params params = parse_nil2_params(nil2_params);
      GroupPtr g = realize_finite(params);
      if (!cfg.out_path.empty()) {
        save_cayley_file(*g, cfg.out_path);
        p.out.kv("params", to_string(params));
        p.out.kv("order", g->order());
        p.out.kv("written", cfg.out_path);
        cfg.out_path.clear();  // the summary goes to stdout
      } else {
        return {0, cayley_text(*g)};
      }
    } else if (group_info->parsed()) {
      GroupPtr g = load_cayley(group_file);
      p.out.kv("order", g->order());
      p.out.kv("abelian", g->is_abelian());
      p.out.kv("center.size", static_cast<long long>(center(*g).size()));
      DerivedSeries ds = derived_series(*g);
      p.out.kv("solvable", ds.solvable);
      if (ds.solvable) p.out.kv("solvability.length", ds.length);
      std::string gens;
      for (int v : g->generators()) gens += (gens.empty() ? "" : ",") + g->name(v);
      if (!gens.empty()) p.out.kv("generators", gens);
      p.out.kv("presentation", g->presentation().has_value());
    } else if (group_validate->parsed()) {
      try {
        GroupPtr g = load_cayley(group_file);
        p.out.kv("valid", true);
        p.out.kv("order", g->order());
      } catch (const parse_error&) {
        throw;
      } catch (const group_error& e) {
        p.out.kv("valid", false);
        p.out.kv("reason", e.what());
        p.exit_code = 1;
      }
    } else if (group_ds->parsed()) {
      GroupPtr g = load_cayley(group_file);
      DerivedSeries ds = derived_series(*g);
      p.out.kv("order", g->order());
      p.out.kv("solvable", ds.solvable);
      p.out.kv("length", ds.solvable ? ds.length : -1);
      for (size_t i = 0; i < ds.layers.size(); ++i) {
        p.out.kv("layer." + std::to_string(i) + ".size",
                 static_cast<long long>(ds.layers[i].size()));
      }
    } else if (group_homs->parsed()) {
      GroupPtr src = load_cayley(group_file);
      GroupPtr dst = load_cayley(group_target);
      HomSearch hs = hom_search(src, dst);
      p.out.kv("count", static_cast<long long>(hs.count()));
      p.out.kv("route", hs.used_presentation ? "presentation" : "table");
      const size_t k = hs.gen_elements.size();
      for (size_t i = 0; i < hs.count(); ++i) {
        std::string line;
        for (size_t s = 0; s < k; ++s) {
          line += (s ? ", " : "") + src->name(hs.gen_elements[s]) + " -> " +
                  dst->name(hs.tuples[i * k + s]);
        }
        p.out.kv("hom." + std::to_string(i), line);
      }
    } else if (group_quot->parsed()) {
      GroupPtr g = load_cayley(group_file);
      ElementSet n = parse_subgroup(*g, group_sub);
      auto [q, proj] = quotient(g, n);
      p.out.kv("kernel.size", static_cast<long long>(n.size()));
      p.out.kv("order", q->order());
      p.out.kv("abelian", q->is_abelian());
      if (!cfg.out_path.empty()) {
        save_cayley_file(*q, cfg.out_path);
        p.out.kv("written", cfg.out_path);
        cfg.out_path.clear();
      }
    } else if (dom_approx->parsed()) {
      GroupPtr g = load_cayley(dom_group);
      TestFamily fam = family_for(g, dom_family, cfg.max_order);
      ElementSet h = parse_subgroup(*g, dom_sub);
      DominionReport rep = dominion_report(g, h, fam);
      p.out.kv("group.order", g->order());
      p.out.kv("subgroup.size", static_cast<long long>(h.size()));
      p.out.kv("family", fam.description());
      p.out.kv("overapprox.size", static_cast<long long>(rep.overapprox.size()));
      p.out.kv("note", "over-approximation relative to family");
      long long counts[4] = {0, 0, 0, 0};
      for (int a = 0; a < g->order(); ++a) counts[static_cast<int>(rep.status[a])]++;
      p.out.kv("count.in_subgroup", counts[0]);
      p.out.kv("count.certified", counts[1]);
      p.out.kv("count.retained", counts[2]);
      p.out.kv("count.excluded", counts[3]);
      for (int a = 0; a < g->order(); ++a) {
        std::string line = std::string(to_string(rep.status[a]));
        if (rep.witness[a]) {
          line += " witness(target=" + std::to_string(rep.witness[a]->target_index) +
                  ",f=" + std::to_string(rep.witness[a]->f_index) +
                  ",g=" + std::to_string(rep.witness[a]->g_index) + ")";
        }
        p.out.kv("element." + g->name(a), line);
      }
    } else if (dom_witness->parsed()) {
      GroupPtr g = load_cayley(dom_group);
      TestFamily fam = family_for(g, dom_family, cfg.max_order);
      ElementSet h = parse_subgroup(*g, dom_sub);
      int a = parse_element(*g, dom_elem);
      p.out.kv("element", g->name(a));
      auto w = find_witness(g, h, fam, a);
      if (w) {
        p.out.kv("witness", true);
        p.out.kv("witness.target", w->target_index);
        p.out.kv("witness.target.order", fam.targets[w->target_index].group->order());
        p.out.kv("witness.f", static_cast<long long>(w->f_index));
        p.out.kv("witness.g", static_cast<long long>(w->g_index));
        p.out.kv("witness.f.value", w->f.target->name(w->f(a)));
        p.out.kv("witness.g.value", w->g.target->name(w->g(a)));
      } else {
        p.out.kv("witness", false);
        p.out.kv("note", "element lies in the over-approximation for this family");
        p.exit_code = 1;
      }
    } else if (dom_closure->parsed()) {
      GroupPtr g = load_cayley(dom_group);
      TestFamily fam = family_for(g, dom_family, cfg.max_order);
      std::vector<ElementSet> samples;
      if (dom_samples.empty()) {
        samples = all_subgroups(*g);
      } else {
        for (const auto& spec : dom_samples) samples.push_back(parse_subgroup(*g, spec));
      }
      ClosureReport rep = closure_checks(g, fam, samples);
      p.out.kv("family", fam.description());
      p.out.kv("samples", static_cast<long long>(samples.size()));
      p.out.kv("extensive", rep.extensive_ok);
      p.out.kv("monotone", rep.monotone_ok);
      p.out.kv("idempotent", rep.idempotent_ok);
      for (size_t i = 0; i < rep.violations.size(); ++i) {
        p.out.kv("violation." + std::to_string(i), rep.violations[i]);
      }
      p.exit_code = rep.all_ok() ? 0 : 1;
    } else if (cert_nil2->parsed()) {
      Nil2Params params = parse_nil2_params(cert_params);
      long long prime = std::stoll(cert_prime);
      FirstNontrivialReport rep;
      if (!cert_family.empty()) {
        rep = build_first_nontrivial(params, prime, load_family(cert_family));
      } else if (cfg.max_order > 0) {
        rep = build_first_nontrivial(params, prime,
                                     family_for(realize_finite(params), "", cfg.max_order));
      } else {
        rep = build_first_nontrivial(params, prime);
      }
      const FiniteGroup& g = *rep.group;
      p.out.kv("params", to_string(params));
      p.out.kv("prime", prime);
      p.out.kv("group.order", g.order());
      p.out.kv("family", rep.family.description());
      p.out.kv("subgroup.size", static_cast<long long>(rep.subgroup.size()));
      if (rep.expected_subgroup_size) p.out.kv("subgroup.expected", *rep.expected_subgroup_size);
      p.out.kv("subgroup", set_names(g, rep.subgroup));
      p.out.kv("element", g.name(rep.element));
      p.out.kv("element.in_subgroup", rep.element_in_subgroup);
      p.out.kv("certificate.valid", rep.replay.valid);
      p.out.kv("certificate.targets", rep.replay.targets);
      p.out.kv("certificate.pairs", rep.replay.pairs);
      p.out.kv("element.in_overapprox", rep.element_in_overapprox);
      p.out.kv("nontrivial", rep.nontrivial);
      p.out.block(render(rep.certificate, rep.replay));
      p.exit_code = rep.nontrivial ? 0 : 1;
    } else if (cert_metab->parsed()) {
      GroupPtr g = load_cayley(cert_group);
      ElementSet h = parse_subgroup(*g, cert_sub);
      int x = parse_element(*g, cert_x);
      int y = parse_element(*g, cert_y);
      int z = parse_element(*g, cert_z);
      TestFamily fam = family_for(g, cert_family, cfg.max_order);
      Certificate cert = make_metabelian_certificate(g, h, x, y, z, cert_d);
      CertReplayEngine engine(g, fam);
      ReplayResult rr = engine.replay(cert);
      p.out.kv("group.order", g->order());
      p.out.kv("subgroup.size", static_cast<long long>(h.size()));
      p.out.kv("d", cert_d);
      p.out.kv("element", g->name(cert.element));
      p.out.kv("family", fam.description());
      p.out.kv("certificate.valid", rr.valid);
      p.out.kv("certificate.targets", rr.targets);
      p.out.kv("certificate.pairs", rr.pairs);
      p.out.block(render(cert, rr));
      p.exit_code = rr.valid ? 0 : 1;
    } else if (cert_l31->parsed()) {
      GroupPtr g = load_cayley(cert_group);
      SwapScanReport rep = swap_identity_scan(*g);
      p.out.kv("group.order", g->order());
      p.out.kv("triples", rep.triples);
      p.out.kv("hypothesis.triples", rep.hypothesis_triples);
      p.out.kv("violations", rep.violations);
      if (rep.first_violation) {
        const auto& v = *rep.first_violation;
        p.out.kv("first.violation",
                  g->name(v[0]) + "," + g->name(v[1]) + "," + g->name(v[2]));
      }
      p.exit_code = rep.violations == 0 ? 0 : 1;
    }
  } catch (const parse_error& e) {
    return {2, std::string("input error: ") + e.what() + "\n"};
  } catch (const error& e) {
    return {2, std::string("error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {2, std::string("error: ") + e.what() + "\n"};
  }

  std::string report = p.out.render(cfg.format == "keyvalue");
  if (!cfg.out_path.empty()) {
    std::ofstream f(cfg.out_path);
    if (!f) return {2, "error: cannot write " + cfg.out_path + "\n"};
    f << report;
    return {p.exit_code, ""};
  }
  return {p.exit_code, report};
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  RunResult res = run(args);
  std::cout << res.report;
  return res.exit_code;
}

}  // namespace domkit::cli
