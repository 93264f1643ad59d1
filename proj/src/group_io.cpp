#include "domkit/group_io.hpp"

#include <fstream>
#include <sstream>

#include "domkit/nil2.hpp"

namespace domkit {

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

long long to_int(const std::string& tok, int line_no, int col) {
  size_t used = 0;
  long long v;
  try {
    v = std::stoll(tok, &used);
  } catch (...) {
    throw parse_error("expected integer, got '" + tok + "'", line_no, col);
  }
  if (used != tok.size()) throw parse_error("expected integer, got '" + tok + "'", line_no, col);
  return v;
}

// Swaps indices 0 and e so the identity lands at index 0.
void reindex_identity(std::vector<int>& table, std::vector<std::string>& names,
                      std::vector<int>& generators, int n, int e) {
  auto perm = [e](int a) { return a == 0 ? e : (a == e ? 0 : a); };
  std::vector<int> fixed(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      fixed[static_cast<size_t>(perm(a)) * n + perm(b)] = perm(table[static_cast<size_t>(a) * n + b]);
    }
  }
  table = std::move(fixed);
  if (!names.empty()) std::swap(names[0], names[e]);
  for (int& g : generators) g = perm(g);
}

}  // namespace

GroupPtr load_cayley_stream(std::istream& in, const std::string& origin) {
  int n = -1;
  std::vector<std::string> names;
  std::vector<int> generators;
  std::vector<int> table;
  int rows_seen = 0;
  bool in_presentation = false;
  Presentation pres;
  bool have_pres = false;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto toks = split_tokens(line);
    if (toks.empty()) continue;

    if (in_presentation) {
      if (toks[0] == "gens") {
        if (toks.size() != 2) throw parse_error("gens takes one count", line_no, 1);
        pres.gen_count = static_cast<int>(to_int(toks[1], line_no, 1));
        pres.gen_names.clear();
        for (int i = 0; i < pres.gen_count; ++i) pres.gen_names.push_back("g" + std::to_string(i + 1));
      } else if (toks[0] == "relator") {
        size_t at = line.find("relator");
        std::string body = line.substr(at + 7);
        try {
          pres.relators.push_back(parse_word(body));
        } catch (const parse_error& e) {
          throw parse_error(std::string("bad relator: ") + e.what(), line_no, e.column);
        }
      } else if (toks[0] == "params") {
        size_t at = line.find("params");
        std::string body = line.substr(at + 6);
        size_t a = body.find_first_not_of(" \t");
        pres.params_tag = body.substr(a == std::string::npos ? body.size() : a);
      } else {
        throw parse_error("unexpected token '" + toks[0] + "' in presentation block", line_no, 1);
      }
      continue;
    }

    if (toks[0] == "order") {
      if (toks.size() != 2) throw parse_error("order takes one count", line_no, 1);
      n = static_cast<int>(to_int(toks[1], line_no, 1));
      if (n < 1) throw parse_error("order must be positive", line_no, 1);
    } else if (toks[0] == "names") {
      names.assign(toks.begin() + 1, toks.end());
    } else if (toks[0] == "generators") {
      for (size_t i = 1; i < toks.size(); ++i) {
        generators.push_back(static_cast<int>(to_int(toks[i], line_no, static_cast<int>(i))));
      }
    } else if (toks[0] == "presentation") {
      in_presentation = true;
      have_pres = true;
    } else {
      // a table row
      if (n < 0) throw parse_error("table row before 'order'", line_no, 1);
      if (rows_seen >= n) throw parse_error("too many table rows", line_no, 1);
      if (toks.size() != static_cast<size_t>(n)) {
        throw parse_error("row has " + std::to_string(toks.size()) + " entries, expected " +
                              std::to_string(n),
                          line_no, 1);
      }
      for (size_t i = 0; i < toks.size(); ++i) {
        table.push_back(static_cast<int>(to_int(toks[i], line_no, static_cast<int>(i + 1))));
      }
      ++rows_seen;
    }
  }
  if (n < 0) throw parse_error("missing 'order' line in " + origin, line_no, 1);
  if (rows_seen != n) {
    throw parse_error("expected " + std::to_string(n) + " table rows, got " +
                          std::to_string(rows_seen) + " in " + origin,
                      line_no, 1);
  }
  if (!names.empty() && names.size() != static_cast<size_t>(n)) {
    throw parse_error("names list does not match order in " + origin, line_no, 1);
  }
  for (int v : table) {
    if (v < 0 || v >= n) throw parse_error("table entry out of range in " + origin, line_no, 1);
  }

  // Locate the identity; re-index when it is not element 0.
  int identity = -1;
  for (int e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) {
      ok = table[static_cast<size_t>(e) * n + a] == a && table[static_cast<size_t>(a) * n + e] == a;
    }
    if (ok) identity = e;
  }
  if (identity < 0) throw group_error("no identity element in " + origin);
  if (identity != 0) reindex_identity(table, names, generators, n, identity);

  // A nil2 params tag fixes canonical generator names (x, y or z1..zm);
  // restore them so element specs read naturally after a round trip.
  if (have_pres && pres.params_tag) {
    try {
      Nil2Params params = parse_nil2_params(*pres.params_tag);
      if (params.rank == pres.gen_count) {
        std::map<GeneratorId, Word> rename;
        std::vector<std::string> new_names;
        for (int i = 0; i < pres.gen_count; ++i) {
          new_names.push_back(params.gen_name(i));
          rename[GeneratorId(pres.gen_names[i])] =
              Word::generator(GeneratorId(params.gen_name(i)));
        }
        for (Word& r : pres.relators) r = substitute(r, rename);
        pres.gen_names = std::move(new_names);
      }
    } catch (const nil2_error&) {
      // unusable tag: keep the file names
    }
  }

  return validate_group(std::move(table), std::move(names), std::move(generators),
                        have_pres ? std::optional<Presentation>(std::move(pres)) : std::nullopt);
}

GroupPtr load_cayley(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open file: " + path);
  return load_cayley_stream(in, path);
}

void save_cayley(const FiniteGroup& g, std::ostream& out) {
  const int n = g.order();
  out << "order " << n << "\n";
  bool sane_names = true;
  for (int a = 0; a < n && sane_names; ++a) {
    sane_names = !g.name(a).empty() && g.name(a).find_first_of(" \t#") == std::string::npos;
  }
  if (sane_names) {
    out << "names";
    for (int a = 0; a < n; ++a) out << " " << g.name(a);
    out << "\n";
  }
  if (!g.generators().empty()) {
    out << "generators";
    for (int v : g.generators()) out << " " << v;
    out << "\n";
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) out << (b ? " " : "") << g.op(a, b);
    out << "\n";
  }
  if (g.presentation()) {
    const Presentation& p = *g.presentation();
    out << "presentation\n";
    out << "gens " << p.gen_count << "\n";
    // File form uses canonical generator names g1..gk.
    std::map<GeneratorId, Word> rename;
    for (int i = 0; i < p.gen_count; ++i) {
      rename[GeneratorId(p.gen_names[i])] = Word::generator(GeneratorId("g" + std::to_string(i + 1)));
    }
    for (const Word& r : p.relators) {
      out << "relator " << to_string(substitute(r, rename)) << "\n";
    }
    if (p.params_tag) out << "params " << *p.params_tag << "\n";
  }
}

std::string cayley_text(const FiniteGroup& g) {
  std::ostringstream os;
  save_cayley(g, os);
  return os.str();
}

void save_cayley_file(const FiniteGroup& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw error("cannot write file: " + path);
  save_cayley(g, out);
}

}  // namespace domkit
