#include "domkit/word.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace domkit {

bool is_valid_generator_name(const std::string& name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

GeneratorId::GeneratorId(std::string n) : name(std::move(n)) {
  if (!is_valid_generator_name(name)) {
    throw error("invalid generator name: '" + name + "'");
  }
}

Word Word::reduce(const std::vector<Syllable>& raw) {
  Word out;
  auto& stack = out.syllables_;
  for (const auto& syl : raw) {
    if (syl.exp == 0) continue;
    if (!stack.empty() && stack.back().gen == syl.gen) {
      stack.back().exp += syl.exp;
      if (stack.back().exp == 0) stack.pop_back();
    } else {
      stack.push_back(syl);
    }
  }
  return out;
}

Word Word::generator(const GeneratorId& g, long long exp) {
  return reduce({{g, exp}});
}

long long Word::length() const {
  long long n = 0;
  for (const auto& s : syllables_) n += s.exp < 0 ? -s.exp : s.exp;
  return n;
}

Word mul(const Word& u, const Word& v) {
  std::vector<Syllable> raw = u.syllables();
  raw.insert(raw.end(), v.syllables().begin(), v.syllables().end());
  return Word::reduce(raw);
}

Word mul(const Word& u, const Word& v, const Word& w) { return mul(mul(u, v), w); }

Word inv(const Word& u) {
  std::vector<Syllable> raw;
  raw.reserve(u.syllables().size());
  for (auto it = u.syllables().rbegin(); it != u.syllables().rend(); ++it) {
    raw.push_back({it->gen, -it->exp});
  }
  return Word::reduce(raw);
}

Word pow(const Word& u, long long n) {
  if (n == 0) return Word();
  const Word base = n < 0 ? inv(u) : u;
  long long k = n < 0 ? -n : n;
  if (k > 1000000 || k * static_cast<long long>(base.syllables().size()) > 8000000) {
    throw error("word power exponent too large");
  }
  std::vector<Syllable> raw;
  raw.reserve(base.syllables().size() * static_cast<size_t>(k));
  for (long long i = 0; i < k; ++i) {
    raw.insert(raw.end(), base.syllables().begin(), base.syllables().end());
  }
  return Word::reduce(raw);
}

Word commutator(const Word& u, const Word& v) {
  return mul(mul(inv(u), inv(v)), mul(u, v));
}

Word conjugate(const Word& u, const Word& v) {
  return mul(mul(inv(v), u), v);
}

Word left_normed(const std::vector<Word>& args) {
  if (args.size() < 2) {
    throw error("left_normed needs at least two arguments, got " + std::to_string(args.size()));
  }
  Word acc = commutator(args[0], args[1]);
  for (size_t i = 2; i < args.size(); ++i) acc = commutator(acc, args[i]);
  return acc;
}

Word substitute(const Word& templ, const std::map<GeneratorId, Word>& assignment) {
  Word acc;
  for (const auto& syl : templ.syllables()) {
    auto it = assignment.find(syl.gen);
    if (it == assignment.end()) {
      throw error("substitute: no assignment for generator '" + syl.gen.name + "'");
    }
    acc = mul(acc, pow(it->second, syl.exp));
  }
  return acc;
}

bool free_equal(const Word& u, const Word& v) { return u == v; }

std::vector<GeneratorId> generators_of(const Word& w) {
  std::set<GeneratorId> seen;
  for (const auto& s : w.syllables()) seen.insert(s.gen);
  return {seen.begin(), seen.end()};
}

namespace {

struct WordParser {
  const std::string& text;
  size_t pos = 0;

  explicit WordParser(const std::string& t) : text(t) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg, 1, static_cast<int>(pos) + 1);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  Word parse_word(char terminator) {
    Word acc;
    while (true) {
      skip_ws();
      if (pos >= text.size() || text[pos] == terminator || text[pos] == ',') break;
      acc = mul(acc, parse_term());
    }
    return acc;
  }

  Word parse_term() {
    Word atom = parse_atom();
    skip_ws();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      return pow(atom, parse_int());
    }
    return atom;
  }

  Word parse_atom() {
    skip_ws();
    if (pos >= text.size()) fail("expected atom");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      Word inner = parse_word(')');
      if (peek() != ')') fail("expected ')'");
      ++pos;
      return inner;
    }
    if (c == '[') {
      ++pos;
      Word lhs = parse_word(']');
      if (peek() != ',') fail("expected ',' in commutator");
      ++pos;
      Word rhs = parse_word(']');
      if (peek() != ']') fail("expected ']'");
      ++pos;
      return commutator(lhs, rhs);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
        ++pos;
      }
      std::string name = text.substr(start, pos - start);
      if (name == "e") return Word();
      return Word::generator(GeneratorId(name));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  long long parse_int() {
    skip_ws();
    size_t start = pos;
    if (pos < text.size() && text[pos] == '-') ++pos;
    size_t digits_start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits_start) fail("expected integer exponent");
    try {
      return std::stoll(text.substr(start, pos - start));
    } catch (const std::out_of_range&) {
      fail("exponent out of range");
    }
  }
};

}  // namespace

Word parse_word(const std::string& text) {
  WordParser p(text);
  Word w = p.parse_word('\0');
  if (!p.at_end()) p.fail("trailing input after word");
  return w;
}

std::string to_string(const Word& w) {
  if (w.is_identity()) return "e";
  std::string out;
  for (const auto& s : w.syllables()) {
    if (!out.empty()) out += ' ';
    out += s.gen.name;
    if (s.exp != 1) out += "^" + std::to_string(s.exp);
  }
  return out;
}

}  // namespace domkit
