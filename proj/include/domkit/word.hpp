#pragma once

// Free-group words over named generators: reduction, group operations,
// commutators, substitution, and the shared text grammar.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace domkit {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parse failure with 1-based position information.
struct parse_error : error {
  parse_error(const std::string& msg, int line, int column)
      : error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line(line), column(column) {}
  int line;
  int column;
};

// Named generator. Names follow the identifier grammar:
// [A-Za-z_][A-Za-z0-9_]*, compared by exact string equality.
// "e" is reserved for the identity word.
struct GeneratorId {
  std::string name;

  GeneratorId() = default;
  explicit GeneratorId(std::string n);

  auto operator<=>(const GeneratorId&) const = default;
};

bool is_valid_generator_name(const std::string& name);

struct Syllable {
  GeneratorId gen;
  long long exp = 0;  // never 0 in a reduced word

  auto operator<=>(const Syllable&) const = default;
};

// Reduced free-group word. The empty sequence is the identity e.
// Invariant: no zero exponents, no two adjacent syllables share a generator.
class Word {
 public:
  Word() = default;

  // Reduces an arbitrary syllable sequence.
  static Word reduce(const std::vector<Syllable>& raw);
  static Word generator(const GeneratorId& g, long long exp = 1);

  const std::vector<Syllable>& syllables() const { return syllables_; }
  bool is_identity() const { return syllables_.empty(); }
  // Sum of |exponent| over syllables.
  long long length() const;

  bool operator==(const Word&) const = default;

 private:
  std::vector<Syllable> syllables_;
};

Word mul(const Word& u, const Word& v);
Word mul(const Word& u, const Word& v, const Word& w);
Word inv(const Word& u);
Word pow(const Word& u, long long n);

// [u,v] = u^-1 v^-1 u v
Word commutator(const Word& u, const Word& v);

// u^v = v^-1 u v
Word conjugate(const Word& u, const Word& v);

// Left-normed commutator [a1,...,ac] = [[a1,...,a(c-1)],ac]; needs >= 2 arguments.
Word left_normed(const std::vector<Word>& args);

// Replaces each syllable g^k by assignment(g)^k. Every generator occurring
// in the template must be mapped.
Word substitute(const Word& templ, const std::map<GeneratorId, Word>& assignment);

bool free_equal(const Word& u, const Word& v);

// Sorted list of distinct generators occurring in the word.
std::vector<GeneratorId> generators_of(const Word& w);

// Text grammar (whitespace-insensitive):
//   word := term* ; term := atom ('^' int)? ;
//   atom := ident | '(' word ')' | '[' word ',' word ']' ;
//   int  := '-'? digit+
// Juxtaposition is multiplication; empty input or "e" is the identity.
Word parse_word(const std::string& text);
std::string to_string(const Word& w);

}  // namespace domkit
