#pragma once

// Shared helpers for the test suites: seeded random words and small
// permutation-group tables built independently of the library code.

#include <algorithm>
#include <random>
#include <vector>

#include "domkit/fingroup.hpp"
#include "domkit/word.hpp"

namespace testsupport {

// Random reduced word: at most 12 syllables, exponents in [-3,3] \ {0}.
inline domkit::Word random_word(std::mt19937& rng,
                                const std::vector<domkit::GeneratorId>& pool,
                                int max_syllables = 12) {
  std::uniform_int_distribution<int> len_dist(0, max_syllables);
  std::uniform_int_distribution<size_t> gen_dist(0, pool.size() - 1);
  std::uniform_int_distribution<int> exp_dist(-3, 3);
  int len = len_dist(rng);
  std::vector<domkit::Syllable> raw;
  for (int i = 0; i < len; ++i) {
    int e = exp_dist(rng);
    if (e == 0) e = 1;
    raw.push_back({pool[gen_dist(rng)], e});
  }
  return domkit::Word::reduce(raw);
}

// Cayley table of the symmetric group on n points (n small), elements in
// lexicographic order of the permutation vectors, so the identity is index 0.
// Composition convention: (p*q)(i) = q(p(i)), matching row-then-column use.
inline domkit::GroupPtr symmetric_group(int n) {
  std::vector<int> base(n);
  for (int i = 0; i < n; ++i) base[i] = i;
  std::vector<std::vector<int>> perms;
  std::vector<int> p = base;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const int order = static_cast<int>(perms.size());
  auto index_of = [&](const std::vector<int>& q) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<int> table(order * order);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[i] = perms[b][perms[a][i]];
      table[a * order + b] = index_of(c);
    }
  }
  std::vector<std::string> names;
  for (const auto& q : perms) {
    std::string s;
    for (int v : q) s += static_cast<char>('0' + v);
    names.push_back(s);
  }
  return domkit::validate_group(table, names);
}

inline int permutation_parity(const std::string& name) {
  int inversions = 0;
  for (size_t i = 0; i < name.size(); ++i)
    for (size_t j = i + 1; j < name.size(); ++j)
      if (name[i] > name[j]) ++inversions;
  return inversions % 2;
}

}  // namespace testsupport
