#include "domkit/nil2.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace domkit {

namespace {

// All exponent arithmetic is exact: overflow throws instead of wrapping.
long long cadd(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw nil2_error("exponent overflow in addition");
  return r;
}

long long cmul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw nil2_error("exponent overflow in multiplication");
  return r;
}

long long canon(long long v, long long modulus) {
  if (modulus == 0) return v;
  long long r = v % modulus;
  if (r < 0) r += modulus;
  return r;
}

}  // namespace

Nil2Params Nil2Params::K(long long a0, long long b0, long long k0) {
  Nil2Params p;
  p.rank = 2;
  p.gen_moduli = {a0, b0};
  p.comm_moduli = {k0};
  p.validate();
  return p;
}

Nil2Params Nil2Params::uniform(int rank, std::vector<long long> gen_moduli, long long k) {
  Nil2Params p;
  p.rank = rank;
  p.gen_moduli = std::move(gen_moduli);
  p.comm_moduli.assign(static_cast<size_t>(rank) * (rank - 1) / 2, k);
  p.validate();
  return p;
}

void Nil2Params::validate() const {
  if (rank < 1) throw nil2_error("nil2 rank must be positive");
  if (gen_moduli.size() != static_cast<size_t>(rank)) {
    throw nil2_error("nil2 params: expected " + std::to_string(rank) + " generator moduli");
  }
  if (comm_moduli.size() != static_cast<size_t>(rank) * (rank - 1) / 2) {
    throw nil2_error("nil2 params: wrong number of commutator moduli");
  }
  for (long long m : gen_moduli) {
    if (m < 0) throw nil2_error("nil2 params: moduli must be nonnegative");
  }
  for (int i = 0; i < rank; ++i) {
    for (int j = i + 1; j < rank; ++j) {
      long long k = comm_modulus(i, j);
      if (k < 0) throw nil2_error("nil2 params: moduli must be nonnegative");
      if (k == 0) {
        if (gen_moduli[i] != 0 || gen_moduli[j] != 0) {
          throw nil2_error("nil2 params: commutator modulus 0 for pair (" + std::to_string(i + 1) +
                           "," + std::to_string(j + 1) + ") requires both generator moduli 0");
        }
      } else {
        for (int t : {i, j}) {
          if (gen_moduli[t] != 0 && gen_moduli[t] % k != 0) {
            throw nil2_error("nil2 params: commutator modulus " + std::to_string(k) +
                             " must divide generator modulus " + std::to_string(gen_moduli[t]));
          }
        }
      }
    }
  }
}

int Nil2Params::pair_index(int i, int j) const {
  // pairs (0,1),(0,2),...,(0,m-1),(1,2),... in lex order
  return i * rank - i * (i + 1) / 2 + (j - i - 1);
}

std::string Nil2Params::gen_name(int i) const {
  if (rank == 2) return i == 0 ? "x" : "y";
  return "z" + std::to_string(i + 1);
}

int Nil2Params::gen_index(const std::string& name) const {
  for (int i = 0; i < rank; ++i) {
    if (gen_name(i) == name) return i;
  }
  return -1;
}

Nil2Element nil2_identity(const Nil2Params& params) {
  Nil2Element e;
  e.params = params;
  e.gen_exps.assign(params.gen_moduli.size(), 0);
  e.comm_exps.assign(params.comm_moduli.size(), 0);
  return e;
}

Nil2Element nil2_generator(const Nil2Params& params, int i) {
  if (i < 0 || i >= params.rank) throw nil2_error("generator index out of range");
  Nil2Element e = nil2_identity(params);
  e.gen_exps[i] = canon(1, params.gen_moduli[i]);
  return e;
}

Nil2Element nil2_triple(const Nil2Params& params, long long a, long long b, long long c) {
  if (params.rank != 2) throw nil2_error("nil2_triple requires rank 2");
  Nil2Element e = nil2_identity(params);
  e.gen_exps[0] = canon(a, params.gen_moduli[0]);
  e.gen_exps[1] = canon(b, params.gen_moduli[1]);
  e.comm_exps[0] = canon(c, params.comm_moduli[0]);
  return e;
}

static void check_same_params(const Nil2Element& a, const Nil2Element& b) {
  if (!(a.params == b.params)) throw nil2_error("nil2 params mismatch between operands");
}

Nil2Element collect(const Word& w, const Nil2Params& params) {
  params.validate();
  Nil2Element acc = nil2_identity(params);
  for (const auto& syl : w.syllables()) {
    int i = params.gen_index(syl.gen.name);
    if (i < 0) throw nil2_error("collect: unknown generator '" + syl.gen.name + "'");
    acc = mul(acc, pow(nil2_generator(params, i), syl.exp));
  }
  return acc;
}

// Collection law, frozen after deriving the correction term against the
// Heisenberg matrix oracle (the oracle test stays in the suite):
//   (z^a K^c)(z^b K^d) has commutator exponent c_ij + d_ij - a_j * b_i
// because moving z_i^{b_i} left past z_j^{a_j} (i < j) costs [z_i,z_j]^(-a_j b_i).
Nil2Element mul(const Nil2Element& a, const Nil2Element& b) {
  check_same_params(a, b);
  const Nil2Params& p = a.params;
  Nil2Element r = nil2_identity(p);
  for (int i = 0; i < p.rank; ++i) {
    r.gen_exps[i] = canon(cadd(a.gen_exps[i], b.gen_exps[i]), p.gen_moduli[i]);
  }
  for (int i = 0; i < p.rank; ++i) {
    for (int j = i + 1; j < p.rank; ++j) {
      int idx = p.pair_index(i, j);
      long long v = cadd(a.comm_exps[idx], b.comm_exps[idx]);
      v = cadd(v, -cmul(a.gen_exps[j], b.gen_exps[i]));
      r.comm_exps[idx] = canon(v, p.comm_moduli[idx]);
    }
  }
  return r;
}

Nil2Element inv(const Nil2Element& a) {
  const Nil2Params& p = a.params;
  Nil2Element r = nil2_identity(p);
  for (int i = 0; i < p.rank; ++i) {
    r.gen_exps[i] = canon(-a.gen_exps[i], p.gen_moduli[i]);
  }
  for (int i = 0; i < p.rank; ++i) {
    for (int j = i + 1; j < p.rank; ++j) {
      int idx = p.pair_index(i, j);
      long long v = cadd(-a.comm_exps[idx], -cmul(a.gen_exps[i], a.gen_exps[j]));
      r.comm_exps[idx] = canon(v, p.comm_moduli[idx]);
    }
  }
  return r;
}

Nil2Element pow(const Nil2Element& a, long long n) {
  Nil2Element base = n < 0 ? inv(a) : a;
  unsigned long long k = n < 0 ? -static_cast<unsigned long long>(n) : static_cast<unsigned long long>(n);
  Nil2Element acc = nil2_identity(a.params);
  while (k > 0) {
    if (k & 1) acc = mul(acc, base);
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return acc;
}

Nil2Element commutator(const Nil2Element& a, const Nil2Element& b) {
  return mul(mul(inv(a), inv(b)), mul(a, b));
}

bool is_identity(const Nil2Element& a) {
  auto zero = [](long long v) { return v == 0; };
  return std::all_of(a.gen_exps.begin(), a.gen_exps.end(), zero) &&
         std::all_of(a.comm_exps.begin(), a.comm_exps.end(), zero);
}

long long order(const Nil2Element& a) {
  const Nil2Params& p = a.params;
  for (int i = 0; i < p.rank; ++i) {
    if (a.gen_exps[i] != 0 && p.gen_moduli[i] == 0) return 0;
  }
  for (size_t idx = 0; idx < a.comm_exps.size(); ++idx) {
    if (a.comm_exps[idx] != 0 && p.comm_moduli[idx] == 0) return 0;
  }
  // Everything with nonzero exponent sits in a finite modulus, so iterating
  // up to twice the product of the relevant moduli must reach the identity.
  long long bound = 2;
  for (int i = 0; i < p.rank; ++i) {
    if (a.gen_exps[i] != 0) bound = cmul(bound, p.gen_moduli[i]);
  }
  for (int i = 0; i < p.rank; ++i) {
    for (int j = i + 1; j < p.rank; ++j) {
      int idx = p.pair_index(i, j);
      bool relevant = a.comm_exps[idx] != 0 || (a.gen_exps[i] != 0 && a.gen_exps[j] != 0);
      if (relevant && p.comm_moduli[idx] != 0) bound = cmul(bound, p.comm_moduli[idx]);
    }
  }
  if (bound > 10000000) throw nil2_error("order computation too large");
  Nil2Element acc = a;
  for (long long n = 1; n <= bound; ++n) {
    if (is_identity(acc)) return n;
    acc = mul(acc, a);
  }
  throw nil2_error("order iteration failed to terminate");  // unreachable
}

Nil2Element kill_subset(const Nil2Element& a, const std::vector<int>& keep) {
  const Nil2Params& p = a.params;
  std::vector<bool> kept(p.rank, false);
  for (int i : keep) {
    if (i < 0 || i >= p.rank) throw nil2_error("kill_subset: index out of range");
    kept[i] = true;
  }
  Nil2Element r = a;
  for (int i = 0; i < p.rank; ++i) {
    if (!kept[i]) r.gen_exps[i] = 0;
  }
  for (int i = 0; i < p.rank; ++i) {
    for (int j = i + 1; j < p.rank; ++j) {
      if (!kept[i] || !kept[j]) r.comm_exps[p.pair_index(i, j)] = 0;
    }
  }
  return r;
}

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

bool member_subgroup_p(const Nil2Element& a, long long p) {
  if (a.params.rank != 2) throw nil2_error("member_subgroup_p requires rank 2");
  if (!is_prime(p)) throw nil2_error(std::to_string(p) + " is not prime");
  return a.gen_exps[0] % p == 0 && a.gen_exps[1] % p == 0 && a.comm_exps[0] % (p * p) == 0;
}

namespace {

constexpr long long kMaxRealizedOrder = 4096;

struct TupleSpace {
  std::vector<long long> radices;
  long long total = 1;

  explicit TupleSpace(const Nil2Params& p) {
    radices.insert(radices.end(), p.gen_moduli.begin(), p.gen_moduli.end());
    radices.insert(radices.end(), p.comm_moduli.begin(), p.comm_moduli.end());
    for (long long r : radices) total = cmul(total, r);
  }

  long long index_of(const Nil2Element& e) const {
    long long idx = 0;
    size_t c = 0;
    for (long long v : e.gen_exps) idx = idx * radices[c++] + v;
    for (long long v : e.comm_exps) idx = idx * radices[c++] + v;
    return idx;
  }

  Nil2Element element_of(long long idx, const Nil2Params& p) const {
    std::vector<long long> coords(radices.size());
    for (size_t c = radices.size(); c-- > 0;) {
      coords[c] = idx % radices[c];
      idx /= radices[c];
    }
    Nil2Element e = nil2_identity(p);
    std::copy(coords.begin(), coords.begin() + p.rank, e.gen_exps.begin());
    std::copy(coords.begin() + p.rank, coords.end(), e.comm_exps.begin());
    return e;
  }
};

}  // namespace

GroupPtr realize_finite(const Nil2Params& params) {
  params.validate();
  for (long long m : params.gen_moduli) {
    if (m == 0) throw nil2_error("realize_finite: infinite group (generator modulus 0)");
  }
  for (long long m : params.comm_moduli) {
    if (m == 0) throw nil2_error("realize_finite: infinite group (commutator modulus 0)");
  }
  TupleSpace space(params);
  if (space.total > kMaxRealizedOrder) {
    throw nil2_error("realize_finite: order " + std::to_string(space.total) + " exceeds cap " +
                     std::to_string(kMaxRealizedOrder));
  }
  const int n = static_cast<int>(space.total);

  std::vector<Nil2Element> elems;
  elems.reserve(n);
  std::vector<std::string> names;
  names.reserve(n);
  for (int i = 0; i < n; ++i) {
    elems.push_back(space.element_of(i, params));
    names.push_back(to_string(elems.back()));
  }

  std::vector<int> table(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      table[static_cast<size_t>(i) * n + j] = static_cast<int>(space.index_of(mul(elems[i], elems[j])));
    }
  }

  std::vector<int> generators;
  for (int i = 0; i < params.rank; ++i) {
    generators.push_back(static_cast<int>(space.index_of(nil2_generator(params, i))));
  }

  Presentation pres;
  pres.gen_count = params.rank;
  for (int i = 0; i < params.rank; ++i) pres.gen_names.push_back(params.gen_name(i));
  std::vector<Word> gens;
  for (int i = 0; i < params.rank; ++i) gens.push_back(Word::generator(GeneratorId(params.gen_name(i))));
  for (int i = 0; i < params.rank; ++i) {
    pres.relators.push_back(pow(gens[i], params.gen_moduli[i]));
  }
  for (int i = 0; i < params.rank; ++i) {
    for (int j = i + 1; j < params.rank; ++j) {
      pres.relators.push_back(pow(commutator(gens[i], gens[j]), params.comm_modulus(i, j)));
    }
  }
  for (int i = 0; i < params.rank; ++i) {
    for (int j = i + 1; j < params.rank; ++j) {
      for (int l = 0; l < params.rank; ++l) {
        pres.relators.push_back(commutator(commutator(gens[i], gens[j]), gens[l]));
      }
    }
  }
  pres.params_tag = to_string(params);

  return FiniteGroup::make(std::move(table), std::move(names), std::move(generators),
                           std::move(pres));
}

namespace {

using Mat3 = std::array<long long, 9>;

Mat3 mat_mul_mod(const Mat3& a, const Mat3& b, long long n) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      long long s = 0;
      for (int k = 0; k < 3; ++k) s += a[i * 3 + k] * b[k * 3 + j];
      c[i * 3 + j] = ((s % n) + n) % n;
    }
  }
  return c;
}

}  // namespace

GroupPtr heisenberg_oracle(long long n) {
  if (n < 1) throw nil2_error("heisenberg_oracle requires n >= 1");
  if (n > 16) throw nil2_error("heisenberg_oracle: n too large");
  const int order = static_cast<int>(n * n * n);

  auto matrix_of = [&](int idx) {
    long long g = idx % n;           // (1,3) entry
    long long b = (idx / n) % n;     // (2,3) entry
    long long a = idx / (n * n);     // (1,2) entry
    return Mat3{1, a, g, 0, 1, b, 0, 0, 1};
  };
  auto index_of = [&](const Mat3& m) {
    return static_cast<int>((m[1] * n + m[5]) * n + m[2]);
  };

  std::vector<int> table(static_cast<size_t>(order) * order);
  std::vector<std::string> names(order);
  for (int i = 0; i < order; ++i) {
    Mat3 mi = matrix_of(i);
    names[i] = "(" + std::to_string(mi[1]) + "," + std::to_string(mi[5]) + "," +
               std::to_string(mi[2]) + ")";
    for (int j = 0; j < order; ++j) {
      table[static_cast<size_t>(i) * order + j] = index_of(mat_mul_mod(mi, matrix_of(j), n));
    }
  }

  int x_idx = index_of(Mat3{1, 1, 0, 0, 1, 0, 0, 0, 1});
  int y_idx = index_of(Mat3{1, 0, 0, 0, 1, 1, 0, 0, 1});
  return FiniteGroup::make(std::move(table), std::move(names), {x_idx, y_idx});
}

std::string to_string(const Nil2Element& a) {
  std::string s = "(";
  bool first = true;
  for (long long v : a.gen_exps) {
    if (!first) s += ",";
    s += std::to_string(v);
    first = false;
  }
  for (long long v : a.comm_exps) {
    s += "," + std::to_string(v);
  }
  return s + ")";
}

std::string to_string(const Nil2Params& p) {
  if (p.rank == 2) {
    return "K(" + std::to_string(p.gen_moduli[0]) + "," + std::to_string(p.gen_moduli[1]) + "," +
           std::to_string(p.comm_moduli[0]) + ")";
  }
  std::string s = "nil2(" + std::to_string(p.rank) + ";";
  for (int i = 0; i < p.rank; ++i) s += (i ? "," : "") + std::to_string(p.gen_moduli[i]);
  s += ";" + std::to_string(p.comm_moduli.empty() ? 0 : p.comm_moduli[0]) + ")";
  return s;
}

namespace {

std::vector<long long> parse_int_list(const std::string& text, char sep) {
  std::vector<long long> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t next = text.find(sep, pos);
    std::string piece = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    // trim
    size_t a = piece.find_first_not_of(" \t");
    size_t b = piece.find_last_not_of(" \t");
    if (a == std::string::npos) throw nil2_error("empty integer in list: '" + text + "'");
    piece = piece.substr(a, b - a + 1);
    size_t used = 0;
    long long v;
    try {
      v = std::stoll(piece, &used);
    } catch (...) {
      throw nil2_error("bad integer '" + piece + "'");
    }
    if (used != piece.size()) throw nil2_error("bad integer '" + piece + "'");
    out.push_back(v);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  size_t b = s.find_last_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

}  // namespace

Nil2Params parse_nil2_params(const std::string& text) {
  std::string t = strip(text);
  if (t.starts_with("K(") && t.ends_with(")")) {
    auto vals = parse_int_list(t.substr(2, t.size() - 3), ',');
    if (vals.size() != 3) throw nil2_error("K(...) takes exactly three moduli");
    return Nil2Params::K(vals[0], vals[1], vals[2]);
  }
  if (t.starts_with("nil2(") && t.ends_with(")")) {
    std::string body = t.substr(5, t.size() - 6);
    size_t s1 = body.find(';');
    size_t s2 = body.rfind(';');
    if (s1 == std::string::npos || s2 == s1) throw nil2_error("nil2(m; e1,...,em; k) expected");
    long long m = parse_int_list(strip(body.substr(0, s1)), ',').at(0);
    auto moduli = parse_int_list(strip(body.substr(s1 + 1, s2 - s1 - 1)), ',');
    long long k = parse_int_list(strip(body.substr(s2 + 1)), ',').at(0);
    if (m < 1 || moduli.size() != static_cast<size_t>(m)) {
      throw nil2_error("nil2 params: rank does not match modulus list");
    }
    return Nil2Params::uniform(static_cast<int>(m), moduli, k);
  }
  auto vals = parse_int_list(t, ',');
  if (vals.size() != 3) throw nil2_error("expected K(a0,b0,k0), nil2(m;...;k) or a0,b0,k0");
  return Nil2Params::K(vals[0], vals[1], vals[2]);
}

Nil2Element parse_nil2_element(const std::string& text, const Nil2Params& params) {
  std::string t = strip(text);
  if (t.starts_with("(") && t.ends_with(")")) t = t.substr(1, t.size() - 2);
  auto vals = parse_int_list(t, ',');
  size_t expected = params.gen_moduli.size() + params.comm_moduli.size();
  if (vals.size() != expected) {
    throw nil2_error("element needs " + std::to_string(expected) + " coordinates, got " +
                     std::to_string(vals.size()));
  }
  Nil2Element e = nil2_identity(params);
  for (int i = 0; i < params.rank; ++i) e.gen_exps[i] = canon(vals[i], params.gen_moduli[i]);
  for (size_t c = 0; c < params.comm_moduli.size(); ++c) {
    e.comm_exps[c] = canon(vals[params.rank + c], params.comm_moduli[c]);
  }
  return e;
}

}  // namespace domkit
