#ifndef SPLITLP_TESTS_ORACLES_HPP
#define SPLITLP_TESTS_ORACLES_HPP

// Slow, direct reference computations used to check the library.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "splitlp/constraints.hpp"
#include "splitlp/gf2.hpp"
#include "splitlp/rational.hpp"

namespace oracle {

using splitlp::BitMatrix;
using splitlp::BitWord;
using splitlp::Code;
using splitlp::Partition;
using splitlp::Rational;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline BitWord word_from_mask(std::uint64_t mask, int n) {
  BitWord w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w.set(static_cast<std::size_t>(i), (mask >> i) & 1u);
  return w;
}

/// All 2^k codewords as bit masks, by summing every subset of generators.
inline std::vector<std::uint64_t> codeword_masks(const std::vector<std::uint64_t>& gens) {
  std::vector<std::uint64_t> out;
  const std::size_t k = gens.size();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); ++s) {
    std::uint64_t w = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if ((s >> i) & 1u) w ^= gens[i];
    }
    out.push_back(w);
  }
  return out;
}

inline std::uint64_t mask_of(const BitWord& w) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w.get(i)) m |= std::uint64_t{1} << i;
  }
  return m;
}

/// The dual code by testing every vector of length n against the generators.
inline std::vector<std::uint64_t> dual_masks(const std::vector<std::uint64_t>& gens, int n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    bool ok = true;
    for (auto g : gens) {
      if (std::popcount(g & v) % 2) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(v);
  }
  return out;
}

/// Multiweight counts keyed by the weight vector.
inline std::map<std::vector<int>, std::int64_t> multiweight_counts(const std::vector<std::uint64_t>& words, const std::vector<int>& parts) {
  std::map<std::vector<int>, std::int64_t> out;
  for (auto w : words) {
    std::vector<int> mw;
    int pos = 0;
    for (int p : parts) {
      int c = 0;
      for (int i = pos; i < pos + p; ++i) c += (w >> i) & 1u;
      mw.push_back(c);
      pos += p;
    }
    ++out[mw];
  }
  return out;
}

/// Random k generators of length n with full rank.
inline std::vector<std::uint64_t> random_code(int n, int k, std::mt19937_64& rng) {
  for (;;) {
    std::vector<std::uint64_t> g;
    std::uniform_int_distribution<std::uint64_t> d(1, (std::uint64_t{1} << n) - 1);
    for (int i = 0; i < k; ++i) g.push_back(d(rng));
    const auto words = codeword_masks(g);
    if (std::set<std::uint64_t>(words.begin(), words.end()).size() == words.size()) return g;
  }
}

inline Code code_from_masks(const std::vector<std::uint64_t>& gens, int n) {
  BitMatrix m(static_cast<std::size_t>(n));
  for (auto g : gens) m.push_back(word_from_mask(g, n));
  return Code(m);
}

inline std::vector<int> random_parts(int n, int max_blocks, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> rb(1, std::min(max_blocks, n));
  const int r = rb(rng);
  std::vector<int> cuts(static_cast<std::size_t>(n - 1));
  std::iota(cuts.begin(), cuts.end(), 1);
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(static_cast<std::size_t>(r - 1));
  std::sort(cuts.begin(), cuts.end());
  std::vector<int> parts;
  int prev = 0;
  for (int c : cuts) {
    parts.push_back(c - prev);
    prev = c;
  }
  parts.push_back(n - prev);
  return parts;
}

// ---------------------------------------------------------------------------
// Exact LP feasibility for tiny systems by vertex enumeration.

/// Solves a square rational system; nullopt when singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

inline bool satisfies(const splitlp::ConstraintSystem& cs, const std::vector<Rational>& x) {
  for (const auto& v : x) {
    if (v < 0) return false;
  }
  for (const auto& r : cs.rows) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += Rational(static_cast<long>(r.coeffs[j])) * x[j];
    const Rational rhs(static_cast<long>(r.rhs));
    if (r.relation == splitlp::Relation::Equal ? lhs != rhs : lhs < rhs) return false;
  }
  return true;
}

/// The region {x >= 0, rows} is pointed, so it is nonempty iff it has a
/// vertex: some n independent tight constraints (rows or x_j = 0) whose
/// solution satisfies everything.
inline bool exactly_feasible(const splitlp::ConstraintSystem& cs) {
  const std::size_t n = cs.variables.size();
  if (n == 0) return satisfies(cs, {});
  std::vector<std::vector<Rational>> pool;
  std::vector<Rational> rhs;
  for (const auto& r : cs.rows) {
    std::vector<Rational> a;
    for (auto c : r.coeffs) a.emplace_back(static_cast<long>(c));
    pool.push_back(a);
    rhs.emplace_back(static_cast<long>(r.rhs));
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> a(n, 0);
    a[j] = 1;
    pool.push_back(a);
    rhs.emplace_back(0);
  }
  const std::size_t m = pool.size();
  std::vector<bool> pick(m, false);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(n), pick.end(), true);
  do {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (std::size_t i = 0; i < m; ++i) {
      if (pick[i]) {
        a.push_back(pool[i]);
        b.push_back(rhs[i]);
      }
    }
    if (auto x = solve_square(a, b); x && satisfies(cs, *x)) return true;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return false;
}

/// A random system on at most four nonnegative variables.
inline splitlp::ConstraintSystem random_system(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nvars(1, 4), nrows(1, 4), coef(-3, 3), rhs(-2, 4), coin(0, 2);
  splitlp::ConstraintSystem cs;
  const int n = nvars(rng);
  for (int j = 0; j < n; ++j) cs.variables.push_back("v" + std::to_string(j));
  const int m = nrows(rng);
  for (int i = 0; i < m; ++i) {
    std::vector<std::int64_t> c;
    for (int j = 0; j < n; ++j) c.push_back(coef(rng));
    cs.add_row("r" + std::to_string(i), c, coin(rng) == 0 ? splitlp::Relation::Equal : splitlp::Relation::GreaterEq, rhs(rng));
  }
  cs.add_nonnegativity();
  return cs;
}

// ---------------------------------------------------------------------------
// Permutation groups by brute force.

using Perm = std::vector<int>;  // 0-based images

inline Perm compose(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i])];
  return c;
}

inline std::set<Perm> closure(const std::vector<Perm>& gens, std::size_t n) {
  Perm id(n);
  std::iota(id.begin(), id.end(), 0);
  std::set<Perm> seen{id};
  std::vector<Perm> todo{id};
  while (!todo.empty()) {
    Perm cur = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      Perm nx = compose(g, cur);
      if (seen.insert(nx).second) todo.push_back(nx);
    }
  }
  return seen;
}

/// Moves coordinate i of every word to position p[i].
inline std::uint64_t permute_mask(std::uint64_t w, const Perm& p) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if ((w >> i) & 1u) out |= std::uint64_t{1} << p[i];
  }
  return out;
}

inline std::set<std::uint64_t> word_set(const std::vector<std::uint64_t>& gens) {
  const auto v = codeword_masks(gens);
  return {v.begin(), v.end()};
}

}  // namespace oracle

#endif  // SPLITLP_TESTS_ORACLES_HPP
