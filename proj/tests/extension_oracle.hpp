#ifndef SPLITLP_TESTS_EXTENSION_ORACLE_HPP
#define SPLITLP_TESTS_EXTENSION_ORACLE_HPP

// Brute-force orbit enumeration for small extension problems.

#include <bit>
#include <optional>

#include "oracles.hpp"
#include "splitlp/extend.hpp"

namespace oracle {

using splitlp::Column;
using splitlp::ExtensionProblem;
using splitlp::LexSequence;
using splitlp::Permutation;


struct Tiny {
  ExtensionProblem problem;
  std::vector<std::uint64_t> base_gens;
  int n0 = 0;
  std::set<Perm> group;
};

// All coordinate permutations of the base code that preserve it.
inline std::vector<Perm> brute_automorphisms(const std::vector<std::uint64_t>& gens, int n) {
  const auto words = word_set(gens);
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do {
    bool ok = true;
    for (auto g : gens) {
      if (!words.count(permute_mask(g, p))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::optional<Tiny> make_tiny(std::mt19937_64& rng) {
  Tiny t;
  const int s = 1 + static_cast<int>(rng() % 3);
  const int k = 2 + static_cast<int>(rng() % 3);  // redundancy of the base code
  t.n0 = s + k;
  t.base_gens = random_code(t.n0, s, rng);
  int d = t.n0;
  bool even = true;
  for (auto w : codeword_masks(t.base_gens)) {
    if (w) d = std::min(d, std::popcount(w));
    if (std::popcount(w) % 2) even = false;
  }
  const auto auts = brute_automorphisms(t.base_gens, t.n0);
  std::vector<Perm> chosen;
  for (int i = 0; i < 2 && auts.size() > 1; ++i) chosen.push_back(auts[rng() % auts.size()]);
  t.group = closure(chosen, static_cast<std::size_t>(t.n0));
  if (t.group.size() > 200) return std::nullopt;

  t.problem.base = code_from_masks(t.base_gens, t.n0);
  t.problem.steps = 1 + static_cast<int>(rng() % 3);
  t.problem.min_weight = std::max(1, d - static_cast<int>(rng() % 2));
  t.problem.require_even = even && rng() % 2 == 0;
  for (const auto& g : chosen) t.problem.automorphisms.add(Permutation(g));
  t.problem.automorphisms.degree = static_cast<std::size_t>(t.n0);
  return t;
}

// Words of the dual of the row space of [M | columns], by brute force.
inline std::vector<std::uint64_t> extended_words(const BitMatrix& m, const LexSequence& seq, int n0) {
  const std::size_t k = m.rows();
  const int n = n0 + static_cast<int>(seq.size());
  std::vector<std::uint64_t> checks;
  for (std::size_t i = 0; i < k; ++i) {
    std::uint64_t row = mask_of(m.row(i));
    for (std::size_t j = 0; j < seq.size(); ++j) {
      if ((seq[j] >> (k - 1 - i)) & 1u) row |= std::uint64_t{1} << (n0 + static_cast<int>(j));
    }
    checks.push_back(row);
  }
  return dual_masks(checks, n);
}

inline bool admissible_words(const std::vector<std::uint64_t>& words, int min_weight, bool even) {
  for (auto w : words) {
    if (!w) continue;
    if (std::popcount(w) < min_weight) return false;
    if (even && std::popcount(w) % 2) return false;
  }
  return true;
}

// Smallest sorted image of the word set under G on the base coordinates
// and every permutation of the r new ones.
inline std::vector<std::uint64_t> canonical(const std::vector<std::uint64_t>& words, const std::set<Perm>& group, int n0, int r) {
  std::vector<int> tail(static_cast<std::size_t>(r));
  std::iota(tail.begin(), tail.end(), n0);
  std::vector<std::uint64_t> best;
  for (const auto& g : group) {
    std::vector<int> t = tail;
    do {
      Perm full(g);
      full.insert(full.end(), t.begin(), t.end());
      std::vector<std::uint64_t> img;
      for (auto w : words) img.push_back(permute_mask(w, full));
      std::sort(img.begin(), img.end());
      if (best.empty() || img < best) best = img;
    } while (std::next_permutation(t.begin(), t.end()));
  }
  return best;
}

inline void all_sorted_sequences(std::size_t len, Column limit, LexSequence& cur, std::vector<LexSequence>& out) {
  if (cur.size() == len) {
    out.push_back(cur);
    return;
  }
  for (Column c = cur.empty() ? 0 : cur.back(); c < limit; ++c) {
    cur.push_back(c);
    all_sorted_sequences(len, limit, cur, out);
    cur.pop_back();
  }
}


/// Checks one tiny problem against brute force: the final level must hold
/// exactly one sequence per orbit of admissible extensions, and every
/// prefix of a kept sequence must be kept one level down. Returns the
/// number of orbits, or nullopt on a mismatch (with `why` filled in).
inline std::optional<std::size_t> check_tiny(const Tiny& t, std::string& why) {
  const auto& p = t.problem;
  const int r = p.steps;
  const BitMatrix m = splitlp::extension_matrix(p.base);
  std::vector<LexSequence> seqs;
  LexSequence cur;
  all_sorted_sequences(static_cast<std::size_t>(r), Column{1} << m.rows(), cur, seqs);
  std::set<std::vector<std::uint64_t>> expected;
  for (const auto& seq : seqs) {
    const auto words = extended_words(m, seq, t.n0);
    if (admissible_words(words, p.min_weight, p.require_even)) expected.insert(canonical(words, t.group, t.n0, r));
  }
  const auto res = splitlp::run_extension_search(p);
  if (!res.full_group) {
    why = "group closure was capped";
    return std::nullopt;
  }
  if (static_cast<int>(res.levels.size()) < r + 1) {
    if (!expected.empty()) {
      why = "search stopped early but orbits exist";
      return std::nullopt;
    }
    return 0;
  }
  std::set<std::vector<std::uint64_t>> got;
  for (const auto& seq : res.final_level().sequences) {
    const auto words = extended_words(m, seq, t.n0);
    if (!admissible_words(words, p.min_weight, p.require_even)) {
      why = "inadmissible sequence kept";
      return std::nullopt;
    }
    if (!got.insert(canonical(words, t.group, t.n0, r)).second) {
      why = "two sequences in one orbit";
      return std::nullopt;
    }
  }
  if (got != expected) {
    why = "orbit sets differ: " + std::to_string(got.size()) + " found, " + std::to_string(expected.size()) + " expected";
    return std::nullopt;
  }
  for (int j = 1; j <= r; ++j) {
    const auto& level = res.levels[static_cast<std::size_t>(j)].sequences;
    for (const auto& seq : res.final_level().sequences) {
      const LexSequence prefix(seq.begin(), seq.begin() + j);
      if (!std::binary_search(level.begin(), level.end(), prefix)) {
        why = "prefix missing at level " + std::to_string(j);
        return std::nullopt;
      }
    }
  }
  return got.size();
}

}  // namespace oracle

#endif  // SPLITLP_TESTS_EXTENSION_ORACLE_HPP
