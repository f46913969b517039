#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "splitlp/enumerator.hpp"

using namespace splitlp;

namespace {

std::int64_t choose(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int dual_distance(const std::vector<std::uint64_t>& gens, int n) {
  int best = n + 1;
  for (auto v : oracle::dual_masks(gens, n)) {
    if (v) best = std::min(best, std::popcount(v));
  }
  return best;
}

// True counts of a code, one per surviving variable of the system.
std::vector<Rational> true_point(const SplitSystem& s, const std::vector<std::uint64_t>& words) {
  const auto counts = oracle::multiweight_counts(words, s.partition.parts());
  std::vector<Rational> x;
  for (const auto& v : s.variables) {
    auto it = counts.find(v.entries);
    x.emplace_back(it == counts.end() ? 0L : static_cast<long>(it->second));
  }
  return x;
}

// Every codeword's multiweight must still be a variable.
bool covers_support(const SplitSystem& s, const std::vector<std::uint64_t>& words) {
  for (const auto& [mw, c] : oracle::multiweight_counts(words, s.partition.parts())) {
    if (!s.variable_index(Multiweight{mw})) return false;
  }
  return true;
}

}  // namespace

TEST(Krawtchouk, SmallValuesAndOrthogonality) {
  EXPECT_EQ(krawtchouk(0, 3, 5), 1);
  EXPECT_EQ(krawtchouk(1, 2, 5), 1);   // n - 2x
  EXPECT_EQ(krawtchouk(2, 1, 4), 0);   // C(3,2) - 3*1
  EXPECT_EQ(krawtchouk(3, 0, 6), 20);
  // sum_x C(n,x) K_i(x) K_j(x) = 2^n C(n,i) [i == j]
  const int n = 7;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      std::int64_t s = 0;
      for (int x = 0; x <= n; ++x) s += choose(n, x) * krawtchouk(i, x, n) * krawtchouk(j, x, n);
      EXPECT_EQ(s, i == j ? (std::int64_t{1} << n) * choose(n, i) : 0) << i << "," << j;
    }
  }
}

TEST(SplitTransform, MatchesDualMultiweightsTimesCodeSize) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + trial % 10;
    const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    const auto gens = oracle::random_code(n, k, rng);
    const auto parts = oracle::random_parts(n, 4, rng);
    const Partition p(parts);
    const auto s = split_transform(distribution_of(oracle::code_from_masks(gens, n), p));
    const auto dual = oracle::multiweight_counts(oracle::dual_masks(gens, n), parts);
    const MultiweightIndexer ix(p);
    for (std::size_t i = 0; i < ix.count(); ++i) {
      const auto mw = ix.at(i);
      auto it = dual.find(mw.entries);
      const std::int64_t expect = (it == dual.end() ? 0 : it->second) << k;
      EXPECT_EQ(s.counts[i], expect) << "n=" << n << " k=" << k << " at " << mw.name();
    }
  }
}

TEST(SplitTransform, AppliedTwiceScalesByTwoToTheN) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + trial % 7;
    const auto gens = oracle::random_code(n, 2 + trial % 3, rng);
    const Partition p(oracle::random_parts(n, 3, rng));
    const auto d = distribution_of(oracle::code_from_masks(gens, n), p);
    const auto twice = split_transform(split_transform(d));
    for (std::size_t i = 0; i < d.counts.size(); ++i) EXPECT_EQ(twice.counts[i], d.counts[i] << n);
  }
}

TEST(BuildSystem, TrueDistributionSatisfiesEveryRow) {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 5 + trial % 8;
    const int k = 2 + trial % 4;
    if (k >= n) continue;
    const auto gens = oracle::random_code(n, k, rng);
    const auto words = oracle::codeword_masks(gens);
    int d = n;
    bool even = true;
    for (auto w : words) {
      if (w) d = std::min(d, std::popcount(w));
      if (std::popcount(w) % 2) even = false;
    }
    CodeType type{n, k, d, even, {}};
    FactSet facts;
    facts.dual_min = std::min(dual_distance(gens, n), n);
    Configuration cfg;
    cfg.partition = Partition(oracle::random_parts(n, 3, rng));
    const auto built = build_constraint_system(type, facts, cfg);
    ASSERT_FALSE(built.is_contradiction()) << built.contradiction;
    const auto& sys = *built.system;
    EXPECT_TRUE(covers_support(sys, words));
    EXPECT_TRUE(oracle::satisfies(sys.system, true_point(sys, words)));
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(BuildSystem, ConfigurationRowsAndDualRowsAreRespected) {
  // A code containing the low block word with the high block word in its dual,
  // seen through the partition 4,4.
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::uint64_t> gens{0x0F};
    while (gens.size() < 3) {
      const std::uint64_t g = rng() & 0xFF;
      if (std::popcount(g & 0xF0) % 2) continue;  // stay orthogonal to the high block
      gens.push_back(g);
      const auto ws = oracle::codeword_masks(gens);
      if (std::set<std::uint64_t>(ws.begin(), ws.end()).size() != ws.size()) gens.pop_back();
    }
    const auto words = oracle::codeword_masks(gens);
    int d = 8;
    for (auto w : words) {
      if (w) d = std::min(d, std::popcount(w));
    }
    CodeType type{8, 3, d, false, {}};
    Configuration cfg;
    cfg.partition = Partition({4, 4});
    cfg.rows = {parse_pattern("10")};
    cfg.dual_rows = {parse_pattern("01")};
    const auto built = build_constraint_system(type, FactSet{}, cfg);
    ASSERT_FALSE(built.is_contradiction()) << built.contradiction;
    const auto& sys = *built.system;
    EXPECT_TRUE(covers_support(sys, words));
    EXPECT_TRUE(oracle::satisfies(sys.system, true_point(sys, words)));
    // Odd intersection with the dual row removes the variable.
    EXPECT_FALSE(sys.variable_index(Multiweight{{0, 1}}));
    EXPECT_FALSE(sys.variable_index(Multiweight{{2, 3}}));
  }
}

TEST(BuildSystem, PrunesExcludedTotals) {
  CodeType type{8, 2, 4, true, {}};
  FactSet facts;
  facts.zero_weights = {6};
  Configuration cfg;
  cfg.partition = Partition({5, 3});
  const auto built = build_constraint_system(type, facts, cfg);
  ASSERT_FALSE(built.is_contradiction());
  for (const auto& v : built.system->variables) {
    const int t = v.total();
    EXPECT_TRUE(t == 0 || t == 4 || t == 8) << v.name();
  }
  EXPECT_TRUE(built.system->variable_index(Multiweight{{2, 2}}));
}

TEST(BuildSystem, ZeroVariableFactsCoarsen) {
  CodeType type{8, 2, 3, false, {}};
  FactSet facts;
  facts.zero_variables.push_back(VariableFact{Partition({4, 4}), {Multiweight{{3, 1}}}});
  Configuration cfg;
  cfg.partition = Partition({2, 2, 4});
  const auto built = build_constraint_system(type, facts, cfg);
  ASSERT_FALSE(built.is_contradiction());
  EXPECT_FALSE(built.system->variable_index(Multiweight{{2, 1, 1}}));
  EXPECT_FALSE(built.system->variable_index(Multiweight{{1, 2, 1}}));
  EXPECT_TRUE(built.system->variable_index(Multiweight{{2, 1, 0}}));
}

TEST(BuildSystem, ReportsImmediateContradictions) {
  CodeType type{8, 2, 4, true, {}};
  FactSet facts;
  facts.nonzero_weights = {5};
  EXPECT_TRUE(build_constraint_system(type, facts, Configuration::base(8)).is_contradiction());

  Configuration cfg;
  cfg.partition = Partition({2, 6});
  cfg.rows = {parse_pattern("10")};  // a weight-2 word in a d = 4 code
  EXPECT_TRUE(build_constraint_system(type, FactSet{}, cfg).is_contradiction());
}

TEST(BuildSystem, RejectsMismatchedLength) {
  CodeType type{8, 2, 4, false, {}};
  EXPECT_THROW(build_constraint_system(type, FactSet{}, Configuration::base(7)), DimensionError);
}
