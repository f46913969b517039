#include <gtest/gtest.h>

#include <random>

#include "catalog.hpp"
#include "splitlp/groups.hpp"

using namespace splitlp;


TEST(GroupOrder, ListedOrdersThreeWays) {
  const auto recs = oracle::all_records();
  ASSERT_EQ(recs.size(), 8u);
  const std::vector<std::uint64_t> expected{1008, 1920, 240, 384, 8, 48, 2, 8};
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& r = recs[i];
    EXPECT_EQ(r.claimed, expected[i]) << r.where;
    GeneratorSet gens;
    std::vector<oracle::Perm> plain;
    for (const auto& g : r.generators) {
      gens.add(Permutation::from_one_based(g));
      plain.push_back(oracle::zero_based(g));
    }
    const auto n = static_cast<std::size_t>(std::accumulate(r.config.parts.begin(), r.config.parts.end(), 0));
    EXPECT_EQ(oracle::closure(plain, n).size(), expected[i]) << r.where;
    EXPECT_EQ(group_order_closure(gens), expected[i]) << r.where;
    EXPECT_EQ(group_order_schreier_sims(gens), expected[i]) << r.where;
    EXPECT_EQ(group_order(gens), expected[i]) << r.where;
  }
}

TEST(GroupOrder, LargeGroupsUseTheStabilizerChain) {
  // S_12 and the cyclic group of order 30 on 10 points.
  GeneratorSet sym;
  std::vector<int> cyc(12), swap(12);
  std::iota(cyc.begin(), cyc.end(), 1);
  std::rotate(cyc.begin(), cyc.begin() + 1, cyc.end());
  std::iota(swap.begin(), swap.end(), 1);
  std::swap(swap[0], swap[1]);
  sym.add(Permutation::from_one_based(cyc));
  sym.add(Permutation::from_one_based(swap));
  EXPECT_EQ(group_order_schreier_sims(sym), 479001600u);
  EXPECT_EQ(group_order(sym), 479001600u);
  EXPECT_THROW(group_order_closure(sym, 1000), CapacityError);

  GeneratorSet c30;
  c30.add(Permutation::parse("2,3,1,5,6,7,8,4,10,9"));  // 3-cycle, 5-cycle, 2-cycle
  EXPECT_EQ(group_order(c30), 30u);
}

TEST(Automorphisms, LibraryAgreesWithDirectCheck) {
  int total = 0, verified = 0;
  std::vector<std::string> failing;
  for (const auto& r : oracle::all_records()) {
    const Configuration cfg = script::to_configuration(r.config);
    for (const auto& g : r.generators) {
      const bool lib = verify_automorphism(cfg, Permutation::from_one_based(g));
      EXPECT_EQ(lib, oracle::preserves_config(r.config, oracle::zero_based(g))) << r.where;
      ++total;
      if (lib) {
        ++verified;
      } else {
        failing.push_back(r.where);
      }
    }
  }
  // Seven lines in the classification script, seventeen in the catalog.
  EXPECT_EQ(total, 24);
  // Three catalog permutations do not preserve the codes they are printed
  // with (one under [e], both under [f]); every other line verifies.
  EXPECT_EQ(verified, 21);
  ASSERT_EQ(failing.size(), 3u);
  EXPECT_NE(failing[0].find("[e]"), std::string::npos);
  EXPECT_NE(failing[1].find("[f]"), std::string::npos);
  EXPECT_NE(failing[2].find("[f]"), std::string::npos);
}

TEST(Automorphisms, BlockStructureMatters) {
  Configuration cfg;
  cfg.partition = Partition({2, 2, 1});
  cfg.rows = {parse_pattern("110")};
  // Swapping the two size-2 blocks keeps the subcode.
  const auto swap_blocks = Permutation::parse("3,4,1,2,5");
  EXPECT_TRUE(verify_automorphism(cfg, swap_blocks));
  const auto action = induced_block_action(cfg, swap_blocks);
  EXPECT_EQ(action.block_perm, (std::vector<std::size_t>{1, 0, 2}));
  const auto orbit = orbit_sum(Multiweight{{2, 0, 1}}, {action});
  EXPECT_EQ(orbit.size(), 2u);
  // Mixing a size-2 block with the singleton is not allowed.
  EXPECT_FALSE(verify_automorphism(cfg, Permutation::parse("1,5,3,4,2")));
  EXPECT_THROW(induced_block_action(cfg, Permutation::parse("1,5,3,4,2")), DomainError);
  EXPECT_THROW(verify_automorphism(cfg, Permutation::parse("2,1")), DimensionError);
}

TEST(Permutation, ParsingAndComposition) {
  const auto p = Permutation::parse("2,3,1");
  const auto q = Permutation::parse("1,3,2");
  EXPECT_EQ((p * q).str(), "2,1,3");  // q first
  EXPECT_TRUE((p * p.inverse()).is_identity());
  EXPECT_THROW(Permutation::parse("1,1,2"), DomainError);
  EXPECT_THROW(Permutation::parse("1,,2"), ParseError);
  EXPECT_EQ(p.apply(BitWord::parse("100")).str(), "010");
}

TEST(StochasticSearch, FindsVerifiedAutomorphisms) {
  const auto recs = oracle::collect("codes_24_7_10.sp");
  const Configuration cfg = script::to_configuration(recs[1].config);  // order 384
  SearchOptions opt;
  opt.seed = 7;
  opt.restarts = 40;
  opt.iterations = 20000;
  opt.max_results = 4;
  SearchStats stats;
  const auto found = stochastic_automorphism_search(cfg, opt, &stats);
  ASSERT_FALSE(found.empty());
  for (const auto& g : found) EXPECT_TRUE(verify_automorphism(cfg, g));
  EXPECT_FALSE(found.front().is_identity());
  EXPECT_LE(stats.iterations, opt.restarts * opt.iterations);
}

TEST(StochasticSearch, RecoversAnIsomorphism) {
  std::mt19937_64 rng(3);
  const auto gens = oracle::random_code(12, 4, rng);
  const Code a = oracle::code_from_masks(gens, 12);
  std::vector<int> v(12);
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  const Permutation hidden(v);
  const Code b(hidden.apply(a.generators()));
  SearchOptions opt;
  opt.seed = 11;
  const auto p = stochastic_isomorphism_search(a, b, opt);
  ASSERT_TRUE(p);
  EXPECT_TRUE(verify_isomorphism(a, b, *p));
}
