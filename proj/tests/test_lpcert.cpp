#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "splitlp/enumerator.hpp"
#include "splitlp/lpcert.hpp"

using namespace splitlp;


TEST(Certify, AgreesWithVertexEnumerationOnSmallSystems) {
  std::mt19937_64 rng(101);
  int infeasible = 0, feasible = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const auto cs = oracle::random_system(rng);
    const bool truth = oracle::exactly_feasible(cs);
    const auto res = prove_infeasible(cs);
    if (truth) {
      ++feasible;
      EXPECT_EQ(res.verdict, ProofVerdict::ProvablyFeasible) << res.method << "\n" << system_to_string(cs);
      if (res.feasible_point) {
        EXPECT_TRUE(oracle::satisfies(cs, *res.feasible_point));
      }
    } else {
      ++infeasible;
      EXPECT_EQ(res.verdict, ProofVerdict::Certified) << res.method << "\n" << system_to_string(cs);
      if (res.certificate) {
        EXPECT_TRUE(verify_farkas(cs, *res.certificate));
      }
    }
  }
  // Both outcomes should be well represented.
  EXPECT_GT(infeasible, 500);
  EXPECT_GT(feasible, 500);
}

TEST(Certify, TamperedCertificateIsRejected) {
  ConstraintSystem cs;
  cs.variables = {"a", "b"};
  cs.add_row("s", {1, 1}, Relation::Equal, 1);
  cs.add_row("t", {1, 1}, Relation::GreaterEq, 2);
  cs.add_nonnegativity();
  const auto res = prove_infeasible(cs);
  ASSERT_TRUE(res.certified());
  auto cert = *res.certificate;
  EXPECT_TRUE(verify_farkas(cs, cert));
  cert.combined_rhs += 1;
  EXPECT_FALSE(verify_farkas(cs, cert));
  cert = *res.certificate;
  cert.multipliers[1] = -cert.multipliers[1] - 1;  // negative weight on a >= row
  EXPECT_FALSE(verify_farkas(cs, cert));
  cert.multipliers.pop_back();
  EXPECT_THROW(verify_farkas(cs, cert), DimensionError);
}

TEST(Certify, CertificateFileRoundTrip) {
  ConstraintSystem cs;
  cs.variables = {"a", "b", "c"};
  cs.add_row("s", {2, 1, 0}, Relation::Equal, 3);
  cs.add_row("t", {0, -1, 3}, Relation::GreaterEq, 7);
  cs.add_row("u", {-1, 0, -2}, Relation::GreaterEq, 1);
  cs.add_nonnegativity();
  const auto res = prove_infeasible(cs);
  ASSERT_TRUE(res.certified());
  std::stringstream ss;
  write_certificate(ss, "n7", *res.certificate);
  const auto back = read_certificate(ss);
  EXPECT_EQ(back.node_id, "n7");
  EXPECT_EQ(back.certificate.multipliers, res.certificate->multipliers);
  EXPECT_TRUE(verify_farkas(cs, back.certificate));

  std::stringstream sys;
  write_system(sys, cs);
  const auto cs2 = read_system(sys);
  EXPECT_EQ(system_to_string(cs2), system_to_string(cs));
}

TEST(Certify, MalformedCertificateFilesThrow) {
  std::istringstream empty("");
  EXPECT_THROW(read_certificate(empty), ParseError);
  std::istringstream no_tail("CERT x rows=2\n0 1/2\n");
  EXPECT_THROW(read_certificate(no_tail), ParseError);
  std::istringstream out_of_range("CERT x rows=2\n5 1\nCONTRADICTION 0 >= 1\n");
  EXPECT_THROW(read_certificate(out_of_range), ParseError);
}

TEST(Certify, TwoDimensionalCodeWithDistanceSixAndLengthEight) {
  // No [8,2,6] code exists; the unsplit LP already sees it.
  const CodeType type{8, 2, 6, false, {}};
  const auto built = build_constraint_system(type, FactSet{}, Configuration::base(8));
  ASSERT_FALSE(built.is_contradiction());
  const auto res = prove_infeasible(built.system->system);
  ASSERT_TRUE(res.certified()) << res.method;
  EXPECT_TRUE(verify_farkas(built.system->system, *res.certificate));
}

TEST(Certify, ExistingCodeIsFeasible) {
  // The [8,4,4] extended Hamming code exists.
  const CodeType type{8, 4, 4, true, {}};
  FactSet facts;
  facts.dual_min = 4;
  const auto built = build_constraint_system(type, facts, Configuration::base(8));
  ASSERT_FALSE(built.is_contradiction());
  const auto res = prove_infeasible(built.system->system);
  EXPECT_EQ(res.verdict, ProofVerdict::ProvablyFeasible) << res.method << " " << res.outcome.message;
}

TEST(Solver, TimeLimitGivesInconclusive) {
  const CodeType type{24, 7, 10, true, {}};
  Configuration cfg;
  cfg.partition = Partition({6, 6, 6, 6});
  const auto built = build_constraint_system(type, FactSet{}, cfg);
  ASSERT_FALSE(built.is_contradiction());
  SolveOptions opt;
  opt.time_limit_seconds = 1e-6;
  const auto out = solve_feasibility(built.system->system, opt);
  EXPECT_EQ(out.status, SolveStatus::Inconclusive);
  RetryPolicy policy;
  policy.solve = opt;
  EXPECT_EQ(prove_infeasible(built.system->system, policy).verdict, ProofVerdict::CertificationFailed);
}

TEST(Rationalize, ContinuedFractions) {
  const auto r = rationalize({0.333333333, -2.5, 0.0}, 1000);
  EXPECT_EQ(r[0], Rational(1, 3));
  EXPECT_EQ(r[1], Rational(-5, 2));
  EXPECT_EQ(r[2], Rational(0));
  const std::vector<Relation> rels{Relation::GreaterEq, Relation::GreaterEq, Relation::Equal};
  EXPECT_EQ(rationalize({0.5, -0.5, -0.5}, 10, &rels)[1], Rational(0));
  EXPECT_THROW(rationalize({1.0}, 0), DomainError);
}
