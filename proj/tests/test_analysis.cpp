#include <gtest/gtest.h>

#include <cmath>

#include "fcl/analysis.hpp"

namespace fcl {
namespace {

BoundParams params(u64 p, u64 M, u64 N) {
  BoundParams b;
  b.p = p;
  b.m_window = {0, M};
  b.n_window = {0, N};
  b.t_window = {0, N};
  return b;
}

TEST(Analysis, TheoremIds) {
  for (Theorem t : all_theorems()) EXPECT_EQ(parse_theorem(to_string(t)), t);
  EXPECT_EQ(to_string(Theorem::CharSum), "B-CharSum");
  EXPECT_EQ(to_string(Theorem::BoundI), "B-I");
  EXPECT_THROW(parse_theorem("T9.9"), Error);
}

TEST(Analysis, RhsExamples) {
  EXPECT_NEAR(bound_rhs(Theorem::T2_1, params(101, 100, 100)), 1000.0, 1e-9);
  auto b = params(101, 16, 16);
  b.k = 3;
  EXPECT_NEAR(bound_rhs(Theorem::C2_2, b), std::pow(16.0, 2.0 + 5.0 / 12.0), 1e-9);
  b = params(101, 100, 100);
  b.ell = 2;
  EXPECT_NEAR(bound_rhs(Theorem::BoundI, b), std::pow(100.0, 3.25), 1e-3);
  EXPECT_NEAR(bound_rhs(Theorem::CharSum, b),
              std::pow(100.0, 0.75) * std::pow(101.0, 0.125) * std::pow(std::log(101.0), 0.25), 1e-9);
}

TEST(Analysis, T31ScalesLikePTo2Minus1Over24) {
  for (u64 p : {1009ULL, 10007ULL}) {
    auto b = params(p, p - 1, p - 1);
    b.k = b.ell = 2;
    const double rhs = bound_rhs(Theorem::T3_1, b);
    const double expected = std::pow(p - 1.0, 2 * (1 - 1.0 / 12)) * std::pow(double(p), 1.0 / 8);
    EXPECT_NEAR(rhs / expected, 1.0, 1e-12);
    // M = N = p - 1 ~ p gives total exponent 2 - 1/24
    EXPECT_NEAR(std::log(rhs) / std::log(double(p)), 2 - 1.0 / 24, 0.01);
  }
}

TEST(Analysis, Hypotheses) {
  auto b = params(101, 5, 100);
  EXPECT_THROW(bound_rhs(Theorem::T2_3, b), Error);  // M < N^(1/2)
  b = params(101, 100, 9);
  EXPECT_THROW(bound_rhs(Theorem::T2_3, b), Error);  // M > N^2
  b = params(101, 50, 50);
  EXPECT_GT(bound_rhs(Theorem::T2_3, b), 0.0);
  b.r = 3;
  b.s = 2;
  EXPECT_THROW(bound_rhs(Theorem::T4_1, b), Error);  // 2s > r
  b.s = 0;
  EXPECT_THROW(bound_rhs(Theorem::T4_1, b), Error);
  b.r = 1;
  b.s = 2;
  EXPECT_THROW(bound_rhs(Theorem::T4_4, b), Error);  // s > r
  b.s = 0;
  EXPECT_GT(bound_rhs(Theorem::T4_4, b), 0.0);
  b = params(100, 10, 10);
  EXPECT_THROW(bound_rhs(Theorem::T2_1, b), Error);
}

TEST(Analysis, EvaluateSmallCells) {
  auto b = params(7, 6, 6);
  auto r = evaluate_bound(Theorem::T2_1, b, EngineChoice::both);
  EXPECT_EQ(r.lhs_exact, "10");
  EXPECT_DOUBLE_EQ(r.lhs, 10.0);
  EXPECT_NEAR(r.ratio, 10.0 / std::pow(6.0, 1.5), 1e-12);
  r = evaluate_bound(Theorem::T2_3, b, EngineChoice::both);
  EXPECT_EQ(r.lhs_exact, "246");
  r = evaluate_bound(Theorem::BoundI, b, EngineChoice::both);
  EXPECT_EQ(r.lhs_exact, "10");
  EXPECT_THROW(evaluate_bound(Theorem::T4_1, b), Error);  // needs 2s <= r
  b.r = 2;
  r = evaluate_bound(Theorem::T4_1, b, EngineChoice::both);
  EXPECT_GT(r.lhs, 0.0);
}

TEST(Analysis, EvaluateDeviationTheorems) {
  auto b = params(7, 6, 6);
  auto r = evaluate_bound(Theorem::T4_2, b, EngineChoice::both);
  // Q_1 distribution 45,24,34,28,29,39,17 around 216/7
  EXPECT_NEAR(r.lhs, 45 - 216.0 / 7, 1e-12);
  r = evaluate_bound(Theorem::T4_3, b, EngineChoice::both);
  EXPECT_NEAR(r.lhs, 45 - 216.0 / 6, 1e-12);
  b.s = 0;
  r = evaluate_bound(Theorem::T4_4, b, EngineChoice::both);
  EXPECT_TRUE(std::isfinite(r.ratio));
  b.k = 2;
  r = evaluate_bound(Theorem::C2_2, b, EngineChoice::both);
  EXPECT_EQ(r.lhs_exact, "10");
}

TEST(Analysis, SpectralTheorems) {
  auto b = params(101, 100, 100);
  const auto r = evaluate_bound(Theorem::T3_1, b, EngineChoice::both);
  EXPECT_LT(r.ratio, 1.0);
  EXPECT_GT(r.lhs, 0.0);
  const auto c = evaluate_bound(Theorem::CharSum, b, EngineChoice::both);
  EXPECT_TRUE(std::isfinite(c.ratio));
}

TEST(Analysis, SweepOrderAndSkips) {
  const std::vector<u64> primes{199, 101, 27, 103};
  GridPoint g;
  const auto sweep = verify_sweep(Theorem::T2_1, primes, std::span<const GridPoint>(&g, 1));
  ASSERT_EQ(sweep.reports.size(), 3u);
  EXPECT_EQ(sweep.reports[0].params.p, 101u);
  EXPECT_EQ(sweep.reports[1].params.p, 103u);
  EXPECT_EQ(sweep.reports[2].params.p, 199u);
  ASSERT_EQ(sweep.skipped.size(), 1u);
  EXPECT_EQ(sweep.skipped[0].p, 27u);
  for (const auto& r : sweep.reports) EXPECT_TRUE(std::isfinite(r.ratio));
  EXPECT_TRUE(verify_sweep(Theorem::T2_1, {}, std::span<const GridPoint>(&g, 1)).reports.empty());
}

TEST(Analysis, SweepSerialAndParallelAgree) {
  const auto primes = primes_in_range(300, 400);
  GridPoint g;
  g.ell = 2;
  const auto a = verify_sweep(Theorem::T2_1, primes, std::span<const GridPoint>(&g, 1));
  for (const auto& r : a.reports) {
    const auto single = evaluate_bound(Theorem::T2_1, r.params);
    EXPECT_EQ(single.lhs_exact, r.lhs_exact);
  }
}

TEST(Analysis, DistinctStats) {
  const auto ctx = PrimeContext::make(7);
  const auto s = distinct_stats(FactorialWindow::build(ctx, 0, 6));
  EXPECT_EQ(s.distinct_count, 4u);
  EXPECT_NEAR(s.distinct_fraction, 4.0 / 7, 1e-15);
  EXPECT_NEAR(s.distinct_fraction + s.missed_fraction, 1.0, 1e-15);
  EXPECT_NEAR(s.reference, 1 - std::exp(-1.0), 1e-15);
  EXPECT_EQ(distinct_stats(FactorialWindow::build(ctx, 2, 1)).distinct_count, 1u);
  const auto big = distinct_stats(FactorialWindow::build(PrimeContext::make(1009), 0, 1008));
  EXPECT_GE(big.missed_fraction, 1.0 / 1009);
}

TEST(Analysis, ErdosTuranFormula) {
  const std::vector<Complex> uniform{Complex(100, 0), 0, 0, 0, 0};
  EXPECT_DOUBLE_EQ(erdos_turan_estimate(uniform, 100, 4), 3.0 / 5);
  const std::vector<Complex> one{Complex(100, 0), Complex(3, 4)};
  EXPECT_DOUBLE_EQ(erdos_turan_estimate(one, 100, 1), 1.5 + 3 * 5.0 / 100);
}

TEST(Analysis, StarDiscrepancy) {
  EXPECT_DOUBLE_EQ(star_discrepancy({0.0}), 1.0);
  EXPECT_DOUBLE_EQ(star_discrepancy({0.5}), 0.5);
  EXPECT_NEAR(star_discrepancy({0.125, 0.375, 0.625, 0.875}), 0.125, 1e-15);
  const double p = 11;
  for (double x : {0.0, 1 / p, (p - 1) / p}) {
    EXPECT_GE(star_discrepancy(std::vector<double>(30, x)), 1 - 1 / p - 1e-15) << x;
  }
}

TEST(Analysis, DiscrepancyAt101) {
  const auto ctx = PrimeContext::make(101);
  const auto w = FactorialWindow::build(ctx, 0, 100);
  const auto rep = discrepancy_estimate(w, w, 100, true);
  ASSERT_TRUE(rep.direct.has_value());
  EXPECT_GE(rep.estimate, *rep.direct);
  EXPECT_GT(*rep.direct, 0.0);
  EXPECT_EQ(rep.constant_main, 3.0);
  EXPECT_THROW(discrepancy_estimate(w, w, 101), Error);
  EXPECT_THROW(discrepancy_estimate(w, w, 0), Error);
}

}  // namespace
}  // namespace fcl
