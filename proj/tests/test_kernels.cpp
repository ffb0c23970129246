#include <gtest/gtest.h>

#include <random>

#include "fcl/field.hpp"
#include "fcl/kernels.hpp"

namespace fcl::kernels {
namespace {

TEST(Kernels, ConvolutionSerialEqualsParallel) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<u64> d(0, 1u << 20);
  for (std::size_t n : {1u, 7u, 97u, 512u, 1000u}) {
    std::vector<Count> a(n), b(n);
    for (auto& x : a) x = d(rng);
    for (auto& x : b) x = d(rng);
    EXPECT_EQ(convolve_direct_serial(a, b), convolve_direct_parallel(a, b)) << n;
  }
}

TEST(Kernels, SpectrumSerialEqualsParallelBitwise) {
  const u64 n = 1009;
  const auto roots = unit_roots(n);
  std::vector<Count> w(n);
  for (u64 i = 0; i < n; ++i) w[i] = (i * i) % 13;
  const auto s = spectrum_direct_serial(w, roots);
  const auto p = spectrum_direct_parallel(w, roots);
  ASSERT_EQ(s.size(), p.size());
  for (u64 i = 0; i < n; ++i) {
    EXPECT_EQ(s[i].real(), p[i].real());
    EXPECT_EQ(s[i].imag(), p[i].imag());
  }
}

TEST(Kernels, TallyProducts) {
  const u64 p = 101;
  std::vector<u64> xs, ys;
  for (u64 i = 1; i < 60; ++i) xs.push_back(i * 7 % p);
  for (u64 i = 1; i < 90; ++i) ys.push_back((i * i) % p);
  const auto s = tally_products_serial(xs, ys, p);
  EXPECT_EQ(s, tally_products_parallel(xs, ys, p));
  Count total = 0;
  for (auto c : s) total += c;
  EXPECT_EQ(total, Count(xs.size() * ys.size()));
}

TEST(Kernels, TallyChain) {
  const u64 p = 7;
  const std::vector<std::vector<u64>> stages{{1, 2, 6, 3, 1, 6}, {6, 5, 1, 4, 6, 1}};
  const auto s = tally_chain_serial(stages, ChainOp::add, p);
  EXPECT_EQ(s, tally_chain_parallel(stages, ChainOp::add, p));
  // J_1 distribution for p = 7 over the full window
  EXPECT_EQ(s, (std::vector<Count>{10, 3, 6, 4, 4, 6, 3}));
  const auto m = tally_chain_serial(stages, ChainOp::multiply, p);
  EXPECT_EQ(m, tally_chain_parallel(stages, ChainOp::multiply, p));
  Count total = 0;
  for (auto c : m) total += c;
  EXPECT_EQ(total, 36u);
}

}  // namespace
}  // namespace fcl::kernels
