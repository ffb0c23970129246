#include <gtest/gtest.h>

#include <random>

#include "fcl/field.hpp"
#include "fcl/kernels.hpp"
#include "fcl/transform.hpp"

namespace fcl {
namespace {

ExactVector random_vector(std::mt19937_64& rng, std::size_t n, u64 max) {
  std::uniform_int_distribution<u64> d(0, max);
  ExactVector v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

std::vector<Complex> random_complex(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<Complex> v(n);
  for (auto& x : v) x = {d(rng), d(rng)};
  return v;
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

TEST(Transform, NttPrimesAreValid) {
  for (const auto& q : ntt_primes()) {
    EXPECT_TRUE(is_prime(q.modulus));
    EXPECT_EQ((q.modulus - 1) % (u64{1} << q.two_adicity), 0u);
    EXPECT_EQ(find_primitive_root(q.modulus), q.root);
  }
}

TEST(Transform, ModularMatchesDirect) {
  std::mt19937_64 rng(7);
  for (std::size_t n : {1u, 2u, 3u, 16u, 97u, 100u, 257u, 1000u}) {
    for (u64 max : {1ULL, 1000ULL, 1ULL << 40}) {
      const auto a = random_vector(rng, n, max);
      const auto b = random_vector(rng, n, max);
      EXPECT_EQ(cyclic_convolve_modular(a, b), cyclic_convolve_direct(a, b)) << n << " " << max;
    }
  }
}

TEST(Transform, ModularNeedsAllThreePrimes) {
  // Coefficient bound between 2^124 and 2^128: two moduli no longer suffice.
  std::mt19937_64 rng(11);
  auto a = random_vector(rng, 600, u64{1} << 53);
  auto b = random_vector(rng, 600, u64{1} << 52);
  for (auto& x : a) x += Count{1} << 53;
  for (auto& x : b) x += Count{1} << 52;
  const auto plan = ConvolutionPlan::certify(600, mass(a), mass(b));
  EXPECT_EQ(plan.moduli, 3u);
  EXPECT_EQ(cyclic_convolve_modular(a, b), cyclic_convolve_direct(a, b));
}

TEST(Transform, CertificationRejectsOverflow) {
  const ExactVector a(4, Count{1} << 100);
  try {
    cyclic_convolve_exact(a, a);
    FAIL() << "expected certification_failed";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::certification_failed);
  }
}

TEST(Transform, PowerAndCorrelation) {
  const ExactVector h{0, 2, 1, 1, 0, 0, 2};
  const auto g2 = cyclic_power(h, 2);
  EXPECT_EQ(g2, cyclic_convolve_direct(h, h));
  EXPECT_EQ(cyclic_power(h, 1), h);
  // correlation at 0 is the sum of squares
  EXPECT_EQ(correlate_at(h, h, 0), BigCount(10));
  EXPECT_EQ(index_reversed(h), (ExactVector{0, 2, 0, 0, 1, 1, 2}));
  const auto dist = cyclic_convolve_direct(h, index_reversed(h));
  for (u64 s = 0; s < 7; ++s) EXPECT_EQ(to_big(dist[s]), correlate_at(h, h, s));
}

TEST(Transform, CorrelationBeyond128Bits) {
  const ExactVector big(3, (Count{1} << 120));
  const BigCount expected = BigCount(3) * (BigCount(1) << 240);
  EXPECT_EQ(correlate_at(big, big, 0), expected);
}

TEST(Transform, UnitRootsConjugate) {
  for (u64 n : {7ULL, 16ULL, 10007ULL}) {
    for (u64 k = 1; k < n; k += std::max<u64>(1, n / 50)) {
      EXPECT_EQ(kernels::unit_root(n - k, n), std::conj(kernels::unit_root(k, n)));
    }
  }
}

TEST(Transform, DftMatchesNaive) {
  std::mt19937_64 rng(3);
  for (std::size_t n : {1u, 2u, 5u, 16u, 17u, 97u, 100u, 101u, 128u, 1009u}) {
    const auto x = random_complex(rng, n);
    for (int sign : {-1, 1}) {
      const auto fast = dft(x, sign);
      const auto slow = dft_naive(x, sign);
      EXPECT_LE(max_diff(fast.values, slow), fast.abs_error) << n;
      EXPECT_LT(max_diff(fast.values, slow), 1e-10 * static_cast<double>(n)) << n;
    }
  }
}

TEST(Transform, RaderAndBluesteinAgree) {
  std::mt19937_64 rng(5);
  for (std::size_t n : {3u, 7u, 31u, 257u, 1009u}) {
    const auto x = random_complex(rng, n);
    const auto rader = dft_prime_length(x, -1);
    const auto blue = dft_bluestein(x, -1);
    EXPECT_LT(max_diff(rader.values, blue.values), 1e-9) << n;
    EXPECT_LT(max_diff(rader.values, dft_naive(x, -1)), 1e-9) << n;
  }
}

TEST(Transform, RoundTripAt10007) {
  std::mt19937_64 rng(9);
  const auto x = random_complex(rng, 10007);
  const auto X = dft(x, -1);
  const auto back = inverse_dft(X.values, -1);
  double norm = 0.0;
  for (const auto& v : x) norm = std::max(norm, std::abs(v));
  EXPECT_LT(max_diff(back.values, x) / norm, 1e-9);
}

TEST(Transform, FloatingConvolutionMatchesExact) {
  std::mt19937_64 rng(13);
  const auto a = random_vector(rng, 101, 50);
  const auto b = random_vector(rng, 101, 50);
  std::vector<Complex> fa(a.begin(), a.end()), fb(b.begin(), b.end());
  const auto f = cyclic_convolve_floating(fa, fb);
  const auto e = cyclic_convolve_direct(a, b);
  for (std::size_t i = 0; i < 101; ++i) EXPECT_NEAR(f[i].real(), static_cast<double>(e[i]), 1e-6);
}

TEST(Transform, Pow2Fft) {
  std::mt19937_64 rng(17);
  auto x = random_complex(rng, 64);
  const auto slow = dft_naive(x, 1);
  fft_pow2(x, 1);
  EXPECT_LT(max_diff(x, slow), 1e-12 * 64);
}

}  // namespace
}  // namespace fcl
