#pragma once

// Exact (multi-modulus NTT + CRT) and floating (radix-2 / Rader / Bluestein)
// cyclic transforms of arbitrary length.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "fcl/types.hpp"

namespace fcl {

using ExactVector = std::vector<Count>;
using Complex = std::complex<double>;

enum class ConvEngine { exact_modular, floating, direct };

/// Lengths at or below this run the O(len^2) engine in cyclic_convolve_exact.
inline constexpr std::size_t kDirectConvolutionMax = 512;

/// NTT-friendly primes below 2^62 (c * 2^k + 1 with k >= 54).
struct NttPrime {
  u64 modulus;
  u64 root;  // primitive root of the modulus
  int two_adicity;
};
std::span<const NttPrime> ntt_primes();

/// How a convolution of a given length must be carried out. For the exact
/// engine the product of the chosen moduli exceeds the a-priori coefficient
/// bound total_a * total_b, and that bound itself fits in Count.
struct ConvolutionPlan {
  std::size_t length = 0;
  ConvEngine engine = ConvEngine::exact_modular;
  unsigned moduli = 0;
  BigCount coefficient_bound;

  /// Throws certification_failed when total_a * total_b >= 2^128.
  static ConvolutionPlan certify(std::size_t length, const BigCount& total_a, const BigCount& total_b,
                                 ConvEngine engine = ConvEngine::exact_modular);
};

BigCount mass(std::span<const Count> v);
Count max_entry(std::span<const Count> v);

ExactVector cyclic_convolve_direct(std::span<const Count> a, std::span<const Count> b);
ExactVector cyclic_convolve_modular(std::span<const Count> a, std::span<const Count> b);
/// Direct engine for short lengths, modular engine otherwise.
ExactVector cyclic_convolve_exact(std::span<const Count> a, std::span<const Count> b);

/// k-fold cyclic self-convolution (a for k = 1). k >= 1.
ExactVector cyclic_power(std::span<const Count> a, unsigned k);

/// out[i] = a[-i mod len].
ExactVector index_reversed(std::span<const Count> a);

/// sum_i a[i] * b[(i - shift) mod len], exactly.
BigCount correlate_at(std::span<const Count> a, std::span<const Count> b, u64 shift);

// Floating transforms. X[k] = sum_j x[j] exp(sign * 2 pi i j k / n), no scaling.

struct DftResult {
  std::vector<Complex> values;
  double abs_error = 0.0;  ///< bound on max_k |X[k] - exact X[k]|
};

DftResult dft(std::span<const Complex> x, int sign);
/// Rader reduction to a length n-1 cyclic convolution. n must be prime.
DftResult dft_prime_length(std::span<const Complex> x, int sign);
/// Chirp-z route, valid for every n.
DftResult dft_bluestein(std::span<const Complex> x, int sign);
/// Inverse of dft(x, sign) including the 1/n scaling.
DftResult inverse_dft(std::span<const Complex> x, int sign);

/// O(n^2) reference with exact index reduction; serial.
std::vector<Complex> dft_naive(std::span<const Complex> x, int sign);

std::vector<Complex> cyclic_convolve_floating(std::span<const Complex> a, std::span<const Complex> b);

/// In-place radix-2 transform; size must be a power of two.
void fft_pow2(std::vector<Complex>& a, int sign);

}  // namespace fcl
