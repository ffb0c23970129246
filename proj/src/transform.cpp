#include "fcl/transform.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "fcl/field.hpp"
#include "fcl/kernels.hpp"

namespace fcl {

namespace {

constexpr NttPrime kNttPrimes[] = {
    {4179340454199820289ULL, 3, 57},  // 29 * 2^57 + 1
    {2485986994308513793ULL, 5, 55},  // 69 * 2^55 + 1
    {2936346957045563393ULL, 3, 54},  // 163 * 2^54 + 1
};

// Montgomery arithmetic with R = 2^64 for odd moduli below 2^62.
struct Montgomery {
  u64 n;
  u64 n_inv;  // n * n_inv = 1 mod 2^64
  u64 r2;     // 2^128 mod n

  explicit Montgomery(u64 mod) : n(mod) {
    u64 x = mod;
    for (int i = 0; i < 6; ++i) x *= 2 - mod * x;
    n_inv = x;
    const u64 r1 = (0 - mod) % mod;
    r2 = static_cast<u64>(static_cast<unsigned __int128>(r1) * r1 % mod);
  }

  u64 reduce(unsigned __int128 t) const {
    const u64 m = static_cast<u64>(t) * n_inv;
    const u64 hi = static_cast<u64>(t >> 64);
    const u64 mn = static_cast<u64>((static_cast<unsigned __int128>(m) * n) >> 64);
    return hi >= mn ? hi - mn : hi + n - mn;
  }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<unsigned __int128>(a) * b); }
  u64 to(u64 a) const { return mul(a % n, r2); }
  u64 from(u64 a) const { return reduce(a); }
  u64 add(u64 a, u64 b) const {
    const u64 s = a + b;
    return s >= n ? s - n : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + n - b; }
  u64 pow(u64 base, u64 e) const {
    u64 r = to(1);
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }
};

void bit_reverse_permute(auto& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
}

// Values in Montgomery form; size a power of two dividing modulus - 1.
void ntt(std::vector<u64>& a, const Montgomery& mt, u64 root, bool inverse) {
  const std::size_t n = a.size();
  bit_reverse_permute(a);
  std::vector<u64> w(n / 2);
  const u64 g = mt.to(root);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    u64 wl = mt.pow(g, (mt.n - 1) / len);
    if (inverse) wl = mt.pow(wl, mt.n - 2);
    const std::size_t half = len / 2;
    w[0] = mt.to(1);
    for (std::size_t j = 1; j < half; ++j) w[j] = mt.mul(w[j - 1], wl);
    const std::ptrdiff_t butterflies = static_cast<std::ptrdiff_t>(n / 2);
#pragma omp parallel for schedule(static) if (n >= (1u << 15))
    for (std::ptrdiff_t idx = 0; idx < butterflies; ++idx) {
      const std::size_t block = static_cast<std::size_t>(idx) / half;
      const std::size_t j = static_cast<std::size_t>(idx) % half;
      const std::size_t i = block * len + j;
      const u64 u = a[i];
      const u64 v = mt.mul(a[i + half], w[j]);
      a[i] = mt.add(u, v);
      a[i + half] = mt.sub(u, v);
    }
  }
  if (inverse) {
    const u64 scale = mt.pow(mt.to(n % mt.n), mt.n - 2);
    for (auto& x : a) x = mt.mul(x, scale);
  }
}

// Cyclic convolution of length n modulo one NTT prime; residues in [0, mod).
std::vector<u64> cyclic_residues(std::span<const Count> a, std::span<const Count> b, const NttPrime& prime) {
  const std::size_t n = a.size();
  const Montgomery mt(prime.modulus);
  const std::size_t size = std::bit_ceil(std::max<std::size_t>(2 * n - 1, 1));
  if (std::countr_zero(size) > prime.two_adicity) {
    throw Error(Errc::certification_failed, "transform length exceeds the NTT modulus capacity");
  }
  auto load = [&](std::span<const Count> v) {
    std::vector<u64> out(size, 0);
    for (std::size_t i = 0; i < n; ++i) out[i] = mt.to(static_cast<u64>(v[i] % prime.modulus));
    return out;
  };
  auto fa = load(a);
  ntt(fa, mt, prime.root, false);
  if (a.data() == b.data()) {
    for (auto& x : fa) x = mt.mul(x, x);
  } else {
    auto fb = load(b);
    ntt(fb, mt, prime.root, false);
    for (std::size_t i = 0; i < size; ++i) fa[i] = mt.mul(fa[i], fb[i]);
  }
  ntt(fa, mt, prime.root, true);
  std::vector<u64> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    u64 v = mt.from(fa[t]);
    if (t + n < size) v = add_mod(v, mt.from(fa[t + n]), prime.modulus);
    out[t] = v;
  }
  return out;
}

Count garner(std::span<const u64> residues, unsigned moduli) {
  const u64 m0 = kNttPrimes[0].modulus;
  Count x = residues[0];
  if (moduli == 1) return x;
  const u64 m1 = kNttPrimes[1].modulus;
  const u64 t1 = mul_mod(sub_mod(residues[1], static_cast<u64>(x % m1), m1), inv_mod(m0 % m1, m1), m1);
  x += static_cast<Count>(m0) * t1;
  if (moduli == 2) return x;
  const u64 m2 = kNttPrimes[2].modulus;
  const u64 m01 = mul_mod(m0 % m2, m1 % m2, m2);
  const u64 t2 = mul_mod(sub_mod(residues[2], static_cast<u64>(x % m2), m2), inv_mod(m01, m2), m2);
  x += static_cast<Count>(m0) * m1 * t2;
  return x;
}

void require_equal_lengths(std::span<const Count> a, std::span<const Count> b) {
  if (a.size() != b.size() || a.empty()) {
    throw Error(Errc::invalid_argument, "cyclic convolution needs equal nonzero lengths");
  }
}

double error_scale(std::size_t padded) {
  const double depth = std::log2(static_cast<double>(std::max<std::size_t>(padded, 2)));
  return 8.0 * (depth + 2.0) * std::numeric_limits<double>::epsilon();
}

double l1(std::span<const Complex> x) {
  double s = 0.0;
  for (const auto& v : x) s += std::abs(v);
  return s;
}

// exp(sign * pi * i * m / n) for integer m reduced mod 2n by the caller.
Complex half_turn(u64 m, u64 n, int sign) {
  const double angle = std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
  return {std::cos(angle), sign * std::sin(angle)};
}

}  // namespace

std::span<const NttPrime> ntt_primes() { return kNttPrimes; }

ConvolutionPlan ConvolutionPlan::certify(std::size_t length, const BigCount& total_a, const BigCount& total_b,
                                         ConvEngine engine) {
  ConvolutionPlan plan;
  plan.length = length;
  plan.engine = engine;
  plan.coefficient_bound = total_a * total_b;
  if (!fits_count(plan.coefficient_bound)) {
    throw Error(Errc::certification_failed,
                "convolution coefficient bound " + plan.coefficient_bound.str() + " needs more than 128 bits");
  }
  if (engine == ConvEngine::exact_modular) {
    BigCount capacity = 1;
    for (const auto& prime : kNttPrimes) {
      capacity *= prime.modulus;
      ++plan.moduli;
      if (capacity > plan.coefficient_bound) break;
    }
  }
  return plan;
}

BigCount mass(std::span<const Count> v) {
  BigCount total = 0;
  for (Count x : v) total += to_big(x);
  return total;
}

Count max_entry(std::span<const Count> v) {
  Count m = 0;
  for (Count x : v) m = std::max(m, x);
  return m;
}

ExactVector cyclic_convolve_direct(std::span<const Count> a, std::span<const Count> b) {
  require_equal_lengths(a, b);
  ConvolutionPlan::certify(a.size(), mass(a), mass(b), ConvEngine::direct);
  return kernels::convolve_direct_parallel(a, b);
}

ExactVector cyclic_convolve_modular(std::span<const Count> a, std::span<const Count> b) {
  require_equal_lengths(a, b);
  const auto plan = ConvolutionPlan::certify(a.size(), mass(a), mass(b));
  std::vector<std::vector<u64>> residues(plan.moduli);
  for (unsigned m = 0; m < plan.moduli; ++m) residues[m] = cyclic_residues(a, b, kNttPrimes[m]);
  ExactVector out(a.size());
  std::vector<u64> r(plan.moduli);
  for (std::size_t t = 0; t < out.size(); ++t) {
    for (unsigned m = 0; m < plan.moduli; ++m) r[m] = residues[m][t];
    out[t] = garner(r, plan.moduli);
  }
  return out;
}

ExactVector cyclic_convolve_exact(std::span<const Count> a, std::span<const Count> b) {
  if (a.size() <= kDirectConvolutionMax) return cyclic_convolve_direct(a, b);
  return cyclic_convolve_modular(a, b);
}

ExactVector cyclic_power(std::span<const Count> a, unsigned k) {
  if (k == 0) throw Error(Errc::invalid_argument, "convolution power must be >= 1");
  ExactVector result(a.begin(), a.end());
  for (unsigned i = 1; i < k; ++i) result = cyclic_convolve_exact(result, a);
  return result;
}

ExactVector index_reversed(std::span<const Count> a) {
  const std::size_t n = a.size();
  ExactVector out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i == 0 ? 0 : n - i];
  return out;
}

BigCount correlate_at(std::span<const Count> a, std::span<const Count> b, u64 shift) {
  require_equal_lengths(a, b);
  const std::size_t n = a.size();
  shift %= n;
  const BigCount bound = mass(a) * mass(b);
  if (fits_count(bound)) {
    Count acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      const std::size_t j = i >= shift ? i - shift : i + n - shift;
      acc += a[i] * b[j];
    }
    return to_big(acc);
  }
  BigCount acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    const std::size_t j = i >= shift ? i - shift : i + n - shift;
    acc += to_big(a[i]) * to_big(b[j]);
  }
  return acc;
}

void fft_pow2(std::vector<Complex>& a, int sign) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  if (!std::has_single_bit(n)) throw Error(Errc::invalid_argument, "fft_pow2 needs a power-of-two size");
  bit_reverse_permute(a);
  auto roots = kernels::unit_roots(n);
  if (sign < 0) {
    for (auto& w : roots) w = std::conj(w);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    const std::ptrdiff_t butterflies = static_cast<std::ptrdiff_t>(n / 2);
#pragma omp parallel for schedule(static) if (n >= (1u << 15))
    for (std::ptrdiff_t idx = 0; idx < butterflies; ++idx) {
      const std::size_t block = static_cast<std::size_t>(idx) / half;
      const std::size_t j = static_cast<std::size_t>(idx) % half;
      const std::size_t i = block * len + j;
      const Complex u = a[i];
      const Complex v = a[i + half] * roots[j * stride];
      a[i] = u + v;
      a[i + half] = u - v;
    }
  }
}

std::vector<Complex> cyclic_convolve_floating(std::span<const Complex> a, std::span<const Complex> b) {
  const std::size_t n = a.size();
  if (b.size() != n || n == 0) throw Error(Errc::invalid_argument, "cyclic convolution needs equal nonzero lengths");
  const bool pow2 = std::has_single_bit(n);
  const std::size_t size = pow2 ? n : std::bit_ceil(2 * n - 1);
  std::vector<Complex> fa(size), fb(size);
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());
  fft_pow2(fa, 1);
  fft_pow2(fb, 1);
  for (std::size_t i = 0; i < size; ++i) fa[i] *= fb[i];
  fft_pow2(fa, -1);
  const double scale = 1.0 / static_cast<double>(size);
  std::vector<Complex> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    Complex v = fa[t];
    if (!pow2 && t + n < size) v += fa[t + n];
    out[t] = v * scale;
  }
  return out;
}

std::vector<Complex> dft_naive(std::span<const Complex> x, int sign) {
  const u64 n = x.size();
  auto roots = kernels::unit_roots(n);
  if (sign < 0) {
    for (auto& w : roots) w = std::conj(w);
  }
  std::vector<Complex> out(n);
  for (u64 k = 0; k < n; ++k) {
    Complex acc{0.0, 0.0};
    u64 phase = 0;
    for (u64 j = 0; j < n; ++j) {
      acc += x[j] * roots[phase];
      phase += k;
      if (phase >= n) phase -= n;
    }
    out[k] = acc;
  }
  return out;
}

DftResult dft_bluestein(std::span<const Complex> x, int sign) {
  const u64 n = x.size();
  DftResult result;
  if (n == 0) return result;
  const std::size_t size = std::bit_ceil(2 * n - 1);
  std::vector<Complex> chirp(n);
  for (u64 k = 0; k < n; ++k) chirp[k] = half_turn(static_cast<u64>(static_cast<unsigned __int128>(k) * k % (2 * n)), n, sign);
  std::vector<Complex> fa(size), fb(size);
  for (u64 k = 0; k < n; ++k) fa[k] = x[k] * chirp[k];
  fb[0] = std::conj(chirp[0]);
  for (u64 k = 1; k < n; ++k) fb[k] = fb[size - k] = std::conj(chirp[k]);
  fft_pow2(fa, 1);
  fft_pow2(fb, 1);
  for (std::size_t i = 0; i < size; ++i) fa[i] *= fb[i];
  fft_pow2(fa, -1);
  const double scale = 1.0 / static_cast<double>(size);
  result.values.resize(n);
  for (u64 k = 0; k < n; ++k) result.values[k] = chirp[k] * fa[k] * scale;
  result.abs_error = 3.0 * error_scale(size) * l1(x);
  return result;
}

DftResult dft_prime_length(std::span<const Complex> x, int sign) {
  const u64 n = x.size();
  if (n < 3 || !is_prime(n)) throw Error(Errc::invalid_argument, "Rader transform needs an odd prime length");
  const u64 g = find_primitive_root(n);
  const u64 g_inv = inv_mod(g, n);
  const u64 m = n - 1;
  std::vector<Complex> u(m), v(m);
  u64 gq = 1, gmq = 1;
  for (u64 q = 0; q < m; ++q) {
    u[q] = x[gq];
    v[q] = half_turn(2 * gmq, n, sign);
    gq = mul_mod(gq, g, n);
    gmq = mul_mod(gmq, g_inv, n);
  }
  const auto conv = cyclic_convolve_floating(u, v);
  DftResult result;
  result.values.resize(n);
  Complex total = x[0];
  for (u64 q = 0; q < m; ++q) total += u[q];
  result.values[0] = total;
  u64 index = 1;  // g^{-s}
  for (u64 s = 0; s < m; ++s) {
    result.values[index] = x[0] + conv[s];
    index = mul_mod(index, g_inv, n);
  }
  const std::size_t size = std::has_single_bit(m) ? m : std::bit_ceil(2 * m - 1);
  result.abs_error = 3.0 * error_scale(size) * l1(x);
  return result;
}

DftResult dft(std::span<const Complex> x, int sign) {
  const u64 n = x.size();
  if (n <= 16) {
    DftResult r{dft_naive(x, sign), 0.0};
    r.abs_error = static_cast<double>(n + 1) * 4.0 * std::numeric_limits<double>::epsilon() * l1(x);
    return r;
  }
  if (std::has_single_bit(n)) {
    DftResult r{{x.begin(), x.end()}, 0.0};
    fft_pow2(r.values, sign);
    r.abs_error = error_scale(n) * l1(x);
    return r;
  }
  if (is_prime(n)) return dft_prime_length(x, sign);
  return dft_bluestein(x, sign);
}

DftResult inverse_dft(std::span<const Complex> x, int sign) {
  auto r = dft(x, -sign);
  const double scale = 1.0 / static_cast<double>(x.size());
  for (auto& v : r.values) v *= scale;
  r.abs_error *= scale;
  return r;
}

}  // namespace fcl
