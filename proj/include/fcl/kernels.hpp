#pragma once

// Data-parallel inner loops. Every OpenMP kernel has a serial twin with the
// same per-output summation order; tests require identical results and the
// benchmark target times the pair.

#include <complex>
#include <span>
#include <vector>

#include "fcl/types.hpp"

namespace fcl::kernels {

using Complex = std::complex<double>;

/// exp(2 pi i k / n) for k in [0, n). The angle is folded into [-pi, pi], so
/// unit_root(n - k, n) is exactly the conjugate of unit_root(k, n).
Complex unit_root(u64 k, u64 n);
std::vector<Complex> unit_roots(u64 n);

/// C[t] = sum_{i+j = t mod n} a[i] b[j]. Caller certifies the coefficient bound.
std::vector<Count> convolve_direct_serial(std::span<const Count> a, std::span<const Count> b);
std::vector<Count> convolve_direct_parallel(std::span<const Count> a, std::span<const Count> b);

/// X[f] = sum_x weight[x] * roots[(f * x) mod n] for f in [0, n), n = roots.size().
/// A conjugated table gives the opposite sign.
std::vector<Complex> spectrum_direct_serial(std::span<const Count> weight, std::span<const Complex> roots);
std::vector<Complex> spectrum_direct_parallel(std::span<const Count> weight, std::span<const Complex> roots);

/// c[t] = #{(i, j) : xs[i] * ys[j] = t mod p}.
std::vector<Count> tally_products_serial(std::span<const u64> xs, std::span<const u64> ys, u64 p);
std::vector<Count> tally_products_parallel(std::span<const u64> xs, std::span<const u64> ys, u64 p);

enum class ChainOp { add, multiply };

/// Exhaustive nested enumeration: one loop per stage, accumulator folded with
/// op after each loop (start 0 for add, 1 for multiply). Returns the tally of
/// final accumulator values over Z_p.
std::vector<Count> tally_chain_serial(std::span<const std::vector<u64>> stages, ChainOp op, u64 p);
std::vector<Count> tally_chain_parallel(std::span<const std::vector<u64>> stages, ChainOp op, u64 p);

}  // namespace fcl::kernels
