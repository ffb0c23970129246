#include "fcl/kernels.hpp"

#include <cmath>
#include <numbers>

#include <omp.h>

#include "fcl/field.hpp"

namespace fcl::kernels {

Complex unit_root(u64 k, u64 n) {
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  if (2 * k == n) return {-1.0, 0.0};
  if (2 * k < n) {
    const double angle = step * static_cast<double>(k);
    return {std::cos(angle), std::sin(angle)};
  }
  const double angle = step * static_cast<double>(n - k);
  return {std::cos(angle), -std::sin(angle)};
}

std::vector<Complex> unit_roots(u64 n) {
  std::vector<Complex> roots(n);
  for (u64 k = 0; k < n; ++k) roots[k] = unit_root(k, n);
  return roots;
}

namespace {

Count convolve_one(std::span<const Count> a, std::span<const Count> b, std::size_t t) {
  const std::size_t n = a.size();
  Count acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    const std::size_t j = (t >= i) ? t - i : t + n - i;
    acc += a[i] * b[j];
  }
  return acc;
}

Complex spectrum_one(std::span<const Count> weight, std::span<const Complex> roots, u64 f) {
  const u64 n = roots.size();
  Complex acc{0.0, 0.0};
  u64 phase = 0;
  for (u64 x = 0; x < weight.size(); ++x) {
    if (weight[x] != 0) acc += static_cast<double>(weight[x]) * roots[phase];
    phase += f;
    if (phase >= n) phase -= n;
  }
  return acc;
}

inline u64 fold(u64 acc, u64 v, u64 p, ChainOp op) {
  if (op == ChainOp::add) {
    const u64 s = acc + v;
    return s >= p ? s - p : s;
  }
  return mul_mod(acc, v, p);
}

void chain_recurse(std::span<const std::vector<u64>> stages, std::size_t depth, u64 acc, ChainOp op, u64 p,
                   std::vector<u64>& tally) {
  const auto& stage = stages[depth];
  if (depth + 1 == stages.size()) {
    if (op == ChainOp::add) {
      for (u64 v : stage) {
        const u64 s = acc + v;
        ++tally[s >= p ? s - p : s];
      }
    } else {
      for (u64 v : stage) ++tally[mul_mod(acc, v, p)];
    }
    return;
  }
  for (u64 v : stage) chain_recurse(stages, depth + 1, fold(acc, v, p, op), op, p, tally);
}

std::vector<Count> widen(const std::vector<u64>& tally) { return {tally.begin(), tally.end()}; }

}  // namespace

std::vector<Count> convolve_direct_serial(std::span<const Count> a, std::span<const Count> b) {
  std::vector<Count> out(a.size(), 0);
  for (std::size_t t = 0; t < a.size(); ++t) out[t] = convolve_one(a, b, t);
  return out;
}

std::vector<Count> convolve_direct_parallel(std::span<const Count> a, std::span<const Count> b) {
  const std::size_t n = a.size();
  std::vector<Count> out(n, 0);
#pragma omp parallel for schedule(static) if (n >= 256)
  for (std::size_t t = 0; t < n; ++t) out[t] = convolve_one(a, b, t);
  return out;
}

std::vector<Complex> spectrum_direct_serial(std::span<const Count> weight, std::span<const Complex> roots) {
  std::vector<Complex> out(roots.size());
  for (u64 f = 0; f < roots.size(); ++f) out[f] = spectrum_one(weight, roots, f);
  return out;
}

std::vector<Complex> spectrum_direct_parallel(std::span<const Count> weight, std::span<const Complex> roots) {
  const u64 n = roots.size();
  std::vector<Complex> out(n);
#pragma omp parallel for schedule(static) if (n >= 256)
  for (u64 f = 0; f < n; ++f) out[f] = spectrum_one(weight, roots, f);
  return out;
}

std::vector<Count> tally_products_serial(std::span<const u64> xs, std::span<const u64> ys, u64 p) {
  std::vector<u64> tally(p, 0);
  for (u64 x : xs) {
    for (u64 y : ys) ++tally[mul_mod(x, y, p)];
  }
  return widen(tally);
}

std::vector<Count> tally_products_parallel(std::span<const u64> xs, std::span<const u64> ys, u64 p) {
  std::vector<u64> tally(p, 0);
#pragma omp parallel if (xs.size() * ys.size() >= (1u << 16))
  {
    std::vector<u64> local(p, 0);
#pragma omp for schedule(static) nowait
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (u64 y : ys) ++local[mul_mod(xs[i], y, p)];
    }
#pragma omp critical(fcl_tally_merge)
    for (u64 t = 0; t < p; ++t) tally[t] += local[t];
  }
  return widen(tally);
}

std::vector<Count> tally_chain_serial(std::span<const std::vector<u64>> stages, ChainOp op, u64 p) {
  std::vector<u64> tally(p, 0);
  if (stages.empty()) {
    ++tally[op == ChainOp::add ? 0 : 1 % p];
    return widen(tally);
  }
  chain_recurse(stages, 0, op == ChainOp::add ? 0 : 1, op, p, tally);
  return widen(tally);
}

std::vector<Count> tally_chain_parallel(std::span<const std::vector<u64>> stages, ChainOp op, u64 p) {
  if (stages.size() < 2) return tally_chain_serial(stages, op, p);
  std::vector<u64> tally(p, 0);
  const u64 start = op == ChainOp::add ? 0 : 1;
  const auto& first = stages[0];
  const auto rest = stages.subspan(1);
#pragma omp parallel
  {
    std::vector<u64> local(p, 0);
#pragma omp for schedule(dynamic, 1) nowait
    for (std::size_t i = 0; i < first.size(); ++i) {
      chain_recurse(rest, 0, fold(start, first[i], p, op), op, p, local);
    }
#pragma omp critical(fcl_tally_merge)
    for (u64 t = 0; t < p; ++t) tally[t] += local[t];
  }
  return widen(tally);
}

}  // namespace fcl::kernels
