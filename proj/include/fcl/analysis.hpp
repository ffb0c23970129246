#pragma once

// Bound evaluation with implied constant 1, verification sweeps and
// distribution statistics for factorial residues.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fcl/counting.hpp"
#include "fcl/expsums.hpp"

namespace fcl {

enum class Theorem { T2_1, C2_2, T2_3, T3_1, T4_1, T4_2, T4_3, T4_4, CharSum, BoundI };

std::string_view to_string(Theorem t);
Theorem parse_theorem(std::string_view name);
std::vector<Theorem> all_theorems();

/// Windows and multiplicities one bound is evaluated at. Which fields matter
/// depends on the theorem; `s` is the auxiliary split parameter of T4.1 / T4.4.
struct BoundParams {
  u64 p = 0;
  WindowSpec m_window{0, 1};
  WindowSpec n_window{0, 1};
  WindowSpec t_window{0, 1};
  unsigned ell = 1;
  unsigned k = 1;
  unsigned r = 1;
  unsigned s = 1;
  std::vector<int> signs;  // C2.2; empty means alternating +,-,+,...
};

/// Right-hand side with implied constant 1. Throws hypothesis_violated when
/// the theorem's conditions fail.
double bound_rhs(Theorem theorem, const BoundParams& params);

struct BoundReport {
  Theorem theorem = Theorem::T2_1;
  BoundParams params;
  double lhs = 0.0;
  std::string lhs_exact;  // exact integer when the left side is a count
  double rhs = 0.0;
  double ratio = 0.0;
};

/// Computes the observed left-hand side and the bound for one cell.
BoundReport evaluate_bound(Theorem theorem, const BoundParams& params, EngineChoice engine = EngineChoice::convolution);

/// Parameter grid point; window lengths left empty take the longest window
/// that fits below p.
struct GridPoint {
  u64 m_start = 0, n_start = 0, t_start = 0;
  std::optional<u64> m_length, n_length, t_length;
  unsigned ell = 1, k = 1, r = 1, s = 1;
  std::vector<int> signs;
};

BoundParams resolve(const GridPoint& g, u64 p);

struct SkippedCell {
  u64 p = 0;
  std::string reason;
};

struct SweepResult {
  std::vector<BoundReport> reports;  // ordered by (p, grid index)
  std::vector<SkippedCell> skipped;
};

/// Cells run in parallel; output order is deterministic.
SweepResult verify_sweep(Theorem theorem, std::span<const u64> primes, std::span<const GridPoint> grid,
                         EngineChoice engine = EngineChoice::convolution);

inline constexpr double kF11Reference = 0.63212055882855767840;  // 1 - 1/e

struct DistributionStats {
  u64 p = 0;
  u64 distinct_count = 0;
  double distinct_fraction = 0.0;  // relative to p
  double missed_fraction = 0.0;
  double reference = kF11Reference;
  double deviation = 0.0;  // distinct_fraction - reference
};

DistributionStats distinct_stats(const FactorialWindow& window);

struct DiscrepancyReport {
  u64 H = 1;
  double estimate = 0.0;
  std::optional<double> direct;
  double constant_main = 3.0;  // Erdos-Turan constants (3, 3)
  double constant_sum = 3.0;
};

/// 3/(H+1) + 3 sum_{a=1}^{H} |W_a| / (a * total), from W_0..W_H.
double erdos_turan_estimate(std::span<const Complex> sums, double total, u64 H);

DiscrepancyReport discrepancy_estimate(const FactorialWindow& m_window, const FactorialWindow& n_window, u64 H,
                                       bool with_direct = false);

inline constexpr double kDirectDiscrepancyGuard = 1e7;

/// Star discrepancy sup_t |#{x_i < t}/n - t| of points in [0, 1), by sorting.
double star_discrepancy(std::vector<double> points);
/// Star discrepancy of {m! n! / p}. Throws guard_exceeded above 1e7 points.
double direct_discrepancy(const FactorialWindow& m_window, const FactorialWindow& n_window);

}  // namespace fcl
