#pragma once

// Exact solution counts for the factorial congruence families.
//
//   J       sum_{i<=l} n_i! = sum_{i>l} n_i! + lambda           (2l variables)
//   SIGNED  sum_i delta_i n_i! = lambda                          (k variables)
//   F       sum_{i<=l} m_i!n_i! = sum_{i>l} m_i!n_i!             (2l pairs)
//   I       n_1!...n_l! = n_{l+1}!...n_{2l}!                      (2l variables)
//   T       sum_{i<=r} m_i!n_i! = lambda                         (r pairs)
//   Q       m!n! + n_1! + ... + n_r! = lambda
//   R       (m_1!+..+m_k!)(n_1!+..+n_l!) t_1!...t_r! = lambda,   lambda != 0
//
// m ranges over the m-window (K, K+M], n over (L, L+N], t over (S, S+T].
// For R, k = 0 means the m-bracket is absent (a factor 1).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fcl/factorial.hpp"

namespace fcl {

enum class Family { J, SIGNED, F, I, T, Q, R };

std::string_view to_string(Family family);
/// Throws invalid_argument for unknown names.
Family parse_family(std::string_view name);

struct CountQuery {
  Family family = Family::J;
  ContextPtr ctx;
  WindowSpec m_window{0, 1};  // K, M
  WindowSpec n_window{0, 1};  // L, N
  WindowSpec t_window{0, 1};  // S, T
  unsigned ell = 1;
  unsigned k = 1;
  unsigned r = 1;
  u64 lambda = 0;
  std::vector<int> signs;  // SIGNED only, entries +1 / -1

  /// Checks windows, multiplicities and family constraints.
  void validate() const;
  /// Queries that depend on lambda (J, SIGNED, T, Q, R).
  bool has_target() const;
  bool needs_dlog() const;
};

enum class CountEngine { convolution, brute_force };
std::string_view to_string(CountEngine engine);

struct CountResult {
  BigCount count;
  CountEngine engine = CountEngine::convolution;
  double seconds = 0.0;
  /// R only: tuples whose bracket sums vanish mod p (cannot reach lambda != 0).
  BigCount dropped_zero_mass = 0;
};

/// Full distribution over targets lambda = 0..p-1 for target families; for
/// F and I a single entry holding the count. For R entry 0 is left at zero.
struct CountDistribution {
  ExactVector counts;
  CountEngine engine = CountEngine::convolution;
  BigCount dropped_zero_mass = 0;
};

CountResult count_J(const CountQuery& q);
CountResult count_signed(const CountQuery& q);
CountResult count_F(const CountQuery& q);
CountResult count_I(const CountQuery& q);
CountResult count_T(const CountQuery& q);
CountResult count_Q(const CountQuery& q);
CountResult count_R(const CountQuery& q);

/// Convolution engine, dispatched on q.family.
CountResult count_convolution(const CountQuery& q);
CountDistribution distribution_convolution(const CountQuery& q);

/// Counts of G_l(L,N; lambda) for all lambda.
ExactVector waring_counts(const FactorialWindow& window, unsigned ell);

inline constexpr double kBruteForceGuard = 1e9;
/// Exhaustive enumeration threshold; above it the oracle meets in the middle.
inline constexpr double kExhaustiveLimit = 1e7;

/// Estimated enumeration work of the brute-force oracle.
double brute_force_work(const CountQuery& q);
/// Exhaustive oracle. Throws guard_exceeded when the work estimate exceeds guard.
CountResult brute_force_count(const CountQuery& q, double guard = kBruteForceGuard);
CountDistribution brute_force_distribution(const CountQuery& q, double guard = kBruteForceGuard);

enum class EngineChoice { auto_select, convolution, brute_force, both };
std::string_view to_string(EngineChoice choice);
EngineChoice parse_engine(std::string_view name);

/// Brute force below kExhaustiveLimit work, else convolution. With both, runs
/// the two engines and throws engine_mismatch when they disagree.
CountResult run_count(const CountQuery& q, EngineChoice choice);
CountDistribution run_distribution(const CountQuery& q, EngineChoice choice);

}  // namespace fcl
