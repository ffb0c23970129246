#pragma once

// Command-line front end. Subcommands:
//   factorials | expsum <single|double|char|spectrum> | count <FAMILY>
//   verify <THEOREM> | stats <distinct|discrepancy> | sweep <f11|discrepancy|spectrum-max>
// Exit codes: 0 success, 2 validation error, 3 guard or size limit, 4 engine mismatch.

#include <iosfwd>
#include <optional>
#include <string>

#include "fcl/report.hpp"

namespace fcl {

struct ExperimentConfig {
  std::string command;
  std::string target;  // expsum mode, family, theorem id or statistic
  std::optional<u64> p;
  std::optional<std::string> primes;  // "A..B" or comma list
  std::optional<u64> K, M, L, N, S, T;
  unsigned ell = 1, k = 1, r = 1, s = 1;
  std::optional<long long> lambda;
  std::optional<std::string> signs;  // e.g. "+,-,+"
  std::optional<u64> a, j;
  bool direct = false;
  std::string engine = "auto";
  std::optional<u64> H;
  std::optional<std::string> format;
  std::optional<std::string> cache_dir;
  unsigned threads = 0;  // 0 keeps the OpenMP default
  u64 seed = 1;

  /// Echo stored in every envelope; from_json(to_json()) round-trips.
  Json to_json() const;
  static ExperimentConfig from_json(const Json& j);
};

int exit_code_for(Errc code);

/// Validates, dispatches and writes the report to out; diagnostics go to err.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (or a --config replay file) and calls run.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fcl
