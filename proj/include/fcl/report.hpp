#pragma once

// Serialization of results: JSON count records, bound tables (CSV/TSV/JSON)
// and the envelope wrapping every CLI run.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "fcl/analysis.hpp"

namespace fcl {

using Json = nlohmann::ordered_json;

enum class OutputFormat { text, json, csv, tsv };
std::string_view to_string(OutputFormat f);
OutputFormat parse_format(std::string_view name);

/// Shortest round-trip decimal form.
std::string format_double(double x);
/// "re+imi" / "re-imi" with shortest components, e.g. "6+0i".
std::string format_complex(Complex z);

/// Number when the count fits in 64 bits, decimal string otherwise.
Json count_json(const BigCount& value);

/// {family, p, params, lambda, count, engine, seconds}.
Json count_record(const CountQuery& q, const CountResult& result);

inline constexpr const char* kBoundColumns[] = {"theorem", "p", "K",  "M",  "L",   "N",   "S",    "T",
                                               "ell",     "k", "r",  "s",  "lhs", "rhs", "ratio"};

void write_bound_header(std::ostream& out, char sep);
void write_bound_row(std::ostream& out, const BoundReport& report, char sep);
Json bound_json(const BoundReport& report);
/// {"<theorem>": [[p, ratio], ...]} in report order.
Json ratio_series(std::span<const BoundReport> reports);

struct ReportEnvelope {
  std::string tool = "fcl";
  std::string version;
  Json config;
  Json results;
  Json timing;
  std::vector<std::string> warnings;

  Json to_json() const;
};

const char* version_string();

}  // namespace fcl
