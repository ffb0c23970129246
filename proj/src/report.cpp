#include "fcl/report.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

namespace fcl {

std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::text: return "text";
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::tsv: return "tsv";
  }
  return "?";
}

OutputFormat parse_format(std::string_view name) {
  for (auto f : {OutputFormat::text, OutputFormat::json, OutputFormat::csv, OutputFormat::tsv}) {
    if (name == to_string(f)) return f;
  }
  throw Error(Errc::invalid_argument, "--format must be one of text|json|csv|tsv");
}

const char* version_string() { return "1.0.0"; }

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string format_complex(Complex z) {
  const double im = z.imag() == 0.0 ? 0.0 : z.imag();
  std::string out = format_double(z.real());
  out += std::signbit(im) ? "-" : "+";
  out += format_double(std::abs(im));
  out += "i";
  return out;
}

Json count_json(const BigCount& value) {
  if (value >= 0 && value <= std::numeric_limits<u64>::max()) return static_cast<u64>(value);
  return value.str();
}

Json count_record(const CountQuery& q, const CountResult& result) {
  Json params;
  params["K"] = q.m_window.start;
  params["M"] = q.m_window.length;
  params["L"] = q.n_window.start;
  params["N"] = q.n_window.length;
  params["S"] = q.t_window.start;
  params["T"] = q.t_window.length;
  params["ell"] = q.ell;
  params["k"] = q.k;
  params["r"] = q.r;
  if (q.family == Family::SIGNED) params["signs"] = q.signs;
  Json rec;
  rec["family"] = std::string(to_string(q.family));
  rec["p"] = q.ctx->p();
  rec["params"] = std::move(params);
  rec["lambda"] = q.has_target() ? Json(q.lambda) : Json(nullptr);
  rec["count"] = count_json(result.count);
  rec["engine"] = std::string(to_string(result.engine));
  rec["seconds"] = result.seconds;
  if (q.family == Family::R) rec["dropped_zero_mass"] = count_json(result.dropped_zero_mass);
  return rec;
}

void write_bound_header(std::ostream& out, char sep) {
  bool first = true;
  for (const char* c : kBoundColumns) {
    if (!first) out << sep;
    out << c;
    first = false;
  }
  out << '\n';
}

void write_bound_row(std::ostream& out, const BoundReport& r, char sep) {
  const auto& b = r.params;
  out << to_string(r.theorem) << sep << b.p << sep << b.m_window.start << sep << b.m_window.length << sep
      << b.n_window.start << sep << b.n_window.length << sep << b.t_window.start << sep << b.t_window.length << sep
      << b.ell << sep << b.k << sep << b.r << sep << b.s << sep
      << (r.lhs_exact.empty() ? format_double(r.lhs) : r.lhs_exact) << sep << format_double(r.rhs) << sep
      << format_double(r.ratio) << '\n';
}

Json bound_json(const BoundReport& r) {
  const auto& b = r.params;
  Json j;
  j["theorem"] = std::string(to_string(r.theorem));
  j["p"] = b.p;
  j["K"] = b.m_window.start;
  j["M"] = b.m_window.length;
  j["L"] = b.n_window.start;
  j["N"] = b.n_window.length;
  j["S"] = b.t_window.start;
  j["T"] = b.t_window.length;
  j["ell"] = b.ell;
  j["k"] = b.k;
  j["r"] = b.r;
  j["s"] = b.s;
  if (r.lhs_exact.empty()) {
    j["lhs"] = r.lhs;
  } else {
    j["lhs"] = count_json(BigCount(r.lhs_exact));
  }
  j["rhs"] = r.rhs;
  j["ratio"] = r.ratio;
  return j;
}

Json ratio_series(std::span<const BoundReport> reports) {
  Json series = Json::object();
  for (const auto& r : reports) {
    const std::string key(to_string(r.theorem));
    if (!series.contains(key)) series[key] = Json::array();
    series[key].push_back(Json::array({r.params.p, r.ratio}));
  }
  return series;
}

Json ReportEnvelope::to_json() const {
  Json j;
  j["tool"] = tool;
  j["version"] = version;
  j["config"] = config;
  j["results"] = results;
  j["timing"] = timing;
  j["warnings"] = warnings;
  return j;
}

}  // namespace fcl
