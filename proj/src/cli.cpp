#include "fcl/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <omp.h>

#include "fcl/cache.hpp"

namespace fcl {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(Errc::invalid_argument, what); }

template <class T>
void put(Json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
void get(const Json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key) && !j[key].is_null()) v = j[key].get<T>();
}

template <class T>
void get(const Json& j, const char* key, T& v) {
  if (j.contains(key)) v = j[key].get<T>();
}

}  // namespace

Json ExperimentConfig::to_json() const {
  Json j;
  j["command"] = command;
  if (!target.empty()) j["target"] = target;
  put(j, "p", p);
  put(j, "primes", primes);
  put(j, "K", K);
  put(j, "M", M);
  put(j, "L", L);
  put(j, "N", N);
  put(j, "S", S);
  put(j, "T", T);
  j["ell"] = ell;
  j["k"] = k;
  j["r"] = r;
  j["s"] = s;
  put(j, "lambda", lambda);
  put(j, "signs", signs);
  put(j, "a", a);
  put(j, "j", this->j);
  j["direct"] = direct;
  j["engine"] = engine;
  put(j, "H", H);
  put(j, "format", format);
  put(j, "cache_dir", cache_dir);
  j["threads"] = threads;
  j["seed"] = seed;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
  static const char* known[] = {"command", "target", "p", "primes", "K", "M", "L", "N", "S", "T", "ell", "k",
                                "r", "s", "lambda", "signs", "a", "j", "direct", "engine", "H", "format",
                                "cache_dir", "threads", "seed"};
  if (!j.is_object()) invalid("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      invalid("unknown config key '" + key + "'");
    }
  }
  ExperimentConfig c;
  try {
    get(j, "command", c.command);
    get(j, "target", c.target);
    get(j, "p", c.p);
    get(j, "primes", c.primes);
    get(j, "K", c.K);
    get(j, "M", c.M);
    get(j, "L", c.L);
    get(j, "N", c.N);
    get(j, "S", c.S);
    get(j, "T", c.T);
    get(j, "ell", c.ell);
    get(j, "k", c.k);
    get(j, "r", c.r);
    get(j, "s", c.s);
    get(j, "lambda", c.lambda);
    get(j, "signs", c.signs);
    get(j, "a", c.a);
    get(j, "j", c.j);
    get(j, "direct", c.direct);
    get(j, "engine", c.engine);
    get(j, "H", c.H);
    get(j, "format", c.format);
    get(j, "cache_dir", c.cache_dir);
    get(j, "threads", c.threads);
    get(j, "seed", c.seed);
  } catch (const nlohmann::json::exception& e) {
    invalid(std::string("malformed config: ") + e.what());
  }
  return c;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::guard_exceeded:
    case Errc::table_too_large:
    case Errc::certification_failed:
      return 3;
    case Errc::engine_mismatch:
      return 4;
    default:
      return 2;
  }
}

namespace {

using Clock = std::chrono::steady_clock;

std::vector<u64> parse_primes(const std::string& text) {
  std::vector<u64> out;
  auto number = [&](const std::string& s) -> u64 {
    std::size_t used = 0;
    u64 v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) invalid("--primes: cannot parse '" + s + "'");
    return v;
  };
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const u64 lo = number(text.substr(0, dots));
    const u64 hi = number(text.substr(dots + 2));
    if (lo > hi) invalid("--primes: empty range " + text);
    for (u64 q : primes_in_range(lo, hi)) {
      if (q >= 3) out.push_back(q);
    }
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const u64 q = number(item);
    if (q < 3 || !is_prime(q)) throw Error(Errc::composite_modulus, "--primes: " + item + " is not an odd prime");
    out.push_back(q);
  }
  return out;
}

std::vector<int> parse_signs(const std::string& text) {
  std::vector<int> out;
  if (text.find(',') == std::string::npos && text.find_first_not_of("+-") == std::string::npos) {
    for (char c : text) out.push_back(c == '+' ? 1 : -1);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item == "+" || item == "+1" || item == "1") {
        out.push_back(1);
      } else if (item == "-" || item == "-1") {
        out.push_back(-1);
      } else {
        invalid("--signs: entries must be + or -, got '" + item + "'");
      }
    }
  }
  if (out.empty()) invalid("--signs must name at least one sign");
  return out;
}

std::vector<int> alternating_signs(unsigned k) {
  std::vector<int> s(k);
  for (unsigned i = 0; i < k; ++i) s[i] = i % 2 == 0 ? 1 : -1;
  return s;
}

class Runner {
 public:
  Runner(const ExperimentConfig& cfg, std::ostream& err) : cfg_(cfg), err_(err) {}

  int execute(std::ostream& out) {
    const auto t0 = Clock::now();
    if (cfg_.threads > 0) omp_set_num_threads(static_cast<int>(cfg_.threads));
    engine_ = parse_engine(cfg_.engine);
    cache_ = Cache::from_options(cfg_.cache_dir);
    const std::string& c = cfg_.command;
    if (c == "factorials") {
      format_ = pick_format(OutputFormat::text);
      factorials();
    } else if (c == "expsum") {
      format_ = pick_format(OutputFormat::text);
      expsum();
    } else if (c == "count") {
      format_ = pick_format(OutputFormat::text);
      count();
    } else if (c == "verify") {
      format_ = pick_format(OutputFormat::csv);
      verify();
    } else if (c == "stats") {
      format_ = pick_format(OutputFormat::csv);
      stats(false);
    } else if (c == "sweep") {
      format_ = pick_format(OutputFormat::csv);
      stats(true);
    } else {
      invalid(c.empty() ? "no command given" : "unknown command '" + c + "'");
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (format_ == OutputFormat::json) {
      ReportEnvelope env;
      env.version = version_string();
      env.config = cfg_.to_json();
      env.results = std::move(results_);
      env.timing = Json{{"seconds", seconds}};
      env.warnings = warnings_;
      out << env.to_json().dump(2) << '\n';
    } else {
      out << body_.str();
      for (const auto& w : warnings_) err_ << "warning: " << w << '\n';
    }
    return 0;
  }

 private:
  OutputFormat pick_format(OutputFormat fallback) const {
    return cfg_.format ? parse_format(*cfg_.format) : fallback;
  }

  char sep() const { return format_ == OutputFormat::tsv ? '\t' : ','; }

  u64 require_p() const {
    if (!cfg_.p) invalid("--p is required");
    if (*cfg_.p < 3 || !is_prime(*cfg_.p)) {
      throw Error(Errc::composite_modulus, "--p must be an odd prime, got " + std::to_string(*cfg_.p));
    }
    return *cfg_.p;
  }

  std::vector<u64> prime_list(bool range_required) const {
    if (cfg_.primes) return parse_primes(*cfg_.primes);
    if (range_required) invalid("--primes is required");
    return {require_p()};
  }

  static WindowSpec window(u64 p, const std::optional<u64>& start, const std::optional<u64>& length,
                           const char* start_flag, const char* length_flag) {
    const u64 s = start.value_or(0);
    if (!length && s + 1 >= p) {
      invalid(std::string("--") + start_flag + " must be below p-1 when --" + length_flag + " is omitted");
    }
    const WindowSpec w{s, length.value_or(p - 1 - s)};
    if (w.length == 0 || w.start >= p || w.length >= p - w.start) {
      throw Error(Errc::window_out_of_range, std::string("--") + start_flag + "/--" + length_flag +
                                                 ": need 0 <= " + start_flag + " < " + start_flag + "+" +
                                                 length_flag + " < p");
    }
    return w;
  }

  WindowSpec m_window(u64 p) const { return window(p, cfg_.K, cfg_.M, "K", "M"); }
  WindowSpec n_window(u64 p) const { return window(p, cfg_.L, cfg_.N, "L", "N"); }
  WindowSpec t_window(u64 p) const { return window(p, cfg_.S, cfg_.T, "S", "T"); }

  void factorials() {
    const u64 p = require_p();
    const auto w = cache_.window(cache_.plain_context(p), n_window(p));
    if (format_ == OutputFormat::json) {
      results_ = Json{{"p", p}, {"L", w.start()}, {"N", w.length()}, {"values", w.values()}};
    } else if (format_ == OutputFormat::text) {
      for (std::size_t i = 0; i < w.length(); ++i) body_ << (i ? " " : "") << w.values()[i];
      body_ << '\n';
    } else {
      body_ << "n" << sep() << "factorial\n";
      for (u64 n = w.start() + 1; n <= w.start() + w.length(); ++n) body_ << n << sep() << w.factorial(n) << '\n';
    }
  }

  void emit_value(const char* key, u64 index, Complex v, double abs_error) {
    if (format_ == OutputFormat::json) {
      results_ = Json{{key, index}, {"re", v.real()}, {"im", v.imag()}, {"abs", std::abs(v)}, {"abs_error", abs_error}};
    } else if (format_ == OutputFormat::text) {
      body_ << format_complex(v) << '\n';
    } else {
      body_ << key << sep() << "re" << sep() << "im" << sep() << "abs\n";
      body_ << index << sep() << format_double(v.real()) << sep() << format_double(v.imag()) << sep()
            << format_double(std::abs(v)) << '\n';
    }
  }

  void expsum() {
    const u64 p = require_p();
    const std::string& mode = cfg_.target;
    if (mode == "single") {
      if (!cfg_.a) invalid("--a is required for expsum single (use expsum spectrum for all frequencies)");
      const auto w = cache_.window(cache_.plain_context(p), n_window(p));
      const auto v = single_sum(w, *cfg_.a % p);
      emit_value("a", v.a, v.value, v.abs_error);
    } else if (mode == "double") {
      if (!cfg_.a) invalid("--a is required for expsum double");
      const auto ctx = cache_.plain_context(p);
      const auto m = cache_.window(ctx, m_window(p));
      const auto n = cache_.window(ctx, n_window(p));
      const auto v =
          double_sum(m, n, *cfg_.a % p, cfg_.direct ? DoubleSumEngine::direct : DoubleSumEngine::histogram);
      emit_value("a", v.a, v.value, v.abs_error);
    } else if (mode == "char") {
      if (!cfg_.j) invalid("--j is required for expsum char");
      const auto w = cache_.window(cache_.context(p), n_window(p));
      const u64 jj = *cfg_.j % (p - 1);
      emit_value("j", jj, character_sum(w, jj), 0.0);
    } else if (mode == "spectrum") {
      spectrum(p);
    } else {
      invalid("expsum mode must be single|double|char|spectrum, got '" + mode + "'");
    }
  }

  void spectrum(u64 p) {
    const auto ctx = cache_.plain_context(p);
    const auto n = cache_.window(ctx, n_window(p));
    std::optional<FactorialWindow> m;
    if (cfg_.M || cfg_.K) m = cache_.window(ctx, m_window(p));
    const Spectrum spec = m ? batch_double_sums(*m, n) : batch_single_sums(n);
    if (engine_ == EngineChoice::both || cfg_.direct) {
      std::mt19937_64 rng(cfg_.seed);
      std::uniform_int_distribution<u64> pick(0, p - 1);
      const double size = static_cast<double>(n.length()) * static_cast<double>(m ? m->length() : 1);
      for (int i = 0; i < 16; ++i) {
        const u64 a = pick(rng);
        const auto ref = m ? double_sum(*m, n, a, DoubleSumEngine::direct) : single_sum(n, a);
        if (std::abs(ref.value - spec[a]) > ref.abs_error + spec.abs_error() + 1e-9 * size) {
          throw Error(Errc::engine_mismatch, "spectrum spot check failed at a=" + std::to_string(a));
        }
      }
    }
    if (format_ == OutputFormat::json) {
      Json values = Json::array();
      for (const auto& v : spec.values()) values.push_back(Json::array({v.real(), v.imag()}));
      results_ = Json{{"p", p}, {"double", spec.is_double()}, {"abs_error", spec.abs_error()}, {"values", values}};
      return;
    }
    const char s = sep();
    body_ << "a" << s << "re" << s << "im" << s << "abs\n";
    for (u64 a = 0; a < p; ++a) {
      const auto& v = spec[a];
      body_ << a << s << format_double(v.real()) << s << format_double(v.imag()) << s << format_double(std::abs(v))
            << '\n';
    }
  }

  void count() {
    const Family family = parse_family(cfg_.target);
    const u64 p = require_p();
    CountQuery q;
    q.family = family;
    q.ell = cfg_.ell;
    q.k = cfg_.k;
    q.r = cfg_.r;
    q.ctx = q.needs_dlog() ? cache_.context(p) : cache_.plain_context(p);
    q.n_window = n_window(p);
    if (family == Family::F || family == Family::T || family == Family::Q || (family == Family::R && q.k >= 1)) {
      q.m_window = m_window(p);
    }
    if (family == Family::R) q.t_window = t_window(p);
    if (family == Family::SIGNED) q.signs = cfg_.signs ? parse_signs(*cfg_.signs) : alternating_signs(cfg_.k);
    if (q.has_target()) {
      const long long lam = cfg_.lambda.value_or(family == Family::R ? 1 : 0);
      const long long pp = static_cast<long long>(p);
      q.lambda = static_cast<u64>(((lam % pp) + pp) % pp);
      if (family == Family::R && q.lambda == 0) invalid("--lambda must be nonzero mod p for family R");
    } else if (cfg_.lambda) {
      warnings_.push_back("--lambda is ignored for family " + cfg_.target);
    }
    const auto result = run_count(q, engine_);
    if (family == Family::R && result.dropped_zero_mass > 0) {
      warnings_.push_back("family R: " + result.dropped_zero_mass.str() +
                          " tuples have a vanishing bracket sum and cannot reach a nonzero lambda");
    }
    if (format_ == OutputFormat::json) {
      results_ = count_record(q, result);
    } else if (format_ == OutputFormat::text) {
      body_ << result.count.str() << '\n';
    } else {
      const char s = sep();
      body_ << "family" << s << "p" << s << "K" << s << "M" << s << "L" << s << "N" << s << "S" << s << "T" << s
            << "ell" << s << "k" << s << "r" << s << "lambda" << s << "count" << s << "engine" << s << "seconds\n";
      body_ << to_string(family) << s << p << s << q.m_window.start << s << q.m_window.length << s
            << q.n_window.start << s << q.n_window.length << s << q.t_window.start << s << q.t_window.length << s
            << q.ell << s << q.k << s << q.r << s << (q.has_target() ? std::to_string(q.lambda) : "") << s
            << result.count.str() << s << to_string(result.engine) << s << format_double(result.seconds) << '\n';
    }
  }

  void verify() {
    const Theorem theorem = parse_theorem(cfg_.target);
    const auto primes = prime_list(false);
    GridPoint g;
    g.m_start = cfg_.K.value_or(0);
    g.n_start = cfg_.L.value_or(0);
    g.t_start = cfg_.S.value_or(0);
    g.m_length = cfg_.M;
    g.n_length = cfg_.N;
    g.t_length = cfg_.T;
    g.ell = cfg_.ell;
    g.k = cfg_.k;
    g.r = cfg_.r;
    g.s = cfg_.s;
    if (cfg_.signs) g.signs = parse_signs(*cfg_.signs);
    const std::vector<GridPoint> grid{g};
    const auto sweep = verify_sweep(theorem, primes, grid, engine_);
    for (const auto& skip : sweep.skipped) {
      warnings_.push_back("p=" + std::to_string(skip.p) + " skipped: " + skip.reason);
    }
    if (format_ == OutputFormat::json) {
      Json reports = Json::array();
      double max_ratio = 0.0;
      for (const auto& r : sweep.reports) {
        reports.push_back(bound_json(r));
        max_ratio = std::max(max_ratio, r.ratio);
      }
      Json skipped = Json::array();
      for (const auto& s : sweep.skipped) skipped.push_back(Json{{"p", s.p}, {"reason", s.reason}});
      results_ = Json{{"reports", reports},
                      {"series", ratio_series(sweep.reports)},
                      {"max_ratio", sweep.reports.empty() ? Json(nullptr) : Json(max_ratio)},
                      {"skipped", skipped}};
      return;
    }
    write_bound_header(body_, sep());
    for (const auto& r : sweep.reports) write_bound_row(body_, r, sep());
  }

  void stats(bool sweep) {
    const std::string& kind = cfg_.target;
    if (kind == "distinct" || (sweep && kind == "f11")) {
      if (!sweep && kind != "distinct") invalid("stats kind must be distinct|discrepancy");
      distinct(prime_list(sweep));
    } else if (kind == "discrepancy") {
      discrepancy(prime_list(sweep));
    } else if (sweep && kind == "spectrum-max") {
      spectrum_max(prime_list(true));
    } else {
      invalid(sweep ? "sweep kind must be f11|discrepancy|spectrum-max, got '" + kind + "'"
                    : "stats kind must be distinct|discrepancy, got '" + kind + "'");
    }
  }

  void distinct(const std::vector<u64>& primes) {
    std::vector<DistributionStats> rows;
    for (u64 p : primes) rows.push_back(distinct_stats(cache_.window(cache_.plain_context(p), n_window(p))));
    double mean_abs = 0.0;
    for (const auto& r : rows) mean_abs += std::abs(r.deviation);
    if (!rows.empty()) mean_abs /= static_cast<double>(rows.size());
    if (format_ == OutputFormat::json) {
      Json arr = Json::array();
      for (const auto& r : rows) {
        arr.push_back(Json{{"p", r.p},
                           {"distinct_count", r.distinct_count},
                           {"distinct_fraction", r.distinct_fraction},
                           {"missed_fraction", r.missed_fraction},
                           {"reference", r.reference},
                           {"deviation", r.deviation}});
      }
      results_ = Json{{"rows", arr}, {"mean_abs_deviation", rows.empty() ? Json(nullptr) : Json(mean_abs)}};
      return;
    }
    const char s = sep();
    body_ << "p" << s << "distinct_count" << s << "distinct_fraction" << s << "missed_fraction" << s << "reference"
          << s << "deviation\n";
    for (const auto& r : rows) {
      body_ << r.p << s << r.distinct_count << s << format_double(r.distinct_fraction) << s
            << format_double(r.missed_fraction) << s << format_double(r.reference) << s << format_double(r.deviation)
            << '\n';
    }
  }

  void discrepancy(const std::vector<u64>& primes) {
    struct Row {
      u64 p;
      DiscrepancyReport report;
    };
    std::vector<Row> rows;
    for (u64 p : primes) {
      const auto ctx = cache_.plain_context(p);
      const auto m = cache_.window(ctx, m_window(p));
      const auto n = cache_.window(ctx, n_window(p));
      const u64 H = cfg_.H.value_or(p - 1);
      if (H < 1 || H >= p) invalid("--H must satisfy 1 <= H < p");
      const bool small = static_cast<double>(m.length()) * static_cast<double>(n.length()) <= kDirectDiscrepancyGuard;
      auto report = discrepancy_estimate(m, n, H, cfg_.direct || small);
      if (report.direct && *report.direct > report.estimate) {
        warnings_.push_back("p=" + std::to_string(p) + ": direct discrepancy exceeds the estimate");
      }
      rows.push_back({p, report});
    }
    if (format_ == OutputFormat::json) {
      Json arr = Json::array();
      for (const auto& [p, r] : rows) {
        arr.push_back(Json{{"p", p},
                           {"H", r.H},
                           {"estimate", r.estimate},
                           {"direct", r.direct ? Json(*r.direct) : Json(nullptr)},
                           {"constants", Json::array({r.constant_main, r.constant_sum})}});
      }
      results_ = Json{{"rows", arr}};
      return;
    }
    const char s = sep();
    body_ << "p" << s << "H" << s << "estimate" << s << "direct" << s << "constant_main" << s << "constant_sum\n";
    for (const auto& [p, r] : rows) {
      body_ << p << s << r.H << s << format_double(r.estimate) << s << (r.direct ? format_double(*r.direct) : "")
            << s << format_double(r.constant_main) << s << format_double(r.constant_sum) << '\n';
    }
  }

  void spectrum_max(const std::vector<u64>& primes) {
    struct Row {
      u64 p, a;
      double value;
    };
    std::vector<Row> rows;
    for (u64 p : primes) {
      const auto ctx = cache_.plain_context(p);
      const auto n = cache_.window(ctx, n_window(p));
      const auto spec = (cfg_.M || cfg_.K) ? batch_double_sums(cache_.window(ctx, m_window(p)), n)
                                           : batch_single_sums(n);
      const auto [a, value] = spec.max_nontrivial();
      rows.push_back({p, a, value});
    }
    if (format_ == OutputFormat::json) {
      Json arr = Json::array();
      for (const auto& r : rows) {
        arr.push_back(Json{{"p", r.p}, {"a", r.a}, {"max_abs", r.value},
                           {"max_over_sqrt_p", r.value / std::sqrt(static_cast<double>(r.p))}});
      }
      results_ = Json{{"rows", arr}};
      return;
    }
    const char s = sep();
    body_ << "p" << s << "a" << s << "max_abs" << s << "max_over_sqrt_p\n";
    for (const auto& r : rows) {
      body_ << r.p << s << r.a << s << format_double(r.value) << s
            << format_double(r.value / std::sqrt(static_cast<double>(r.p))) << '\n';
    }
  }

  const ExperimentConfig& cfg_;
  std::ostream& err_;
  EngineChoice engine_ = EngineChoice::auto_select;
  Cache cache_;
  OutputFormat format_ = OutputFormat::text;
  std::ostringstream body_;
  Json results_;
  std::vector<std::string> warnings_;
};

}  // namespace

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Runner runner(config, err);
    return runner.execute(out);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  std::string config_file;
  CLI::App app{"Exponential sums and exact congruence counts for factorials modulo a prime", "fcl"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  app.set_version_flag("--version", version_string());

  app.add_option("--config", config_file, "Replay a JSON config (or a full report envelope)");
  auto opt_u64 = [&](const char* name, std::optional<u64>& slot, const char* help) {
    app.add_option_function<u64>(name, [&slot](const u64& v) { slot = v; }, help);
  };
  opt_u64("--p", cfg.p, "Odd prime modulus");
  app.add_option_function<std::string>("--primes", [&](const std::string& v) { cfg.primes = v; },
                                       "Prime range A..B or comma list");
  opt_u64("--K", cfg.K, "m-window start");
  opt_u64("--M", cfg.M, "m-window length");
  opt_u64("--L", cfg.L, "n-window start");
  opt_u64("--N", cfg.N, "n-window length");
  opt_u64("--S", cfg.S, "t-window start");
  opt_u64("--T", cfg.T, "t-window length");
  app.add_option("--ell", cfg.ell, "Multiplicity ell");
  app.add_option("--k", cfg.k, "Multiplicity k");
  app.add_option("--r", cfg.r, "Multiplicity r");
  app.add_option("--s", cfg.s, "Auxiliary parameter s (T4.1, T4.4)");
  app.add_option_function<long long>("--lambda", [&](const long long& v) { cfg.lambda = v; }, "Target residue");
  app.add_option_function<std::string>("--signs", [&](const std::string& v) { cfg.signs = v; },
                                       "Signs for SIGNED, e.g. +,-,+");
  opt_u64("--a", cfg.a, "Additive frequency");
  opt_u64("--j", cfg.j, "Multiplicative character index");
  app.add_flag("--direct", cfg.direct, "Use the direct summation engine");
  app.add_option("--engine", cfg.engine, "auto|conv|brute|both");
  opt_u64("--H", cfg.H, "Erdos-Turan truncation");
  app.add_option_function<std::string>("--format", [&](const std::string& v) { cfg.format = v; },
                                       "text|json|csv|tsv");
  app.add_option_function<std::string>("--cache-dir", [&](const std::string& v) { cfg.cache_dir = v; },
                                       "Cache directory (default $FCL_CACHE_DIR)");
  app.add_option("--threads", cfg.threads, "Worker threads (0 = OpenMP default)");
  app.add_option("--seed", cfg.seed, "Seed for sampled spot checks");

  app.add_subcommand("factorials", "List n! mod p over a window");
  app.add_subcommand("expsum", "Exponential and character sums")
      ->add_option("mode", cfg.target, "single|double|char|spectrum")
      ->required();
  app.add_subcommand("count", "Exact solution count")->add_option("family", cfg.target, "J|SIGNED|F|I|T|Q|R")->required();
  app.add_subcommand("verify", "Bound verification sweep")->add_option("theorem", cfg.target, "Theorem id")->required();
  app.add_subcommand("stats", "Distribution statistics")
      ->add_option("kind", cfg.target, "distinct|discrepancy")
      ->required();
  app.add_subcommand("sweep", "Statistics over a prime range")
      ->add_option("kind", cfg.target, "f11|discrepancy|spectrum-max")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Error& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (!config_file.empty()) {
    if (!app.get_subcommands().empty()) {
      err << "error [invalid-argument]: --config cannot be combined with a subcommand\n";
      return 2;
    }
    std::ifstream in(config_file);
    if (!in) {
      err << "error [io-error]: cannot read " << config_file << '\n';
      return 2;
    }
    try {
      Json j = Json::parse(in);
      if (j.contains("config") && j.contains("tool")) j = j["config"];
      cfg = ExperimentConfig::from_json(j);
    } catch (const std::exception& e) {
      err << "error [invalid-argument]: --config: " << e.what() << '\n';
      return 2;
    }
    return run(cfg, out, err);
  }
  if (app.get_subcommands().empty()) {
    out << app.help();
    return 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return run(cfg, out, err);
}

}  // namespace fcl
