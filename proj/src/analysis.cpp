#include "fcl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include <omp.h>

namespace fcl {

std::string_view to_string(Theorem t) {
  switch (t) {
    case Theorem::T2_1: return "T2.1";
    case Theorem::C2_2: return "C2.2";
    case Theorem::T2_3: return "T2.3";
    case Theorem::T3_1: return "T3.1";
    case Theorem::T4_1: return "T4.1";
    case Theorem::T4_2: return "T4.2";
    case Theorem::T4_3: return "T4.3";
    case Theorem::T4_4: return "T4.4";
    case Theorem::CharSum: return "B-CharSum";
    case Theorem::BoundI: return "B-I";
  }
  return "?";
}

std::vector<Theorem> all_theorems() {
  return {Theorem::T2_1, Theorem::C2_2, Theorem::T2_3, Theorem::T3_1, Theorem::T4_1,
          Theorem::T4_2, Theorem::T4_3, Theorem::T4_4, Theorem::CharSum, Theorem::BoundI};
}

Theorem parse_theorem(std::string_view name) {
  for (Theorem t : all_theorems()) {
    if (name == to_string(t)) return t;
  }
  throw Error(Errc::invalid_argument, "unknown theorem id '" + std::string(name) + "'");
}

namespace {

[[noreturn]] void violated(const std::string& why) { throw Error(Errc::hypothesis_violated, why); }

void need(bool ok, const std::string& why) {
  if (!ok) violated(why);
}

void need_window(u64 p, WindowSpec w, const char* name) {
  need(w.length >= 1 && w.start < p && w.length < p - w.start,
       std::string(name) + " window must satisfy 0 <= start < start+length < p");
}

double power_product(std::initializer_list<std::pair<double, double>> factors) {
  double out = 1.0;
  for (auto [base, exponent] : factors) out *= std::pow(base, exponent);
  return out;
}

std::vector<int> alternating(unsigned k) {
  std::vector<int> s(k);
  for (unsigned i = 0; i < k; ++i) s[i] = (i % 2 == 0) ? 1 : -1;
  return s;
}

// |count - num/den| with the subtraction done exactly.
double deviation(const BigCount& count, const BigCount& num, const BigCount& den) {
  BigCount diff = count * den - num;
  if (diff < 0) diff = -diff;
  return static_cast<double>(diff) / static_cast<double>(den);
}

struct Observed {
  double value = 0.0;
  std::string exact;
};

Observed max_deviation(const CountDistribution& dist, const BigCount& num, const BigCount& den, u64 first) {
  Observed out;
  for (std::size_t lam = first; lam < dist.counts.size(); ++lam) {
    const double d = deviation(to_big(dist.counts[lam]), num, den);
    if (d > out.value) out.value = d;
  }
  return out;
}

CountQuery base_query(Family family, const BoundParams& bp, ContextPtr ctx) {
  CountQuery q;
  q.family = family;
  q.ctx = std::move(ctx);
  q.m_window = bp.m_window;
  q.n_window = bp.n_window;
  q.t_window = bp.t_window;
  q.ell = bp.ell;
  q.k = bp.k;
  q.r = bp.r;
  return q;
}

void cross_check(const SpectrumValue& fast, const SpectrumValue& direct, double scale, const char* what) {
  const double tol = fast.abs_error + direct.abs_error + 1e-7 * scale;
  if (std::abs(fast.value - direct.value) > tol) {
    throw Error(Errc::engine_mismatch, std::string(what) + ": transform and direct engines disagree");
  }
}

Observed observe(Theorem theorem, const BoundParams& bp, EngineChoice engine, const ContextPtr& ctx) {
  const u64 p = bp.p;
  const BigCount M = bp.m_window.length, N = bp.n_window.length, T = bp.t_window.length;
  auto exact_count = [&](const CountQuery& q) {
    const auto r = run_count(q, engine);
    return Observed{static_cast<double>(r.count), r.count.str()};
  };
  switch (theorem) {
    case Theorem::T2_1:
      return exact_count(base_query(Family::J, bp, ctx));
    case Theorem::T2_3:
      return exact_count(base_query(Family::F, bp, ctx));
    case Theorem::BoundI:
      return exact_count(base_query(Family::I, bp, ctx));
    case Theorem::C2_2: {
      auto q = base_query(Family::SIGNED, bp, ctx);
      q.signs = bp.signs.empty() ? alternating(bp.k) : bp.signs;
      const auto dist = run_distribution(q, engine);
      const Count best = max_entry(dist.counts);
      return {static_cast<double>(best), to_string(best)};
    }
    case Theorem::T3_1: {
      const auto m = FactorialWindow::build(ctx, bp.m_window);
      const auto n = FactorialWindow::build(ctx, bp.n_window);
      const auto spectrum = batch_double_sums(m, n);
      const auto [a, value] = spectrum.max_nontrivial();
      if (engine == EngineChoice::both || engine == EngineChoice::brute_force) {
        const SpectrumValue fast{a, spectrum[a], spectrum.abs_error()};
        cross_check(fast, double_sum(m, n, a, DoubleSumEngine::direct), static_cast<double>(M * N), "T3.1");
      }
      return {value, {}};
    }
    case Theorem::CharSum: {
      const auto n = FactorialWindow::build(ctx, bp.n_window);
      const auto sums = batch_character_sums(n);
      u64 arg = 1;
      double best = 0.0;
      for (u64 j = 1; j < sums.size(); ++j) {
        if (std::abs(sums[j]) > best) {
          best = std::abs(sums[j]);
          arg = j;
        }
      }
      if (engine == EngineChoice::both || engine == EngineChoice::brute_force) {
        const SpectrumValue fast{arg, sums[arg], 1e-9 * static_cast<double>(N)};
        const SpectrumValue direct{arg, character_sum(n, arg), 0.0};
        cross_check(fast, direct, static_cast<double>(N), "B-CharSum");
      }
      return {best, {}};
    }
    case Theorem::T4_1: {
      auto q = base_query(Family::T, bp, ctx);
      const auto dist = run_distribution(q, engine);
      return max_deviation(dist, boost::multiprecision::pow(M * N, bp.r), p, 0);
    }
    case Theorem::T4_2: {
      auto q = base_query(Family::Q, bp, ctx);
      const auto dist = run_distribution(q, engine);
      return max_deviation(dist, M * boost::multiprecision::pow(N, bp.r + 1), p, 0);
    }
    case Theorem::T4_3:
    case Theorem::T4_4: {
      auto q = base_query(Family::R, bp, ctx);
      q.lambda = 1;
      if (theorem == Theorem::T4_4) q.k = 0;
      const BigCount mk = theorem == Theorem::T4_4 ? BigCount(1) : boost::multiprecision::pow(M, bp.k);
      const auto dist = run_distribution(q, engine);
      return max_deviation(dist, mk * boost::multiprecision::pow(N, bp.ell) * boost::multiprecision::pow(T, bp.r),
                           p - 1, 1);
    }
  }
  violated("unknown theorem");
}

}  // namespace

double bound_rhs(Theorem theorem, const BoundParams& bp) {
  const u64 p = bp.p;
  need(p >= 3 && is_prime(p), "p must be an odd prime");
  const double P = static_cast<double>(p);
  const double lg = std::log(P);
  const double M = static_cast<double>(bp.m_window.length);
  const double N = static_cast<double>(bp.n_window.length);
  const double T = static_cast<double>(bp.t_window.length);
  const double l = bp.ell, k = bp.k, r = bp.r, s = bp.s;
  auto uses_m = [&] { need_window(p, bp.m_window, "m"); };
  auto uses_t = [&] { need_window(p, bp.t_window, "t"); };
  need_window(p, bp.n_window, "n");
  auto balanced = [&] { need(N * N >= M && M >= std::sqrt(N), "requires N^2 >= M >= N^(1/2)"); };

  switch (theorem) {
    case Theorem::T2_1:
      need(bp.ell >= 1, "ell >= 1");
      return power_product({{N, 2 * l - 1 + 1 / (l + 1)}});
    case Theorem::C2_2: {
      need(bp.k >= 1, "k >= 1");
      need(bp.signs.empty() || bp.signs.size() == bp.k, "signs must have k entries");
      const double k1 = bp.k / 2, k2 = (bp.k + 1) / 2;
      return power_product({{N, k - 1 + 1 / (2 * (k1 + 1)) + 1 / (2 * (k2 + 1))}});
    }
    case Theorem::T2_3:
      uses_m();
      need(bp.ell >= 1, "ell >= 1");
      balanced();
      return power_product({{M, 2 * l - 1 + 1 / (2 * l)}, {N, 2 * l - 1 / (2 * (l + 1))}});
    case Theorem::T3_1:
      uses_m();
      need(bp.k >= 1 && bp.ell >= 1, "k, ell >= 1");
      return power_product({{M, 1 - 1 / (2 * l * (k + 1))}, {N, 1 - 1 / (2 * k * (l + 1))}, {P, 1 / (2 * k * l)}});
    case Theorem::T4_1: {
      uses_m();
      need(bp.k >= 1 && bp.ell >= 1 && bp.r >= 1, "k, ell, r >= 1");
      need(bp.s >= 1 && 2 * bp.s <= bp.r, "requires 1 <= s <= r/2");
      balanced();
      const double g = r - 2 * s;
      return power_product({{M, r - 1 + 1 / (2 * s) - g / (2 * l * (k + 1))},
                            {N, r - 1 / (2 * (s + 1)) - g / (2 * k * (l + 1))},
                            {P, g / (2 * k * l)}});
    }
    case Theorem::T4_2: {
      uses_m();
      need(bp.k >= 1 && bp.ell >= 1 && bp.r >= 1, "k, ell, r >= 1");
      const double r1 = bp.r / 2, r2 = (bp.r + 1) / 2;
      return power_product({{M, 1 - 1 / (2 * l * (k + 1))},
                            {N, r + 1 / (2 * (r1 + 1)) + 1 / (2 * (r2 + 1)) - 1 / (2 * k * (l + 1))},
                            {P, 1 / (2 * k * l)}});
    }
    case Theorem::T4_3:
      uses_m();
      uses_t();
      need(bp.k >= 1 && bp.ell >= 1 && bp.r >= 1, "k, ell, r >= 1");
      return power_product({{M, k - 0.5 + 1 / (2 * (k + 1))},
                            {N, l - 0.5 + 1 / (2 * (l + 1))},
                            {T, 3 * r / 4},
                            {P, r / 8},
                            {lg, r / 4}});
    case Theorem::T4_4:
      uses_t();
      need(bp.ell >= 1 && bp.r >= 1, "ell, r >= 1");
      need(bp.s <= bp.r, "requires 0 <= s <= r");
      return power_product({{N, l - 0.5 + 1 / (2 * (l + 1))},
                            {T, (3 * r + s) / 4 - 0.5 + std::ldexp(1.0, -static_cast<int>(bp.s) - 1)},
                            {P, (r - s) / 8},
                            {lg, (r - s) / 4}});
    case Theorem::CharSum:
      return power_product({{N, 0.75}, {P, 0.125}, {lg, 0.25}});
    case Theorem::BoundI:
      need(bp.ell >= 1, "ell >= 1");
      return power_product({{N, 2 * l - 1 + std::ldexp(1.0, -static_cast<int>(bp.ell))}});
  }
  violated("unknown theorem");
}

namespace {

BoundReport evaluate_with(Theorem theorem, const BoundParams& params, EngineChoice engine, const ContextPtr& ctx) {
  BoundReport report;
  report.theorem = theorem;
  report.params = params;
  report.rhs = bound_rhs(theorem, params);
  auto observed = observe(theorem, params, engine, ctx);
  report.lhs = observed.value;
  report.lhs_exact = std::move(observed.exact);
  report.ratio = report.lhs / report.rhs;
  return report;
}

}  // namespace

BoundReport evaluate_bound(Theorem theorem, const BoundParams& params, EngineChoice engine) {
  bound_rhs(theorem, params);
  return evaluate_with(theorem, params, engine, PrimeContext::make_with_dlog(params.p));
}

BoundParams resolve(const GridPoint& g, u64 p) {
  auto window = [p](u64 start, const std::optional<u64>& length) {
    const u64 fallback = start + 1 < p ? p - 1 - start : 0;
    return WindowSpec{start, length.value_or(fallback)};
  };
  BoundParams bp;
  bp.p = p;
  bp.m_window = window(g.m_start, g.m_length);
  bp.n_window = window(g.n_start, g.n_length);
  bp.t_window = window(g.t_start, g.t_length);
  bp.ell = g.ell;
  bp.k = g.k;
  bp.r = g.r;
  bp.s = g.s;
  bp.signs = g.signs;
  return bp;
}

SweepResult verify_sweep(Theorem theorem, std::span<const u64> primes, std::span<const GridPoint> grid,
                         EngineChoice engine) {
  std::vector<u64> ps(primes.begin(), primes.end());
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());

  struct Cell {
    BoundParams params;
    std::optional<BoundReport> report;
    std::string skip;
  };
  std::vector<Cell> cells;
  std::vector<ContextPtr> contexts;
  std::vector<std::size_t> context_of;
  for (u64 p : ps) {
    ContextPtr ctx;
    for (const auto& g : grid) {
      Cell cell{resolve(g, p), std::nullopt, {}};
      try {
        bound_rhs(theorem, cell.params);
        if (!ctx) ctx = PrimeContext::make_with_dlog(p);
      } catch (const Error& e) {
        if (e.code() != Errc::hypothesis_violated && e.code() != Errc::composite_modulus) throw;
        cell.skip = e.what();
      }
      cells.push_back(std::move(cell));
      context_of.push_back(contexts.size());
    }
    contexts.push_back(ctx);
  }

  std::exception_ptr failure;
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    auto& cell = cells[i];
    if (!cell.skip.empty()) continue;
    try {
      cell.report = evaluate_with(theorem, cell.params, engine, contexts[context_of[i]]);
    } catch (...) {
#pragma omp critical(fcl_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  SweepResult out;
  for (auto& cell : cells) {
    if (cell.report) {
      out.reports.push_back(std::move(*cell.report));
    } else {
      out.skipped.push_back({cell.params.p, cell.skip});
    }
  }
  return out;
}

DistributionStats distinct_stats(const FactorialWindow& window) {
  const auto h = value_histogram(window);
  DistributionStats s;
  s.p = window.p();
  s.distinct_count = h.support_size();
  s.distinct_fraction = static_cast<double>(s.distinct_count) / static_cast<double>(s.p);
  s.missed_fraction = 1.0 - s.distinct_fraction;
  s.deviation = s.distinct_fraction - s.reference;
  return s;
}

double erdos_turan_estimate(std::span<const Complex> sums, double total, u64 H) {
  if (H < 1 || sums.size() <= H) throw Error(Errc::invalid_argument, "need exponential sums for a = 0..H");
  double acc = 0.0;
  for (u64 a = 1; a <= H; ++a) acc += std::abs(sums[a]) / (static_cast<double>(a) * total);
  return 3.0 / static_cast<double>(H + 1) + 3.0 * acc;
}

DiscrepancyReport discrepancy_estimate(const FactorialWindow& m_window, const FactorialWindow& n_window, u64 H,
                                       bool with_direct) {
  const u64 p = m_window.p();
  if (H < 1 || H >= p) throw Error(Errc::invalid_argument, "H must satisfy 1 <= H < p");
  const auto spectrum = batch_double_sums(m_window, n_window);
  DiscrepancyReport out;
  out.H = H;
  const double total = static_cast<double>(m_window.length()) * static_cast<double>(n_window.length());
  out.estimate = erdos_turan_estimate(spectrum.values(), total, H);
  if (with_direct) out.direct = direct_discrepancy(m_window, n_window);
  return out;
}

double star_discrepancy(std::vector<double> points) {
  if (points.empty()) throw Error(Errc::invalid_argument, "star discrepancy of an empty point set");
  std::sort(points.begin(), points.end());
  const double n = static_cast<double>(points.size());
  double d = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double x = points[i];
    d = std::max({d, static_cast<double>(i + 1) / n - x, x - static_cast<double>(i) / n});
  }
  return d;
}

double direct_discrepancy(const FactorialWindow& m_window, const FactorialWindow& n_window) {
  const double count = static_cast<double>(m_window.length()) * static_cast<double>(n_window.length());
  if (count > kDirectDiscrepancyGuard) {
    throw Error(Errc::guard_exceeded, "direct discrepancy needs M*N <= 1e7");
  }
  const u64 p = m_window.p();
  std::vector<double> points;
  points.reserve(static_cast<std::size_t>(count));
  for (u64 x : m_window.values()) {
    for (u64 y : n_window.values()) points.push_back(static_cast<double>(mul_mod(x, y, p)) / static_cast<double>(p));
  }
  return star_discrepancy(std::move(points));
}

}  // namespace fcl
