#include "fcl/counting.hpp"

#include <chrono>

namespace fcl {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::J: return "J";
    case Family::SIGNED: return "SIGNED";
    case Family::F: return "F";
    case Family::I: return "I";
    case Family::T: return "T";
    case Family::Q: return "Q";
    case Family::R: return "R";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::J, Family::SIGNED, Family::F, Family::I, Family::T, Family::Q, Family::R}) {
    if (name == to_string(f)) return f;
  }
  throw Error(Errc::invalid_argument, "unknown counting family '" + std::string(name) + "'");
}

std::string_view to_string(CountEngine engine) {
  return engine == CountEngine::convolution ? "convolution" : "brute-force";
}

std::string_view to_string(EngineChoice choice) {
  switch (choice) {
    case EngineChoice::auto_select: return "auto";
    case EngineChoice::convolution: return "conv";
    case EngineChoice::brute_force: return "brute";
    case EngineChoice::both: return "both";
  }
  return "?";
}

EngineChoice parse_engine(std::string_view name) {
  for (EngineChoice c : {EngineChoice::auto_select, EngineChoice::convolution, EngineChoice::brute_force,
                         EngineChoice::both}) {
    if (name == to_string(c)) return c;
  }
  throw Error(Errc::invalid_argument, "unknown engine '" + std::string(name) + "' (auto|conv|brute|both)");
}

bool CountQuery::has_target() const { return family != Family::F && family != Family::I; }

bool CountQuery::needs_dlog() const {
  return family == Family::F || family == Family::I || family == Family::T || family == Family::Q ||
         family == Family::R;
}

void CountQuery::validate() const {
  if (!ctx) throw Error(Errc::invalid_argument, "count query has no prime context");
  const u64 p = ctx->p();
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(Errc::invalid_argument, what);
  };
  require_window(p, n_window);
  switch (family) {
    case Family::J:
    case Family::F:
    case Family::I:
      require(ell >= 1, "ell must be >= 1");
      break;
    case Family::SIGNED:
      require(!signs.empty(), "signs must name at least one term");
      for (int s : signs) require(s == 1 || s == -1, "signs must be +1 or -1");
      break;
    case Family::T:
    case Family::Q:
      require(r >= 1, "r must be >= 1");
      break;
    case Family::R:
      require(ell >= 1, "ell must be >= 1");
      require(r >= 1, "r must be >= 1");
      require(lambda % p != 0, "family R requires lambda != 0 mod p");
      require_window(p, t_window);
      break;
  }
  if (family == Family::F || family == Family::T || family == Family::Q || (family == Family::R && k >= 1)) {
    require_window(p, m_window);
  }
  require(!has_target() || lambda < p, "lambda must be reduced into [0, p)");
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

FactorialWindow window_of(const CountQuery& q, WindowSpec spec) { return FactorialWindow::build(q.ctx, spec); }

ExactVector signed_histogram(const FactorialWindow& w, int sign) {
  auto h = value_histogram(w);
  ExactVector v(h.counts().begin(), h.counts().end());
  return sign > 0 ? v : index_reversed(v);
}

ExactVector product_counts(const CountQuery& q) {
  const auto m = window_of(q, q.m_window);
  const auto n = window_of(q, q.n_window);
  const auto c = product_histogram(m, n);
  return {c.counts().begin(), c.counts().end()};
}

struct RParts {
  ExactVector logs;  // over exponents 0..p-2
  BigCount dropped;
};

RParts r_parts(const CountQuery& q) {
  const auto& ctx = *q.ctx;
  const u64 p = ctx.p();
  ExactVector a(p, 0);
  if (q.k == 0) {
    a[1] = 1;
  } else {
    a = waring_counts(window_of(q, q.m_window), q.k);
  }
  const auto b = waring_counts(window_of(q, q.n_window), q.ell);
  const auto t = window_of(q, q.t_window);
  const BigCount total_a = mass(a), total_b = mass(b);
  const BigCount t_mass = boost::multiprecision::pow(BigCount(t.length()), q.r);
  RParts out;
  out.dropped = (to_big(a[0]) * total_b + (total_a - to_big(a[0])) * to_big(b[0])) * t_mass;

  Histogram ha(Domain::additive, std::move(a));
  Histogram hb(Domain::additive, b);
  const auto la = to_multiplicative(ha, ctx);
  const auto lb = to_multiplicative(hb, ctx);
  const auto lt = cyclic_power(log_value_histogram(t).counts(), q.r);
  out.logs = cyclic_convolve_exact(cyclic_convolve_exact(la.counts(), lb.counts()), lt);
  return out;
}

}  // namespace

ExactVector waring_counts(const FactorialWindow& window, unsigned ell) {
  const auto g = sum_histogram(window, ell);
  return {g.counts().begin(), g.counts().end()};
}

CountDistribution distribution_convolution(const CountQuery& q) {
  q.validate();
  CountDistribution out;
  out.engine = CountEngine::convolution;
  const u64 p = q.ctx->p();
  switch (q.family) {
    case Family::J: {
      const auto g = waring_counts(window_of(q, q.n_window), q.ell);
      out.counts = cyclic_convolve_exact(g, index_reversed(g));
      break;
    }
    case Family::SIGNED: {
      const auto n = window_of(q, q.n_window);
      ExactVector acc = signed_histogram(n, q.signs[0]);
      for (std::size_t i = 1; i < q.signs.size(); ++i) acc = cyclic_convolve_exact(acc, signed_histogram(n, q.signs[i]));
      out.counts = std::move(acc);
      break;
    }
    case Family::F:
    case Family::I: {
      const auto r = count_convolution(q);
      out.counts = {to_count(r.count)};
      break;
    }
    case Family::T:
      out.counts = cyclic_power(product_counts(q), q.r);
      break;
    case Family::Q: {
      const auto c = product_counts(q);
      const auto g = waring_counts(window_of(q, q.n_window), q.r);
      out.counts = cyclic_convolve_exact(c, g);
      break;
    }
    case Family::R: {
      auto parts = r_parts(q);
      const auto& dlog = q.ctx->dlog();
      out.counts.assign(p, 0);
      for (u64 lam = 1; lam < p; ++lam) out.counts[lam] = parts.logs[dlog.index(lam)];
      out.dropped_zero_mass = parts.dropped;
      break;
    }
  }
  return out;
}

CountResult count_J(const CountQuery& q) {
  if (q.family != Family::J) throw Error(Errc::invalid_argument, "count_J needs a J query");
  q.validate();
  const auto t0 = Clock::now();
  const auto g = waring_counts(window_of(q, q.n_window), q.ell);
  CountResult out;
  out.count = correlate_at(g, g, q.lambda);
  out.seconds = seconds_since(t0);
  return out;
}

CountResult count_F(const CountQuery& q) {
  if (q.family != Family::F) throw Error(Errc::invalid_argument, "count_F needs an F query");
  q.validate();
  const auto t0 = Clock::now();
  const auto d = cyclic_power(product_counts(q), q.ell);
  CountResult out;
  out.count = correlate_at(d, d, 0);
  out.seconds = seconds_since(t0);
  return out;
}

CountResult count_I(const CountQuery& q) {
  if (q.family != Family::I) throw Error(Errc::invalid_argument, "count_I needs an I query");
  q.validate();
  const auto t0 = Clock::now();
  const auto logs = log_value_histogram(window_of(q, q.n_window));
  const auto power = cyclic_power(logs.counts(), q.ell);
  CountResult out;
  out.count = correlate_at(power, power, 0);
  out.seconds = seconds_since(t0);
  return out;
}

namespace {

CountResult read_target(const CountQuery& q, Family expected, const char* name) {
  if (q.family != expected) throw Error(Errc::invalid_argument, std::string(name) + " needs a matching query");
  const auto t0 = Clock::now();
  const auto dist = distribution_convolution(q);
  CountResult out;
  out.count = to_big(dist.counts[q.lambda]);
  out.dropped_zero_mass = dist.dropped_zero_mass;
  out.seconds = seconds_since(t0);
  return out;
}

}  // namespace

CountResult count_signed(const CountQuery& q) { return read_target(q, Family::SIGNED, "count_signed"); }
CountResult count_T(const CountQuery& q) { return read_target(q, Family::T, "count_T"); }
CountResult count_Q(const CountQuery& q) { return read_target(q, Family::Q, "count_Q"); }
CountResult count_R(const CountQuery& q) { return read_target(q, Family::R, "count_R"); }

CountResult count_convolution(const CountQuery& q) {
  switch (q.family) {
    case Family::J: return count_J(q);
    case Family::SIGNED: return count_signed(q);
    case Family::F: return count_F(q);
    case Family::I: return count_I(q);
    case Family::T: return count_T(q);
    case Family::Q: return count_Q(q);
    case Family::R: return count_R(q);
  }
  throw Error(Errc::invalid_argument, "unknown family");
}

namespace {

bool use_brute(const CountQuery& q, EngineChoice choice) {
  if (choice == EngineChoice::brute_force) return true;
  if (choice == EngineChoice::auto_select) return brute_force_work(q) < kExhaustiveLimit;
  return false;
}

[[noreturn]] void mismatch(const CountQuery& q, const std::string& conv, const std::string& brute) {
  throw Error(Errc::engine_mismatch, "family " + std::string(to_string(q.family)) + " p=" +
                                         std::to_string(q.ctx->p()) + ": convolution " + conv +
                                         " != brute-force " + brute);
}

}  // namespace

CountResult run_count(const CountQuery& q, EngineChoice choice) {
  q.validate();
  if (choice == EngineChoice::both) {
    auto conv = count_convolution(q);
    const auto brute = brute_force_count(q);
    if (conv.count != brute.count) mismatch(q, conv.count.str(), brute.count.str());
    conv.seconds += brute.seconds;
    return conv;
  }
  return use_brute(q, choice) ? brute_force_count(q) : count_convolution(q);
}

CountDistribution run_distribution(const CountQuery& q, EngineChoice choice) {
  q.validate();
  if (choice == EngineChoice::both) {
    auto conv = distribution_convolution(q);
    const auto brute = brute_force_distribution(q);
    for (std::size_t i = 0; i < conv.counts.size(); ++i) {
      if (conv.counts[i] != brute.counts[i]) mismatch(q, to_string(conv.counts[i]), to_string(brute.counts[i]));
    }
    return conv;
  }
  return use_brute(q, choice) ? brute_force_distribution(q) : distribution_convolution(q);
}

}  // namespace fcl
