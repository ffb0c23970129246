#include "fcl/factorial.hpp"

#include <algorithm>
#include <fstream>

#include "binio.hpp"
#include "fcl/kernels.hpp"

namespace fcl {

void require_window(u64 p, WindowSpec spec) {
  if (spec.length == 0 || spec.start >= p || spec.length >= p - spec.start) {
    throw Error(Errc::window_out_of_range, "window (" + std::to_string(spec.start) + ", " +
                                                std::to_string(spec.start) + "+" + std::to_string(spec.length) +
                                                "] must satisfy 0 <= L < L+N < p=" + std::to_string(p));
  }
}

FactorialWindow FactorialWindow::build(ContextPtr ctx, u64 start, u64 length) {
  const u64 p = ctx->p();
  require_window(p, {start, length});
  u64 seed = 1;
  for (u64 n = 2; n <= start + 1; ++n) seed = mul_mod(seed, n, p);
  std::vector<u64> values(length);
  values[0] = seed;
  for (u64 i = 1; i < length; ++i) values[i] = mul_mod(values[i - 1], start + i + 1, p);
  return FactorialWindow(std::move(ctx), start, std::move(values));
}

FactorialWindow FactorialWindow::adopt(ContextPtr ctx, u64 start, std::vector<u64> values) {
  const u64 p = ctx->p();
  require_window(p, {start, values.size()});
  u64 seed = 1;
  for (u64 n = 2; n <= start + 1; ++n) seed = mul_mod(seed, n, p);
  if (values[0] != seed) throw Error(Errc::corrupt_cache, "first window entry is not (L+1)!");
  for (u64 i = 1; i < values.size(); ++i) {
    if (values[i] != mul_mod(values[i - 1], start + i + 1, p)) {
      throw Error(Errc::corrupt_cache, "window entries break the factorial recurrence at index " + std::to_string(i));
    }
  }
  return FactorialWindow(std::move(ctx), start, std::move(values));
}

Histogram::Histogram(Domain domain, ExactVector counts) : domain_(domain), counts_(std::move(counts)) {
  BigCount t = mass(counts_);
  total_ = to_count(t);
}

std::size_t Histogram::support_size() const {
  return static_cast<std::size_t>(std::count_if(counts_.begin(), counts_.end(), [](Count c) { return c != 0; }));
}

Histogram value_histogram(const FactorialWindow& window) {
  ExactVector counts(window.p(), 0);
  for (u64 v : window.values()) ++counts[v];
  return {Domain::additive, std::move(counts)};
}

Histogram sum_histogram(const FactorialWindow& window, unsigned k) {
  if (k == 0) throw Error(Errc::invalid_argument, "sum histogram needs k >= 1");
  const auto base = value_histogram(window);
  return {Domain::additive, cyclic_power(base.counts(), k)};
}

Histogram log_value_histogram(const FactorialWindow& window) {
  const auto& dlog = window.ctx().dlog();
  ExactVector counts(window.p() - 1, 0);
  for (u64 v : window.values()) ++counts[dlog.index(v)];
  return {Domain::multiplicative, std::move(counts)};
}

Histogram to_multiplicative(const Histogram& additive, const PrimeContext& ctx, Count* dropped_zero) {
  if (additive.domain() != Domain::additive) throw Error(Errc::invalid_argument, "expected an additive histogram");
  const auto& dlog = ctx.dlog();
  ExactVector counts(ctx.p() - 1, 0);
  for (u64 x = 1; x < ctx.p(); ++x) counts[dlog.index(x)] = additive[x];
  if (dropped_zero) *dropped_zero = additive[0];
  return {Domain::multiplicative, std::move(counts)};
}

Histogram to_additive(const Histogram& multiplicative, const PrimeContext& ctx) {
  if (multiplicative.domain() != Domain::multiplicative) {
    throw Error(Errc::invalid_argument, "expected a multiplicative histogram");
  }
  const auto& dlog = ctx.dlog();
  ExactVector counts(ctx.p(), 0);
  for (u64 e = 0; e + 1 < ctx.p(); ++e) counts[dlog.power(e)] = multiplicative[e];
  return {Domain::additive, std::move(counts)};
}

Histogram product_histogram(const FactorialWindow& a, const FactorialWindow& b) {
  if (a.p() != b.p()) throw Error(Errc::invalid_argument, "product histogram windows use different moduli");
  const auto& ctx = a.ctx();
  if (!ctx.has_dlog()) {
    return Histogram(Domain::additive, kernels::tally_products_parallel(a.values(), b.values(), a.p()));
  }
  const auto la = log_value_histogram(a);
  const auto lb = log_value_histogram(b);
  Histogram logs(Domain::multiplicative, cyclic_convolve_exact(la.counts(), lb.counts()));
  return to_additive(logs, ctx);
}

void save_window_cache(const std::filesystem::path& path, const FactorialWindow& window) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
  out.write("FCW1", 4);
  detail::write_le<u64>(out, window.p());
  detail::write_le<u64>(out, window.start());
  detail::write_le<u64>(out, window.length());
  for (u64 v : window.values()) detail::write_le<u64>(out, v);
  if (!out) throw Error(Errc::io_error, "short write to " + path.string());
}

FactorialWindow load_window_cache(const std::filesystem::path& path, ContextPtr ctx) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot read " + path.string());
  auto corrupt = [&](const std::string& why) { return Error(Errc::corrupt_cache, path.string() + ": " + why); };
  if (!detail::read_magic(in, "FCW1")) throw corrupt("bad magic");
  u64 p = 0, start = 0, length = 0;
  if (!detail::read_le(in, p) || !detail::read_le(in, start) || !detail::read_le(in, length)) {
    throw corrupt("truncated header");
  }
  if (p != ctx->p()) throw corrupt("modulus does not match the context");
  if (length == 0 || start >= p || length >= p - start) throw corrupt("window bounds out of range");
  std::vector<u64> values(length);
  for (auto& v : values) {
    if (!detail::read_le(in, v)) throw corrupt("truncated residues");
    if (v == 0 || v >= p) throw corrupt("residue out of range");
  }
  if (in.peek() != std::char_traits<char>::eof()) throw corrupt("trailing bytes");
  try {
    return FactorialWindow::adopt(std::move(ctx), start, std::move(values));
  } catch (const Error& e) {
    throw corrupt(e.what());
  }
}

}  // namespace fcl
