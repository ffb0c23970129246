#include "fcl/field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "binio.hpp"

namespace fcl {

u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 inv_mod(u64 a, u64 m) {
  if (a % m == 0) throw Error(Errc::invalid_argument, "zero has no inverse modulo " + std::to_string(m));
  return pow_mod(a, m - 2, m);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 q : kWitnesses) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kWitnesses) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 q = 2; q <= n / q; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

void require_odd_prime(u64 p) {
  if (p < 3 || !is_prime(p)) {
    throw Error(Errc::composite_modulus, "modulus " + std::to_string(p) + " is not an odd prime");
  }
}

bool is_generator(u64 g, u64 p, std::span<const u64> factors) {
  return std::all_of(factors.begin(), factors.end(),
                     [&](u64 q) { return pow_mod(g, (p - 1) / q, p) != 1; });
}

}  // namespace

u64 find_primitive_root(u64 p) {
  require_odd_prime(p);
  const auto factors = prime_factors(p - 1);
  for (u64 g = 2; g < p; ++g) {
    if (is_generator(g, p, factors)) return g;
  }
  throw Error(Errc::composite_modulus, "no primitive root for " + std::to_string(p));
}

std::vector<u64> primes_in_range(u64 lo, u64 hi) {
  std::vector<u64> out;
  if (hi < 2 || lo > hi) return out;
  lo = std::max<u64>(lo, 2);
  if (hi - lo > 200'000'000) {
    throw Error(Errc::invalid_argument, "prime range wider than 2e8");
  }
  const u64 root = static_cast<u64>(std::sqrt(static_cast<long double>(hi))) + 1;
  std::vector<char> small(root + 1, 1);
  std::vector<u64> base;
  for (u64 i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (u64 j = i * i; j <= root; j += i) small[j] = 0;
  }
  std::vector<char> seg(hi - lo + 1, 1);
  for (u64 q : base) {
    u64 start = std::max(q * q, (lo + q - 1) / q * q);
    for (u64 j = start; j <= hi; j += q) seg[j - lo] = 0;
  }
  for (u64 i = 0; i < seg.size(); ++i) {
    if (seg[i]) out.push_back(lo + i);
  }
  return out;
}

DlogTable DlogTable::build(u64 p, u64 g, u64 limit) {
  if (p > limit) {
    throw Error(Errc::table_too_large, "dlog table for p=" + std::to_string(p) +
                                            " exceeds the limit " + std::to_string(limit));
  }
  if (p > (u64{1} << 32)) {
    throw Error(Errc::table_too_large, "dlog entries are 32-bit; p too large");
  }
  DlogTable t;
  t.p_ = p;
  t.index_.assign(p, 0);
  t.power_.assign(p - 1, 0);
  u64 x = 1;
  for (u64 k = 0; k + 1 < p; ++k) {
    t.index_[x] = static_cast<u32>(k);
    t.power_[k] = static_cast<u32>(x);
    x = mul_mod(x, g, p);
  }
  if (x != 1) throw Error(Errc::invalid_argument, "generator does not have order p-1");
  return t;
}

DlogTable DlogTable::from_indices(u64 p, u64 g, std::vector<u32> index_of) {
  if (index_of.size() != p - 1) throw Error(Errc::invalid_argument, "dlog entry count mismatch");
  DlogTable t;
  t.p_ = p;
  t.index_.assign(p, 0);
  t.power_.assign(p - 1, 0);
  std::vector<char> seen(p - 1, 0);
  for (u64 x = 1; x < p; ++x) {
    const u32 k = index_of[x - 1];
    if (k >= p - 1 || seen[k]) throw Error(Errc::corrupt_cache, "dlog entries are not a permutation");
    seen[k] = 1;
    t.index_[x] = k;
    t.power_[k] = static_cast<u32>(x);
  }
  (void)g;
  return t;
}

PrimeContext::PrimeContext(u64 p) : p_(p), g_(find_primitive_root(p)), factors_(prime_factors(p - 1)) {}

PrimeContext::PrimeContext(u64 p, DlogTable table) : PrimeContext(p) {
  if (table.modulus() != p) throw Error(Errc::invalid_argument, "dlog table modulus mismatch");
  dlog_ = std::make_shared<const DlogTable>(std::move(table));
}

ContextPtr PrimeContext::make(u64 p) { return std::make_shared<const PrimeContext>(p); }

ContextPtr PrimeContext::make_with_dlog(u64 p, u64 limit) {
  require_odd_prime(p);
  const u64 g = find_primitive_root(p);
  return std::make_shared<const PrimeContext>(p, DlogTable::build(p, g, limit));
}

const DlogTable& PrimeContext::dlog() const {
  if (!dlog_) {
    throw Error(Errc::missing_dlog, "operation needs the discrete-log table for p=" + std::to_string(p_));
  }
  return *dlog_;
}

Residue Residue::from_signed(long long value, u64 p) {
  const long long m = static_cast<long long>(p);
  long long r = value % m;
  if (r < 0) r += m;
  return {static_cast<u64>(r), p};
}

Residue Residue::inverse() const { return {inv_mod(value_, p_), p_}; }

void save_dlog_cache(const std::filesystem::path& path, const PrimeContext& ctx) {
  const auto& table = ctx.dlog();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
  out.write("FCL1", 4);
  detail::write_le<u64>(out, ctx.p());
  detail::write_le<u64>(out, ctx.generator());
  for (u32 k : table.indices()) detail::write_le<u32>(out, k);
  if (!out) throw Error(Errc::io_error, "short write to " + path.string());
}

ContextPtr load_dlog_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot read " + path.string());
  auto corrupt = [&](const std::string& why) {
    return Error(Errc::corrupt_cache, path.string() + ": " + why);
  };
  if (!detail::read_magic(in, "FCL1")) throw corrupt("bad magic");
  u64 p = 0, g = 0;
  if (!detail::read_le(in, p) || !detail::read_le(in, g)) throw corrupt("truncated header");
  if (p < 3 || p > (u64{1} << 32) || !is_prime(p)) throw corrupt("modulus is not a supported prime");
  std::vector<u32> entries(p - 1);
  for (auto& e : entries) {
    if (!detail::read_le(in, e)) throw corrupt("truncated table");
  }
  if (in.peek() != std::char_traits<char>::eof()) throw corrupt("trailing bytes");

  const auto factors = prime_factors(p - 1);
  if (g < 2 || g >= p || !is_generator(g, p, factors)) throw corrupt("stored generator is not a primitive root");

  std::mt19937_64 rng(p ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<u64> pick(1, p - 1);
  for (int i = 0; i < 64; ++i) {
    const u64 x = pick(rng);
    if (pow_mod(g, entries[x - 1], p) != x) throw corrupt("sample check failed at x=" + std::to_string(x));
  }
  auto table = DlogTable::from_indices(p, g, std::move(entries));
  auto ctx = std::make_shared<const PrimeContext>(p, std::move(table));
  if (ctx->generator() != g) {
    // Tables are always built against the smallest primitive root.
    throw corrupt("stored generator differs from the canonical primitive root");
  }
  return ctx;
}

}  // namespace fcl
