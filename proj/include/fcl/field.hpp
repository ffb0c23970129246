#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "fcl/types.hpp"

namespace fcl {

inline constexpr u64 kDefaultDlogLimit = 10'000'000;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}
inline u64 add_mod(u64 a, u64 b, u64 m) {
  const u64 s = a + b;
  return (s >= m || s < a) ? s - m : s;
}
inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

u64 pow_mod(u64 base, u64 exp, u64 m);
/// Inverse of a modulo prime m via Fermat; a must be nonzero mod m.
u64 inv_mod(u64 a, u64 m);

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(u64 n);

/// Distinct prime factors of n in increasing order.
std::vector<u64> prime_factors(u64 n);

/// Smallest g >= 2 of multiplicative order p-1. Throws composite_modulus.
u64 find_primitive_root(u64 p);

/// Primes q with lo <= q <= hi, by segmented sieve.
std::vector<u64> primes_in_range(u64 lo, u64 hi);

/// Dense discrete-log table for a primitive root g: index(x) = k with g^k = x.
class DlogTable {
 public:
  DlogTable() = default;
  /// One pass of successive multiplications by g.
  static DlogTable build(u64 p, u64 g, u64 limit = kDefaultDlogLimit);
  /// Takes ownership of index entries for x = 1..p-1 (as loaded from a cache).
  static DlogTable from_indices(u64 p, u64 g, std::vector<u32> index_of);

  u64 modulus() const { return p_; }
  /// ind(x) for x in [1, p-1].
  u32 index(u64 x) const { return index_[x]; }
  /// g^k for k in [0, p-2].
  u64 power(u64 k) const { return power_[k]; }
  /// Entries for x = 1..p-1, in that order.
  std::span<const u32> indices() const { return {index_.data() + 1, index_.size() - 1}; }

 private:
  u64 p_ = 0;
  std::vector<u32> index_;  // index_[0] unused
  std::vector<u32> power_;
};

/// Odd prime modulus with primitive root, factorization of p-1 and an optional
/// dlog table. Immutable after construction; shared across workers.
class PrimeContext {
 public:
  /// Validates primality (p odd, p >= 3) and finds the smallest primitive root.
  explicit PrimeContext(u64 p);
  PrimeContext(u64 p, DlogTable table);

  static std::shared_ptr<const PrimeContext> make(u64 p);
  static std::shared_ptr<const PrimeContext> make_with_dlog(u64 p, u64 limit = kDefaultDlogLimit);

  u64 p() const { return p_; }
  u64 generator() const { return g_; }
  std::span<const u64> factors() const { return factors_; }

  bool has_dlog() const { return dlog_ != nullptr; }
  /// Throws missing_dlog if the table was not built.
  const DlogTable& dlog() const;

  u64 mul(u64 a, u64 b) const { return mul_mod(a, b, p_); }
  u64 pow(u64 a, u64 e) const { return pow_mod(a, e, p_); }

 private:
  u64 p_;
  u64 g_;
  std::vector<u64> factors_;
  std::shared_ptr<const DlogTable> dlog_;
};

using ContextPtr = std::shared_ptr<const PrimeContext>;

/// Element of Z_p for a fixed modulus.
class Residue {
 public:
  Residue(u64 value, u64 p) : value_(value % p), p_(p) {}
  static Residue from_signed(long long value, u64 p);

  u64 value() const { return value_; }
  u64 modulus() const { return p_; }

  Residue operator+(Residue o) const { return {add_mod(value_, o.value_, p_), p_}; }
  Residue operator-(Residue o) const { return {sub_mod(value_, o.value_, p_), p_}; }
  Residue operator*(Residue o) const { return {mul_mod(value_, o.value_, p_), p_}; }
  Residue operator-() const { return {value_ == 0 ? 0 : p_ - value_, p_}; }
  Residue pow(u64 e) const { return {pow_mod(value_, e, p_), p_}; }
  Residue inverse() const;

  friend bool operator==(Residue a, Residue b) = default;

 private:
  u64 value_;
  u64 p_;
};

// Cache file: "FCL1", u64 p, u64 g, then p-1 u32 entries ind(1..p-1), little-endian.
void save_dlog_cache(const std::filesystem::path& path, const PrimeContext& ctx);
/// Rejects magic mismatch, truncation and failed spot checks with corrupt_cache.
ContextPtr load_dlog_cache(const std::filesystem::path& path);

}  // namespace fcl
