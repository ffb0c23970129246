#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "fcl/field.hpp"
#include "fcl/transform.hpp"
#include "fcl/types.hpp"

namespace fcl {

/// n! mod p for n = start+1 .. start+length, with 0 <= start < start+length < p.
class FactorialWindow {
 public:
  /// (start+1)! by direct product, then one left-to-right chain.
  static FactorialWindow build(ContextPtr ctx, u64 start, u64 length);
  static FactorialWindow build(ContextPtr ctx, WindowSpec spec) { return build(std::move(ctx), spec.start, spec.length); }
  /// Adopts precomputed residues after checking the recurrence.
  static FactorialWindow adopt(ContextPtr ctx, u64 start, std::vector<u64> values);

  const PrimeContext& ctx() const { return *ctx_; }
  const ContextPtr& ctx_ptr() const { return ctx_; }
  u64 p() const { return ctx_->p(); }
  u64 start() const { return start_; }
  u64 length() const { return values_.size(); }
  WindowSpec spec() const { return {start_, length()}; }
  std::span<const u64> values() const { return values_; }
  /// n! mod p for n in (start, start+length].
  u64 factorial(u64 n) const { return values_[n - start_ - 1]; }

 private:
  FactorialWindow(ContextPtr ctx, u64 start, std::vector<u64> values)
      : ctx_(std::move(ctx)), start_(start), values_(std::move(values)) {}

  ContextPtr ctx_;
  u64 start_;
  std::vector<u64> values_;
};

/// Throws window_out_of_range unless 0 <= start < start+length < p.
void require_window(u64 p, WindowSpec spec);

/// Additive bins are residues 0..p-1; multiplicative bins are exponents 0..p-2
/// of the primitive root.
enum class Domain { additive, multiplicative };

class Histogram {
 public:
  Histogram(Domain domain, ExactVector counts);

  Domain domain() const { return domain_; }
  std::size_t size() const { return counts_.size(); }
  std::span<const Count> counts() const { return counts_; }
  Count operator[](std::size_t i) const { return counts_[i]; }
  Count total() const { return total_; }
  std::size_t support_size() const;

 private:
  Domain domain_;
  ExactVector counts_;
  Count total_ = 0;
};

/// counts[x] = #{n in window : n! = x}.
Histogram value_histogram(const FactorialWindow& window);

/// counts[lambda] = #{(n_1..n_k) : n_1! + ... + n_k! = lambda}; k >= 1.
Histogram sum_histogram(const FactorialWindow& window, unsigned k);

/// counts[t] = #{(m, n) : m! n! = t}, by dlog-domain cyclic convolution.
Histogram product_histogram(const FactorialWindow& a, const FactorialWindow& b);

/// Multiplicative histogram of ind(n!) over the window.
Histogram log_value_histogram(const FactorialWindow& window);

/// Moves an additive histogram to exponent bins; the mass at residue 0 has
/// no logarithm and is returned through dropped_zero.
Histogram to_multiplicative(const Histogram& additive, const PrimeContext& ctx, Count* dropped_zero = nullptr);
Histogram to_additive(const Histogram& multiplicative, const PrimeContext& ctx);

// Window cache: "FCW1", u64 p, u64 L, u64 N, then N u64 residues, little-endian.
void save_window_cache(const std::filesystem::path& path, const FactorialWindow& window);
FactorialWindow load_window_cache(const std::filesystem::path& path, ContextPtr ctx);

}  // namespace fcl
