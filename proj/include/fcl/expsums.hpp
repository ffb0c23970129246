#pragma once

// S_a(L,N) = sum_n e(a n!), W_a = sum_m sum_n e(a m! n!) and sum_n chi_j(n!),
// where e(z) = exp(2 pi i z / p) and chi_j(x) = exp(2 pi i j ind(x) / (p-1)).

#include <complex>
#include <iosfwd>
#include <vector>

#include "fcl/factorial.hpp"

namespace fcl {

struct SpectrumValue {
  u64 a = 0;
  Complex value;
  double abs_error = 0.0;
};

class Spectrum {
 public:
  Spectrum(u64 p, std::vector<WindowSpec> windows, std::vector<Complex> values, double abs_error);

  u64 p() const { return p_; }
  const std::vector<WindowSpec>& windows() const { return windows_; }
  bool is_double() const { return windows_.size() == 2; }
  std::span<const Complex> values() const { return values_; }
  const Complex& operator[](u64 a) const { return values_[a]; }
  double abs_error() const { return abs_error_; }

  /// max over a != 0 of |value(a)|, with the maximizing frequency.
  std::pair<u64, double> max_nontrivial() const;
  /// (1/p) sum_a |value(a)|^{2 ell}.
  double even_moment(unsigned ell) const;

 private:
  u64 p_;
  std::vector<WindowSpec> windows_;
  std::vector<Complex> values_;
  double abs_error_;
};

enum class DoubleSumEngine { histogram, direct };

SpectrumValue single_sum(const FactorialWindow& window, u64 a);
/// One length-p DFT of the value histogram.
Spectrum batch_single_sums(const FactorialWindow& window);

SpectrumValue double_sum(const FactorialWindow& m_window, const FactorialWindow& n_window, u64 a,
                         DoubleSumEngine engine = DoubleSumEngine::histogram);
Spectrum batch_double_sums(const FactorialWindow& m_window, const FactorialWindow& n_window);
/// O(p * MN) reference over all frequencies, parallel over a.
Spectrum batch_double_sums_direct(const FactorialWindow& m_window, const FactorialWindow& n_window);

/// Needs the dlog table. j = 0 returns the window length exactly.
Complex character_sum(const FactorialWindow& window, u64 j);
/// All p-1 characters at once via one length p-1 DFT of the log histogram.
std::vector<Complex> batch_character_sums(const FactorialWindow& window);

/// Rows a,re,im,abs with a header line.
void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum);

}  // namespace fcl
