#include "fcl/expsums.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "fcl/kernels.hpp"

namespace fcl {

namespace {

constexpr double kPhaseError = 0x1p-50;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double direct_error(double terms) { return terms * (kPhaseError + terms * kEps); }

void require_frequency(u64 a, u64 p) {
  if (a >= p) throw Error(Errc::invalid_argument, "frequency a must lie in [0, p)");
}

// Real input: enforce value(p - a) = conj(value(a)) from the lower half.
void symmetrize(std::vector<Complex>& v) {
  const std::size_t n = v.size();
  v[0] = {v[0].real(), 0.0};
  for (std::size_t a = 1; 2 * a < n; ++a) v[n - a] = std::conj(v[a]);
}

std::vector<Complex> to_complex(std::span<const Count> counts) {
  std::vector<Complex> out(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) out[i] = {static_cast<double>(counts[i]), 0.0};
  return out;
}

Spectrum spectrum_of_histogram(const Histogram& h, std::vector<WindowSpec> windows) {
  const auto input = to_complex(h.counts());
  auto result = dft(input, +1);
  result.values[0] = {static_cast<double>(h.total()), 0.0};
  symmetrize(result.values);
  return Spectrum(h.size(), std::move(windows), std::move(result.values), result.abs_error);
}

}  // namespace

Spectrum::Spectrum(u64 p, std::vector<WindowSpec> windows, std::vector<Complex> values, double abs_error)
    : p_(p), windows_(std::move(windows)), values_(std::move(values)), abs_error_(abs_error) {}

std::pair<u64, double> Spectrum::max_nontrivial() const {
  u64 arg = 0;
  double best = -1.0;
  for (u64 a = 1; a < values_.size(); ++a) {
    const double m = std::abs(values_[a]);
    if (m > best) {
      best = m;
      arg = a;
    }
  }
  return {arg, best};
}

double Spectrum::even_moment(unsigned ell) const {
  double acc = 0.0;
  for (const auto& v : values_) acc += std::pow(std::norm(v), static_cast<double>(ell));
  return acc / static_cast<double>(p_);
}

SpectrumValue single_sum(const FactorialWindow& window, u64 a) {
  const u64 p = window.p();
  require_frequency(a, p);
  SpectrumValue out{a, {0.0, 0.0}, 0.0};
  if (a == 0) {
    out.value = {static_cast<double>(window.length()), 0.0};
    return out;
  }
  for (u64 v : window.values()) out.value += kernels::unit_root(mul_mod(a, v, p), p);
  out.abs_error = direct_error(static_cast<double>(window.length()));
  return out;
}

Spectrum batch_single_sums(const FactorialWindow& window) {
  return spectrum_of_histogram(value_histogram(window), {window.spec()});
}

SpectrumValue double_sum(const FactorialWindow& m_window, const FactorialWindow& n_window, u64 a,
                         DoubleSumEngine engine) {
  const u64 p = m_window.p();
  if (n_window.p() != p) throw Error(Errc::invalid_argument, "double sum windows use different moduli");
  require_frequency(a, p);
  const double terms = static_cast<double>(m_window.length()) * static_cast<double>(n_window.length());
  SpectrumValue out{a, {0.0, 0.0}, 0.0};
  if (a == 0) {
    out.value = {terms, 0.0};
    return out;
  }
  if (engine == DoubleSumEngine::direct) {
    const auto roots = kernels::unit_roots(p);
    for (u64 x : m_window.values()) {
      const u64 ax = mul_mod(a, x, p);
      for (u64 y : n_window.values()) out.value += roots[mul_mod(ax, y, p)];
    }
    out.abs_error = direct_error(terms);
    return out;
  }
  const auto c = product_histogram(m_window, n_window);
  for (u64 t = 1; t < p; ++t) {
    if (c[t] != 0) out.value += static_cast<double>(c[t]) * kernels::unit_root(mul_mod(a, t, p), p);
  }
  out.abs_error = terms * (kPhaseError + static_cast<double>(p) * kEps);
  return out;
}

Spectrum batch_double_sums(const FactorialWindow& m_window, const FactorialWindow& n_window) {
  return spectrum_of_histogram(product_histogram(m_window, n_window), {m_window.spec(), n_window.spec()});
}

Spectrum batch_double_sums_direct(const FactorialWindow& m_window, const FactorialWindow& n_window) {
  const u64 p = m_window.p();
  const auto roots = kernels::unit_roots(p);
  std::vector<Complex> values(p);
  const auto xs = m_window.values();
  const auto ys = n_window.values();
#pragma omp parallel for schedule(dynamic, 4)
  for (u64 a = 0; a < p; ++a) {
    Complex acc{0.0, 0.0};
    for (u64 x : xs) {
      const u64 ax = mul_mod(a, x, p);
      for (u64 y : ys) acc += roots[mul_mod(ax, y, p)];
    }
    values[a] = acc;
  }
  const double terms = static_cast<double>(xs.size()) * static_cast<double>(ys.size());
  return Spectrum(p, {m_window.spec(), n_window.spec()}, std::move(values), direct_error(terms));
}

Complex character_sum(const FactorialWindow& window, u64 j) {
  const u64 order = window.p() - 1;
  if (j >= order) throw Error(Errc::invalid_argument, "character index must lie in [0, p-1)");
  const auto& dlog = window.ctx().dlog();
  if (j == 0) return {static_cast<double>(window.length()), 0.0};
  Complex acc{0.0, 0.0};
  for (u64 v : window.values()) acc += kernels::unit_root(mul_mod(j, dlog.index(v), order), order);
  return acc;
}

std::vector<Complex> batch_character_sums(const FactorialWindow& window) {
  const auto logs = log_value_histogram(window);
  const auto input = to_complex(logs.counts());
  auto result = dft(input, +1);
  result.values[0] = {static_cast<double>(window.length()), 0.0};
  symmetrize(result.values);
  return std::move(result.values);
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum) {
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  out << "a,re,im,abs\n";
  for (u64 a = 0; a < spectrum.p(); ++a) {
    const auto& v = spectrum[a];
    out << a << ',' << v.real() << ',' << v.imag() << ',' << std::abs(v) << '\n';
  }
  out.precision(old);
}

}  // namespace fcl
