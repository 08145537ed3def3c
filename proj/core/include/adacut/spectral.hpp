#pragma once

#include <adacut/distributions.hpp>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace adacut {

using cplx = std::complex<double>;

//! Uniform symmetric frequency grid {-K h, ..., -h, 0, h, ..., K h}.
//!
//! Nodes are addressed by their signed offset i in [-K, K]; the node
//! frequency is exactly i * h, so node(-i) == -node(i).
class FrequencyGrid
{
public:
  //! u_max must be a multiple of step up to rounding; throws ArgumentError.
  FrequencyGrid(double u_max, double step);

  static FrequencyGrid from_half_count(std::ptrdiff_t half_count, double step);

  double step() const noexcept { return step_; }
  double u_max() const noexcept { return static_cast<double>(half_) * step_; }
  std::ptrdiff_t half_count() const noexcept { return half_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(2 * half_ + 1); }

  double node(std::ptrdiff_t i) const noexcept { return static_cast<double>(i) * step_; }

  //! Offset of the node nearest to u (not clamped).
  std::ptrdiff_t nearest(double u) const noexcept;

  //! Offset of a frequency that must be a node within rounding; throws
  //! ArgumentError for off-grid or out-of-range frequencies.
  std::ptrdiff_t offset_of(double u) const;

  //! Largest node offset whose frequency is <= u (up to rounding), clamped
  //! to [0, K]. Requires u >= 0.
  std::ptrdiff_t floor_offset(double u) const;

  std::vector<double> nodes() const;

  friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;

private:
  FrequencyGrid(std::ptrdiff_t half, double step, int);
  std::ptrdiff_t half_;
  double step_;
};

//! Complex values of a (possibly estimated) characteristic function on
//! every node of a FrequencyGrid.
class SpectralFunction
{
public:
  SpectralFunction(FrequencyGrid grid, std::vector<cplx> values, bool hermitian);

  static SpectralFunction zeros(const FrequencyGrid& grid);

  //! Tabulates f at u >= 0 and fills u < 0 by conjugation, so the result
  //! is exactly Hermitian.
  template<class F>
  static SpectralFunction hermitian_from(const FrequencyGrid& grid, F&& f)
  {
    const auto K = grid.half_count();
    std::vector<cplx> v(grid.size());
    for (std::ptrdiff_t i = 0; i <= K; ++i) {
      v[static_cast<std::size_t>(K + i)] = f(grid.node(i));
      v[static_cast<std::size_t>(K - i)] = std::conj(v[static_cast<std::size_t>(K + i)]);
    }
    v[static_cast<std::size_t>(K)].imag(0.0);
    return SpectralFunction(grid, std::move(v), true);
  }

  //! Tabulates f on every node, no symmetry assumed.
  template<class F>
  static SpectralFunction tabulate(const FrequencyGrid& grid, F&& f, bool hermitian)
  {
    const auto K = grid.half_count();
    std::vector<cplx> v(grid.size());
    for (std::ptrdiff_t i = -K; i <= K; ++i)
      v[static_cast<std::size_t>(K + i)] = f(grid.node(i));
    return SpectralFunction(grid, std::move(v), hermitian);
  }

  const FrequencyGrid& grid() const noexcept { return grid_; }
  std::span<const cplx> values() const noexcept { return values_; }
  std::span<cplx> values() noexcept { return values_; }

  //! Value at signed node offset i in [-K, K].
  cplx at(std::ptrdiff_t i) const noexcept
  {
    return values_[static_cast<std::size_t>(i + grid_.half_count())];
  }
  cplx& at(std::ptrdiff_t i) noexcept
  {
    return values_[static_cast<std::size_t>(i + grid_.half_count())];
  }

  bool hermitian() const noexcept { return hermitian_; }
  void set_hermitian(bool h) noexcept { hermitian_ = h; }

  //! max over nodes of |value(-u) - conj(value(u))|.
  double hermitian_defect() const noexcept;

private:
  FrequencyGrid grid_;
  std::vector<cplx> values_;
  bool hermitian_;
};

//! Empirical characteristic function (1/n) sum_j exp(i u Y_j) on the grid.
//! Throws ArgumentError for an empty sample.
SpectralFunction ecf(std::span<const double> sample, const FrequencyGrid& grid);

//! Derivative of the empirical characteristic function,
//! (1/n) sum_j i Y_j exp(i u Y_j). Not Hermitian: value(-u) = -conj(value(u)).
SpectralFunction ecf_derivative(std::span<const double> sample, const FrequencyGrid& grid);

struct EcfPair
{
  SpectralFunction value;
  SpectralFunction derivative;
};

//! ecf and ecf_derivative in one pass over the sample.
EcfPair ecf_with_derivative(std::span<const double> sample, const FrequencyGrid& grid);

//! Composite trapezoid rule for the integral of `values` over [a, b]; a and
//! b must be grid nodes with a <= b.
cplx trapezoid(const SpectralFunction& values, double a, double b);

//! Same, with signed node offsets lo <= hi.
cplx trapezoid_nodes(const SpectralFunction& values, std::ptrdiff_t lo, std::ptrdiff_t hi);

//! Spectral cutoff estimator (1/2pi) int_{-m}^{m} exp(-iux) phi(u) du by
//! trapezoid on the nodes of [-m, m]; m is snapped to the nearest node.
//! Throws ContractViolation unless phi is Hermitian, ArgumentError if m
//! exceeds the grid.
std::vector<double> fourier_invert(const SpectralFunction& phi,
                                   double m,
                                   std::span<const double> x_grid);

//! Exact L2 distance ||f_m - f||^2 of the cutoff estimator with spectrum
//! phi_est on [-m, m], computed in the frequency domain:
//! (1/2pi) [ int_{-m}^{m} |phi_est - cf|^2 du + tail_energy(m) ].
double parseval_risk(const SpectralFunction& phi_est, const DensityModel& truth, double m);

//! Parseval risk with the truth tabulated once for a grid, for repeated
//! evaluation in Monte Carlo loops.
class ParsevalEvaluator
{
public:
  ParsevalEvaluator(const DensityModel& truth, const FrequencyGrid& grid);

  const FrequencyGrid& grid() const noexcept { return truth_cf_.grid(); }
  const SpectralFunction& truth_cf() const noexcept { return truth_cf_; }

  //! tail_energy at node offset k >= 0.
  double tail(std::ptrdiff_t k) const { return tail_[static_cast<std::size_t>(k)]; }

  //! Risk with cutoff at node offset k >= 0.
  double risk(const SpectralFunction& phi_est, std::ptrdiff_t k) const;

  //! Risk for every cutoff node offset 0..K.
  std::vector<double> curve(const SpectralFunction& phi_est) const;

private:
  SpectralFunction truth_cf_;
  std::vector<double> tail_;
};

//! Zeroes every value with modulus below `level` (values at or above are
//! kept unchanged).
SpectralFunction keep_at_or_above(const SpectralFunction& phi, double level);

} // namespace adacut
