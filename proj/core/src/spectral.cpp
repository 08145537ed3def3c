#include <adacut/errors.hpp>
#include <adacut/spectral.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace adacut {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Recurrences for exp(i k h y) are re-anchored with exact sin/cos this often.
constexpr std::ptrdiff_t anchor_every = 64;

std::size_t idx(const FrequencyGrid& g, std::ptrdiff_t i)
{
  return static_cast<std::size_t>(i + g.half_count());
}

void require_same_grid(const SpectralFunction& a, const SpectralFunction& b, const char* what)
{
  if (!(a.grid() == b.grid()))
    throw ArgumentError(std::string(what) + ": spectral functions live on different grids");
}

std::ptrdiff_t cutoff_offset(const FrequencyGrid& grid, double m, const char* what)
{
  if (!(m >= 0.0))
    throw ArgumentError(std::string(what) + ": cutoff must be >= 0");
  const auto k = grid.nearest(m);
  if (k > grid.half_count())
    throw ArgumentError(std::string(what) + ": cutoff exceeds the grid's u_max");
  return k;
}

// One pass over the sample for nodes 0..K; fills the non-negative half.
void ecf_half(std::span<const double> sample,
              const FrequencyGrid& grid,
              std::vector<cplx>* value,
              std::vector<cplx>* deriv)
{
  const std::size_t n = sample.size();
  const double h = grid.step();
  const auto K = grid.half_count();
  const double inv_n = 1.0 / static_cast<double>(n);

  std::vector<double> cr(n), ci(n), wr(n), wi(n);
  for (std::size_t j = 0; j < n; ++j) {
    wr[j] = std::cos(h * sample[j]);
    wi[j] = std::sin(h * sample[j]);
  }

  for (std::ptrdiff_t i = 0; i <= K; ++i) {
    if (i % anchor_every == 0) {
      const double u = grid.node(i);
      for (std::size_t j = 0; j < n; ++j) {
        cr[j] = std::cos(u * sample[j]);
        ci[j] = std::sin(u * sample[j]);
      }
    }
    double sr = 0.0, si = 0.0, dr = 0.0, di = 0.0;
    if (deriv) {
      for (std::size_t j = 0; j < n; ++j) {
        sr += cr[j];
        si += ci[j];
        dr += sample[j] * cr[j];
        di += sample[j] * ci[j];
      }
    } else {
      for (std::size_t j = 0; j < n; ++j) {
        sr += cr[j];
        si += ci[j];
      }
    }
    if (value)
      (*value)[idx(grid, i)] = { sr * inv_n, si * inv_n };
    if (deriv)
      (*deriv)[idx(grid, i)] = { -di * inv_n, dr * inv_n };

    for (std::size_t j = 0; j < n; ++j) {
      const double r = cr[j] * wr[j] - ci[j] * wi[j];
      const double s = cr[j] * wi[j] + ci[j] * wr[j];
      cr[j] = r;
      ci[j] = s;
    }
  }
}

} // namespace

FrequencyGrid::FrequencyGrid(std::ptrdiff_t half, double step, int)
  : half_(half)
  , step_(step)
{}

FrequencyGrid::FrequencyGrid(double u_max, double step)
  : half_(0)
  , step_(step)
{
  if (!(std::isfinite(step) && step > 0.0))
    throw ArgumentError("frequency grid step must be positive and finite");
  if (!(std::isfinite(u_max) && u_max > 0.0))
    throw ArgumentError("frequency grid u_max must be positive and finite");
  const double ratio = u_max / step;
  const double k = std::round(ratio);
  if (std::abs(ratio - k) > 1e-9 * std::max(1.0, ratio) || k < 1.0)
    throw ArgumentError("frequency grid step must divide u_max");
  half_ = static_cast<std::ptrdiff_t>(k);
}

FrequencyGrid FrequencyGrid::from_half_count(std::ptrdiff_t half_count, double step)
{
  if (half_count < 1)
    throw ArgumentError("frequency grid needs at least one positive node");
  if (!(std::isfinite(step) && step > 0.0))
    throw ArgumentError("frequency grid step must be positive and finite");
  return FrequencyGrid(half_count, step, 0);
}

std::ptrdiff_t FrequencyGrid::nearest(double u) const noexcept
{
  return static_cast<std::ptrdiff_t>(std::llround(u / step_));
}

std::ptrdiff_t FrequencyGrid::offset_of(double u) const
{
  const auto i = nearest(u);
  if (std::abs(node(i) - u) > 1e-6 * step_)
    throw ArgumentError("frequency is not a grid node");
  if (i < -half_ || i > half_)
    throw ArgumentError("frequency outside the grid");
  return i;
}

std::ptrdiff_t FrequencyGrid::floor_offset(double u) const
{
  if (!(u >= 0.0))
    throw ArgumentError("floor_offset: frequency must be >= 0");
  if (u >= u_max())
    return half_;
  const auto i = static_cast<std::ptrdiff_t>(std::floor(u / step_ + 1e-9));
  return std::clamp<std::ptrdiff_t>(i, 0, half_);
}

std::vector<double> FrequencyGrid::nodes() const
{
  std::vector<double> out;
  out.reserve(size());
  for (std::ptrdiff_t i = -half_; i <= half_; ++i)
    out.push_back(node(i));
  return out;
}

SpectralFunction::SpectralFunction(FrequencyGrid grid, std::vector<cplx> values, bool hermitian)
  : grid_(grid)
  , values_(std::move(values))
  , hermitian_(hermitian)
{
  if (values_.size() != grid_.size())
    throw ArgumentError("spectral function: value count does not match grid size");
}

SpectralFunction SpectralFunction::zeros(const FrequencyGrid& grid)
{
  return SpectralFunction(grid, std::vector<cplx>(grid.size()), true);
}

double SpectralFunction::hermitian_defect() const noexcept
{
  double worst = 0.0;
  for (std::ptrdiff_t i = 0; i <= grid_.half_count(); ++i)
    worst = std::max(worst, std::abs(at(-i) - std::conj(at(i))));
  return worst;
}

SpectralFunction ecf(std::span<const double> sample, const FrequencyGrid& grid)
{
  if (sample.empty())
    throw ArgumentError("ecf: empty sample");
  std::vector<cplx> v(grid.size());
  ecf_half(sample, grid, &v, nullptr);
  SpectralFunction out(grid, std::move(v), true);
  for (std::ptrdiff_t i = 1; i <= grid.half_count(); ++i)
    out.at(-i) = std::conj(out.at(i));
  return out;
}

SpectralFunction ecf_derivative(std::span<const double> sample, const FrequencyGrid& grid)
{
  return ecf_with_derivative(sample, grid).derivative;
}

EcfPair ecf_with_derivative(std::span<const double> sample, const FrequencyGrid& grid)
{
  if (sample.empty())
    throw ArgumentError("ecf_derivative: empty sample");
  std::vector<cplx> v(grid.size()), d(grid.size());
  ecf_half(sample, grid, &v, &d);
  EcfPair out{ SpectralFunction(grid, std::move(v), true),
               SpectralFunction(grid, std::move(d), false) };
  for (std::ptrdiff_t i = 1; i <= grid.half_count(); ++i) {
    out.value.at(-i) = std::conj(out.value.at(i));
    out.derivative.at(-i) = -std::conj(out.derivative.at(i));
  }
  return out;
}

cplx trapezoid_nodes(const SpectralFunction& values, std::ptrdiff_t lo, std::ptrdiff_t hi)
{
  const auto K = values.grid().half_count();
  if (lo > hi || lo < -K || hi > K)
    throw ArgumentError("trapezoid: invalid node range");
  if (lo == hi)
    return 0.0;
  cplx sum = 0.5 * (values.at(lo) + values.at(hi));
  for (std::ptrdiff_t i = lo + 1; i < hi; ++i)
    sum += values.at(i);
  return sum * values.grid().step();
}

cplx trapezoid(const SpectralFunction& values, double a, double b)
{
  if (!(a <= b))
    throw ArgumentError("trapezoid: requires a <= b");
  const auto& g = values.grid();
  return trapezoid_nodes(values, g.offset_of(a), g.offset_of(b));
}

std::vector<double> fourier_invert(const SpectralFunction& phi,
                                   double m,
                                   std::span<const double> x_grid)
{
  if (!phi.hermitian())
    throw ContractViolation("fourier_invert: input spectrum is not Hermitian");
  const auto& g = phi.grid();
  const auto k = cutoff_offset(g, m, "fourier_invert");
  const double h = g.step();

  double scale = 0.0;
  for (std::ptrdiff_t i = -k; i <= k; ++i)
    scale += std::abs(phi.at(i));
  scale *= h / two_pi;
  const double imag_tol = 1e-10 * scale + 1e-300;

  std::vector<double> out(x_grid.size(), 0.0);
  if (k == 0)
    return out;

  for (std::size_t q = 0; q < x_grid.size(); ++q) {
    const double x = x_grid[q];
    const cplx step{ std::cos(h * x), -std::sin(h * x) };
    cplx e{ 1.0, 0.0 };
    cplx sum = 0.0;
    for (std::ptrdiff_t i = 0; i <= k; ++i) {
      if (i % anchor_every == 0) {
        const double ux = g.node(i) * x;
        e = { std::cos(ux), -std::sin(ux) };
      }
      const double w = (i == k) ? 0.5 : 1.0;
      if (i == 0)
        sum += phi.at(0);
      else
        sum += w * (e * phi.at(i) + std::conj(e) * phi.at(-i));
      e *= step;
    }
    sum *= h / two_pi;
    if (std::abs(sum.imag()) > imag_tol)
      throw ContractViolation("fourier_invert: imaginary residue above tolerance");
    out[q] = sum.real();
  }
  return out;
}

double parseval_risk(const SpectralFunction& phi_est, const DensityModel& truth, double m)
{
  const auto& g = phi_est.grid();
  const auto k = cutoff_offset(g, m, "parseval_risk");
  double sq = 0.0;
  if (k > 0) {
    auto err = [&](std::ptrdiff_t i) { return std::norm(phi_est.at(i) - truth.cf(g.node(i))); };
    sq = 0.5 * (err(-k) + err(k));
    for (std::ptrdiff_t i = -k + 1; i < k; ++i)
      sq += err(i);
    sq *= g.step();
  }
  return (sq + truth.tail_energy(g.node(k))) / two_pi;
}

ParsevalEvaluator::ParsevalEvaluator(const DensityModel& truth, const FrequencyGrid& grid)
  : truth_cf_(SpectralFunction::hermitian_from(grid, [&truth](double u) { return truth.cf(u); }))
  , tail_(static_cast<std::size_t>(grid.half_count()) + 1)
{
  using boost::math::quadrature::gauss_kronrod;
  const auto K = grid.half_count();
  auto energy = [&truth](double u) { return std::norm(truth.cf(u)); };
  tail_[static_cast<std::size_t>(K)] = truth.tail_energy(grid.u_max());
  for (auto k = K - 1; k >= 0; --k) {
    const double panel =
      gauss_kronrod<double, 31>::integrate(energy, grid.node(k), grid.node(k + 1), 0);
    tail_[static_cast<std::size_t>(k)] = tail_[static_cast<std::size_t>(k + 1)] + 2.0 * panel;
  }
}

double ParsevalEvaluator::risk(const SpectralFunction& phi_est, std::ptrdiff_t k) const
{
  require_same_grid(phi_est, truth_cf_, "ParsevalEvaluator::risk");
  if (k < 0 || k > grid().half_count())
    throw ArgumentError("ParsevalEvaluator::risk: cutoff node out of range");
  double sq = 0.0;
  if (k > 0) {
    auto err = [&](std::ptrdiff_t i) { return std::norm(phi_est.at(i) - truth_cf_.at(i)); };
    sq = 0.5 * (err(-k) + err(k));
    for (std::ptrdiff_t i = -k + 1; i < k; ++i)
      sq += err(i);
    sq *= grid().step();
  }
  return (sq + tail(k)) / two_pi;
}

std::vector<double> ParsevalEvaluator::curve(const SpectralFunction& phi_est) const
{
  require_same_grid(phi_est, truth_cf_, "ParsevalEvaluator::curve");
  const auto K = grid().half_count();
  const double h = grid().step();
  std::vector<double> out(static_cast<std::size_t>(K) + 1);
  auto err = [&](std::ptrdiff_t i) { return std::norm(phi_est.at(i) - truth_cf_.at(i)); };
  double cum = 0.0;
  double prev_pos = err(0), prev_neg = prev_pos;
  out[0] = tail(0) / two_pi;
  for (std::ptrdiff_t k = 1; k <= K; ++k) {
    const double pos = err(k), neg = err(-k);
    cum += 0.5 * h * (prev_pos + pos) + 0.5 * h * (prev_neg + neg);
    prev_pos = pos;
    prev_neg = neg;
    out[static_cast<std::size_t>(k)] = (cum + tail(k)) / two_pi;
  }
  return out;
}

SpectralFunction keep_at_or_above(const SpectralFunction& phi, double level)
{
  SpectralFunction out = phi;
  for (auto& v : out.values()) {
    if (std::abs(v) < level)
      v = 0.0;
  }
  return out;
}

} // namespace adacut
