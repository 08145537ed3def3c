#include <adacut/decompounding.hpp>
#include <adacut/errors.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace adacut {

namespace {

cplx guarded(cplx z, double eps_div)
{
  const double mod = std::abs(z);
  if (mod >= eps_div)
    return z;
  if (mod == 0.0)
    return eps_div;
  return z * (eps_div / mod);
}

long poisson_draw(double mean, Rng& rng)
{
  if (mean < 30.0) {
    double p = std::exp(-mean);
    double cdf = p;
    const double u = uniform01(rng);
    long k = 0;
    while (u > cdf && p > 0.0) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }
  std::poisson_distribution<long> dist(mean);
  return dist(rng);
}

void check_pair(const SpectralFunction& phi_hat, const SpectralFunction& phi_hat_prime)
{
  if (!(phi_hat.grid() == phi_hat_prime.grid()))
    throw ArgumentError("distinguished_log: cf and derivative on different grids");
}

} // namespace

double CpConfig::kappa_n() const
{
  return std::exp(2.0 * delta) + kappa * std::sqrt(std::log(static_cast<double>(n) * delta));
}

double CpConfig::threshold() const
{
  return kappa_n() / std::sqrt(static_cast<double>(n) * delta);
}

double CpConfig::cutoff_cap() const
{
  return std::min(std::pow(static_cast<double>(n) * delta, alpha), grid.u_max());
}

bool CpConfig::regime_ok() const
{
  return delta <= 0.25 * std::log(static_cast<double>(n) * delta);
}

void CpConfig::validate() const
{
  if (!(lambda > 0.0 && std::isfinite(lambda)))
    throw ConfigError("decompounding: intensity lambda must be positive");
  if (!(delta > 0.0 && std::isfinite(delta)))
    throw ConfigError("decompounding: sampling interval delta must be positive");
  if (n < 1 || !(static_cast<double>(n) * delta > 1.0))
    throw ConfigError("decompounding: the time horizon n * delta must exceed 1");
  if (!(kappa > 0.0 && std::isfinite(kappa)))
    throw ConfigError("decompounding: kappa must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw ConfigError("decompounding: alpha must lie in (0, 1]");
}

IncrementSample sample_increments(const DensityModel& jump, const CpConfig& cfg, Rng& rng)
{
  if (!jump.has_finite_moments())
    throw ConfigError("decompounding: jump law " + jump.describe() +
                      " has infinite moments and is not covered by the estimator");
  if (!(cfg.lambda > 0.0 && cfg.delta > 0.0))
    throw ConfigError("decompounding: lambda and delta must be positive");
  const double mean = cfg.lambda * cfg.delta;
  IncrementSample out{ std::vector<double>(cfg.n, 0.0), cfg };
  for (auto& y : out.values) {
    const long jumps = poisson_draw(mean, rng);
    double s = 0.0;
    for (long k = 0; k < jumps; ++k)
      s += jump.sample(rng);
    y = s;
  }
  return out;
}

cplx levy_cf(const DensityModel& jump, const CpConfig& cfg, double u)
{
  return std::exp(cfg.lambda * cfg.delta * (jump.cf(u) - 1.0));
}

cplx distinguished_log(const SpectralFunction& phi_hat,
                       const SpectralFunction& phi_hat_prime,
                       double u,
                       double eps_div)
{
  check_pair(phi_hat, phi_hat_prime);
  const auto& g = phi_hat.grid();
  const auto k = g.offset_of(u);
  const auto dir = k >= 0 ? 1 : -1;
  const double h = g.step();
  auto ratio = [&](std::ptrdiff_t i) {
    return phi_hat_prime.at(i) / guarded(phi_hat.at(i), eps_div);
  };
  cplx acc = 0.0;
  cplx prev = ratio(0);
  for (std::ptrdiff_t i = dir; i != k + dir; i += dir) {
    const cplx cur = ratio(i);
    acc += (0.5 * h * dir) * (prev + cur);
    prev = cur;
  }
  return acc;
}

SpectralFunction distinguished_log_grid(const SpectralFunction& phi_hat,
                                        const SpectralFunction& phi_hat_prime,
                                        double eps_div)
{
  check_pair(phi_hat, phi_hat_prime);
  const auto& g = phi_hat.grid();
  const auto K = g.half_count();
  const double h = g.step();
  SpectralFunction out = SpectralFunction::zeros(g);
  auto ratio = [&](std::ptrdiff_t i) {
    return phi_hat_prime.at(i) / guarded(phi_hat.at(i), eps_div);
  };

  const cplx r0 = ratio(0);
  cplx acc = 0.0, prev = r0;
  for (std::ptrdiff_t i = 1; i <= K; ++i) {
    const cplx cur = ratio(i);
    acc += (0.5 * h) * (prev + cur);
    out.at(i) = acc;
    prev = cur;
  }
  acc = 0.0;
  prev = r0;
  for (std::ptrdiff_t i = 1; i <= K; ++i) {
    const cplx cur = ratio(-i);
    acc += (-0.5 * h) * (prev + cur);
    out.at(-i) = acc;
    prev = cur;
  }

  const bool symmetric_inputs = phi_hat.hermitian();
  out.set_hermitian(symmetric_inputs);
  if (symmetric_inputs) {
    double scale = 1.0;
    for (const auto& v : out.values())
      scale = std::max(scale, std::abs(v));
    if (out.hermitian_defect() > 1e-10 * scale)
      throw ContractViolation("distinguished_log: mirrored path lost Hermitian symmetry");
  }
  return out;
}

SpectralFunction clamp_modulus(const SpectralFunction& phi, double bound)
{
  SpectralFunction out = phi;
  for (auto& v : out.values()) {
    if (std::abs(v) > bound)
      v = 0.0;
  }
  return out;
}

SpectralFunction decompound_cf(const SpectralFunction& phi_hat,
                               const SpectralFunction& phi_hat_prime,
                               const CpConfig& cfg)
{
  SpectralFunction log_phi = distinguished_log_grid(phi_hat, phi_hat_prime);
  const double inv = 1.0 / (cfg.lambda * cfg.delta);
  for (auto& v : log_phi.values())
    v = 1.0 + v * inv;
  return clamp_modulus(log_phi, jump_cf_bound);
}

SpectralFunction decompound_cf(const IncrementSample& sample)
{
  const auto pair = ecf_with_derivative(sample.values, sample.config.grid);
  return decompound_cf(pair.value, pair.derivative, sample.config);
}

CutoffResult select_cutoff_cp(const SpectralFunction& phi_tilde, const CpConfig& cfg)
{
  cfg.validate();
  return last_node_at_or_above(phi_tilde, cfg.threshold(), cfg.cutoff_cap());
}

DecompEstimate estimate_jump_density(const SpectralFunction& phi_hat,
                                     const SpectralFunction& phi_hat_prime,
                                     const CpConfig& cfg,
                                     std::span<const double> x_grid)
{
  cfg.validate();
  const SpectralFunction phi_tilde = decompound_cf(phi_hat, phi_hat_prime, cfg);
  const CutoffResult cut = select_cutoff_cp(phi_tilde, cfg);
  SpectralFunction phi_bar = keep_at_or_above(phi_tilde, cfg.threshold());
  auto f = fourier_invert(phi_bar, cut.m_hat, x_grid);
  return { std::move(phi_bar), cut, std::move(f), !cfg.regime_ok() };
}

DecompEstimate estimate_jump_density(const IncrementSample& sample, std::span<const double> x_grid)
{
  if (sample.values.size() != sample.config.n)
    throw ArgumentError("estimate_jump_density: sample length differs from config n");
  const auto pair = ecf_with_derivative(sample.values, sample.config.grid);
  return estimate_jump_density(pair.value, pair.derivative, sample.config, x_grid);
}

} // namespace adacut
