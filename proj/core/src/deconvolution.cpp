#include <adacut/deconvolution.hpp>
#include <adacut/errors.hpp>

#include <algorithm>
#include <cmath>

namespace adacut {

double DeconvConfig::kappa_n() const
{
  return 1.0 + kappa * std::sqrt(std::log(static_cast<double>(n)));
}

double DeconvConfig::threshold() const
{
  return kappa_n() / std::sqrt(static_cast<double>(n));
}

double DeconvConfig::cutoff_cap() const
{
  return std::min(std::pow(static_cast<double>(n), alpha), grid.u_max());
}

void DeconvConfig::validate() const
{
  if (n < 2)
    throw ConfigError("deconvolution: sample size must be at least 2");
  if (!(kappa > 0.0 && std::isfinite(kappa)))
    throw ConfigError("deconvolution: kappa must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw ConfigError("deconvolution: alpha must lie in (0, 1]");
}

SpectralFunction threshold_ecf(const SpectralFunction& phi_y, const DeconvConfig& cfg)
{
  return keep_at_or_above(phi_y, cfg.threshold());
}

SpectralFunction deconv_cf(const SpectralFunction& phi_y, const SpectralFunction& noise_cf)
{
  if (!(phi_y.grid() == noise_cf.grid()))
    throw ArgumentError("deconv_cf: noise cf tabulated on a different grid");
  SpectralFunction out = phi_y;
  auto dst = out.values();
  auto noise = noise_cf.values();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    if (!(std::abs(noise[i]) > 1e-300))
      throw ConfigError("deconv_cf: noise cf vanishes on the grid; reduce u_max");
    const cplx r = dst[i] / noise[i];
    const double mod = std::abs(r);
    dst[i] = mod > 1.0 ? r / mod : r;
  }
  out.set_hermitian(phi_y.hermitian() && noise_cf.hermitian());
  return out;
}

SpectralFunction deconv_cf(const SpectralFunction& phi_y, const NoiseModel& noise)
{
  if (noise.is_direct())
    return deconv_cf(phi_y, SpectralFunction::hermitian_from(phi_y.grid(), [](double) { return cplx(1.0); }));
  return deconv_cf(phi_y, noise.on_grid(phi_y.grid()));
}

CutoffResult select_cutoff(const SpectralFunction& phi_y, const DeconvConfig& cfg)
{
  cfg.validate();
  return last_node_at_or_above(phi_y, cfg.threshold(), cfg.cutoff_cap());
}

DeconvEstimate estimate(std::span<const double> sample_y,
                        const NoiseModel& noise,
                        const DeconvConfig& cfg,
                        std::span<const double> x_grid)
{
  cfg.validate();
  if (sample_y.size() != cfg.n)
    throw ArgumentError("estimate: sample size differs from config n");
  const SpectralFunction phi_y = ecf(sample_y, cfg.grid);
  const CutoffResult cut = select_cutoff(phi_y, cfg);
  SpectralFunction phi_x = deconv_cf(threshold_ecf(phi_y, cfg), noise);
  auto density = fourier_invert(phi_x, cut.m_hat, x_grid);
  return { std::move(density), cut, std::move(phi_x) };
}

std::vector<double> sample_observations(const DensityModel& target,
                                        const NoiseModel& noise,
                                        std::size_t n,
                                        Rng& rng)
{
  std::vector<double> y(n);
  for (auto& v : y) {
    const double x = target.sample(rng);
    v = x + noise.sample(rng);
  }
  return y;
}

} // namespace adacut
