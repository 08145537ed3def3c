#pragma once

#include <adacut/cutoff.hpp>
#include <adacut/distributions.hpp>
#include <adacut/spectral.hpp>

#include <span>
#include <vector>

namespace adacut {

struct DeconvConfig
{
  double kappa = 8.0;
  double alpha = 1.0;
  FrequencyGrid grid{ 20.0, 0.01 };
  std::size_t n = 0;

  //! kappa_n = 1 + kappa sqrt(log n).
  double kappa_n() const;
  //! kappa_n / sqrt(n), the level the ecf modulus is compared against.
  double threshold() const;
  //! min(n^alpha, u_max).
  double cutoff_cap() const;
  //! Throws ConfigError.
  void validate() const;
};

//! Zeroes the ecf wherever |phi_Y| < kappa_n n^{-1/2}.
SpectralFunction threshold_ecf(const SpectralFunction& phi_y, const DeconvConfig& cfg);

//! Ratio phi_Y / phi_eps projected into the closed unit disc:
//! r / max(1, |r|). noise_cf is the noise cf tabulated on the same grid.
SpectralFunction deconv_cf(const SpectralFunction& phi_y, const SpectralFunction& noise_cf);
SpectralFunction deconv_cf(const SpectralFunction& phi_y, const NoiseModel& noise);

//! Last grid frequency in [0, min(n^alpha, u_max)] where the raw ecf
//! modulus is still at or above kappa_n n^{-1/2}.
CutoffResult select_cutoff(const SpectralFunction& phi_y, const DeconvConfig& cfg);

struct DeconvEstimate
{
  std::vector<double> density; //!< estimate on the requested x grid
  CutoffResult cutoff;
  SpectralFunction phi_x;      //!< thresholded, clamped cf estimate
};

//! Adaptive deconvolution estimator: ecf, cutoff selection on the raw ecf,
//! thresholding, clamped division by the noise cf and Fourier inversion at
//! the selected cutoff.
DeconvEstimate estimate(std::span<const double> sample_y,
                        const NoiseModel& noise,
                        const DeconvConfig& cfg,
                        std::span<const double> x_grid);

} // namespace adacut

namespace adacut {

//! n draws of Y = X + eps, X from the target and eps from the noise,
//! drawn pairwise in index order.
std::vector<double> sample_observations(const DensityModel& target,
                                        const NoiseModel& noise,
                                        std::size_t n,
                                        Rng& rng);

} // namespace adacut
