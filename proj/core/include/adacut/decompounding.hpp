#pragma once

#include <adacut/cutoff.hpp>
#include <adacut/distributions.hpp>
#include <adacut/spectral.hpp>

#include <span>
#include <vector>

namespace adacut {

//! Compound Poisson observation scheme and cutoff tuning.
//!
//! Note: the oracle-inequality guarantee asks for kappa > sqrt(2) e^{2 delta} / delta,
//! which is very large once delta exceeds 1; practical runs use far smaller
//! values and are stable in kappa.
struct CpConfig
{
  double lambda = 1.0;
  double delta = 1.0;
  std::size_t n = 0;
  double kappa = 5.0;
  double alpha = 1.0;
  FrequencyGrid grid{ 20.0, 0.01 };

  //! kappa_{n,delta} = e^{2 delta} + kappa sqrt(log(n delta)).
  double kappa_n() const;
  //! kappa_{n,delta} / sqrt(n delta).
  double threshold() const;
  //! min((n delta)^alpha, u_max).
  double cutoff_cap() const;
  //! delta <= log(n delta) / 4.
  bool regime_ok() const;
  void validate() const;
};

struct IncrementSample
{
  std::vector<double> values;
  CpConfig config;
};

//! n increments Z_{j delta} - Z_{(j-1) delta} of a compound Poisson process
//! with intensity lambda and the given jump law. Throws ConfigError for
//! jump laws without finite moments.
IncrementSample sample_increments(const DensityModel& jump, const CpConfig& cfg, Rng& rng);

//! Levy-Khintchine cf of one increment, exp(lambda delta (phi(u) - 1)).
cplx levy_cf(const DensityModel& jump, const CpConfig& cfg, double u);

inline constexpr double default_eps_div = 1e-12;

//! Distinguished logarithm int_0^u phi'(z) / phi(z) dz along the grid, by
//! cumulative trapezoid. Denominators with modulus below eps_div are
//! replaced by eps_div in the same direction.
cplx distinguished_log(const SpectralFunction& phi_hat,
                       const SpectralFunction& phi_hat_prime,
                       double u,
                       double eps_div = default_eps_div);

//! Distinguished logarithm at every node. Negative frequencies integrate
//! along the mirrored path; the result is checked to be Hermitian.
SpectralFunction distinguished_log_grid(const SpectralFunction& phi_hat,
                                        const SpectralFunction& phi_hat_prime,
                                        double eps_div = default_eps_div);

//! Modulus clamp used by the decompounding estimator: values with
//! |phi| > bound are set to zero.
SpectralFunction clamp_modulus(const SpectralFunction& phi, double bound);

inline constexpr double jump_cf_bound = 4.0;

//! Jump cf estimate 1 + Log(phi_hat)/(lambda delta), zeroed where its
//! modulus exceeds 4.
SpectralFunction decompound_cf(const SpectralFunction& phi_hat,
                               const SpectralFunction& phi_hat_prime,
                               const CpConfig& cfg);
SpectralFunction decompound_cf(const IncrementSample& sample);

//! Last node in [0, min((n delta)^alpha, u_max)] with
//! |phi_tilde| >= kappa_{n,delta} / sqrt(n delta).
CutoffResult select_cutoff_cp(const SpectralFunction& phi_tilde, const CpConfig& cfg);

struct DecompEstimate
{
  SpectralFunction phi_bar;
  CutoffResult m_hat;
  std::vector<double> f_values;
  bool regime_warning = false;
};

//! Adaptive jump density estimator from already-computed phi_hat and its
//! derivative (empirical or analytic).
DecompEstimate estimate_jump_density(const SpectralFunction& phi_hat,
                                     const SpectralFunction& phi_hat_prime,
                                     const CpConfig& cfg,
                                     std::span<const double> x_grid);

DecompEstimate estimate_jump_density(const IncrementSample& sample,
                                     std::span<const double> x_grid);

} // namespace adacut
