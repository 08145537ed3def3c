#pragma once

#include <adacut/decompounding.hpp>
#include <adacut/distributions.hpp>
#include <adacut/spectral.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace adacut {

//! Integrated inverse noise power (1/2pi) int_{-m}^{m} |phi_eps(u)|^-2 du.
//! Closed form for the direct problem, Gamma with integer shape and Cauchy
//! noise; numeric quadrature otherwise.
double noise_energy(const NoiseModel& noise, double m);

//! noise_energy at every non-negative node offset 0..K.
std::vector<double> noise_energy_on_grid(const NoiseModel& noise, const FrequencyGrid& grid);

//! Penalized comparator: argmin over [0, M_n] of -||f_m||^2 + pen(m) with
//! pen(m) = C (D(m) / log(m + 1))^2 D(m) / n, D = noise_energy.
struct PenaltyConfig
{
  double K = 2.0;
  bool log_variant = false;
  double K_tilde = 0.3;
  //! Candidate cutoffs; empty means every grid node in [0, M_n].
  std::vector<double> m_search_grid;

  //! C = K, or K_tilde (log n)^2.5 for the log variant.
  double constant(std::size_t n) const;
};

//! pen(m) for a given constant C; pen(0) = 0 by continuity.
double penalty(double noise_energy_m, double m, std::size_t n, double constant);

struct MaxCutoff
{
  double value = 0.0; //!< M_n
  bool low = false;   //!< noise_energy(M_n) < n
};

//! Largest integer m with noise_energy(m) <= 2n; when even m = 1 exceeds
//! that, the continuous root of noise_energy(m) = 2n.
MaxCutoff max_penalized_cutoff(const NoiseModel& noise, std::size_t n);

struct PenalizedResult
{
  double m_tilde = 0.0;
  std::ptrdiff_t node = 0;
  MaxCutoff M_n;
};

//! Full selector from raw observations.
PenalizedResult penalized_select(std::span<const double> sample_y,
                                 const NoiseModel& noise,
                                 std::size_t n,
                                 const PenaltyConfig& cfg,
                                 const FrequencyGrid& grid);

//! Selector from the clamped (unthresholded) cf estimate and a tabulated
//! noise energy (by node offset).
PenalizedResult penalized_select(const SpectralFunction& phi_x_hat,
                                 std::span<const double> energy_by_node,
                                 const MaxCutoff& M_n,
                                 std::size_t n,
                                 const PenaltyConfig& cfg);

struct OracleConfig
{
  std::vector<double> m_grid; //!< sorted, non-empty, within the grid
  std::size_t replicates = 200;
  bool common_random_numbers = true;
};

struct OracleResult
{
  double m_star = 0.0;
  std::vector<double> m_grid;     //!< snapped candidate cutoffs
  std::vector<double> mean_risk;  //!< Monte Carlo mean per candidate
  std::vector<double> std_risk;   //!< sample std per candidate
  std::vector<double> replicate_argmin; //!< per-replicate minimizer (CRN only)
};

//! Reduces per-replicate risk curves (rows = replicates, in order) to the
//! oracle result; ties resolve to the smallest cutoff.
OracleResult reduce_oracle(std::span<const double> m_grid,
                           const std::vector<std::vector<double>>& curves);

//! Deconvolution (or direct, with NoiseModel::none()) oracle cutoff.
OracleResult oracle_select(const DensityModel& truth,
                           const NoiseModel& noise,
                           std::size_t n,
                           const FrequencyGrid& grid,
                           const OracleConfig& cfg,
                           std::uint64_t seed);

//! Decompounding oracle cutoff for the unthresholded jump cf estimate.
OracleResult oracle_select_cp(const DensityModel& jump,
                              const CpConfig& cp,
                              const OracleConfig& cfg,
                              std::uint64_t seed);

//! Every grid node in [0, u_max].
std::vector<double> all_nonnegative_nodes(const FrequencyGrid& grid);

} // namespace adacut
