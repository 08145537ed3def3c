#pragma once

#include <adacut/rng.hpp>

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace adacut {

class FrequencyGrid;
class SpectralFunction;

class DensityModel;

namespace model {
struct Uniform
{
  double a;
  double b;
};
struct Gaussian
{
  double mu;
  double sigma;
};
struct Cauchy
{
  double loc;
  double scale;
};
//! Shape/scale parametrization: characteristic function (1 - i*scale*u)^-shape.
struct Gamma
{
  double shape;
  double scale;
};
//! weight * first + (1 - weight) * second.
struct Mixture
{
  double weight;
  std::shared_ptr<const DensityModel> first;
  std::shared_ptr<const DensityModel> second;
};
} // namespace model

//! A univariate density with closed-form characteristic function.
//!
//! Models are immutable values; mixtures share their components. All
//! methods are const and thread-safe, sampling only touches the caller's
//! generator.
class DensityModel
{
public:
  using Params = std::variant<model::Uniform,
                              model::Gaussian,
                              model::Cauchy,
                              model::Gamma,
                              model::Mixture>;

  static DensityModel uniform(double a, double b);
  static DensityModel gaussian(double mu, double sigma);
  static DensityModel cauchy(double loc, double scale);
  static DensityModel gamma(double shape, double scale);
  static DensityModel mixture(double weight,
                              const DensityModel& first,
                              const DensityModel& second);

  const Params& params() const noexcept { return params_; }

  //! Characteristic function E[exp(iuX)].
  std::complex<double> cf(double u) const;

  //! Lebesgue density at x.
  double pdf(double x) const;

  //! One draw from the density.
  double sample(Rng& rng) const;

  //! Spectral energy outside [-m, m]: integral over |u| > m of |cf(u)|^2.
  //! Throws ArgumentError for m < 0.
  double tail_energy(double m) const;

  //! ||f||^2 = tail_energy(0) / (2 pi).
  double l2_norm_sq() const;

  //! False for densities without a finite mean (Cauchy and mixtures with a
  //! Cauchy component); such models cannot act as compound Poisson jumps.
  bool has_finite_moments() const;

  //! Second raw moment E[X^2]; infinite when has_finite_moments() is false.
  double second_moment() const;

  std::string describe() const;

private:
  explicit DensityModel(Params p);
  Params params_;
};

//! Additive measurement error with known law. A model without density is
//! the degenerate error (cf identically 1) of the direct problem.
class NoiseModel
{
public:
  static NoiseModel none() { return NoiseModel{}; }
  static NoiseModel of(DensityModel density) { return NoiseModel{ std::move(density) }; }

  bool is_direct() const noexcept { return !density_.has_value(); }
  const std::optional<DensityModel>& density() const noexcept { return density_; }

  std::complex<double> cf(double u) const { return density_ ? density_->cf(u) : 1.0; }
  double sample(Rng& rng) const { return density_ ? density_->sample(rng) : 0.0; }

  //! Noise characteristic function tabulated on every grid node. Throws
  //! ConfigError if |cf| underflows (below 1e-300) at some node.
  SpectralFunction on_grid(const FrequencyGrid& grid) const;

  std::string describe() const;

private:
  NoiseModel() = default;
  explicit NoiseModel(DensityModel d)
    : density_(std::move(d))
  {}
  std::optional<DensityModel> density_;
};

struct PresetInfo
{
  std::string id;
  std::string description;
};

//! Named densities used by scenario files.
//!
//!   uniform13   U[1,3]
//!   gauss21     N(2,1)
//!   cauchy      Cauchy(0,1)
//!   gamma21     Gamma(2,1)
//!   mix-n4-g2h  0.7 N(4,1) + 0.3 Gamma(2,1/2)   (default mixture)
//!   mix-n4-g4h  0.7 N(4,1) + 0.3 Gamma(4,1/2)
//!   mix-g3h-g4  0.3 Gamma(3,1/2) + 0.7 Gamma(4,1)
const std::vector<PresetInfo>& presets();

//! Throws ConfigError for unknown ids.
DensityModel preset(std::string_view id);

//! "none" maps to the direct problem, anything else to preset(id).
NoiseModel noise_preset(std::string_view id);

} // namespace adacut
