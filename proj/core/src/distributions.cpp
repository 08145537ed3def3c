#include <adacut/distributions.hpp>
#include <adacut/errors.hpp>
#include <adacut/spectral.hpp>

#include "quadrature.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace adacut {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

template<class... Ts>
struct overloaded : Ts...
{
  using Ts::operator()...;
};
template<class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

cplx polar_signed(double r, double angle)
{
  return { r * std::cos(angle), r * std::sin(angle) };
}

double sinc(double x)
{
  if (std::abs(x) < 1e-4)
    return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

double standard_normal(Rng& rng)
{
  const double u1 = uniform01_open_low(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
}

bool is_small_integer(double k)
{
  return k >= 1.0 && k <= 64.0 && std::floor(k) == k;
}

// Marsaglia-Tsang for shape >= 1, boosted for shape < 1.
double standard_gamma(double shape, Rng& rng)
{
  if (is_small_integer(shape)) {
    double s = 0.0;
    for (int i = 0; i < static_cast<int>(shape); ++i)
      s -= std::log(uniform01_open_low(rng));
    return s;
  }
  if (shape < 1.0) {
    const double g = standard_gamma(shape + 1.0, rng);
    return g * std::pow(uniform01_open_low(rng), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01_open_low(rng);
    if (u < 1.0 - 0.0331 * x * x * x * x)
      return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
      return d * v;
  }
}

// pi/2 - Si(x) for x >= 1000 at a zero of sin(x/2): the auxiliary function
// f(x) ~ (1/x)(1 - 2/x^2 + 24/x^4).
double si_complement_at_period(double x)
{
  const double r = 1.0 / (x * x);
  return (1.0 - 2.0 * r + 24.0 * r * r) / x;
}

double uniform_tail(const model::Uniform& p, double m)
{
  const double c = 0.5 * (p.b - p.a);
  // Integrate |cf|^2 = sinc^2(c u) up to a multiple T of pi/c, where the
  // remaining integral is (1/c) (pi/2 - Si(2 c T)).
  const double periods = std::ceil((m + 1000.0 / c) * c / pi);
  const double T = periods * pi / c;
  const double head = detail::integrate_panels(
    [c](double u) {
      const double s = sinc(c * u);
      return s * s;
    },
    m,
    T);
  const double rest = si_complement_at_period(2.0 * c * T) / c;
  return 2.0 * (head + rest);
}

double gamma_tail(const model::Gamma& p, double m)
{
  if (p.shape <= 0.5)
    throw ConfigError("Gamma density with shape <= 1/2 is not square integrable");
  // int_{|u|>m} (1 + s^2 u^2)^-k du = (1/s) B_x(k - 1/2, 1/2), x = 1/(1 + s^2 m^2)
  const double t = p.scale * m;
  const double x = 1.0 / (1.0 + t * t);
  return boost::math::beta(p.shape - 0.5, 0.5, x) / p.scale;
}

double mixture_tail(const model::Mixture& p, double m)
{
  const double w = p.weight;
  const double t1 = p.first->tail_energy(m);
  const double t2 = p.second->tail_energy(m);
  const auto cross = [&](double u) {
    const cplx z = p.first->cf(u) * std::conj(p.second->cf(u));
    return z.real();
  };
  // Extend the cross-term window until the Cauchy-Schwarz bound on the
  // remainder, sqrt(t1(T) t2(T)), is negligible.
  const double scale = w * w * t1 + (1 - w) * (1 - w) * t2;
  double length = 50.0;
  while (length < 1e4 && std::sqrt(p.first->tail_energy(m + length) *
                                   p.second->tail_energy(m + length)) >
                           1e-12 * std::max(scale, 1e-300))
    length *= 2.0;
  const double c = 2.0 * detail::integrate_panels(cross, m, m + length);
  return std::max(0.0, w * w * t1 + (1 - w) * (1 - w) * t2 + 2.0 * w * (1 - w) * c);
}

std::string fmt(double x)
{
  std::ostringstream os;
  os << x;
  return os.str();
}

} // namespace

DensityModel::DensityModel(Params p)
  : params_(std::move(p))
{}

DensityModel DensityModel::uniform(double a, double b)
{
  if (!(std::isfinite(a) && std::isfinite(b) && a < b))
    throw ConfigError("uniform density needs finite a < b");
  return DensityModel(model::Uniform{ a, b });
}

DensityModel DensityModel::gaussian(double mu, double sigma)
{
  if (!(std::isfinite(mu) && std::isfinite(sigma) && sigma > 0))
    throw ConfigError("gaussian density needs finite mu and sigma > 0");
  return DensityModel(model::Gaussian{ mu, sigma });
}

DensityModel DensityModel::cauchy(double loc, double scale)
{
  if (!(std::isfinite(loc) && std::isfinite(scale) && scale > 0))
    throw ConfigError("cauchy density needs finite location and scale > 0");
  return DensityModel(model::Cauchy{ loc, scale });
}

DensityModel DensityModel::gamma(double shape, double scale)
{
  if (!(std::isfinite(shape) && std::isfinite(scale) && shape > 0 && scale > 0))
    throw ConfigError("gamma density needs shape > 0 and scale > 0");
  return DensityModel(model::Gamma{ shape, scale });
}

DensityModel DensityModel::mixture(double weight,
                                   const DensityModel& first,
                                   const DensityModel& second)
{
  if (!(weight >= 0.0 && weight <= 1.0))
    throw ConfigError("mixture weight must lie in [0, 1]");
  return DensityModel(model::Mixture{ weight,
                                      std::make_shared<const DensityModel>(first),
                                      std::make_shared<const DensityModel>(second) });
}

cplx DensityModel::cf(double u) const
{
  return std::visit(
    overloaded{
      [u](const model::Uniform& p) {
        const double mid = 0.5 * (p.a + p.b);
        const double half = 0.5 * (p.b - p.a);
        return polar_signed(sinc(half * u), mid * u);
      },
      [u](const model::Gaussian& p) {
        return polar_signed(std::exp(-0.5 * p.sigma * p.sigma * u * u), p.mu * u);
      },
      [u](const model::Cauchy& p) {
        return polar_signed(std::exp(-p.scale * std::abs(u)), p.loc * u);
      },
      [u](const model::Gamma& p) {
        // (1 - i s u)^-k = exp(-k log|1 - i s u| + i k atan(s u))
        const double t = p.scale * u;
        const double log_mod = 0.5 * std::log1p(t * t);
        return polar_signed(std::exp(-p.shape * log_mod), p.shape * std::atan(t));
      },
      [u](const model::Mixture& p) {
        const cplx b = p.second->cf(u);
        return b + p.weight * (p.first->cf(u) - b);
      } },
    params_);
}

double DensityModel::pdf(double x) const
{
  return std::visit(
    overloaded{
      [x](const model::Uniform& p) { return (x >= p.a && x <= p.b) ? 1.0 / (p.b - p.a) : 0.0; },
      [x](const model::Gaussian& p) {
        const double z = (x - p.mu) / p.sigma;
        return std::exp(-0.5 * z * z) / (p.sigma * std::sqrt(2.0 * pi));
      },
      [x](const model::Cauchy& p) {
        const double z = (x - p.loc) / p.scale;
        return 1.0 / (pi * p.scale * (1.0 + z * z));
      },
      [x](const model::Gamma& p) {
        if (x < 0.0)
          return 0.0;
        if (x == 0.0)
          return p.shape < 1.0 ? inf : (p.shape == 1.0 ? 1.0 / p.scale : 0.0);
        const double z = x / p.scale;
        return std::exp((p.shape - 1.0) * std::log(z) - z - std::lgamma(p.shape)) / p.scale;
      },
      [x](const model::Mixture& p) {
        return p.weight * p.first->pdf(x) + (1.0 - p.weight) * p.second->pdf(x);
      } },
    params_);
}

double DensityModel::sample(Rng& rng) const
{
  return std::visit(
    overloaded{
      [&rng](const model::Uniform& p) { return p.a + (p.b - p.a) * uniform01(rng); },
      [&rng](const model::Gaussian& p) { return p.mu + p.sigma * standard_normal(rng); },
      [&rng](const model::Cauchy& p) {
        return p.loc + p.scale * std::tan(pi * (uniform01(rng) - 0.5));
      },
      [&rng](const model::Gamma& p) { return p.scale * standard_gamma(p.shape, rng); },
      [&rng](const model::Mixture& p) {
        return uniform01(rng) < p.weight ? p.first->sample(rng) : p.second->sample(rng);
      } },
    params_);
}

double DensityModel::tail_energy(double m) const
{
  if (!(m >= 0.0))
    throw ArgumentError("tail_energy: cutoff must be >= 0");
  if (std::isinf(m))
    return 0.0;
  return std::visit(
    overloaded{
      [m](const model::Uniform& p) { return uniform_tail(p, m); },
      [m](const model::Gaussian& p) {
        return std::sqrt(pi) / p.sigma * std::erfc(p.sigma * m);
      },
      [m](const model::Cauchy& p) { return std::exp(-2.0 * p.scale * m) / p.scale; },
      [m](const model::Gamma& p) { return gamma_tail(p, m); },
      [m](const model::Mixture& p) { return mixture_tail(p, m); } },
    params_);
}

double DensityModel::l2_norm_sq() const
{
  return tail_energy(0.0) / (2.0 * pi);
}

bool DensityModel::has_finite_moments() const
{
  return std::visit(overloaded{ [](const model::Cauchy&) { return false; },
                                [](const model::Mixture& p) {
                                  return p.first->has_finite_moments() &&
                                         p.second->has_finite_moments();
                                },
                                [](const auto&) { return true; } },
                    params_);
}

double DensityModel::second_moment() const
{
  return std::visit(
    overloaded{
      [](const model::Uniform& p) { return (p.a * p.a + p.a * p.b + p.b * p.b) / 3.0; },
      [](const model::Gaussian& p) { return p.mu * p.mu + p.sigma * p.sigma; },
      [](const model::Cauchy&) { return inf; },
      [](const model::Gamma& p) { return p.shape * (p.shape + 1.0) * p.scale * p.scale; },
      [](const model::Mixture& p) {
        return p.weight * p.first->second_moment() +
               (1.0 - p.weight) * p.second->second_moment();
      } },
    params_);
}

std::string DensityModel::describe() const
{
  return std::visit(
    overloaded{
      [](const model::Uniform& p) { return "U[" + fmt(p.a) + "," + fmt(p.b) + "]"; },
      [](const model::Gaussian& p) { return "N(" + fmt(p.mu) + "," + fmt(p.sigma) + "^2)"; },
      [](const model::Cauchy& p) { return "Cauchy(" + fmt(p.loc) + "," + fmt(p.scale) + ")"; },
      [](const model::Gamma& p) { return "Gamma(" + fmt(p.shape) + "," + fmt(p.scale) + ")"; },
      [](const model::Mixture& p) {
        return fmt(p.weight) + "*" + p.first->describe() + " + " + fmt(1.0 - p.weight) + "*" +
               p.second->describe();
      } },
    params_);
}

SpectralFunction NoiseModel::on_grid(const FrequencyGrid& grid) const
{
  auto values = SpectralFunction::hermitian_from(grid, [this](double u) { return cf(u); });
  for (const auto& v : values.values()) {
    if (!(std::abs(v) > 1e-300))
      throw ConfigError("noise characteristic function vanishes on the frequency grid; "
                        "reduce u_max for " + describe());
  }
  return values;
}

std::string NoiseModel::describe() const
{
  return density_ ? density_->describe() : std::string("none");
}

const std::vector<PresetInfo>& presets()
{
  static const std::vector<PresetInfo> list{
    { "uniform13", "Uniform U[1,3]" },
    { "gauss21", "Gaussian N(2,1)" },
    { "cauchy", "Cauchy(0,1), no finite moments" },
    { "gamma21", "Gamma(2,1), shape 2 scale 1" },
    { "mix-n4-g2h", "0.7 N(4,1) + 0.3 Gamma(2,1/2) (default mixture)" },
    { "mix-n4-g4h", "0.7 N(4,1) + 0.3 Gamma(4,1/2)" },
    { "mix-g3h-g4", "0.3 Gamma(3,1/2) + 0.7 Gamma(4,1)" },
  };
  return list;
}

DensityModel preset(std::string_view id)
{
  if (id == "uniform13")
    return DensityModel::uniform(1.0, 3.0);
  if (id == "gauss21")
    return DensityModel::gaussian(2.0, 1.0);
  if (id == "cauchy")
    return DensityModel::cauchy(0.0, 1.0);
  if (id == "gamma21")
    return DensityModel::gamma(2.0, 1.0);
  if (id == "mix-n4-g2h")
    return DensityModel::mixture(0.7, DensityModel::gaussian(4.0, 1.0), DensityModel::gamma(2.0, 0.5));
  if (id == "mix-n4-g4h")
    return DensityModel::mixture(0.7, DensityModel::gaussian(4.0, 1.0), DensityModel::gamma(4.0, 0.5));
  if (id == "mix-g3h-g4")
    return DensityModel::mixture(0.3, DensityModel::gamma(3.0, 0.5), DensityModel::gamma(4.0, 1.0));
  throw ConfigError("unknown density preset '" + std::string(id) + "'");
}

NoiseModel noise_preset(std::string_view id)
{
  if (id == "none")
    return NoiseModel::none();
  return NoiseModel::of(preset(id));
}

} // namespace adacut
