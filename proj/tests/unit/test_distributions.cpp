#include <adacut/distributions.hpp>
#include <adacut/errors.hpp>
#include <adacut/spectral.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace adacut;

namespace {

std::vector<DensityModel> all_models()
{
  std::vector<DensityModel> out;
  for (const auto& p : presets())
    out.push_back(preset(p.id));
  out.push_back(DensityModel::gamma(2.5, 0.7));
  out.push_back(DensityModel::gaussian(-1.0, 0.3));
  return out;
}

} // namespace

TEST(AnalyticCf, GammaAtZeroIsOne)
{
  const auto g = DensityModel::gamma(2.0, 1.0);
  EXPECT_EQ(g.cf(0.0), std::complex<double>(1.0, 0.0));
}

TEST(AnalyticCf, CauchyAtOne)
{
  EXPECT_NEAR(DensityModel::cauchy(0.0, 1.0).cf(1.0).real(), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(DensityModel::cauchy(0.0, 1.0).cf(1.0).real(), 0.367879, 1e-6);
  EXPECT_DOUBLE_EQ(DensityModel::cauchy(0.0, 1.0).cf(1.0).imag(), 0.0);
}

TEST(AnalyticCf, GammaAtOneIsHalfI)
{
  const auto v = DensityModel::gamma(2.0, 1.0).cf(1.0);
  const auto ref = 1.0 / ((1.0 - oracle::cplx(0, 1)) * (1.0 - oracle::cplx(0, 1)));
  EXPECT_NEAR(v.real(), ref.real(), 1e-15);
  EXPECT_NEAR(v.imag(), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(v), 0.5, 1e-15);
}

TEST(AnalyticCf, MatchesIndependentFormulas)
{
  const auto uni = DensityModel::uniform(1.0, 3.0);
  const auto gau = DensityModel::gaussian(2.0, 1.0);
  const auto gam = DensityModel::gamma(3.0, 0.5);
  const auto mix = preset("mix-n4-g2h");
  for (double u : { -7.3, -1.0, -0.01, 0.2, 1.5, 4.0, 11.0 }) {
    const auto i = oracle::cplx(0, 1);
    const auto ref_uni = (std::exp(i * u * 3.0) - std::exp(i * u * 1.0)) / (i * u * 2.0);
    EXPECT_NEAR(std::abs(uni.cf(u) - ref_uni), 0.0, 1e-14) << u;
    EXPECT_NEAR(std::abs(gau.cf(u) - oracle::gaussian_cf(2.0, 1.0, u)), 0.0, 1e-14) << u;
    EXPECT_NEAR(std::abs(gam.cf(u) - oracle::gamma_cf(3.0, 0.5, u)), 0.0, 1e-14) << u;
    const auto ref_mix = 0.7 * oracle::gaussian_cf(4.0, 1.0, u) + 0.3 * oracle::gamma_cf(2.0, 0.5, u);
    EXPECT_NEAR(std::abs(mix.cf(u) - ref_mix), 0.0, 1e-14) << u;
  }
  EXPECT_EQ(uni.cf(0.0), std::complex<double>(1.0));
}

TEST(AnalyticCf, InvalidParametersAreConfigErrors)
{
  EXPECT_THROW(DensityModel::gamma(0.0, 1.0), ConfigError);
  EXPECT_THROW(DensityModel::gamma(2.0, -1.0), ConfigError);
  EXPECT_THROW(DensityModel::gaussian(0.0, 0.0), ConfigError);
  EXPECT_THROW(DensityModel::cauchy(0.0, -2.0), ConfigError);
  EXPECT_THROW(DensityModel::uniform(3.0, 1.0), ConfigError);
  EXPECT_THROW(DensityModel::mixture(1.5, preset("gauss21"), preset("gamma21")), ConfigError);
  EXPECT_THROW(preset("no-such-density"), ConfigError);
}

TEST(AnalyticCf, HermitianBoundedAndUnitAtZero)
{
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> U(-50.0, 50.0);
  for (const auto& m : all_models()) {
    EXPECT_EQ(m.cf(0.0), std::complex<double>(1.0)) << m.describe();
    for (int t = 0; t < 1000; ++t) {
      const double u = U(gen);
      const auto a = m.cf(u), b = m.cf(-u);
      ASSERT_LE(std::abs(a), 1.0 + 1e-15) << m.describe() << " u=" << u;
      ASSERT_NEAR(std::abs(b - std::conj(a)), 0.0, 1e-15) << m.describe() << " u=" << u;
    }
  }
}

TEST(Sample, GaussianMean)
{
  Rng rng(1);
  const auto g = DensityModel::gaussian(2.0, 1.0);
  double s = 0.0;
  for (int i = 0; i < 100000; ++i)
    s += g.sample(rng);
  EXPECT_NEAR(s / 1e5, 2.0, 0.02);
}

TEST(Sample, GammaMean)
{
  Rng rng(2);
  const auto g = DensityModel::gamma(2.0, 1.0);
  double s = 0.0;
  for (int i = 0; i < 100000; ++i)
    s += g.sample(rng);
  EXPECT_NEAR(s / 1e5, 2.0, 0.03);
}

TEST(Sample, NonIntegerGammaAndMixtureMeans)
{
  Rng rng(3);
  const auto g = DensityModel::gamma(2.5, 0.7);
  const auto mix = preset("mix-n4-g2h");
  double sg = 0.0, sm = 0.0;
  for (int i = 0; i < 100000; ++i) {
    sg += g.sample(rng);
    sm += mix.sample(rng);
  }
  EXPECT_NEAR(sg / 1e5, 1.75, 0.02);
  EXPECT_NEAR(sm / 1e5, 0.7 * 4.0 + 0.3 * 1.0, 0.03);
}

TEST(Sample, UniformSupport)
{
  Rng rng(4);
  const auto u = DensityModel::uniform(1.0, 3.0);
  for (int i = 0; i < 100000; ++i) {
    const double x = u.sample(rng);
    ASSERT_GE(x, 1.0);
    ASSERT_LE(x, 3.0);
  }
}

TEST(Sample, EcfMatchesCfWithinConcentrationBand)
{
  const std::size_t n = 100000;
  const FrequencyGrid grid(2.0, 0.5);
  for (const auto& m : all_models()) {
    Rng rng(5);
    std::vector<double> xs(n);
    for (auto& x : xs)
      x = m.sample(rng);
    const auto phi = ecf(xs, grid);
    for (double u : { 0.5, 1.0, 2.0 })
      EXPECT_LE(std::abs(phi.at(grid.offset_of(u)) - m.cf(u)), 3.0 * 2.0 / std::sqrt(double(n)))
        << m.describe() << " u=" << u;
  }
}

TEST(TailEnergy, CauchyClosedForm)
{
  const auto c = DensityModel::cauchy(0.0, 1.0);
  EXPECT_NEAR(c.tail_energy(0.0), 1.0, 1e-14);
  EXPECT_NEAR(c.tail_energy(1.0), std::exp(-2.0), 1e-15);
  EXPECT_NEAR(c.tail_energy(1.0), 0.135335, 1e-6);
}

TEST(TailEnergy, GammaAgainstReductionFormula)
{
  for (int k : { 1, 2, 3, 4 }) {
    for (double s : { 0.5, 1.0 }) {
      const auto g = DensityModel::gamma(k, s);
      for (double m : { 0.0, 0.3, 1.0, 2.5, 10.0 }) {
        const double ref = oracle::gamma_tail_recursion(k, s, m);
        EXPECT_NEAR(g.tail_energy(m), ref, 1e-10 * ref + 1e-15) << k << " " << s << " " << m;
      }
    }
  }
}

TEST(TailEnergy, GaussianAndNormOfDensity)
{
  const auto g = DensityModel::gaussian(2.0, 1.0);
  // ||f||^2 = 1 / (2 sigma sqrt(pi)).
  EXPECT_NEAR(g.l2_norm_sq(), 1.0 / (2.0 * std::sqrt(oracle::pi)), 1e-14);
  EXPECT_NEAR(g.tail_energy(1.0), std::sqrt(oracle::pi) * std::erfc(1.0), 1e-14);
  // Uniform on [1,3]: ||f||^2 = 1/2.
  EXPECT_NEAR(DensityModel::uniform(1.0, 3.0).l2_norm_sq(), 0.5, 1e-8);
}

TEST(TailEnergy, UniformAgainstBruteForceQuadrature)
{
  const auto uni = DensityModel::uniform(1.0, 3.0);
  // 2 int_m^inf sinc(u)^2 du; brute-force midpoint rule on [m, 4000] plus
  // the averaged tail 2 * 1/(2 u^2) integrated beyond.
  for (double m : { 0.5, 2.0, 7.0 }) {
    const double h = 1e-3;
    double s = 0.0;
    for (double u = m + 0.5 * h; u < 4000.0; u += h)
      s += std::pow(std::sin(u) / u, 2) * h;
    s += 0.5 / 4000.0;
    EXPECT_NEAR(uni.tail_energy(m), 2.0 * s, 2e-6) << m;
  }
}

TEST(TailEnergy, MixtureAgainstBruteForceQuadrature)
{
  const auto mix = preset("mix-n4-g2h");
  for (double m : { 0.0, 1.0, 3.0 }) {
    const double h = 2e-4;
    double s = 0.0;
    for (double u = m + 0.5 * h; u < 400.0; u += h)
      s += std::norm(mix.cf(u)) * h;
    // Beyond 400 only the Gamma(2,1/2) part is left: 0.09 (1 + u^2/4)^-2.
    s += 0.09 * 16.0 / (3.0 * std::pow(400.0, 3));
    EXPECT_NEAR(mix.tail_energy(m), 2.0 * s, 1e-8) << m;
  }
}

TEST(TailEnergy, NonincreasingAndVanishing)
{
  for (const auto& m : all_models()) {
    double prev = m.tail_energy(0.0);
    for (double c = 0.25; c <= 30.0; c += 0.25) {
      const double t = m.tail_energy(c);
      ASSERT_LE(t, prev + 1e-12) << m.describe() << " m=" << c;
      ASSERT_GE(t, 0.0);
      prev = t;
    }
    EXPECT_EQ(m.tail_energy(std::numeric_limits<double>::infinity()), 0.0) << m.describe();
    EXPECT_LT(m.tail_energy(1e6), 1e-5) << m.describe();
  }
}

TEST(TailEnergy, NegativeCutoffIsArgumentError)
{
  EXPECT_THROW(preset("gauss21").tail_energy(-0.1), ArgumentError);
}

TEST(Moments, CauchyHasNone)
{
  EXPECT_FALSE(preset("cauchy").has_finite_moments());
  EXPECT_TRUE(preset("gauss21").has_finite_moments());
  EXPECT_TRUE(preset("mix-n4-g2h").has_finite_moments());
  EXPECT_FALSE(DensityModel::mixture(0.5, preset("cauchy"), preset("gauss21")).has_finite_moments());
  EXPECT_NEAR(preset("gauss21").second_moment(), 5.0, 1e-14);
}

TEST(NoiseModel, DirectProblemHasUnitCf)
{
  const auto none = noise_preset("none");
  EXPECT_TRUE(none.is_direct());
  EXPECT_EQ(none.cf(3.0), std::complex<double>(1.0));
  Rng rng(1);
  EXPECT_EQ(none.sample(rng), 0.0);
}

TEST(NoiseModel, VanishingCfOnGridIsConfigError)
{
  const auto wide = FrequencyGrid(800.0, 0.5);
  EXPECT_THROW(noise_preset("cauchy").on_grid(wide), ConfigError);
  EXPECT_NO_THROW(noise_preset("cauchy").on_grid(FrequencyGrid(20.0, 0.01)));
}

TEST(Presets, AllIdsResolve)
{
  for (const char* id : { "uniform13", "gauss21", "cauchy", "gamma21", "mix-n4-g2h", "mix-n4-g4h",
                          "mix-g3h-g4" })
    EXPECT_NO_THROW(preset(id)) << id;
}
