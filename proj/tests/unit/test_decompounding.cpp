#include <adacut/decompounding.hpp>
#include <adacut/errors.hpp>
#include <adacut/stats.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace adacut;

namespace {

CpConfig cp(std::size_t n, double kappa, double delta = 1.0, double lambda = 1.0,
            FrequencyGrid grid = FrequencyGrid(20.0, 0.01))
{
  CpConfig c;
  c.n = n;
  c.kappa = kappa;
  c.delta = delta;
  c.lambda = lambda;
  c.grid = grid;
  return c;
}

struct AnalyticPair
{
  SpectralFunction phi;
  SpectralFunction prime;
};

// Increment cf and derivative for N(mu, sigma) jumps, tabulated exactly.
AnalyticPair analytic(const FrequencyGrid& g, double lambda_delta, double mu, double sigma)
{
  return { SpectralFunction::tabulate(
             g, [&](double u) { return oracle::levy_gaussian(lambda_delta, mu, sigma, u); }, true),
           SpectralFunction::tabulate(
             g, [&](double u) { return oracle::levy_gaussian_prime(lambda_delta, mu, sigma, u); },
             false) };
}

} // namespace

TEST(Increments, VanishingIntensityGivesZeros)
{
  Rng rng(1);
  auto c = cp(10000, 5.0, 1.0, 1e-9);
  const auto s = sample_increments(preset("gauss21"), c, rng);
  ASSERT_EQ(s.values.size(), 10000u);
  for (double v : s.values)
    ASSERT_EQ(v, 0.0);
}

TEST(Increments, MeanAndVarianceOfCompoundSum)
{
  Rng rng(2);
  const auto s = sample_increments(preset("gauss21"), cp(100000, 5.0), rng);
  const auto ms = mean_std(s.values);
  EXPECT_NEAR(ms.mean, 2.0, 0.05);
  EXPECT_NEAR(ms.std * ms.std, 5.0, 0.3);
}

TEST(Increments, LargeIntensityUsesSamePoissonMean)
{
  // lambda delta = 40 goes through the library Poisson sampler.
  Rng rng(3);
  const auto s = sample_increments(DensityModel::gaussian(0.5, 1.0), cp(20000, 5.0, 1.0, 40.0), rng);
  const auto ms = mean_std(s.values);
  EXPECT_NEAR(ms.mean, 20.0, 0.3);
  EXPECT_NEAR(ms.std * ms.std, 40.0 * 1.25, 2.0);
}

TEST(Increments, CauchyJumpsAreRejected)
{
  Rng rng(4);
  EXPECT_THROW(sample_increments(preset("cauchy"), cp(100, 5.0), rng), ConfigError);
}

TEST(CpConfig, ValidationAndThreshold)
{
  const auto c = cp(5000, 5.0);
  EXPECT_NEAR(c.kappa_n(), std::exp(2.0) + 5.0 * std::sqrt(std::log(5000.0)), 1e-14);
  EXPECT_NEAR(c.threshold(), 0.3108, 1e-4);
  EXPECT_TRUE(c.regime_ok());
  EXPECT_FALSE(cp(5000, 5.0, 3.0).regime_ok());
  EXPECT_THROW(cp(1, 5.0).validate(), ConfigError);
  EXPECT_THROW(cp(100, 5.0, 0.0).validate(), ConfigError);
  EXPECT_THROW(cp(100, 5.0, 1.0, -1.0).validate(), ConfigError);
  EXPECT_THROW(cp(100, -5.0).validate(), ConfigError);
}

TEST(LevyCf, UnitAtZeroAndGaussianExample)
{
  const auto c = cp(100, 5.0);
  EXPECT_EQ(levy_cf(preset("gauss21"), c, 0.0), cplx(1.0));
  const auto v = levy_cf(DensityModel::gaussian(0.0, 1.0), c, 2.0);
  EXPECT_NEAR(std::abs(v), std::exp(std::exp(-2.0) - 1.0), 1e-15);
  EXPECT_NEAR(std::abs(v), 0.4212, 5e-5);
}

TEST(LevyCf, ModulusBoundedBelow)
{
  for (const auto& p : presets()) {
    const auto jump = preset(p.id);
    for (double delta : { 0.1, 1.0, 2.0 }) {
      const auto c = cp(100, 5.0, delta);
      const double floor = std::exp(-2.0 * delta);
      for (double u = -30.0; u <= 30.0; u += 0.05)
        ASSERT_GE(std::abs(levy_cf(jump, c, u)), floor * (1.0 - 1e-12)) << p.id << " " << u;
    }
  }
}

TEST(DistinguishedLog, ZeroAtOrigin)
{
  const FrequencyGrid g(5.0, 0.001);
  const auto a = analytic(g, 1.0, 2.0, 1.0);
  EXPECT_EQ(distinguished_log(a.phi, a.prime, 0.0), cplx(0.0));
}

TEST(DistinguishedLog, MatchesClosedFormForGaussianJumps)
{
  const FrequencyGrid g(5.0, 0.001);
  const auto a = analytic(g, 1.0, 2.0, 1.0);
  const auto grid_log = distinguished_log_grid(a.phi, a.prime);
  double worst = 0.0;
  for (std::ptrdiff_t i = -g.half_count(); i <= g.half_count(); ++i) {
    const double u = g.node(i);
    const cplx ref = oracle::gaussian_cf(2.0, 1.0, u) - 1.0;
    worst = std::max(worst, std::abs(grid_log.at(i) - ref));
  }
  EXPECT_LT(worst, 1e-5);
  for (double u : { -5.0, -1.234, 0.5, 3.0, 5.0 })
    EXPECT_NEAR(std::abs(distinguished_log(a.phi, a.prime, u) - grid_log.at(g.offset_of(u))), 0.0,
                1e-12)
      << u;
}

TEST(DistinguishedLog, ConstantInputGivesZero)
{
  const FrequencyGrid g(3.0, 0.01);
  const auto one = SpectralFunction::hermitian_from(g, [](double) { return cplx(1.0); });
  const auto zero = SpectralFunction::zeros(g);
  const auto out = distinguished_log_grid(one, zero);
  for (const auto& v : out.values())
    ASSERT_EQ(v, cplx(0.0));
}

TEST(DistinguishedLog, CumulativeIncrementIsOnePanel)
{
  const FrequencyGrid g(4.0, 0.01);
  const auto a = analytic(g, 1.5, 1.0, 0.5);
  const auto L = distinguished_log_grid(a.phi, a.prime);
  for (std::ptrdiff_t k = 0; k < g.half_count(); ++k) {
    const cplx r0 = a.prime.at(k) / a.phi.at(k);
    const cplx r1 = a.prime.at(k + 1) / a.phi.at(k + 1);
    const cplx panel = 0.5 * g.step() * (r0 + r1);
    ASSERT_NEAR(std::abs(L.at(k + 1) - L.at(k) - panel), 0.0, 1e-13 * (1.0 + std::abs(L.at(k))));
  }
}

TEST(DistinguishedLog, FollowsWindingPastPrincipalBranch)
{
  // lambda delta = 8: the argument of phi_Delta passes pi near u = 0.4, so the
  // principal log jumps while the continuous log does not.
  const FrequencyGrid g(3.0, 0.001);
  const auto a = analytic(g, 8.0, 2.0, 1.0);
  const auto L = distinguished_log_grid(a.phi, a.prime);
  bool principal_differs = false;
  for (std::ptrdiff_t i = 0; i <= g.half_count(); ++i) {
    const double u = g.node(i);
    const cplx ref = 8.0 * (oracle::gaussian_cf(2.0, 1.0, u) - 1.0);
    ASSERT_NEAR(std::abs(L.at(i) - ref), 0.0, 1e-4) << u;
    principal_differs |= std::abs(std::log(a.phi.at(i)) - ref) > 1.0;
  }
  EXPECT_TRUE(principal_differs);
}

TEST(DistinguishedLog, ZeroDenominatorIsGuarded)
{
  const FrequencyGrid g = FrequencyGrid::from_half_count(3, 1.0);
  auto phi = SpectralFunction::hermitian_from(g, [](double u) { return cplx(u == 2.0 ? 0.0 : 1.0); });
  const auto prime = SpectralFunction::tabulate(g, [](double) { return cplx(0.0, 1.0); }, false);
  const auto L = distinguished_log_grid(phi, prime);
  for (const auto& v : L.values())
    ASSERT_TRUE(std::isfinite(v.real()) && std::isfinite(v.imag()));
  EXPECT_GT(std::abs(L.at(2)), 1e11);
}

TEST(Clamp, ZeroesAboveBoundAndIsIdempotent)
{
  const FrequencyGrid g = FrequencyGrid::from_half_count(3, 1.0);
  const auto phi = SpectralFunction::hermitian_from(g, [](double u) {
    return std::polar(u == 1.0 ? 4.5 : (u == 2.0 ? 4.0 : 0.7), 0.3 * u);
  });
  const auto once = clamp_modulus(phi, jump_cf_bound);
  EXPECT_EQ(once.at(1), cplx(0.0));
  EXPECT_EQ(once.at(-1), cplx(0.0));
  EXPECT_EQ(once.at(2), phi.at(2));
  EXPECT_EQ(once.at(3), phi.at(3));
  const auto twice = clamp_modulus(once, jump_cf_bound);
  for (std::size_t i = 0; i < once.values().size(); ++i)
    ASSERT_EQ(once.values()[i], twice.values()[i]);
}

TEST(DecompoundCf, NoiseFreeInputsRecoverJumpCf)
{
  const FrequencyGrid g(5.0, 0.001);
  const auto a = analytic(g, 1.0, 2.0, 1.0);
  const auto phi = decompound_cf(a.phi, a.prime, cp(5000, 5.0, 1.0, 1.0, g));
  EXPECT_EQ(phi.at(0), cplx(1.0));
  double worst = 0.0;
  for (std::ptrdiff_t i = -g.half_count(); i <= g.half_count(); ++i)
    worst = std::max(worst, std::abs(phi.at(i) - oracle::gaussian_cf(2.0, 1.0, g.node(i))));
  EXPECT_LT(worst, 1e-5);
}

TEST(DecompoundCf, EmpiricalEstimateIsHermitianAndBounded)
{
  Rng rng(5);
  const auto s = sample_increments(preset("mix-n4-g2h"), cp(2000, 5.0), rng);
  const auto phi = decompound_cf(s);
  EXPECT_TRUE(phi.hermitian());
  for (const auto& v : phi.values())
    ASSERT_LE(std::abs(v), jump_cf_bound);
  const auto ecf_y = ecf(s.values, s.config.grid);
  for (const auto& v : ecf_y.values())
    ASSERT_LE(std::abs(v), 1.0 + 1e-12);
}

TEST(SelectCutoffCp, ThresholdAboveClampNeverCrosses)
{
  const FrequencyGrid g(5.0, 0.01);
  auto c = cp(50, 5.0, 2.0, 1.0, g);
  ASSERT_GT(c.threshold(), jump_cf_bound);
  const auto phi = SpectralFunction::hermitian_from(g, [](double) { return cplx(4.0); });
  const auto r = select_cutoff_cp(phi, c);
  EXPECT_TRUE(r.never_crossed);
  EXPECT_EQ(r.m_hat, 0.0);
}

TEST(SelectCutoffCp, AlwaysAboveIsCapped)
{
  const FrequencyGrid g(5.0, 0.01);
  const auto phi = SpectralFunction::hermitian_from(g, [](double) { return cplx(1.0); });
  const auto r = select_cutoff_cp(phi, cp(5000, 5.0, 1.0, 1.0, g));
  EXPECT_TRUE(r.capped);
  EXPECT_DOUBLE_EQ(r.m_hat, 5.0);
}

TEST(EstimateJumpDensity, NoiseFreeOracleRiskIsTailEnergy)
{
  const FrequencyGrid g(10.0, 0.001);
  const auto a = analytic(g, 1.0, 2.0, 1.0);
  const auto c = cp(5000, 5.0, 1.0, 1.0, g);
  const std::vector<double> xs{ 0.0, 2.0 };
  const auto est = estimate_jump_density(a.phi, a.prime, c, xs);
  const auto truth = preset("gauss21");
  EXPECT_FALSE(est.m_hat.never_crossed);
  EXPECT_NEAR(est.m_hat.m_hat, std::sqrt(-2.0 * std::log(c.threshold())), 2e-3);
  for (std::ptrdiff_t i = 0; i <= est.m_hat.node; ++i)
    ASSERT_NEAR(std::abs(est.phi_bar.at(i) - truth.cf(g.node(i))), 0.0, 1e-5);
  const double risk = parseval_risk(est.phi_bar, truth, est.m_hat.m_hat);
  EXPECT_NEAR(risk, truth.tail_energy(est.m_hat.m_hat) / (2.0 * oracle::pi), 1e-6);
  EXPECT_TRUE(est.phi_bar.hermitian());
  EXPECT_FALSE(est.regime_warning);
}

TEST(EstimateJumpDensity, GaussianJumpsSmallRisk)
{
  Rng rng = substream(77, 0);
  const auto s = sample_increments(preset("gauss21"), cp(5000, 5.0), rng);
  const std::vector<double> xs{ 2.0 };
  const auto est = estimate_jump_density(s, xs);
  const double risk = parseval_risk(est.phi_bar, preset("gauss21"), est.m_hat.m_hat);
  EXPECT_LT(risk, 5e-2);
  EXPECT_GT(risk, 0.0);
  EXPECT_TRUE(est.phi_bar.hermitian());
  for (const auto& v : est.phi_bar.values())
    ASSERT_TRUE(v == cplx(0.0) || std::abs(v) >= s.config.threshold());
}

TEST(EstimateJumpDensity, RiskDecreasesWithSampleSize)
{
  const auto truth = preset("gauss21");
  auto mean_risk = [&](std::size_t n) {
    std::vector<double> risks;
    for (std::uint64_t r = 0; r < 30; ++r) {
      Rng rng = substream(909, r);
      const auto s = sample_increments(truth, cp(n, 5.0), rng);
      const std::vector<double> xs{ 2.0 };
      const auto est = estimate_jump_density(s, xs);
      risks.push_back(parseval_risk(est.phi_bar, truth, est.m_hat.m_hat));
    }
    return mean_std(risks).mean;
  };
  EXPECT_LT(mean_risk(5000), mean_risk(500));
}

TEST(EstimateJumpDensity, RegimeWarning)
{
  Rng rng(6);
  const auto s = sample_increments(preset("gauss21"), cp(100, 5.0, 2.0), rng);
  ASSERT_FALSE(s.config.regime_ok());
  const std::vector<double> xs{ 0.0 };
  EXPECT_TRUE(estimate_jump_density(s, xs).regime_warning);
}

TEST(EstimateJumpDensity, LengthMismatchIsArgumentError)
{
  Rng rng(7);
  auto s = sample_increments(preset("gauss21"), cp(100, 5.0), rng);
  s.values.pop_back();
  const std::vector<double> xs{ 0.0 };
  EXPECT_THROW(estimate_jump_density(s, xs), ArgumentError);
}
