#include <adacut/deconvolution.hpp>
#include <adacut/errors.hpp>
#include <adacut/selectors.hpp>
#include <adacut/stats.hpp>

#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace adacut {

namespace {

bool is_integer(double x)
{
  return x >= 1.0 && x < 64.0 && std::floor(x) == x;
}

// Closed form of the noise energy when one exists.
std::optional<double> closed_energy(const NoiseModel& noise, double m)
{
  if (noise.is_direct())
    return m / std::numbers::pi;
  const auto& p = noise.density()->params();
  if (const auto* g = std::get_if<model::Gamma>(&p); g && is_integer(g->shape)) {
    // |cf|^-2 = (1 + s^2 u^2)^k, integrated term by term.
    const int k = static_cast<int>(g->shape);
    const double t2 = g->scale * g->scale * m * m;
    double binom = 1.0, pw = 1.0, sum = 0.0;
    for (int j = 0; j <= k; ++j) {
      sum += binom * pw / (2.0 * j + 1.0);
      binom = binom * (k - j) / (j + 1.0);
      pw *= t2;
    }
    return m * sum / std::numbers::pi;
  }
  if (const auto* c = std::get_if<model::Cauchy>(&p))
    return std::expm1(2.0 * c->scale * m) / (2.0 * c->scale * std::numbers::pi);
  return std::nullopt;
}

double inverse_power(const NoiseModel& noise, double u)
{
  return 1.0 / std::norm(noise.cf(u));
}

// (1/2pi) int_{-m}^{m} |phi|^2, cumulative by node offset 0..K.
std::vector<double> norm_curve(const SpectralFunction& phi)
{
  const auto K = phi.grid().half_count();
  const double w = 0.5 * phi.grid().step() / (2.0 * std::numbers::pi);
  std::vector<double> out(static_cast<std::size_t>(K + 1), 0.0);
  for (std::ptrdiff_t k = 1; k <= K; ++k) {
    const double panel = std::norm(phi.at(k - 1)) + std::norm(phi.at(k)) +
                         std::norm(phi.at(-k + 1)) + std::norm(phi.at(-k));
    out[static_cast<std::size_t>(k)] = out[static_cast<std::size_t>(k - 1)] + w * panel;
  }
  return out;
}

std::vector<std::ptrdiff_t> snap_grid(std::span<const double> m_grid, const FrequencyGrid& grid)
{
  if (m_grid.empty())
    throw ConfigError("oracle: candidate cutoff grid is empty");
  if (!std::is_sorted(m_grid.begin(), m_grid.end()))
    throw ConfigError("oracle: candidate cutoff grid must be sorted");
  std::vector<std::ptrdiff_t> nodes;
  nodes.reserve(m_grid.size());
  for (double m : m_grid) {
    if (!(m >= 0.0))
      throw ConfigError("oracle: candidate cutoffs must be >= 0");
    const auto k = grid.nearest(m);
    if (k > grid.half_count())
      throw ConfigError("oracle: candidate cutoff beyond the frequency grid");
    nodes.push_back(k);
  }
  return nodes;
}

template<class Draw>
OracleResult run_oracle(const ParsevalEvaluator& eval,
                        const OracleConfig& cfg,
                        std::uint64_t seed,
                        Draw&& draw)
{
  if (cfg.replicates == 0)
    throw ConfigError("oracle: replicates must be positive");
  const auto& grid = eval.grid();
  const auto nodes = snap_grid(cfg.m_grid, grid);
  std::vector<double> snapped;
  snapped.reserve(nodes.size());
  for (auto k : nodes)
    snapped.push_back(grid.node(k));

  std::vector<std::vector<double>> curves(cfg.replicates, std::vector<double>(nodes.size()));
  if (cfg.common_random_numbers) {
    for (std::size_t r = 0; r < cfg.replicates; ++r) {
      Rng rng = substream(seed, r);
      const SpectralFunction phi = draw(rng);
      const auto full = eval.curve(phi);
      for (std::size_t j = 0; j < nodes.size(); ++j)
        curves[r][j] = full[static_cast<std::size_t>(nodes[j])];
    }
    return reduce_oracle(snapped, curves);
  }

  // Fresh replicates for every candidate cutoff.
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    for (std::size_t r = 0; r < cfg.replicates; ++r) {
      Rng rng = substream(seed, static_cast<std::uint64_t>(j) * cfg.replicates + r);
      curves[r][j] = eval.risk(draw(rng), nodes[j]);
    }
  }
  OracleResult out = reduce_oracle(snapped, curves);
  out.replicate_argmin.clear();
  return out;
}

} // namespace

double noise_energy(const NoiseModel& noise, double m)
{
  if (!(m >= 0.0))
    throw ArgumentError("noise_energy: cutoff must be >= 0");
  if (m == 0.0)
    return 0.0;
  if (auto c = closed_energy(noise, m))
    return *c;
  return detail::integrate_panels([&](double u) { return inverse_power(noise, u); }, 0.0, m) /
         std::numbers::pi;
}

std::vector<double> noise_energy_on_grid(const NoiseModel& noise, const FrequencyGrid& grid)
{
  const auto K = grid.half_count();
  std::vector<double> out(static_cast<std::size_t>(K + 1), 0.0);
  if (closed_energy(noise, 1.0)) {
    for (std::ptrdiff_t k = 1; k <= K; ++k)
      out[static_cast<std::size_t>(k)] = *closed_energy(noise, grid.node(k));
    return out;
  }
  const auto f = [&](double u) { return inverse_power(noise, u); };
  double acc = 0.0;
  for (std::ptrdiff_t k = 1; k <= K; ++k) {
    acc += detail::integrate_panels(f, grid.node(k - 1), grid.node(k), grid.step()) / std::numbers::pi;
    out[static_cast<std::size_t>(k)] = acc;
  }
  return out;
}

double PenaltyConfig::constant(std::size_t n) const
{
  if (log_variant)
    return K_tilde * std::pow(std::log(static_cast<double>(n)), 2.5);
  return K;
}

double penalty(double noise_energy_m, double m, std::size_t n, double constant)
{
  if (m <= 0.0)
    return 0.0;
  const double ratio = noise_energy_m / std::log1p(m);
  return constant * ratio * ratio * noise_energy_m / static_cast<double>(n);
}

MaxCutoff max_penalized_cutoff(const NoiseModel& noise, std::size_t n)
{
  if (n == 0)
    throw ConfigError("penalized: sample size must be positive");
  const double cap = 2.0 * static_cast<double>(n);
  auto fits = [&](double m) { return noise_energy(noise, m) <= cap; };

  MaxCutoff out;
  if (!fits(1.0)) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
      const double mid = 0.5 * (lo + hi);
      (fits(mid) ? lo : hi) = mid;
    }
    out.value = lo;
  } else {
    double lo = 1.0, hi = 2.0;
    while (fits(hi) && hi < 1e15) {
      lo = hi;
      hi *= 2.0;
    }
    while (hi - lo > 1.0) {
      const double mid = std::floor(0.5 * (lo + hi));
      (fits(mid) ? lo : hi) = mid;
    }
    out.value = lo;
  }
  out.low = noise_energy(noise, out.value) < static_cast<double>(n);
  return out;
}

PenalizedResult penalized_select(const SpectralFunction& phi_x_hat,
                                 std::span<const double> energy_by_node,
                                 const MaxCutoff& M_n,
                                 std::size_t n,
                                 const PenaltyConfig& cfg)
{
  const auto& grid = phi_x_hat.grid();
  const auto K = grid.half_count();
  if (energy_by_node.size() != static_cast<std::size_t>(K + 1))
    throw ArgumentError("penalized_select: energy table does not match the grid");
  if (n == 0)
    throw ConfigError("penalized_select: sample size must be positive");

  std::vector<std::ptrdiff_t> candidates;
  const auto last = grid.floor_offset(std::min(M_n.value, grid.u_max()));
  if (cfg.m_search_grid.empty()) {
    for (std::ptrdiff_t k = 0; k <= last; ++k)
      candidates.push_back(k);
  } else {
    for (double m : cfg.m_search_grid) {
      if (!(m >= 0.0))
        continue;
      const auto k = grid.nearest(m);
      if (k <= last)
        candidates.push_back(k);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  }
  if (candidates.empty())
    throw ConfigError("penalized_select: no candidate cutoff in [0, M_n]");

  const auto norms = norm_curve(phi_x_hat);
  const double C = cfg.constant(n);
  PenalizedResult out;
  out.M_n = M_n;
  double best = 0.0;
  bool first = true;
  for (auto k : candidates) {
    const auto idx = static_cast<std::size_t>(k);
    const double crit = -norms[idx] + penalty(energy_by_node[idx], grid.node(k), n, C);
    if (first || crit < best) {
      best = crit;
      out.node = k;
      first = false;
    }
  }
  out.m_tilde = grid.node(out.node);
  return out;
}

PenalizedResult penalized_select(std::span<const double> sample_y,
                                 const NoiseModel& noise,
                                 std::size_t n,
                                 const PenaltyConfig& cfg,
                                 const FrequencyGrid& grid)
{
  const SpectralFunction phi_x = deconv_cf(ecf(sample_y, grid), noise);
  const auto energy = noise_energy_on_grid(noise, grid);
  return penalized_select(phi_x, energy, max_penalized_cutoff(noise, n), n, cfg);
}

OracleResult reduce_oracle(std::span<const double> m_grid,
                           const std::vector<std::vector<double>>& curves)
{
  if (m_grid.empty() || curves.empty())
    throw ArgumentError("reduce_oracle: empty input");
  const auto J = m_grid.size();
  OracleResult out;
  out.m_grid.assign(m_grid.begin(), m_grid.end());
  out.mean_risk.resize(J);
  out.std_risk.resize(J);
  std::vector<double> column(curves.size());
  for (std::size_t j = 0; j < J; ++j) {
    for (std::size_t r = 0; r < curves.size(); ++r) {
      if (curves[r].size() != J)
        throw ArgumentError("reduce_oracle: ragged risk curves");
      column[r] = curves[r][j];
    }
    const auto ms = mean_std(column);
    out.mean_risk[j] = ms.mean;
    out.std_risk[j] = ms.std;
  }
  const auto best = std::min_element(out.mean_risk.begin(), out.mean_risk.end());
  out.m_star = m_grid[static_cast<std::size_t>(best - out.mean_risk.begin())];

  out.replicate_argmin.reserve(curves.size());
  for (const auto& c : curves) {
    const auto it = std::min_element(c.begin(), c.end());
    out.replicate_argmin.push_back(m_grid[static_cast<std::size_t>(it - c.begin())]);
  }
  return out;
}

OracleResult oracle_select(const DensityModel& truth,
                           const NoiseModel& noise,
                           std::size_t n,
                           const FrequencyGrid& grid,
                           const OracleConfig& cfg,
                           std::uint64_t seed)
{
  if (n == 0)
    throw ConfigError("oracle: sample size must be positive");
  const ParsevalEvaluator eval(truth, grid);
  const SpectralFunction noise_cf =
    noise.is_direct() ? SpectralFunction::hermitian_from(grid, [](double) { return cplx(1.0); })
                      : noise.on_grid(grid);
  return run_oracle(eval, cfg, seed, [&](Rng& rng) {
    const auto y = sample_observations(truth, noise, n, rng);
    return deconv_cf(ecf(y, grid), noise_cf);
  });
}

OracleResult oracle_select_cp(const DensityModel& jump,
                              const CpConfig& cp,
                              const OracleConfig& cfg,
                              std::uint64_t seed)
{
  cp.validate();
  const ParsevalEvaluator eval(jump, cp.grid);
  return run_oracle(eval, cfg, seed, [&](Rng& rng) {
    return decompound_cf(sample_increments(jump, cp, rng));
  });
}

std::vector<double> all_nonnegative_nodes(const FrequencyGrid& grid)
{
  std::vector<double> out(static_cast<std::size_t>(grid.half_count() + 1));
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = grid.node(static_cast<std::ptrdiff_t>(k));
  return out;
}

} // namespace adacut
