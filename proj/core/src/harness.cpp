#include <adacut/decompounding.hpp>
#include <adacut/deconvolution.hpp>
#include <adacut/errors.hpp>
#include <adacut/harness.hpp>
#include <adacut/selectors.hpp>
#include <adacut/stats.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace adacut {

std::string_view to_string(Problem p)
{
  switch (p) {
    case Problem::direct: return "direct";
    case Problem::deconvolution: return "deconvolution";
    case Problem::decompounding: return "decompounding";
  }
  return "?";
}

std::string_view to_string(Method m)
{
  switch (m) {
    case Method::adaptive: return "adaptive";
    case Method::penalized: return "penalized";
    case Method::penalized_log: return "penalized_log";
    case Method::oracle: return "oracle";
  }
  return "?";
}

Problem parse_problem(std::string_view s)
{
  for (auto p : { Problem::direct, Problem::deconvolution, Problem::decompounding }) {
    if (s == to_string(p))
      return p;
  }
  throw ConfigError("unknown problem '" + std::string(s) + "'");
}

Method parse_method(std::string_view s)
{
  for (auto m : { Method::adaptive, Method::penalized, Method::penalized_log, Method::oracle }) {
    if (s == to_string(m))
      return m;
  }
  throw ConfigError("unknown method '" + std::string(s) + "'");
}

double kappa_bound(std::size_t n, bool halved)
{
  if (n < 2)
    throw ArgumentError("kappa_bound: n must be at least 2");
  const double nd = static_cast<double>(n);
  const double b = (std::sqrt(nd) - 1.0) / std::sqrt(std::log(nd));
  return halved ? 0.5 * b : b;
}

namespace {

bool has(const Scenario& s, Method m)
{
  return std::find(s.method_set.begin(), s.method_set.end(), m) != s.method_set.end();
}

void require_positive(const std::vector<double>& xs, const std::string& what, bool allow_zero)
{
  if (xs.empty())
    throw ConfigError(what + " must not be empty");
  for (double x : xs) {
    if (!std::isfinite(x) || x < 0.0 || (!allow_zero && x == 0.0))
      throw ConfigError(what + " values must be " + (allow_zero ? "non-negative" : "positive"));
  }
}

} // namespace

void Scenario::validate() const
{
  const std::string where = "scenario '" + id + "': ";
  try {
    if (id.empty())
      throw ConfigError("scenario id must not be empty");
    if (n < 2)
      throw ConfigError("n must be at least 2");
    if (replicates < 1)
      throw ConfigError("replicates must be positive");
    if (method_set.empty())
      throw ConfigError("method_set must not be empty");
    if (!(alpha > 0.0 && alpha <= 1.0))
      throw ConfigError("alpha must lie in (0, 1]");
    require_positive(kappa_grid, "kappa_grid", false);
    if (has(*this, Method::penalized))
      require_positive(K_grid, "K_grid", true);
    if (has(*this, Method::penalized_log))
      require_positive(K_tilde_grid, "K_tilde_grid", true);

    const FrequencyGrid grid(grid_umax, grid_step);
    const DensityModel truth = preset(target);
    const NoiseModel eps = noise_preset(noise);

    switch (problem) {
      case Problem::direct:
        if (!eps.is_direct())
          throw ConfigError("the direct problem takes noise = \"none\"");
        break;
      case Problem::deconvolution:
        if (eps.is_direct())
          throw ConfigError("deconvolution needs a noise density");
        (void)eps.on_grid(grid);
        break;
      case Problem::decompounding:
        if (!eps.is_direct())
          throw ConfigError("decompounding takes noise = \"none\"");
        if (!truth.has_finite_moments())
          throw ConfigError("jump density " + target +
                            " has infinite moments and is not covered by the decompounding estimator");
        if (has(*this, Method::penalized) || has(*this, Method::penalized_log))
          throw ConfigError("penalized selectors are defined for (de)convolution problems only");
        CpConfig{ lambda, delta, n, 1.0, alpha, grid }.validate();
        break;
    }
  } catch (const ConfigError& e) {
    throw ConfigError(where + e.what());
  } catch (const ArgumentError& e) {
    throw ConfigError(where + e.what());
  }
}

namespace {

struct Outcome
{
  std::vector<double> adaptive_risk, adaptive_cut;
  std::vector<char> adaptive_never;
  std::vector<double> pen_risk, pen_cut;
  std::vector<double> penlog_risk, penlog_cut;
  std::vector<double> oracle_curve; // node offsets 1..K
};

// Everything shared by all replicates of a scenario.
struct Context
{
  const Scenario& sc;
  FrequencyGrid grid;
  DensityModel truth;
  NoiseModel noise;
  ParsevalEvaluator eval;
  SpectralFunction noise_cf;
  std::vector<double> energy;
  MaxCutoff M_n;
  bool want_oracle;
  bool want_pen;
  bool want_penlog;

  explicit Context(const Scenario& s)
    : sc(s)
    , grid(s.grid_umax, s.grid_step)
    , truth(preset(s.target))
    , noise(noise_preset(s.noise))
    , eval(truth, grid)
    , noise_cf(noise.is_direct()
                 ? SpectralFunction::hermitian_from(grid, [](double) { return cplx(1.0); })
                 : noise.on_grid(grid))
    , want_oracle(has(s, Method::oracle))
    , want_pen(has(s, Method::penalized))
    , want_penlog(has(s, Method::penalized_log))
  {
    if (want_pen || want_penlog) {
      energy = noise_energy_on_grid(noise, grid);
      M_n = max_penalized_cutoff(noise, s.n);
    }
  }

  CpConfig cp(double kappa) const
  {
    return CpConfig{ sc.lambda, sc.delta, sc.n, kappa, sc.alpha, grid };
  }

  DeconvConfig dc(double kappa) const
  {
    return DeconvConfig{ kappa, sc.alpha, grid, sc.n };
  }

  void oracle_curve(const SpectralFunction& phi, Outcome& out) const
  {
    if (!want_oracle)
      return;
    auto full = eval.curve(phi);
    out.oracle_curve.assign(full.begin() + 1, full.end());
  }

  Outcome replicate(std::size_t i) const
  {
    Rng rng = substream(sc.seed, i);
    Outcome out;
    const bool adaptive = has(sc, Method::adaptive);

    if (sc.problem == Problem::decompounding) {
      const CpConfig base = cp(sc.kappa_grid.front());
      const auto sample = sample_increments(truth, base, rng);
      const auto pair = ecf_with_derivative(sample.values, grid);
      const SpectralFunction phi_tilde = decompound_cf(pair.value, pair.derivative, base);
      if (adaptive) {
        for (double kappa : sc.kappa_grid) {
          const CpConfig c = cp(kappa);
          const auto cut = select_cutoff_cp(phi_tilde, c);
          const auto phi_bar = keep_at_or_above(phi_tilde, c.threshold());
          out.adaptive_risk.push_back(eval.risk(phi_bar, cut.node));
          out.adaptive_cut.push_back(cut.m_hat);
          out.adaptive_never.push_back(cut.never_crossed);
        }
      }
      oracle_curve(phi_tilde, out);
      return out;
    }

    const auto y = sample_observations(truth, noise, sc.n, rng);
    const SpectralFunction phi_y = ecf(y, grid);
    if (adaptive) {
      for (double kappa : sc.kappa_grid) {
        const DeconvConfig c = dc(kappa);
        const auto cut = select_cutoff(phi_y, c);
        const auto phi_x = deconv_cf(threshold_ecf(phi_y, c), noise_cf);
        out.adaptive_risk.push_back(eval.risk(phi_x, cut.node));
        out.adaptive_cut.push_back(cut.m_hat);
        out.adaptive_never.push_back(cut.never_crossed);
      }
    }
    if (want_pen || want_penlog || want_oracle) {
      const SpectralFunction phi_x = deconv_cf(phi_y, noise_cf);
      auto run_pen = [&](const std::vector<double>& constants, bool log_variant,
                         std::vector<double>& risk, std::vector<double>& cut) {
        for (double c : constants) {
          PenaltyConfig pc;
          pc.log_variant = log_variant;
          (log_variant ? pc.K_tilde : pc.K) = c;
          const auto r = penalized_select(phi_x, energy, M_n, sc.n, pc);
          risk.push_back(eval.risk(phi_x, r.node));
          cut.push_back(r.m_tilde);
        }
      };
      if (want_pen)
        run_pen(sc.K_grid, false, out.pen_risk, out.pen_cut);
      if (want_penlog)
        run_pen(sc.K_tilde_grid, true, out.penlog_risk, out.penlog_cut);
      oracle_curve(phi_x, out);
    }
    return out;
  }
};

std::vector<Outcome> run_replicates(const Context& ctx, std::size_t M, unsigned threads)
{
  std::vector<Outcome> results(M);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(M)));
  if (threads == 1) {
    for (std::size_t i = 0; i < M; ++i)
      results[i] = ctx.replicate(i);
    return results;
  }
  std::atomic<std::size_t> next{ 0 };
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= M)
        return;
      try {
        results[i] = ctx.replicate(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
        next.store(M);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back(worker);
  for (auto& t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
  return results;
}

RiskReport make_report(const Scenario& sc, Method m, std::optional<double> hyper, std::size_t M)
{
  RiskReport r;
  r.scenario = sc.id;
  r.method = m;
  r.hyper = hyper;
  r.n = sc.n;
  if (sc.problem == Problem::decompounding)
    r.delta = sc.delta;
  r.replicates = M;
  return r;
}

void fill(RiskReport& r, const std::vector<double>& risk, const std::vector<double>& cut)
{
  const auto rs = mean_std(risk);
  const auto cs = mean_std(cut);
  r.mean_risk = rs.mean;
  r.std_risk = rs.std;
  r.mean_cutoff = cs.mean;
  r.std_cutoff = cs.std;
}

} // namespace

std::vector<RiskReport> run_scenario(const Scenario& scenario, const RunOptions& options)
{
  scenario.validate();
  const std::size_t M = options.replicates.value_or(scenario.replicates);
  if (M == 0)
    throw ConfigError("scenario '" + scenario.id + "': replicates must be positive");

  const Context ctx(scenario);
  const auto results = run_replicates(ctx, M, options.threads);
  const bool cp = scenario.problem == Problem::decompounding;

  std::vector<std::string> common;
  if (cp && !ctx.cp(1.0).regime_ok())
    common.push_back("regime");

  std::vector<RiskReport> reports;
  std::vector<double> risk(M), cut(M);

  if (has(scenario, Method::adaptive)) {
    const double bound = kappa_bound(scenario.n, cp);
    for (std::size_t j = 0; j < scenario.kappa_grid.size(); ++j) {
      const double kappa = scenario.kappa_grid[j];
      bool never = false;
      for (std::size_t i = 0; i < M; ++i) {
        risk[i] = results[i].adaptive_risk[j];
        cut[i] = results[i].adaptive_cut[j];
        never = never || results[i].adaptive_never[j];
      }
      RiskReport r = make_report(scenario, Method::adaptive, kappa, M);
      fill(r, risk, cut);
      r.warnings = common;
      if (kappa > bound)
        r.warnings.push_back("kappa_above_bound");
      if (never)
        r.warnings.push_back("never_crossed");
      reports.push_back(std::move(r));
    }
  }

  auto pen_reports = [&](Method m, const std::vector<double>& constants, bool log_variant) {
    for (std::size_t j = 0; j < constants.size(); ++j) {
      for (std::size_t i = 0; i < M; ++i) {
        risk[i] = (log_variant ? results[i].penlog_risk : results[i].pen_risk)[j];
        cut[i] = (log_variant ? results[i].penlog_cut : results[i].pen_cut)[j];
      }
      RiskReport r = make_report(scenario, m, constants[j], M);
      fill(r, risk, cut);
      r.warnings = common;
      if (ctx.M_n.low)
        r.warnings.push_back("penalty_Mn_low");
      reports.push_back(std::move(r));
    }
  };
  if (ctx.want_pen)
    pen_reports(Method::penalized, scenario.K_grid, false);
  if (ctx.want_penlog)
    pen_reports(Method::penalized_log, scenario.K_tilde_grid, true);

  if (ctx.want_oracle) {
    std::vector<std::vector<double>> curves;
    curves.reserve(M);
    for (const auto& o : results)
      curves.push_back(o.oracle_curve);
    std::vector<double> m_grid(static_cast<std::size_t>(ctx.grid.half_count()));
    for (std::size_t k = 0; k < m_grid.size(); ++k)
      m_grid[k] = ctx.grid.node(static_cast<std::ptrdiff_t>(k + 1));
    const OracleResult o = reduce_oracle(m_grid, curves);
    const auto best = static_cast<std::size_t>(
      std::find(o.m_grid.begin(), o.m_grid.end(), o.m_star) - o.m_grid.begin());
    RiskReport r = make_report(scenario, Method::oracle, std::nullopt, M);
    r.mean_risk = o.mean_risk[best];
    r.std_risk = o.std_risk[best];
    r.mean_cutoff = o.m_star;
    r.std_cutoff = mean_std(o.replicate_argmin).std;
    r.warnings = common;
    reports.push_back(std::move(r));
  }

  sort_reports(reports);
  return reports;
}

} // namespace adacut
