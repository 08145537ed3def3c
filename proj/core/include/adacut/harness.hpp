#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace adacut {

enum class Problem
{
  direct,
  deconvolution,
  decompounding
};

enum class Method
{
  adaptive,
  penalized,
  penalized_log,
  oracle
};

std::string_view to_string(Problem p);
std::string_view to_string(Method m);
Problem parse_problem(std::string_view s);
Method parse_method(std::string_view s);

//! A declarative Monte Carlo experiment.
struct Scenario
{
  std::string id;
  Problem problem = Problem::direct;
  std::string target = "gauss21";
  std::string noise = "none";
  std::size_t n = 1000;
  double delta = 1.0;  //!< decompounding only
  double lambda = 1.0; //!< decompounding only
  std::vector<double> kappa_grid{ 8.0 };
  std::vector<double> K_grid{ 2.0 };
  std::vector<double> K_tilde_grid{ 0.3 };
  std::vector<Method> method_set{ Method::adaptive };
  std::size_t replicates = 200;
  std::uint64_t seed = 1;
  double alpha = 1.0;
  double grid_step = 0.01;
  double grid_umax = 20.0;

  //! Throws ConfigError for inconsistent problem/density/method choices.
  void validate() const;
};

struct RiskReport
{
  std::string scenario;
  Method method = Method::adaptive;
  std::optional<double> hyper; //!< kappa, K or K_tilde; empty for the oracle
  std::size_t n = 0;
  std::optional<double> delta; //!< decompounding only
  double mean_risk = 0.0;
  double std_risk = 0.0;
  double mean_cutoff = 0.0;
  double std_cutoff = 0.0;
  std::size_t replicates = 0;
  std::vector<std::string> warnings;
};

//! Practical upper bound (sqrt(n) - 1) / sqrt(log n) on kappa, halved for
//! decompounding.
double kappa_bound(std::size_t n, bool halved);

struct RunOptions
{
  unsigned threads = 1;
  std::optional<std::size_t> replicates; //!< overrides Scenario::replicates
};

//! Runs every (method, hyperparameter) pair of the scenario on the same
//! seeded replicates. Replicate i draws from substream(seed, i); results are
//! reduced in replicate order, so output does not depend on thread count.
std::vector<RiskReport> run_scenario(const Scenario& scenario, const RunOptions& options = {});

//! CSV header shared by emit_csv and read_csv.
inline constexpr std::string_view csv_header =
  "scenario,method,hyper,n,delta,mean_risk,std_risk,mean_cutoff,std_cutoff,replicates,warnings";

//! Canonical row order: (scenario, method, hyper).
void sort_reports(std::vector<RiskReport>& reports);

std::string to_csv(std::vector<RiskReport> reports);
void emit_csv(std::span<const RiskReport> reports, const std::filesystem::path& path);
std::vector<RiskReport> parse_csv(std::string_view text);
std::vector<RiskReport> read_csv(const std::filesystem::path& path);

//! Reports belonging to a plot group: rows whose scenario equals `group` or
//! starts with `group/`.
std::vector<RiskReport> select_group(std::span<const RiskReport> reports, std::string_view group);

//! Static SVG of adaptive risk against kappa, one polyline per scenario in
//! the group. Throws ArgumentError when no adaptive row belongs to the group.
std::string stability_svg(std::span<const RiskReport> reports, std::string_view group);
void emit_stability_plot(std::span<const RiskReport> reports,
                         std::string_view group,
                         const std::filesystem::path& path);

} // namespace adacut
