// adacut: run scenario files, plot kappa stability, list density presets.

#include <adacut/adacut.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <thread>

namespace fs = std::filesystem;

namespace {

fs::path default_out_dir()
{
  if (const char* env = std::getenv("ADACUT_OUT_DIR"); env && *env)
    return env;
  return "out";
}

bool in_group(const std::string& id, const std::string& group)
{
  return id == group || (id.size() > group.size() && id.compare(0, group.size(), group) == 0 &&
                         id[group.size()] == '/');
}

std::string file_stem(std::string id)
{
  for (auto& c : id) {
    if (c == '/' || c == '\\' || c == ' ')
      c = '_';
  }
  return id;
}

void print_summary(const std::vector<adacut::RiskReport>& reports)
{
  std::printf("%-32s %-14s %8s %12s %12s %10s %10s  %s\n", "scenario", "method", "hyper",
              "mean_risk", "std_risk", "cutoff", "std_cut", "warnings");
  for (const auto& r : reports) {
    std::string warn;
    for (const auto& w : r.warnings)
      warn += (warn.empty() ? "" : ";") + w;
    const std::string hyper = r.hyper ? std::to_string(*r.hyper).substr(0, 6) : "-";
    std::printf("%-32s %-14s %8s %12.4e %12.4e %10.3f %10.3f  %s\n", r.scenario.c_str(),
                std::string(adacut::to_string(r.method)).c_str(), hyper.c_str(), r.mean_risk,
                r.std_risk, r.mean_cutoff, r.std_cutoff, warn.c_str());
  }
}

int cmd_run(const fs::path& config,
            const std::string& only,
            const fs::path& out_dir,
            std::optional<std::size_t> replicates,
            unsigned threads)
{
  auto scenarios = adacut::load_scenarios(config);
  if (!only.empty()) {
    std::erase_if(scenarios, [&](const adacut::Scenario& s) { return !in_group(s.id, only); });
    if (scenarios.empty()) {
      std::cerr << "adacut: no scenario '" << only << "' in " << config << "\n";
      return 2;
    }
  }

  adacut::RunOptions opts;
  opts.threads = threads;
  opts.replicates = replicates;

  std::vector<adacut::RiskReport> all;
  for (const auto& sc : scenarios) {
    std::cerr << "running " << sc.id << " (" << opts.replicates.value_or(sc.replicates)
              << " replicates)\n";
    auto reports = adacut::run_scenario(sc, opts);
    all.insert(all.end(), reports.begin(), reports.end());
  }
  adacut::sort_reports(all);

  fs::create_directories(out_dir);
  std::string name = config.stem().string();
  if (!only.empty())
    name += "_" + file_stem(only);
  const fs::path csv = out_dir / (name + ".csv");
  adacut::emit_csv(all, csv);
  print_summary(all);
  std::cerr << "wrote " << csv.string() << "\n";
  return 0;
}

int cmd_plot(const fs::path& csv, const std::string& group, fs::path out)
{
  const auto reports = adacut::read_csv(csv);
  if (out.empty())
    out = csv.parent_path() / (file_stem(group) + "_stability.svg");
  adacut::emit_stability_plot(reports, group, out);
  std::cerr << "wrote " << out.string() << "\n";
  return 0;
}

int cmd_list_presets()
{
  for (const auto& p : adacut::presets())
    std::printf("%-12s %s\n", p.id.c_str(), p.description.c_str());
  std::printf("%-12s %s\n", "none", "no noise (direct problem)");
  return 0;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{ "Adaptive spectral cutoff estimators and Monte Carlo risk harness" };
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run the scenarios of a config file and write a CSV");
  std::string config, scenario, out_dir;
  std::size_t replicates = 0;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  run->add_option("config", config, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--scenario", scenario, "Only this scenario id (or id/ group)");
  run->add_option("--out", out_dir, "Output directory (default $ADACUT_OUT_DIR or ./out)");
  run->add_option("--replicates", replicates, "Override the replicate count")
    ->check(CLI::PositiveNumber);
  run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  auto* plot = app.add_subcommand("plot", "SVG of adaptive risk against kappa");
  std::string csv, group, svg_out;
  plot->add_option("reports", csv, "CSV written by run")->required()->check(CLI::ExistingFile);
  plot->add_option("--scenario", group, "Scenario id or group prefix")->required();
  plot->add_option("--out", svg_out, "Output SVG path");

  auto* list = app.add_subcommand("list-presets", "List the named densities");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      std::optional<std::size_t> m;
      if (replicates > 0)
        m = replicates;
      return cmd_run(config, scenario, out_dir.empty() ? default_out_dir() : fs::path(out_dir), m,
                     threads);
    }
    if (plot->parsed())
      return cmd_plot(csv, group, svg_out);
    if (list->parsed())
      return cmd_list_presets();
  } catch (const adacut::ConfigError& e) {
    std::cerr << "adacut: configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "adacut: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
