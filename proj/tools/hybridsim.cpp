// hybridsim: pattern, experiment and verify front end.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "hybrid/cli/commands.hpp"
#include "hybrid/cli/config.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitOutput = 3;

hybrid::cli::RunConfig resolve(const std::string& config_path, const std::optional<std::int64_t>& seed,
                               const std::string& out_dir) {
  using hybrid::cli::ConfigError;
  hybrid::cli::RunConfig cfg = config_path.empty() ? hybrid::cli::parse_config("") : hybrid::cli::load_config(config_path);
  if (seed) {
    if (*seed < 0) throw ConfigError("--seed must be non-negative");
    cfg.scan.seed = static_cast<std::uint64_t>(*seed);
    cfg.experiment.seed = static_cast<std::uint64_t>(*seed);
  }
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid polarization/path entanglement: patterns, synthetic experiments, invariant checks"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::int64_t> seed;
  std::string out_dir;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "overrides scan.seed and experiment.seed");
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
  };

  CLI::App* pattern = app.add_subcommand("pattern", "write analytic densities along one scan to pattern.csv");
  add_common(pattern);
  CLI::App* experiment = app.add_subcommand("experiment", "simulate and fit the four-curve program for each state");
  add_common(experiment);
  CLI::App* verify = app.add_subcommand("verify", "run the analytic invariant suite");
  std::string mutation = "none";
  int random_states = 1000;
  verify->add_option("--mutate", mutation, "deliberate formula error: none, fringe-argument, corrected-sign");
  verify->add_option("--states", random_states, "random states per check")->check(CLI::Range(1, 1000000));
  verify->add_option("--seed", seed, "seed for the random states");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*pattern) {
      const auto path = hybrid::cli::cmd_pattern(resolve(config_path, seed, out_dir));
      std::cout << "wrote " << path.string() << '\n';
      return 0;
    }
    if (*experiment) {
      const auto cfg = resolve(config_path, seed, out_dir);
      const auto report = hybrid::cli::cmd_experiment(cfg, std::cerr);
      for (const auto& s : report.states) {
        std::cout << s.id << ": C = " << s.concurrence;
        if (!s.pairings.empty()) {
          std::cout << ", V1 = " << s.v1_spatial << " / " << s.v1_polarization << ", V12(max setting) = "
                    << s.v12_spatial_max << " / " << s.v12_polarization_max;
        }
        std::cout << (s.ok ? "" : "  [warnings]") << '\n';
      }
      std::cout << "wrote curves.csv, curves_max_setting.csv, corrected.csv, report.json in "
                << cfg.output_dir.string() << '\n';
      return 0;
    }
    hybrid::VerifyOptions options;
    options.random_states = random_states;
    if (seed) options.seed = static_cast<std::uint64_t>(*seed);
    return hybrid::cli::cmd_verify(hybrid::parse_mutation(mutation), std::cout, options);
  } catch (const hybrid::cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const hybrid::cli::OutputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOutput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
