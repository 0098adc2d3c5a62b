#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "specreg/experiments/config.hpp"
#include "specreg/experiments/runner.hpp"

namespace ex = specreg::experiments;

int main(int argc, char** argv) {
  CLI::App app{"Spectral regularization experiments for multiplication operators", "specreg"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  std::string format = "csv";
  app.add_option("--config", config_path, "experiment config (JSON, comments allowed)")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (overrides output_dir in the config)");
  app.add_option("--seed", seed, "random seed (overrides the config)");
  app.add_option("--threads", threads, "worker threads for Monte Carlo")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "table format")->check(CLI::IsMember({"csv", "json"}));

  const std::pair<const char*, const char*> commands[] = {
      {"rearrange", "dump b_*, b^* and d_b tables"},
      {"dalpha", "dump the D(alpha) profile with the lemma bound"},
      {"check-scheme", "certify the axioms and the qualification of a scheme"},
      {"reconstruct", "one reconstruction from simulated data"},
      {"rates", "full rate study over the configured noise levels"},
  };
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ex::exit_code::config_error;
  }

  const auto sub = ex::subcommand_from(app.get_subcommands().front()->get_name());
  try {
    auto config = ex::load_config(config_path);
    if (seed) {
      config.seed = *seed;
    }
    if (threads) {
      config.threads = *threads;
    }
    const auto report = ex::run(*sub, config);
    const auto dir = out_dir.empty() ? config.output_dir : std::filesystem::path(out_dir);
    const auto path =
        ex::write_outputs(report, dir, format == "json" ? ex::Format::json : ex::Format::csv);
    for (const auto& note : report.notes) {
      std::cout << note << '\n';
    }
    std::cout << "status: " << report.status << '\n'
              << "digest: " << report.digest << '\n'
              << "wrote " << path.string() << '\n';
    return report.exit_code;
  } catch (const ex::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return ex::exit_code::config_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
