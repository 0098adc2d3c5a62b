#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "specreg/experiments/config.hpp"
#include "specreg/experiments/table.hpp"
#include "specreg/operator.hpp"

namespace specreg::experiments {

enum class Subcommand { rearrange, dalpha, check_scheme, reconstruct, rates };
enum class Format { csv, json };

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config_error = 2;
inline constexpr int violation = 3;
inline constexpr int divergent = 4;
}  // namespace exit_code

std::string to_string(Subcommand sub);
std::optional<Subcommand> subcommand_from(std::string_view name);

struct ExperimentReport {
  Subcommand subcommand = Subcommand::rates;
  std::string status = "ok";  // ok | violation | divergent
  int exit_code = exit_code::ok;
  std::vector<std::string> notes;  // one-line human summaries
  Table table;
  std::optional<double> slope;
  std::optional<double> theoretical_slope;
  std::size_t violations = 0;
  std::string digest;
  std::uint64_t seed = 0;
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json summary() const;
};

MultiplicationOperator build_problem(const ExperimentConfig& config);

// Analysis failures (divergence, undefined rearrangements) come back as
// structured rows with a nonzero exit code; only config problems throw.
ExperimentReport run(Subcommand sub, const ExperimentConfig& config);
inline ExperimentReport run(const ExperimentConfig& config) {
  return run(Subcommand::rates, config);
}

// Writes <subcommand>.csv or <subcommand>.json plus summary.json.
std::filesystem::path write_outputs(const ExperimentReport& report,
                                    const std::filesystem::path& dir, Format format);

}  // namespace specreg::experiments
