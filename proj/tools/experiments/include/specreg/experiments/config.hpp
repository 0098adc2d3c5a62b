#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "specreg/index_function.hpp"
#include "specreg/rate_study.hpp"

namespace specreg::experiments {

// Raised for anything wrong with a config file. `field` is a JSON pointer
// ("/noise/deltas/3"); line and column are 1-based and 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string message, std::string field = {}, std::size_t line = 0,
              std::size_t column = 0);
  const std::string& field() const noexcept { return field_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string field_;
  std::size_t line_;
  std::size_t column_;
};

struct ProblemSpec {
  std::string gallery;
  nlohmann::json parameters = nlohmann::json::object();
};

struct IndexSpec {
  std::string family = "power";
  double nu = 1.0;
  double beta = 0.0;
  double scale = 1.0;

  IndexFunction build() const;
  std::string label() const;
};

struct Discretization {
  std::optional<std::size_t> nodes;
  std::optional<double> radius;
};

struct ExperimentConfig {
  ProblemSpec problem;
  std::string scheme = "cutoff";
  IndexSpec index_function;
  std::vector<IndexSpec> qualification;  // check-scheme; defaults to index_function
  NoiseMode mode = NoiseMode::deterministic;
  std::vector<double> deltas;
  std::size_t replications = 200;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::filesystem::path output_dir = ".";
  Discretization discretization;
  std::vector<double> alpha_grid;
  std::optional<double> alpha;  // reconstruct: fixed alpha instead of the a-priori choice
  std::size_t table_points = 64;  // rearrange
  // Canonical form of the parsed file; the digest is computed from it.
  nlohmann::json canonical;
  std::string source_text;
};

ExperimentConfig parse_config(std::string_view text);

// Throws a ConfigError for `pointer`, located in the config's source text.
[[noreturn]] void config_fail(const ExperimentConfig& config, const std::string& pointer,
                              const std::string& what);
ExperimentConfig load_config(const std::filesystem::path& path);

// FNV-1a over the canonical JSON dump with the effective seed folded in.
std::string config_digest(const ExperimentConfig& config);

}  // namespace specreg::experiments
