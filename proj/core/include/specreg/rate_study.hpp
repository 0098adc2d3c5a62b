#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specreg/illposedness.hpp"
#include "specreg/index_function.hpp"
#include "specreg/operator.hpp"
#include "specreg/parameter_choice.hpp"
#include "specreg/scheme.hpp"

namespace specreg {

enum class NoiseMode { deterministic, white };

std::string to_string(NoiseMode mode);

// The operator together with a true solution f.
struct RateProblem {
  MultiplicationOperator op;
  std::vector<double> solution;
};

// f = phi(b) v with v proportional to b and ||v|| = 1.
RateProblem source_problem(MultiplicationOperator op, const IndexFunction& phi);

struct RateStudyConfig {
  NoiseMode mode = NoiseMode::deterministic;
  std::vector<double> deltas;
  std::size_t replications = 200;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  AlphaBracket bracket;
  // Grid on which D(alpha) is tabulated in white mode.
  std::vector<double> alpha_grid;
};

struct RateRow {
  double delta = 0.0;
  double alpha_star = 0.0;
  double error = 0.0;
  double stderr = 0.0;
  double bias = 0.0;
  // Deterministic: delta ||Phi(b) xi||. White: delta^2 int |Phi(b)|^2 dmu.
  double variance_term = 0.0;
  double bound = 0.0;
  bool violated = false;
  // White only.
  double cross_mean = 0.0;
  double cross_stderr = 0.0;
};

struct RateStudyReport {
  std::string scheme;
  std::string index_function;
  NoiseMode mode = NoiseMode::deterministic;
  double c_phi = 0.0;
  std::vector<RateRow> rows;
  std::optional<double> slope;
  std::optional<double> theoretical_slope;
  std::size_t violations = 0;
};

// Least squares slope of log y against log x over the middle 80% of the
// points (round(0.1 n) dropped at each end). Empty with fewer than two
// points left.
std::optional<double> fit_slope(std::span<const double> x, std::span<const double> y);

// Runs the study for any number of deltas; the slopes stay empty when there
// are too few points. A row is violated when the error exceeds the bound
// (white mode: by more than two standard errors).
RateStudyReport evaluate_rates(const RateProblem& problem, const Scheme& scheme,
                               const IndexFunction& phi, const RateStudyConfig& config);

// evaluate_rates with at least four log-spaced noise levels required.
RateStudyReport rate_study(const RateProblem& problem, const Scheme& scheme,
                           const IndexFunction& phi, const RateStudyConfig& config);

}  // namespace specreg
