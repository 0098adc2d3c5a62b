#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "specreg/noise.hpp"
#include "specreg/operator.hpp"
#include "specreg/scheme.hpp"

namespace specreg {

// f^delta_alpha = Phi_alpha(b) g^delta, nodewise.
struct Reconstruction {
  double alpha;
  std::vector<double> estimate;
  std::string scheme;
};

Reconstruction reconstruct(const Scheme& scheme, double alpha, const MultiplicationOperator& op,
                           std::span<const double> g_delta);

// ||R_alpha(b) f||, the profile function at alpha.
double bias(const Scheme& scheme, double alpha, const MultiplicationOperator& op,
            std::span<const double> f);

// Node vectors R_alpha(b) f and Phi_alpha(b) xi of the error decomposition
// f - f^delta_alpha = R_alpha(b) f - delta Phi_alpha(b) xi.
struct ErrorDecomposition {
  std::vector<double> bias_part;
  std::vector<double> noise_part;
};

ErrorDecomposition decompose_error(const Scheme& scheme, double alpha,
                                   const MultiplicationOperator& op, std::span<const double> f,
                                   std::span<const double> xi);

struct VarianceResult {
  bool divergent = false;
  // Sum_i w_i Phi_alpha(b_i)^2 on the operator's own discretization.
  double base_value = 0.0;
  // Value at the largest truncation evaluated.
  double value = 0.0;
  // Contribution of the last added shell (0 when it vanished exactly); an
  // estimate of what lies beyond the final truncation.
  double tail_estimate = 0.0;
  std::vector<double> nested_values;
  std::string diagnosis;
};

// int |Phi_alpha(b)|^2 dmu. On infinite spaces the truncation is doubled
// repeatedly; the integral is declared divergent when two consecutive
// doublings each add more than 1% with per-measure growth that does not
// decay, or when it has not stabilized after eight doublings.
VarianceResult variance_integral(const Scheme& scheme, double alpha,
                                 const MultiplicationOperator& op);

// Unit-norm deterministic noise concentrated on the node where
// |Phi_alpha(b)| is largest, signed so that the noise adds to the bias
// there. Attains delta * sup |Phi_alpha(b)| for the noise term.
DeterministicNoise adversarial_noise(const Scheme& scheme, double alpha,
                                     const MultiplicationOperator& op, std::span<const double> f);

struct ErrorBudget {
  double bias = 0.0;
  // Deterministic: delta ||Phi_alpha(b) xi||. White: mean of
  // delta^2 ||Phi_alpha(b) xi||^2 over replications.
  double noise_term = 0.0;
  // White only: delta^2 int |Phi_alpha(b)|^2 dmu, the expectation of noise_term.
  double expected_noise_term = 0.0;
  // White only: mean and standard error of 2 delta <R_alpha(b) f, Phi_alpha(b) xi>.
  double cross_mean = 0.0;
  double cross_stderr = 0.0;
  double total = 0.0;
};

// ||f - f^delta_alpha|| for one deterministic noise vector.
ErrorBudget deterministic_error(const Scheme& scheme, double alpha,
                                const MultiplicationOperator& op, std::span<const double> f,
                                double delta, const DeterministicNoise& noise);

struct MonteCarloResult {
  double rms = 0.0;
  double stderr = 0.0;  // NaN for a single replication
  ErrorBudget budget;
  std::size_t replications = 0;
};

// sqrt(E ||f - f^delta_alpha||^2) over n_reps replications using streams
// sampler.stream_id() + r. Work is split over `threads`; the result does not
// depend on the thread count. Throws DivergentProfile when the variance
// integral diverges.
MonteCarloResult monte_carlo_rms(const Scheme& scheme, double alpha,
                                 const MultiplicationOperator& op, std::span<const double> f,
                                 double delta, const WhiteNoiseSampler& sampler,
                                 std::size_t n_reps, std::size_t threads = 1);

}  // namespace specreg
