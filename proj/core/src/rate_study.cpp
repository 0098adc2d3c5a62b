#include "specreg/rate_study.hpp"

#include <algorithm>
#include <cmath>

#include "specreg/errors.hpp"
#include "specreg/estimator.hpp"
#include "specreg/noise.hpp"

namespace specreg {

namespace {

constexpr std::size_t kProfilePoints = 256;

bool log_spaced(std::span<const double> deltas) {
  if (deltas.size() < 3) {
    return true;
  }
  const double step = std::log(deltas[1] / deltas[0]);
  return std::all_of(deltas.begin() + 1, deltas.end(), [&, i = std::size_t{1}](double) mutable {
    const double s = std::log(deltas[i] / deltas[i - 1]);
    ++i;
    return std::abs(s - step) <= 1e-6 * std::abs(step);
  });
}

}  // namespace

std::string to_string(NoiseMode mode) {
  return mode == NoiseMode::deterministic ? "deterministic" : "white";
}

RateProblem source_problem(MultiplicationOperator op, const IndexFunction& phi) {
  const auto b = op.values();
  const double norm_b = op.norm(b);
  if (!(norm_b > 0.0)) {
    throw PreconditionFailed("multiplier vanishes on the discretization");
  }
  std::vector<double> f(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    f[i] = phi(b[i]) * b[i] / norm_b;
  }
  return RateProblem{std::move(op), std::move(f)};
}

std::optional<double> fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw PreconditionFailed("slope fit needs matching lengths");
  }
  const std::size_t n = x.size();
  const auto trim = static_cast<std::size_t>(std::lround(0.1 * static_cast<double>(n)));
  if (n < 2 * trim + 2) {
    return std::nullopt;
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  for (std::size_t i = trim; i < n - trim; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      return std::nullopt;
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  const double denom = static_cast<double>(m) * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0)) {
    return std::nullopt;
  }
  return (static_cast<double>(m) * sxy - sx * sy) / denom;
}

RateStudyReport evaluate_rates(const RateProblem& problem, const Scheme& scheme,
                               const IndexFunction& phi, const RateStudyConfig& config) {
  const auto& op = problem.op;
  const auto& f = problem.solution;
  if (f.size() != op.size()) {
    throw PreconditionFailed("solution length does not match the discretization");
  }
  for (double d : config.deltas) {
    if (!(d > 0.0)) {
      throw PreconditionFailed("noise levels must be positive");
    }
  }

  RateStudyReport report;
  report.scheme = scheme.name();
  report.index_function = phi.name();
  report.mode = config.mode;

  const auto certificate = certify_qualification(scheme, phi, default_probe_grid(op.sup_bound()));
  report.c_phi = std::max(certificate.c_phi, certificate.c_phi_refined);

  AlphaBracket bracket = config.bracket;
  bracket.hi = std::min(bracket.hi, op.sup_bound());

  std::optional<IllposednessProfile> profile;
  if (config.mode == NoiseMode::white) {
    const auto grid = config.alpha_grid.empty()
                          ? log_grid(bracket.lo, op.sup_bound(), kProfilePoints)
                          : config.alpha_grid;
    profile = effective_illposedness(op, grid);
  }

  std::vector<double> phi_at_choice;
  for (std::size_t k = 0; k < config.deltas.size(); ++k) {
    RateRow row;
    row.delta = config.deltas[k];
    if (config.mode == NoiseMode::deterministic) {
      row.alpha_star = choose_alpha_deterministic(phi, row.delta, bracket);
      const auto noise = adversarial_noise(scheme, row.alpha_star, op, f);
      const auto budget = deterministic_error(scheme, row.alpha_star, op, f, row.delta, noise);
      row.error = budget.total;
      row.bias = budget.bias;
      row.variance_term = budget.noise_term;
      row.bound = deterministic_error_bound_at_choice(report.c_phi, scheme.c_minus1(), phi,
                                                      row.alpha_star);
      row.violated = row.error > row.bound * (1.0 + 1e-12);
    } else {
      row.alpha_star = choose_alpha_white(phi, *profile, row.delta, bracket);
      const WhiteNoiseSampler sampler(config.seed, static_cast<std::uint64_t>(k) << 32);
      const auto mc = monte_carlo_rms(scheme, row.alpha_star, op, f, row.delta, sampler,
                                      config.replications, config.threads);
      row.error = mc.rms;
      row.stderr = mc.stderr;
      row.bias = mc.budget.bias;
      row.variance_term = mc.budget.expected_noise_term;
      row.cross_mean = mc.budget.cross_mean;
      row.cross_stderr = mc.budget.cross_stderr;
      row.bound = white_error_bound_at_choice(report.c_phi, scheme.c_0(), phi, row.alpha_star);
      const double slack = std::isnan(row.stderr) ? 0.0 : 2.0 * row.stderr;
      row.violated = row.error > row.bound + slack;
    }
    report.violations += row.violated ? 1 : 0;
    phi_at_choice.push_back(phi(row.alpha_star));
    report.rows.push_back(row);
  }

  std::vector<double> errors;
  for (const auto& row : report.rows) {
    errors.push_back(row.error);
  }
  report.slope = fit_slope(config.deltas, errors);
  if (config.mode == NoiseMode::deterministic && phi.family() == IndexFunction::Family::power) {
    const double nu = phi.exponent();
    report.theoretical_slope = nu / (1.0 + nu);
  } else {
    report.theoretical_slope = fit_slope(config.deltas, phi_at_choice);
  }
  return report;
}

RateStudyReport rate_study(const RateProblem& problem, const Scheme& scheme,
                           const IndexFunction& phi, const RateStudyConfig& config) {
  if (config.deltas.size() < 4) {
    throw PreconditionFailed("a rate study needs at least four noise levels");
  }
  if (!log_spaced(config.deltas)) {
    throw PreconditionFailed("noise levels must be log-spaced");
  }
  return evaluate_rates(problem, scheme, phi, config);
}

}  // namespace specreg
