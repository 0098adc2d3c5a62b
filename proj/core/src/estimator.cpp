#include "specreg/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#include "specreg/errors.hpp"

namespace specreg {

namespace {

constexpr std::size_t kMaxDoublings = 8;

double squared_filter_sum(const Scheme& scheme, double alpha, std::span<const double> b,
                          std::span<const double> w) {
  double sum = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double phi = scheme.phi(alpha, b[i]);
    sum += w[i] * phi * phi;
  }
  return sum;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw PreconditionFailed("regularization parameter must be positive and finite");
  }
}

void check_length(const MultiplicationOperator& op, std::span<const double> v) {
  if (v.size() != op.size()) {
    throw PreconditionFailed("vector length does not match the discretization");
  }
}

}  // namespace

Reconstruction reconstruct(const Scheme& scheme, double alpha, const MultiplicationOperator& op,
                           std::span<const double> g_delta) {
  check_alpha(alpha);
  check_length(op, g_delta);
  const auto b = op.values();
  std::vector<double> estimate(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    estimate[i] = scheme.phi(alpha, b[i]) * g_delta[i];
  }
  return Reconstruction{alpha, std::move(estimate), scheme.name()};
}

double bias(const Scheme& scheme, double alpha, const MultiplicationOperator& op,
            std::span<const double> f) {
  check_alpha(alpha);
  check_length(op, f);
  const auto b = op.values();
  const auto w = op.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double r = scheme.residual(alpha, b[i]) * f[i];
    sum += w[i] * r * r;
  }
  return std::sqrt(sum);
}

ErrorDecomposition decompose_error(const Scheme& scheme, double alpha,
                                   const MultiplicationOperator& op, std::span<const double> f,
                                   std::span<const double> xi) {
  check_alpha(alpha);
  check_length(op, f);
  check_length(op, xi);
  const auto b = op.values();
  ErrorDecomposition out{std::vector<double>(b.size()), std::vector<double>(b.size())};
  for (std::size_t i = 0; i < b.size(); ++i) {
    out.bias_part[i] = scheme.residual(alpha, b[i]) * f[i];
    out.noise_part[i] = scheme.phi(alpha, b[i]) * xi[i];
  }
  return out;
}

VarianceResult variance_integral(const Scheme& scheme, double alpha,
                                 const MultiplicationOperator& op) {
  check_alpha(alpha);
  VarianceResult result;
  result.base_value = squared_filter_sum(scheme, alpha, op.values(), op.weights());
  result.value = result.base_value;
  result.nested_values.push_back(result.value);
  const auto& space = op.space();
  if (!space.is_infinite()) {
    result.diagnosis = "finite measure";
    return result;
  }
  if (!std::isfinite(result.base_value)) {
    result.divergent = true;
    result.diagnosis = "integrand not finite on the base truncation";
    return result;
  }

  double previous_density = std::numeric_limits<double>::quiet_NaN();
  int proportional_streak = 0;
  for (std::size_t k = 1; k <= kMaxDoublings; ++k) {
    std::optional<MeasureSpace> shell;
    try {
      shell.emplace(space.shell(k));
    } catch (const PreconditionFailed&) {
      result.tail_estimate = std::numeric_limits<double>::quiet_NaN();
      result.diagnosis = "discretization cannot be extended; tail unknown";
      return result;
    }
    const auto b = op.multiplier().values_on(*shell);
    const double added = squared_filter_sum(scheme, alpha, b, shell->weights());
    const double before = result.value;
    result.value += added;
    result.tail_estimate = added;
    result.nested_values.push_back(result.value);

    if (added == 0.0 || added <= 1e-12 * before) {
      std::ostringstream os;
      os << "stabilized after " << k << " doubling(s)";
      result.diagnosis = os.str();
      return result;
    }
    const double density = added / shell->measure();
    if (k >= 2) {
      const double ratio = density / previous_density;
      if (ratio >= 0.5 && ratio <= 2.0 && added > 0.01 * before) {
        ++proportional_streak;
      } else {
        proportional_streak = 0;
      }
      if (proportional_streak >= 2) {
        std::ostringstream os;
        os << "grows proportionally to the truncated measure (integrand density " << density
           << " per unit measure at radius " << shell->truncation_radius() << ")";
        result.divergent = true;
        result.diagnosis = os.str();
        return result;
      }
      if (ratio < 0.5 && added <= 1e-6 * before) {
        result.diagnosis = "tail decays; truncated at relative increment below 1e-6";
        return result;
      }
    }
    previous_density = density;
  }
  const std::size_t n = result.nested_values.size();
  const double last_ratio = (result.nested_values[n - 1] - result.nested_values[n - 2]) /
                            (result.nested_values[n - 2] - result.nested_values[n - 3]);
  // Per-measure density of the last shell over the one before: the shell
  // measure doubles, so an increment ratio >= 1 means non-decaying density.
  if (last_ratio >= 1.0) {
    result.divergent = true;
    result.diagnosis = "did not stabilize after 8 doublings of the truncation";
  } else {
    result.diagnosis = "slowly decaying tail; last shell kept as tail estimate";
  }
  return result;
}

DeterministicNoise adversarial_noise(const Scheme& scheme, double alpha,
                                     const MultiplicationOperator& op, std::span<const double> f) {
  check_alpha(alpha);
  check_length(op, f);
  const auto b = op.values();
  const auto w = op.weights();
  std::size_t peak = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double phi = std::abs(scheme.phi(alpha, b[i]));
    if (phi > best && w[i] > 0.0) {
      best = phi;
      peak = i;
    }
  }
  std::vector<double> direction(b.size(), 0.0);
  // The error at the peak is R f - delta Phi xi; a noise sign opposite to
  // R f Phi makes both terms add.
  const double rf = scheme.residual(alpha, b[peak]) * f[peak] * scheme.phi(alpha, b[peak]);
  direction[peak] = rf > 0.0 ? -1.0 : 1.0;
  return worst_case_deterministic(direction, op.space());
}

ErrorBudget deterministic_error(const Scheme& scheme, double alpha,
                                const MultiplicationOperator& op, std::span<const double> f,
                                double delta, const DeterministicNoise& noise) {
  check_length(op, f);
  check_length(op, noise.values);
  const auto g = op.apply(f);
  std::vector<double> g_delta(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g_delta[i] = g[i] + delta * noise.values[i];
  }
  const auto rec = reconstruct(scheme, alpha, op, g_delta);
  std::vector<double> err(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    err[i] = f[i] - rec.estimate[i];
  }
  const auto parts = decompose_error(scheme, alpha, op, f, noise.values);
  ErrorBudget budget;
  budget.bias = op.norm(parts.bias_part);
  budget.noise_term = delta * op.norm(parts.noise_part);
  budget.total = op.norm(err);
  return budget;
}

MonteCarloResult monte_carlo_rms(const Scheme& scheme, double alpha,
                                 const MultiplicationOperator& op, std::span<const double> f,
                                 double delta, const WhiteNoiseSampler& sampler,
                                 std::size_t n_reps, std::size_t threads) {
  check_alpha(alpha);
  check_length(op, f);
  if (n_reps < 1) {
    throw PreconditionFailed("Monte Carlo needs at least one replication");
  }
  if (!(delta >= 0.0)) {
    throw PreconditionFailed("noise level must be nonnegative");
  }
  const auto variance = variance_integral(scheme, alpha, op);
  if (variance.divergent) {
    throw DivergentProfile("variance integral diverges: " + variance.diagnosis);
  }

  const auto g = op.apply(f);
  const auto w = op.weights();
  const auto b = op.values();
  std::vector<double> residual_f(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    residual_f[i] = scheme.residual(alpha, b[i]) * f[i];
  }
  if (delta == 0.0) {
    MonteCarloResult exact;
    exact.replications = n_reps;
    exact.rms = op.norm(residual_f);
    exact.budget.bias = exact.rms;
    exact.budget.total = exact.rms;
    return exact;
  }

  std::vector<double> sq_error(n_reps);
  std::vector<double> cross(n_reps);
  std::vector<double> noise_sq(n_reps);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    std::vector<double> g_delta(g.size());
    for (std::size_t r = begin; r < end; ++r) {
      const auto xi = sampler.with_stream(sampler.stream_id() + r).sample(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) {
        g_delta[i] = g[i] + delta * xi[i];
      }
      const auto rec = reconstruct(scheme, alpha, op, g_delta);
      double e2 = 0.0;
      double c = 0.0;
      double n2 = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double diff = f[i] - rec.estimate[i];
        const double noise = scheme.phi(alpha, b[i]) * xi[i];
        e2 += w[i] * diff * diff;
        c += w[i] * residual_f[i] * noise;
        n2 += w[i] * noise * noise;
      }
      sq_error[r] = e2;
      cross[r] = 2.0 * delta * c;
      noise_sq[r] = delta * delta * n2;
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, n_reps);
  if (workers == 1) {
    run_range(0, n_reps);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
      const std::size_t begin = n_reps * t / workers;
      const std::size_t end = n_reps * (t + 1) / workers;
      pool.emplace_back(run_range, begin, end);
    }
  }

  auto mean_and_stderr = [n_reps](const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) {
      mean += x;
    }
    mean /= static_cast<double>(n_reps);
    double ss = 0.0;
    for (double x : xs) {
      ss += (x - mean) * (x - mean);
    }
    // One replication has no spread estimate.
    const double sd = n_reps > 1 ? std::sqrt(ss / static_cast<double>(n_reps - 1))
                                 : std::numeric_limits<double>::quiet_NaN();
    return std::pair{mean, sd / std::sqrt(static_cast<double>(n_reps))};
  };

  MonteCarloResult result;
  result.replications = n_reps;
  const auto [mse, mse_stderr] = mean_and_stderr(sq_error);
  result.rms = std::sqrt(mse);
  result.stderr = result.rms > 0.0 ? mse_stderr / (2.0 * result.rms) : 0.0;
  result.budget.bias = op.norm(residual_f);
  result.budget.noise_term = mean_and_stderr(noise_sq).first;
  result.budget.expected_noise_term = delta * delta * variance.base_value;
  const auto [cross_mean, cross_stderr] = mean_and_stderr(cross);
  result.budget.cross_mean = cross_mean;
  result.budget.cross_stderr = cross_stderr;
  result.budget.total = result.rms;
  return result;
}

}  // namespace specreg
