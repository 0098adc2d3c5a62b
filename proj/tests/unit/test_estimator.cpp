#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "specreg/errors.hpp"
#include "specreg/estimator.hpp"
#include "specreg/illposedness.hpp"
#include "specreg/rearrangement.hpp"

using namespace specreg;

namespace {

MultiplicationOperator harmonic(std::size_t n) {
  const auto space = MeasureSpace::counting(n);
  std::vector<double> b(n);
  for (std::size_t j = 0; j < n; ++j) b[j] = 1.0 / static_cast<double>(j + 1);
  return MultiplicationOperator(Multiplier::tabulated(space, b), space);
}

Multiplier exp_decay() {
  return Multiplier::custom("exp(-s)", [](double s) { return std::exp(-s); }, 1.0);
}

std::vector<Scheme> builtin_schemes() {
  return {spectral_cutoff(), lavrentiev(), tikhonov_wiener(), truncate(lavrentiev()),
          truncate(tikhonov_wiener())};
}

}  // namespace

TEST(Reconstruct, Examples) {
  const auto space = MeasureSpace::counting(3);
  const MultiplicationOperator op(Multiplier::tabulated(space, {1.0, 0.5, 0.01}), space);
  const auto r = reconstruct(spectral_cutoff(), 0.1, op, std::vector<double>{1, 1, 1});
  EXPECT_EQ(r.estimate, (std::vector<double>{1.0, 2.0, 0.0}));
  const MultiplicationOperator ones(Multiplier::tabulated(space, {1.0, 1.0, 1.0}), space);
  const auto l = reconstruct(lavrentiev(), 1.0, ones, std::vector<double>{1, 1, 1});
  EXPECT_EQ(l.estimate, (std::vector<double>{0.5, 0.5, 0.5}));
  EXPECT_THROW(reconstruct(lavrentiev(), 0.0, ones, std::vector<double>{1, 1, 1}),
               PreconditionFailed);
}

TEST(Reconstruct, ExactDataLimit) {
  const auto space = MeasureSpace::interval(0.0, 1.0, 2000);
  const MultiplicationOperator op(Multiplier::pure_power(1.0), space);
  std::vector<double> f(space.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::sqrt(space.nodes()[i]);
  const auto g = op.apply(f);
  for (const auto& scheme : builtin_schemes()) {
    double previous = INFINITY;
    for (int n = 2; n <= 40; n += 2) {
      const double alpha = std::ldexp(1.0, -n);
      const auto rec = reconstruct(scheme, alpha, op, g);
      std::vector<double> diff(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) diff[i] = f[i] - rec.estimate[i];
      const double err = op.norm(diff);
      EXPECT_LE(err, previous * (1 + 1e-9)) << scheme.name();
      previous = err;
    }
    EXPECT_LT(previous, 1e-4) << scheme.name();
  }
}

TEST(Bias, CutoffOnPowers) {
  const auto space = MeasureSpace::interval(0.0, 1.0, 1 << 14);
  const std::vector<double> one(space.size(), 1.0);
  const MultiplicationOperator lin(Multiplier::pure_power(1.0), space);
  EXPECT_NEAR(bias(spectral_cutoff(), 0.25, lin, one), 0.5, 1e-12);
  const MultiplicationOperator quad(Multiplier::pure_power(2.0), space);
  for (double alpha : {0.25, 0.01, 1e-3}) {
    // mu({s^2 <= alpha}) = sqrt(alpha), so the bias is alpha^(1/4).
    const double b = bias(spectral_cutoff(), alpha, quad, one);
    EXPECT_NEAR(b * b, std::sqrt(alpha), space.max_weight()) << alpha;
  }
  EXPECT_NEAR(bias(spectral_cutoff(), 1.5, lin, one), lin.norm(one), 1e-15);
}

TEST(ErrorDecomposition, ExactNodewise) {
  oracle::Gen gen(11);
  const auto space = MeasureSpace::interval(0.0, 1.0, 500);
  const MultiplicationOperator op(Multiplier::pure_power(1.5), space);
  for (const auto& scheme : builtin_schemes()) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> f(space.size()), xi(space.size());
      for (auto& v : f) v = gen.uniform(-1, 1);
      for (auto& v : xi) v = gen.uniform(-2, 2);
      const double alpha = gen.log_uniform(1e-5, 1);
      const double delta = gen.log_uniform(1e-6, 1e-1);
      auto g = op.apply(f);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += delta * xi[i];
      const auto rec = reconstruct(scheme, alpha, op, g);
      const auto parts = decompose_error(scheme, alpha, op, f, xi);
      for (std::size_t i = 0; i < f.size(); ++i) {
        const double lhs = f[i] - rec.estimate[i];
        const double rhs = parts.bias_part[i] - delta * parts.noise_part[i];
        ASSERT_NEAR(lhs, rhs, 1e-12 * std::max({1.0, std::abs(lhs), std::abs(f[i])}))
            << scheme.name();
      }
    }
  }
}

TEST(VarianceIntegral, CutoffOnIdentity) {
  const auto space = MeasureSpace::interval(0.0, 1.0, 1 << 16);
  const MultiplicationOperator op(Multiplier::pure_power(1.0), space);
  const auto v = variance_integral(spectral_cutoff(), 0.1, op);
  EXPECT_FALSE(v.divergent);
  EXPECT_NEAR(v.value, 9.0, space.max_weight() / 0.01 + 1e-6);
  double direct = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const double s = space.nodes()[i];
    if (s > 0.1) direct += space.weights()[i] / (s * s);
  }
  EXPECT_NEAR(v.value, direct, 1e-9 * direct);
}

TEST(VarianceIntegral, LavrentievDivergesOnPowerDecay) {
  const MultiplicationOperator op(Multiplier::power_decay(1.0), MeasureSpace::halfline(16, 4096));
  for (double alpha : {0.5, 0.1, 1e-3}) {
    const auto v = variance_integral(lavrentiev(), alpha, op);
    EXPECT_TRUE(v.divergent) << alpha;
    EXPECT_FALSE(variance_integral(truncate(lavrentiev()), alpha, op).divergent) << alpha;
  }
}

TEST(VarianceIntegral, PlateauDivergesForEveryScheme) {
  const MultiplicationOperator op(Multiplier::plateau_counterexample(),
                                  MeasureSpace::line(4.0, 4096));
  for (const auto& scheme : builtin_schemes()) {
    for (double alpha : {0.9, 0.5, 0.1, 1e-3, 1e-6}) {
      const auto v = variance_integral(scheme, alpha, op);
      EXPECT_TRUE(v.divergent) << scheme.name() << " alpha=" << alpha << ": " << v.diagnosis;
    }
  }
}

TEST(VarianceIntegral, VanishingTailsConverge) {
  const MultiplicationOperator gauss(Multiplier::gaussian_frequency(1, 1),
                                     MeasureSpace::line(4.0, 2048));
  const MultiplicationOperator harmonic_op = harmonic(200);
  for (double alpha : {0.5, 0.01, 1e-4}) {
    EXPECT_FALSE(variance_integral(spectral_cutoff(), alpha, gauss).divergent);
    EXPECT_FALSE(variance_integral(truncate(tikhonov_wiener()), alpha, gauss).divergent);
    EXPECT_FALSE(variance_integral(spectral_cutoff(), alpha, harmonic_op).divergent);
    EXPECT_TRUE(variance_integral(lavrentiev(), alpha, harmonic_op).divergent);
  }
}

// sum w |Phi|^2 <= (C_{-1}^2 / alpha^2) d_b(alpha) for truncated schemes.
TEST(VarianceIntegral, LemmaBoundForTruncatedSchemes) {
  const auto op = harmonic(300);
  for (const auto& scheme : {spectral_cutoff(), truncate(lavrentiev()), truncate(tikhonov_wiener())}) {
    for (double alpha : log_grid(1e-3, 0.9, 25)) {
      const double v = variance_integral(scheme, alpha, op).base_value;
      const double d = distribution_function(op.values(), op.weights(), alpha);
      EXPECT_LE(v, scheme.c_minus1() * scheme.c_minus1() / (alpha * alpha) * d * (1 + 1e-12));
    }
  }
}

TEST(EffectiveIllposedness, HarmonicSequence) {
  const auto op = harmonic(200);
  EXPECT_DOUBLE_EQ(effective_illposedness(op, 0.34), std::sqrt(5.0));
  // Superlevel sets are strict: alpha = b_2 = 1/2 leaves only j = 1.
  EXPECT_DOUBLE_EQ(effective_illposedness(op, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(effective_illposedness(op, 0.25), std::sqrt(1.0 + 4.0 + 9.0));
  const auto grid = log_grid(1e-3, 2.0, 120);
  const auto p = effective_illposedness(op, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_NEAR(p.D_values[i], oracle::harmonic_D(grid[i], 200), 1e-12 * p.D_values[i] + 1e-300);
    EXPECT_EQ(p.D_values[i], p.D_domain[i]);
    EXPECT_LE(p.D_values[i], p.upper_bounds[i] * (1 + 1e-12));
    if (i > 0) {
      EXPECT_LE(p.D_values[i], p.D_values[i - 1]);
    }
  }
  EXPECT_EQ(p.D_values.back(), 0.0);
}

TEST(EffectiveIllposedness, Exponential) {
  const auto space = MeasureSpace::halfline(20.0, 1 << 16);
  const MultiplicationOperator op(exp_decay(), space);
  const std::vector<double> alphas{0.01, 0.1, 0.5};
  const auto p = effective_illposedness(op, alphas);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double a = alphas[i];
    const double exact = std::sqrt((1.0 / (a * a) - 1.0) / 2.0);
    EXPECT_NEAR(p.D_values[i], exact, 1e-4 * exact) << a;
    // Domain side: midpoint sum, exact up to one cell at the level boundary.
    EXPECT_NEAR(p.D_domain[i] * p.D_domain[i], exact * exact,
                2.0 * space.max_weight() / (a * a) + 1e-6 * exact * exact);
    EXPECT_LE(p.D_values[i], p.upper_bounds[i]);
  }
  EXPECT_EQ(effective_illposedness(op, 1.0), 0.0);
  EXPECT_EQ(effective_illposedness(op, 3.0), 0.0);
}

TEST(EffectiveIllposedness, UndefinedForPlateau) {
  const MultiplicationOperator op(Multiplier::plateau_counterexample(), MeasureSpace::line(4, 100));
  EXPECT_THROW(effective_illposedness(op, std::vector<double>{0.1, 0.2}), RearrangementUndefined);
}

TEST(IllposednessProfile, LogLinearInterpolation) {
  const auto grid = log_grid(1e-4, 1.0, 9);
  std::vector<double> d;
  for (double a : grid) d.push_back(1.0 / a);
  const auto p = IllposednessProfile::from_values(grid, d);
  for (double a : {3e-5, 2e-4, 0.0123, 0.5, 2.0}) {
    EXPECT_NEAR(p.at(a), 1.0 / a, 1e-9 / a);
  }
}

TEST(AdversarialNoise, AttainsSupOfFilter) {
  const auto op = harmonic(100);
  std::vector<double> f(100);
  for (std::size_t j = 0; j < 100; ++j) f[j] = 1.0 / std::pow(j + 1.0, 2);
  for (const auto& scheme : builtin_schemes()) {
    const double alpha = 0.037;
    const auto noise = adversarial_noise(scheme, alpha, op, f);
    EXPECT_NEAR(op.norm(noise.values), 1.0, 1e-15);
    double sup = 0.0;
    for (double b : op.values()) sup = std::max(sup, std::abs(scheme.phi(alpha, b)));
    const double delta = 1e-3;
    const auto budget = deterministic_error(scheme, alpha, op, f, delta, noise);
    EXPECT_NEAR(budget.noise_term, delta * sup, 1e-12);
    // Triangle inequality and, at the peak node, constructive addition.
    EXPECT_LE(budget.total, budget.bias + budget.noise_term + 1e-15);
    EXPECT_GE(budget.total, budget.noise_term - 1e-15);
  }
}

TEST(MonteCarlo, NoiseFreeIsBias) {
  const auto op = harmonic(50);
  std::vector<double> f(50, 0.1);
  const auto mc = monte_carlo_rms(spectral_cutoff(), 0.05, op, f, 0.0, WhiteNoiseSampler(1, 0), 10);
  EXPECT_DOUBLE_EQ(mc.rms, bias(spectral_cutoff(), 0.05, op, f));
  EXPECT_EQ(mc.stderr, 0.0);
  EXPECT_THROW(monte_carlo_rms(spectral_cutoff(), 0.05, op, f, 0.1, WhiteNoiseSampler(1, 0), 0),
               PreconditionFailed);
}

TEST(MonteCarlo, SingleReplicationHasNoStandardError) {
  const auto op = harmonic(50);
  std::vector<double> f(50, 0.1);
  const auto mc = monte_carlo_rms(spectral_cutoff(), 0.05, op, f, 0.1, WhiteNoiseSampler(1, 0), 1);
  EXPECT_GT(mc.rms, 0.0);
  EXPECT_TRUE(std::isnan(mc.stderr));
}

TEST(MonteCarlo, DivergentProfileRejected) {
  const auto op = harmonic(50);
  std::vector<double> f(50, 0.1);
  EXPECT_THROW(monte_carlo_rms(lavrentiev(), 0.05, op, f, 0.1, WhiteNoiseSampler(1, 0), 10),
               DivergentProfile);
}

TEST(MonteCarlo, ThreadCountDoesNotChangeResult) {
  const auto op = harmonic(200);
  std::vector<double> f(200);
  for (std::size_t j = 0; j < 200; ++j) f[j] = 1.0 / std::pow(j + 1.0, 2);
  const WhiteNoiseSampler s(42, 1000);
  const auto a = monte_carlo_rms(spectral_cutoff(), 0.02, op, f, 1e-3, s, 64, 1);
  const auto b = monte_carlo_rms(spectral_cutoff(), 0.02, op, f, 1e-3, s, 64, 5);
  EXPECT_EQ(a.rms, b.rms);
  EXPECT_EQ(a.stderr, b.stderr);
  EXPECT_EQ(a.budget.cross_mean, b.budget.cross_mean);
}

TEST(MonteCarlo, BiasVarianceSplitAndCrossTerm) {
  const std::size_t n = 200;
  const auto op = harmonic(n);
  std::vector<double> f(n);
  double norm = 0.0;
  for (std::size_t j = 0; j < n; ++j) norm += std::pow(1.0 / (j + 1.0), 2);
  for (std::size_t j = 0; j < n; ++j) f[j] = std::pow(1.0 / (j + 1.0), 2) / std::sqrt(norm);
  const double delta = 1e-3;
  const double alpha = 0.03;
  const auto mc = monte_carlo_rms(spectral_cutoff(), alpha, op, f, delta, WhiteNoiseSampler(3, 0),
                                  400, 4);
  const double expected_sq = mc.budget.bias * mc.budget.bias + mc.budget.expected_noise_term;
  EXPECT_NEAR(mc.rms * mc.rms, expected_sq, 4.0 * 2.0 * mc.rms * mc.stderr);
  EXPECT_LE(std::abs(mc.budget.cross_mean), 3.0 * mc.budget.cross_stderr);
  // Rademacher noise has the same second moments.
  const auto rad = monte_carlo_rms(spectral_cutoff(), alpha, op, f, delta,
                                   WhiteNoiseSampler(3, 0, NoiseDistribution::rademacher), 400, 4);
  // With cut-off the cross term vanishes identically and xi^2 = 1, so every
  // replication gives the same error.
  EXPECT_NEAR(rad.rms * rad.rms, expected_sq, 4.0 * 2.0 * rad.rms * rad.stderr + 1e-12 * expected_sq);
}
