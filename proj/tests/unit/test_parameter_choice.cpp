#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "specreg/errors.hpp"
#include "specreg/illposedness.hpp"
#include "specreg/parameter_choice.hpp"
#include "specreg/rate_study.hpp"

using namespace specreg;

namespace {

MultiplicationOperator harmonic(std::size_t n) {
  const auto space = MeasureSpace::counting(n);
  std::vector<double> b(n);
  for (std::size_t j = 0; j < n; ++j) b[j] = 1.0 / static_cast<double>(j + 1);
  return MultiplicationOperator(Multiplier::tabulated(space, b), space);
}

IllposednessProfile inverse_alpha_profile() {
  const auto grid = log_grid(1e-12, 1.0, 50);
  std::vector<double> d;
  for (double a : grid) d.push_back(1.0 / a);
  return IllposednessProfile::from_values(grid, d);
}

std::vector<double> deltas(double hi_exp, double lo_exp, std::size_t n) {
  return log_grid(std::pow(10.0, lo_exp), std::pow(10.0, hi_exp), n);
}

}  // namespace

TEST(DeterministicChoice, PowerFunctions) {
  EXPECT_NEAR(choose_alpha_deterministic(IndexFunction::power(1.0), 1e-4), 1e-2, 1e-12);
  EXPECT_NEAR(choose_alpha_deterministic(IndexFunction::power(2.0), 8e-3), 0.2, 1e-10);
}

TEST(DeterministicChoice, TabulatedSquareRoot) {
  const auto t = log_grid(1e-10, 1.0, 400);
  std::vector<double> v;
  for (double x : t) v.push_back(std::sqrt(x));
  const auto phi = IndexFunction::table(t, v);
  EXPECT_NEAR(choose_alpha_deterministic(phi, 1e-3), std::pow(1e-3, 2.0 / 3.0), 1e-10);
}

TEST(DeterministicChoice, RelativeToleranceAcrossScales) {
  oracle::Gen gen(17);
  for (int k = 0; k < 50; ++k) {
    const double nu = gen.uniform(0.2, 4.0);
    const double target = gen.log_uniform(1e-4, 0.9);
    const double delta = target * std::pow(target, nu);
    const double a = choose_alpha_deterministic(IndexFunction::power(nu), delta);
    EXPECT_NEAR(a, target, 2e-10 * target);
  }
}

TEST(DeterministicChoice, BracketGuard) {
  EXPECT_THROW(choose_alpha_deterministic(IndexFunction::power(1.0), 5.0), BracketingFailed);
  EXPECT_THROW(choose_alpha_deterministic(IndexFunction::power(1.0), 0.0), PreconditionFailed);
}

TEST(WhiteChoice, InverseAlphaProfile) {
  for (double delta : {1e-8, 1e-4, 1e-2}) {
    EXPECT_NEAR(choose_alpha_white(IndexFunction::power(1.0), inverse_alpha_profile(), delta),
                std::sqrt(delta), 1e-9 * std::sqrt(delta));
  }
}

// alpha* ~ (delta / sqrt 3)^(2/5) from D(alpha) ~ alpha^(-3/2) / sqrt 3, and
// bisection on the exact discrete D as the reference.
TEST(WhiteChoice, HarmonicSequence) {
  const auto op = harmonic(5000);
  const auto profile = effective_illposedness(op, log_grid(1e-4, 1.0, 2000));
  const double delta = 1e-5;
  const double a = choose_alpha_white(IndexFunction::power(1.0), profile, delta);
  EXPECT_NEAR(a, std::pow(delta / std::sqrt(3.0), 0.4), 0.02 * a);
  double lo = 1e-4, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    (mid / oracle::harmonic_D(mid, 5000) > delta ? hi : lo) = mid;
  }
  EXPECT_NEAR(a, lo, 0.01 * lo);
}

TEST(WhiteChoice, Guards) {
  EXPECT_THROW(choose_alpha_white(IndexFunction::power(1.0), inverse_alpha_profile(), 10.0),
               BracketingFailed);
  auto divergent = inverse_alpha_profile();
  divergent.finite = false;
  EXPECT_THROW(choose_alpha_white(IndexFunction::power(1.0), divergent, 1e-3), DivergentProfile);
}

TEST(Bounds, Deterministic) {
  const auto phi = IndexFunction::power(1.0);
  EXPECT_NEAR(deterministic_error_bound(1, 1, phi, 1e-4, 1e-2), 0.02, 1e-15);
  EXPECT_NEAR(deterministic_error_bound_at_choice(1, 1, phi, 1e-2), 0.02, 1e-15);
  EXPECT_GT(deterministic_error_bound(1, 1, phi, 1e-4, 2e-2),
            deterministic_error_bound(1, 1, phi, 1e-4, 1e-2));
  EXPECT_DOUBLE_EQ(deterministic_error_bound(1.3, 1, phi, 0.0, 0.2), 1.3 * 0.2);
}

TEST(Bounds, White) {
  const auto phi = IndexFunction::power(1.0);
  const auto profile = inverse_alpha_profile();
  EXPECT_NEAR(white_error_bound(1, 1, phi, profile, 1e-4, 1e-2), std::sqrt(5e-4), 1e-12);
  EXPECT_NEAR(white_error_bound(1.5, 1, phi, profile, 0.0, 0.3), 1.5 * 0.3, 1e-15);
  const double k = 2.0;
  const double delta = 1e-6;
  const double a = choose_alpha_white(phi, profile, delta);
  EXPECT_NEAR(white_error_bound(k, k - 1.0, phi, profile, delta, a),
              white_error_bound_at_choice(k, k - 1.0, phi, a), 1e-9 * a);
  EXPECT_NEAR(white_error_bound_at_choice(k, k - 1.0, phi, a), std::sqrt(2.0) * k * a, 1e-15);
}

TEST(FitSlope, TrimsEndsAndRecoversPowerLaw) {
  const auto x = log_grid(1e-6, 1e-2, 10);
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, 0.4));
  y.front() *= 100.0;  // endpoint transients are dropped
  y.back() *= 0.01;
  EXPECT_NEAR(*fit_slope(x, y), 0.4, 1e-12);
  EXPECT_FALSE(fit_slope(std::vector<double>{1e-3}, std::vector<double>{1.0}).has_value());
}

TEST(RateStudy, DeterministicSquareRootRate) {
  const auto phi = IndexFunction::power(1.0);
  const auto problem = source_problem(harmonic(4000), phi);
  RateStudyConfig cfg;
  cfg.deltas = deltas(-2, -6, 9);
  const auto report = rate_study(problem, spectral_cutoff(), phi, cfg);
  EXPECT_EQ(report.violations, 0u);
  ASSERT_TRUE(report.slope);
  EXPECT_NEAR(*report.slope, 0.5, 0.05);
  EXPECT_DOUBLE_EQ(*report.theoretical_slope, 0.5);
  for (const auto& row : report.rows) {
    EXPECT_NEAR(row.alpha_star, std::sqrt(row.delta), 1e-9 * row.alpha_star);
  }
}

TEST(RateStudy, WhiteNoiseTwoFifths) {
  const auto phi = IndexFunction::power(1.0);
  const auto problem = source_problem(harmonic(500), phi);
  RateStudyConfig cfg;
  cfg.mode = NoiseMode::white;
  cfg.deltas = deltas(-2, -6, 9);
  cfg.replications = 100;
  cfg.seed = 5;
  cfg.threads = 4;
  const auto report = rate_study(problem, truncate(spectral_cutoff()), phi, cfg);
  EXPECT_EQ(report.violations, 0u);
  ASSERT_TRUE(report.slope);
  EXPECT_NEAR(*report.slope, 0.4, 0.05);
  ASSERT_TRUE(report.theoretical_slope);
  EXPECT_NEAR(*report.theoretical_slope, 0.4, 0.05);
}

TEST(RateStudy, Guards) {
  const auto phi = IndexFunction::power(1.0);
  const auto problem = source_problem(harmonic(100), phi);
  RateStudyConfig cfg;
  cfg.deltas = {1e-3};
  EXPECT_THROW(rate_study(problem, spectral_cutoff(), phi, cfg), PreconditionFailed);
  const auto single = evaluate_rates(problem, spectral_cutoff(), phi, cfg);
  EXPECT_EQ(single.rows.size(), 1u);
  EXPECT_FALSE(single.slope.has_value());
  cfg.deltas = {1e-2, 1e-3, 5e-4, 1e-6};
  EXPECT_THROW(rate_study(problem, spectral_cutoff(), phi, cfg), PreconditionFailed);
}
