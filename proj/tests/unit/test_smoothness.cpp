#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "specreg/errors.hpp"
#include "specreg/estimator.hpp"
#include "specreg/smoothness.hpp"

using namespace specreg;

TEST(PhiStar, PowerDecayClosedForm) {
  const auto space = MeasureSpace::halfline(200.0, 1 << 14);
  for (double kappa : {0.5, 1.0, 2.0}) {
    const auto b = Multiplier::power_decay(kappa);
    const auto star = phi_star(b, space);
    for (double t : log_grid(star.domain_lo(), star.domain_hi(), 17)) {
      const double expected = std::pow(t / (1.0 - t), kappa);
      EXPECT_NEAR(star(t), expected, 1e-3 * expected) << kappa << " " << t;
    }
  }
}

TEST(PhiStar, PowerDecayAtHalf) {
  const auto star = phi_star(Multiplier::power_decay(1.0), MeasureSpace::halfline(200.0, 4096));
  EXPECT_NEAR(star(0.5), 1.0, 1e-12);
}

TEST(PhiStar, GaussianOnTheLine) {
  const double c = 1.3, tau = 0.7;
  const auto space = MeasureSpace::line(6.0, 1 << 14);
  const auto b = Multiplier::gaussian_frequency(c, tau);
  const auto star = phi_star(b, space);
  const auto values = b.values_on(space);
  for (double t : log_grid(star.domain_lo() * 1.01, star.domain_hi(), 11)) {
    const double analytic = c * std::sqrt(tau) / (2.0 * std::sqrt(std::log(1.0 / t)));
    EXPECT_NEAR(star(t), analytic, 1e-3 * analytic) << t;
    // Independent summation of the superlevel weights.
    const double counted = oracle::superlevel_measure(values, space.weights(), t);
    EXPECT_NEAR(1.0 / star(t), counted, 2.5 * space.max_weight()) << t;
  }
}

TEST(PhiStar, IsStrictlyIncreasing) {
  const auto star = phi_star(Multiplier::power_decay(1.5), MeasureSpace::halfline(50.0, 4096));
  double previous = 0.0;
  for (double t : log_grid(star.domain_lo(), star.domain_hi(), 300)) {
    const double v = star(t);
    ASSERT_GT(v, previous);
    previous = v;
  }
}

TEST(PhiStar, Hypotheses) {
  EXPECT_THROW(phi_star(Multiplier::power_decay(1), MeasureSpace::interval(0, 1, 100)),
               PreconditionFailed);
  EXPECT_THROW(phi_star(Multiplier::plateau_counterexample(), MeasureSpace::line(4, 100)),
               PreconditionFailed);
}

TEST(MakeSource, Examples) {
  const auto space = MeasureSpace::interval(0.0, 1.0, 1000);
  const auto b = Multiplier::pure_power(1.0);
  const auto phi = IndexFunction::power(0.5);
  const auto values = b.values_on(space);
  std::vector<double> f(values.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = phi(values[i]);
  const auto src = make_source(f, b, space, phi);
  for (double v : src.source_element) EXPECT_NEAR(v, 1.0, 1e-15);

  const std::vector<double> zero(values.size(), 0.0);
  EXPECT_EQ(make_source(zero, b, space, phi).norm, 0.0);
}

TEST(MakeSource, HarmonicSquaresAreNotInTheUnitSourceSet) {
  const std::size_t n = 400000;
  const auto space = MeasureSpace::counting(n);
  std::vector<double> bj(n), f(n);
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double k = static_cast<double>(j + 1);
    bj[j] = 1.0 / k;
    f[j] = 1.0 / (k * k);
    sum += 1.0 / (k * k);
  }
  const auto b = Multiplier::tabulated(space, bj);
  try {
    make_source(f, b, space, IndexFunction::power(1.0));
    FAIL() << "expected NotInSourceSet";
  } catch (const NotInSourceSet& e) {
    EXPECT_NEAR(e.achieved_norm(), std::sqrt(sum), 1e-12);
    EXPECT_NEAR(e.achieved_norm(), std::numbers::pi / std::sqrt(6.0), 1e-5);
  }
}

TEST(SobolevEquivalence, PowerDecayBand) {
  const auto space = MeasureSpace::halfline(100.0, 1 << 14);
  const auto eq = sobolev_equivalence_check(Multiplier::power_decay(1.0), space, 1.0);
  EXPECT_NEAR(eq.radius, 1.0, 2 * space.max_weight());
  EXPECT_NEAR(eq.lower, 1.0, 1e-3);
  EXPECT_NEAR(eq.upper, (1.0 + eq.radius * eq.radius) / (eq.radius * eq.radius), 1e-2);
}

TEST(SobolevEquivalence, FiniteSpaceRejected) {
  EXPECT_THROW(sobolev_equivalence_check(Multiplier::custom("1", [](double) { return 1.0; }, 1.0),
                                         MeasureSpace::interval(0, 1, 100), 2.0),
               PreconditionFailed);
}

TEST(SobolevEquivalence, GaussianBand) {
  const auto space = MeasureSpace::line(5.0, 1 << 13);
  const auto eq = sobolev_equivalence_check(Multiplier::gaussian_frequency(1.0, 1.0), space, 1.0);
  // (1 + s^2) / (4 s^2) on M <= |s| <= R.
  EXPECT_NEAR(eq.lower, (1 + 25.0) / (4 * 25.0), 0.01);
  EXPECT_NEAR(eq.upper, (1 + eq.radius * eq.radius) / (4 * eq.radius * eq.radius), 0.02);
}

// Both directions of the equivalence on random functions supported where
// phi_* is defined.
TEST(SobolevEquivalence, BothDirectionsOnRandomFunctions) {
  const auto space = MeasureSpace::halfline(60.0, 1 << 13);
  const auto b = Multiplier::power_decay(1.0);
  oracle::Gen gen(99);
  for (double p : {0.5, 1.0, 2.0}) {
    const auto eq = sobolev_equivalence_check(b, space, p);
    const auto star_p = eq.phi_star.pow(p);
    const auto values = b.values_on(space);
    for (int trial = 0; trial < 10; ++trial) {
      const double decay = gen.uniform(p + 0.6, p + 3.0);
      std::vector<double> f(space.size(), 0.0);
      const auto x = space.nodes();
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (x[i] >= eq.radius) f[i] = gen.uniform(0.5, 1.5) * std::pow(1.0 + x[i], -decay);
      }
      const double rho = sobolev_norm(f, space, p).norm;
      EXPECT_NO_THROW(make_source(f, b, space, star_p.scaled(eq.source_scale(rho))));

      std::vector<double> v(space.size(), 0.0), g(space.size(), 0.0);
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (x[i] >= eq.radius) v[i] = gen.uniform(-1, 1) / (1.0 + x[i]);
      }
      const double nv = oracle::weighted_norm(v, space.weights());
      for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] /= nv;
        if (x[i] >= eq.radius) g[i] = star_p(values[i]) * v[i];
      }
      EXPECT_LE(sobolev_norm(g, space, p).norm, eq.sobolev_bound(1.0) * (1 + 1e-12));
    }
  }
}

// With a certified qualification, bias(alpha) <= C_phi phi(alpha) for f in the
// unit source set.
TEST(SourceCondition, BiasBoundedByQualification) {
  const auto space = MeasureSpace::interval(0.0, 1.0, 4096);
  const auto b = Multiplier::pure_power(1.0);
  const MultiplicationOperator op(b, space);
  oracle::Gen gen(3);
  for (const auto& scheme : {spectral_cutoff(), lavrentiev(), truncate(lavrentiev())}) {
    for (double nu : {0.5, 1.0}) {
      const auto phi = IndexFunction::power(nu);
      const auto cert = certify_qualification(scheme, phi, default_probe_grid());
      ASSERT_TRUE(cert.passed);
      std::vector<double> v(space.size());
      for (double& x : v) x = gen.uniform(-1, 1);
      const double nv = oracle::weighted_norm(v, space.weights());
      std::vector<double> f(space.size());
      const auto bv = op.values();
      for (std::size_t i = 0; i < f.size(); ++i) f[i] = phi(bv[i]) * v[i] / nv;
      ASSERT_NO_THROW(make_source(f, b, space, phi));
      for (double alpha : log_grid(1e-4, 1.0, 30)) {
        EXPECT_LE(bias(scheme, alpha, op, f), cert.c_phi * phi(alpha) * (1 + 1e-12))
            << scheme.name() << " nu=" << nu << " alpha=" << alpha;
      }
    }
  }
}
