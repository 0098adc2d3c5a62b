#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "specreg/errors.hpp"
#include "specreg/measure.hpp"
#include "specreg/multiplier.hpp"
#include "specreg/rearrangement.hpp"

using namespace specreg;

namespace {

Multiplier exp_decay() {
  return Multiplier::custom("exp(-s)", [](double s) { return std::exp(-s); }, 1.0);
}

}  // namespace

TEST(MeasureSpace, WeightsSumToMeasure) {
  const auto iv = MeasureSpace::interval(-1.0, 3.0, 1000);
  EXPECT_NEAR(iv.measure(), 4.0, 1e-12);
  const auto geo = MeasureSpace::interval(0.0, 1.0, 500, GridKind::geometric);
  EXPECT_NEAR(geo.measure(), 1.0, 1e-12);
  const auto line = MeasureSpace::line(5.0, 1000);
  EXPECT_NEAR(line.measure(), 10.0, 1e-12);
  const auto c = MeasureSpace::counting(7);
  EXPECT_DOUBLE_EQ(c.measure(), 7.0);
  for (const auto* s : {&iv, &geo, &line, &c}) {
    const auto x = s->nodes();
    for (std::size_t i = 1; i < x.size(); ++i) {
      ASSERT_LT(x[i - 1], x[i]);
    }
    for (double w : s->weights()) {
      ASSERT_GT(w, 0.0);
    }
  }
}

TEST(MeasureSpace, ShellsTileTheExtension) {
  const auto h = MeasureSpace::halfline(4.0, 400);
  double measure = h.measure();
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto shell = h.shell(k);
    EXPECT_NEAR(shell.nodes().front(), 4.0 * std::ldexp(1.0, static_cast<int>(k) - 1) + 0.005,
                1e-9);
    measure += shell.measure();
  }
  EXPECT_NEAR(measure, h.extended(8).measure(), 1e-9);
  const auto c = MeasureSpace::counting(10);
  EXPECT_DOUBLE_EQ(c.shell(1).nodes().front(), 11.0);
  EXPECT_EQ(c.shell(2).size(), 20u);
  EXPECT_THROW(MeasureSpace::interval(0, 1, 10).shell(1), PreconditionFailed);
}

TEST(DistributionFunction, PowerDecayClosedForm) {
  const auto b = Multiplier::power_decay(1.0);
  EXPECT_DOUBLE_EQ(distribution_function(b, MeasureSpace::halfline(10.0, 100), 0.5), 1.0);
}

TEST(DistributionFunction, ZeroAtSupremum) {
  const auto space = MeasureSpace::interval(0.0, 10.0, 1000);
  for (const auto& b : {exp_decay(), Multiplier::pure_power(2.0, 10.0)}) {
    const auto v = b.values_on(space);
    const double top = *std::max_element(v.begin(), v.end());
    EXPECT_EQ(distribution_function(b, space, std::max(top, b.sup_bound())), 0.0);
  }
}

TEST(DistributionFunction, ExponentialOnInterval) {
  const auto space = MeasureSpace::interval(0.0, 10.0, 1 << 14);
  const double t = std::exp(-2.0);
  const double d = distribution_function(exp_decay(), space, t);
  EXPECT_NEAR(d, 2.0, space.max_weight());
  const auto v = exp_decay().values_on(space);
  EXPECT_DOUBLE_EQ(d, oracle::superlevel_measure(v, space.weights(), t));
}

TEST(VanishingAtInfinity, Families) {
  EXPECT_TRUE(vanishes_at_infinity(Multiplier::gaussian_frequency(1, 1), MeasureSpace::line(8, 100)));
  EXPECT_FALSE(
      vanishes_at_infinity(Multiplier::plateau_counterexample(), MeasureSpace::line(8, 100)));
  EXPECT_TRUE(vanishes_at_infinity(Multiplier::power_decay(2.0), MeasureSpace::halfline(8, 100)));
  EXPECT_TRUE(
      vanishes_at_infinity(Multiplier::plateau_counterexample(), MeasureSpace::interval(-1, 2, 30)));
}

TEST(DecreasingRearrangement, ExponentialIsItsOwnRearrangement) {
  const auto space = MeasureSpace::halfline(20.0, 1 << 14);
  const auto r = decreasing_rearrangement(exp_decay(), space);
  const double h = space.max_weight();
  for (double t : {0.0, 0.3, 1.0, 2.5, 7.0, 15.0}) {
    EXPECT_NEAR(r(t), std::exp(-t), h) << "t=" << t;
  }
}

TEST(DecreasingRearrangement, SortedSequenceUnchanged) {
  const auto space = MeasureSpace::counting(50);
  const auto b = Multiplier::tabulated(space, [] {
    std::vector<double> v(50);
    for (std::size_t j = 0; j < 50; ++j) v[j] = 1.0 / static_cast<double>(j + 1);
    return v;
  }());
  const auto r = decreasing_rearrangement(b, space);
  for (std::size_t j = 0; j < 50; ++j) {
    EXPECT_DOUBLE_EQ(r(static_cast<double>(j) + 0.5), 1.0 / static_cast<double>(j + 1));
  }
}

TEST(DecreasingRearrangement, AbsSineAgainstBruteForceSort) {
  const auto space = MeasureSpace::interval(0.0, 2.0 * std::numbers::pi, 100000);
  const auto b = Multiplier::custom("|sin|", [](double s) { return std::abs(std::sin(s)); }, 1.0);
  const auto r = decreasing_rearrangement(b, space);
  const auto v = b.values_on(space);
  const auto sorted = oracle::sorted_pairs(v, space.weights(), true);
  const double h = space.max_weight();
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double t = space.measure() * (k + 0.37) / 200.0;
    worst = std::max(worst, std::abs(r(t) - oracle::step_at(sorted, t)));
  }
  EXPECT_LE(worst, 2.0 * h);
}

TEST(DecreasingRearrangement, PlateauIsUndefined) {
  EXPECT_THROW(
      decreasing_rearrangement(Multiplier::plateau_counterexample(), MeasureSpace::line(4, 100)),
      RearrangementUndefined);
}

TEST(IncreasingRearrangement, ClosedForms) {
  const auto space = MeasureSpace::interval(0.0, 1.0, 4096);
  const double h = space.max_weight();
  const auto id = increasing_rearrangement(Multiplier::pure_power(1.0), space);
  const auto vee = increasing_rearrangement(
      Multiplier::custom("|s-1/2|", [](double s) { return std::abs(s - 0.5); }, 0.5), space);
  const auto flip =
      increasing_rearrangement(Multiplier::custom("1-s", [](double s) { return 1 - s; }, 1), space);
  for (double t : {0.01, 0.2, 0.5, 0.77, 0.99}) {
    EXPECT_NEAR(id(t), t, h);
    EXPECT_NEAR(vee(t), t / 2.0, h);
    EXPECT_NEAR(flip(t), t, h);
  }
}

TEST(IncreasingRearrangement, NeedsFiniteMeasure) {
  EXPECT_THROW(increasing_rearrangement(Multiplier::power_decay(1), MeasureSpace::halfline(4, 10)),
               RequiresFiniteMeasure);
}

// Equimeasurability, monotonicity and order preservation on random inputs.
TEST(RearrangementProperties, RandomMultipliers) {
  oracle::Gen gen(20240611);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(50, 3000));
    const auto space = MeasureSpace::interval(0.0, gen.uniform(0.5, 5.0), n);
    std::vector<double> v(n);
    std::vector<double> larger(n);
    for (std::size_t i = 0; i < n; ++i) {
      // Repeated values exercise tie handling.
      v[i] = gen.coin() ? std::round(gen.uniform(0, 8)) / 8.0 : gen.uniform(0, 1);
      larger[i] = v[i] + gen.uniform(0, 0.1);
    }
    const auto down = decreasing_rearrangement(v, space.weights());
    const auto up = increasing_rearrangement(v, space.weights());
    const auto down_larger = decreasing_rearrangement(larger, space.weights());
    for (std::size_t i = 1; i < down.values().size(); ++i) {
      ASSERT_GE(down.values()[i - 1], down.values()[i]);
      ASSERT_LE(up.values()[i - 1], up.values()[i]);
    }
    for (int k = 0; k < 64; ++k) {
      const double t = gen.uniform(-0.05, 1.05);
      EXPECT_NEAR(down.measure_above(t), oracle::superlevel_measure(v, space.weights(), t),
                  2.0 * space.max_weight());
      const double s = gen.uniform(0.0, space.measure());
      EXPECT_LE(down(s), down_larger(s));
    }
  }
}

TEST(RearrangementProperties, DensityBoundTransfer) {
  oracle::Gen gen(77);
  for (int trial = 0; trial < 10; ++trial) {
    const double lo = gen.uniform(0.2, 0.9);
    const double hi = gen.uniform(1.1, 3.0);
    const double freq = gen.uniform(1.0, 9.0);
    const auto lambda = MeasureSpace::interval(0.0, 1.0, 8192);
    const auto mu = lambda.with_density(
        [=](double s) { return lo + (hi - lo) * 0.5 * (1.0 + std::sin(freq * s)); }, {lo, hi});
    const double kappa = gen.uniform(0.5, 3.0);
    const auto b = Multiplier::custom("mix", [=](double s) {
      return std::pow(s, kappa) * (1.2 + std::cos(freq * s));
    }, 2.2);
    const auto r_lambda = increasing_rearrangement(b, lambda);
    const auto r_mu = increasing_rearrangement(b, mu);
    const double slack = 2.0 * hi * lambda.max_weight();
    for (int k = 1; k < 64; ++k) {
      const double t = k / 64.0;
      EXPECT_LE(r_mu(std::max(0.0, lo * t - slack)), r_lambda(t));
      EXPECT_LE(r_lambda(t), r_mu(hi * t + slack));
    }
  }
}

TEST(PiecewiseBounds, SinglePieceIdentity) {
  const auto b = Multiplier::piecewise_monotone(
      {MonotonePiece{0.0, Orientation::increasing_right, IndexFunction::power(1.0), 0.2}},
      BackgroundPart{0.5, [](double) { return 0.5; }, 0.5});
  const auto bounds = piecewise_rearrangement_bounds(b);
  EXPECT_EQ(bounds.piece_count, 1);
  EXPECT_DOUBLE_EQ(bounds.domination_constant, 1.0);
  for (double s : {1e-4, 1e-3, 1e-2}) {
    EXPECT_NEAR(bounds.upper(s), s, 1e-15);
    EXPECT_NEAR(bounds.lower(s), s, 1e-15);
  }
}

TEST(PiecewiseBounds, QuadraticPieceDominates) {
  const auto b = Multiplier::piecewise_monotone(
      {MonotonePiece{0.2, Orientation::increasing_right, IndexFunction::power(1.0), 0.2},
       MonotonePiece{0.7, Orientation::increasing_left, IndexFunction::power(2.0), 0.2}},
      BackgroundPart{0.5, [](double) { return 0.5; }, 0.5});
  const auto bounds = piecewise_rearrangement_bounds(b);
  EXPECT_EQ(bounds.dominant_piece, 1u);
  EXPECT_EQ(bounds.piece_count, 2);
  const auto space = MeasureSpace::interval(0.0, 1.0, 1 << 16);
  const auto v = b.values_on(space);
  const auto sorted = oracle::sorted_pairs(v, space.weights(), false);
  const double h = space.max_weight();
  for (double s : log_grid(bounds.window * 1e-3, bounds.window, 40)) {
    const double bstar = oracle::step_at(sorted, s);
    EXPECT_LE(bstar, bounds.upper(s + 2 * h)) << s;
    EXPECT_GE(bstar, bounds.lower(std::max(0.0, s - 2 * h))) << s;
  }
}

TEST(PiecewiseBounds, TwoLinearPiecesHalveTheArgument) {
  const auto b = Multiplier::piecewise_monotone(
      {MonotonePiece{0.25, Orientation::increasing_right, IndexFunction::power(1.0), 0.2},
       MonotonePiece{0.75, Orientation::increasing_right, IndexFunction::power(1.0), 0.2}},
      BackgroundPart{0.6, [](double) { return 0.6; }, 0.6});
  const auto bounds = piecewise_rearrangement_bounds(b);
  EXPECT_DOUBLE_EQ(bounds.domination_constant, 1.0);
  EXPECT_EQ(bounds.piece_count, 2);
  const auto space = MeasureSpace::interval(0.0, 1.0, 1 << 15);
  const auto r = increasing_rearrangement(b, space);
  for (double s : log_grid(bounds.window * 1e-2, bounds.window, 20)) {
    EXPECT_NEAR(r(s), s / 2.0, 2 * space.max_weight()) << s;
  }
}

TEST(PiecewiseBounds, RejectsNonPiecewise) {
  EXPECT_THROW(piecewise_rearrangement_bounds(Multiplier::power_decay(1)), PreconditionFailed);
}

TEST(TruncatedShift, Examples) {
  const auto space = MeasureSpace::halfline(30.0, 1 << 14);
  EXPECT_TRUE(truncated_shift_check(exp_decay(), space, 1.0));
  EXPECT_TRUE(truncated_shift_check(exp_decay(), space, 0.0));
  const auto recip =
      Multiplier::custom("1/(1+s)", [](double s) { return 1.0 / (1.0 + s); }, 1.0);
  EXPECT_TRUE(truncated_shift_check(recip, space, 3.0));
}

TEST(TruncatedShift, ShiftedExponentialRearrangement) {
  const auto space = MeasureSpace::halfline(30.0, 1 << 14);
  const auto v = exp_decay().values_on(space);
  std::vector<double> cut(v.size());
  const auto x = space.nodes();
  for (std::size_t i = 0; i < v.size(); ++i) cut[i] = x[i] > 1.0 ? v[i] : 0.0;
  const auto r = decreasing_rearrangement(cut, space.weights());
  for (double t : {0.0, 0.5, 2.0, 5.0}) {
    EXPECT_NEAR(r(t), std::exp(-1.0) * std::exp(-t), 2 * space.max_weight());
  }
}
