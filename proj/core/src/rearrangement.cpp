#include "specreg/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "specreg/errors.hpp"

namespace specreg {

namespace {

Rearrangement sorted_rearrangement(std::span<const double> values,
                                   std::span<const double> weights, Monotonicity direction) {
  if (values.size() != weights.size() || values.empty()) {
    throw PreconditionFailed("rearrangement needs matching, nonempty values and weights");
  }
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (direction == Monotonicity::nonincreasing) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  } else {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  }
  std::vector<double> knots(values.size() + 1);
  std::vector<double> sorted(values.size());
  knots[0] = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted[i] = values[order[i]];
    knots[i + 1] = knots[i] + weights[order[i]];
  }
  return Rearrangement(std::move(knots), std::move(sorted), direction);
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Rearrangement::Rearrangement(std::vector<double> knots, std::vector<double> values,
                             Monotonicity direction)
    : knots_(std::move(knots)), values_(std::move(values)), direction_(direction) {
  if (knots_.size() != values_.size() + 1) {
    throw PreconditionFailed("rearrangement needs one more knot than values");
  }
}

double Rearrangement::operator()(double t) const {
  if (t < 0.0) {
    throw PreconditionFailed("rearrangement evaluated at negative abscissa");
  }
  if (t >= knots_.back()) {
    return direction_ == Monotonicity::nonincreasing ? 0.0
                                                     : std::numeric_limits<double>::infinity();
  }
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  const auto i = static_cast<std::size_t>(it - knots_.begin()) - 1;
  return values_[std::min(i, values_.size() - 1)];
}

double Rearrangement::measure_above(double level) const {
  if (direction_ == Monotonicity::nonincreasing) {
    const auto it = std::partition_point(values_.begin(), values_.end(),
                                         [level](double v) { return v > level; });
    return knots_[static_cast<std::size_t>(it - values_.begin())];
  }
  const auto it = std::partition_point(values_.begin(), values_.end(),
                                       [level](double v) { return v <= level; });
  return knots_.back() - knots_[static_cast<std::size_t>(it - values_.begin())];
}

double distribution_function(std::span<const double> values, std::span<const double> weights,
                             double t) {
  if (values.size() != weights.size()) {
    throw PreconditionFailed("distribution function needs matching values and weights");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > t) {
      sum += weights[i];
    }
  }
  return sum;
}

double distribution_function(const Multiplier& b, const MeasureSpace& space, double t) {
  if (!(t > 0.0)) {
    throw PreconditionFailed("distribution function needs t > 0");
  }
  const bool halfline = space.kind() == MeasureKind::lebesgue_halfline;
  const bool line = space.kind() == MeasureKind::lebesgue_line;
  const bool plain = !space.density_bounds().has_value();
  if ((halfline || line) && plain) {
    const double sides = line ? 2.0 : 1.0;
    const auto closed = std::visit(
        Overloaded{
            [&](const PowerDecay& f) -> std::optional<double> {
              if (t >= 1.0) {
                return 0.0;
              }
              return sides * std::pow((1.0 - t) / t, f.kappa);
            },
            [&](const GaussianFrequency& f) -> std::optional<double> {
              if (f.dimension != 1) {
                return std::nullopt;
              }
              if (t >= 1.0) {
                return 0.0;
              }
              return sides * std::sqrt(std::log(1.0 / t) / (f.c * f.c * f.tau));
            },
            [&](const PlateauCounterexample&) -> std::optional<double> {
              if (t >= 1.0) {
                return 0.0;
              }
              return std::numeric_limits<double>::infinity();
            },
            [](const auto&) -> std::optional<double> { return std::nullopt; },
        },
        b.family());
    if (closed) {
      return *closed;
    }
  }
  if (t >= b.sup_bound()) {
    return 0.0;
  }
  const auto values = b.values_on(space);
  return distribution_function(values, space.weights(), t);
}

bool vanishes_at_infinity(const Multiplier& b, const MeasureSpace& space) {
  if (!space.is_infinite()) {
    return true;
  }
  return std::visit(Overloaded{
                        [](const PowerDecay&) { return true; },
                        [](const PurePower&) { return false; },
                        [](const GaussianFrequency&) { return true; },
                        [](const ExponentialSequence&) { return true; },
                        [](const PlateauCounterexample&) { return false; },
                        [](const PiecewiseMonotone&) { return false; },
                        [](const Tabulated& f) { return f.tail_vanishes; },
                        [](const CustomMultiplier& f) { return f.tail_vanishes; },
                    },
                    b.family());
}

Rearrangement decreasing_rearrangement(std::span<const double> values,
                                       std::span<const double> weights) {
  return sorted_rearrangement(values, weights, Monotonicity::nonincreasing);
}

Rearrangement decreasing_rearrangement(const Multiplier& b, const MeasureSpace& space) {
  if (!vanishes_at_infinity(b, space)) {
    throw RearrangementUndefined(b.describe() + " does not vanish at infinity on " +
                                 to_string(space.kind()));
  }
  const auto values = b.values_on(space);
  return decreasing_rearrangement(values, space.weights());
}

Rearrangement increasing_rearrangement(std::span<const double> values,
                                       std::span<const double> weights) {
  return sorted_rearrangement(values, weights, Monotonicity::nondecreasing);
}

Rearrangement increasing_rearrangement(const Multiplier& b, const MeasureSpace& space) {
  if (space.is_infinite()) {
    throw RequiresFiniteMeasure("increasing rearrangement needs mu(S) < infinity, got " +
                                to_string(space.kind()));
  }
  const auto values = b.values_on(space);
  return increasing_rearrangement(values, space.weights());
}

PiecewiseBounds piecewise_rearrangement_bounds(const Multiplier& b) {
  const auto* family = std::get_if<PiecewiseMonotone>(&b.family());
  if (family == nullptr) {
    throw PreconditionFailed("piecewise bounds need a piecewise_monotone multiplier");
  }
  const auto& pieces = family->pieces;
  const std::size_t m = pieces.size();

  double eps = std::numeric_limits<double>::infinity();
  for (const auto& p : pieces) {
    eps = std::min(eps, p.radius / 4.0);
  }
  double level = std::numeric_limits<double>::infinity();
  for (const auto& p : pieces) {
    level = std::min(level, p.profile(eps));
  }
  level = std::min(level, 0.5 * family->background.essential_infimum);

  constexpr std::size_t kProbes = 64;
  const auto taus = log_grid(level * 1e-6, level, kProbes);
  std::vector<std::vector<double>> inverse(m, std::vector<double>(kProbes));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t p = 0; p < kProbes; ++p) {
      inverse[j][p] = pieces[j].profile.inverse(taus[p]);
    }
  }

  // One decade above the smallest probe.
  const std::size_t decade = (kProbes - 1) / 6;
  std::optional<std::size_t> best;
  double best_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < m; ++k) {
    bool dominates = true;
    double ratio_max = 0.0;
    for (std::size_t j = 0; j < m && dominates; ++j) {
      for (std::size_t p = 0; p < kProbes; ++p) {
        ratio_max = std::max(ratio_max, inverse[j][p] / inverse[k][p]);
      }
      const double r_small = inverse[j][0] / inverse[k][0];
      const double r_decade = inverse[j][decade] / inverse[k][decade];
      // A ratio still growing as tau -> 0 means b_j^{-1} is not dominated.
      if (r_small > 1.05 * r_decade && r_small > 1.0) {
        dominates = false;
      }
    }
    if (dominates && ratio_max < best_ratio) {
      best = k;
      best_ratio = ratio_max;
    }
  }
  if (!best) {
    throw DominationNotDetected("no monotone piece dominates the others on the probe window");
  }
  const std::size_t k = *best;
  const double c = std::max(1.0, best_ratio);
  double window = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    window += inverse[j][kProbes - 1];
  }
  const auto& dominant = pieces[k].profile;
  return PiecewiseBounds{dominant,
                         dominant.with_argument_scale(1.0 / (c * static_cast<double>(m))),
                         c,
                         static_cast<int>(m),
                         k,
                         window,
                         level};
}

bool truncated_shift_check(const Multiplier& b, const MeasureSpace& space, double shift) {
  if (space.kind() != MeasureKind::lebesgue_halfline) {
    throw PreconditionFailed("truncated_shift_check works on the half line");
  }
  if (!(shift >= 0.0)) {
    throw PreconditionFailed("shift must be nonnegative");
  }
  const auto nodes = space.nodes();
  const auto weights = space.weights();
  const auto values = b.values_on(space);
  std::vector<double> truncated(nodes.size());
  std::vector<double> shifted(nodes.size());
  double max_step = 0.0;
  double beyond_truncation = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    truncated[i] = nodes[i] > shift ? values[i] : 0.0;
    shifted[i] = b(nodes[i] + shift);
    if (nodes[i] + shift > space.truncation_radius()) {
      beyond_truncation = std::max(beyond_truncation, std::abs(shifted[i]));
    }
    if (i > 0) {
      max_step = std::max(max_step, std::abs(values[i] - values[i - 1]));
    }
  }
  const auto full = decreasing_rearrangement(values, weights);
  const auto r_truncated = decreasing_rearrangement(truncated, weights);
  const auto r_shifted = decreasing_rearrangement(shifted, weights);

  // The two samplings differ by less than one cell, so their step
  // rearrangements agree up to the largest jump between neighbouring nodes,
  // plus whatever the shift pulls in from beyond the truncation radius.
  const double tol = 2.0 * max_step + beyond_truncation + 1e-12;
  constexpr std::size_t kGrid = 512;
  const double total = space.measure();
  for (std::size_t k = 0; k < kGrid; ++k) {
    const double t = total * static_cast<double>(k) / static_cast<double>(kGrid);
    const double a = r_shifted(t);
    const double c = r_truncated(t);
    if (std::abs(a - c) > tol) {
      return false;
    }
    if (a > full(t) + tol || c > full(t) + tol) {
      return false;
    }
  }
  return true;
}

}  // namespace specreg
