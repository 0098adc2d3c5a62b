#pragma once

#include <span>
#include <vector>

#include "specreg/index_function.hpp"
#include "specreg/measure.hpp"
#include "specreg/multiplier.hpp"

namespace specreg {

enum class Monotonicity { nonincreasing, nondecreasing };

// Step function on cumulative-weight abscissae [knot_i, knot_{i+1}) holding
// the i-th sorted node value. Evaluation is right-continuous, which matches
// the inf/sup definitions of the rearrangements on discrete data.
class Rearrangement {
 public:
  Rearrangement(std::vector<double> knots, std::vector<double> values, Monotonicity direction);

  double operator()(double t) const;

  // lambda({t : r(t) > level}), computed from the step representation.
  double measure_above(double level) const;

  std::span<const double> knots() const noexcept { return knots_; }
  std::span<const double> values() const noexcept { return values_; }
  double total_measure() const noexcept { return knots_.back(); }
  Monotonicity direction() const noexcept { return direction_; }

 private:
  std::vector<double> knots_;
  std::vector<double> values_;
  Monotonicity direction_;
};

// d_b(t) = mu({s : b(s) > t}) summed over the discretization.
double distribution_function(std::span<const double> values, std::span<const double> weights,
                             double t);

// d_b(t) for a multiplier; exact (untruncated) closed forms are used for the
// power-decay, Gaussian and plateau families on infinite Lebesgue spaces.
// May return +infinity (plateau).
double distribution_function(const Multiplier& b, const MeasureSpace& space, double t);

// Assumption that every superlevel set has finite measure. Trivially true on
// finite-measure spaces.
bool vanishes_at_infinity(const Multiplier& b, const MeasureSpace& space);

// Decreasing rearrangement b_* of node values (stable sort by node index).
Rearrangement decreasing_rearrangement(std::span<const double> values,
                                       std::span<const double> weights);

// Throws RearrangementUndefined when b does not vanish at infinity on an
// infinite space.
Rearrangement decreasing_rearrangement(const Multiplier& b, const MeasureSpace& space);

// Increasing rearrangement b^* of node values.
Rearrangement increasing_rearrangement(std::span<const double> values,
                                       std::span<const double> weights);

// Throws RequiresFiniteMeasure on infinite spaces.
Rearrangement increasing_rearrangement(const Multiplier& b, const MeasureSpace& space);

// Two-sided bound b_k(s / (C m)) <= b^*(s) <= b_k(s) for a piecewise
// monotone multiplier, valid for 0 < s <= window.
struct PiecewiseBounds {
  IndexFunction upper;
  IndexFunction lower;
  double domination_constant;
  int piece_count;
  std::size_t dominant_piece;
  // Sum of the inverse profiles at the probe level; the bounds are claimed
  // on (0, window].
  double window;
  // Largest probed level tau.
  double level;
};

// Detects the dominating piece on a probe window of 64 logarithmically
// spaced levels below min_j b_j(min_j a_j / 4). Throws DominationNotDetected
// when no piece dominates the others there.
PiecewiseBounds piecewise_rearrangement_bounds(const Multiplier& b);

// Compares the rearrangements of b * chi_(M, inf) and of its shift
// s -> b(s + M) on the half line, and checks both lie below b_*.
bool truncated_shift_check(const Multiplier& b, const MeasureSpace& space, double shift);

}  // namespace specreg
