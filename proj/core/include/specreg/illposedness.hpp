#pragma once

#include <span>
#include <vector>

#include "specreg/operator.hpp"

namespace specreg {

// D(alpha) = (int_{b_* > alpha} b_*^{-2} dt)^{1/2} on a grid of alpha.
struct IllposednessProfile {
  std::vector<double> alpha_grid;
  // Rearrangement side (log-linear interpolation of b_* between cell
  // midpoints for Lebesgue kinds, exact sums for counting measure).
  std::vector<double> D_values;
  // Domain side sum_{b > alpha} w / b^2.
  std::vector<double> D_domain;
  // (1/alpha) sqrt(d_b(alpha)).
  std::vector<double> upper_bounds;
  bool finite = true;

  // Synthetic profile from given values (domain side and bounds copied).
  static IllposednessProfile from_values(std::vector<double> alpha_grid,
                                         std::vector<double> D_values);

  // Log-log interpolation between grid points, extrapolated along the end
  // segments. Where D vanishes at the right end of a segment the left value
  // is held, and past the last positive value the result is 0.
  double at(double alpha) const;
};

// Throws RearrangementUndefined when b does not vanish at infinity.
IllposednessProfile effective_illposedness(const MultiplicationOperator& op,
                                           std::span<const double> alpha_grid);

// D(alpha) at a single level.
double effective_illposedness(const MultiplicationOperator& op, double alpha);

}  // namespace specreg
