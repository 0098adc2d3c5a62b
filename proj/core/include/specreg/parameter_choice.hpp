#pragma once

#include "specreg/illposedness.hpp"
#include "specreg/index_function.hpp"

namespace specreg {

struct AlphaBracket {
  double lo = 1e-12;
  double hi = 1.0;
};

// Relative accuracy of the chosen alpha.
inline constexpr double kAlphaTolerance = 1e-10;

// Solves alpha phi(alpha) = delta. Throws BracketingFailed when delta lies
// outside the range of the map on the bracket, PreconditionFailed when the
// map is not strictly increasing there.
double choose_alpha_deterministic(const IndexFunction& phi, double delta,
                                  AlphaBracket bracket = {});

// Solves phi(alpha) = delta D(alpha). Throws DivergentProfile when the
// profile is not finite.
double choose_alpha_white(const IndexFunction& phi, const IllposednessProfile& profile,
                          double delta, AlphaBracket bracket = {});

// C_phi phi(alpha) + C_{-1} delta / alpha
double deterministic_error_bound(double c_phi, double c_minus1, const IndexFunction& phi,
                                 double delta, double alpha);

// 2 max{C_phi, C_{-1}} phi(alpha*), valid at the deterministic choice.
double deterministic_error_bound_at_choice(double c_phi, double c_minus1,
                                           const IndexFunction& phi, double alpha_star);

// sqrt(C_phi^2 phi(alpha)^2 + delta^2 (C_0 + 1)^2 D(alpha)^2)
double white_error_bound(double c_phi, double c_0, const IndexFunction& phi,
                         const IllposednessProfile& profile, double delta, double alpha);

// sqrt(2) max{C_phi, C_0 + 1} phi(alpha*), valid at the white-noise choice.
double white_error_bound_at_choice(double c_phi, double c_0, const IndexFunction& phi,
                                   double alpha_star);

}  // namespace specreg
