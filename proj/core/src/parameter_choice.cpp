#include "specreg/parameter_choice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "specreg/errors.hpp"
#include "specreg/measure.hpp"

namespace specreg {

namespace {

constexpr std::size_t kMonotoneSamples = 64;

AlphaBracket clip(AlphaBracket bracket, const IndexFunction& phi) {
  bracket.lo = std::max(bracket.lo, phi.domain_lo());
  // Open right end for domains such as (0, 1) of log-power functions.
  bracket.hi = std::min(bracket.hi, phi.domain_hi() * (1.0 - 1e-12));
  if (!(bracket.lo > 0.0) || !(bracket.lo < bracket.hi)) {
    throw PreconditionFailed("empty alpha bracket");
  }
  return bracket;
}

double solve_increasing(const std::function<double(double)>& map, double target,
                        AlphaBracket bracket, const char* what) {
  const auto samples = log_grid(bracket.lo, bracket.hi, kMonotoneSamples);
  double previous = -std::numeric_limits<double>::infinity();
  for (double a : samples) {
    const double m = map(a);
    if (!(m > previous) && !(std::isinf(m) && std::isinf(previous) && m > 0.0)) {
      std::ostringstream os;
      os << what << " is not strictly increasing near alpha = " << a;
      throw PreconditionFailed(os.str());
    }
    previous = m;
  }
  const double at_lo = map(bracket.lo);
  const double at_hi = map(bracket.hi);
  if (!(target >= at_lo && target <= at_hi)) {
    std::ostringstream os;
    os << "target " << target << " outside [" << at_lo << ", " << at_hi << "] of " << what
       << " on [" << bracket.lo << ", " << bracket.hi << "]";
    throw BracketingFailed(os.str());
  }
  auto f = [&](double log_alpha) {
    const double m = map(std::exp(log_alpha));
    return std::isinf(m) ? 1.0 : m - target;
  };
  auto tol = [](double a, double b) { return std::abs(a - b) <= kAlphaTolerance; };
  const auto [a, b] =
      boost::math::tools::bisect(f, std::log(bracket.lo), std::log(bracket.hi), tol);
  return std::exp(0.5 * (a + b));
}

void check_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw PreconditionFailed("noise level must be positive");
  }
}

}  // namespace

double choose_alpha_deterministic(const IndexFunction& phi, double delta, AlphaBracket bracket) {
  check_delta(delta);
  bracket = clip(bracket, phi);
  return solve_increasing([&](double a) { return a * phi(a); }, delta, bracket,
                          "alpha phi(alpha)");
}

double choose_alpha_white(const IndexFunction& phi, const IllposednessProfile& profile,
                          double delta, AlphaBracket bracket) {
  check_delta(delta);
  if (!profile.finite) {
    throw DivergentProfile("effective ill-posedness is not finite");
  }
  bracket = clip(bracket, phi);
  auto map = [&](double a) {
    const double d = profile.at(a);
    return d > 0.0 ? phi(a) / d : std::numeric_limits<double>::infinity();
  };
  return solve_increasing(map, delta, bracket, "phi(alpha) / D(alpha)");
}

double deterministic_error_bound(double c_phi, double c_minus1, const IndexFunction& phi,
                                 double delta, double alpha) {
  return c_phi * phi(alpha) + c_minus1 * delta / alpha;
}

double deterministic_error_bound_at_choice(double c_phi, double c_minus1,
                                           const IndexFunction& phi, double alpha_star) {
  return 2.0 * std::max(c_phi, c_minus1) * phi(alpha_star);
}

double white_error_bound(double c_phi, double c_0, const IndexFunction& phi,
                         const IllposednessProfile& profile, double delta, double alpha) {
  const double bias = c_phi * phi(alpha);
  const double noise = delta * (c_0 + 1.0) * profile.at(alpha);
  return std::sqrt(bias * bias + noise * noise);
}

double white_error_bound_at_choice(double c_phi, double c_0, const IndexFunction& phi,
                                   double alpha_star) {
  return std::sqrt(2.0) * std::max(c_phi, c_0 + 1.0) * phi(alpha_star);
}

}  // namespace specreg
