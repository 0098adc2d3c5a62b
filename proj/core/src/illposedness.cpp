#include "specreg/illposedness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "specreg/errors.hpp"
#include "specreg/rearrangement.hpp"

namespace specreg {

namespace {

// int_0^len exp(-2 slope x) dx / v0^2 with slope = d(log v)/dx.
double log_linear_segment(double v0, double slope, double len) {
  const double a = -2.0 * slope * len;
  const double factor = std::abs(a) < 1e-12 ? len : len * std::expm1(a) / a;
  return factor / (v0 * v0);
}

class ProfileEvaluator {
 public:
  ProfileEvaluator(const MultiplicationOperator& op)
      : exact_sum_(op.space().kind() == MeasureKind::counting),
        op_(op),
        rearranged_(decreasing_rearrangement(op.multiplier(), op.space())) {
    const auto v = rearranged_.values();
    const auto k = rearranged_.knots();
    const std::size_t n = v.size();
    mid_.resize(n);
    domain_prefix_.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double w = k[i + 1] - k[i];
      mid_[i] = k[i] + 0.5 * w;
      domain_prefix_[i + 1] = domain_prefix_[i] + (v[i] > 0.0 ? w / (v[i] * v[i]) : 0.0);
    }
    // Cumulative integral of the interpolated b_*^{-2} up to each midpoint.
    curve_prefix_.assign(n, 0.0);
    if (n > 0 && v[0] > 0.0) {
      curve_prefix_[0] = mid_[0] / (v[0] * v[0]);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!(v[i + 1] > 0.0)) {
        curve_prefix_[i + 1] = curve_prefix_[i];
        continue;
      }
      const double len = mid_[i + 1] - mid_[i];
      const double slope = len > 0.0 ? std::log(v[i + 1] / v[i]) / len : 0.0;
      curve_prefix_[i + 1] = curve_prefix_[i] + log_linear_segment(v[i], slope, len);
    }
  }

  // Number of rearranged values strictly above alpha.
  std::size_t count_above(double alpha) const {
    const auto v = rearranged_.values();
    return static_cast<std::size_t>(
        std::lower_bound(v.begin(), v.end(), alpha, std::greater<>()) - v.begin());
  }

  double domain_side(double alpha) const { return std::sqrt(domain_prefix_[count_above(alpha)]); }

  double rearrangement_side(double alpha) const {
    const std::size_t m = count_above(alpha);
    if (m == 0) {
      return 0.0;
    }
    if (exact_sum_) {
      return std::sqrt(domain_prefix_[m]);
    }
    const auto v = rearranged_.values();
    const double v0 = v[m - 1];
    double sum = curve_prefix_[m - 1];
    if (m == v.size()) {
      sum += (rearranged_.total_measure() - mid_[m - 1]) / (v0 * v0);
      return std::sqrt(sum);
    }
    const double len = mid_[m] - mid_[m - 1];
    const double v1 = v[m];
    double crossing = 0.0;
    if (v1 > 0.0 && v1 < v0) {
      crossing = len * std::log(alpha / v0) / std::log(v1 / v0);
    } else if (v1 < v0) {
      crossing = len * (v0 - alpha) / v0;
    }
    if (crossing > 0.0) {
      const double slope = std::log(alpha / v0) / crossing;
      sum += log_linear_segment(v0, slope, crossing);
    }
    return std::sqrt(sum);
  }

  double lemma_bound(double alpha) const {
    return std::sqrt(distribution_function(op_.multiplier(), op_.space(), alpha)) / alpha;
  }

 private:
  bool exact_sum_;
  const MultiplicationOperator& op_;
  Rearrangement rearranged_;
  std::vector<double> mid_;
  std::vector<double> domain_prefix_;
  std::vector<double> curve_prefix_;
};

}  // namespace

IllposednessProfile IllposednessProfile::from_values(std::vector<double> alpha_grid,
                                                     std::vector<double> D_values) {
  if (alpha_grid.size() != D_values.size() || alpha_grid.size() < 2) {
    throw PreconditionFailed("profile needs matching grids with at least two points");
  }
  if (!std::is_sorted(alpha_grid.begin(), alpha_grid.end()) ||
      std::adjacent_find(alpha_grid.begin(), alpha_grid.end()) != alpha_grid.end()) {
    throw PreconditionFailed("alpha grid must be strictly increasing");
  }
  IllposednessProfile p;
  p.finite = std::all_of(D_values.begin(), D_values.end(),
                         [](double d) { return std::isfinite(d) && d >= 0.0; });
  p.alpha_grid = std::move(alpha_grid);
  p.D_domain = D_values;
  p.upper_bounds = D_values;
  p.D_values = std::move(D_values);
  return p;
}

double IllposednessProfile::at(double alpha) const {
  const auto& a = alpha_grid;
  const auto& d = D_values;
  const std::size_t n = a.size();
  std::size_t hi = static_cast<std::size_t>(std::upper_bound(a.begin(), a.end(), alpha) - a.begin());
  hi = std::clamp<std::size_t>(hi, 1, n - 1);
  const std::size_t lo = hi - 1;
  if (!(d[lo] > 0.0)) {
    return 0.0;
  }
  if (!(d[hi] > 0.0)) {
    return alpha <= a[hi] ? d[lo] : 0.0;
  }
  const double x = (std::log(alpha) - std::log(a[lo])) / (std::log(a[hi]) - std::log(a[lo]));
  return std::exp(std::log(d[lo]) + x * (std::log(d[hi]) - std::log(d[lo])));
}

IllposednessProfile effective_illposedness(const MultiplicationOperator& op,
                                           std::span<const double> alpha_grid) {
  std::vector<double> grid(alpha_grid.begin(), alpha_grid.end());
  if (grid.size() < 2 || !std::is_sorted(grid.begin(), grid.end()) ||
      std::adjacent_find(grid.begin(), grid.end()) != grid.end() || !(grid.front() > 0.0)) {
    throw PreconditionFailed("alpha grid must be positive, strictly increasing, length >= 2");
  }
  const ProfileEvaluator eval(op);
  IllposednessProfile p;
  p.alpha_grid = grid;
  for (double alpha : grid) {
    p.D_values.push_back(eval.rearrangement_side(alpha));
    p.D_domain.push_back(eval.domain_side(alpha));
    p.upper_bounds.push_back(eval.lemma_bound(alpha));
  }
  p.finite = std::all_of(p.D_values.begin(), p.D_values.end(),
                         [](double d) { return std::isfinite(d); });
  return p;
}

double effective_illposedness(const MultiplicationOperator& op, double alpha) {
  if (!(alpha > 0.0)) {
    throw PreconditionFailed("alpha must be positive");
  }
  return ProfileEvaluator(op).rearrangement_side(alpha);
}

}  // namespace specreg
