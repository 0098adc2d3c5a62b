#include "specreg/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specreg/errors.hpp"
#include "specreg/rearrangement.hpp"

namespace specreg {

namespace {

constexpr std::size_t kTablePoints = 256;

void require_phi_star_hypotheses(const Multiplier& b, const MeasureSpace& space) {
  if (!space.is_infinite()) {
    throw PreconditionFailed("phi_star needs mu(S) = infinity");
  }
  if (!vanishes_at_infinity(b, space)) {
    throw PreconditionFailed("phi_star needs b to vanish at infinity");
  }
}

double smallest_positive(std::span<const double> values) {
  double lo = std::numeric_limits<double>::infinity();
  for (double v : values) {
    if (v > 0.0) {
      lo = std::min(lo, v);
    }
  }
  return lo;
}

struct Band {
  double lower;
  double upper;
};

Band equivalence_band(const Multiplier& b, const MeasureSpace& space, const IndexFunction& star,
                      double radius) {
  Band band{std::numeric_limits<double>::infinity(), 0.0};
  const auto nodes = space.nodes();
  const auto values = b.values_on(space);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double s = std::abs(nodes[i]);
    if (s < radius || values[i] < star.domain_lo() || values[i] > star.domain_hi()) {
      continue;
    }
    const double v = star(values[i]);
    const double ratio = (1.0 + s * s) * v * v;
    band.lower = std::min(band.lower, ratio);
    band.upper = std::max(band.upper, ratio);
  }
  return band;
}

}  // namespace

SobolevSmoothness sobolev_norm(std::span<const double> f, const MeasureSpace& space, double p) {
  if (!(p > 0.0)) {
    throw PreconditionFailed("Sobolev smoothness needs p > 0");
  }
  const auto nodes = space.nodes();
  const auto weights = space.weights();
  if (f.size() != nodes.size()) {
    throw PreconditionFailed("function length does not match the discretization");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    sum += weights[i] * f[i] * f[i] * std::pow(1.0 + nodes[i] * nodes[i], p);
  }
  return SobolevSmoothness{p, std::sqrt(sum)};
}

IndexFunction phi_star(const Multiplier& b, const MeasureSpace& space, double band) {
  require_phi_star_hypotheses(b, space);
  const auto values = b.values_on(space);
  const auto nodes = space.nodes();

  // b >= c > 0 on an inner ball.
  double inner_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (std::abs(nodes[i]) <= 0.5 * space.truncation_radius()) {
      inner_min = std::min(inner_min, values[i]);
    }
  }
  if (!(inner_min > 0.0)) {
    throw PreconditionFailed("phi_star needs b bounded below by c > 0 near the origin");
  }

  const double t_lo = smallest_positive(values);
  const double t_hi = 0.5 * b.sup_bound();
  if (!(t_lo < t_hi)) {
    throw PreconditionFailed("phi_star needs b to reach below b-bar / 2 on the grid");
  }
  const auto ts = log_grid(t_lo, t_hi, kTablePoints);
  std::vector<double> table(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double d = distribution_function(b, space, ts[i]);
    if (!std::isfinite(d) || !(d > 0.0)) {
      throw PreconditionFailed("phi_star needs finite positive superlevel measures");
    }
    table[i] = 1.0 / d;
  }
  // Distinct levels can share a superlevel set on coarse data; keep the
  // strictly increasing subsequence.
  std::vector<double> t_strict;
  std::vector<double> v_strict;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (v_strict.empty() || table[i] > v_strict.back()) {
      t_strict.push_back(ts[i]);
      v_strict.push_back(table[i]);
    }
  }
  auto star = IndexFunction::table(std::move(t_strict), std::move(v_strict),
                                   IndexFunction::Family::reciprocal_measure, "phi_star");

  // |s| phi_*(b(s)) must stay in [1/K, K] on the outer half.
  const double outer = 0.5 * space.truncation_radius();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double s = std::abs(nodes[i]);
    if (s < outer || values[i] < star.domain_lo() || values[i] > star.domain_hi()) {
      continue;
    }
    const double ratio = s * star(values[i]);
    if (ratio < 1.0 / band || ratio > band) {
      throw PreconditionFailed("phi_star needs mu({b > b(s)}) ~ |s| (ratio " +
                               std::to_string(ratio) + " at s = " + std::to_string(s) + ")");
    }
  }
  return star;
}

SourceCondition make_source(std::span<const double> f, const Multiplier& b,
                            const MeasureSpace& space, const IndexFunction& phi,
                            double norm_bound) {
  if (f.size() != space.size()) {
    throw PreconditionFailed("function length does not match the discretization");
  }
  const auto values = b.values_on(space);
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0.0) {
      v[i] = 0.0;
      continue;
    }
    const double scale = phi(values[i]);
    if (scale == 0.0) {
      throw NotInSourceSet(std::numeric_limits<double>::infinity(), norm_bound);
    } else {
      v[i] = f[i] / scale;
    }
  }
  const double norm = weighted_norm(v, space.weights());
  if (norm > norm_bound + 1e-12) {
    throw NotInSourceSet(norm, norm_bound);
  }
  return SourceCondition{phi, std::move(v), norm, norm_bound};
}

double SobolevEquivalence::source_scale(double sobolev_norm) const {
  return sobolev_norm * std::pow(lower, -0.5 * p);
}

double SobolevEquivalence::sobolev_bound(double source_norm) const {
  return std::pow(upper, 0.5 * p) * source_norm;
}

SobolevEquivalence sobolev_equivalence_check(const Multiplier& b, const MeasureSpace& space,
                                             double p) {
  if (!(p > 0.0)) {
    throw PreconditionFailed("Sobolev equivalence needs p > 0");
  }
  require_phi_star_hypotheses(b, space);
  const auto star = phi_star(b, space);

  // Inner radius: smallest |s| with b(s) <= b-bar / 2, i.e. where phi_* is
  // defined.
  const auto nodes = space.nodes();
  const auto values = b.values_on(space);
  double radius = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (values[i] <= star.domain_hi()) {
      radius = std::min(radius, std::abs(nodes[i]));
    }
  }
  const Band band = equivalence_band(b, space, star, radius);
  if (!(band.lower > 0.0) || !std::isfinite(band.upper)) {
    throw UnboundedRatio("equivalence ratio is not positive and finite");
  }

  const auto wide = space.extended(2);
  const auto wide_star = phi_star(b, wide);
  const Band wide_band = equivalence_band(b, wide, wide_star, radius);
  if (wide_band.upper > 1.1 * band.upper || wide_band.lower < band.lower / 1.1) {
    throw UnboundedRatio("equivalence ratio does not stabilize under grid extension");
  }
  return SobolevEquivalence{band.lower, band.upper, p, radius, star};
}

}  // namespace specreg
