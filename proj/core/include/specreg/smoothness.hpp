#pragma once

#include <span>
#include <vector>

#include "specreg/index_function.hpp"
#include "specreg/measure.hpp"
#include "specreg/multiplier.hpp"

namespace specreg {

// f = phi(b) v with ||v|| <= norm_bound.
struct SourceCondition {
  IndexFunction phi;
  std::vector<double> source_element;
  double norm;
  double norm_bound;
};

// Weighted Sobolev-type norm (int |f|^2 (1 + |s|^2)^p dmu)^{1/2}.
struct SobolevSmoothness {
  double p;
  double norm;
};

SobolevSmoothness sobolev_norm(std::span<const double> f, const MeasureSpace& space, double p);

// Band constant for the asymptotic equivalence mu({b > b(s)}) ~ |s|.
inline constexpr double kEquivalenceBand = 10.0;

// phi_*(t) = 1 / mu({b > t}), tabulated on a log grid over
// [smallest positive node value of b, b-bar / 2]. Checks that
// |s| phi_*(b(s)) stays inside [1/K, K] on the outer half of the nodes.
// Throws PreconditionFailed naming the violated hypothesis.
IndexFunction phi_star(const Multiplier& b, const MeasureSpace& space,
                       double band = kEquivalenceBand);

// v = f / phi(b) nodewise; throws NotInSourceSet(norm) when ||v|| exceeds
// the bound.
SourceCondition make_source(std::span<const double> f, const Multiplier& b,
                            const MeasureSpace& space, const IndexFunction& phi,
                            double norm_bound = 1.0);

struct SobolevEquivalence {
  double lower;   // inf over |s| >= radius of (1 + s^2) phi_*(b(s))^2
  double upper;   // sup of the same
  double p;
  double radius;  // inner radius M where b(M) = b-bar / 2
  IndexFunction phi_star;

  // Scale c with: ||f||_p <= rho  implies  f = c phi_*^p(b) v, ||v|| <= 1,
  // namely c = rho * lower^{-p/2}.
  double source_scale(double sobolev_norm) const;

  // Bound ||f||_p <= upper^{p/2} ||v|| for f = phi_*^p(b) v.
  double sobolev_bound(double source_norm) const;
};

// Empirical inf/sup of (1 + s^2) phi_*(b(s))^2 over nodes with |s| >= M.
// Throws UnboundedRatio when doubling the truncation radius moves either
// end of the band by more than 10%.
SobolevEquivalence sobolev_equivalence_check(const Multiplier& b, const MeasureSpace& space,
                                             double p);

}  // namespace specreg
