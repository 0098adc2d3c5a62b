#include "specreg/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specreg/errors.hpp"
#include "specreg/measure.hpp"

namespace specreg {

Scheme::Scheme(std::string name, Filter phi, double c_minus1, double c_0, bool truncated,
               std::shared_ptr<const Scheme> parent, Filter residual)
    : name_(std::move(name)),
      phi_(std::make_shared<const Filter>(std::move(phi))),
      residual_(residual ? std::make_shared<const Filter>(std::move(residual)) : nullptr),
      c_minus1_(c_minus1),
      c_0_(c_0),
      truncated_(truncated),
      parent_(std::move(parent)) {
  if (!(c_minus1_ > 0.0) || !(c_0_ >= 1.0)) {
    throw PreconditionFailed("scheme constants need C_-1 > 0 and C_0 >= 1");
  }
}

Scheme spectral_cutoff() {
  return Scheme(
      "cutoff", [](double alpha, double t) { return t > alpha ? 1.0 / t : 0.0; }, 1.0, 1.0, true,
      nullptr, [](double alpha, double t) { return t > alpha ? 0.0 : 1.0; });
}

Scheme lavrentiev() {
  return Scheme(
      "lavrentiev", [](double alpha, double t) { return 1.0 / (t + alpha); }, 1.0, 1.0, false,
      nullptr, [](double alpha, double t) { return alpha / (t + alpha); });
}

Scheme tikhonov_wiener() {
  return Scheme(
      "tikhonov", [](double alpha, double t) { return t / (alpha + t * t); }, 1.0, 1.0, false,
      nullptr, [](double alpha, double t) { return alpha / (alpha + t * t); });
}

Scheme truncate(const Scheme& scheme) {
  if (scheme.truncated()) {
    return scheme;
  }
  auto parent = std::make_shared<const Scheme>(scheme);
  return Scheme(
      "truncated:" + scheme.name(),
      [parent](double alpha, double t) { return t > alpha ? parent->phi(alpha, t) : 0.0; },
      scheme.c_minus1(), scheme.c_0(), true, parent,
      [parent](double alpha, double t) { return t > alpha ? parent->residual(alpha, t) : 1.0; });
}

Scheme scheme_by_name(std::string_view name) {
  constexpr std::string_view prefix = "truncated:";
  if (name.substr(0, prefix.size()) == prefix) {
    return truncate(scheme_by_name(name.substr(prefix.size())));
  }
  if (name == "cutoff") {
    return spectral_cutoff();
  }
  if (name == "lavrentiev") {
    return lavrentiev();
  }
  if (name == "tikhonov") {
    return tikhonov_wiener();
  }
  throw PreconditionFailed("unknown scheme '" + std::string(name) + "'");
}

ProbeGrid default_probe_grid(double t_max) {
  return ProbeGrid{log_grid(1e-6, 1.0, 64), log_grid(1e-8, t_max, 512)};
}

AxiomReport certify_axioms(const Scheme& scheme, const ProbeGrid& grid) {
  if (grid.alpha.empty() || grid.t.empty()) {
    throw PreconditionFailed("certification grids must be nonempty");
  }
  constexpr int kLimitSteps = 30;
  constexpr double kLimitTol = 1e-3;
  constexpr double kSlack = 1e-12;

  for (double t : grid.t) {
    if (!(t > 0.0)) {
      throw PreconditionFailed("certification t-grid must be positive");
    }
    if (t < kLimitProbeFloor) {
      continue;
    }
    double previous_gap = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= kLimitSteps; ++n) {
      const double alpha = std::ldexp(1.0, -n);
      const double gap = std::abs(1.0 - t * scheme.phi(alpha, t));
      if (gap > previous_gap + kSlack) {
        return AxiomReport{false, AxiomViolation{1, alpha, t, gap}};
      }
      previous_gap = gap;
    }
    if (previous_gap > kLimitTol) {
      return AxiomReport{false, AxiomViolation{1, std::ldexp(1.0, -kLimitSteps), t, previous_gap}};
    }
  }
  for (double alpha : grid.alpha) {
    for (double t : grid.t) {
      const double phi = std::abs(scheme.phi(alpha, t));
      if (alpha * phi > scheme.c_minus1() * (1.0 + kSlack)) {
        return AxiomReport{false, AxiomViolation{2, alpha, t, alpha * phi}};
      }
      const double r = std::abs(scheme.residual(alpha, t));
      if (r > scheme.c_0() * (1.0 + kSlack)) {
        return AxiomReport{false, AxiomViolation{3, alpha, t, r}};
      }
    }
  }
  return AxiomReport{};
}

namespace {

double estimate_qualification(const Scheme& scheme, const IndexFunction& phi,
                              const ProbeGrid& grid) {
  double best = 0.0;
  for (double alpha : grid.alpha) {
    const double phi_alpha = phi(alpha);
    // t = alpha is included explicitly: cut-off type residuals attain their
    // supremum there.
    double sup = std::abs(scheme.residual(alpha, alpha)) * phi_alpha;
    for (double t : grid.t) {
      sup = std::max(sup, std::abs(scheme.residual(alpha, t)) * phi(t));
    }
    best = std::max(best, sup / phi_alpha);
  }
  return best;
}

ProbeGrid refine(const ProbeGrid& grid) {
  const auto [a_lo, a_hi] = std::minmax_element(grid.alpha.begin(), grid.alpha.end());
  const auto [t_lo, t_hi] = std::minmax_element(grid.t.begin(), grid.t.end());
  const double alpha_decades = std::log10(*a_hi / *a_lo);
  const auto alpha_points =
      grid.alpha.size() < 2
          ? std::size_t{2}
          : grid.alpha.size() +
                static_cast<std::size_t>(std::ceil(static_cast<double>(grid.alpha.size() - 1) /
                                                   std::max(alpha_decades, 1.0)));
  return ProbeGrid{log_grid(*a_lo / 10.0, *a_hi, alpha_points),
                   log_grid(*t_lo / 10.0, *t_hi, 2 * grid.t.size())};
}

}  // namespace

QualificationCertificate certify_qualification(const Scheme& scheme, const IndexFunction& phi,
                                               const ProbeGrid& grid) {
  if (grid.alpha.empty() || grid.t.empty()) {
    throw PreconditionFailed("certification grids must be nonempty");
  }
  QualificationCertificate cert;
  cert.scheme = scheme.name();
  cert.index_function = phi.name();
  cert.grid = grid;
  cert.c_phi = estimate_qualification(scheme, phi, grid);
  cert.c_phi_refined = estimate_qualification(scheme, phi, refine(grid));
  cert.passed = std::isfinite(cert.c_phi) && std::isfinite(cert.c_phi_refined) &&
                cert.c_phi > 0.0 && cert.c_phi_refined <= 1.1 * cert.c_phi;
  if (scheme.truncated() && scheme.parent()) {
    const auto parent_cert = certify_qualification(*scheme.parent(), phi, grid);
    if (parent_cert.passed) {
      cert.transfer_bound = std::max(parent_cert.c_phi, scheme.c_0());
      cert.passed = cert.passed && cert.c_phi <= *cert.transfer_bound * (1.0 + 1e-12);
    }
  }
  return cert;
}

}  // namespace specreg
