#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specreg/index_function.hpp"

namespace specreg {

// A regularization family Phi_alpha(t) approximating 1/t, with residual
// R_alpha(t) = 1 - t Phi_alpha(t) and constants
//   |Phi_alpha(t)| <= C_{-1} / alpha,   |R_alpha(t)| <= C_0.
class Scheme {
 public:
  using Filter = std::function<double(double alpha, double t)>;

  // `residual`, when given, must equal 1 - t phi in exact arithmetic; it
  // avoids the cancellation of the generic form where phi = 1/t.
  Scheme(std::string name, Filter phi, double c_minus1, double c_0, bool truncated,
         std::shared_ptr<const Scheme> parent = nullptr, Filter residual = {});

  double phi(double alpha, double t) const { return (*phi_)(alpha, t); }
  double residual(double alpha, double t) const {
    return residual_ ? (*residual_)(alpha, t) : 1.0 - t * phi(alpha, t);
  }

  const std::string& name() const noexcept { return name_; }
  double c_minus1() const noexcept { return c_minus1_; }
  double c_0() const noexcept { return c_0_; }

  // Phi_alpha vanishes on [0, alpha].
  bool truncated() const noexcept { return truncated_; }

  // The scheme this one was truncated from, if any.
  const std::shared_ptr<const Scheme>& parent() const noexcept { return parent_; }

 private:
  std::string name_;
  std::shared_ptr<const Filter> phi_;
  std::shared_ptr<const Filter> residual_;
  double c_minus1_;
  double c_0_;
  bool truncated_;
  std::shared_ptr<const Scheme> parent_;
};

// Phi = 1/t above alpha, 0 below.
Scheme spectral_cutoff();

// Phi = 1/(t + alpha).
Scheme lavrentiev();

// Phi = t/(alpha + t^2), the Wiener/Tikhonov filter for real b.
Scheme tikhonov_wiener();

// chi_(alpha, inf)(t) Phi_alpha(t), same constants. Idempotent.
Scheme truncate(const Scheme& scheme);

// "cutoff" | "lavrentiev" | "tikhonov" | "truncated:<name>"
Scheme scheme_by_name(std::string_view name);

// ---------------------------------------------------------------------------
// Certification

struct ProbeGrid {
  std::vector<double> alpha;
  std::vector<double> t;
};

// alpha log-spaced on [1e-6, 1] (64 points), t log-spaced on [1e-8, t_max]
// (512 points).
ProbeGrid default_probe_grid(double t_max = 1.0);

struct AxiomViolation {
  int item;  // 1, 2 or 3
  double alpha;
  double t;
  double value;
};

struct AxiomReport {
  bool passed = true;
  std::optional<AxiomViolation> violation;

  explicit operator bool() const noexcept { return passed; }
};

// Smallest t at which the limit t Phi_alpha(t) -> 1 is probed; below it the
// finite alpha sequence cannot resolve the limit for the built-in schemes.
inline constexpr double kLimitProbeFloor = 1e-3;

// Checks the three regularization axioms on the grids: the limit along
// alpha_n = 2^-n down to 2^-30 (tolerance 1e-3, t >= kLimitProbeFloor), and
// the C_{-1}, C_0 bounds as grid suprema.
AxiomReport certify_axioms(const Scheme& scheme, const ProbeGrid& grid);

struct QualificationCertificate {
  std::string scheme;
  std::string index_function;
  double c_phi = 0.0;
  double c_phi_refined = 0.0;
  bool passed = false;
  // For truncated schemes with a parent: max{C_phi(parent), C_0}.
  std::optional<double> transfer_bound;
  ProbeGrid grid;
};

// Estimates C_phi = max_alpha sup_t |R_alpha(t)| phi(t) / phi(alpha) and
// repeats on a refined grid (alpha extended one decade down, doubled t
// density); passes when finite and the refined estimate grows by at most 10%.
QualificationCertificate certify_qualification(const Scheme& scheme, const IndexFunction& phi,
                                               const ProbeGrid& grid);

}  // namespace specreg
