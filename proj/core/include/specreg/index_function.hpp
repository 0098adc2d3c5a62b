#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace specreg {

// Strictly increasing continuous phi with phi(0+) = 0, used both as a
// smoothness measure (source conditions) and as a qualification.
class IndexFunction {
 public:
  enum class Family { power, log_power, reciprocal_measure, custom };

  // scale * t^nu
  static IndexFunction power(double nu, double scale = 1.0);

  // t^nu * log(1/t)^(-beta), defined on (0, 1).
  static IndexFunction log_power(double nu, double beta);

  // Log-linear interpolation of a strictly increasing positive table.
  // Evaluation outside [t.front(), t.back()] throws.
  static IndexFunction table(std::vector<double> t, std::vector<double> values,
                             Family family = Family::custom, std::string name = "table");

  static IndexFunction from_function(std::string name, std::function<double(double)> eval,
                                     double domain_hi = 1e300,
                                     std::function<double(double)> inverse = {});

  double operator()(double t) const;

  // phi^{-1}(y); closed form for power, bisection in log t otherwise.
  double inverse(double y) const;

  // t -> phi(t * factor)
  IndexFunction with_argument_scale(double factor) const;

  // t -> phi(t)^p
  IndexFunction pow(double p) const;

  // t -> c * phi(t)
  IndexFunction scaled(double c) const;

  Family family() const noexcept { return family_; }
  const std::string& name() const noexcept { return name_; }
  double domain_lo() const noexcept { return domain_lo_; }
  double domain_hi() const noexcept { return domain_hi_; }

  // Exponent of the power family (0 for other families).
  double exponent() const noexcept { return nu_; }

 private:
  IndexFunction() = default;

  Family family_ = Family::custom;
  std::string name_;
  double nu_ = 0.0;
  double domain_lo_ = 0.0;
  double domain_hi_ = 1e300;
  std::shared_ptr<const std::function<double(double)>> eval_;
  std::shared_ptr<const std::function<double(double)>> inverse_;
};

// Probe-based check: strictly increasing on a log grid inside the domain and
// decreasing towards 0 along t = 10^-k.
bool is_index_function(const IndexFunction& phi);

}  // namespace specreg
