#include "specreg/index_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "specreg/errors.hpp"
#include "specreg/measure.hpp"

namespace specreg {

namespace {

std::string format_number(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

IndexFunction IndexFunction::power(double nu, double scale) {
  if (!(nu > 0.0) || !(scale > 0.0)) {
    throw PreconditionFailed("power index function needs nu > 0 and scale > 0");
  }
  IndexFunction phi;
  phi.family_ = Family::power;
  phi.nu_ = nu;
  phi.name_ = "power(" + format_number(nu) + ")";
  if (scale != 1.0) {
    phi.name_ = format_number(scale) + "*" + phi.name_;
  }
  phi.eval_ = std::make_shared<const std::function<double(double)>>(
      [nu, scale](double t) { return scale * std::pow(t, nu); });
  phi.inverse_ = std::make_shared<const std::function<double(double)>>(
      [nu, scale](double y) { return std::pow(y / scale, 1.0 / nu); });
  return phi;
}

IndexFunction IndexFunction::log_power(double nu, double beta) {
  if (!(nu > 0.0)) {
    throw PreconditionFailed("log_power index function needs nu > 0");
  }
  IndexFunction phi;
  phi.family_ = Family::log_power;
  phi.nu_ = 0.0;
  phi.name_ = "log_power(" + format_number(nu) + "," + format_number(beta) + ")";
  // For beta < 0 the function is increasing only below exp(beta/nu).
  phi.domain_hi_ = beta >= 0.0 ? 1.0 : std::exp(beta / nu);
  phi.eval_ = std::make_shared<const std::function<double(double)>>([nu, beta](double t) {
    if (t <= 0.0) {
      return 0.0;
    }
    return std::pow(t, nu) * std::pow(std::log(1.0 / t), -beta);
  });
  return phi;
}

IndexFunction IndexFunction::table(std::vector<double> t, std::vector<double> values,
                                   Family family, std::string name) {
  if (t.size() < 2 || t.size() != values.size()) {
    throw PreconditionFailed("index table needs at least two matching points");
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0) || !(values[i] > 0.0)) {
      throw PreconditionFailed("index table entries must be positive");
    }
    if (i > 0 && (!(t[i] > t[i - 1]) || !(values[i] > values[i - 1]))) {
      throw PreconditionFailed("index table must be strictly increasing");
    }
  }
  std::vector<double> log_t(t.size());
  std::vector<double> log_v(t.size());
  std::transform(t.begin(), t.end(), log_t.begin(), [](double x) { return std::log(x); });
  std::transform(values.begin(), values.end(), log_v.begin(),
                 [](double x) { return std::log(x); });

  IndexFunction phi;
  phi.family_ = family;
  phi.name_ = std::move(name);
  phi.domain_lo_ = t.front();
  phi.domain_hi_ = t.back();
  auto interp = [](const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    hi = std::clamp<std::size_t>(hi, 1, xs.size() - 1);
    const std::size_t lo = hi - 1;
    const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + w * (ys[hi] - ys[lo]);
  };
  const double lo = t.front();
  const double hi = t.back();
  phi.eval_ = std::make_shared<const std::function<double(double)>>(
      [log_t, log_v, lo, hi, interp](double x) {
        if (x < lo * (1.0 - 1e-12) || x > hi * (1.0 + 1e-12)) {
          throw PreconditionFailed("index table queried outside its tabulated range");
        }
        return std::exp(interp(log_t, log_v, std::log(x)));
      });
  const double vlo = values.front();
  const double vhi = values.back();
  phi.inverse_ = std::make_shared<const std::function<double(double)>>(
      [log_t, log_v, vlo, vhi, interp](double y) {
        if (y < vlo * (1.0 - 1e-12) || y > vhi * (1.0 + 1e-12)) {
          throw PreconditionFailed("index table inverse queried outside its range");
        }
        return std::exp(interp(log_v, log_t, std::log(y)));
      });
  return phi;
}

IndexFunction IndexFunction::from_function(std::string name, std::function<double(double)> eval,
                                           double domain_hi,
                                           std::function<double(double)> inverse) {
  IndexFunction phi;
  phi.family_ = Family::custom;
  phi.name_ = std::move(name);
  phi.domain_hi_ = domain_hi;
  phi.eval_ = std::make_shared<const std::function<double(double)>>(std::move(eval));
  if (inverse) {
    phi.inverse_ = std::make_shared<const std::function<double(double)>>(std::move(inverse));
  }
  return phi;
}

double IndexFunction::operator()(double t) const {
  if (t <= 0.0) {
    return 0.0;
  }
  return (*eval_)(t);
}

double IndexFunction::inverse(double y) const {
  if (y <= 0.0) {
    return 0.0;
  }
  if (inverse_) {
    return (*inverse_)(y);
  }
  const double lo = std::max(domain_lo_, 1e-300);
  const double hi = std::min(domain_hi_, 1e300);
  if (y < (*this)(lo) || y > (*this)(hi)) {
    throw PreconditionFailed("index function inverse outside the attained range");
  }
  auto f = [this, y](double log_t) { return (*this)(std::exp(log_t)) - y; };
  boost::math::tools::eps_tolerance<double> tol(50);
  auto [a, b] = boost::math::tools::bisect(f, std::log(lo), std::log(hi), tol);
  return std::exp(0.5 * (a + b));
}

IndexFunction IndexFunction::with_argument_scale(double factor) const {
  if (!(factor > 0.0)) {
    throw PreconditionFailed("argument scale must be positive");
  }
  IndexFunction out = *this;
  out.family_ = family_ == Family::power ? Family::power : Family::custom;
  out.name_ = name_ + "(t*" + format_number(factor) + ")";
  out.domain_lo_ = domain_lo_ / factor;
  out.domain_hi_ = domain_hi_ / factor;
  auto base = eval_;
  out.eval_ = std::make_shared<const std::function<double(double)>>(
      [base, factor](double t) { return (*base)(t * factor); });
  if (inverse_) {
    auto inv = inverse_;
    out.inverse_ = std::make_shared<const std::function<double(double)>>(
        [inv, factor](double y) { return (*inv)(y) / factor; });
  }
  if (family_ != Family::power) {
    out.nu_ = 0.0;
  }
  return out;
}

IndexFunction IndexFunction::pow(double p) const {
  if (!(p > 0.0)) {
    throw PreconditionFailed("index function power must be positive");
  }
  IndexFunction out = *this;
  out.name_ = name_ + "^" + format_number(p);
  out.nu_ = nu_ * p;
  auto base = eval_;
  out.eval_ = std::make_shared<const std::function<double(double)>>(
      [base, p](double t) { return std::pow((*base)(t), p); });
  if (inverse_) {
    auto inv = inverse_;
    out.inverse_ = std::make_shared<const std::function<double(double)>>(
        [inv, p](double y) { return (*inv)(std::pow(y, 1.0 / p)); });
  }
  return out;
}

IndexFunction IndexFunction::scaled(double c) const {
  if (!(c > 0.0)) {
    throw PreconditionFailed("index function scale must be positive");
  }
  IndexFunction out = *this;
  out.name_ = format_number(c) + "*" + name_;
  auto base = eval_;
  out.eval_ = std::make_shared<const std::function<double(double)>>(
      [base, c](double t) { return c * (*base)(t); });
  if (inverse_) {
    auto inv = inverse_;
    out.inverse_ = std::make_shared<const std::function<double(double)>>(
        [inv, c](double y) { return (*inv)(y / c); });
  }
  return out;
}

bool is_index_function(const IndexFunction& phi) {
  const double lo = std::max(phi.domain_lo(), 1e-12);
  const double hi = std::min(phi.domain_hi(), 1.0) * (1.0 - 1e-9);
  if (!(hi > lo)) {
    return false;
  }
  const auto grid = log_grid(lo, hi, 256);
  double previous = -1.0;
  for (double t : grid) {
    const double v = phi(t);
    if (!std::isfinite(v) || v < 0.0 || !(v > previous)) {
      return false;
    }
    previous = v;
  }
  if (phi.domain_lo() > 0.0) {
    // Tabulated functions: the limit at 0+ is outside the table; monotone
    // decrease towards the lower end is all that can be probed.
    return true;
  }
  double last = phi(hi);
  for (int k = 1; k <= 12; ++k) {
    const double t = std::pow(10.0, -k);
    if (t >= hi) {
      continue;
    }
    const double v = phi(t);
    if (!(v < last)) {
      return false;
    }
    last = v;
  }
  return last >= 0.0;
}

}  // namespace specreg
