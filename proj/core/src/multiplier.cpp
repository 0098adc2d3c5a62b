#include "specreg/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "specreg/errors.hpp"

namespace specreg {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double piecewise_value(const PiecewiseMonotone& b, double s) {
  for (const auto& piece : b.pieces) {
    const double offset = piece.orientation == Orientation::increasing_right
                              ? s - piece.zero_location
                              : piece.zero_location - s;
    if (offset >= 0.0 && offset <= piece.radius) {
      return piece.profile(offset);
    }
  }
  return b.background.evaluator(s);
}

double tabulated_value(const Tabulated& b, double s) {
  const auto& xs = b.nodes;
  if (s < xs.front() || s > xs.back()) {
    if (b.tail_vanishes) {
      return 0.0;
    }
    return s < xs.front() ? b.values.front() : b.values.back();
  }
  const auto it = std::lower_bound(xs.begin(), xs.end(), s);
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  if (xs[hi] == s || hi == 0) {
    return b.values[hi];
  }
  const std::size_t lo = hi - 1;
  const double w = (s - xs[lo]) / (xs[hi] - xs[lo]);
  return b.values[lo] + w * (b.values[hi] - b.values[lo]);
}

}  // namespace

Multiplier Multiplier::power_decay(double kappa) {
  if (!(kappa > 0.0)) {
    throw PreconditionFailed("power_decay needs kappa > 0");
  }
  return Multiplier(PowerDecay{kappa}, 1.0);
}

Multiplier Multiplier::pure_power(double kappa, double interval_hi) {
  if (!(kappa > 0.0) || !(interval_hi > 0.0)) {
    throw PreconditionFailed("pure_power needs kappa > 0 and a bounded interval");
  }
  return Multiplier(PurePower{kappa}, std::pow(interval_hi, kappa));
}

Multiplier Multiplier::gaussian_frequency(double c, double tau, int dimension) {
  if (!(c > 0.0) || !(tau > 0.0) || dimension < 1) {
    throw PreconditionFailed("gaussian_frequency needs c, tau > 0 and d >= 1");
  }
  return Multiplier(GaussianFrequency{c, tau, dimension}, 1.0);
}

Multiplier Multiplier::exponential_sequence(double c, double tau, std::vector<double> eigenvalues,
                                            double eigen_exponent) {
  if (!(c > 0.0) || !(tau > 0.0) || eigenvalues.empty()) {
    throw PreconditionFailed("exponential_sequence needs c, tau > 0 and eigenvalues");
  }
  double sup = 0.0;
  for (double lambda : eigenvalues) {
    if (!(lambda >= 0.0)) {
      throw PreconditionFailed("eigenvalues must be nonnegative");
    }
    sup = std::max(sup, std::exp(-c * c * std::pow(lambda, eigen_exponent) * tau));
  }
  return Multiplier(ExponentialSequence{c, tau, std::move(eigenvalues), eigen_exponent}, sup);
}

Multiplier Multiplier::plateau_counterexample() {
  return Multiplier(PlateauCounterexample{}, 1.0);
}

Multiplier Multiplier::piecewise_monotone(std::vector<MonotonePiece> pieces,
                                          BackgroundPart background) {
  if (pieces.empty()) {
    throw PreconditionFailed("piecewise_monotone needs at least one piece");
  }
  if (!(background.essential_infimum > 0.0) || !background.evaluator ||
      !(background.supremum >= background.essential_infimum)) {
    throw PreconditionFailed("background part needs 0 < essinf <= sup");
  }
  double sup = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    if (!(p.radius > 0.0)) {
      throw PreconditionFailed("monotone piece needs a positive neighborhood radius");
    }
    if (p.profile(0.0) != 0.0) {
      throw PreconditionFailed("monotone piece profile must vanish at 0");
    }
    sup = std::max(sup, p.profile(p.radius));
    for (std::size_t j = 0; j < i; ++j) {
      if (pieces[j].zero_location == p.zero_location) {
        throw PreconditionFailed("zero locations of monotone pieces must be distinct");
      }
      // Supports as closed intervals must be disjoint.
      auto support = [](const MonotonePiece& q) {
        return q.orientation == Orientation::increasing_right
                   ? std::pair{q.zero_location, q.zero_location + q.radius}
                   : std::pair{q.zero_location - q.radius, q.zero_location};
      };
      const auto [a0, a1] = support(p);
      const auto [b0, b1] = support(pieces[j]);
      if (a0 <= b1 && b0 <= a1) {
        throw PreconditionFailed("supports of monotone pieces overlap");
      }
    }
  }
  sup = std::max(sup, background.supremum);
  return Multiplier(PiecewiseMonotone{std::move(pieces), std::move(background)}, sup);
}

Multiplier Multiplier::tabulated(std::vector<double> nodes, std::vector<double> values,
                                 bool tail_vanishes) {
  if (nodes.empty() || nodes.size() != values.size()) {
    throw PreconditionFailed("tabulated multiplier needs matching nodes and values");
  }
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i] > nodes[i - 1])) {
      throw PreconditionFailed("tabulated multiplier nodes must be strictly increasing");
    }
  }
  double sup = 0.0;
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw PreconditionFailed("tabulated multiplier values must be finite and nonnegative");
    }
    sup = std::max(sup, v);
  }
  return Multiplier(Tabulated{std::move(nodes), std::move(values), tail_vanishes}, sup);
}

Multiplier Multiplier::tabulated(const MeasureSpace& space, std::vector<double> values,
                                 bool tail_vanishes) {
  const auto nodes = space.nodes();
  return tabulated(std::vector<double>(nodes.begin(), nodes.end()), std::move(values),
                   tail_vanishes);
}

Multiplier Multiplier::custom(std::string label, std::function<double(double)> evaluator,
                              double sup, bool tail_vanishes) {
  if (!evaluator || !(sup > 0.0)) {
    throw PreconditionFailed("custom multiplier needs an evaluator and a positive sup");
  }
  return Multiplier(CustomMultiplier{std::move(label), std::move(evaluator), sup, tail_vanishes},
                    sup);
}

double Multiplier::operator()(double s) const {
  return std::visit(
      Overloaded{
          [s](const PowerDecay& b) { return 1.0 / (1.0 + std::pow(std::abs(s), 1.0 / b.kappa)); },
          [s](const PurePower& b) { return std::pow(std::abs(s), b.kappa); },
          [s](const GaussianFrequency& b) { return std::exp(-b.c * b.c * b.tau * s * s); },
          [s](const ExponentialSequence& b) {
            const double index = std::round(s);
            if (index < 1.0 || index > static_cast<double>(b.eigenvalues.size())) {
              return 0.0;
            }
            const double lambda = b.eigenvalues[static_cast<std::size_t>(index) - 1];
            return std::exp(-b.c * b.c * std::pow(lambda, b.eigen_exponent) * b.tau);
          },
          [s](const PlateauCounterexample&) { return s < 0.0 ? 0.0 : (s <= 1.0 ? s : 1.0); },
          [s](const PiecewiseMonotone& b) { return piecewise_value(b, s); },
          [s](const Tabulated& b) { return tabulated_value(b, s); },
          [s](const CustomMultiplier& b) { return b.evaluator(s); },
      },
      family_);
}

std::vector<double> Multiplier::values_on(const MeasureSpace& space) const {
  const auto nodes = space.nodes();
  if (const auto* table = std::get_if<Tabulated>(&family_)) {
    if (table->nodes.size() == nodes.size() &&
        std::equal(nodes.begin(), nodes.end(), table->nodes.begin())) {
      return table->values;
    }
  }
  std::vector<double> out(nodes.size());
  std::transform(nodes.begin(), nodes.end(), out.begin(), [this](double s) { return (*this)(s); });
  return out;
}

std::string Multiplier::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&os](const PowerDecay& b) { os << "power_decay(kappa=" << b.kappa << ")"; },
                 [&os](const PurePower& b) { os << "pure_power(kappa=" << b.kappa << ")"; },
                 [&os](const GaussianFrequency& b) {
                   os << "gaussian_frequency(c=" << b.c << ",tau=" << b.tau
                      << ",d=" << b.dimension << ")";
                 },
                 [&os](const ExponentialSequence& b) {
                   os << "exponential_sequence(c=" << b.c << ",tau=" << b.tau
                      << ",modes=" << b.eigenvalues.size() << ")";
                 },
                 [&os](const PlateauCounterexample&) { os << "plateau_counterexample"; },
                 [&os](const PiecewiseMonotone& b) {
                   os << "piecewise_monotone(m=" << b.pieces.size() << ")";
                 },
                 [&os](const Tabulated& b) { os << "tabulated(n=" << b.nodes.size() << ")"; },
                 [&os](const CustomMultiplier& b) { os << "custom(" << b.label << ")"; },
             },
             family_);
  return os.str();
}

}  // namespace specreg
