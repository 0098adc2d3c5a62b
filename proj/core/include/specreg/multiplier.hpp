#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "specreg/index_function.hpp"
#include "specreg/measure.hpp"

namespace specreg {

// b(s) = 1 / (1 + |s|^(1/kappa))
struct PowerDecay {
  double kappa;
};

// b(s) = |s|^kappa, meant for bounded intervals.
struct PurePower {
  double kappa;
};

// b(s) = exp(-c^2 tau |s|^2), the heat multiplier in frequency space.
struct GaussianFrequency {
  double c;
  double tau;
  int dimension = 1;
};

// b(n) = exp(-c^2 lambda_n^p tau) on the counting measure, with p = 2 by
// default; entries past the eigenvalue list evaluate to 0.
struct ExponentialSequence {
  double c;
  double tau;
  std::vector<double> eigenvalues;
  double eigen_exponent = 2.0;
};

// b = 0 on s < 0, b = s on [0, 1], b = 1 on s > 1.
struct PlateauCounterexample {};

enum class Orientation { increasing_right, increasing_left };

// One zero of a piecewise monotone multiplier: on the side given by the
// orientation, b(s) = profile(|s - zero_location|) for |s - zero_location| <= radius.
struct MonotonePiece {
  double zero_location;
  Orientation orientation;
  IndexFunction profile;
  double radius;
};

// The part of a piecewise monotone multiplier away from its zeros.
struct BackgroundPart {
  double essential_infimum;
  std::function<double(double)> evaluator;
  double supremum = 1.0;
};

struct PiecewiseMonotone {
  std::vector<MonotonePiece> pieces;
  BackgroundPart background;
};

// Values at given nodes, linearly interpolated in between. Outside the
// tabulated range the value is 0 when the tail is declared vanishing and the
// nearest end value otherwise.
struct Tabulated {
  std::vector<double> nodes;
  std::vector<double> values;
  bool tail_vanishes = true;
};

struct CustomMultiplier {
  std::string label;
  std::function<double(double)> evaluator;
  double sup;
  bool tail_vanishes = true;
};

// The function b of the multiplication equation g = b f + delta xi.
class Multiplier {
 public:
  using Family = std::variant<PowerDecay, PurePower, GaussianFrequency, ExponentialSequence,
                              PlateauCounterexample, PiecewiseMonotone, Tabulated,
                              CustomMultiplier>;

  static Multiplier power_decay(double kappa);
  static Multiplier pure_power(double kappa, double interval_hi = 1.0);
  static Multiplier gaussian_frequency(double c, double tau, int dimension = 1);
  static Multiplier exponential_sequence(double c, double tau, std::vector<double> eigenvalues,
                                         double eigen_exponent = 2.0);
  static Multiplier plateau_counterexample();
  static Multiplier piecewise_monotone(std::vector<MonotonePiece> pieces,
                                       BackgroundPart background);
  static Multiplier tabulated(std::vector<double> nodes, std::vector<double> values,
                              bool tail_vanishes = true);
  // Tabulated multiplier aligned with the nodes of a space.
  static Multiplier tabulated(const MeasureSpace& space, std::vector<double> values,
                              bool tail_vanishes = true);
  static Multiplier custom(std::string label, std::function<double(double)> evaluator,
                           double sup, bool tail_vanishes = true);

  double operator()(double s) const;

  // b at every node of the space.
  std::vector<double> values_on(const MeasureSpace& space) const;

  // The declared bound b-bar with b <= b-bar.
  double sup_bound() const noexcept { return sup_; }

  const Family& family() const noexcept { return family_; }
  std::string describe() const;

 private:
  Multiplier(Family family, double sup) : family_(std::move(family)), sup_(sup) {}

  Family family_;
  double sup_;
};

}  // namespace specreg
