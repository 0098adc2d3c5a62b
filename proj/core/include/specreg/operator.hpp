#pragma once

#include <span>
#include <vector>

#include "specreg/measure.hpp"
#include "specreg/multiplier.hpp"

namespace specreg {

// The map f -> b f on the discretized space, with b cached at the nodes.
class MultiplicationOperator {
 public:
  MultiplicationOperator(Multiplier multiplier, MeasureSpace space);

  const Multiplier& multiplier() const noexcept { return multiplier_; }
  const MeasureSpace& space() const noexcept { return space_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> weights() const noexcept { return space_.weights(); }
  std::size_t size() const noexcept { return values_.size(); }

  // max(declared b-bar, largest node value).
  double sup_bound() const noexcept { return sup_; }

  std::vector<double> apply(std::span<const double> f) const;

  double norm(std::span<const double> f) const { return weighted_norm(f, weights()); }

 private:
  Multiplier multiplier_;
  MeasureSpace space_;
  std::vector<double> values_;
  double sup_;
};

}  // namespace specreg
