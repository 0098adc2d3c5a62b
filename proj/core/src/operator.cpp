#include "specreg/operator.hpp"

#include <algorithm>

#include "specreg/errors.hpp"

namespace specreg {

MultiplicationOperator::MultiplicationOperator(Multiplier multiplier, MeasureSpace space)
    : multiplier_(std::move(multiplier)),
      space_(std::move(space)),
      values_(multiplier_.values_on(space_)),
      sup_(multiplier_.sup_bound()) {
  for (double v : values_) {
    if (!(v >= 0.0)) {
      throw PreconditionFailed("multiplier must be nonnegative at every node");
    }
    sup_ = std::max(sup_, v);
  }
}

std::vector<double> MultiplicationOperator::apply(std::span<const double> f) const {
  if (f.size() != values_.size()) {
    throw PreconditionFailed("function length does not match the discretization");
  }
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i] = values_[i] * f[i];
  }
  return out;
}

}  // namespace specreg
