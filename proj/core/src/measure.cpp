#include "specreg/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "specreg/errors.hpp"

namespace specreg {

namespace {

// Relative size of the first cell of a geometrically graded interval.
constexpr double kGeometricFloor = 1e-10;

void fill_uniform(double lo, double hi, std::size_t n, std::vector<double>& nodes,
                  std::vector<double>& weights) {
  const double h = (hi - lo) / static_cast<double>(n);
  nodes.resize(n);
  weights.assign(n, h);
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i] = lo + (static_cast<double>(i) + 0.5) * h;
  }
}

}  // namespace

std::string to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::lebesgue_interval:
      return "lebesgue_interval";
    case MeasureKind::lebesgue_halfline:
      return "lebesgue_halfline";
    case MeasureKind::lebesgue_line:
      return "lebesgue_line";
    case MeasureKind::counting:
      return "counting";
  }
  return "unknown";
}

MeasureSpace MeasureSpace::interval(double lo, double hi, std::size_t n, GridKind grid) {
  if (!(hi > lo) || n == 0) {
    throw PreconditionFailed("interval needs lo < hi and at least one node");
  }
  MeasureSpace space;
  space.kind_ = MeasureKind::lebesgue_interval;
  space.grid_ = grid;
  space.lo_ = lo;
  space.hi_ = hi;
  if (grid == GridKind::uniform || n < 2) {
    fill_uniform(lo, hi, n, space.nodes_, space.weights_);
  } else {
    // Edges lo, lo + L*r0, ..., hi with geometric ratio between consecutive
    // interior edges.
    const double length = hi - lo;
    std::vector<double> edges(n + 1);
    edges[0] = lo;
    const double log_floor = std::log(kGeometricFloor);
    for (std::size_t k = 0; k < n; ++k) {
      const double frac = static_cast<double>(k) / static_cast<double>(n - 1);
      edges[k + 1] = lo + length * std::exp(log_floor * (1.0 - frac));
    }
    edges[n] = hi;
    space.nodes_.resize(n);
    space.weights_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      space.nodes_[i] = 0.5 * (edges[i] + edges[i + 1]);
      space.weights_[i] = edges[i + 1] - edges[i];
    }
  }
  space.finalize();
  return space;
}

MeasureSpace MeasureSpace::halfline(double truncation_radius, std::size_t n) {
  if (!(truncation_radius > 0.0) || n == 0) {
    throw PreconditionFailed("halfline needs a positive truncation radius and nodes");
  }
  MeasureSpace space;
  space.kind_ = MeasureKind::lebesgue_halfline;
  space.lo_ = 0.0;
  space.hi_ = truncation_radius;
  space.radius_ = truncation_radius;
  fill_uniform(0.0, truncation_radius, n, space.nodes_, space.weights_);
  space.finalize();
  return space;
}

MeasureSpace MeasureSpace::line(double truncation_radius, std::size_t n) {
  if (!(truncation_radius > 0.0) || n == 0) {
    throw PreconditionFailed("line needs a positive truncation radius and nodes");
  }
  MeasureSpace space;
  space.kind_ = MeasureKind::lebesgue_line;
  space.lo_ = -truncation_radius;
  space.hi_ = truncation_radius;
  space.radius_ = truncation_radius;
  fill_uniform(-truncation_radius, truncation_radius, n, space.nodes_, space.weights_);
  space.finalize();
  return space;
}

MeasureSpace MeasureSpace::counting(std::size_t n_max) {
  if (n_max == 0) {
    throw PreconditionFailed("counting measure needs n_max >= 1");
  }
  MeasureSpace space;
  space.kind_ = MeasureKind::counting;
  space.nodes_.resize(n_max);
  std::iota(space.nodes_.begin(), space.nodes_.end(), 1.0);
  space.weights_.assign(n_max, 1.0);
  space.lo_ = 1.0;
  space.hi_ = static_cast<double>(n_max);
  space.radius_ = static_cast<double>(n_max);
  space.finalize();
  return space;
}

MeasureSpace MeasureSpace::from_nodes(MeasureKind kind, std::vector<double> nodes,
                                      std::vector<double> weights, double truncation_radius) {
  if (nodes.empty() || nodes.size() != weights.size()) {
    throw PreconditionFailed("from_nodes needs equally many nodes and weights");
  }
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i] > nodes[i - 1])) {
      throw PreconditionFailed("nodes must be strictly increasing");
    }
  }
  if (std::any_of(weights.begin(), weights.end(), [](double w) { return !(w >= 0.0); })) {
    throw PreconditionFailed("weights must be nonnegative");
  }
  MeasureSpace space;
  space.kind_ = kind;
  space.nodes_ = std::move(nodes);
  space.weights_ = std::move(weights);
  space.lo_ = space.nodes_.front();
  space.hi_ = space.nodes_.back();
  space.radius_ = truncation_radius;
  space.custom_nodes_ = true;
  space.finalize();
  return space;
}

MeasureSpace MeasureSpace::with_density(std::function<double(double)> density,
                                        DensityBounds bounds) const {
  if (!(bounds.lower > 0.0) || !(bounds.upper >= bounds.lower)) {
    throw PreconditionFailed("density bounds need 0 < c <= C");
  }
  MeasureSpace out = *this;
  for (std::size_t i = 0; i < out.nodes_.size(); ++i) {
    const double d = density(out.nodes_[i]);
    if (d < bounds.lower || d > bounds.upper) {
      throw PreconditionFailed("density leaves its declared bounds");
    }
    out.weights_[i] *= d;
  }
  out.density_bounds_ = bounds;
  out.density_ = std::make_shared<const std::function<double(double)>>(std::move(density));
  out.finalize();
  return out;
}

MeasureSpace MeasureSpace::extended(std::size_t factor) const {
  if (!is_infinite() || custom_nodes_) {
    throw PreconditionFailed("only generated infinite spaces can be extended");
  }
  if (factor == 0) {
    throw PreconditionFailed("extension factor must be positive");
  }
  const auto f = static_cast<double>(factor);
  MeasureSpace out;
  switch (kind_) {
    case MeasureKind::lebesgue_halfline:
      out = halfline(radius_ * f, size() * factor);
      break;
    case MeasureKind::lebesgue_line:
      out = line(radius_ * f, size() * factor);
      break;
    case MeasureKind::counting:
      out = counting(size() * factor);
      break;
    case MeasureKind::lebesgue_interval:
      break;
  }
  if (density_) {
    out = out.with_density(*density_, *density_bounds_);
  }
  return out;
}

MeasureSpace MeasureSpace::shell(std::size_t k) const {
  if (!is_infinite() || custom_nodes_ || k == 0) {
    throw PreconditionFailed("shells exist only for generated infinite spaces, k >= 1");
  }
  const double inner = std::ldexp(radius_, static_cast<int>(k) - 1);
  std::vector<double> nodes;
  std::vector<double> weights;
  switch (kind_) {
    case MeasureKind::counting: {
      const std::size_t first = size() << (k - 1);
      nodes.resize(first);
      std::iota(nodes.begin(), nodes.end(), static_cast<double>(first) + 1.0);
      weights.assign(first, 1.0);
      break;
    }
    case MeasureKind::lebesgue_halfline:
    case MeasureKind::lebesgue_line: {
      const double h = (kind_ == MeasureKind::lebesgue_line ? 2.0 * radius_ : radius_) /
                       static_cast<double>(size());
      const auto per_side = static_cast<std::size_t>(std::llround(inner / h));
      if (kind_ == MeasureKind::lebesgue_line) {
        for (std::size_t i = per_side; i-- > 0;) {
          nodes.push_back(-(inner + (static_cast<double>(i) + 0.5) * h));
        }
      }
      for (std::size_t i = 0; i < per_side; ++i) {
        nodes.push_back(inner + (static_cast<double>(i) + 0.5) * h);
      }
      weights.assign(nodes.size(), h);
      break;
    }
    case MeasureKind::lebesgue_interval:
      break;
  }
  if (density_) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      weights[i] *= (*density_)(nodes[i]);
    }
  }
  return from_nodes(kind_, std::move(nodes), std::move(weights), 2.0 * inner);
}

void MeasureSpace::finalize() {
  measure_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  max_weight_ = weights_.empty() ? 0.0 : *std::max_element(weights_.begin(), weights_.end());
}

double weighted_norm(std::span<const double> f, std::span<const double> weights) {
  return std::sqrt(weighted_dot(f, f, weights));
}

double weighted_dot(std::span<const double> f, std::span<const double> g,
                    std::span<const double> weights) {
  if (f.size() != weights.size() || g.size() != weights.size()) {
    throw PreconditionFailed("vector length does not match the discretization");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    sum += weights[i] * f[i] * g[i];
  }
  return sum;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi >= lo) || n == 0) {
    throw PreconditionFailed("log_grid needs 0 < lo <= hi and n >= 1");
  }
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace specreg
