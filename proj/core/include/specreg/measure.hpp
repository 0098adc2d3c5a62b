#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace specreg {

enum class MeasureKind { lebesgue_interval, lebesgue_halfline, lebesgue_line, counting };

// Uniform cells, or cells graded geometrically towards the left end of an
// interval (used to resolve superlevel sets of multipliers vanishing there).
enum class GridKind { uniform, geometric };

struct DensityBounds {
  double lower;
  double upper;
};

std::string to_string(MeasureKind kind);

// Discretization of a measure space by nodes and positive quadrature weights.
// 
// Lebesgue kinds use the composite midpoint rule: every node is the midpoint
// of its cell and the weight is the cell length. Infinite kinds are truncated
// at `truncation_radius()`; counting measure keeps the first `n_max` atoms
// s = 1, 2, ..., n_max with unit weight.
class MeasureSpace {
 public:
  static MeasureSpace interval(double lo, double hi, std::size_t n,
                               GridKind grid = GridKind::uniform);
  static MeasureSpace halfline(double truncation_radius, std::size_t n);
  static MeasureSpace line(double truncation_radius, std::size_t n);
  static MeasureSpace counting(std::size_t n_max);

  // Arbitrary strictly increasing nodes with explicit weights.
  static MeasureSpace from_nodes(MeasureKind kind, std::vector<double> nodes,
                                 std::vector<double> weights,
                                 double truncation_radius = 0.0);

  // Same nodes; weights multiplied by the density, which must lie in the
  // given bounds at every node.
  MeasureSpace with_density(std::function<double(double)> density,
                            DensityBounds bounds) const;

  // Infinite kinds only: radius (or n_max) multiplied by an integer factor,
  // keeping the cell size so the original nodes are a subset.
  MeasureSpace extended(std::size_t factor) const;

  // Infinite kinds only: the nodes added when going from radius R 2^(k-1)
  // to R 2^k (k >= 1) at the same cell size, as a standalone node set.
  MeasureSpace shell(std::size_t k) const;

  MeasureKind kind() const noexcept { return kind_; }
  GridKind grid() const noexcept { return grid_; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  // Measure of the discretized region (sum of weights).
  double measure() const noexcept { return measure_; }
  double max_weight() const noexcept { return max_weight_; }

  // True when the underlying (untruncated) measure of S is infinite.
  bool is_infinite() const noexcept { return kind_ != MeasureKind::lebesgue_interval; }

  double truncation_radius() const noexcept { return radius_; }
  double lower() const noexcept { return lo_; }
  double upper() const noexcept { return hi_; }
  const std::optional<DensityBounds>& density_bounds() const noexcept { return density_bounds_; }

 private:
  MeasureSpace() = default;
  void finalize();

  MeasureKind kind_ = MeasureKind::lebesgue_interval;
  GridKind grid_ = GridKind::uniform;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  double radius_ = 0.0;
  double measure_ = 0.0;
  double max_weight_ = 0.0;
  bool custom_nodes_ = false;
  std::optional<DensityBounds> density_bounds_;
  std::shared_ptr<const std::function<double(double)>> density_;
};

// sqrt(sum_i w_i |f_i|^2).
double weighted_norm(std::span<const double> f, std::span<const double> weights);

double weighted_dot(std::span<const double> f, std::span<const double> g,
                    std::span<const double> weights);

// n log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

}  // namespace specreg
