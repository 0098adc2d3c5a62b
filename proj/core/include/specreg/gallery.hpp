#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "specreg/measure.hpp"
#include "specreg/multiplier.hpp"

namespace specreg {

// ---------------------------------------------------------------------------
// Deconvolution

enum class KernelFamily { exponential, gaussian };

// exponential: r(u) = exp(-|u| / w) / (2 w), transform 1 / (1 + w^2 omega^2).
// gaussian: r(u) = exp(-u^2 / (2 w^2)) / (w sqrt(2 pi)), transform
// exp(-w^2 omega^2 / 2).
struct Kernel {
  KernelFamily family = KernelFamily::exponential;
  double width = 1.0;

  double operator()(double u) const;
  double transform(double omega) const;
};

// Periodic surrogate of convolution on the line: n samples of [-L, L) at
// u_j = -L + j h, h = 2L/n. The frequency side carries the nodes
// omega_k = 2 pi k / (2L) in increasing order with weight pi / L each, so
// the transform below is an isometry between the two weighted spaces.
class DeconvolutionProblem {
 public:
  DeconvolutionProblem(Kernel kernel, double half_width, std::size_t n);

  const Kernel& kernel() const noexcept { return kernel_; }
  const MeasureSpace& signal_space() const noexcept { return signal_; }
  const MeasureSpace& frequency_space() const noexcept { return frequency_; }

  // b = r-hat at the frequency nodes, from the discrete transform of the
  // sampled kernel.
  const Multiplier& multiplier() const noexcept { return multiplier_; }
  std::span<const double> transfer() const noexcept { return b_; }

  // Largest imaginary part discarded when forming b.
  double imaginary_residue() const noexcept { return imaginary_residue_; }

  // Kernel mass outside [-L/2, L/2].
  double wrap_error() const;

  std::vector<std::complex<double>> to_frequency(std::span<const double> y) const;
  // Inverse transform; the imaginary part of the result is dropped.
  std::vector<double> from_frequency(std::span<const std::complex<double>> y) const;

  // Periodic convolution h sum_j r(u_m - u_j) x_j computed through the
  // transform.
  std::vector<double> convolve(std::span<const double> x) const;

 private:
  std::vector<std::complex<double>> dft(std::span<const std::complex<double>> in,
                                        bool inverse) const;

  Kernel kernel_;
  double half_width_;
  std::size_t n_;
  MeasureSpace signal_;
  MeasureSpace frequency_;
  std::vector<double> b_;
  Multiplier multiplier_;
  double imaginary_residue_ = 0.0;
};

// conj(b) S_f / (|b|^2 S_f + delta^2) for real b. Throws DegenerateFilter
// when the denominator vanishes.
double wiener_weight(double b, double s_f, double delta);

// Frequency-domain Lavrent'ev reconstruction 1/(alpha + b) applied to the
// transform of g_delta, transformed back to the signal side.
std::vector<double> lavrentiev_deconvolve(const DeconvolutionProblem& problem,
                                          std::span<const double> g_delta, double alpha);

// ---------------------------------------------------------------------------
// Final value problem for the heat equation

// b(s) = exp(-c^2 tau |s|^2) on a truncated line of frequencies.
struct WholeSpaceFvp {
  double c = 1.0;
  double tau = 1.0;
  int dimension = 1;
  double radius = 8.0;
  std::size_t n = 4096;
};

// b(n) = exp(-c^2 lambda_n^2 tau), or exp(-c^2 lambda_n tau) with the
// standard semigroup exponent.
struct BoundedDomainFvp {
  double c = 1.0;
  double tau = 1.0;
  std::vector<double> eigenvalues;
  bool standard_exponent = false;
};

struct MultiplierInstance {
  Multiplier multiplier;
  MeasureSpace space;
};

MultiplierInstance fvp_multiplier(const WholeSpaceFvp& fvp);

// Throws EigenvaluesNotDivergent unless the eigenvalues are positive,
// nondecreasing, at least four, and visibly growing (last >= 1.1 x middle).
MultiplierInstance fvp_multiplier(const BoundedDomainFvp& fvp);

// lambda_n = n for n = 1..n_max.
std::vector<double> linear_eigenvalues(std::size_t n_max);

// Counting-measure instance with b_j given for j = 1..n_max.
MultiplierInstance compact_case(std::vector<double> singular_values, std::size_t n_max);

// Largest N with b_N >= alpha for a nonincreasing sequence (0 if none).
std::size_t n_alpha(std::span<const double> b, double alpha);

// Orthonormal Dirichlet eigenbasis sqrt(2/pi) sin(n x) of L^2(0, pi) on the
// uniform midpoint grid. Coefficients for n <= grid size are exact discrete
// inner products, so the coefficient map is an isometry on the span.
class SineBasis {
 public:
  explicit SineBasis(std::size_t grid_points);

  const MeasureSpace& space() const noexcept { return space_; }
  std::vector<double> coefficients(std::span<const double> values, std::size_t modes) const;
  std::vector<double> synthesize(std::span<const double> coefficients) const;

 private:
  MeasureSpace space_;
};

}  // namespace specreg
