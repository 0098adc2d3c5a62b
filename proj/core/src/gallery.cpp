#include "specreg/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include <fftw3.h>

#include "specreg/errors.hpp"
#include "specreg/estimator.hpp"
#include "specreg/operator.hpp"
#include "specreg/scheme.hpp"

namespace specreg {

namespace {

// FFTW planning is not thread safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

constexpr double kImaginaryTolerance = 1e-10;

MeasureSpace make_signal_space(double half_width, std::size_t n) {
  const double h = 2.0 * half_width / static_cast<double>(n);
  std::vector<double> nodes(n);
  for (std::size_t j = 0; j < n; ++j) {
    nodes[j] = -half_width + static_cast<double>(j) * h;
  }
  return MeasureSpace::from_nodes(MeasureKind::lebesgue_line, std::move(nodes),
                                  std::vector<double>(n, h), half_width);
}

MeasureSpace make_frequency_space(double half_width, std::size_t n) {
  const double step = std::numbers::pi / half_width;
  std::vector<double> nodes(n);
  const auto half = static_cast<std::ptrdiff_t>(n / 2);
  for (std::size_t p = 0; p < n; ++p) {
    nodes[p] = step * static_cast<double>(static_cast<std::ptrdiff_t>(p) - half);
  }
  return MeasureSpace::from_nodes(MeasureKind::lebesgue_line, std::move(nodes),
                                  std::vector<double>(n, step), step * static_cast<double>(half));
}

std::size_t sorted_to_raw(std::size_t p, std::size_t n) { return (p + n / 2) % n; }

double alternating(std::size_t k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

double Kernel::operator()(double u) const {
  const double w = width;
  switch (family) {
    case KernelFamily::exponential:
      return std::exp(-std::abs(u) / w) / (2.0 * w);
    case KernelFamily::gaussian:
      return std::exp(-u * u / (2.0 * w * w)) / (w * std::sqrt(2.0 * std::numbers::pi));
  }
  return 0.0;
}

double Kernel::transform(double omega) const {
  const double wo = width * omega;
  switch (family) {
    case KernelFamily::exponential:
      return 1.0 / (1.0 + wo * wo);
    case KernelFamily::gaussian:
      return std::exp(-0.5 * wo * wo);
  }
  return 0.0;
}

DeconvolutionProblem::DeconvolutionProblem(Kernel kernel, double half_width, std::size_t n)
    : kernel_(kernel),
      half_width_(half_width),
      n_(n),
      signal_(n >= 4 && n % 2 == 0 && half_width > 0.0
                  ? make_signal_space(half_width, n)
                  : throw PreconditionFailed("deconvolution grid needs even n >= 4 and L > 0")),
      frequency_(make_frequency_space(half_width, n)),
      multiplier_(Multiplier::custom("placeholder", [](double) { return 0.0; }, 1.0)) {
  if (!(kernel.width > 0.0)) {
    throw PreconditionFailed("kernel width must be positive");
  }
  const double h = 2.0 * half_width / static_cast<double>(n);
  // Kernel centred at index 0 of the periodic grid.
  std::vector<std::complex<double>> centred(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double u = j < n / 2 ? static_cast<double>(j) * h
                               : (static_cast<double>(j) - static_cast<double>(n)) * h;
    centred[j] = kernel_(u);
  }
  const auto spectrum = dft(centred, false);
  b_.resize(n);
  double largest = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    const auto value = h * spectrum[sorted_to_raw(p, n)];
    imaginary_residue_ = std::max(imaginary_residue_, std::abs(value.imag()));
    b_[p] = value.real();
    largest = std::max(largest, b_[p]);
  }
  if (imaginary_residue_ > kImaginaryTolerance) {
    std::ostringstream os;
    os << "kernel transform has imaginary part " << imaginary_residue_;
    throw PreconditionFailed(os.str());
  }
  for (double& v : b_) {
    if (v < 0.0) {
      if (v < -1e-12 * largest) {
        throw PreconditionFailed("kernel transform is negative at a frequency node");
      }
      v = 0.0;
    }
  }
  multiplier_ = Multiplier::tabulated(frequency_, b_);
}

double DeconvolutionProblem::wrap_error() const {
  const double x = 0.5 * half_width_ / kernel_.width;
  switch (kernel_.family) {
    case KernelFamily::exponential:
      return std::exp(-x);
    case KernelFamily::gaussian:
      return std::erfc(x / std::numbers::sqrt2);
  }
  return 0.0;
}

std::vector<std::complex<double>> DeconvolutionProblem::dft(
    std::span<const std::complex<double>> in, bool inverse) const {
  const int n = static_cast<int>(in.size());
  auto* buffer = fftw_alloc_complex(in.size());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, buffer, buffer, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                            FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < in.size(); ++i) {
    buffer[i][0] = in[i].real();
    buffer[i][1] = in[i].imag();
  }
  fftw_execute(plan);
  std::vector<std::complex<double>> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    out[i] = {buffer[i][0], buffer[i][1]};
  }
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buffer);
  return out;
}

std::vector<std::complex<double>> DeconvolutionProblem::to_frequency(
    std::span<const double> y) const {
  if (y.size() != n_) {
    throw PreconditionFailed("signal length does not match the grid");
  }
  std::vector<std::complex<double>> in(y.begin(), y.end());
  const auto raw = dft(in, false);
  const double h = 2.0 * half_width_ / static_cast<double>(n_);
  const double scale = h / std::sqrt(2.0 * std::numbers::pi);
  std::vector<std::complex<double>> out(n_);
  for (std::size_t p = 0; p < n_; ++p) {
    const std::size_t k = sorted_to_raw(p, n_);
    out[p] = scale * alternating(k) * raw[k];
  }
  return out;
}

std::vector<double> DeconvolutionProblem::from_frequency(
    std::span<const std::complex<double>> y) const {
  if (y.size() != n_) {
    throw PreconditionFailed("spectrum length does not match the grid");
  }
  const double h = 2.0 * half_width_ / static_cast<double>(n_);
  const double scale = std::sqrt(2.0 * std::numbers::pi) / (h * static_cast<double>(n_));
  std::vector<std::complex<double>> raw(n_);
  for (std::size_t p = 0; p < n_; ++p) {
    const std::size_t k = sorted_to_raw(p, n_);
    raw[k] = scale * alternating(k) * y[p];
  }
  const auto back = dft(raw, true);
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    out[j] = back[j].real();
  }
  return out;
}

std::vector<double> DeconvolutionProblem::convolve(std::span<const double> x) const {
  auto spectrum = to_frequency(x);
  for (std::size_t p = 0; p < n_; ++p) {
    spectrum[p] *= b_[p];
  }
  return from_frequency(spectrum);
}

double wiener_weight(double b, double s_f, double delta) {
  if (!(s_f > 0.0) || !(delta >= 0.0)) {
    throw PreconditionFailed("Wiener weight needs S_f > 0 and delta >= 0");
  }
  const double denominator = b * b * s_f + delta * delta;
  if (denominator == 0.0) {
    throw DegenerateFilter("Wiener weight with b = 0 and delta = 0");
  }
  return b * s_f / denominator;
}

std::vector<double> lavrentiev_deconvolve(const DeconvolutionProblem& problem,
                                          std::span<const double> g_delta, double alpha) {
  const auto spectrum = problem.to_frequency(g_delta);
  std::vector<double> re(spectrum.size());
  std::vector<double> im(spectrum.size());
  for (std::size_t p = 0; p < spectrum.size(); ++p) {
    re[p] = spectrum[p].real();
    im[p] = spectrum[p].imag();
  }
  const MultiplicationOperator op(problem.multiplier(), problem.frequency_space());
  const auto scheme = lavrentiev();
  const auto rec_re = reconstruct(scheme, alpha, op, re);
  const auto rec_im = reconstruct(scheme, alpha, op, im);
  std::vector<std::complex<double>> estimate(spectrum.size());
  for (std::size_t p = 0; p < spectrum.size(); ++p) {
    estimate[p] = {rec_re.estimate[p], rec_im.estimate[p]};
  }
  return problem.from_frequency(estimate);
}

MultiplierInstance fvp_multiplier(const WholeSpaceFvp& fvp) {
  if (!(fvp.c > 0.0) || !(fvp.tau > 0.0) || fvp.dimension < 1) {
    throw PreconditionFailed("heat parameters must be positive");
  }
  return {Multiplier::gaussian_frequency(fvp.c, fvp.tau, fvp.dimension),
          MeasureSpace::line(fvp.radius, fvp.n)};
}

MultiplierInstance fvp_multiplier(const BoundedDomainFvp& fvp) {
  if (!(fvp.c > 0.0) || !(fvp.tau > 0.0)) {
    throw PreconditionFailed("heat parameters must be positive");
  }
  const auto& ev = fvp.eigenvalues;
  const bool positive = std::all_of(ev.begin(), ev.end(), [](double l) { return l > 0.0; });
  if (ev.size() < 4 || !positive || !std::is_sorted(ev.begin(), ev.end()) ||
      ev.back() < 1.1 * ev[ev.size() / 2]) {
    throw EigenvaluesNotDivergent(
        "eigenvalues must be positive, nondecreasing and growing without bound");
  }
  return {Multiplier::exponential_sequence(fvp.c, fvp.tau, ev,
                                           fvp.standard_exponent ? 1.0 : 2.0),
          MeasureSpace::counting(ev.size())};
}

std::vector<double> linear_eigenvalues(std::size_t n_max) {
  std::vector<double> ev(n_max);
  for (std::size_t n = 0; n < n_max; ++n) {
    ev[n] = static_cast<double>(n + 1);
  }
  return ev;
}

MultiplierInstance compact_case(std::vector<double> singular_values, std::size_t n_max) {
  if (n_max == 0 || singular_values.size() < n_max) {
    throw PreconditionFailed("need singular values for j = 1..n_max");
  }
  singular_values.resize(n_max);
  if (!std::all_of(singular_values.begin(), singular_values.end(),
                   [](double v) { return v > 0.0; })) {
    throw PreconditionFailed("singular values must be positive");
  }
  auto space = MeasureSpace::counting(n_max);
  auto b = Multiplier::tabulated(space, std::move(singular_values));
  return {std::move(b), std::move(space)};
}

std::size_t n_alpha(std::span<const double> b, double alpha) {
  std::size_t n = 0;
  while (n < b.size() && b[n] >= alpha) {
    ++n;
  }
  return n;
}

SineBasis::SineBasis(std::size_t grid_points)
    : space_(MeasureSpace::interval(0.0, std::numbers::pi, grid_points)) {}

std::vector<double> SineBasis::coefficients(std::span<const double> values,
                                            std::size_t modes) const {
  if (values.size() != space_.size() || modes >= space_.size()) {
    throw PreconditionFailed("sine coefficients need grid values and modes < grid size");
  }
  const auto x = space_.nodes();
  const auto w = space_.weights();
  const double norm = std::sqrt(2.0 / std::numbers::pi);
  std::vector<double> c(modes, 0.0);
  for (std::size_t n = 0; n < modes; ++n) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      c[n] += w[j] * values[j] * norm * std::sin(static_cast<double>(n + 1) * x[j]);
    }
  }
  return c;
}

std::vector<double> SineBasis::synthesize(std::span<const double> coefficients) const {
  if (coefficients.size() >= space_.size()) {
    throw PreconditionFailed("too many modes for the grid");
  }
  const auto x = space_.nodes();
  const double norm = std::sqrt(2.0 / std::numbers::pi);
  std::vector<double> f(x.size(), 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (std::size_t n = 0; n < coefficients.size(); ++n) {
      f[j] += coefficients[n] * norm * std::sin(static_cast<double>(n + 1) * x[j]);
    }
  }
  return f;
}

}  // namespace specreg
