#include "specreg/noise.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "specreg/errors.hpp"

namespace specreg {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform on (0, 1], 53 random bits.
double open_unit(std::mt19937_64& engine) {
  return (static_cast<double>(engine() >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

std::vector<double> WhiteNoiseSampler::sample(std::size_t n) const {
  // std::normal_distribution is implementation-defined; the transform below
  // is spelled out so streams agree across standard libraries.
  std::mt19937_64 engine(splitmix64(seed_ ^ splitmix64(stream_id_ + 0x632be59bd9b4e019ULL)));
  std::vector<double> out(n);
  if (distribution_ == NoiseDistribution::rademacher) {
    for (auto& x : out) {
      x = (engine() >> 63) != 0 ? 1.0 : -1.0;
    }
    return out;
  }
  for (std::size_t i = 0; i < n; i += 2) {
    const double u1 = open_unit(engine);
    const double u2 = open_unit(engine);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    out[i] = radius * std::cos(angle);
    if (i + 1 < n) {
      out[i + 1] = radius * std::sin(angle);
    }
  }
  return out;
}

std::vector<double> sample_white(const WhiteNoiseSampler& sampler, const MeasureSpace& space) {
  return sampler.sample(space.size());
}

DeterministicNoise worst_case_deterministic(std::span<const double> direction,
                                            const MeasureSpace& space) {
  const double norm = weighted_norm(direction, space.weights());
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw ZeroDirection("noise direction has zero (or non-finite) norm");
  }
  std::vector<double> values(direction.begin(), direction.end());
  for (auto& v : values) {
    v /= norm;
  }
  const double unit = weighted_norm(values, space.weights());
  return DeterministicNoise{std::move(values), unit};
}

}  // namespace specreg
