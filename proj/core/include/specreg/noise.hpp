#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "specreg/measure.hpp"

namespace specreg {

enum class NoiseDistribution { gaussian, rademacher };

// Reproducible source of node-indexed white noise: one independent, centered,
// unit-variance value per node. Identical (seed, stream_id) pairs give
// identical samples on every platform; replications use disjoint stream ids.
class WhiteNoiseSampler {
 public:
  WhiteNoiseSampler(std::uint64_t seed, std::uint64_t stream_id,
                    NoiseDistribution distribution = NoiseDistribution::gaussian)
      : seed_(seed), stream_id_(stream_id), distribution_(distribution) {}

  WhiteNoiseSampler with_stream(std::uint64_t stream_id) const {
    return WhiteNoiseSampler(seed_, stream_id, distribution_);
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  NoiseDistribution distribution() const noexcept { return distribution_; }

  // n values from the stream, always starting at its beginning.
  std::vector<double> sample(std::size_t n) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  NoiseDistribution distribution_;
};

std::vector<double> sample_white(const WhiteNoiseSampler& sampler, const MeasureSpace& space);

// A fixed perturbation with weighted L2-norm at most one.
struct DeterministicNoise {
  std::vector<double> values;
  double norm;
};

// direction / ||direction||; throws ZeroDirection.
DeterministicNoise worst_case_deterministic(std::span<const double> direction,
                                            const MeasureSpace& space);

}  // namespace specreg
