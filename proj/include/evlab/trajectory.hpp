#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "evlab/config.hpp"
#include "evlab/params.hpp"

namespace evlab {

enum class SampleSchedule : std::uint8_t {
  kEveryStep,
  kGeometric,  // t = 0 and ceil(1.25^k), deduplicated
};

/// Observables of one replica at time t; maxima run over 0..t.
struct Sample {
  std::int64_t t = 0;
  std::int64_t size = 0;
  std::int64_t blocks = 0;
  std::int64_t f1 = 0;
  double f2 = 0.0;
  std::int64_t rho2 = 0;
  std::int64_t max_size = 0;
  std::int64_t max_blocks = 0;
};

struct TrajectoryRecord {
  Params params;
  std::uint64_t seed = 0;
  std::vector<Sample> samples;
  /// First positive time at the ground state, if it happened within the horizon.
  std::optional<std::int64_t> tau;
  std::int64_t steps = 0;
  Configuration final_state;
};

/// Next recording time after t on the geometric grid (ratio 1.25).
std::int64_t next_geometric_time(std::int64_t t);

}  // namespace evlab
