#pragma once

#include <cstdint>
#include <random>

namespace smartroute {

using Rng = std::mt19937_64;

/// Independent child streams derived from one root seed. Each concern draws
/// from its own stream so that enabling or disabling one feature never
/// shifts the random sequence seen by another.
enum class Stream : std::uint32_t {
  Placement = 1,
  Gamma = 2,
  Failure = 3,
  Repair = 4,
  Injection = 5,
  PredictorScore = 6,
};

Rng make_stream(std::uint64_t root_seed, Stream stream);

}  // namespace smartroute
