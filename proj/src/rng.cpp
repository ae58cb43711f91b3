#include "smartroute/rng.hpp"

namespace smartroute {

Rng make_stream(std::uint64_t root_seed, Stream stream) {
  const auto tag = static_cast<std::uint32_t>(stream);
  std::seed_seq seq{
      static_cast<std::uint32_t>(root_seed),
      static_cast<std::uint32_t>(root_seed >> 32),
      tag,
      0x9E3779B9u ^ tag,
  };
  return Rng(seq);
}

}  // namespace smartroute
