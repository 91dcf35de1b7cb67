#ifndef ICNSIM_RANDOM_HPP
#define ICNSIM_RANDOM_HPP

#include <cstdint>
#include <random>

namespace icnsim {

using Rng = std::mt19937_64;

/// Independent random streams derived from one experiment seed.
enum class Stream : std::uint32_t {
  Topology = 1,
  Workload = 2,
};

inline Rng
makeRng(std::uint64_t seed, Stream stream)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

} // namespace icnsim

#endif // ICNSIM_RANDOM_HPP
