#pragma once

#include <cstdint>
#include <initializer_list>

namespace heterogen {

// splitmix64 finalizer; also used as the seed-derivation mixer.
std::uint64_t splitmix64(std::uint64_t x);

// Stable 64-bit seed derivation: fold each part into the state with
// splitmix64. Used to give every (n, trial) its own independent stream.
std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> parts);

// Stream tags so that graph sampling and feature sampling never share a
// stream even when the user supplies a single seed.
inline constexpr std::uint64_t kGraphStream = 0x6772617068u;    // "graph"
inline constexpr std::uint64_t kFeatureStream = 0x66656174u;    // "feat"
inline constexpr std::uint64_t kProbeStream = 0x70726f6265u;    // "probe"

// xoshiro256++ with splitmix64 seeding. Chosen over std:: engines because
// its output sequence is fully specified, so samples are reproducible
// across standard libraries and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform double in [0, 1), 53-bit resolution.
  double uniform01();

  // Standard normal via Box-Muller. Consumes exactly two uniforms per
  // pair of variates; the second variate is cached and returned by the
  // next call, which keeps the draw order well defined.
  double gaussian();

  // Rademacher +/-1.
  double sign();

 private:
  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace heterogen
