#pragma once

#include <cstdint>
#include <vector>

namespace evlcp {

// Finalizer of splitmix64.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Derives a child seed from (seed, index); used for per-trial substreams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + 0x9E3779B97F4A7C15ull * (index + 1));
}

// Counter-based generator: draw j of stream (seed, stream) is a pure function
// of (seed, stream, j), so output never depends on interleaving with other
// streams or on thread scheduling.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : key_(derive_seed(derive_seed(seed, 0x73747265616Dull), stream)) {}

  std::uint64_t next_u64() {
    ++counter_;
    return mix64(key_ + 0x9E3779B97F4A7C15ull * counter_);
  }

  // Uniform in (0, 1]; never zero, safe under log().
  double uniform01() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform in [-1, 1).
  double uniform_sym() { return 2.0 * (uniform01() - 0.5); }

  // Standard normal via Box-Muller; consumes exactly two uniforms.
  double normal();

  // Uniform point on the m-simplex (m nonnegative weights summing to 1).
  std::vector<double> simplex(std::size_t m);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace evlcp
