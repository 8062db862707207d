#pragma once

#include <cstdint>
#include <random>

namespace specsdp {

// Seeded stream of reproducible draws. mt19937_64 supplies the bits (its
// output sequence is fixed by the C++ standard); uniforms take the top 53
// bits, normals come from Box-Muller, and bounded integers use rejection
// sampling. std::normal_distribution / std::uniform_int_distribution are
// implementation-defined and must not be used where byte-stable instance
// generation is required.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on (0, 1].
  double uniform01() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double normal();

  // Uniform integer in [0, bound).
  std::uint64_t uniform_below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace specsdp
