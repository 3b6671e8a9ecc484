#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rpdepth {

// SplitMix64 step. Used to derive independent substream seeds from a master
// seed; adding more substreams never perturbs earlier ones.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master ^ (index * 0xc2b2ae3d27d4eb4fULL + 0x165667b19e3779f9ULL);
  return splitmix64(s);
}

// Deterministic scalar RNG: mt19937_64 (bit-exact per the standard) plus an
// explicit Box-Muller transform, so a given seed reproduces the same stream
// independent of the C++ library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on (0, 1].
  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  double cauchy() { return std::tan(M_PI * (uniform01() - 0.5)); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace rpdepth
