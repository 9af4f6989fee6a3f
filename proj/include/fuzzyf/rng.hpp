#pragma once

#include <cstdint>

namespace fuzzyf {

// splitmix64 generator. Chosen over <random> engines because sampling loops
// are parallelized by sample index: every sample owns its own stream, so
// results cannot depend on the OpenMP schedule.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform in (0,1]
  double uniform01_pos() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  // uniform in the open interval (0,1); never returns an exact endpoint
  double uniform01_open() {
    return (static_cast<double>(next() >> 12) + 0.5) * 0x1.0p-52;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // inclusive on both ends
  int uniform_int(int lo, int hi) {
    return lo +
           static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

// Derives the generator for one sample of a scan. The stride leaves ~1e6
// draws per stream before neighbouring streams could overlap; scan bodies
// draw a few dozen values at most.
inline SplitMix64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  return SplitMix64(seed + stream * (0x9e3779b97f4a7c15ull << 20));
}

}  // namespace fuzzyf
