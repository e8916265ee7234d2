#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace fracheat {

/// Identifies a reproducible random stream.  Streams with different
/// stream_id under the same seed are derived through splitmix64 mixing and
/// are treated as statistically independent.
struct RngSpec {
  std::uint64_t seed = 0;
  std::uint32_t stream_id = 0;

  RngSpec substream(std::uint32_t offset) const {
    return RngSpec{seed, stream_id + offset};
  }
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// mt19937_64 stream seeded from (seed, stream_id); normals are produced by
/// an explicit Box-Muller so the byte stream does not depend on the standard
/// library's distribution implementations.
class RandomStream {
 public:
  explicit RandomStream(const RngSpec& spec) {
    std::uint64_t s = spec.seed ^ 0x5851f42d4c957f2dULL;
    splitmix64(s);
    s ^= (static_cast<std::uint64_t>(spec.stream_id) << 1) | 1ULL;
    std::uint64_t w0 = splitmix64(s), w1 = splitmix64(s);
    engine_.seed(w0 ^ (w1 << 1));
  }

  double uniform() {  // (0,1)
    // 53-bit mantissa, never exactly 0
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal();

  double chi2(int dof);  // sum of dof squared normals

  void fill_normal(std::span<double> out) {
    for (auto& v : out) v = normal();
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0;
};

}  // namespace fracheat
