#pragma once

#include <cmath>
#include <cstdint>

namespace hopfcx {

// Counter-based generator (splitmix64 over a hashed key). Every consumer
// derives its own stream from (seed, stream ids), so parallel workers
// reproduce the sequential stream no matter how work is split.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}
  Rng(std::uint64_t seed, std::uint64_t s1) : Rng(mix(seed + 0x632be59bd9b4e019ull * (s1 + 1))) {}
  Rng(std::uint64_t seed, std::uint64_t s1, std::uint64_t s2)
      : Rng(mix(seed + 0x632be59bd9b4e019ull * (s1 + 1)), s2) {}
  Rng(std::uint64_t seed, std::uint64_t s1, std::uint64_t s2, std::uint64_t s3)
      : Rng(mix(seed + 0x632be59bd9b4e019ull * (s1 + 1)), s2, s3) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // uniform in (0, 1], never exactly 0 (safe for log)
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // standard normal via Box-Muller; caches the second value
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_uniform();
    double u2 = next_uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace hopfcx
