#pragma once

#include <cstdint>
#include <random>

namespace funtf {

/// Seedable random source used by every sampler in the library.
///
/// A master seed is split into independent per-sample streams with
/// `Rng::stream(seed, index)`: the engine for sample `index` is seeded with
/// splitmix64(seed ^ splitmix64(index + 1)). Batch output therefore depends
/// only on (seed, index), never on how samples are scheduled across workers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng stream(std::uint64_t master_seed, std::uint64_t index) {
    return Rng(splitmix64(master_seed ^ splitmix64(index + 1)));
  }

  static constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  /// Uniform on [0, 1).
  double uniform() {
    // generate_canonical can round up to 1.0
    const double u = unit_(engine_);
    return u < 1.0 ? u : 0x1.fffffffffffffp-1;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() { return normal_(engine_); }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace funtf
