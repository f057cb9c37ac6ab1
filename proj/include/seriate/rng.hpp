#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace seriate {

// All randomness in the library flows through this wrapper. The engine is
// std::mt19937_64 (whose output sequence is pinned by the standard) and the
// distributions are hand-rolled, so results are bit-reproducible from a seed
// across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of mantissa.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Inclusive bounds, rejection-sampled so there is no modulo bias.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return lo + static_cast<std::int64_t>(x % span);
  }

  // Box-Muller; computes a fresh pair every call and discards the spare,
  // which keeps the stream position independent of call history.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  // splitmix64 finalizer; used to derive well-separated child seeds.
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  // Deterministic per-run seed derivation from a master seed and a counter.
  static std::uint64_t derive(std::uint64_t master, std::uint64_t counter) {
    return mix(master ^ mix(counter + 1));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace seriate
