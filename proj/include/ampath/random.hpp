#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ampath {

/// Name recorded in result manifests so runs can be replayed.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64 streams, splitmix64 seed derivation";

/// One round of the splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Child seed for stream `index` under `parent`. Distinct indices give
/// statistically independent streams.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index);

/// Seeded stream with portable real-number conversion (53-bit mantissa), so
/// sequences do not depend on the standard library's distributions.
class Rng
{
public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform01();

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
  std::mt19937_64 engine_;
};

} // namespace ampath
