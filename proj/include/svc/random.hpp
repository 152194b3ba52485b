#pragma once

#include <cstdint>
#include <random>

namespace svc {

/// Seeded generator with a platform-independent output stream. The engine's
/// sequence is fixed by the standard; the real/int conversions are done here
/// rather than through <random> distributions, whose output is not.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace svc
