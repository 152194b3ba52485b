#pragma once

// Named verification suites run by `svc verify`. Every suite is deterministic
// given its options.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace svc {

struct VerifyOptions {
  /// Caps the input width of every instance a suite builds.
  int max_n = 8;
  std::uint64_t seed = 1;
};

struct PropertyResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

/// lemma-e1, theorem1, theorem2, imbalance, pinsker, cond-extr, extr-cond,
/// partition, stream-equiv.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite.
std::vector<PropertyResult> run_suite(std::string_view name, const VerifyOptions& options);

}  // namespace svc
