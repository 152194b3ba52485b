#pragma once

// JSON file formats.
//
//   distribution  {"n": int, "probs": [2^n reals]}            index = MSB-first
//   adversary     {"n": int, "delta": real, "strategy": {"": r, "0": r, ...}}
//   condenser     {"n": int, "m": int, "table": [2^n ints]}
//   seeded map    {"n": int, "D": int, "m_out": int, "table": [[2^n ints], ...]}
//   report        {"version": "report_v1", ...}
//   attack        {"version": "attack_v1", ...}
//
// Reals are written with 17 significant digits. An infinite imbalance ratio
// is written as null.

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "svc/attacks.hpp"
#include "svc/bitdist.hpp"
#include "svc/bounds.hpp"
#include "svc/condenser.hpp"
#include "svc/extractors.hpp"
#include "svc/sv_models.hpp"

namespace svc {

using Json = nlohmann::json;

inline constexpr const char* kAttackVersion = "attack_v1";

/// Malformed input; the message carries the byte offset or JSON path.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(const JointDistribution& mu);
JointDistribution distribution_from_json(const Json& j);

Json to_json(const PrefixAdversary& adversary);
PrefixAdversary adversary_from_json(const Json& j);

/// Table form; structured maps are tabulated.
Json to_json(const CondenserMap& map);
CondenserMap condenser_from_json(const Json& j);

Json to_json(const SeededMap& map);
SeededMap seeded_map_from_json(const Json& j);

Json to_json(const EntropyReport& report);
EntropyReport report_from_json(const Json& j);

Json to_json(const AttackResult& result);

Json parse_json(const std::string& text, const std::string& origin = "<input>");
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace svc
