#include "svc/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace svc {

namespace {

const Json& member(const Json& j, const std::string& key, const std::string& path = "") {
  if (!j.is_object()) throw FormatError(path + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(path + "/" + key + ": missing field");
  return *it;
}

template <class T>
T get_as(const Json& j, const std::string& path) {
  try {
    return j.get<T>();
  } catch (const Json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

int get_int(const Json& j, const std::string& key, const std::string& path = "") {
  const Json& v = member(j, key, path);
  if (!v.is_number_integer()) throw FormatError(path + "/" + key + ": expected an integer");
  return v.get<int>();
}

double get_real(const Json& j, const std::string& key, const std::string& path = "") {
  const Json& v = member(j, key, path);
  if (!v.is_number()) throw FormatError(path + "/" + key + ": expected a number");
  return v.get<double>();
}

// Wraps domain validation errors so callers see one error type for bad files.
template <class F>
auto validated(const std::string& what, F&& build) {
  try {
    return build();
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(what + ": " + e.what());
  }
}

std::vector<std::uint32_t> int_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw FormatError(path + ": expected an array");
  std::vector<std::uint32_t> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_unsigned() && !(j[i].is_number_integer() && j[i].get<long long>() >= 0)) {
      throw FormatError(path + "/" + std::to_string(i) + ": expected a non-negative integer");
    }
    out.push_back(j[i].get<std::uint32_t>());
  }
  return out;
}

Json optional_real(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> read_optional_real(const Json& j, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return get_as<double>(*it, "/bounds/" + key);
}

}  // namespace

Json to_json(const JointDistribution& mu) {
  return Json{{"n", mu.n()}, {"probs", std::vector<double>(mu.probs().begin(), mu.probs().end())}};
}

JointDistribution distribution_from_json(const Json& j) {
  int n = get_int(j, "n");
  const Json& probs = member(j, "probs");
  if (!probs.is_array()) throw FormatError("/probs: expected an array");
  std::vector<double> p;
  p.reserve(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!probs[i].is_number()) throw FormatError("/probs/" + std::to_string(i) + ": expected a number");
    p.push_back(probs[i].get<double>());
  }
  return validated("distribution", [&] { return JointDistribution(n, std::move(p)); });
}

Json to_json(const PrefixAdversary& adversary) {
  Json strategy = Json::object();
  for (int len = 0; len < adversary.n(); ++len) {
    for (std::uint32_t u = 0; u < (1u << len); ++u) {
      BitString prefix(len, u);
      strategy[prefix.to_string()] = adversary.prob_one(prefix);
    }
  }
  return Json{{"n", adversary.n()}, {"delta", adversary.delta()}, {"strategy", strategy}};
}

PrefixAdversary adversary_from_json(const Json& j) {
  int n = get_int(j, "n");
  double delta = get_real(j, "delta");
  const Json& strategy = member(j, "strategy");
  if (!strategy.is_object()) throw FormatError("/strategy: expected an object");
  if (n < 1 || n > max_exact_bits()) throw FormatError("/n: out of range");
  std::vector<double> table((std::size_t{1} << n) - 1, -1.0);
  for (const auto& [key, value] : strategy.items()) {
    BitString prefix = validated("/strategy/" + key, [&] { return BitString::parse(key); });
    if (prefix.n >= n) throw FormatError("/strategy/" + key + ": prefix too long");
    if (!value.is_number()) throw FormatError("/strategy/" + key + ": expected a number");
    table[PrefixAdversary::index_of(prefix)] = value.get<double>();
  }
  for (int len = 0; len < n; ++len) {
    for (std::uint32_t u = 0; u < (1u << len); ++u) {
      BitString prefix(len, u);
      if (table[PrefixAdversary::index_of(prefix)] < 0.0) {
        throw FormatError("/strategy: missing prefix \"" + prefix.to_string() + "\"");
      }
    }
  }
  return validated("adversary", [&] { return PrefixAdversary(n, delta, std::move(table)); });
}

Json to_json(const CondenserMap& map) {
  CondenserMap t = map.tabulate();
  return Json{{"n", t.n()}, {"m", t.m()}, {"table", t.table_body()->outputs}};
}

CondenserMap condenser_from_json(const Json& j) {
  int n = get_int(j, "n");
  int m = get_int(j, "m");
  auto table = int_array(member(j, "table"), "/table");
  return validated("condenser table", [&] { return CondenserMap::table(n, m, std::move(table)); });
}

Json to_json(const SeededMap& map) {
  Json rows = Json::array();
  for (int s = 1; s <= map.seeds(); ++s) {
    std::vector<std::uint32_t> row(std::size_t{1} << map.n());
    for (std::uint32_t x = 0; x < row.size(); ++x) row[x] = map(x, s);
    rows.push_back(row);
  }
  return Json{{"n", map.n()}, {"D", map.seeds()}, {"m_out", map.m_out()}, {"table", rows}};
}

SeededMap seeded_map_from_json(const Json& j) {
  int n = get_int(j, "n");
  int seeds = get_int(j, "D");
  int m_out = get_int(j, "m_out");
  const Json& table = member(j, "table");
  if (!table.is_array()) throw FormatError("/table: expected an array");
  std::vector<std::vector<std::uint32_t>> rows;
  for (std::size_t s = 0; s < table.size(); ++s) {
    rows.push_back(int_array(table[s], "/table/" + std::to_string(s)));
  }
  return validated("seeded map table",
                   [&] { return SeededMap::table(n, seeds, m_out, std::move(rows)); });
}

Json to_json(const EntropyReport& r) {
  Json source{{"min_entropy", r.source.min_entropy},
              {"shannon_entropy", r.source.shannon_entropy},
              {"min_rate", r.source.min_rate},
              {"entropy_rate", r.source.entropy_rate},
              {"is_sv", r.source.is_sv},
              {"is_strong_sv", r.source.is_strong_sv}};
  Json bounds{{"theorem2_rate", optional_real(r.bounds.theorem2_rate)},
              {"sv_floor", optional_real(r.bounds.sv_floor)},
              {"el3_floor", optional_real(r.bounds.el3_floor)},
              {"pinsker_lower", optional_real(r.bounds.pinsker_lower)},
              {"pinsker_upper", optional_real(r.bounds.pinsker_upper)}};
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"applicable", c.applicable}, {"holds", c.holds}});
  }
  Json j{{"version", kReportVersion},
         {"n", r.n},
         {"m", r.m},
         {"delta", r.delta},
         {"map", r.map},
         {"source", source},
         {"min_entropy", r.min_entropy},
         {"shannon_entropy", r.shannon_entropy},
         {"min_rate", r.min_rate},
         {"entropy_rate", r.entropy_rate},
         {"imbalance", std::isinf(r.imbalance) ? Json(nullptr) : Json(r.imbalance)},
         {"bounds", bounds},
         {"checks", checks},
         {"passed", r.passed()}};
  if (r.extractor) {
    const auto& e = *r.extractor;
    j["extractor"] = {{"D", e.seeds},
                      {"m_out", e.m_out},
                      {"strong_error", e.strong_error},
                      {"very_strong_error", e.very_strong_error},
                      {"entropy_deficit_rate", e.entropy_deficit_rate},
                      {"claim_bound", e.claim_bound},
                      {"claim_precondition", e.claim_precondition},
                      {"concat_entropy", e.concat_entropy},
                      {"concat_rate_bound", e.concat_rate_bound},
                      {"mean_slice_entropy", e.mean_slice_entropy}};
  }
  return j;
}

EntropyReport report_from_json(const Json& j) {
  const Json& version = member(j, "version");
  if (version != kReportVersion) throw FormatError("/version: expected \"report_v1\"");
  EntropyReport r;
  r.n = get_int(j, "n");
  r.m = get_int(j, "m");
  r.delta = get_real(j, "delta");
  r.map = get_as<std::string>(member(j, "map"), "/map");
  const Json& s = member(j, "source");
  r.source.min_entropy = get_real(s, "min_entropy", "/source");
  r.source.shannon_entropy = get_real(s, "shannon_entropy", "/source");
  r.source.min_rate = get_real(s, "min_rate", "/source");
  r.source.entropy_rate = get_real(s, "entropy_rate", "/source");
  r.source.is_sv = get_as<bool>(member(s, "is_sv", "/source"), "/source/is_sv");
  r.source.is_strong_sv = get_as<bool>(member(s, "is_strong_sv", "/source"), "/source/is_strong_sv");
  r.min_entropy = get_real(j, "min_entropy");
  r.shannon_entropy = get_real(j, "shannon_entropy");
  r.min_rate = get_real(j, "min_rate");
  r.entropy_rate = get_real(j, "entropy_rate");
  const Json& imbalance = member(j, "imbalance");
  r.imbalance = imbalance.is_null() ? std::numeric_limits<double>::infinity()
                                    : get_as<double>(imbalance, "/imbalance");
  const Json& b = member(j, "bounds");
  r.bounds.theorem2_rate = read_optional_real(b, "theorem2_rate");
  r.bounds.sv_floor = read_optional_real(b, "sv_floor");
  r.bounds.el3_floor = read_optional_real(b, "el3_floor");
  r.bounds.pinsker_lower = read_optional_real(b, "pinsker_lower");
  r.bounds.pinsker_upper = read_optional_real(b, "pinsker_upper");
  const Json& checks = member(j, "checks");
  if (!checks.is_array()) throw FormatError("/checks: expected an array");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    std::string path = "/checks/" + std::to_string(i);
    r.checks.push_back({get_as<std::string>(member(checks[i], "name", path), path + "/name"),
                        get_as<bool>(member(checks[i], "applicable", path), path + "/applicable"),
                        get_as<bool>(member(checks[i], "holds", path), path + "/holds")});
  }
  if (auto it = j.find("extractor"); it != j.end()) {
    const Json& e = *it;
    const std::string p = "/extractor";
    ExtractorSummary x;
    x.seeds = get_int(e, "D", p);
    x.m_out = get_int(e, "m_out", p);
    x.strong_error = get_real(e, "strong_error", p);
    x.very_strong_error = get_real(e, "very_strong_error", p);
    x.entropy_deficit_rate = get_real(e, "entropy_deficit_rate", p);
    x.claim_bound = get_real(e, "claim_bound", p);
    x.claim_precondition = get_as<bool>(member(e, "claim_precondition", p), p + "/claim_precondition");
    x.concat_entropy = get_real(e, "concat_entropy", p);
    x.concat_rate_bound = get_real(e, "concat_rate_bound", p);
    x.mean_slice_entropy = get_real(e, "mean_slice_entropy", p);
    r.extractor = x;
  }
  return r;
}

Json to_json(const AttackResult& result) {
  return Json{{"version", kAttackVersion},
              {"n", result.adversary.n()},
              {"delta", result.adversary.delta()},
              {"target_output", result.target_output},
              {"fiber_size", result.fiber_size},
              {"target_set_mass", result.target_set_mass},
              {"lemma_bound", result.lemma_bound},
              {"achieved_min_entropy", result.achieved_min_entropy},
              {"theorem_bound", result.theorem_bound},
              {"holds", result.holds()},
              {"adversary", to_json(result.adversary)}};
}

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(origin + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str(), path.string());
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace svc
