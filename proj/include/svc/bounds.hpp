#pragma once

// Closed-form bounds and the entropy report shared by the CLI and tests.
// All reported quantities are in bits.

#include <optional>
#include <string>
#include <vector>

#include "svc/bitdist.hpp"
#include "svc/condenser.hpp"

namespace svc {

inline constexpr const char* kReportVersion = "report_v1";

/// n * log2(2 / (1 + delta)): min-entropy floor of every SV source.
double sv_floor(int n, double delta);
/// 1 - log2((1+delta)/(1-delta)) / d: min-entropy rate guarantee of f_d.
double theorem2_rate(int d, double delta);
/// m - log2((1+delta)/(1-delta)): min-entropy floor of delta-imbalanced
/// distributions over m bits.
double el3_floor(int m, double delta);

struct SourceSummary {
  double min_entropy = 0;
  double shannon_entropy = 0;
  double min_rate = 0;
  double entropy_rate = 0;
  bool is_sv = false;
  bool is_strong_sv = false;

  bool operator==(const SourceSummary&) const = default;
};

struct ReportBounds {
  std::optional<double> theorem2_rate;
  std::optional<double> sv_floor;
  std::optional<double> el3_floor;
  std::optional<double> pinsker_lower;
  std::optional<double> pinsker_upper;

  bool operator==(const ReportBounds&) const = default;
};

struct ExtractorSummary {
  int seeds = 0;
  int m_out = 0;
  double strong_error = 0;
  double very_strong_error = 0;
  double entropy_deficit_rate = 0;
  double claim_bound = 0;
  bool claim_precondition = false;
  double concat_entropy = 0;
  double concat_rate_bound = 0;
  double mean_slice_entropy = 0;

  bool operator==(const ExtractorSummary&) const = default;
};

struct ReportCheck {
  std::string name;
  bool applicable = false;
  bool holds = true;

  bool operator==(const ReportCheck&) const = default;
};

/// Measured fields describe the analyzed distribution: the source itself, or
/// its image under the condenser when one is given.
struct EntropyReport {
  int n = 0;
  int m = 0;
  double delta = 0;
  std::string map;  // "identity", "f_d(d=2,k=1)", or "table"
  SourceSummary source;
  double min_entropy = 0;
  double shannon_entropy = 0;
  double min_rate = 0;
  double entropy_rate = 0;
  double imbalance = 0;  // +infinity when some outcome has zero mass
  ReportBounds bounds;
  std::optional<ExtractorSummary> extractor;
  std::vector<ReportCheck> checks;

  /// All applicable checks hold.
  bool passed() const;
  bool operator==(const EntropyReport&) const = default;
};

struct ReportContext {
  std::optional<CondenserMap> condenser;
  /// Seed count for the sliced very strong extractor; needs a condenser.
  std::optional<int> seeds;
};

EntropyReport build_report(const JointDistribution& mu, const ReportContext& context,
                           double delta);

}  // namespace svc
