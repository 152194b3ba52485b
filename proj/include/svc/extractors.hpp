#pragma once

// Very strong extractors and their relation to entropy condensers.
//
// A seeded map g(x, s), s in 1..D, is a very strong eps-extractor for mu when
// the output under seed T stays eps-close to uniform on average even given
// the outputs g(x, 1..T-1) under all preceding seeds. Slicing a condenser's
// output into D consecutive pieces gives such an extractor; concatenating the
// outputs of an extractor over all seeds gives an entropy condenser.

#include <cstdint>
#include <variant>
#include <vector>

#include "svc/bitdist.hpp"
#include "svc/condenser.hpp"

namespace svc {

/// Limits for exact very-strong-error evaluation.
inline constexpr int kMaxVseInputBits = 16;
inline constexpr int kMaxVseOutputBits = 16;

class SeededMap {
 public:
  struct Sliced {
    CondenserMap h;
  };
  struct Table {
    /// outputs[s - 1][x]
    std::vector<std::vector<std::uint32_t>> outputs;
  };

  static SeededMap table(int n, int seeds, int m_out,
                         std::vector<std::vector<std::uint32_t>> outputs);

  int n() const { return n_; }
  int seeds() const { return seeds_; }
  int m_out() const { return m_out_; }
  const Sliced* sliced_body() const { return std::get_if<Sliced>(&body_); }
  const Table* table_body() const { return std::get_if<Table>(&body_); }

  /// g(x, s), seeds 1-based.
  std::uint32_t operator()(std::uint32_t x, int s) const;

 private:
  friend SeededMap vse_from_condenser(const CondenserMap& h, int seeds);
  SeededMap(int n, int seeds, int m_out, std::variant<Sliced, Table> body)
      : n_(n), seeds_(seeds), m_out_(m_out), body_(std::move(body)) {}

  int n_;
  int seeds_;
  int m_out_;
  std::variant<Sliced, Table> body_;
};

/// g(x, s) = bits (s-1)m/D + 1 .. sm/D of h(x). Requires D | m.
SeededMap vse_from_condenser(const CondenserMap& h, int seeds);

/// (1/D) sum_t (1/2) || law of g(X, t) - U ||_1.
double strong_error(const SeededMap& g, const JointDistribution& mu);

/// E_{T, Z} (1/2) || law of g(X, T) given g(X, s) = g(Z, s) for s < T - U ||_1.
double very_strong_error(const SeededMap& g, const JointDistribution& mu);

/// (1/D) sum_t H(g(X, t) | g(X, 1), ..., g(X, t-1)).
double mean_conditional_slice_entropy(const SeededMap& g, const JointDistribution& mu);

struct ClaimBound {
  double value;
  /// (ln 2 / 2) eps <= D / m for the slicing bound; 0 <= delta <= 1 for the
  /// concatenation bound.
  bool precondition_ok;
  /// Concatenation bound only: the rate bound is <= 0.
  bool vacuous = false;
};

/// sqrt((ln 2 / 2) * eps * m / D).
ClaimBound claim_bound_cond_extr(double entropy_deficit_rate, int m, int seeds);

/// Entropy-rate guarantee 1 - delta - sqrt(4 log2(e) delta / m) for the
/// concatenation of a very strong delta-extractor with m-bit outputs.
ClaimBound claim_bound_extr_cond(double delta_vse, int m_out);

/// h_g(x) = g(x, 1) ... g(x, D), seed 1 in the most significant position.
CondenserMap entropy_condenser_from_vse(const SeededMap& g);

struct PinskerSandwich {
  double lower;    // (log2 e / 2) ||mu - U||_1^2
  double deficit;  // n - H(mu)
  double upper;    // (1/2)||mu - U||_1 n + sqrt(2 log2 e ||mu - U||_1 n)

  bool holds(double slack = kMassTolerance) const {
    return lower <= deficit + slack && deficit <= upper + slack;
  }
};

/// Both sides of the entropy-deficit sandwich, with A the whole cube.
PinskerSandwich pinsker_sandwich(const JointDistribution& mu);

struct VSEReport {
  int seeds;
  int m_out;
  double strong_error;
  double very_strong_error;
  /// 1 - H(h(X)) / m, measured.
  double entropy_deficit_rate;
  ClaimBound claim_bound;
  /// Entropy-rate guarantee of the concatenation, from the measured error.
  ClaimBound concat_rate_bound;
  double concat_entropy;
  double mean_slice_entropy;
};

VSEReport evaluate_vse(const CondenserMap& h, int seeds, const JointDistribution& mu);

}  // namespace svc
