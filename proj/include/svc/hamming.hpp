#pragma once

// Hamming code of length 2^d - 1 and its coset labeling.
//
// The parity-check matrix M_d has column j equal to the d-bit binary
// representation of j (row 1 = most significant bit). Because column j is
// binary(j), the syndrome M_d x over GF(2) is the XOR of the positions of the
// set bits of x, and it names the coset Ham_d ^ e_i that contains x.

#include <cstdint>
#include <span>
#include <vector>

#include "svc/bitdist.hpp"

namespace svc {

inline constexpr int kMinHammingParam = 2;
inline constexpr int kMaxHammingParam = 8;
/// Largest d whose 2^(2^d - 1) strings we enumerate.
inline constexpr int kMaxEnumerableHammingParam = 4;

class HammingCode {
 public:
  explicit HammingCode(int d);

  int d() const { return d_; }
  int block_len() const { return block_len_; }
  /// 64-bit words needed to hold one block.
  int words_per_block() const { return (block_len_ + 63) / 64; }

  /// Entry (row, col) of M_d, both 1-indexed.
  bool parity_bit(int row, int col) const;
  std::vector<std::vector<std::uint8_t>> parity_matrix() const;

  /// Block as a BitString of length 2^d - 1 (so d <= 4).
  BitString syndrome(const BitString& block) const;
  bool is_codeword(const BitString& block) const;

  /// Block packed MSB-first into words: x_1 is bit 63 of words[0], x_65 is
  /// bit 63 of words[1], and so on. Bits past block_len are ignored.
  std::uint32_t syndrome(std::span<const std::uint64_t> words) const;

  /// Block held in the low block_len bits of `block`, x_1 most significant
  /// (requires block_len <= 64, i.e. d <= 6).
  std::uint32_t syndrome_of_value(std::uint64_t block) const;

  /// 2^(2^d - 1 - d).
  std::uint64_t codeword_count() const;

  /// Every length-(2^d - 1) string grouped by syndrome; entry i is the coset
  /// Ham_d ^ e_i. Requires d <= 4.
  std::vector<std::vector<std::uint32_t>> coset_partition() const;

 private:
  int d_;
  int block_len_;
};

}  // namespace svc
