#include "svc/hamming.hpp"

#include <bit>
#include <string>

namespace svc {

HammingCode::HammingCode(int d) : d_(d), block_len_((1 << d) - 1) {
  if (d < kMinHammingParam || d > kMaxHammingParam) {
    throw std::invalid_argument("Hamming parameter d = " + std::to_string(d) + " outside [" +
                                std::to_string(kMinHammingParam) + ", " +
                                std::to_string(kMaxHammingParam) + "]");
  }
}

bool HammingCode::parity_bit(int row, int col) const {
  if (row < 1 || row > d_ || col < 1 || col > block_len_) {
    throw std::out_of_range("parity matrix index out of range");
  }
  return ((col >> (d_ - row)) & 1) != 0;
}

std::vector<std::vector<std::uint8_t>> HammingCode::parity_matrix() const {
  std::vector<std::vector<std::uint8_t>> m(static_cast<std::size_t>(d_),
                                           std::vector<std::uint8_t>(block_len_));
  for (int r = 1; r <= d_; ++r) {
    for (int c = 1; c <= block_len_; ++c) {
      m[r - 1][c - 1] = parity_bit(r, c) ? 1 : 0;
    }
  }
  return m;
}

std::uint32_t HammingCode::syndrome_of_value(std::uint64_t block) const {
  if (block_len_ > 64) throw DimensionError("block does not fit in one machine word");
  if (block_len_ < 64) block &= (std::uint64_t{1} << block_len_) - 1;
  std::uint32_t acc = 0;
  while (block != 0) {
    int shift = std::countr_zero(block);
    acc ^= static_cast<std::uint32_t>(block_len_ - shift);
    block &= block - 1;
  }
  return acc;
}

std::uint32_t HammingCode::syndrome(std::span<const std::uint64_t> words) const {
  if (static_cast<int>(words.size()) != words_per_block()) {
    throw DimensionError("block needs " + std::to_string(words_per_block()) + " words, got " +
                         std::to_string(words.size()));
  }
  std::uint32_t acc = 0;
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t word = words[w];
    int valid = block_len_ - static_cast<int>(w) * 64;
    if (valid < 64) word &= ~std::uint64_t{0} << (64 - valid);
    while (word != 0) {
      int lead = std::countl_zero(word);
      acc ^= static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(lead) + 1);
      word &= ~(std::uint64_t{1} << (63 - lead));
    }
  }
  return acc;
}

BitString HammingCode::syndrome(const BitString& block) const {
  if (block.n != block_len_) {
    throw DimensionError("block length " + std::to_string(block.n) + " but the code has length " +
                         std::to_string(block_len_));
  }
  return BitString(d_, syndrome_of_value(block.value));
}

bool HammingCode::is_codeword(const BitString& block) const {
  return syndrome(block).value == 0;
}

std::uint64_t HammingCode::codeword_count() const {
  return std::uint64_t{1} << (block_len_ - d_);
}

std::vector<std::vector<std::uint32_t>> HammingCode::coset_partition() const {
  if (d_ > kMaxEnumerableHammingParam) {
    throw DimensionError("coset enumeration supports d <= " +
                         std::to_string(kMaxEnumerableHammingParam));
  }
  std::vector<std::vector<std::uint32_t>> cosets(std::size_t{1} << d_);
  for (auto& c : cosets) c.reserve(codeword_count());
  const std::uint32_t total = 1u << block_len_;
  for (std::uint32_t x = 0; x < total; ++x) cosets[syndrome_of_value(x)].push_back(x);
  return cosets;
}

}  // namespace svc
