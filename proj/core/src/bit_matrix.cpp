#include "pdbscan/bit_matrix.hpp"

#include <cstring>

namespace pdbscan {

std::size_t BitMatrix::first_set(std::size_t r) const noexcept {
  const auto words = row(r);
  for (std::size_t w = 0; w < words.size(); ++w) {
    if (words[w] != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words[w]));
  }
  return cols_;
}

void pack_hits(std::uint8_t* row_bytes, std::size_t col, std::span<const std::uint8_t> hits) noexcept {
  std::size_t k = 0;
  const std::size_t len = hits.size();
  for (; k < len && (col + k) % 8 != 0; ++k) {
    const std::size_t c = col + k;
    const auto mask = static_cast<std::uint8_t>(1u << (c % 8));
    row_bytes[c / 8] = hits[k] ? (row_bytes[c / 8] | mask) : (row_bytes[c / 8] & ~mask);
  }
  // Byte b of the 8-byte group moves to bit 56 + b; 0x0102040810204080 has
  // no colliding partial products for 0/1 bytes.
  constexpr std::uint64_t kGather = 0x0102040810204080ULL;
  for (; k + 8 <= len; k += 8) {
    std::uint64_t group = 0;
    std::memcpy(&group, hits.data() + k, 8);
    row_bytes[(col + k) / 8] = static_cast<std::uint8_t>((group * kGather) >> 56);
  }
  for (; k < len; ++k) {
    const std::size_t c = col + k;
    const auto mask = static_cast<std::uint8_t>(1u << (c % 8));
    row_bytes[c / 8] = hits[k] ? (row_bytes[c / 8] | mask) : (row_bytes[c / 8] & ~mask);
  }
}

}  // namespace pdbscan
