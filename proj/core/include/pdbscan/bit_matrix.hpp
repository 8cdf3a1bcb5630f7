#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pdbscan {

/// Dense boolean matrix, row-major, 64 columns per word. Padding bits past
/// the last column are always zero.
class BitMatrix {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_((cols + kWordBits - 1) / kWordBits), words_(rows * stride_) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t words_per_row() const noexcept { return stride_; }

  bool test(std::size_t r, std::size_t c) const noexcept {
    return (words_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & Word{1};
  }
  void set(std::size_t r, std::size_t c) noexcept {
    words_[r * stride_ + c / kWordBits] |= Word{1} << (c % kWordBits);
  }

  std::span<Word> row(std::size_t r) noexcept { return {words_.data() + r * stride_, stride_}; }
  std::span<const Word> row(std::size_t r) const noexcept {
    return {words_.data() + r * stride_, stride_};
  }

  std::size_t row_popcount(std::size_t r) const noexcept {
    std::size_t count = 0;
    for (Word w : row(r)) count += static_cast<std::size_t>(std::popcount(w));
    return count;
  }

  /// Lowest set column in row r, or cols() if the row is empty.
  std::size_t first_set(std::size_t r) const noexcept;

  /// Byte view of a row; column c lives in byte c / 8, bit c % 8.
  std::uint8_t* row_bytes(std::size_t r) noexcept {
    return reinterpret_cast<std::uint8_t*>(words_.data() + r * stride_);
  }

  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> words() noexcept { return words_; }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> words_;
};

static_assert(std::endian::native == std::endian::little,
              "BitMatrix::row_bytes assumes little-endian word layout");

/// Writes `hits` (one 0/1 byte per column) into bits [col, col + hits.size())
/// of a row given as bytes. Unaligned head and tail bits are read-modify-write;
/// aligned groups of 8 are packed with a single multiply.
void pack_hits(std::uint8_t* row_bytes, std::size_t col, std::span<const std::uint8_t> hits) noexcept;

}  // namespace pdbscan
