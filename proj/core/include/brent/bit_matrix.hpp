#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>

namespace brent {

/// Largest supported matrix dimension; an n x n matrix fits in one 64-bit word.
inline constexpr int kMaxDimension = 8;

/// Square GF(2) matrix of dimension n <= kMaxDimension stored row-major in a
/// single word. Indices are 0-based.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(int n, std::uint64_t bits = 0) : n_(n), bits_(bits) {
    if (n < 1 || n > kMaxDimension) {
      throw std::invalid_argument("BitMatrix: dimension out of range");
    }
    if (n * n < 64) bits_ &= (std::uint64_t{1} << (n * n)) - 1;
  }

  int dim() const { return n_; }
  std::uint64_t bits() const { return bits_; }

  bool get(int row, int col) const { return (bits_ >> cell(row, col)) & 1U; }
  void set(int row, int col, bool value = true) {
    const auto mask = std::uint64_t{1} << cell(row, col);
    bits_ = value ? (bits_ | mask) : (bits_ & ~mask);
  }
  void flip(int row, int col) { bits_ ^= std::uint64_t{1} << cell(row, col); }

  int popcount() const { return std::popcount(bits_); }
  bool is_zero() const { return bits_ == 0; }

  BitMatrix transposed() const {
    BitMatrix t(n_);
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c)
        if (get(r, c)) t.set(c, r);
    return t;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  int cell(int row, int col) const { return row * n_ + col; }

  int n_ = 1;
  std::uint64_t bits_ = 0;
};

}  // namespace brent
