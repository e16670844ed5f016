#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace hyperkey {

// Dense GF(2) row vectors packed into 64-bit words.
using Gf2Row = std::vector<std::uint64_t>;

inline Gf2Row gf2_zero_row(long cols) {
  return Gf2Row(static_cast<std::size_t>((cols + 63) / 64), 0);
}

inline void gf2_flip(Gf2Row& row, long bit) {
  row[static_cast<std::size_t>(bit >> 6)] ^= std::uint64_t{1} << (bit & 63);
}

inline bool gf2_test(const Gf2Row& row, long bit) {
  return (row[static_cast<std::size_t>(bit >> 6)] >> (bit & 63)) & 1u;
}

inline void gf2_xor(Gf2Row& dst, const Gf2Row& src) {
  for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
}

inline bool gf2_is_zero(const Gf2Row& row) {
  for (std::uint64_t w : row)
    if (w != 0) return false;
  return true;
}

inline long gf2_lowest_bit(const Gf2Row& row) {
  for (std::size_t w = 0; w < row.size(); ++w)
    if (row[w] != 0)
      return static_cast<long>(w) * 64 + std::countr_zero(row[w]);
  return -1;
}

// Row basis in echelon form, each row keyed by its lowest set bit.
class Gf2Basis {
 public:
  // Reduces the row against the basis; inserts the remainder if nonzero.
  // Returns true when the row was already in the span.
  bool insert(Gf2Row row) {
    reduce(row);
    if (gf2_is_zero(row)) return true;
    long pivot = gf2_lowest_bit(row);
    rows_.push_back(std::move(row));
    pivots_.push_back(pivot);
    return false;
  }

  bool contains(Gf2Row row) const {
    reduce(row);
    return gf2_is_zero(row);
  }

  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  void reduce(Gf2Row& row) const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (gf2_test(row, pivots_[i])) gf2_xor(row, rows_[i]);
  }

  std::vector<Gf2Row> rows_;
  std::vector<long> pivots_;
};

inline int gf2_rank(const std::vector<Gf2Row>& rows) {
  Gf2Basis basis;
  for (const Gf2Row& row : rows) basis.insert(row);
  return basis.rank();
}

}  // namespace hyperkey
