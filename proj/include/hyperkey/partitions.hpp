#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hyperkey/hypergraph.hpp"
#include "hyperkey/rational.hpp"
#include "hyperkey/subset.hpp"

namespace hyperkey {

inline constexpr int kDefaultEnumLimit = 12;

class LimitExceeded : public std::runtime_error {
 public:
  explicit LimitExceeded(const std::string& message)
      : std::runtime_error("LimitExceeded: " + message) {}
};

// Partition of {1..m} into at least two blocks, blocks ordered by their
// smallest element.
struct Partition {
  std::vector<VertexSet> blocks;

  int size() const { return static_cast<int>(blocks.size()); }

  std::string str() const {
    std::string out;
    for (VertexSet b : blocks) out += vs_str(b);
    return out;
  }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.blocks == b.blocks;
  }
};

inline Partition singleton_partition(int m) {
  Partition p;
  for (int i = 1; i <= m; ++i) p.blocks.push_back(vs_single(i));
  return p;
}

inline bool is_valid_partition(int m, const Partition& p) {
  if (p.size() < 2) return false;
  VertexSet seen = 0;
  for (VertexSet b : p.blocks) {
    if (b == 0 || (b & seen) != 0) return false;
    seen |= b;
  }
  return seen == vs_full(m);
}

// Yields every partition of {1..m} with at least min_blocks blocks, exactly
// once, in restricted-growth-string order. Block order inside a partition is
// by smallest element, which the growth string gives for free.
template <typename Fn>
void enumerate_partitions(int m, int min_blocks, Fn&& fn,
                          int limit = kDefaultEnumLimit) {
  if (m < 3) throw std::invalid_argument("enumerate_partitions: m < 3");
  if (m > limit)
    throw LimitExceeded("partition enumeration over " + std::to_string(m) +
                        " vertices exceeds limit " + std::to_string(limit));
  std::vector<int> rgs(m, 0);       // rgs[i] = block index of vertex i+1
  std::vector<int> prefix_max(m, 0);  // max of rgs[0..i-1], prefix_max[0] = 0
  // Iterative successor loop in lexicographic order; rgs is a valid growth
  // string iff rgs[i] <= prefix_max[i] + (i > 0 ? 1 : 0) with rgs[0] = 0.
  while (true) {
    int num_blocks = std::max(prefix_max[m - 1], rgs[m - 1]) + 1;
    if (num_blocks >= min_blocks) {
      Partition p;
      p.blocks.assign(num_blocks, 0);
      for (int i = 0; i < m; ++i) p.blocks[rgs[i]] |= vs_single(i + 1);
      fn(p);
    }
    int pos = m - 1;
    while (pos >= 1 && rgs[pos] > prefix_max[pos]) --pos;
    if (pos < 1) return;
    ++rgs[pos];
    for (int i = pos + 1; i < m; ++i) {
      rgs[i] = 0;
      prefix_max[i] = std::max(prefix_max[i - 1], rgs[i - 1]);
    }
  }
}

inline std::uint64_t count_partitions(int m, int min_blocks,
                                      int limit = kDefaultEnumLimit) {
  std::uint64_t n = 0;
  enumerate_partitions(m, min_blocks, [&](const Partition&) { ++n; }, limit);
  return n;
}

// Cut ratio of a partition: (max over edges of the number of blocks the edge
// meets, minus one) / (number of blocks minus one). Zero exactly when no edge
// crosses the partition, one when some edge meets every block.
inline Rational alpha(const Hypergraph& hg, const Partition& p) {
  if (!is_valid_partition(hg.num_vertices(), p))
    throw std::invalid_argument("alpha: not a partition of the vertex set");
  int max_cut = 1;
  for (const Edge& e : hg.edges()) {
    int hit = 0;
    for (VertexSet b : p.blocks)
      if ((e.verts & b) != 0) ++hit;
    max_cut = std::max(max_cut, hit);
  }
  return Rational(max_cut - 1) / Rational(p.size() - 1);
}

}  // namespace hyperkey
