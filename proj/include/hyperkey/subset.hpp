#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace hyperkey {

// Subsets of the vertex set {1..m} as bitmasks: vertex i occupies bit i-1.
// Validation caps m at 30, so uint32_t always suffices.
using VertexSet = std::uint32_t;

inline constexpr int kMaxVertices = 30;

inline VertexSet vs_full(int m) {
  return m == 32 ? ~VertexSet{0} : (VertexSet{1} << m) - 1;
}

inline VertexSet vs_single(int vertex) { return VertexSet{1} << (vertex - 1); }

inline bool vs_contains(VertexSet s, int vertex) {
  return (s >> (vertex - 1)) & 1u;
}

inline bool vs_subset(VertexSet a, VertexSet b) { return (a & ~b) == 0; }

inline int vs_size(VertexSet s) { return std::popcount(s); }

inline std::vector<int> vs_vertices(VertexSet s) {
  std::vector<int> out;
  for (int i = 1; s != 0; ++i, s >>= 1)
    if (s & 1u) out.push_back(i);
  return out;
}

inline VertexSet vs_from(const std::vector<int>& vertices) {
  VertexSet s = 0;
  for (int v : vertices) s |= vs_single(v);
  return s;
}

inline std::string vs_str(VertexSet s) {
  std::string out = "{";
  bool first = true;
  for (int v : vs_vertices(s)) {
    if (!first) out += ",";
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

}  // namespace hyperkey
