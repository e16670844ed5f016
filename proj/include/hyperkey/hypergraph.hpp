#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hyperkey/rational.hpp"
#include "hyperkey/subset.hpp"

namespace hyperkey {

enum class ValidationCode {
  TooFewVertices,
  TooManyVertices,
  EmptyEdgeSet,
  EmptyIncidence,
  FullCoverEdge,
  ZeroWeightEdge,
  DuplicateEdgeLabel,
  VertexOutOfRange,
};

inline const char* to_string(ValidationCode c) {
  switch (c) {
    case ValidationCode::TooFewVertices: return "TooFewVertices";
    case ValidationCode::TooManyVertices: return "TooManyVertices";
    case ValidationCode::EmptyEdgeSet: return "EmptyEdgeSet";
    case ValidationCode::EmptyIncidence: return "EmptyIncidence";
    case ValidationCode::FullCoverEdge: return "FullCoverEdge";
    case ValidationCode::ZeroWeightEdge: return "ZeroWeightEdge";
    case ValidationCode::DuplicateEdgeLabel: return "DuplicateEdgeLabel";
    case ValidationCode::VertexOutOfRange: return "VertexOutOfRange";
  }
  return "Unknown";
}

class ValidationError : public std::runtime_error {
 public:
  ValidationError(ValidationCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}
  ValidationCode code() const { return code_; }

 private:
  ValidationCode code_;
};

struct Edge {
  std::string label;
  VertexSet verts = 0;
  Rational weight;
};

struct RawEdge {
  std::string label;
  std::vector<int> verts;
  Rational weight;
};

// Weight function c: aggregated edge weight per incidence set, support only.
struct WeightFunction {
  std::vector<std::pair<VertexSet, Rational>> entries;  // sorted by set mask

  Rational at(VertexSet b) const {
    for (const auto& [set, w] : entries)
      if (set == b) return w;
    return Rational(0);
  }

  std::vector<VertexSet> support() const {
    std::vector<VertexSet> out;
    out.reserve(entries.size());
    for (const auto& [set, w] : entries) out.push_back(set);
    return out;
  }

  Rational total() const {
    Rational t;
    for (const auto& [set, w] : entries) t += w;
    return t;
  }
};

// A source given by independent weighted hyperedges over vertices 1..m.
// Immutable once validated; every operation is pure.
class Hypergraph {
 public:
  static Hypergraph validate(int num_vertices, const std::vector<RawEdge>& raw) {
    if (num_vertices < 3)
      throw ValidationError(ValidationCode::TooFewVertices,
                            "need at least 3 vertices, got " +
                                std::to_string(num_vertices));
    if (num_vertices > kMaxVertices)
      throw ValidationError(ValidationCode::TooManyVertices,
                            "at most " + std::to_string(kMaxVertices) +
                                " vertices supported, got " +
                                std::to_string(num_vertices));
    if (raw.empty())
      throw ValidationError(ValidationCode::EmptyEdgeSet, "no edges given");

    const VertexSet full = vs_full(num_vertices);
    std::set<std::string> labels;
    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (const RawEdge& e : raw) {
      if (!labels.insert(e.label).second)
        throw ValidationError(ValidationCode::DuplicateEdgeLabel,
                              "edge label '" + e.label + "' repeated");
      if (e.verts.empty())
        throw ValidationError(ValidationCode::EmptyIncidence,
                              "edge '" + e.label + "' has no vertices");
      for (int v : e.verts)
        if (v < 1 || v > num_vertices)
          throw ValidationError(ValidationCode::VertexOutOfRange,
                                "edge '" + e.label + "' touches vertex " +
                                    std::to_string(v));
      VertexSet inc = vs_from(e.verts);
      if (inc == full)
        throw ValidationError(ValidationCode::FullCoverEdge,
                              "edge '" + e.label + "' covers every vertex");
      if (e.weight.sign() <= 0)
        throw ValidationError(ValidationCode::ZeroWeightEdge,
                              "edge '" + e.label + "' has non-positive weight");
      edges.push_back(Edge{e.label, inc, e.weight});
    }
    return Hypergraph(num_vertices, std::move(edges));
  }

  int num_vertices() const { return m_; }
  VertexSet vertex_set() const { return vs_full(m_); }
  const std::vector<Edge>& edges() const { return edges_; }

  int edge_index(const std::string& label) const {
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (edges_[i].label == label) return static_cast<int>(i);
    return -1;
  }

  bool is_pin() const {
    return std::all_of(edges_.begin(), edges_.end(),
                       [](const Edge& e) { return vs_size(e.verts) == 2; });
  }

  WeightFunction weight_function() const {
    std::map<VertexSet, Rational> agg;
    for (const Edge& e : edges_) agg[e.verts] += e.weight;
    WeightFunction wf;
    wf.entries.assign(agg.begin(), agg.end());
    return wf;
  }

  // H(Z_B): total weight of edges meeting B.
  Rational entropy(VertexSet b) const {
    Rational h;
    for (const Edge& e : edges_)
      if ((e.verts & b) != 0) h += e.weight;
    return h;
  }

  // H(Z_B | Z_{V\B}): total weight of edges contained in B; requires B != V.
  Rational cond_entropy(VertexSet b) const {
    if (b == vertex_set())
      throw std::invalid_argument("cond_entropy: B must be a proper subset");
    Rational h;
    for (const Edge& e : edges_)
      if (vs_subset(e.verts, b)) h += e.weight;
    return h;
  }

  Rational total_entropy() const { return entropy(vertex_set()); }

  bool all_integer_weights() const {
    return std::all_of(edges_.begin(), edges_.end(),
                       [](const Edge& e) { return e.weight.is_integer(); });
  }

  // True iff every vertex is incident to some edge and the incidence
  // structure is connected (edges as cliques).
  bool is_connected() const {
    VertexSet covered = 0;
    for (const Edge& e : edges_) covered |= e.verts;
    if (covered != vertex_set()) return false;
    VertexSet reach = edges_[0].verts;
    bool grew = true;
    while (grew) {
      grew = false;
      for (const Edge& e : edges_)
        if ((e.verts & reach) != 0 && !vs_subset(e.verts, reach)) {
          reach |= e.verts;
          grew = true;
        }
    }
    return reach == vertex_set();
  }

 private:
  Hypergraph(int m, std::vector<Edge> edges) : m_(m), edges_(std::move(edges)) {}

  int m_;
  std::vector<Edge> edges_;
};

}  // namespace hyperkey
