// Shared test helpers: deterministic generators and independent brute-force
// oracles the implementation results are frozen against.
#pragma once

#include <bit>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <tuple>
#include <vector>

#include "hyperkey/gf2.hpp"
#include "hyperkey/hypergraph.hpp"
#include "hyperkey/lp.hpp"
#include "hyperkey/rational.hpp"
#include "hyperkey/scheme.hpp"
#include "hyperkey/subset.hpp"

namespace testers {

using namespace hyperkey;

using Rng = std::mt19937;

inline int rand_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Rational rand_rational(Rng& rng, int num_max = 6, int den_max = 4) {
  return Rational(rand_int(rng, 1, num_max), rand_int(rng, 1, den_max));
}

// Random valid source: every edge a proper nonempty subset, positive weight.
inline Hypergraph random_hypergraph(Rng& rng, int m, int max_edges = 5,
                                    bool integer_weights = false) {
  std::vector<RawEdge> edges;
  int ne = rand_int(rng, 1, max_edges);
  for (int e = 0; e < ne; ++e) {
    VertexSet verts = 0;
    int size = rand_int(rng, 1, m - 1);
    while (vs_size(verts) < size) verts |= vs_single(rand_int(rng, 1, m));
    if (verts == vs_full(m)) verts &= ~vs_single(rand_int(rng, 1, m));
    RawEdge edge;
    edge.label = "e" + std::to_string(e);
    edge.verts = vs_vertices(verts);
    edge.weight = integer_weights ? Rational(rand_int(rng, 1, 3))
                                  : rand_rational(rng);
    edges.push_back(edge);
  }
  return Hypergraph::validate(m, edges);
}

// Random connected PIN: a random spanning tree plus a few extra pairs,
// integer weights in 1..max_weight.
inline Hypergraph random_connected_pin(Rng& rng, int m, int max_weight = 3,
                                       int max_extra = 3) {
  std::vector<RawEdge> edges;
  int label = 0;
  auto add = [&](int a, int b) {
    RawEdge e;
    e.label = "e" + std::to_string(label++);
    e.verts = {std::min(a, b), std::max(a, b)};
    e.weight = Rational(rand_int(rng, 1, max_weight));
    edges.push_back(e);
  };
  for (int v = 2; v <= m; ++v) add(v, rand_int(rng, 1, v - 1));
  int extra = rand_int(rng, 0, max_extra);
  for (int e = 0; e < extra; ++e) {
    int a = rand_int(rng, 1, m), b = rand_int(rng, 1, m);
    if (a != b) add(a, b);
  }
  return Hypergraph::validate(m, edges);
}

// ---------------------------------------------------------------------------
// Independent set-partition generator (plain recursion, no growth strings).

inline void all_partitions_rec(int next, int m,
                               std::vector<std::vector<int>>& blocks,
                               std::vector<std::vector<std::vector<int>>>& out) {
  if (next > m) {
    out.push_back(blocks);
    return;
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    blocks[b].push_back(next);
    all_partitions_rec(next + 1, m, blocks, out);
    blocks[b].pop_back();
  }
  blocks.push_back({next});
  all_partitions_rec(next + 1, m, blocks, out);
  blocks.pop_back();
}

inline std::vector<std::vector<std::vector<int>>> brute_force_partitions(int m) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> blocks;
  all_partitions_rec(1, m, blocks, out);
  return out;
}

// ---------------------------------------------------------------------------
// LP oracle: optimal value of a bounded LP by enumerating basic points.

namespace lpdetail {

// Solves A x = b exactly; empty when singular.
inline std::optional<std::vector<Rational>> solve_square(
    std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row)
      if (!a[row][col].is_zero()) {
        pivot = row;
        break;
      }
    if (pivot < 0) return std::nullopt;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    Rational inv = Rational(1) / a[col][col];
    for (Rational& v : a[col]) v *= inv;
    b[col] *= inv;
    for (int row = 0; row < n; ++row) {
      if (row == col || a[row][col].is_zero()) continue;
      Rational f = a[row][col];
      for (int k = 0; k < n; ++k) a[row][k] -= f * a[col][k];
      b[row] -= f * b[col];
    }
  }
  return b;
}

}  // namespace lpdetail

// Enumerates every intersection of n constraint hyperplanes (rows, lower and
// upper bounds all count) and returns the best feasible objective value.
// Meaningful only for LPs whose feasible set is a polytope.
inline std::optional<Rational> vertex_enumeration_optimum(
    const LinearProgram& lp) {
  const int n = lp.num_vars();
  struct Plane {
    std::vector<Rational> coeffs;
    Rational rhs;
  };
  std::vector<Plane> planes;
  for (const LpConstraint& c : lp.constraints) planes.push_back({c.coeffs, c.rhs});
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> row(n);
    row[j] = Rational(1);
    Rational lb = j < static_cast<int>(lp.lower_bounds.size())
                      ? lp.lower_bounds[j]
                      : Rational(0);
    planes.push_back({row, lb});
    if (j < static_cast<int>(lp.upper_bounds.size()) && lp.upper_bounds[j])
      planes.push_back({row, *lp.upper_bounds[j]});
  }

  auto feasible = [&](const std::vector<Rational>& x) {
    for (int j = 0; j < n; ++j) {
      Rational lb = j < static_cast<int>(lp.lower_bounds.size())
                        ? lp.lower_bounds[j]
                        : Rational(0);
      if (x[j] < lb) return false;
      if (j < static_cast<int>(lp.upper_bounds.size()) && lp.upper_bounds[j] &&
          x[j] > *lp.upper_bounds[j])
        return false;
    }
    for (const LpConstraint& c : lp.constraints) {
      Rational lhs;
      for (int j = 0; j < n; ++j) lhs += c.coeffs[j] * x[j];
      if (c.rel == Rel::LessEq && lhs > c.rhs) return false;
      if (c.rel == Rel::GreaterEq && lhs < c.rhs) return false;
      if (c.rel == Rel::Eq && lhs != c.rhs) return false;
    }
    return true;
  };

  std::optional<Rational> best;
  const int np = static_cast<int>(planes.size());
  std::vector<int> pick(n, 0);
  // all n-subsets of planes
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
      std::vector<Rational> b(n);
      for (int r = 0; r < n; ++r) {
        a[r] = planes[pick[r]].coeffs;
        b[r] = planes[pick[r]].rhs;
      }
      auto x = lpdetail::solve_square(a, b);
      if (!x || !feasible(*x)) return;
      Rational value;
      for (int j = 0; j < n; ++j) value += lp.objective[j] * (*x)[j];
      if (!best)
        best = value;
      else if (lp.sense == LpSense::Maximize)
        best = rat_max(*best, value);
      else
        best = rat_min(*best, value);
      return;
    }
    for (int p = start; p < np; ++p) {
      pick[depth] = p;
      rec(p + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

// ---------------------------------------------------------------------------
// Brute-force scheme oracles over all 2^bits source realizations.

struct SchemeDistribution {
  bool key_uniform_independent = false;
  bool recoverable = false;
};

inline SchemeDistribution brute_force_scheme_check(const LinearScheme& scheme) {
  const long bits = scheme.source().total_bits();
  const int m = scheme.source().hypergraph().num_vertices();
  if (bits > 20) throw std::logic_error("brute force oracle limited to 20 bits");

  auto dot = [&](const Gf2Row& row, std::uint64_t x) {
    std::uint64_t masked = row[0] & x;
    return static_cast<int>(std::popcount(masked) & 1u);
  };
  auto tuple_of = [&](const std::vector<Gf2Row>& rows, std::uint64_t x) {
    std::uint64_t t = 0;
    for (std::size_t r = 0; r < rows.size(); ++r)
      t |= static_cast<std::uint64_t>(dot(rows[r], x)) << r;
    return t;
  };

  const std::uint64_t total = std::uint64_t{1} << bits;
  std::map<std::uint64_t, std::uint64_t> count_f, count_k;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> joint;
  std::vector<Gf2Row> observed;
  for (int user = 1; user <= m; ++user)
    observed.push_back(scheme.source().observed_mask(user));
  // (user observation, transcript) -> key must be single-valued
  std::map<std::tuple<int, std::uint64_t, std::uint64_t>, std::uint64_t> seen;
  bool recoverable = true;

  for (std::uint64_t x = 0; x < total; ++x) {
    std::uint64_t f = tuple_of(scheme.message_rows(), x);
    std::uint64_t k = tuple_of(scheme.key_rows(), x);
    ++count_f[f];
    ++count_k[k];
    ++joint[{f, k}];
    for (int user = 1; user <= m; ++user) {
      std::uint64_t obs = observed[user - 1][0] & x;
      auto key = std::make_tuple(user, obs, f);
      auto [it, inserted] = seen.emplace(key, k);
      if (!inserted && it->second != k) recoverable = false;
    }
  }

  const std::uint64_t nk = scheme.key_rows().size();
  bool uniform = count_k.size() == (std::uint64_t{1} << nk);
  for (const auto& [k, c] : count_k)
    if (c != total >> nk) uniform = false;
  bool independent = true;
  for (const auto& [fk, c] : joint) {
    // exact: P(f,k) * total == P(f) * P(k) scaled
    if (c * total != count_f[fk.first] * count_k[fk.second]) independent = false;
  }
  return SchemeDistribution{uniform && independent, recoverable};
}

}  // namespace testers
