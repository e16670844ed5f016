#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hyperkey/bounds.hpp"
#include "hyperkey/hypergraph.hpp"
#include "hyperkey/lp.hpp"
#include "hyperkey/partitions.hpp"
#include "hyperkey/rational.hpp"
#include "hyperkey/subset.hpp"

namespace hyperkey {

class NotPin : public std::runtime_error {
 public:
  explicit NotPin(const std::string& msg)
      : std::runtime_error("NotPin: " + msg) {}
};

class TreeCapExceeded : public std::runtime_error {
 public:
  explicit TreeCapExceeded(const std::string& msg)
      : std::runtime_error("TreeCapExceeded: " + msg) {}
};

inline constexpr std::size_t kDefaultTreeCap = 100000;

struct OmniscienceResult {
  Rational r_co;
  std::vector<Rational> rates;
};

// Minimum total rate for every user to recover the whole source: minimize
// r(V) subject to r(B) >= H(Z_B | Z_{V\B}) for every proper nonempty B.
inline OmniscienceResult rco(const Hypergraph& hg, int limit = kDefaultEnumLimit) {
  const int m = hg.num_vertices();
  if (m > limit)
    throw LimitExceeded("omniscience LP over " + std::to_string(m) +
                        " vertices exceeds limit " + std::to_string(limit));
  LinearProgram lp(m, LpSense::Minimize);
  for (int j = 0; j < m; ++j) lp.objective[j] = Rational(1);
  const VertexSet full = vs_full(m);
  for (VertexSet b = 1; b < full; ++b) {
    std::vector<Rational> row(m);
    for (int v : vs_vertices(b)) row[v - 1] = Rational(1);
    lp.add_constraint(std::move(row), Rel::GreaterEq, hg.cond_entropy(b));
  }
  LpSolution sol = lp_solve(lp);
  if (sol.status != LpStatus::Optimal)
    throw std::logic_error("rco: omniscience LP must have an optimum");
  return OmniscienceResult{sol.value, sol.point};
}

inline Rational cs_infinity(const Hypergraph& hg, int limit = kDefaultEnumLimit) {
  return hg.total_entropy() - rco(hg, limit).r_co;
}

// ---------------------------------------------------------------------------
// Fractional tree packing (PIN only)

struct TreePacking {
  // pair graph: distinct size-2 supports with aggregated capacities
  std::vector<VertexSet> pairs;
  std::vector<Rational> capacities;
  // trees as index lists into pairs, with their multiplicities
  std::vector<std::vector<int>> trees;
  std::vector<Rational> eta;
  Rational value;
};

namespace detail {

// All spanning trees of the simple graph, as sorted index lists; grow-forest
// enumeration with a cycle check and a cap on the number of trees.
inline void spanning_trees_rec(int m, const std::vector<std::pair<int, int>>& pairs,
                               std::size_t idx, std::vector<int>& chosen,
                               std::vector<int>& parent,
                               std::vector<std::vector<int>>& out,
                               std::size_t cap) {
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v];
    return v;
  };
  if (chosen.size() == static_cast<std::size_t>(m - 1)) {
    if (out.size() >= cap)
      throw TreeCapExceeded("more than " + std::to_string(cap) +
                            " spanning trees");
    out.push_back(chosen);
    return;
  }
  if (idx >= pairs.size()) return;
  if (pairs.size() - idx < (m - 1) - chosen.size()) return;  // not enough left
  int a = find(pairs[idx].first), b = find(pairs[idx].second);
  if (a != b) {
    std::vector<int> saved = parent;
    parent[a] = b;
    chosen.push_back(static_cast<int>(idx));
    spanning_trees_rec(m, pairs, idx + 1, chosen, parent, out, cap);
    chosen.pop_back();
    parent = saved;
  }
  spanning_trees_rec(m, pairs, idx + 1, chosen, parent, out, cap);
}

}  // namespace detail

inline std::vector<std::vector<int>> enumerate_spanning_trees(
    int m, const std::vector<std::pair<int, int>>& pairs,
    std::size_t cap = kDefaultTreeCap) {
  std::vector<int> chosen;
  std::vector<int> parent(m + 1);
  for (int v = 0; v <= m; ++v) parent[v] = v;
  std::vector<std::vector<int>> out;
  detail::spanning_trees_rec(m, pairs, 0, chosen, parent, out, cap);
  return out;
}

// Optimal fractional tree packing of a PIN: enumerate spanning trees of the
// pair-support graph and maximize the total multiplicity subject to the
// per-pair capacities. A disconnected support has no spanning tree and packs
// value zero.
inline TreePacking tree_packing_number(const Hypergraph& hg,
                                       std::size_t tree_cap = kDefaultTreeCap) {
  if (!hg.is_pin()) throw NotPin("tree packing applies to PIN sources");
  const int m = hg.num_vertices();

  TreePacking packing;
  WeightFunction wf = hg.weight_function();
  std::vector<std::pair<int, int>> pair_list;
  for (const auto& [set, w] : wf.entries) {
    packing.pairs.push_back(set);
    packing.capacities.push_back(w);
    std::vector<int> vs = vs_vertices(set);
    pair_list.emplace_back(vs[0], vs[1]);
  }

  packing.trees = enumerate_spanning_trees(m, pair_list, tree_cap);
  if (packing.trees.empty()) {
    packing.value = Rational(0);
    return packing;
  }

  const int nt = static_cast<int>(packing.trees.size());
  LinearProgram lp(nt, LpSense::Maximize);
  for (int j = 0; j < nt; ++j) lp.objective[j] = Rational(1);
  for (std::size_t p = 0; p < packing.pairs.size(); ++p) {
    std::vector<Rational> row(nt);
    for (int j = 0; j < nt; ++j)
      if (std::find(packing.trees[j].begin(), packing.trees[j].end(),
                    static_cast<int>(p)) != packing.trees[j].end())
        row[j] = Rational(1);
    lp.add_constraint(std::move(row), Rel::LessEq, packing.capacities[p]);
  }
  LpSolution sol = lp_solve(lp);
  if (sol.status != LpStatus::Optimal)
    throw std::logic_error("tree packing LP must have an optimum");
  packing.eta = sol.point;
  packing.value = sol.value;
  return packing;
}

// ---------------------------------------------------------------------------
// Capacity profiles

// Piecewise-linear curve R -> min(slope*R, cap); concave and non-decreasing.
struct Envelope {
  Rational slope;
  Rational cap;

  Rational eval(const Rational& r) const { return rat_min(slope * r, cap); }
};

struct CapacityProfile {
  Rational h_total;
  Rational r_co;
  Rational cs_inf;
  std::vector<Rational> rates;      // one omniscience-optimal rate tuple
  Rational best_slope;
  BoundKind best_kind = BoundKind::EP;
  std::optional<BoundReport> best_bound;
  bool exact = false;               // true when the envelope is the capacity
  std::optional<Rational> r_s;      // communication complexity, PIN only

  Envelope envelope() const { return Envelope{best_slope, cs_inf}; }
};

// Exact tradeoff for a PIN: slope 1/(|V|-2) up to the unconstrained
// capacity, communication complexity (|V|-2) * C_S(infinity).
inline CapacityProfile pin_capacity_curve(const Hypergraph& hg,
                                          int limit = kDefaultEnumLimit) {
  if (!hg.is_pin()) throw NotPin("capacity curve is exact for PINs only");
  const int m = hg.num_vertices();
  CapacityProfile profile;
  profile.h_total = hg.total_entropy();
  OmniscienceResult omni = rco(hg, limit);
  profile.r_co = omni.r_co;
  profile.rates = omni.rates;
  profile.cs_inf = profile.h_total - profile.r_co;
  profile.best_slope = Rational(1) / Rational(m - 2);
  profile.best_kind = BoundKind::EP;
  profile.best_bound = ep_bound(hg, singleton_partition(m));
  profile.exact = true;
  profile.r_s = Rational(m - 2) * profile.cs_inf;
  return profile;
}

struct EnvelopeOptions {
  int limit = kDefaultEnumLimit;
  std::vector<Rational> rho_grid;  // empty -> default grid
  std::vector<VertexSet> lamination_support;
};

// Combines precomputed bound reports with the omniscience solution into the
// envelope profile. For a PIN the envelope must agree with the exact curve,
// which is asserted.
inline CapacityProfile combine_envelope(const Hypergraph& hg,
                                        const OmniscienceResult& omni,
                                        const BoundReport& ep,
                                        const BoundReport& vp,
                                        const BoundReport& lam,
                                        int limit = kDefaultEnumLimit) {
  CapacityProfile profile;
  profile.h_total = hg.total_entropy();
  profile.r_co = omni.r_co;
  profile.rates = omni.rates;
  profile.cs_inf = profile.h_total - profile.r_co;

  // ties prefer the simpler certificate: EP, then VP, then lamination
  const BoundReport* best = &ep;
  if (vp.better_than(*best)) best = &vp;
  if (lam.better_than(*best)) best = &lam;
  if (best->vacuous)
    throw std::logic_error("upper_envelope: all bounds vacuous on a valid source");
  profile.best_slope = best->slope;
  profile.best_kind = best->kind;
  profile.best_bound = *best;

  if (hg.is_pin()) {
    CapacityProfile pin = pin_capacity_curve(hg, limit);
    bool same_curve = pin.cs_inf == profile.cs_inf &&
                      (profile.cs_inf.is_zero() ||
                       pin.best_slope == profile.best_slope);
    if (!same_curve)
      throw std::logic_error("upper_envelope: PIN curve disagreement");
    profile.exact = true;
    profile.r_s = pin.r_s;
  }
  return profile;
}

// Combined upper envelope min(best_slope * R, C_S(infinity)) over the EP, VP
// and lamination bounds.
inline CapacityProfile upper_envelope(const Hypergraph& hg,
                                      const EnvelopeOptions& options = {}) {
  OmniscienceResult omni = rco(hg, options.limit);
  BoundReport ep = ep_bound_tightest(hg, options.limit);
  BoundReport vp = vp_bound(hg);
  BoundReport lam = lamination_bound_search(hg, options.rho_grid,
                                            options.lamination_support,
                                            options.limit);
  return combine_envelope(hg, omni, ep, vp, lam, options.limit);
}

}  // namespace hyperkey
