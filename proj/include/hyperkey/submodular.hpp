#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperkey/hypergraph.hpp"
#include "hyperkey/rational.hpp"

namespace hyperkey {

// Subsets of a small abstract ground set, element i at bit i.
using ElemSet = std::uint64_t;

class GroundSetTooLarge : public std::runtime_error {
 public:
  explicit GroundSetTooLarge(const std::string& msg)
      : std::runtime_error("GroundSetTooLarge: " + msg) {}
};

class NegativeWeight : public std::runtime_error {
 public:
  explicit NegativeWeight(const std::string& msg)
      : std::runtime_error("NegativeWeight: " + msg) {}
};

class NotCrossing : public std::runtime_error {
 public:
  explicit NotCrossing(const std::string& msg)
      : std::runtime_error("NotCrossing: " + msg) {}
};

class NotInSupport : public std::runtime_error {
 public:
  explicit NotInSupport(const std::string& msg)
      : std::runtime_error("NotInSupport: " + msg) {}
};

// Set function over a ground set of k elements, given by an oracle.
struct SetFunction {
  int ground_size = 0;
  std::function<Rational(ElemSet)> eval;
};

// Nonnegative mass over subsets of a ground set; only positive entries are
// stored (the empty set may carry mass, normalized functions ignore it).
struct MassAssignment {
  int ground_size = 0;
  std::map<ElemSet, Rational> mass;

  Rational at(ElemSet b) const {
    auto it = mass.find(b);
    return it == mass.end() ? Rational(0) : it->second;
  }

  Rational total() const {
    Rational t;
    for (const auto& [set, v] : mass) t += v;
    return t;
  }

  // w_s = sum of mass over sets containing s
  std::vector<Rational> induced_weights() const {
    std::vector<Rational> w(ground_size);
    for (const auto& [set, v] : mass)
      for (int s = 0; s < ground_size; ++s)
        if ((set >> s) & 1u) w[s] += v;
    return w;
  }

  Rational objective(const SetFunction& f) const {
    Rational t;
    for (const auto& [set, v] : mass) t += v * f.eval(set);
    return t;
  }

  void add(ElemSet b, const Rational& v) {
    if (v.is_zero()) return;
    Rational& slot = mass[b];
    slot += v;
    if (slot.is_zero()) mass.erase(b);
  }
};

struct SubmodularityCheck {
  bool submodular = true;
  ElemSet witness_b1 = 0, witness_b2 = 0;
};

// Exhaustive submodularity test via the diminishing-returns form:
// f(A+i) + f(A+j) >= f(A) + f(A+i+j) for all A and i != j outside A.
// A violation of that pair is a violation of the general inequality.
inline SubmodularityCheck is_submodular(const SetFunction& f) {
  const int k = f.ground_size;
  if (k > 12)
    throw GroundSetTooLarge("submodularity check limited to 12 elements, got " +
                            std::to_string(k));
  std::vector<Rational> table(std::size_t{1} << k);
  for (ElemSet b = 0; b < table.size(); ++b) table[b] = f.eval(b);
  for (ElemSet a = 0; a < table.size(); ++a) {
    for (int i = 0; i < k; ++i) {
      if ((a >> i) & 1u) continue;
      for (int j = i + 1; j < k; ++j) {
        if ((a >> j) & 1u) continue;
        ElemSet ai = a | (ElemSet{1} << i);
        ElemSet aj = a | (ElemSet{1} << j);
        if (table[ai] + table[aj] < table[a] + table[ai | aj])
          return SubmodularityCheck{false, ai, aj};
      }
    }
  }
  return SubmodularityCheck{};
}

// Chain-supported mass with the given induced element weights: enumerate the
// ground set by descending weight (stable on ties, lower index first) and put
// the weight drops on the prefix sets.
inline MassAssignment greedy_chain(const std::vector<Rational>& weights) {
  const int k = static_cast<int>(weights.size());
  for (const Rational& w : weights)
    if (w.sign() < 0) throw NegativeWeight("greedy_chain needs w >= 0");
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (weights[a] != weights[b]) return weights[a] > weights[b];
    return a < b;
  });
  MassAssignment mu;
  mu.ground_size = k;
  ElemSet prefix = 0;
  for (int j = 0; j < k; ++j) {
    prefix |= ElemSet{1} << order[j];
    Rational drop =
        j + 1 < k ? weights[order[j]] - weights[order[j + 1]] : weights[order[j]];
    mu.add(prefix, drop);
  }
  return mu;
}

// One crossing-pair transfer: move delta = min(mu(B1), mu(B2)) from B1 and B2
// onto their intersection and union. Induced element weights are unchanged.
inline MassAssignment laminate_step(const MassAssignment& mu, ElemSet b1,
                                    ElemSet b2) {
  if (mu.at(b1).is_zero() || mu.at(b2).is_zero())
    throw NotInSupport("laminate_step: set not in support");
  ElemSet inter = b1 & b2, uni = b1 | b2;
  if ((b1 == inter && b2 == uni) || (b2 == inter && b1 == uni))
    throw NotCrossing("laminate_step: sets are nested");
  Rational delta = rat_min(mu.at(b1), mu.at(b2));
  MassAssignment out = mu;
  out.add(b1, -delta);
  out.add(b2, -delta);
  out.add(inter, delta);
  out.add(uni, delta);
  return out;
}

struct LaminationStepInfo {
  ElemSet b1, b2;
  Rational delta;
};

// Repeats laminate_step until no two support sets cross; the result is a
// chain (plus possibly mass on the empty set). Pair selection scans the
// support in ascending mask order and restarts after each transfer.
inline MassAssignment laminate(
    MassAssignment mu,
    const std::function<void(const LaminationStepInfo&)>& trace = nullptr) {
  for (const auto& [set, v] : mu.mass)
    if (v.sign() < 0) throw NegativeWeight("laminate needs mu >= 0");
  while (true) {
    bool stepped = false;
    for (auto it1 = mu.mass.begin(); it1 != mu.mass.end() && !stepped; ++it1) {
      for (auto it2 = std::next(it1); it2 != mu.mass.end() && !stepped; ++it2) {
        ElemSet b1 = it1->first, b2 = it2->first;
        ElemSet inter = b1 & b2;
        if (inter == b1 || inter == b2) continue;  // nested
        if (trace) trace(LaminationStepInfo{b1, b2, rat_min(it1->second, it2->second)});
        mu = laminate_step(mu, b1, b2);
        stepped = true;
      }
    }
    if (!stepped) return mu;
  }
}

struct LaminationInequality {
  bool holds = false;
  Rational lhs, rhs;
};

// Closed-form instance of the chain inequality for hypergraphical data:
// ground N = V u E where vertex elements carry entropy 0 and edge elements
// carry their edge weights, and the conditioned variable is the joint of the
// edges in zero_edges. Evaluates
//   sum_B mu(B) H(Y0|Y_B)  >=  sum_B mu*(B) H(Y0|Y_{B minus the 0 element})
// where mu* is the greedy chain for the weights induced by mu together with
// the total mass as the weight of the extra 0 element.
inline LaminationInequality verify_lamination_inequality(
    const Hypergraph& hg, const std::vector<int>& zero_edges,
    const MassAssignment& mu) {
  const int m = hg.num_vertices();
  const int ne = static_cast<int>(hg.edges().size());
  if (mu.ground_size != m + ne)
    throw std::invalid_argument(
        "verify_lamination_inequality: mass must live on V u E");
  for (const auto& [set, v] : mu.mass)
    if (v.sign() < 0) throw NegativeWeight("mass must be nonnegative");

  // entropy of Y0 given Y_B, with B a subset of N: total weight of
  // designated edges outside B
  auto cond_y0 = [&](ElemSet b, int edge_bit_base) {
    Rational h;
    for (int e : zero_edges) {
      if (((b >> (edge_bit_base + e)) & 1u) == 0) h += hg.edges()[e].weight;
    }
    return h;
  };

  Rational lhs;
  for (const auto& [set, v] : mu.mass) lhs += v * cond_y0(set, m);

  // ground S = {0} u N, element 0 at bit 0, vertices at 1..m, edges after
  std::vector<Rational> w(1 + m + ne);
  w[0] = mu.total();
  std::vector<Rational> wn = mu.induced_weights();
  for (int s = 0; s < m + ne; ++s) w[1 + s] = wn[s];
  MassAssignment star = greedy_chain(w);

  Rational rhs;
  for (const auto& [set, v] : star.mass) rhs += v * cond_y0(set >> 1, m);

  return LaminationInequality{lhs >= rhs, lhs, rhs};
}

}  // namespace hyperkey
