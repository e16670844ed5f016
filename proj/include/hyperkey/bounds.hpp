#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hyperkey/hypergraph.hpp"
#include "hyperkey/lp.hpp"
#include "hyperkey/partitions.hpp"
#include "hyperkey/rational.hpp"
#include "hyperkey/subset.hpp"

namespace hyperkey {

enum class BoundKind { EP, VP, Lamination };

inline const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::EP: return "ep";
    case BoundKind::VP: return "vp";
    case BoundKind::Lamination: return "lamination";
  }
  return "?";
}

class PackingViolated : public std::runtime_error {
 public:
  explicit PackingViolated(const std::string& msg)
      : std::runtime_error("PackingViolated: " + msg) {}
};

class DominanceViolated : public std::runtime_error {
 public:
  explicit DominanceViolated(const std::string& msg)
      : std::runtime_error("DominanceViolated: " + msg) {}
};

class TauUnbounded : public std::runtime_error {
 public:
  explicit TauUnbounded(const std::string& msg)
      : std::runtime_error("TauUnbounded: " + msg) {}
};

struct LaminationParams {
  Rational rho;
  std::map<VertexSet, Rational> lambda;
  std::map<VertexSet, Rational> pi;
};

// An upper bound C_S(R) <= slope * R together with the witness that
// reproduces it. A vacuous report carries no slope (the inequality became
// 0 <= something).
struct BoundReport {
  BoundKind kind = BoundKind::EP;
  bool vacuous = false;
  Rational slope;

  std::optional<Partition> partition;              // EP witness
  std::optional<std::vector<Rational>> packing;    // VP witness u_V
  std::optional<LaminationParams> params;          // lamination witness

  std::optional<Rational> alpha_value;             // EP
  std::optional<Rational> tau;                     // VP (finite case)
  bool tau_unbounded = false;                      // VP
  std::optional<Rational> beta, gamma;             // lamination

  // comparison for "best bound" selection: finite slopes ascending,
  // vacuous worst
  bool better_than(const BoundReport& other) const {
    if (vacuous) return false;
    if (other.vacuous) return true;
    return slope < other.slope;
  }
};

// ---------------------------------------------------------------------------
// EP bound

inline BoundReport ep_bound(const Hypergraph& hg, const Partition& p) {
  BoundReport r;
  r.kind = BoundKind::EP;
  r.partition = p;
  Rational a = alpha(hg, p);
  r.alpha_value = a;
  if (a == Rational(1)) {
    r.vacuous = true;
  } else {
    r.slope = a / (Rational(1) - a);
  }
  return r;
}

inline BoundReport ep_bound_tightest(const Hypergraph& hg,
                                     int limit = kDefaultEnumLimit) {
  std::optional<BoundReport> best;
  enumerate_partitions(
      hg.num_vertices(), 2,
      [&](const Partition& p) {
        BoundReport r = ep_bound(hg, p);
        if (!best || r.better_than(*best)) best = std::move(r);
      },
      limit);
  return *best;
}

// ---------------------------------------------------------------------------
// VP bound

struct VpResult {
  bool unbounded = false;
  Rational tau;
  std::vector<Rational> u;
};

// The fractional vertex-packing program: max u(V) with u >= 0 and
// u(xi(e)) <= 1 per edge.
inline LinearProgram vp_lp(const Hypergraph& hg) {
  const int m = hg.num_vertices();
  LinearProgram lp(m, LpSense::Maximize);
  for (int j = 0; j < m; ++j) lp.objective[j] = Rational(1);
  for (const Edge& e : hg.edges()) {
    std::vector<Rational> row(m);
    for (int v : vs_vertices(e.verts)) row[v - 1] = Rational(1);
    lp.add_constraint(std::move(row), Rel::LessEq, Rational(1));
  }
  return lp;
}

// tau = value of vp_lp; unbounded exactly when some vertex lies on no edge.
inline VpResult vp_tau(const Hypergraph& hg) {
  VertexSet covered = 0;
  for (const Edge& e : hg.edges()) covered |= e.verts;
  if (covered != hg.vertex_set()) return VpResult{true, Rational(0), {}};

  LpSolution sol = lp_solve(vp_lp(hg));
  if (sol.status != LpStatus::Optimal)
    throw std::logic_error("vp_tau: packing LP must be optimal when covered");
  return VpResult{false, sol.value, sol.point};
}

inline BoundReport vp_bound(const Hypergraph& hg) {
  BoundReport r;
  r.kind = BoundKind::VP;
  VpResult res = vp_tau(hg);
  if (res.unbounded) {
    // a vertex observes nothing, so no positive key rate is possible
    r.tau_unbounded = true;
    r.slope = Rational(0);
    return r;
  }
  r.tau = res.tau;
  r.packing = res.u;
  if (res.tau <= Rational(1)) {
    r.vacuous = true;
  } else {
    r.slope = Rational(1) / (res.tau - Rational(1));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Lamination bound

namespace detail {

inline Rational map_at(const std::map<VertexSet, Rational>& m, VertexSet b) {
  auto it = m.find(b);
  return it == m.end() ? Rational(0) : it->second;
}

}  // namespace detail

// Evaluates the bound for explicit parameters. beta is the minimum over
// edges of the pi-mass on sets containing the edge; gamma = rho +
// sum_B [pi(B) - rho*lambda(B)]. Constraint checks are hard errors.
inline BoundReport lamination_bound_eval(const Hypergraph& hg,
                                         const Rational& rho,
                                         const std::map<VertexSet, Rational>& lambda,
                                         const std::map<VertexSet, Rational>& pi) {
  const int m = hg.num_vertices();
  const VertexSet full = vs_full(m);
  if (rho.sign() < 0) throw std::invalid_argument("lamination: rho must be >= 0");
  auto check_domain = [&](const std::map<VertexSet, Rational>& f, const char* name) {
    for (const auto& [set, v] : f) {
      if (set == 0 || set == full)
        throw std::invalid_argument(std::string(name) +
                                    " defined on empty or full set");
      if (v.sign() < 0)
        throw std::invalid_argument(std::string(name) + " must be nonnegative");
    }
  };
  check_domain(lambda, "lambda");
  check_domain(pi, "pi");

  for (int i = 1; i <= m; ++i) {
    Rational load;
    for (const auto& [set, v] : lambda)
      if (vs_contains(set, i)) load += v;
    if (load > Rational(1))
      throw PackingViolated("lambda overloads vertex " + std::to_string(i));
  }
  for (const auto& [set, v] : lambda) {
    if (detail::map_at(pi, set) < rho * v)
      throw DominanceViolated("pi(" + vs_str(set) + ") < rho*lambda");
  }

  BoundReport r;
  r.kind = BoundKind::Lamination;
  LaminationParams params{rho, lambda, pi};
  r.params = params;

  std::optional<Rational> beta;
  for (const Edge& e : hg.edges()) {
    Rational cover;
    for (const auto& [set, v] : pi)
      if (vs_subset(e.verts, set)) cover += v;
    if (!beta || cover < *beta) beta = cover;
  }
  Rational gamma = rho;
  for (const auto& [set, v] : pi) gamma += v;
  for (const auto& [set, v] : lambda) gamma -= rho * v;

  r.beta = *beta;
  r.gamma = gamma;
  if (beta->is_zero()) {
    r.vacuous = true;
  } else {
    r.slope = (gamma - *beta) / *beta;
  }
  return r;
}

// EP bound as a lamination instance: rho = 1 and lambda = pi = uniform mass
// 1/(|P|-1) on the complements of the blocks. gamma = 1 and
// beta = 1 - alpha(P) by construction.
inline BoundReport ep_as_lamination(const Hypergraph& hg, const Partition& p) {
  const VertexSet full = vs_full(hg.num_vertices());
  Rational share = Rational(1) / Rational(p.size() - 1);
  std::map<VertexSet, Rational> lambda;
  for (VertexSet block : p.blocks) lambda[full & ~block] = share;
  BoundReport r = lamination_bound_eval(hg, Rational(1), lambda, lambda);
  Rational a = alpha(hg, p);
  if (*r.gamma != Rational(1) || *r.beta != Rational(1) - a)
    throw std::logic_error("ep_as_lamination: identity check failed");
  return r;
}

// VP bound as a lamination instance: rho = 0, lambda = 0, pi puts the
// optimal packing value of each vertex on that vertex's complement.
inline BoundReport vp_as_lamination(const Hypergraph& hg) {
  VpResult res = vp_tau(hg);
  if (res.unbounded) throw TauUnbounded("vp_as_lamination needs finite tau");
  const int m = hg.num_vertices();
  const VertexSet full = vs_full(m);
  std::map<VertexSet, Rational> pi;
  for (int i = 1; i <= m; ++i)
    if (res.u[i - 1].sign() > 0) pi[full & ~vs_single(i)] = res.u[i - 1];
  BoundReport r = lamination_bound_eval(hg, Rational(0), {}, pi);
  Rational max_edge_load;
  for (const Edge& e : hg.edges()) {
    Rational load;
    for (int v : vs_vertices(e.verts)) load += res.u[v - 1];
    max_edge_load = rat_max(max_edge_load, load);
  }
  if (*r.gamma != res.tau || *r.beta != res.tau - max_edge_load)
    throw std::logic_error("vp_as_lamination: identity check failed");
  return r;
}

// Default search grid for rho: zero plus quarter-steps of the minimum edge
// weight up to eight times the total weight.
inline std::vector<Rational> default_rho_grid(const Hypergraph& hg) {
  Rational w_min = hg.edges()[0].weight;
  Rational w_total;
  for (const Edge& e : hg.edges()) {
    w_min = rat_min(w_min, e.weight);
    w_total += e.weight;
  }
  std::vector<Rational> grid{Rational(0)};
  Rational step = w_min / Rational(4);
  Rational ratio = Rational(8) * w_total / w_min;
  mpz_class k_max = ratio.num() / ratio.den() + (ratio.is_integer() ? 0 : 1);
  long k_limit = k_max.fits_slong_p() ? k_max.get_si() : 64;
  for (long k = 1; k <= k_limit; ++k) grid.push_back(Rational(k) * step);
  return grid;
}

// Search for a small lamination slope. For each rho on the grid (the default
// grid plus any caller-supplied values) and each candidate edge attaining the
// minimum in beta, the least achievable (gamma-beta)/beta over {packing,
// dominance, branch, beta >= 1} is a linear-fractional program; the
// substitution q = 1/beta makes it a single exact LP. The tightest EP
// partition and the VP packing are always included as candidates, so the
// result is never worse than either bound.
inline BoundReport lamination_bound_search(
    const Hypergraph& hg, const std::vector<Rational>& extra_rho = {},
    const std::vector<VertexSet>& support_limit = {},
    int limit = kDefaultEnumLimit, bool include_default_grid = true) {
  const int m = hg.num_vertices();
  if (m > limit)
    throw LimitExceeded("lamination search over " + std::to_string(m) +
                        " vertices exceeds limit " + std::to_string(limit));
  const VertexSet full = vs_full(m);

  // subset family carrying lambda/pi variables; proper nonempty sets only
  std::vector<VertexSet> family;
  for (VertexSet b : support_limit)
    if (b != 0 && b != full && vs_subset(b, full)) family.push_back(b);
  if (family.empty()) {
    for (VertexSet b = 1; b < full; ++b) family.push_back(b);
  }
  const int nf = static_cast<int>(family.size());

  std::optional<BoundReport> best;
  auto consider = [&](BoundReport r) {
    if (!best || r.better_than(*best)) best = std::move(r);
  };

  // seeds
  consider(ep_as_lamination(hg, ep_bound_tightest(hg, limit).partition.value()));
  VpResult vp = vp_tau(hg);
  if (!vp.unbounded) {
    consider(vp_as_lamination(hg));
  } else {
    // uncovered vertex: mass 1 on its complement certifies slope 0
    VertexSet covered = 0;
    for (const Edge& e : hg.edges()) covered |= e.verts;
    int v0 = vs_vertices(full & ~covered).front();
    std::map<VertexSet, Rational> pi{{full & ~vs_single(v0), Rational(1)}};
    consider(lamination_bound_eval(hg, Rational(0), {}, pi));
  }

  std::vector<Rational> grid = extra_rho;
  if (include_default_grid) {
    std::vector<Rational> base = default_rho_grid(hg);
    grid.insert(grid.end(), base.begin(), base.end());
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<VertexSet> incidences;
  for (const Edge& e : hg.edges())
    if (std::find(incidences.begin(), incidences.end(), e.verts) ==
        incidences.end())
      incidences.push_back(e.verts);

  // variables: q, lambda(family...), pi(family...)
  const int var_q = 0;
  auto var_lambda = [&](int t) { return 1 + t; };
  auto var_pi = [&](int t) { return 1 + nf + t; };
  const int nv = 1 + 2 * nf;

  for (const Rational& rho : grid) {
    if (rho.sign() < 0) continue;
    for (VertexSet branch : incidences) {
      LinearProgram lp(nv, LpSense::Minimize);
      // objective: gamma/beta = rho*q + sum pi - rho * sum lambda
      lp.objective[var_q] = rho;
      for (int t = 0; t < nf; ++t) {
        lp.objective[var_lambda(t)] = -rho;
        lp.objective[var_pi(t)] = Rational(1);
      }
      // scaled packing: sum_{B contains i} lambda(B) <= q
      for (int i = 1; i <= m; ++i) {
        std::vector<Rational> row(nv);
        row[var_q] = Rational(-1);
        for (int t = 0; t < nf; ++t)
          if (vs_contains(family[t], i)) row[var_lambda(t)] = Rational(1);
        lp.add_constraint(std::move(row), Rel::LessEq, Rational(0));
      }
      // dominance: pi(B) - rho*lambda(B) >= 0
      if (rho.sign() > 0) {
        for (int t = 0; t < nf; ++t) {
          std::vector<Rational> row(nv);
          row[var_pi(t)] = Rational(1);
          row[var_lambda(t)] = -rho;
          lp.add_constraint(std::move(row), Rel::GreaterEq, Rational(0));
        }
      }
      // branch: pi-cover of the branch incidence is exactly 1 (the scaled
      // beta), every other incidence covers at least as much
      {
        std::vector<Rational> row(nv);
        for (int t = 0; t < nf; ++t)
          if (vs_subset(branch, family[t])) row[var_pi(t)] = Rational(1);
        lp.add_constraint(std::move(row), Rel::Eq, Rational(1));
      }
      for (VertexSet inc : incidences) {
        if (inc == branch) continue;
        std::vector<Rational> row(nv);
        for (int t = 0; t < nf; ++t)
          if (vs_subset(inc, family[t])) row[var_pi(t)] = Rational(1);
        lp.add_constraint(std::move(row), Rel::GreaterEq, Rational(1));
      }
      // beta >= 1  <=>  q <= 1
      lp.upper_bounds[var_q] = Rational(1);

      LpSolution sol = lp_solve(lp);
      if (sol.status != LpStatus::Optimal) continue;
      Rational q = sol.point[var_q];
      Rational rho_w = q.is_zero() ? Rational(0) : rho;
      std::map<VertexSet, Rational> lambda_w, pi_w;
      for (int t = 0; t < nf; ++t) {
        Rational lv = sol.point[var_lambda(t)];
        Rational pv = sol.point[var_pi(t)];
        if (!q.is_zero()) {
          lv /= q;
          pv /= q;
        } else {
          lv = Rational(0);
        }
        if (lv.sign() > 0) lambda_w[family[t]] = lv;
        if (pv.sign() > 0) pi_w[family[t]] = pv;
      }
      BoundReport candidate = lamination_bound_eval(hg, rho_w, lambda_w, pi_w);
      if (!candidate.vacuous && candidate.slope != sol.value - Rational(1))
        throw std::logic_error("lamination search: witness mismatch");
      consider(std::move(candidate));
    }
  }
  return *best;
}

}  // namespace hyperkey
