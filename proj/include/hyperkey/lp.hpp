#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "hyperkey/rational.hpp"

namespace hyperkey {

enum class Rel { LessEq, GreaterEq, Eq };
enum class LpSense { Maximize, Minimize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpConstraint {
  std::vector<Rational> coeffs;
  Rel rel = Rel::LessEq;
  Rational rhs;
};

// Exact-arithmetic linear program. Variables default to lower bound 0;
// upper bounds are optional. Every coefficient is a Rational.
struct LinearProgram {
  LpSense sense = LpSense::Maximize;
  std::vector<Rational> objective;
  std::vector<LpConstraint> constraints;
  std::vector<Rational> lower_bounds;                // padded with 0
  std::vector<std::optional<Rational>> upper_bounds; // padded with nullopt

  explicit LinearProgram(int num_vars = 0, LpSense s = LpSense::Maximize)
      : sense(s),
        objective(num_vars),
        lower_bounds(num_vars),
        upper_bounds(num_vars) {}

  int num_vars() const { return static_cast<int>(objective.size()); }

  void add_constraint(std::vector<Rational> coeffs, Rel rel, Rational rhs) {
    if (static_cast<int>(coeffs.size()) != num_vars())
      throw std::invalid_argument("LinearProgram: constraint dimension mismatch");
    constraints.push_back(LpConstraint{std::move(coeffs), rel, std::move(rhs)});
  }
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational value;               // optimal objective, user sense
  std::vector<Rational> point;  // optimal x, original variables
  // Dual multipliers, one per row in standardized order: the user's
  // constraints first, then one synthetic (y_j <= ub_j - lb_j) row per
  // upper-bounded variable. Multipliers refer to the internal shifted
  // maximization form; lp_verify_certificate knows how to read them.
  std::vector<Rational> dual;
};

namespace detail {

// Two-phase primal simplex with exact rational pivots and Bland's rule.
class SimplexTableau {
 public:
  SimplexTableau(const LinearProgram& lp) : n_(lp.num_vars()) {
    // Shift x = lb + y so every variable has lower bound 0, then append the
    // upper bounds as ordinary rows.
    lower_ = lp.lower_bounds;
    lower_.resize(n_, Rational(0));
    c_.assign(n_, Rational(0));
    for (int j = 0; j < n_; ++j)
      c_[j] = lp.sense == LpSense::Minimize ? -lp.objective[j] : lp.objective[j];
    for (int j = 0; j < n_; ++j) shift_const_ += lp.objective[j] * lower_[j];

    for (const LpConstraint& row : lp.constraints) {
      Rational rhs = row.rhs;
      for (int j = 0; j < n_; ++j) rhs -= row.coeffs[j] * lower_[j];
      rows_.push_back(row.coeffs);
      rels_.push_back(row.rel);
      rhs_.push_back(rhs);
    }
    for (int j = 0; j < n_; ++j) {
      if (!lp.upper_bounds.empty() && j < static_cast<int>(lp.upper_bounds.size()) &&
          lp.upper_bounds[j]) {
        std::vector<Rational> coeffs(n_);
        coeffs[j] = Rational(1);
        rows_.push_back(std::move(coeffs));
        rels_.push_back(Rel::LessEq);
        rhs_.push_back(*lp.upper_bounds[j] - lower_[j]);
      }
    }
    num_rows_ = static_cast<int>(rows_.size());
    negated_.assign(num_rows_, false);
    for (int i = 0; i < num_rows_; ++i) {
      if (rhs_[i].sign() < 0) {
        negated_[i] = true;
        rhs_[i] = -rhs_[i];
        for (Rational& v : rows_[i]) v = -v;
        if (rels_[i] == Rel::LessEq) rels_[i] = Rel::GreaterEq;
        else if (rels_[i] == Rel::GreaterEq) rels_[i] = Rel::LessEq;
      }
    }
  }

  LpSolution solve(LpSense user_sense) {
    build_tableau();
    LpSolution sol;
    if (!phase_one()) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    if (!phase_two()) {
      sol.status = LpStatus::Unbounded;
      return sol;
    }
    sol.status = LpStatus::Optimal;
    sol.point.assign(n_, Rational(0));
    for (int i = 0; i < num_rows_; ++i)
      if (basis_[i] < n_) sol.point[basis_[i]] = rhs_col_[i];
    for (int j = 0; j < n_; ++j) sol.point[j] += lower_[j];
    Rational internal = value_;
    sol.value = (user_sense == LpSense::Minimize ? -internal : internal) + shift_const_;
    // dual of standardized row i, oriented like the user's row
    sol.dual.assign(num_rows_, Rational(0));
    for (int i = 0; i < num_rows_; ++i) {
      Rational yi;
      if (slack_col_[i] >= 0)
        yi = rels_[i] == Rel::LessEq ? -reduced_[slack_col_[i]] : reduced_[slack_col_[i]];
      else
        yi = -reduced_[art_col_[i]];  // equality row: read from artificial
      sol.dual[i] = negated_[i] ? -yi : yi;
    }
    return sol;
  }

  // standardized-form accessors used by the certificate check
  int num_std_rows() const { return num_rows_; }
  // row as the user supplied it (pre-negation), shifted rhs
  void std_row(int i, std::vector<Rational>& coeffs, Rel& rel, Rational& rhs) const {
    coeffs = rows_[i];
    rel = rels_[i];
    rhs = rhs_[i];
    if (negated_[i]) {
      for (Rational& v : coeffs) v = -v;
      rhs = -rhs;
      rel = rel == Rel::LessEq ? Rel::GreaterEq
          : rel == Rel::GreaterEq ? Rel::LessEq : Rel::Eq;
    }
  }
  const std::vector<Rational>& internal_objective() const { return c_; }
  const std::vector<Rational>& lower() const { return lower_; }
  Rational shift_const() const { return shift_const_; }

 private:
  void build_tableau() {
    slack_col_.assign(num_rows_, -1);
    art_col_.assign(num_rows_, -1);
    int col = n_;
    for (int i = 0; i < num_rows_; ++i)
      if (rels_[i] != Rel::Eq) slack_col_[i] = col++;
    art_start_ = col;
    for (int i = 0; i < num_rows_; ++i)
      if (rels_[i] != Rel::LessEq) art_col_[i] = col++;
    num_cols_ = col;

    tab_.assign(num_rows_, std::vector<Rational>(num_cols_));
    rhs_col_ = rhs_;
    basis_.assign(num_rows_, -1);
    for (int i = 0; i < num_rows_; ++i) {
      for (int j = 0; j < n_; ++j) tab_[i][j] = rows_[i][j];
      if (slack_col_[i] >= 0)
        tab_[i][slack_col_[i]] = rels_[i] == Rel::LessEq ? Rational(1) : Rational(-1);
      if (art_col_[i] >= 0) {
        tab_[i][art_col_[i]] = Rational(1);
        basis_[i] = art_col_[i];
      } else {
        basis_[i] = slack_col_[i];
      }
    }
  }

  // entering column under Bland's rule: smallest index with positive
  // reduced cost; artificial columns never re-enter
  int entering() const {
    for (int j = 0; j < art_start_; ++j)
      if (reduced_[j].sign() > 0) return j;
    return -1;
  }

  // leaving row: minimum ratio, ties by smallest basic variable index
  int leaving(int s) const {
    int best = -1;
    Rational best_ratio;
    for (int i = 0; i < num_rows_; ++i) {
      if (tab_[i][s].sign() <= 0) continue;
      Rational ratio = rhs_col_[i] / tab_[i][s];
      if (best < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis_[i] < basis_[best])) {
        best = i;
        best_ratio = ratio;
      }
    }
    return best;
  }

  void pivot(int r, int s) {
    Rational inv = Rational(1) / tab_[r][s];
    for (Rational& v : tab_[r]) v *= inv;
    rhs_col_[r] *= inv;
    for (int i = 0; i < num_rows_; ++i) {
      if (i == r || tab_[i][s].is_zero()) continue;
      Rational f = tab_[i][s];
      for (int j = 0; j < num_cols_; ++j) tab_[i][j] -= f * tab_[r][j];
      rhs_col_[i] -= f * rhs_col_[r];
    }
    if (!reduced_[s].is_zero()) {
      Rational f = reduced_[s];
      for (int j = 0; j < num_cols_; ++j) reduced_[j] -= f * tab_[r][j];
      value_ += f * rhs_col_[r];
    }
    basis_[r] = s;
  }

  bool run_simplex() {
    while (true) {
      int s = entering();
      if (s < 0) return true;
      int r = leaving(s);
      if (r < 0) return false;  // unbounded direction
      pivot(r, s);
    }
  }

  void price_out(const std::vector<Rational>& cost) {
    reduced_ = cost;
    reduced_.resize(num_cols_, Rational(0));
    value_ = Rational(0);
    for (int i = 0; i < num_rows_; ++i) {
      Rational cb = reduced_[basis_[i]];
      if (cb.is_zero()) continue;
      for (int j = 0; j < num_cols_; ++j) reduced_[j] -= cb * tab_[i][j];
      value_ += cb * rhs_col_[i];
    }
  }

  bool phase_one() {
    std::vector<Rational> cost(num_cols_, Rational(0));
    for (int i = 0; i < num_rows_; ++i)
      if (art_col_[i] >= 0) cost[art_col_[i]] = Rational(-1);
    price_out(cost);
    run_simplex();  // maximize -sum(artificials); bounded by 0
    if (value_.sign() < 0) return false;
    // drive remaining artificials out of the basis where possible
    for (int i = 0; i < num_rows_; ++i) {
      if (basis_[i] < art_start_) continue;
      for (int j = 0; j < art_start_; ++j) {
        if (!tab_[i][j].is_zero()) {
          pivot(i, j);
          break;
        }
      }
      // an all-zero row is redundant; its artificial stays basic at 0
    }
    return true;
  }

  bool phase_two() {
    std::vector<Rational> cost(num_cols_, Rational(0));
    for (int j = 0; j < n_; ++j) cost[j] = c_[j];
    price_out(cost);
    return run_simplex();
  }

  int n_;
  int num_rows_ = 0;
  int num_cols_ = 0;
  int art_start_ = 0;
  std::vector<Rational> c_;
  Rational shift_const_;
  std::vector<Rational> lower_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rel> rels_;
  std::vector<Rational> rhs_;
  std::vector<bool> negated_;
  std::vector<int> slack_col_, art_col_;
  std::vector<std::vector<Rational>> tab_;
  std::vector<Rational> rhs_col_;
  std::vector<Rational> reduced_;
  std::vector<int> basis_;
  Rational value_;
};

}  // namespace detail

inline LpSolution lp_solve(const LinearProgram& lp) {
  detail::SimplexTableau tableau(lp);
  return tableau.solve(lp.sense);
}

// Exact optimality certificate: checks primal feasibility of the point, dual
// feasibility of the multipliers, and strong duality, all directly against
// the original program data.
inline bool lp_verify_certificate(const LinearProgram& lp, const LpSolution& sol) {
  if (sol.status != LpStatus::Optimal) return false;
  const int n = lp.num_vars();
  if (static_cast<int>(sol.point.size()) != n) return false;

  // primal feasibility, bounds included
  for (int j = 0; j < n; ++j) {
    Rational lb = j < static_cast<int>(lp.lower_bounds.size()) ? lp.lower_bounds[j]
                                                               : Rational(0);
    if (sol.point[j] < lb) return false;
    if (j < static_cast<int>(lp.upper_bounds.size()) && lp.upper_bounds[j] &&
        sol.point[j] > *lp.upper_bounds[j])
      return false;
  }
  for (const LpConstraint& row : lp.constraints) {
    Rational lhs;
    for (int j = 0; j < n; ++j) lhs += row.coeffs[j] * sol.point[j];
    if (row.rel == Rel::LessEq && lhs > row.rhs) return false;
    if (row.rel == Rel::GreaterEq && lhs < row.rhs) return false;
    if (row.rel == Rel::Eq && lhs != row.rhs) return false;
  }

  // dual side, over the internal shifted maximization form
  detail::SimplexTableau tableau(lp);
  const int rows = tableau.num_std_rows();
  if (static_cast<int>(sol.dual.size()) != rows) return false;
  std::vector<Rational> coeffs;
  Rel rel;
  Rational rhs;
  Rational dual_value;
  std::vector<Rational> aty(n, Rational(0));
  for (int i = 0; i < rows; ++i) {
    tableau.std_row(i, coeffs, rel, rhs);
    if (rel == Rel::LessEq && sol.dual[i].sign() < 0) return false;
    if (rel == Rel::GreaterEq && sol.dual[i].sign() > 0) return false;
    for (int j = 0; j < n; ++j) aty[j] += coeffs[j] * sol.dual[i];
    dual_value += rhs * sol.dual[i];
  }
  const std::vector<Rational>& c = tableau.internal_objective();
  for (int j = 0; j < n; ++j)
    if (aty[j] < c[j]) return false;  // dual infeasible for y_j >= 0 form

  // strong duality against the reported optimum
  Rational internal_primal;
  for (int j = 0; j < n; ++j)
    internal_primal += c[j] * (sol.point[j] - tableau.lower()[j]);
  if (dual_value != internal_primal) return false;
  Rational user_value =
      (lp.sense == LpSense::Minimize ? -internal_primal : internal_primal) +
      tableau.shift_const();
  return user_value == sol.value;
}

// Uniqueness of an optimal point: pins the objective to its optimal value and
// checks that every coordinate has equal minimum and maximum over the optimal
// face.
inline bool lp_unique_optimum(const LinearProgram& lp, const LpSolution& sol) {
  if (sol.status != LpStatus::Optimal) return false;
  LinearProgram face = lp;
  face.add_constraint(lp.objective, Rel::Eq, sol.value);
  for (int j = 0; j < lp.num_vars(); ++j) {
    std::vector<Rational> coord(lp.num_vars(), Rational(0));
    coord[j] = Rational(1);
    LinearProgram lo = face, hi = face;
    lo.sense = LpSense::Minimize;
    hi.sense = LpSense::Maximize;
    lo.objective = coord;
    hi.objective = coord;
    LpSolution a = lp_solve(lo), b = lp_solve(hi);
    if (a.status != LpStatus::Optimal || b.status != LpStatus::Optimal)
      return false;  // optimal face unbounded in coordinate j
    if (a.value != b.value) return false;
  }
  return true;
}

}  // namespace hyperkey
