#include <doctest.h>

#include "hyperkey/bounds.hpp"
#include "hyperkey/builtins.hpp"
#include "hyperkey/lp.hpp"
#include "oracles.hpp"

using namespace hyperkey;

TEST_CASE("one-variable programs") {
  LinearProgram lp(1);
  lp.objective = {Rational(1)};
  lp.add_constraint({Rational(1)}, Rel::LessEq, Rational(5));
  LpSolution sol = lp_solve(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == Rational(5));
  CHECK(sol.point[0] == Rational(5));
  CHECK(lp_verify_certificate(lp, sol));

  LinearProgram infeasible(1);
  infeasible.objective = {Rational(1)};
  infeasible.add_constraint({Rational(1)}, Rel::GreaterEq, Rational(1));
  infeasible.add_constraint({Rational(1)}, Rel::LessEq, Rational(0));
  CHECK(lp_solve(infeasible).status == LpStatus::Infeasible);

  LinearProgram unbounded(1);
  unbounded.objective = {Rational(1)};
  CHECK(lp_solve(unbounded).status == LpStatus::Unbounded);
}

TEST_CASE("vertex packing program of the receptacle source") {
  LinearProgram lp = vp_lp(builtin_source("receptacle"));
  LpSolution sol = lp_solve(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == Rational(5, 2));
  std::vector<Rational> expected{Rational(0), Rational(1, 2), Rational(1, 2),
                                 Rational(1, 2), Rational(1)};
  CHECK(sol.point == expected);
  CHECK(lp_verify_certificate(lp, sol));
  CHECK(lp_unique_optimum(lp, sol));
}

TEST_CASE("equality rows and shifted bounds") {
  // max x + y with x + y = 3, x in [-2, 1], y >= 0
  LinearProgram lp(2);
  lp.objective = {Rational(1), Rational(1)};
  lp.lower_bounds = {Rational(-2), Rational(0)};
  lp.upper_bounds = {Rational(1), std::nullopt};
  lp.add_constraint({Rational(1), Rational(1)}, Rel::Eq, Rational(3));
  LpSolution sol = lp_solve(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == Rational(3));
  CHECK(lp_verify_certificate(lp, sol));

  // minimization with a negative-rhs row
  LinearProgram lo(2, LpSense::Minimize);
  lo.objective = {Rational(2), Rational(3)};
  lo.lower_bounds = {Rational(-2), Rational(-2)};
  lo.add_constraint({Rational(-1), Rational(-1)}, Rel::LessEq, Rational(-1));
  LpSolution lo_sol = lp_solve(lo);
  REQUIRE(lo_sol.status == LpStatus::Optimal);
  CHECK(lo_sol.value == Rational(0));  // corner x = 3, y = -2
  CHECK(lo_sol.point == std::vector<Rational>{Rational(3), Rational(-2)});
  CHECK(lp_verify_certificate(lo, lo_sol));
}

TEST_CASE("degenerate and redundant rows") {
  LinearProgram lp(2);
  lp.objective = {Rational(1), Rational(2)};
  lp.add_constraint({Rational(1), Rational(1)}, Rel::LessEq, Rational(2));
  lp.add_constraint({Rational(1), Rational(1)}, Rel::LessEq, Rational(2));
  lp.add_constraint({Rational(2), Rational(2)}, Rel::Eq, Rational(4));
  lp.add_constraint({Rational(0), Rational(1)}, Rel::LessEq, Rational(2));
  LpSolution sol = lp_solve(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == Rational(4));
  CHECK(sol.point == std::vector<Rational>{Rational(0), Rational(2)});
  CHECK(lp_verify_certificate(lp, sol));
}

TEST_CASE("determinism") {
  LinearProgram lp(3);
  lp.objective = {Rational(1), Rational(1), Rational(1)};
  lp.add_constraint({Rational(1), Rational(1), Rational(0)}, Rel::LessEq,
                    Rational(1));
  lp.add_constraint({Rational(0), Rational(1), Rational(1)}, Rel::LessEq,
                    Rational(1));
  lp.add_constraint({Rational(1), Rational(0), Rational(1)}, Rel::LessEq,
                    Rational(1));
  LpSolution a = lp_solve(lp), b = lp_solve(lp);
  REQUIRE(a.status == LpStatus::Optimal);
  CHECK(a.value == Rational(3, 2));
  CHECK(a.point == b.point);
  CHECK(a.value == b.value);
}

TEST_CASE("uniqueness detector sees degenerate optima") {
  // max x + y over the square has a whole optimal edge? no: unique corner.
  LinearProgram square(2);
  square.objective = {Rational(1), Rational(1)};
  square.upper_bounds = {Rational(1), Rational(1)};
  LpSolution sol = lp_solve(square);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(lp_unique_optimum(square, sol));

  // max x over the square: every y is optimal
  LinearProgram slab(2);
  slab.objective = {Rational(1), Rational(0)};
  slab.upper_bounds = {Rational(1), Rational(1)};
  LpSolution sol2 = lp_solve(slab);
  REQUIRE(sol2.status == LpStatus::Optimal);
  CHECK(!lp_unique_optimum(slab, sol2));
}

TEST_CASE("solver agrees with vertex enumeration on random boxed programs") {
  testers::Rng rng(31429);
  int optimal_seen = 0, infeasible_seen = 0;
  for (int trial = 0; trial < 50; ++trial) {
    int n = testers::rand_int(rng, 1, 4);
    LinearProgram lp(n, trial % 2 == 0 ? LpSense::Maximize : LpSense::Minimize);
    for (int j = 0; j < n; ++j) {
      lp.objective[j] = Rational(testers::rand_int(rng, -4, 4));
      lp.upper_bounds[j] = Rational(testers::rand_int(rng, 1, 5));
    }
    int rows = testers::rand_int(rng, 0, 4);
    for (int r = 0; r < rows; ++r) {
      std::vector<Rational> coeffs(n);
      for (int j = 0; j < n; ++j)
        coeffs[j] = Rational(testers::rand_int(rng, -3, 3));
      Rel rel = testers::rand_int(rng, 0, 1) == 0 ? Rel::LessEq : Rel::GreaterEq;
      lp.add_constraint(coeffs, rel, Rational(testers::rand_int(rng, -4, 6)));
    }
    LpSolution sol = lp_solve(lp);
    auto oracle = testers::vertex_enumeration_optimum(lp);
    if (sol.status == LpStatus::Optimal) {
      ++optimal_seen;
      REQUIRE(oracle.has_value());
      CHECK(sol.value == *oracle);
      CHECK(lp_verify_certificate(lp, sol));
    } else {
      // boxed feasible sets are polytopes, so the only alternative is empty
      ++infeasible_seen;
      CHECK(sol.status == LpStatus::Infeasible);
      CHECK(!oracle.has_value());
    }
  }
  CHECK(optimal_seen > 10);  // the mix actually exercises both outcomes
  CHECK(infeasible_seen > 0);
}
