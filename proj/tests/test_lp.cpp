#include <doctest.h>

#include "symq/lp.hpp"
#include "symq/rng.hpp"

using namespace symq;

TEST_CASE("simplex: textbook instance with known optimum and dual") {
  // min x + y  s.t.  x + 2y >= 4,  3x + y >= 6,  x, y >= 0.
  LinearProgram<Rat> lp;
  lp.add_var(Rat(1), true);
  lp.add_var(Rat(1), true);
  lp.add_row({Rat(1), Rat(2)}, Rel::Ge, Rat(4));
  lp.add_row({Rat(3), Rat(1)}, Rel::Ge, Rat(6));
  LpSolution<Rat> sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == Rat(14, 5));
  CHECK(sol.primal[0] == Rat(8, 5));
  CHECK(sol.primal[1] == Rat(6, 5));
  Rat dual_obj = sol.dual[0] * 4 + sol.dual[1] * 6;
  CHECK(dual_obj == sol.objective);
}

TEST_CASE("simplex: free variables and the band toy problem") {
  // min e  s.t.  c - e <= 0,  c + e >= 1  (c, e free): the best constant
  // approximation of a two-point function.
  LinearProgram<Rat> lp;
  lp.add_var(Rat(0), false);
  lp.add_var(Rat(1), false);
  lp.add_row({Rat(1), Rat(-1)}, Rel::Le, Rat(0));
  lp.add_row({Rat(1), Rat(1)}, Rel::Ge, Rat(1));
  LpSolution<Rat> sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == Rat(1, 2));
  CHECK(sol.primal[0] == Rat(1, 2));
  // Duals: -1/2 on the Le row, +1/2 on the Ge row.
  CHECK(sol.dual[0] == Rat(-1, 2));
  CHECK(sol.dual[1] == Rat(1, 2));
}

TEST_CASE("simplex: infeasible and unbounded detection") {
  {
    LinearProgram<Rat> lp;
    lp.add_var(Rat(0), true);
    lp.add_row({Rat(1)}, Rel::Ge, Rat(1));
    lp.add_row({Rat(1)}, Rel::Le, Rat(0));
    CHECK(solve_lp(lp).status == LpStatus::Infeasible);
  }
  {
    LinearProgram<Rat> lp;
    lp.add_var(Rat(-1), true);
    lp.add_row({Rat(1)}, Rel::Ge, Rat(0));
    CHECK(solve_lp(lp).status == LpStatus::Unbounded);
  }
  {
    // Equality rows route through artificials.
    LinearProgram<Rat> lp;
    lp.add_var(Rat(1), true);
    lp.add_var(Rat(2), true);
    lp.add_row({Rat(1), Rat(1)}, Rel::Eq, Rat(3));
    LpSolution<Rat> sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == Rat(3));
    CHECK(sol.primal[0] == Rat(3));
  }
}

TEST_CASE("simplex: randomized instances verify against their certificates") {
  // Feasibility by construction: pick x*, derive b so x* is feasible; the
  // solver's own exact verification (primal + dual + gap) runs on every
  // solve, so reaching Optimal is the assertion.
  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    int nvars = 2 + rng.below_int(3);
    int nrows = 2 + rng.below_int(4);
    LinearProgram<Rat> lp;
    for (int j = 0; j < nvars; ++j)
      lp.add_var(Rat(static_cast<long>(rng.below(7)) - 3), rng.below(2) == 0);
    std::vector<Rat> star(nvars);
    for (int j = 0; j < nvars; ++j) {
      long v = static_cast<long>(rng.below(5));
      star[j] = Rat(lp.nonneg[j] ? v : v - 2);
    }
    for (int i = 0; i < nrows; ++i) {
      std::vector<Rat> row(nvars);
      Rat lhs(0);
      for (int j = 0; j < nvars; ++j) {
        row[j] = Rat(static_cast<long>(rng.below(9)) - 4);
        lhs += row[j] * star[j];
      }
      int kind = rng.below_int(3);
      if (kind == 0) lp.add_row(row, Rel::Le, lhs + Rat(static_cast<long>(rng.below(4))));
      else if (kind == 1) lp.add_row(row, Rel::Ge, lhs - Rat(static_cast<long>(rng.below(4))));
      else lp.add_row(row, Rel::Eq, lhs);
    }
    // Bound the feasible region so the objective cannot run away.
    for (int j = 0; j < nvars; ++j) {
      std::vector<Rat> row(nvars, Rat(0));
      row[j] = 1;
      lp.add_row(row, Rel::Le, Rat(10));
      row[j] = -1;
      lp.add_row(std::move(row), Rel::Le, Rat(10));
    }
    LpSolution<Rat> sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    // The constructed point is feasible, so the optimum cannot exceed its
    // objective value.
    Rat star_obj(0);
    for (int j = 0; j < nvars; ++j) star_obj += lp.objective[j] * star[j];
    CHECK(sol.objective <= star_obj);
  }
}

TEST_CASE("float simplex agrees with the exact solver on a small instance") {
  LinearProgram<double> lp;
  lp.add_var(1.0, true);
  lp.add_var(1.0, true);
  lp.add_row({1.0, 2.0}, Rel::Ge, 4.0);
  lp.add_row({3.0, 1.0}, Rel::Ge, 6.0);
  LpSolution<double> sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(2.8));
  CHECK(sol.primal[0] == doctest::Approx(1.6));
}
