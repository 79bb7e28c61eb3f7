#pragma once

#include <vector>

#include "symq/rational.hpp"

namespace symq {

enum class Rel { Le, Ge, Eq };
enum class LpStatus { Optimal, Infeasible, Unbounded };

// Dense linear program: minimize objective . x subject to row relations.
// Variables are free unless marked nonnegative.
template <class S>
struct LinearProgram {
  int num_vars = 0;
  std::vector<S> objective;
  std::vector<std::vector<S>> rows;
  std::vector<Rel> rels;
  std::vector<S> rhs;
  std::vector<char> nonneg;

  int add_var(const S& cost, bool nonnegative) {
    objective.push_back(cost);
    nonneg.push_back(nonnegative ? 1 : 0);
    return num_vars++;
  }
  void add_row(std::vector<S> coeffs, Rel rel, S rhs_value) {
    rows.push_back(std::move(coeffs));
    rels.push_back(rel);
    rhs.push_back(std::move(rhs_value));
  }
};

// Dual values follow the minimization convention: y_i >= 0 on Ge rows,
// y_i <= 0 on Le rows, free on Eq rows, and rhs . dual == objective at the
// optimum (exactly so in rational mode).
template <class S>
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  S objective{};
  std::vector<S> primal;
  std::vector<S> dual;
};

LpSolution<Rat> solve_lp(const LinearProgram<Rat>& lp);
LpSolution<double> solve_lp(const LinearProgram<double>& lp);

// Exact-mode self-check: primal feasibility, dual feasibility, and a zero
// duality gap. Internal error if any fails; called by the solver itself.
void verify_lp_solution(const LinearProgram<Rat>& lp, const LpSolution<Rat>& sol);

}  // namespace symq
