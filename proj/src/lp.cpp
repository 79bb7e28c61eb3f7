#include "symq/lp.hpp"

#include <algorithm>

namespace symq {
namespace {

// ---------------------------------------------------------------------------
// Exact path: simplex with integer (fraction-free) pivoting. The tableau
// stays integral over one positive denominator; a pivot multiplies by the
// pivot entry and divides exactly by the previous one, so no gcd work ever
// happens inside the hot loop. Rationals only appear when the solution is
// read out.
// ---------------------------------------------------------------------------

class IntTableau {
 public:
  int rows = 0, cols = 0;
  std::vector<std::vector<Int>> a;
  std::vector<Int> b;
  Int den = 1;  // shared positive denominator: true value = entry / den
  std::vector<int> basis;
  std::vector<char> barred;
  // Reduced-cost rows (same /den representation), maintained through pivots.
  std::vector<Int> obj1, obj2;

  void pivot(int r, int c) {
    Int piv = a[r][c];
    auto update_row = [&](std::vector<Int>& row, Int& rhs_entry, bool with_rhs) {
      Int factor = row[c];
      if (factor != 0) {
        for (int j = 0; j < cols; ++j) {
          row[j] = row[j] * piv - factor * a[r][j];
          mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), den.get_mpz_t());
        }
        if (with_rhs) {
          rhs_entry = rhs_entry * piv - factor * b[r];
          mpz_divexact(rhs_entry.get_mpz_t(), rhs_entry.get_mpz_t(), den.get_mpz_t());
        }
      } else if (piv != den) {
        // Still rescale to the new denominator.
        for (int j = 0; j < cols; ++j) {
          row[j] *= piv;
          mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), den.get_mpz_t());
        }
        if (with_rhs) {
          rhs_entry *= piv;
          mpz_divexact(rhs_entry.get_mpz_t(), rhs_entry.get_mpz_t(), den.get_mpz_t());
        }
      }
    };

    Int zero = 0;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      update_row(a[i], b[i], true);
    }
    update_row(obj1, zero, false);
    update_row(obj2, zero, false);
    den = piv;
    if (den < 0) {
      // Keep the shared denominator positive so sign tests stay direct; the
      // whole tableau flips with it.
      den = -den;
      for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) a[i][j] = -a[i][j];
        b[i] = -b[i];
      }
      for (int j = 0; j < cols; ++j) {
        obj1[j] = -obj1[j];
        obj2[j] = -obj2[j];
      }
    }
    basis[r] = c;
  }

  // Minimize the objective tracked by `obj` (true reduced costs = obj/den).
  LpStatus optimize(std::vector<Int>& obj) {
    long long pivots = 0;
    const long long bland_after = 2LL * (rows + cols) + 64;
    while (true) {
      bool bland = pivots >= bland_after;
      int enter = -1;
      for (int j = 0; j < cols; ++j) {
        if (barred[j] || obj[j] >= 0) continue;
        if (bland) { enter = j; break; }
        if (enter == -1 || obj[j] < obj[enter]) enter = j;
      }
      if (enter == -1) return LpStatus::Optimal;
      int leave = -1;
      for (int i = 0; i < rows; ++i) {
        if (a[i][enter] <= 0) continue;
        if (leave == -1) { leave = i; continue; }
        // b[i]/a[i][enter] vs b[leave]/a[leave][enter], cross-multiplied.
        Int lhs = b[i] * a[leave][enter];
        Int rhs = b[leave] * a[i][enter];
        if (lhs < rhs || (lhs == rhs && basis[i] < basis[leave])) leave = i;
      }
      if (leave == -1) return LpStatus::Unbounded;
      int col = enter;
      pivot(leave, col);
      ++pivots;
    }
  }
};

// Scale one rational row to integers; returns the scale factor (> 0).
Int scale_row(const std::vector<Rat>& src, const Rat& rhs, std::vector<Int>& out, Int& out_rhs) {
  Int lcm = 1;
  for (const Rat& v : src) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
  mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), rhs.get_den().get_mpz_t());
  out.resize(src.size());
  for (size_t j = 0; j < src.size(); ++j) out[j] = src[j].get_num() * (lcm / src[j].get_den());
  out_rhs = rhs.get_num() * (lcm / rhs.get_den());
  return lcm;
}

LpSolution<Rat> solve_exact(const LinearProgram<Rat>& lp) {
  const int m = static_cast<int>(lp.rows.size());

  std::vector<int> pos_col(lp.num_vars), neg_col(lp.num_vars, -1);
  int ncols = 0;
  for (int j = 0; j < lp.num_vars; ++j) {
    pos_col[j] = ncols++;
    if (!lp.nonneg[j]) neg_col[j] = ncols++;
  }
  std::vector<int> slack_col(m, -1), art_col(m, -1);
  std::vector<char> flipped(m, 0);
  std::vector<Rel> rel(lp.rels.begin(), lp.rels.end());
  for (int i = 0; i < m; ++i) {
    bool neg_rhs = lp.rhs[i] < 0;
    flipped[i] = neg_rhs;
    Rel r = rel[i];
    if (neg_rhs) r = (r == Rel::Le ? Rel::Ge : (r == Rel::Ge ? Rel::Le : Rel::Eq));
    if (r == Rel::Ge && lp.rhs[i] == 0) {
      // a.x >= 0 is -a.x <= 0: the slack can start basic, no artificial.
      flipped[i] = !flipped[i];
      r = Rel::Le;
    }
    rel[i] = r;
    if (r != Rel::Eq) slack_col[i] = ncols++;
    if (r != Rel::Le) art_col[i] = ncols++;
  }

  // Integer cost vector for phase 2 (scaled by cost_scale).
  Int cost_scale = 1;
  for (int j = 0; j < lp.num_vars; ++j)
    mpz_lcm(cost_scale.get_mpz_t(), cost_scale.get_mpz_t(),
            lp.objective[j].get_den().get_mpz_t());
  std::vector<Int> cost(ncols, 0);
  for (int j = 0; j < lp.num_vars; ++j) {
    Int c = lp.objective[j].get_num() * (cost_scale / lp.objective[j].get_den());
    cost[pos_col[j]] = c;
    if (neg_col[j] >= 0) cost[neg_col[j]] = -c;
  }

  IntTableau t;
  t.rows = m;
  t.cols = ncols;
  t.a.assign(m, {});
  t.b.assign(m, 0);
  t.basis.assign(m, -1);
  t.barred.assign(ncols, 0);
  std::vector<Int> row_scale(m, 1);

  for (int i = 0; i < m; ++i) {
    std::vector<Int> scaled;
    Int scaled_rhs;
    row_scale[i] = scale_row(lp.rows[i], lp.rhs[i], scaled, scaled_rhs);
    std::vector<Int> row(ncols, 0);
    int sign = flipped[i] ? -1 : 1;
    for (int j = 0; j < lp.num_vars; ++j) {
      Int v = scaled[j] * sign;
      row[pos_col[j]] = v;
      if (neg_col[j] >= 0) row[neg_col[j]] = -v;
    }
    if (slack_col[i] >= 0) row[slack_col[i]] = (rel[i] == Rel::Le) ? 1 : -1;
    if (art_col[i] >= 0) row[art_col[i]] = 1;
    t.a[i] = std::move(row);
    t.b[i] = scaled_rhs * sign;
    t.basis[i] = (rel[i] == Rel::Le) ? slack_col[i] : art_col[i];
  }

  // Initial reduced-cost rows. Phase 1 minimizes artificial mass: reduced
  // cost of column j is -sum over artificial-basic rows of a[i][j]. Phase 2
  // starts from the scaled cost vector (the initial basis has zero cost).
  t.obj1.assign(ncols, 0);
  t.obj2 = cost;
  bool any_artificial = false;
  for (int i = 0; i < m; ++i) {
    if (art_col[i] < 0) continue;
    any_artificial = true;
    for (int j = 0; j < ncols; ++j) t.obj1[j] -= t.a[i][j];
    t.obj1[art_col[i]] += 1;  // its own reduced cost starts at 0 (+1 cost -1 column)
  }

  LpSolution<Rat> sol;
  if (any_artificial) {
    LpStatus st = t.optimize(t.obj1);
    if (st == LpStatus::Unbounded) fail(ErrorKind::Internal, "phase-1 LP unbounded");
    Int infeas = 0;
    for (int i = 0; i < m; ++i)
      if (art_col[i] >= 0 && t.basis[i] == art_col[i]) infeas += t.b[i];
    if (infeas != 0) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    std::vector<char> is_art(ncols, 0);
    for (int i = 0; i < m; ++i)
      if (art_col[i] >= 0) is_art[art_col[i]] = 1;
    for (int i = 0; i < m; ++i) {
      if (art_col[i] < 0 || t.basis[i] != art_col[i]) continue;
      for (int j = 0; j < ncols; ++j) {
        if (is_art[j] || t.a[i][j] == 0) continue;
        t.pivot(i, j);
        break;
      }
    }
    for (int i = 0; i < m; ++i)
      if (art_col[i] >= 0) t.barred[art_col[i]] = 1;
  }

  LpStatus st = t.optimize(t.obj2);
  if (st == LpStatus::Unbounded) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  sol.status = LpStatus::Optimal;
  Rat den_rat(t.den);
  std::vector<Rat> col_value(ncols, Rat(0));
  for (int i = 0; i < m; ++i) {
    Rat v(t.b[i]);
    v /= den_rat;
    col_value[t.basis[i]] = v;
  }
  sol.primal.assign(lp.num_vars, Rat(0));
  sol.objective = 0;
  for (int j = 0; j < lp.num_vars; ++j) {
    Rat v = col_value[pos_col[j]];
    if (neg_col[j] >= 0) v -= col_value[neg_col[j]];
    sol.primal[j] = v;
    sol.objective += lp.objective[j] * v;
  }

  // Duals from the reduced costs of each row's initial identity column
  // (slack or artificial): reduced = c_col - y_i * (+1) with c_col = 0, so
  // y_i = -obj2[col]/den, rescaled back through cost and row scaling.
  sol.dual.assign(m, Rat(0));
  for (int i = 0; i < m; ++i) {
    int col = art_col[i] >= 0 ? art_col[i] : slack_col[i];
    Rat y(t.obj2[col]);
    y = -y;
    y /= den_rat;
    y /= Rat(cost_scale);
    y *= Rat(row_scale[i]);
    if (flipped[i]) y = -y;
    sol.dual[i] = y;
  }
  return sol;
}

// ---------------------------------------------------------------------------
// Float path: plain dense two-phase simplex with tolerances.
// ---------------------------------------------------------------------------

struct FloatOps {
  static bool is_zero(double v) { return v > -1e-9 && v < 1e-9; }
  static bool is_neg(double v) { return v <= -1e-9; }
};

class FloatTableau {
 public:
  int rows_ = 0, ncols_ = 0;
  std::vector<std::vector<double>> a_;
  std::vector<double> b_;
  std::vector<int> basis_;
  std::vector<char> barred_;

  void pivot(int r, int c) {
    double inv = a_[r][c];
    for (int j = 0; j < ncols_; ++j) a_[r][j] /= inv;
    b_[r] /= inv;
    a_[r][c] = 1.0;
    for (int i = 0; i < rows_; ++i) {
      if (i == r) continue;
      double factor = a_[i][c];
      if (FloatOps::is_zero(factor)) continue;
      for (int j = 0; j < ncols_; ++j) a_[i][j] -= factor * a_[r][j];
      b_[i] -= factor * b_[r];
      a_[i][c] = 0.0;
    }
    basis_[r] = c;
  }

  double reduced(const std::vector<double>& cost, int j) const {
    double v = cost[j];
    for (int i = 0; i < rows_; ++i)
      if (!FloatOps::is_zero(a_[i][j])) v -= cost[basis_[i]] * a_[i][j];
    return v;
  }

  LpStatus optimize(const std::vector<double>& cost) {
    long long pivots = 0;
    const long long bland_after = 2LL * (rows_ + ncols_) + 64;
    while (true) {
      bool bland = pivots >= bland_after;
      int enter = -1;
      double best = 0;
      for (int j = 0; j < ncols_; ++j) {
        if (barred_[j]) continue;
        double rc = reduced(cost, j);
        if (FloatOps::is_neg(rc)) {
          if (bland) { enter = j; break; }
          if (enter == -1 || rc < best) { enter = j; best = rc; }
        }
      }
      if (enter == -1) return LpStatus::Optimal;
      int leave = -1;
      double ratio = 0;
      for (int i = 0; i < rows_; ++i) {
        if (a_[i][enter] <= 1e-11) continue;
        double r = b_[i] / a_[i][enter];
        if (leave == -1 || r < ratio - 1e-12 ||
            (std::abs(r - ratio) <= 1e-12 && basis_[i] < basis_[leave])) {
          leave = i;
          ratio = r;
        }
      }
      if (leave == -1) return LpStatus::Unbounded;
      pivot(leave, enter);
      ++pivots;
    }
  }
};

LpSolution<double> solve_float(const LinearProgram<double>& lp) {
  const int m = static_cast<int>(lp.rows.size());
  std::vector<int> pos_col(lp.num_vars), neg_col(lp.num_vars, -1);
  int ncols = 0;
  for (int j = 0; j < lp.num_vars; ++j) {
    pos_col[j] = ncols++;
    if (!lp.nonneg[j]) neg_col[j] = ncols++;
  }
  std::vector<int> slack_col(m, -1), art_col(m, -1);
  std::vector<char> flipped(m, 0);
  std::vector<Rel> rel(lp.rels.begin(), lp.rels.end());
  for (int i = 0; i < m; ++i) {
    bool neg_rhs = lp.rhs[i] < 0;
    flipped[i] = neg_rhs;
    Rel r = rel[i];
    if (neg_rhs) r = (r == Rel::Le ? Rel::Ge : (r == Rel::Ge ? Rel::Le : Rel::Eq));
    if (r == Rel::Ge && lp.rhs[i] == 0) {
      // a.x >= 0 is -a.x <= 0: the slack can start basic, no artificial.
      flipped[i] = !flipped[i];
      r = Rel::Le;
    }
    rel[i] = r;
    if (r != Rel::Eq) slack_col[i] = ncols++;
    if (r != Rel::Le) art_col[i] = ncols++;
  }

  FloatTableau t;
  t.rows_ = m;
  t.ncols_ = ncols;
  t.barred_.assign(ncols, 0);
  t.basis_.assign(m, -1);
  std::vector<double> phase1_cost(ncols, 0), phase2_cost(ncols, 0);
  for (int j = 0; j < lp.num_vars; ++j) {
    phase2_cost[pos_col[j]] = lp.objective[j];
    if (neg_col[j] >= 0) phase2_cost[neg_col[j]] = -lp.objective[j];
  }
  for (int i = 0; i < m; ++i) {
    std::vector<double> row(ncols, 0);
    double sign = flipped[i] ? -1 : 1;
    for (int j = 0; j < lp.num_vars; ++j) {
      row[pos_col[j]] = lp.rows[i][j] * sign;
      if (neg_col[j] >= 0) row[neg_col[j]] = -lp.rows[i][j] * sign;
    }
    if (slack_col[i] >= 0) row[slack_col[i]] = (rel[i] == Rel::Le) ? 1 : -1;
    if (art_col[i] >= 0) {
      row[art_col[i]] = 1;
      phase1_cost[art_col[i]] = 1;
    }
    t.a_.push_back(std::move(row));
    t.b_.push_back(lp.rhs[i] * sign);
    t.basis_[i] = (rel[i] == Rel::Le) ? slack_col[i] : art_col[i];
  }

  LpSolution<double> sol;
  bool any_artificial = false;
  for (int i = 0; i < m; ++i) any_artificial |= art_col[i] >= 0;
  if (any_artificial) {
    LpStatus st = t.optimize(phase1_cost);
    if (st == LpStatus::Unbounded) fail(ErrorKind::Internal, "phase-1 LP unbounded");
    double infeas = 0;
    for (int i = 0; i < m; ++i)
      if (art_col[i] >= 0 && t.basis_[i] == art_col[i]) infeas += t.b_[i];
    if (infeas > 1e-7) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    std::vector<char> is_art(ncols, 0);
    for (int i = 0; i < m; ++i)
      if (art_col[i] >= 0) is_art[art_col[i]] = 1;
    for (int i = 0; i < m; ++i) {
      if (art_col[i] < 0 || t.basis_[i] != art_col[i]) continue;
      for (int j = 0; j < ncols; ++j) {
        if (is_art[j] || FloatOps::is_zero(t.a_[i][j])) continue;
        t.pivot(i, j);
        break;
      }
    }
    for (int i = 0; i < m; ++i)
      if (art_col[i] >= 0) t.barred_[art_col[i]] = 1;
  }

  LpStatus st = t.optimize(phase2_cost);
  if (st == LpStatus::Unbounded) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  sol.status = LpStatus::Optimal;
  std::vector<double> col_value(ncols, 0);
  for (int i = 0; i < m; ++i) col_value[t.basis_[i]] = t.b_[i];
  sol.primal.assign(lp.num_vars, 0);
  sol.objective = 0;
  for (int j = 0; j < lp.num_vars; ++j) {
    double v = col_value[pos_col[j]];
    if (neg_col[j] >= 0) v -= col_value[neg_col[j]];
    sol.primal[j] = v;
    sol.objective += lp.objective[j] * v;
  }
  sol.dual.assign(m, 0);
  for (int i = 0; i < m; ++i) {
    int col = art_col[i] >= 0 ? art_col[i] : slack_col[i];
    double y = 0;
    for (int r = 0; r < m; ++r)
      if (!FloatOps::is_zero(t.a_[r][col])) y += phase2_cost[t.basis_[r]] * t.a_[r][col];
    if (flipped[i]) y = -y;
    sol.dual[i] = y;
  }
  return sol;
}

}  // namespace

LpSolution<Rat> solve_lp(const LinearProgram<Rat>& lp) {
  LpSolution<Rat> sol = solve_exact(lp);
  if (sol.status == LpStatus::Optimal) verify_lp_solution(lp, sol);
  return sol;
}

LpSolution<double> solve_lp(const LinearProgram<double>& lp) { return solve_float(lp); }

void verify_lp_solution(const LinearProgram<Rat>& lp, const LpSolution<Rat>& sol) {
  const int m = static_cast<int>(lp.rows.size());
  // Primal feasibility.
  for (int i = 0; i < m; ++i) {
    Rat lhs(0);
    for (int j = 0; j < lp.num_vars; ++j) lhs += lp.rows[i][j] * sol.primal[j];
    bool ok = lp.rels[i] == Rel::Le ? lhs <= lp.rhs[i]
              : lp.rels[i] == Rel::Ge ? lhs >= lp.rhs[i]
                                      : lhs == lp.rhs[i];
    if (!ok) fail(ErrorKind::Internal, "LP primal infeasible at reported optimum");
  }
  for (int j = 0; j < lp.num_vars; ++j)
    if (lp.nonneg[j] && sol.primal[j] < 0)
      fail(ErrorKind::Internal, "LP primal violates nonnegativity");
  // Dual feasibility: sign constraints and A^T y vs c.
  Rat gap(0);
  for (int i = 0; i < m; ++i) {
    if (lp.rels[i] == Rel::Le && sol.dual[i] > 0)
      fail(ErrorKind::Internal, "LP dual sign violated on Le row");
    if (lp.rels[i] == Rel::Ge && sol.dual[i] < 0)
      fail(ErrorKind::Internal, "LP dual sign violated on Ge row");
    gap += sol.dual[i] * lp.rhs[i];
  }
  for (int j = 0; j < lp.num_vars; ++j) {
    Rat aty(0);
    for (int i = 0; i < m; ++i) aty += lp.rows[i][j] * sol.dual[i];
    if (lp.nonneg[j]) {
      if (aty > lp.objective[j]) fail(ErrorKind::Internal, "LP dual infeasible on nonneg var");
    } else if (aty != lp.objective[j]) {
      fail(ErrorKind::Internal, "LP dual infeasible on free var");
    }
  }
  if (gap != sol.objective) fail(ErrorKind::Internal, "LP duality gap nonzero in exact mode");
}

}  // namespace symq
