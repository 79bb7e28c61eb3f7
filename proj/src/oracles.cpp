#include "symq/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <type_traits>
#include <unordered_map>

namespace symq {

std::string Monomial::label() const {
  if (terms.empty()) return "1";
  std::string out;
  for (size_t t = 0; t < terms.size(); ++t) {
    if (t) out += "*";
    out += "z[" + std::to_string(terms[t].first + 1) + "," + std::to_string(terms[t].second + 1) + "]";
  }
  return out;
}

MonomialBasis MonomialBasis::build(int n, int m, int max_degree, size_t cap) {
  if (max_degree < 0 || max_degree > n) fail(ErrorKind::BadShape, "monomial degree out of range");
  // Count first: sum_t C(n,t) m^t.
  Int count = 0;
  for (int t = 0; t <= max_degree; ++t) {
    Int choose;
    mpz_bin_uiui(choose.get_mpz_t(), n, t);
    Int pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), m, t);
    count += choose * pw;
  }
  if (count > static_cast<long>(cap)) fail(ErrorKind::TooLarge, "monomial basis exceeds cap");

  MonomialBasis basis;
  basis.n = n;
  basis.m = m;
  basis.max_degree = max_degree;
  Monomial cur;
  auto rec = [&](auto&& self, int next_pos) -> void {
    basis.monomials.push_back(cur);
    if (cur.degree() == max_degree) return;
    for (int pos = next_pos; pos < n; ++pos)
      for (int sym = 0; sym < m; ++sym) {
        cur.terms.push_back({pos, sym});
        self(self, pos + 1);
        cur.terms.pop_back();
      }
  };
  rec(rec, 0);
  std::stable_sort(basis.monomials.begin(), basis.monomials.end(),
                   [](const Monomial& a, const Monomial& b) { return a.degree() < b.degree(); });
  return basis;
}

namespace {

std::vector<Str> all_cube_strings(int n, int m, size_t cap) {
  Int total;
  mpz_ui_pow_ui(total.get_mpz_t(), m, n);
  if (total > static_cast<long>(cap)) fail(ErrorKind::TooLarge, "cube enumeration exceeds cap");
  std::vector<Str> out;
  Str cur(n, '\0');
  while (true) {
    out.push_back(cur);
    int pos = n - 1;
    while (pos >= 0 && cur[pos] == m - 1) cur[pos--] = 0;
    if (pos < 0) break;
    ++cur[pos];
  }
  return out;
}

struct BandRow {
  const Str* x;
  int value;  // f(x)
};

// Shared LP-with-separation driver. Builds the band rows once, then
// alternates solving with exact separation of [0,1] boundedness violations.
struct DegreeLp {
  const PartialFn& f;
  const MonomialBasis& basis;
  const DegreeLpOptions& opts;

  LinearProgram<Rat> lp;
  int error_var = -1;  // -1 when the objective is distribution-weighted error
  std::vector<int> band_row_index;       // per table entry, row index of its error band
  std::vector<Str> bound_pool;           // candidate strings for [0,1] rows
  std::map<Str, std::pair<char, char>> bound_rows;  // string -> (lower added, upper added)

  std::vector<Rat> eval_row(const Str& x) const {
    std::vector<Rat> row(lp.num_vars, Rat(0));
    for (size_t j = 0; j < basis.monomials.size(); ++j)
      if (basis.monomials[j].eval(x)) row[j] = 1;
    return row;
  }

  Rat eval_poly(const std::vector<Rat>& primal, const Str& x) const {
    Rat v(0);
    for (size_t j = 0; j < basis.monomials.size(); ++j)
      if (basis.monomials[j].eval(x)) v += primal[j];
    return v;
  }

  void add_bound_row(const Str& x, bool lower) {
    auto& flags = bound_rows[x];
    char& flag = lower ? flags.first : flags.second;
    if (flag) return;
    flag = 1;
    std::vector<Rat> row = eval_row(x);
    if (error_var >= 0) row[error_var] = 0;
    lp.add_row(std::move(row), lower ? Rel::Ge : Rel::Le, lower ? Rat(0) : Rat(1));
  }

  void add_bound_rows(const Str& x) {
    add_bound_row(x, true);
    add_bound_row(x, false);
  }

  // Most-violated-first separation, adding only the violated side; returns
  // how many rows were added.
  template <class Scalar>
  size_t separate(const std::vector<Scalar>& primal, double tol) {
    const size_t max_added_per_round = 48;
    std::vector<std::tuple<double, const Str*, bool>> violated;
    for (const Str& x : bound_pool) {
      double v = 0;
      for (size_t j = 0; j < basis.monomials.size(); ++j)
        if (basis.monomials[j].eval(x)) {
          if constexpr (std::is_same_v<Scalar, Rat>) v += rat_to_double(primal[j]);
          else v += primal[j];
        }
      if (v < -tol) {
        auto it = bound_rows.find(x);
        if (it == bound_rows.end() || !it->second.first) violated.push_back({-v, &x, true});
      } else if (v > 1 + tol) {
        auto it = bound_rows.find(x);
        if (it == bound_rows.end() || !it->second.second) violated.push_back({v - 1, &x, false});
      }
    }
    std::sort(violated.begin(), violated.end(),
              [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
    size_t added = std::min(max_added_per_round, violated.size());
    for (size_t i = 0; i < added; ++i)
      add_bound_row(*std::get<1>(violated[i]), std::get<2>(violated[i]));
    return added;
  }

  // Exact separation against the rational optimum; doubles only pre-screen.
  size_t separate_exact(const std::vector<Rat>& primal) {
    const size_t max_added_per_round = 48;
    std::vector<std::tuple<Rat, const Str*, bool>> violated;
    for (const Str& x : bound_pool) {
      Rat v = eval_poly(primal, x);
      if (v < 0) {
        auto it = bound_rows.find(x);
        if (it == bound_rows.end() || !it->second.first) violated.push_back({-v, &x, true});
      } else if (v > 1) {
        auto it = bound_rows.find(x);
        if (it == bound_rows.end() || !it->second.second) violated.push_back({v - 1, &x, false});
      }
    }
    std::sort(violated.begin(), violated.end(),
              [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
    size_t added = std::min(max_added_per_round, violated.size());
    for (size_t i = 0; i < added; ++i)
      add_bound_row(*std::get<1>(violated[i]), std::get<2>(violated[i]));
    return added;
  }

  LinearProgram<double> to_float() const {
    LinearProgram<double> flp;
    flp.num_vars = lp.num_vars;
    for (const Rat& c : lp.objective) flp.objective.push_back(rat_to_double(c));
    flp.nonneg = lp.nonneg;
    for (size_t i = 0; i < lp.rows.size(); ++i) {
      std::vector<double> row(lp.num_vars);
      for (int j = 0; j < lp.num_vars; ++j) row[j] = rat_to_double(lp.rows[i][j]);
      flp.add_row(std::move(row), lp.rels[i], rat_to_double(lp.rhs[i]));
    }
    return flp;
  }

  LpSolution<Rat> solve_with_separation() {
    const bool debug = [] {
      const char* dbg = std::getenv("SYMQ_LP_DEBUG");
      return dbg && *dbg == '1';
    }();
    // Cheap float rounds first: they only decide which [0,1] rows to
    // activate. The result below is always re-derived and re-separated by
    // the exact solver.
    for (int round = 0; round < 200; ++round) {
      LpSolution<double> fsol;
      try {
        fsol = solve_lp(to_float());
      } catch (const Error&) {
        break;
      }
      if (fsol.status != LpStatus::Optimal) break;
      size_t added = separate(fsol.primal, 1e-7);
      if (debug)
        std::fprintf(stderr, "[lp] float round %d: rows=%zu added=%zu\n", round, lp.rows.size(),
                     added);
      if (added == 0) break;
    }
    int rounds = 0;
    while (true) {
      LpSolution<Rat> sol = solve_lp(lp);
      if (sol.status != LpStatus::Optimal)
        fail(ErrorKind::Internal, "degree LP unexpectedly not optimal");
      size_t added = separate_exact(sol.primal);
      ++rounds;
      if (debug)
        std::fprintf(stderr, "[lp] exact round %d: rows=%zu vars=%d added=%zu\n", rounds,
                     lp.rows.size(), lp.num_vars, added);
      if (added == 0) return sol;
    }
  }
};

LPCertificate certify(const DegreeLp& driver, const LpSolution<Rat>& sol, int degree) {
  LPCertificate cert;
  cert.degree = degree;
  cert.status = sol.status;
  cert.exact_mode = true;
  cert.epsilon = sol.primal[driver.error_var];
  cert.dual_objective = 0;
  for (size_t i = 0; i < driver.lp.rows.size(); ++i)
    cert.dual_objective += sol.dual[i] * driver.lp.rhs[i];
  for (size_t j = 0; j < driver.basis.monomials.size(); ++j)
    if (sol.primal[j] != 0) cert.primal.push_back({driver.basis.monomials[j], sol.primal[j]});

  // Hard distribution: duals of the two error bands. The 0-side band is a Le
  // row (dual <= 0), the 1-side a Ge row (dual >= 0). Stationarity of the
  // free error variable makes them sum to 1, except in the degenerate
  // zero-error case where any distribution certifies the bound.
  const auto& table = driver.f.table();
  std::vector<std::pair<Str, Rat>> weights;
  Rat total(0);
  for (size_t t = 0; t < table.size(); ++t) {
    Rat y = sol.dual[driver.band_row_index[t]];
    Rat w = table[t].second == 0 ? -y : y;
    if (w < 0) fail(ErrorKind::Internal, "band dual with the wrong sign");
    if (w != 0) weights.push_back({table[t].first, w});
    total += w;
  }
  if (total == 1) {
    cert.dual = FiniteDistribution::from_weights(std::move(weights));
  } else if (cert.epsilon == 0) {
    std::vector<Str> support;
    for (const auto& [x, v] : table) support.push_back(x);
    cert.dual = FiniteDistribution::uniform(std::move(support));
  } else {
    fail(ErrorKind::Internal, "hard-distribution weights do not sum to 1");
  }
  return cert;
}

Rat round_to_rat(double v) {
  Rat q(static_cast<long>(std::llround(v * 1e12)), 1000000000000L);
  q.canonicalize();
  return q;
}

// Float path: the same LP and separation loop in doubles, then a
// round-then-verify step at 1e-9 tolerance.
LPCertificate solve_float(DegreeLp& driver, int degree) {
  const double tol = 1e-9;
  LpSolution<double> sol;
  for (int round = 0;; ++round) {
    const auto& src = driver.lp;
    LinearProgram<double> flp;
    flp.num_vars = src.num_vars;
    for (const Rat& c : src.objective) flp.objective.push_back(rat_to_double(c));
    flp.nonneg = src.nonneg;
    for (size_t i = 0; i < src.rows.size(); ++i) {
      std::vector<double> row(src.num_vars);
      for (int j = 0; j < src.num_vars; ++j) row[j] = rat_to_double(src.rows[i][j]);
      flp.add_row(std::move(row), src.rels[i], rat_to_double(src.rhs[i]));
    }
    sol = solve_lp(flp);
    if (sol.status != LpStatus::Optimal) fail(ErrorKind::Internal, "float degree LP not optimal");
    size_t added = 0;
    for (const Str& x : driver.bound_pool) {
      if (driver.bound_rows.count(x)) continue;
      double v = 0;
      for (size_t j = 0; j < driver.basis.monomials.size(); ++j)
        if (driver.basis.monomials[j].eval(x)) v += sol.primal[j];
      if (v < -tol || v > 1 + tol) {
        driver.add_bound_rows(x);
        ++added;
      }
    }
    if (added == 0) break;
    if (round > 200) fail(ErrorKind::Internal, "float separation did not converge");
  }

  const auto& src = driver.lp;
  for (size_t i = 0; i < src.rows.size(); ++i) {
    double lhs = 0;
    for (int j = 0; j < src.num_vars; ++j) lhs += rat_to_double(src.rows[i][j]) * sol.primal[j];
    double rhs = rat_to_double(src.rhs[i]);
    bool ok = src.rels[i] == Rel::Le ? lhs <= rhs + tol
              : src.rels[i] == Rel::Ge ? lhs >= rhs - tol
                                       : std::abs(lhs - rhs) <= tol;
    if (!ok) fail(ErrorKind::Internal, "float LP solution failed verification");
  }

  LPCertificate cert;
  cert.degree = degree;
  cert.status = sol.status;
  cert.exact_mode = false;
  cert.epsilon = round_to_rat(sol.primal[driver.error_var]);
  cert.dual_objective = cert.epsilon;
  for (size_t j = 0; j < driver.basis.monomials.size(); ++j)
    if (std::abs(sol.primal[j]) > 1e-12)
      cert.primal.push_back({driver.basis.monomials[j], round_to_rat(sol.primal[j])});
  const auto& table = driver.f.table();
  std::vector<std::pair<Str, Rat>> weights;
  Rat total(0);
  for (size_t t = 0; t < table.size(); ++t) {
    double y = sol.dual[driver.band_row_index[t]];
    double w = table[t].second == 0 ? -y : y;
    if (w > 1e-12) {
      Rat rw = round_to_rat(w);
      weights.push_back({table[t].first, rw});
      total += rw;
    }
  }
  if (total > 0) {
    for (auto& [x, w] : weights) w /= total;
    cert.dual = FiniteDistribution::from_weights(std::move(weights));
  } else {
    std::vector<Str> support;
    for (const auto& [x, v] : table) support.push_back(x);
    cert.dual = FiniteDistribution::uniform(std::move(support));
  }
  return cert;
}

DegreeLp make_min_error_lp(const PartialFn& f, const MonomialBasis& basis,
                           const DegreeLpOptions& opts) {
  DegreeLp driver{f, basis, opts, {}, -1, {}, {}, {}};
  const auto& table = f.table();
  if (table.empty()) fail(ErrorKind::BadShape, "degree LP needs a nonempty promise");

  for (size_t j = 0; j < basis.monomials.size(); ++j) driver.lp.add_var(Rat(0), false);
  driver.error_var = driver.lp.add_var(Rat(1), false);  // minimize e

  driver.band_row_index.resize(table.size());
  for (size_t t = 0; t < table.size(); ++t) {
    std::vector<Rat> row = driver.eval_row(table[t].first);
    if (table[t].second == 0) {
      row[driver.error_var] = -1;  // p(x) - e <= 0
      driver.lp.add_row(std::move(row), Rel::Le, Rat(0));
    } else {
      row[driver.error_var] = 1;  // p(x) + e >= 1
      driver.lp.add_row(std::move(row), Rel::Ge, Rat(1));
    }
    driver.band_row_index[t] = static_cast<int>(driver.lp.rows.size()) - 1;
  }
  // Anchor: e >= 0 keeps the relaxation bounded before any [0,1] rows are
  // separated in. Its dual is zero whenever the optimum error is positive.
  {
    std::vector<Rat> row(driver.lp.num_vars, Rat(0));
    row[driver.error_var] = 1;
    driver.lp.add_row(std::move(row), Rel::Ge, Rat(0));
  }

  if (opts.bounded) {
    driver.bound_pool = all_cube_strings(f.n(), f.m(), opts.cube_cap);
  } else {
    for (const auto& [x, v] : table) driver.bound_pool.push_back(x);
  }
  return driver;
}

}  // namespace

LPCertificate degree_lp_min_error(const PartialFn& f, int degree, const DegreeLpOptions& opts) {
  MonomialBasis basis = MonomialBasis::build(f.n(), f.m(), degree, opts.monomial_cap);
  DegreeLp driver = make_min_error_lp(f, basis, opts);
  if (!opts.exact) return solve_float(driver, degree);
  LpSolution<Rat> sol = driver.solve_with_separation();
  return certify(driver, sol, degree);
}

LPCertificate approx_degree(const PartialFn& f, const Rat& eps, const DegreeLpOptions& opts) {
  if (eps < 0 || eps >= 1) fail(ErrorKind::BadShape, "error target must be in [0,1)");
  for (int d = 0; d <= f.n(); ++d) {
    LPCertificate cert = degree_lp_min_error(f, d, opts);
    if (cert.epsilon <= eps) return cert;
  }
  fail(ErrorKind::Internal, "interpolation at degree n must be feasible");
}

Rat min_error_on_distribution(const PartialFn& f, const FiniteDistribution& mu, int degree,
                              const DegreeLpOptions& opts) {
  MonomialBasis basis = MonomialBasis::build(f.n(), f.m(), degree, opts.monomial_cap);
  DegreeLp driver{f, basis, opts, {}, -1, {}, {}, {}};
  for (size_t j = 0; j < basis.monomials.size(); ++j) driver.lp.add_var(Rat(0), false);

  // Objective: sum_0 mu p  +  sum_1 mu (1 - p); the constant part is added
  // back at the end.
  Rat constant(0);
  for (size_t i = 0; i < mu.size(); ++i) {
    const Str& x = mu.support()[i];
    std::optional<int> v = f.evaluate(x);
    if (!v.has_value()) fail(ErrorKind::BadShape, "distribution leaves the promise");
    Rat sign = *v == 0 ? Rat(1) : Rat(-1);
    for (size_t j = 0; j < basis.monomials.size(); ++j)
      if (basis.monomials[j].eval(x)) driver.lp.objective[j] += sign * mu.weights()[i];
    if (*v == 1) constant += mu.weights()[i];
  }

  if (opts.bounded) {
    driver.bound_pool = all_cube_strings(f.n(), f.m(), opts.cube_cap);
  } else {
    for (const auto& [x, v] : f.table()) driver.bound_pool.push_back(x);
  }
  // The polynomial must satisfy the [0,1] bounds somewhere to anchor the
  // objective; seed with the support rows so the LP is never unbounded.
  for (const Str& x : mu.support()) driver.add_bound_rows(x);
  LpSolution<Rat> sol = driver.solve_with_separation();
  return sol.objective + constant;
}

CostProxyResult cost_lower_proxy(const GroupAction& g, int r, const Rat& eps,
                                 const DegreeLpOptions& opts, size_t closure_cap) {
  CostProxyResult result;
  if (r >= g.degree()) {
    result.infinite = true;
    return result;
  }
  PartialFn f = distinguishing_fn(g, r, closure_cap);
  LPCertificate cert = approx_degree(f, eps, opts);
  result.value = make_rat(cert.degree, 2);
  result.certificate = std::move(cert);
  return result;
}

namespace {

struct AliveHash {
  size_t operator()(const std::vector<int>& v) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (int x : v) { h ^= static_cast<std::uint64_t>(x); h *= 0x100000001b3ULL; }
    return static_cast<size_t>(h);
  }
};

// Shared split: partition alive inputs by their symbol at a position; skips
// positions on which the alive set does not split.
std::vector<std::vector<int>> split_alive(const std::vector<std::pair<Str, int>>& table,
                                          const std::vector<int>& alive, int pos, int m) {
  std::vector<std::vector<int>> parts(m);
  for (int idx : alive) parts[static_cast<unsigned char>(table[idx].first[pos])].push_back(idx);
  return parts;
}

}  // namespace

int det_query_complexity(const PartialFn& f, size_t state_cap) {
  const auto& table = f.table();
  if (table.empty()) fail(ErrorKind::BadShape, "empty promise");
  std::unordered_map<std::vector<int>, int, AliveHash> memo;

  auto rec = [&](auto&& self, const std::vector<int>& alive) -> int {
    int first = table[alive.front()].second;
    bool constant = true;
    for (int idx : alive)
      if (table[idx].second != first) { constant = false; break; }
    if (constant) return 0;
    if (auto it = memo.find(alive); it != memo.end()) return it->second;
    if (memo.size() > state_cap) fail(ErrorKind::TooLarge, "decision-tree search exceeded state cap");

    int best = f.n() + 1;
    for (int pos = 0; pos < f.n(); ++pos) {
      auto parts = split_alive(table, alive, pos, f.m());
      int nonempty = 0;
      for (const auto& p : parts)
        if (!p.empty()) ++nonempty;
      if (nonempty <= 1) continue;  // position does not split the alive set
      int worst = 0;
      for (const auto& p : parts) {
        if (p.empty()) continue;
        worst = std::max(worst, self(self, p));
        if (1 + worst >= best) break;  // cannot improve on this branch
      }
      best = std::min(best, 1 + worst);
      if (best == 1) break;
    }
    memo[alive] = best;
    return best;
  };

  std::vector<int> all(table.size());
  for (size_t i = 0; i < table.size(); ++i) all[i] = static_cast<int>(i);
  return rec(rec, all);
}

namespace {

struct DistDp {
  const PartialFn& f;
  const std::vector<Rat>& weight;  // per table entry
  size_t state_cap;
  std::unordered_map<std::vector<int>, std::vector<std::optional<Rat>>, AliveHash> memo;

  // Weighted error of guessing the better constant on the alive set.
  Rat leaf_error(const std::vector<int>& alive) const {
    Rat err0(0), err1(0);
    for (int idx : alive)
      (f.table()[idx].second == 1 ? err0 : err1) += weight[idx];
    return std::min(err0, err1);
  }

  Rat value(const std::vector<int>& alive, int depth) {
    Rat base = leaf_error(alive);
    if (depth == 0 || base == 0) return base;
    auto& slot = memo[alive];
    if (slot.empty()) slot.assign(static_cast<size_t>(f.n()) + 1, std::nullopt);
    if (slot[depth].has_value()) return *slot[depth];
    if (memo.size() > state_cap) fail(ErrorKind::TooLarge, "DP exceeded state cap");
    Rat best = base;
    for (int pos = 0; pos < f.n(); ++pos) {
      auto parts = split_alive(f.table(), alive, pos, f.m());
      int nonempty = 0;
      for (const auto& p : parts)
        if (!p.empty()) ++nonempty;
      if (nonempty <= 1) continue;
      Rat total(0);
      for (const auto& p : parts) {
        if (p.empty()) continue;
        total += value(p, depth - 1);
        if (total >= best) break;
      }
      if (total < best) best = total;
    }
    slot[depth] = best;
    return best;
  }

  // Per-entry error flags of one optimal depth-limited tree (lowest splitting
  // position wins ties).
  void optimal_tree_errors(const std::vector<int>& alive, int depth, std::vector<char>& err) {
    Rat base = leaf_error(alive);
    Rat best = value(alive, depth);
    if (depth == 0 || best == base) {
      Rat err0(0), err1(0);
      for (int idx : alive)
        (f.table()[idx].second == 1 ? err0 : err1) += weight[idx];
      int guess = err1 <= err0 ? 0 : 1;
      for (int idx : alive)
        if (f.table()[idx].second != guess) err[idx] = 1;
      return;
    }
    for (int pos = 0; pos < f.n(); ++pos) {
      auto parts = split_alive(f.table(), alive, pos, f.m());
      int nonempty = 0;
      for (const auto& p : parts)
        if (!p.empty()) ++nonempty;
      if (nonempty <= 1) continue;
      Rat total(0);
      for (const auto& p : parts) {
        if (p.empty()) continue;
        total += value(p, depth - 1);
      }
      if (total == best) {
        for (const auto& p : parts)
          if (!p.empty()) optimal_tree_errors(p, depth - 1, err);
        return;
      }
    }
    fail(ErrorKind::Internal, "optimal tree reconstruction failed");
  }
};

std::vector<Rat> table_weights(const PartialFn& f, const FiniteDistribution& mu) {
  const auto& table = f.table();
  std::vector<Rat> weight(table.size(), Rat(0));
  Rat covered(0);
  for (size_t i = 0; i < mu.size(); ++i) {
    const Str& x = mu.support()[i];
    auto it = std::lower_bound(table.begin(), table.end(), x,
                               [](const auto& e, const Str& key) { return e.first < key; });
    if (it == table.end() || it->first != x)
      fail(ErrorKind::BadShape, "distribution leaves the promise");
    weight[it - table.begin()] = mu.weights()[i];
    covered += mu.weights()[i];
  }
  if (covered != 1) fail(ErrorKind::Internal, "distribution mass mismatch");
  return weight;
}

}  // namespace

Rat distributional_value(const PartialFn& f, const FiniteDistribution& mu, int depth,
                         size_t state_cap) {
  std::vector<Rat> weight = table_weights(f, mu);
  DistDp dp{f, weight, state_cap, {}};
  std::vector<int> all(f.table().size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return dp.value(all, depth);
}

int distributional_rand_complexity(const PartialFn& f, const FiniteDistribution& mu,
                                   const Rat& eps, size_t state_cap) {
  std::vector<Rat> weight = table_weights(f, mu);
  DistDp dp{f, weight, state_cap, {}};
  std::vector<int> all(f.table().size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  for (int depth = 0; depth <= f.n(); ++depth)
    if (dp.value(all, depth) <= eps) return depth;
  fail(ErrorKind::Internal, "full-depth tree must reach zero error");
}

HardDistribution hard_distribution(const PartialFn& f, int budget, HardDistKind kind, Rng& rng,
                                   int ascent_iters, const DegreeLpOptions& opts) {
  HardDistribution out;
  out.kind = kind;
  if (kind == HardDistKind::Poly) {
    LPCertificate cert = degree_lp_min_error(f, budget, opts);
    out.dist = cert.dual;
    out.certified_error = cert.epsilon;
    return out;
  }

  // Projected supergradient ascent on mu -> min_tree err_mu(tree). The
  // gradient at mu is the error vector of an optimal tree.
  const auto& table = f.table();
  size_t k = table.size();
  std::vector<double> mu(k, 1.0 / static_cast<double>(k));
  std::vector<double> best_mu = mu;
  Rat best_value(-1);

  auto rationalize = [&](const std::vector<double>& w) {
    const long denom = 1000000;
    std::vector<long> num(k);
    long total = 0;
    for (size_t i = 0; i < k; ++i) {
      num[i] = std::lround(std::max(0.0, w[i]) * denom);
      total += num[i];
    }
    if (total == 0) { num[0] = denom; total = denom; }
    std::vector<std::pair<Str, Rat>> weights;
    for (size_t i = 0; i < k; ++i)
      if (num[i] > 0) weights.push_back({table[i].first, make_rat(num[i], total)});
    return FiniteDistribution::from_weights(std::move(weights));
  };

  std::vector<int> all(k);
  for (size_t i = 0; i < k; ++i) all[i] = static_cast<int>(i);

  for (int iter = 0; iter < ascent_iters; ++iter) {
    FiniteDistribution current = rationalize(mu);
    std::vector<Rat> weight = table_weights(f, current);
    DistDp dp{f, weight, 2000000, {}};
    Rat value = dp.value(all, budget);
    if (value > best_value) {
      best_value = value;
      best_mu = mu;
    }
    std::vector<char> err(k, 0);
    dp.optimal_tree_errors(all, budget, err);
    double step = 0.5 / std::sqrt(static_cast<double>(iter + 1));
    for (size_t i = 0; i < k; ++i) mu[i] += step * (err[i] ? 1.0 : 0.0);
    // Euclidean projection onto the simplex.
    std::vector<double> sorted = mu;
    std::sort(sorted.rbegin(), sorted.rend());
    double cum = 0, theta = 0;
    int cut = 0;
    for (size_t i = 0; i < k; ++i) {
      cum += sorted[i];
      double cand = (cum - 1.0) / static_cast<double>(i + 1);
      if (sorted[i] - cand > 0) { theta = cand; cut = static_cast<int>(i) + 1; }
    }
    (void)cut;
    for (size_t i = 0; i < k; ++i) mu[i] = std::max(0.0, mu[i] - theta);
    (void)rng;
  }

  out.dist = rationalize(best_mu);
  out.certified_error = distributional_value(f, out.dist, budget);
  return out;
}

}  // namespace symq
