#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symq/boolfn.hpp"
#include "symq/lp.hpp"
#include "symq/shuffle.hpp"

namespace symq {

// Products of indicator variables z_{ij} (= 1 iff x_i = j) with distinct
// position indices; always-zero monomials (two symbols at one position) are
// never generated.
struct Monomial {
  std::vector<std::pair<int, int>> terms;  // (position, symbol), sorted by position

  int degree() const { return static_cast<int>(terms.size()); }
  bool eval(const Str& x) const {
    for (auto [pos, sym] : terms)
      if (static_cast<unsigned char>(x[pos]) != sym) return false;
    return true;
  }
  std::string label() const;  // "1" or "z[i,j]*..." with 1-indexed i, j
};

struct MonomialBasis {
  int n = 0, m = 0, max_degree = 0;
  std::vector<Monomial> monomials;  // by degree, then lexicographic

  static MonomialBasis build(int n, int m, int max_degree, size_t cap = 200000);
};

struct DegreeLpOptions {
  bool bounded = true;       // enforce p(x) in [0,1] on the whole cube
  bool exact = true;         // rational simplex; float simplex otherwise
  size_t cube_cap = 1 << 21; // largest m^n the bounded separation may scan
  size_t monomial_cap = 200000;
};

struct LPCertificate {
  int degree = 0;
  Rat epsilon;          // achieved min error at this degree
  Rat dual_objective;   // equals epsilon in exact mode (zero duality gap)
  LpStatus status = LpStatus::Optimal;
  bool exact_mode = true;
  std::vector<std::pair<Monomial, Rat>> primal;  // nonzero coefficients
  FiniteDistribution dual;                       // hard distribution over Dom(f)
};

// Min-error polynomial fit at a fixed degree: minimize e subject to
// p(x) in [0, e] on 0-inputs, p(x) in [1-e, 1] on 1-inputs, and (bounded)
// p(x) in [0, 1] on every string of [m]^n. Boundedness rows are added by
// exact separation. The dual weights on the two error bands form the hard
// distribution (they sum to exactly 1).
LPCertificate degree_lp_min_error(const PartialFn& f, int degree,
                                  const DegreeLpOptions& opts = {});

// Least degree whose min error is <= eps. Always terminates by degree n
// (exact interpolation).
LPCertificate approx_degree(const PartialFn& f, const Rat& eps, const DegreeLpOptions& opts = {});

// Smallest achievable mu-average error of a degree-d polynomial bounded in
// [0,1] on the cube: the "re-solve the primal restricted to the hard
// distribution" check. mu must be supported on Dom(f).
Rat min_error_on_distribution(const PartialFn& f, const FiniteDistribution& mu, int degree,
                              const DegreeLpOptions& opts = {});

struct CostProxyResult {
  bool infinite = false;     // r >= n
  Rat value;                 // degree/2 lower bound on the distinguishing cost
  std::optional<LPCertificate> certificate;
};

CostProxyResult cost_lower_proxy(const GroupAction& g, int r, const Rat& eps = Rat(1, 3),
                                 const DegreeLpOptions& opts = {},
                                 size_t closure_cap = kDefaultClosureCap);

// Exact deterministic query complexity by adversarial search over consistent
// promise subsets, memoized. D(f) = 0 iff f is constant on its promise.
int det_query_complexity(const PartialFn& f, size_t state_cap = 2000000);

// Minimum depth of a deterministic tree whose mu-average error is <= eps;
// exact rational DP. Ties in position choice break toward the lowest index.
int distributional_rand_complexity(const PartialFn& f, const FiniteDistribution& mu,
                                   const Rat& eps, size_t state_cap = 2000000);

// Minimum mu-average error achievable with at most `depth` queries.
Rat distributional_value(const PartialFn& f, const FiniteDistribution& mu, int depth,
                         size_t state_cap = 2000000);

enum class HardDistKind { Poly, Dp };

struct HardDistribution {
  FiniteDistribution dist;
  Rat certified_error;  // poly: LP optimum; dp: exact DP value at the distribution
  HardDistKind kind = HardDistKind::Poly;
};

// poly: the dual optimum of the degree-(budget) LP. dp: a Yao-style worst
// distribution for depth-budget trees found by projected supergradient
// ascent, certified by re-evaluating the exact DP at the returned rational
// weights.
HardDistribution hard_distribution(const PartialFn& f, int budget, HardDistKind kind,
                                   Rng& rng, int ascent_iters = 60,
                                   const DegreeLpOptions& opts = {});

}  // namespace symq
