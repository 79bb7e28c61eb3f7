#include <doctest.h>

#include <algorithm>
#include <functional>

#include "symq/oracles.hpp"

using namespace symq;

namespace {

PartialFn xor2() {
  return PartialFn::from_table(2, 2, "xor2",
                               {{{0, 0}, 0}, {{0, 1}, 1}, {{1, 0}, 1}, {{1, 1}, 0}});
}

PartialFn and2() {
  return PartialFn::from_table(2, 2, "and2",
                               {{{0, 0}, 0}, {{0, 1}, 0}, {{1, 0}, 0}, {{1, 1}, 1}});
}

PartialFn const_fn() {
  return PartialFn::from_table(2, 2, "const1", {{{0, 0}, 1}, {{1, 1}, 1}});
}

}  // namespace

TEST_CASE("monomial basis: counts, distinct positions, evaluation") {
  MonomialBasis basis = MonomialBasis::build(3, 2, 2);
  // 1 + C(3,1)*2 + C(3,2)*4 = 1 + 6 + 12.
  CHECK(basis.monomials.size() == 19);
  for (const Monomial& mono : basis.monomials) {
    for (size_t t = 1; t < mono.terms.size(); ++t)
      CHECK(mono.terms[t - 1].first < mono.terms[t].first);
  }
  Monomial m{{{0, 1}, {2, 0}}};
  CHECK(m.eval(Str({1, 0, 0})));
  CHECK_FALSE(m.eval(Str({1, 0, 1})));
  CHECK(m.label() == "z[1,2]*z[3,1]");
  CHECK_THROWS_AS((void)MonomialBasis::build(8, 8, 8, 1000), Error);
}

TEST_CASE("det_query_complexity: frozen small cases") {
  CHECK(det_query_complexity(const_fn()) == 0);
  for (int m : {3, 4, 5}) CHECK(det_query_complexity(triv(m)) == 1);

  // Oracle for AND of two bits: no depth-1 strategy is exact. A depth-1
  // strategy queries one position and outputs a constant per answer; check
  // all of them.
  PartialFn f = and2();
  bool depth1_works = false;
  for (int pos = 0; pos < 2; ++pos)
    for (int out0 = 0; out0 < 2; ++out0)
      for (int out1 = 0; out1 < 2; ++out1) {
        bool exact = true;
        for (const auto& [x, v] : f.table()) exact &= (x[pos] ? out1 : out0) == v;
        depth1_works |= exact;
      }
  CHECK_FALSE(depth1_works);
  CHECK(det_query_complexity(f) == 2);
  CHECK(det_query_complexity(xor2()) == 2);

  // Distinguishing a permutation string from a constant: two queries.
  CHECK(det_query_complexity(distinguishing_fn(GroupAction::symmetric(3), 1)) == 2);
}

namespace {

// Exhaustive depth-bounded tree enumeration, independent of the DP: returns
// the least mu-average error over all decision trees of depth <= depth.
Rat brute_tree_error(const PartialFn& f, const std::vector<std::pair<Str, Rat>>& weighted,
                     std::vector<int> alive, int depth) {
  Rat err0(0), err1(0);
  for (int idx : alive)
    (f.table()[idx].second == 1 ? err0 : err1) += weighted[idx].second;
  Rat best = std::min(err0, err1);
  if (depth == 0) return best;
  for (int pos = 0; pos < f.n(); ++pos) {
    std::vector<std::vector<int>> parts(f.m());
    for (int idx : alive) parts[static_cast<unsigned char>(f.table()[idx].first[pos])].push_back(idx);
    int nonempty = 0;
    for (const auto& p : parts)
      if (!p.empty()) ++nonempty;
    if (nonempty <= 1) continue;
    Rat total(0);
    for (const auto& p : parts)
      if (!p.empty()) total += brute_tree_error(f, weighted, p, depth - 1);
    best = std::min(best, total);
  }
  return best;
}

}  // namespace

TEST_CASE("distributional complexity: frozen cases and the brute-force oracle") {
  PartialFn t3 = triv(3);
  std::vector<Str> support;
  for (const auto& [x, v] : t3.table()) support.push_back(x);
  FiniteDistribution uniform = FiniteDistribution::uniform(support);

  CHECK(distributional_rand_complexity(t3, uniform, Rat(1, 2)) == 0);
  CHECK(distributional_rand_complexity(t3, uniform, Rat(0)) == 1);

  PartialFn dist = distinguishing_fn(GroupAction::symmetric(3), 1);
  std::vector<Str> dsupport;
  for (const auto& [x, v] : dist.table()) dsupport.push_back(x);
  FiniteDistribution duni = FiniteDistribution::uniform(dsupport);
  FiniteDistribution dsym = symmetrize(duni, GroupAction::symmetric(3));

  std::vector<std::pair<Str, Rat>> weighted;
  const auto& table = dist.table();
  for (const auto& [x, v] : table) weighted.push_back({x, dsym.weight_of(x)});
  std::vector<int> all(table.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);

  for (int depth = 0; depth <= 2; ++depth)
    CHECK(distributional_value(dist, dsym, depth) == brute_tree_error(dist, weighted, all, depth));

  int depth = distributional_rand_complexity(dist, dsym, Rat(1, 10));
  CHECK(brute_tree_error(dist, weighted, all, depth) <= Rat(1, 10));
  CHECK((depth == 0 || brute_tree_error(dist, weighted, all, depth - 1) > Rat(1, 10)));

  // Deterministic complexity dominates every distributional one.
  CHECK(det_query_complexity(dist) >= depth);
}

TEST_CASE("approx_degree: constants, non-constants, parity floor") {
  CHECK(approx_degree(const_fn(), Rat(1, 3)).degree == 0);
  CHECK(approx_degree(triv(3), Rat(1, 3)).degree >= 1);

  // Degree-1 identity oracle for XOR: every basis monomial of degree <= 1
  // satisfies M(00) + M(11) == M(01) + M(10), so every degree-1 polynomial
  // has average error exactly 1/2 on the uniform distribution, forcing
  // min-error 1/2 at degree 1.
  MonomialBasis basis = MonomialBasis::build(2, 2, 1);
  for (const Monomial& mono : basis.monomials) {
    int lhs = mono.eval(Str({0, 0})) + mono.eval(Str({1, 1}));
    int rhs = mono.eval(Str({0, 1})) + mono.eval(Str({1, 0}));
    CHECK(lhs == rhs);
  }
  LPCertificate deg1 = degree_lp_min_error(xor2(), 1);
  CHECK(deg1.epsilon == Rat(1, 2));
  LPCertificate cert = approx_degree(xor2(), Rat(1, 3));
  CHECK(cert.degree == 2);
  CHECK(cert.epsilon <= Rat(1, 3));

  // Exact-representation degree at eps = 0.
  CHECK(approx_degree(triv(3), Rat(0)).degree == 1);
  CHECK(approx_degree(xor2(), Rat(0)).degree == 2);

  // Non-increasing in eps on a grid.
  int prev = 1 << 20;
  for (const Rat& eps : {Rat(0), Rat(1, 10), Rat(1, 4), Rat(1, 3), Rat(49, 100)}) {
    int d = approx_degree(triv(3), eps).degree;
    CHECK(d <= prev);
    prev = d;
  }

  // Sanity bound: adeg(f, 1/3) <= 2 D(f) for tested zoo functions.
  for (const PartialFn& f : {triv(3), xor2(), distinguishing_fn(GroupAction::symmetric(3), 1)})
    CHECK(approx_degree(f, Rat(1, 3)).degree <= 2 * det_query_complexity(f));
}

TEST_CASE("degree certificates: zero gap, restricted-primal reproduction") {
  for (int budget : {0, 1}) {
    LPCertificate cert = degree_lp_min_error(distinguishing_fn(GroupAction::symmetric(3), 1), budget);
    CHECK(cert.dual_objective == cert.epsilon);
    // Re-solving the primal restricted to the dual distribution reproduces
    // the optimal error exactly.
    Rat reproduced = min_error_on_distribution(distinguishing_fn(GroupAction::symmetric(3), 1),
                                               cert.dual, budget);
    CHECK(reproduced == cert.epsilon);
  }
  LPCertificate xcert = degree_lp_min_error(xor2(), 1);
  CHECK(min_error_on_distribution(xor2(), xcert.dual, 1) == xcert.epsilon);
}

TEST_CASE("hard distributions: poly dual and dp ascent") {
  Rng rng(5);
  // Budget-0 dual of triv(3): uniform on the two promise strings.
  HardDistribution hd = hard_distribution(triv(3), 0, HardDistKind::Poly, rng);
  CHECK(hd.certified_error == Rat(1, 2));
  CHECK(hd.dist.size() == 2);
  CHECK(hd.dist.weight_of(Str({0, 0, 0})) == Rat(1, 2));
  CHECK(hd.dist.weight_of(Str({1, 1, 1})) == Rat(1, 2));

  // Constant functions: certified error 0.
  HardDistribution hc = hard_distribution(const_fn(), 0, HardDistKind::Poly, rng);
  CHECK(hc.certified_error == Rat(0));

  // Symmetrizing the hard distribution never decreases the certified error.
  PartialFn dist = distinguishing_fn(GroupAction::symmetric(3), 1);
  HardDistribution hp = hard_distribution(dist, 1, HardDistKind::Poly, rng);
  FiniteDistribution symmetrized = symmetrize(hp.dist, GroupAction::symmetric(3));
  Rat before = min_error_on_distribution(dist, hp.dist, 1);
  Rat after = min_error_on_distribution(dist, symmetrized, 1);
  CHECK(before == hp.certified_error);
  CHECK(after >= before);

  // DP ascent: the certificate is the exact DP value at the returned
  // distribution, and for triv(3) at depth 0 the optimum 1/2 is reachable.
  HardDistribution dp = hard_distribution(triv(3), 0, HardDistKind::Dp, rng, 30);
  CHECK(dp.certified_error == distributional_value(triv(3), dp.dist, 0));
  CHECK(dp.certified_error == Rat(1, 2));

  HardDistribution dp1 = hard_distribution(dist, 1, HardDistKind::Dp, rng, 25);
  CHECK(dp1.certified_error == distributional_value(dist, dp1.dist, 1));
  CHECK(dp1.certified_error > 0);
}

TEST_CASE("cost proxy: infinity marker, floors, monotonicity in r") {
  GroupAction s3 = GroupAction::symmetric(3);
  CHECK(cost_lower_proxy(s3, 3).infinite);
  CHECK(cost_lower_proxy(s3, 5).infinite);

  CostProxyResult r1 = cost_lower_proxy(s3, 1);
  CHECK_FALSE(r1.infinite);
  CHECK(r1.value >= Rat(1, 2));

  CostProxyResult r2 = cost_lower_proxy(s3, 2);
  CHECK(r2.value >= r1.value);
}

TEST_CASE("unbounded LP variant stays below the bounded one") {
  PartialFn dist = distinguishing_fn(GroupAction::symmetric(3), 1);
  DegreeLpOptions bounded;
  DegreeLpOptions loose;
  loose.bounded = false;
  for (int d : {0, 1}) {
    Rat eb = degree_lp_min_error(dist, d, bounded).epsilon;
    Rat el = degree_lp_min_error(dist, d, loose).epsilon;
    CHECK(el <= eb);
  }
}

TEST_CASE("float LP mode round-trips through verification") {
  DegreeLpOptions opts;
  opts.exact = false;
  LPCertificate cert = degree_lp_min_error(xor2(), 1, opts);
  CHECK_FALSE(cert.exact_mode);
  double e = rat_to_double(cert.epsilon);
  CHECK(e == doctest::Approx(0.5).epsilon(1e-6));
}
