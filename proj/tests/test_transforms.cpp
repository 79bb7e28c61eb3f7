#include <doctest.h>

#include <algorithm>
#include <set>

#include "symq/transforms.hpp"

using namespace symq;

namespace {

std::set<std::vector<int>> element_set(const GroupAction& g) {
  std::set<std::vector<int>> out;
  for (const Permutation& p : g.closure_elements()) out.insert(p.images());
  return out;
}

// Brute-force oracle: the edge permutations induced by every vertex
// relabeling, built straight from the definition.
std::set<std::vector<int>> vertex_relabeling_edge_action(int k) {
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) edges.push_back({a, b});
  auto edge_index = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    for (size_t e = 0; e < edges.size(); ++e)
      if (edges[e] == std::make_pair(a, b)) return static_cast<int>(e);
    return -1;
  };
  std::set<std::vector<int>> out;
  std::vector<int> sigma(k);
  for (int i = 0; i < k; ++i) sigma[i] = i;
  do {
    std::vector<int> img(edges.size());
    for (size_t e = 0; e < edges.size(); ++e)
      img[e] = edge_index(sigma[edges[e].first], sigma[edges[e].second]);
    out.insert(img);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

int factorial(int v) {
  int f = 1;
  for (int i = 2; i <= v; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("encoding round trip is exact on every constructor") {
  std::vector<BuiltAction> built;
  built.push_back(power_action(GroupAction::symmetric(3), 2));
  built.push_back(distinct_tuples_action(GroupAction::symmetric(4), 2));
  built.push_back(graph_symmetry(4));
  built.push_back(digraph_symmetry(4));
  built.push_back(hypergraph_symmetry(5, 3));
  built.push_back(bipartite_symmetry(2, 3));
  built.push_back(sum_action(GroupAction::symmetric(3), GroupAction::cyclic(4)));
  for (const BuiltAction& b : built) {
    CHECK(b.encoding.points() == b.action.degree());
    for (int i = 0; i < b.encoding.points(); ++i)
      CHECK(b.encoding.encode(b.encoding.decode(i)) == i);
  }
}

TEST_CASE("power_action: tuple domain, induced maps, order preservation") {
  BuiltAction triv = power_action(GroupAction::trivial(3), 2);
  CHECK(triv.action.degree() == 9);
  CHECK(triv.action.order() == 1);

  BuiltAction s3sq = power_action(GroupAction::symmetric(3), 2);
  CHECK(s3sq.action.degree() == 9);
  CHECK(s3sq.action.order() == 6);

  // Swap on [2] lifted to pairs: (1,1)<->(2,2) and (1,2)<->(2,1).
  GroupAction swap2(2, {Permutation::cycle(2, {0, 1})});
  BuiltAction lifted = power_action(swap2, 2);
  const Permutation& gen = lifted.action.generators().front();
  auto enc = [&](int a, int b) { return lifted.encoding.encode({a, b}); };
  CHECK(gen(enc(0, 0)) == enc(1, 1));
  CHECK(gen(enc(1, 1)) == enc(0, 0));
  CHECK(gen(enc(0, 1)) == enc(1, 0));
  CHECK(gen(enc(1, 0)) == enc(0, 1));

  // Lexicographic with the first coordinate most significant.
  CHECK(s3sq.encoding.decode(0) == std::vector<int>{0, 0});
  CHECK(s3sq.encoding.decode(1) == std::vector<int>{0, 1});
  CHECK(s3sq.encoding.decode(3) == std::vector<int>{1, 0});

  for (int ell = 1; ell <= 3; ++ell) {
    GroupAction g = GroupAction::symmetric(4);
    CHECK(power_action(g, ell).action.order() == g.order());
    CHECK(distinct_tuples_action(g, ell).action.order() == g.order());
  }

  CHECK_THROWS_AS((void)power_action(GroupAction::symmetric(10), 8), Error);
}

TEST_CASE("distinct_tuples_action: degree and order") {
  BuiltAction s3 = distinct_tuples_action(GroupAction::symmetric(3), 2);
  CHECK(s3.action.degree() == 6);
  CHECK(s3.action.order() == 6);

  // Oracle for Z_3 on ordered pairs: enumerate the three shifts by hand.
  GroupAction z3 = GroupAction::cyclic(3);
  BuiltAction pairs = distinct_tuples_action(z3, 2);
  CHECK(pairs.action.degree() == 6);
  CHECK(pairs.action.order() == 3);
  std::set<std::vector<int>> by_hand;
  for (int shift = 0; shift < 3; ++shift) {
    std::vector<int> img(6);
    for (int i = 0; i < 6; ++i) {
      auto t = pairs.encoding.decode(i);
      img[i] = pairs.encoding.encode({(t[0] + shift) % 3, (t[1] + shift) % 3});
    }
    by_hand.insert(img);
  }
  CHECK(element_set(pairs.action) == by_hand);

  // The directed graph symmetry is exactly S_k on distinct pairs.
  BuiltAction dig = digraph_symmetry(4);
  BuiltAction angle = distinct_tuples_action(GroupAction::symmetric(4), 2);
  CHECK(element_set(dig.action) == element_set(angle.action));
}

TEST_CASE("restrict_to_orbits: identity, singleton, and the distinct-tuple cut") {
  GroupAction swap12(3, {Permutation::cycle(3, {0, 1})});
  BuiltAction same = restrict_to_orbits(swap12, {0, 1, 2});
  CHECK(same.action.degree() == 3);
  CHECK(same.action.order() == swap12.order());

  BuiltAction point = restrict_to_orbits(swap12, {2});
  CHECK(point.action.degree() == 1);
  CHECK(point.action.order() == 1);

  // Restricting S_3^(2) to the six distinct-tuple points gives S_3^<2>.
  BuiltAction power = power_action(GroupAction::symmetric(3), 2);
  std::vector<int> distinct_points;
  for (int i = 0; i < 9; ++i) {
    auto t = power.encoding.decode(i);
    if (t[0] != t[1]) distinct_points.push_back(i);
  }
  BuiltAction cut = restrict_to_orbits(power.action, distinct_points);
  BuiltAction angle = distinct_tuples_action(GroupAction::symmetric(3), 2);
  CHECK(element_set(cut.action) == element_set(angle.action));

  // {1} u {3} is not orbit-closed for the swap.
  CHECK_THROWS_AS((void)restrict_to_orbits(swap12, {0, 2}), Error);
}

TEST_CASE("quotient_action: blocks, functoriality, failure modes") {
  GroupAction s3 = GroupAction::symmetric(3);
  BuiltAction singletons = quotient_action(s3, {{0}, {1}, {2}});
  CHECK(element_set(singletons.action) == element_set(s3));

  GroupAction pairflip(4, {Permutation::from_images({1, 0, 3, 2})});  // (1 2)(3 4)
  BuiltAction quot = quotient_action(pairflip, {{0, 1}, {2, 3}});
  CHECK(quot.action.degree() == 2);
  CHECK(quot.action.order() == 1);

  // Functorial: the induced map of a composition is the composition of the
  // induced maps (checked on generator pairs of the arc action).
  BuiltAction arcs = digraph_symmetry(4);
  std::vector<std::vector<int>> blocks;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      blocks.push_back({arcs.encoding.encode({a, b}), arcs.encoding.encode({b, a})});
  auto induce = [&](const Permutation& p) {
    std::vector<int> block_of(arcs.action.degree());
    for (size_t t = 0; t < blocks.size(); ++t)
      for (int q : blocks[t]) block_of[q] = static_cast<int>(t);
    std::vector<int> img(blocks.size());
    for (size_t t = 0; t < blocks.size(); ++t) img[t] = block_of[p(blocks[t].front())];
    return Permutation::from_images(img);
  };
  for (const Permutation& a : arcs.action.generators())
    for (const Permutation& b : arcs.action.generators())
      CHECK(induce(a.after(b)) == induce(a).after(induce(b)));

  CHECK_THROWS_AS((void)quotient_action(s3, {{0, 1}, {2}}), Error);  // unequal blocks
  CHECK_THROWS_AS((void)quotient_action(s3, {{0}, {1}}), Error);     // not covering
  GroupAction cyc4 = GroupAction::cyclic(4);
  CHECK_THROWS_AS((void)quotient_action(cyc4, {{0, 1}, {2, 3}}), Error);  // split block
}

TEST_CASE("product, sum, and merge") {
  BuiltAction tt = product_action(GroupAction::trivial(2), GroupAction::trivial(3));
  CHECK(tt.action.degree() == 6);
  CHECK(tt.action.order() == 1);

  BuiltAction s2s3 = product_action(GroupAction::symmetric(2), GroupAction::symmetric(3));
  CHECK(s2s3.action.order() == 12);
  CHECK(bipartite_symmetry(2, 2).action.order() == 4);
  CHECK(bipartite_symmetry(2, 2).action.degree() == 4);

  BuiltAction blockwise = sum_action(GroupAction::symmetric(4), GroupAction::symmetric(4));
  CHECK(blockwise.action.degree() == 8);
  CHECK(blockwise.action.order() == 576);

  GroupAction g(3, {Permutation::cycle(3, {0, 1})});
  GroupAction h(3, {Permutation::cycle(3, {0, 1, 2})});
  CHECK(merge_actions(g, g).order() == g.order());
  GroupAction merged = merge_actions(g, h);
  CHECK(merged.order() == 6);  // closure oracle: this is all of S_3
  CHECK(element_set(merged) == element_set(GroupAction::symmetric(3)));
  for (const Permutation& p : g.closure_elements()) CHECK(merged.contains(p));
  for (const Permutation& p : h.closure_elements()) CHECK(merged.contains(p));

  // Bit flips merged with bit permutations: order n * (log n)!.
  GroupAction bits = merge_actions(GroupAction::bit_flip(8), GroupAction::bit_permutation(8));
  CHECK(bits.order() == 8 * 6);

  CHECK_THROWS_AS((void)merge_actions(g, GroupAction::symmetric(4)), Error);

  // Restrict-then-merge-with-nothing is idempotent.
  BuiltAction restricted = restrict_to_orbits(GroupAction::bit_flip(4), {0, 1, 2, 3});
  GroupAction padded = merge_actions(restricted.action, GroupAction::trivial(4));
  CHECK(padded.order() == restricted.action.order());
  CHECK(element_set(padded) == element_set(restricted.action));
}

TEST_CASE("graph-family constructors: shapes, orders, brute-force equality") {
  BuiltAction g3 = graph_symmetry(3);
  CHECK(g3.action.degree() == 3);
  CHECK(g3.action.order() == 6);

  BuiltAction d4 = digraph_symmetry(4);
  CHECK(d4.action.degree() == 12);
  CHECK(d4.action.order() == 24);

  BuiltAction h53 = hypergraph_symmetry(5, 3);
  CHECK(h53.action.degree() == 10);  // C(5,3)
  CHECK(h53.action.order() == 120);

  for (int k = 3; k <= 5; ++k) {
    BuiltAction gk = graph_symmetry(k);
    CHECK(gk.action.degree() == k * (k - 1) / 2);
    CHECK(gk.action.order() == factorial(k));
    CHECK(element_set(gk.action) == vertex_relabeling_edge_action(k));
  }
}
