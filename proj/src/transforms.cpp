#include "symq/transforms.hpp"

#include <algorithm>
#include <numeric>

namespace symq {

DomainEncoding DomainEncoding::flat(int points) {
  std::vector<std::vector<int>> tuples(points);
  for (int i = 0; i < points; ++i) tuples[i] = {i};
  return from_tuples("flat", std::move(tuples));
}

DomainEncoding DomainEncoding::from_tuples(std::string kind, std::vector<std::vector<int>> tuples) {
  DomainEncoding e;
  e.kind_ = std::move(kind);
  e.tuples_ = std::move(tuples);
  e.index_.reserve(e.tuples_.size());
  for (size_t i = 0; i < e.tuples_.size(); ++i) e.index_[e.tuples_[i]] = static_cast<int>(i);
  return e;
}

const std::vector<int>& DomainEncoding::decode(int index) const {
  if (index < 0 || index >= points()) fail(ErrorKind::PointOutOfRange, "encoding index out of range");
  return tuples_[index];
}

int DomainEncoding::encode(const std::vector<int>& tuple) const {
  auto it = index_.find(tuple);
  if (it == index_.end()) fail(ErrorKind::PointOutOfRange, "tuple not in encoded domain");
  return it->second;
}

namespace {

// Lift each generator through an encoding: image[p] = encode(g applied
// componentwise to decode(p)).
std::vector<Permutation> lift_generators(const GroupAction& g, const DomainEncoding& enc) {
  std::vector<Permutation> out;
  out.reserve(g.generators().size());
  for (const Permutation& gen : g.generators()) {
    std::vector<int> img(enc.points());
    std::vector<int> mapped;
    for (int p = 0; p < enc.points(); ++p) {
      const std::vector<int>& t = enc.decode(p);
      mapped.assign(t.size(), 0);
      for (size_t j = 0; j < t.size(); ++j) mapped[j] = gen(t[j]);
      img[p] = enc.encode(mapped);
    }
    out.push_back(Permutation::from_images(std::move(img)));
  }
  return out;
}

void check_cap(long long points, long long cap) {
  if (points > cap) fail(ErrorKind::DomainCapExceeded, "transformed domain exceeds cap");
}

std::vector<std::vector<int>> all_tuples(int n, int ell, bool distinct) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(ell);
  std::vector<char> used(n, 0);
  // Lexicographic, first coordinate most significant.
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == ell) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (distinct && used[v]) continue;
      cur[pos] = v;
      used[v] = 1;
      self(self, pos + 1);
      used[v] = 0;
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

BuiltAction power_action(const GroupAction& g, int ell, long long domain_cap) {
  if (ell < 1) fail(ErrorKind::BadShape, "tuple power must be positive");
  long long points = 1;
  for (int t = 0; t < ell; ++t) {
    points *= g.degree();
    check_cap(points, domain_cap);
  }
  DomainEncoding enc = DomainEncoding::from_tuples("tuple-power", all_tuples(g.degree(), ell, false));
  std::vector<Permutation> gens = lift_generators(g, enc);
  return {GroupAction(enc.points(), std::move(gens)), std::move(enc)};
}

BuiltAction distinct_tuples_action(const GroupAction& g, int ell, long long domain_cap) {
  if (ell < 1 || ell > g.degree()) fail(ErrorKind::BadShape, "distinct-tuple arity out of range");
  long long points = 1;
  for (int t = 0; t < ell; ++t) {
    points *= g.degree() - t;
    check_cap(points, domain_cap);
  }
  DomainEncoding enc =
      DomainEncoding::from_tuples("distinct-tuples", all_tuples(g.degree(), ell, true));
  std::vector<Permutation> gens = lift_generators(g, enc);
  return {GroupAction(enc.points(), std::move(gens)), std::move(enc)};
}

BuiltAction restrict_to_orbits(const GroupAction& g, const std::vector<int>& points) {
  std::vector<char> member(g.degree(), 0);
  for (int p : points) {
    if (p < 0 || p >= g.degree()) fail(ErrorKind::PointOutOfRange, "restriction point out of range");
    member[p] = 1;
  }
  std::vector<int> sorted;
  for (int p = 0; p < g.degree(); ++p)
    if (member[p]) sorted.push_back(p);
  if (sorted.empty()) fail(ErrorKind::BadShape, "restriction set is empty");
  for (const Permutation& gen : g.generators())
    for (int p : sorted)
      if (!member[gen(p)])
        fail(ErrorKind::NotOrbitClosed, "restriction set is not a union of orbits");

  std::vector<int> rank(g.degree(), -1);
  for (size_t i = 0; i < sorted.size(); ++i) rank[sorted[i]] = static_cast<int>(i);
  std::vector<Permutation> gens;
  for (const Permutation& gen : g.generators()) {
    std::vector<int> img(sorted.size());
    for (size_t i = 0; i < sorted.size(); ++i) img[i] = rank[gen(sorted[i])];
    gens.push_back(Permutation::from_images(std::move(img)));
  }
  std::vector<std::vector<int>> tuples(sorted.size());
  for (size_t i = 0; i < sorted.size(); ++i) tuples[i] = {sorted[i]};
  return {GroupAction(static_cast<int>(sorted.size()), std::move(gens)),
          DomainEncoding::from_tuples("orbit-restriction", std::move(tuples))};
}

BuiltAction quotient_action(const GroupAction& g, const std::vector<std::vector<int>>& blocks) {
  if (blocks.empty()) fail(ErrorKind::BadShape, "empty partition");
  size_t block_size = blocks.front().size();
  std::vector<int> block_of(g.degree(), -1);
  for (size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].size() != block_size)
      fail(ErrorKind::NotBlockSystem, "partition blocks have unequal sizes");
    for (int p : blocks[b]) {
      if (p < 0 || p >= g.degree()) fail(ErrorKind::PointOutOfRange, "block point out of range");
      if (block_of[p] != -1) fail(ErrorKind::NotBlockSystem, "point appears in two blocks");
      block_of[p] = static_cast<int>(b);
    }
  }
  for (int p = 0; p < g.degree(); ++p)
    if (block_of[p] == -1) fail(ErrorKind::NotBlockSystem, "partition does not cover the domain");

  std::vector<Permutation> gens;
  for (const Permutation& gen : g.generators()) {
    std::vector<int> img(blocks.size(), -1);
    for (size_t b = 0; b < blocks.size(); ++b) {
      int target = block_of[gen(blocks[b].front())];
      for (int p : blocks[b])
        if (block_of[gen(p)] != target)
          fail(ErrorKind::NotBlockSystem, "generator splits a block");
      img[b] = target;
    }
    gens.push_back(Permutation::from_images(std::move(img)));
  }
  std::vector<std::vector<int>> tuples(blocks.size());
  for (size_t b = 0; b < blocks.size(); ++b) {
    tuples[b] = blocks[b];
    std::sort(tuples[b].begin(), tuples[b].end());
  }
  return {GroupAction(static_cast<int>(blocks.size()), std::move(gens)),
          DomainEncoding::from_tuples("partition-quotient", std::move(tuples))};
}

BuiltAction product_action(const GroupAction& g1, const GroupAction& g2, long long domain_cap) {
  long long points = static_cast<long long>(g1.degree()) * g2.degree();
  check_cap(points, domain_cap);
  std::vector<std::vector<int>> tuples;
  tuples.reserve(points);
  for (int a = 0; a < g1.degree(); ++a)
    for (int b = 0; b < g2.degree(); ++b) tuples.push_back({a, b});
  DomainEncoding enc = DomainEncoding::from_tuples("product", std::move(tuples));

  std::vector<Permutation> gens;
  auto lift = [&](const Permutation& p, bool left) {
    std::vector<int> img(enc.points());
    for (int idx = 0; idx < enc.points(); ++idx) {
      const auto& t = enc.decode(idx);
      img[idx] = left ? enc.encode({p(t[0]), t[1]}) : enc.encode({t[0], p(t[1])});
    }
    return Permutation::from_images(std::move(img));
  };
  for (const Permutation& p : g1.generators()) gens.push_back(lift(p, true));
  for (const Permutation& p : g2.generators()) gens.push_back(lift(p, false));
  return {GroupAction(enc.points(), std::move(gens)), std::move(enc)};
}

BuiltAction sum_action(const GroupAction& g1, const GroupAction& g2) {
  int n1 = g1.degree(), n2 = g2.degree();
  std::vector<std::vector<int>> tuples;
  tuples.reserve(n1 + n2);
  for (int p = 0; p < n1; ++p) tuples.push_back({0, p});
  for (int p = 0; p < n2; ++p) tuples.push_back({1, p});
  std::vector<Permutation> gens;
  for (const Permutation& p : g1.generators()) {
    std::vector<int> img(n1 + n2);
    for (int i = 0; i < n1; ++i) img[i] = p(i);
    for (int i = 0; i < n2; ++i) img[n1 + i] = n1 + i;
    gens.push_back(Permutation::from_images(std::move(img)));
  }
  for (const Permutation& p : g2.generators()) {
    std::vector<int> img(n1 + n2);
    for (int i = 0; i < n1; ++i) img[i] = i;
    for (int i = 0; i < n2; ++i) img[n1 + i] = n1 + p(i);
    gens.push_back(Permutation::from_images(std::move(img)));
  }
  return {GroupAction(n1 + n2, std::move(gens)),
          DomainEncoding::from_tuples("sum", std::move(tuples))};
}

GroupAction merge_actions(const GroupAction& g, const GroupAction& h) {
  if (g.degree() != h.degree()) fail(ErrorKind::DegreeMismatch, "merging actions of unequal degree");
  std::vector<Permutation> gens = g.generators();
  gens.insert(gens.end(), h.generators().begin(), h.generators().end());
  return GroupAction(g.degree(), std::move(gens));
}

BuiltAction digraph_symmetry(int k, long long domain_cap) {
  if (k < 2) fail(ErrorKind::BadShape, "digraph symmetry needs k >= 2");
  BuiltAction arcs = distinct_tuples_action(GroupAction::symmetric(k), 2, domain_cap);
  std::vector<std::vector<int>> tuples(arcs.encoding.points());
  for (int i = 0; i < arcs.encoding.points(); ++i) tuples[i] = arcs.encoding.decode(i);
  return {std::move(arcs.action), DomainEncoding::from_tuples("arc-set", std::move(tuples))};
}

BuiltAction graph_symmetry(int k, long long domain_cap) {
  BuiltAction arcs = digraph_symmetry(k, domain_cap);
  std::vector<std::vector<int>> blocks;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      blocks.push_back({arcs.encoding.encode({a, b}), arcs.encoding.encode({b, a})});
  BuiltAction q = quotient_action(arcs.action, blocks);
  std::vector<std::vector<int>> edges;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) edges.push_back({a, b});
  return {std::move(q.action), DomainEncoding::from_tuples("edge-set", std::move(edges))};
}

BuiltAction hypergraph_symmetry(int k, int p, long long domain_cap) {
  if (k < 2 || p < 1 || p > k) fail(ErrorKind::BadShape, "hypergraph symmetry needs 1 <= p <= k");
  BuiltAction arcs = distinct_tuples_action(GroupAction::symmetric(k), p, domain_cap);
  // Group ordered p-tuples by their underlying set.
  std::vector<std::vector<int>> subsets;
  std::vector<int> pick(p);
  auto rec = [&](auto&& self, int start, int pos) -> void {
    if (pos == p) {
      subsets.push_back(pick);
      return;
    }
    for (int v = start; v < k; ++v) {
      pick[pos] = v;
      self(self, v + 1, pos + 1);
    }
  };
  rec(rec, 0, 0);
  std::vector<std::vector<int>> blocks;
  for (const auto& set : subsets) {
    std::vector<int> block;
    std::vector<int> perm = set;
    std::sort(perm.begin(), perm.end());
    do {
      block.push_back(arcs.encoding.encode(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
  }
  BuiltAction q = quotient_action(arcs.action, blocks);
  return {std::move(q.action), DomainEncoding::from_tuples("hyperedge-set", std::move(subsets))};
}

BuiltAction bipartite_symmetry(int k1, int k2, long long domain_cap) {
  if (k1 < 1 || k2 < 1) fail(ErrorKind::BadShape, "bipartite symmetry needs positive parts");
  BuiltAction prod =
      product_action(GroupAction::symmetric(k1), GroupAction::symmetric(k2), domain_cap);
  std::vector<std::vector<int>> cells(prod.encoding.points());
  for (int i = 0; i < prod.encoding.points(); ++i) cells[i] = prod.encoding.decode(i);
  return {std::move(prod.action), DomainEncoding::from_tuples("biadjacency", std::move(cells))};
}

}  // namespace symq
