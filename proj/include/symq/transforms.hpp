#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "symq/group.hpp"

namespace symq {

inline constexpr long long kDefaultDomainCap = 100000;

// Bidirectional index map between structured points (tuples, pairs, sets,
// arcs, ...) and the flat domain {0..N-1} of a transformed action.
class DomainEncoding {
 public:
  static DomainEncoding flat(int points);  // kind "flat", tuple = {i}
  static DomainEncoding from_tuples(std::string kind, std::vector<std::vector<int>> tuples);

  const std::string& kind() const { return kind_; }
  int points() const { return static_cast<int>(tuples_.size()); }
  const std::vector<int>& decode(int index) const;
  int encode(const std::vector<int>& tuple) const;  // PointOutOfRange if absent

 private:
  struct VecHash {
    size_t operator()(const std::vector<int>& v) const {
      std::uint64_t h = 0xcbf29ce484222325ULL;
      for (int x : v) { h ^= static_cast<std::uint64_t>(x); h *= 0x100000001b3ULL; }
      return static_cast<size_t>(h);
    }
  };
  std::string kind_;
  std::vector<std::vector<int>> tuples_;
  std::unordered_map<std::vector<int>, int, VecHash> index_;
};

struct BuiltAction {
  GroupAction action;
  DomainEncoding encoding;
};

// G^(l): componentwise action on l-tuples, domain n^l in lexicographic order
// (first coordinate most significant). Order is preserved.
BuiltAction power_action(const GroupAction& g, int ell, long long domain_cap = kDefaultDomainCap);

// G^<l>: the power action restricted to distinct l-tuples, ranked in
// lexicographic order. Order is preserved.
BuiltAction distinct_tuples_action(const GroupAction& g, int ell,
                                   long long domain_cap = kDefaultDomainCap);

// Action re-indexed onto a union of orbits S (0-indexed points, any order;
// the re-indexing follows ascending point order). NotOrbitClosed if some
// generator leaves S.
BuiltAction restrict_to_orbits(const GroupAction& g, const std::vector<int>& points);

// Induced action on the blocks of an equal-size partition. Generators must
// map blocks to blocks (NotBlockSystem otherwise); validity for the whole
// group follows because block preservation is closed under composition.
BuiltAction quotient_action(const GroupAction& g, const std::vector<std::vector<int>>& blocks);

// (pi1, pi2)(k, l) = (pi1(k), pi2(l)) on the pair domain [n1*n2].
BuiltAction product_action(const GroupAction& g1, const GroupAction& g2,
                           long long domain_cap = kDefaultDomainCap);

// Block-diagonal action on the disjoint union [n1+n2]: each factor permutes
// its own block. Order multiplies; degree adds.
BuiltAction sum_action(const GroupAction& g1, const GroupAction& g2);

// Closure of G u H under composition: generator union on a common domain.
GroupAction merge_actions(const GroupAction& g, const GroupAction& h);

// Graph-family symmetries. All are induced by the k! vertex relabelings:
//   digraph_symmetry(k)      = S_k^<2> on the k(k-1) arcs
//   graph_symmetry(k)        = its quotient over {(a,b),(b,a)} pair blocks
//   hypergraph_symmetry(k,p) = quotient of S_k^<p> over p-set blocks
//   bipartite_symmetry(k1,k2)= S_k1 x S_k2 on the biadjacency cells
BuiltAction digraph_symmetry(int k, long long domain_cap = kDefaultDomainCap);
BuiltAction graph_symmetry(int k, long long domain_cap = kDefaultDomainCap);
BuiltAction hypergraph_symmetry(int k, int p, long long domain_cap = kDefaultDomainCap);
BuiltAction bipartite_symmetry(int k1, int k2, long long domain_cap = kDefaultDomainCap);

}  // namespace symq
