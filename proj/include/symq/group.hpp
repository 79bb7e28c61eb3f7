#pragma once

#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "symq/perm.hpp"
#include "symq/rational.hpp"
#include "symq/rng.hpp"

namespace symq {

inline constexpr size_t kDefaultClosureCap = 1000000;

namespace detail {

// Base-and-strong-generating-set index. Strong generators live in one global
// list; level l uses every generator whose addition level is >= l (they all
// fix the first l base points' prefix). Transversal elements are rebuilt on
// demand from per-level Schreier trees, so large domains do not store one
// permutation per orbit point.
struct StabChain {
  struct Level {
    int base = -1;
    std::vector<int> orbit;        // discovery order, orbit[0] == base
    std::vector<int> parent_gen;   // per point: strong-gen index on tree edge (-1 at base)
    std::vector<int> parent_point; // per point: previous point on the tree path
    std::vector<char> in_orbit;
  };

  int degree = 0;
  std::vector<Permutation> sgens;
  std::vector<size_t> sgen_level;  // deepest level whose prefix the generator fixes
  std::vector<Level> levels;

  Int order() const;
  bool sift(Permutation g, Permutation* residue, size_t* stall_level) const;
  Permutation transversal(size_t level, int point) const;
  Permutation sample(Rng& rng) const;
};

StabChain build_stab_chain(int degree, const std::vector<Permutation>& gens,
                           const std::vector<int>& base_hint = {});

}  // namespace detail

// A permutation group acting on {0..n-1}, represented by generators. The
// stabilizer chain is built once on first use and shared by copies; all
// observers are const and safe to call concurrently.
class GroupAction {
 public:
  GroupAction(int degree, std::vector<Permutation> generators);

  static GroupAction trivial(int n);
  static GroupAction symmetric(int n);
  static GroupAction cyclic(int n);
  static GroupAction alternating(int n);
  // Index bit-flip action on [2^k]: i -> i xor t. The symmetry of the Simon
  // promise.
  static GroupAction bit_flip(int n);
  // Index bit-permutation action on [2^k]: permute the binary digits of i.
  static GroupAction bit_permutation(int n);

  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }

  Int order() const;
  bool contains(const Permutation& p) const;
  std::vector<int> orbit(int point) const;          // sorted, 0-indexed
  std::vector<std::vector<int>> orbits() const;     // partition of the domain
  bool is_transitive() const;
  bool is_k_transitive(int k) const;
  Permutation uniform_sample(Rng& rng) const;

  // Pr_{pi<-G}[pi(from[t]) = to[t] for all t], exact. Tuples must have
  // distinct entries. Counted through a stabilizer chain re-based on `from`,
  // so it works far beyond the closure cap.
  Rat tuple_map_prob(std::span<const int> from, std::span<const int> to) const;

  // Full element enumeration; CapExceeded beyond `cap`.
  std::vector<Permutation> closure_elements(size_t cap = kDefaultClosureCap) const;

 private:
  const detail::StabChain& chain() const;

  int degree_;
  std::vector<Permutation> gens_;

  struct ChainSlot {
    std::once_flag once;
    std::unique_ptr<const detail::StabChain> chain;
  };
  std::shared_ptr<ChainSlot> slot_;
};

}  // namespace symq
