#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "symq/boolfn.hpp"
#include "symq/group.hpp"
#include "symq/rational.hpp"
#include "symq/rng.hpp"
#include "symq/smallrange.hpp"

namespace symq {

// A string alpha in [n]^n read as a function [n] -> [n]. Member of D_{n,r}
// iff its range size is at most r.
class ShuffleMap {
 public:
  static ShuffleMap from_string(const Str& s);
  static ShuffleMap from_images(const std::vector<int>& images);  // 0-indexed
  static ShuffleMap from_perm(const Permutation& p);

  int n() const { return static_cast<int>(str_.size()); }
  int range_size() const { return range_; }
  bool in_small_range(int r) const { return range_ <= r; }
  int operator()(int i) const { return static_cast<unsigned char>(str_[i]); }
  const Str& as_string() const { return str_; }
  std::vector<int> images() const;
  // Distinct symbols used, ascending: the positions of x that x o alpha reads.
  std::vector<int> used_positions() const;

 private:
  Str str_;
  int range_ = 0;
};

// Answers position queries against a hidden string; every call is charged and
// logged (re-queries included). Wrap with memoized() for the
// distinct-positions accounting.
class QueryOracle {
 public:
  using Answer = std::function<int(int)>;
  using Observer = std::function<void(int pos, int ans)>;

  explicit QueryOracle(int n, Answer answer) : n_(n), answer_(std::move(answer)) {}
  static QueryOracle over_string(const Str& x);

  int n() const { return n_; }
  int query(int pos);
  long long count() const { return count_; }
  const std::vector<int>& log() const { return log_; }
  void set_observer(Observer obs) { observer_ = std::move(obs); }

 private:
  int n_;
  Answer answer_;
  long long count_ = 0;
  std::vector<int> log_;
  Observer observer_;
};

// Caching view: repeat queries are answered locally and charge the inner
// oracle only once per distinct position.
QueryOracle memoized(QueryOracle& inner);

// Finitely supported distribution over strings with exact rational weights
// summing to 1.
class FiniteDistribution {
 public:
  FiniteDistribution() = default;
  static FiniteDistribution point_mass(Str s);
  static FiniteDistribution uniform(std::vector<Str> support);
  // Collapses duplicate strings, drops zero weights, normalizes order;
  // weights must be nonnegative and sum to exactly 1.
  static FiniteDistribution from_weights(std::vector<std::pair<Str, Rat>> weighted);

  size_t size() const { return support_.size(); }
  const std::vector<Str>& support() const { return support_; }
  const std::vector<Rat>& weights() const { return weights_; }
  Rat weight_of(const Str& s) const;
  const Str& sample(Rng& rng) const;

  bool operator==(const FiniteDistribution& o) const {
    return support_ == o.support_ && weights_ == o.weights_;
  }

 private:
  std::vector<Str> support_;  // sorted
  std::vector<Rat> weights_;
};

// Distribution of s o pi with pi uniform over G, exactly. The output is
// G-invariant and symmetrize is idempotent.
FiniteDistribution symmetrize(const FiniteDistribution& nu, const GroupAction& g,
                              size_t closure_cap = kDefaultClosureCap);

enum class ShuffleMode { UniformBalanced, LpDual, Bijection };

const char* shuffle_mode_name(ShuffleMode mode);
ShuffleMode shuffle_mode_from_name(const std::string& name);

// Sample from D_{n,r}. UniformBalanced picks r target symbols uniformly and
// maps each position uniformly among them; LpDual samples the supplied
// distribution (from oracles::hard_distribution).
ShuffleMap sample_small_range(int n, int r, ShuffleMode mode, Rng& rng,
                              const FiniteDistribution* lp_dual = nullptr);

// An evaluator computes f by querying a full-access oracle for its input;
// nullopt signals a promise violation.
using Evaluator = std::function<std::optional<int>(QueryOracle&)>;

// Reads all n positions and looks the string up in f's table/predicate.
Evaluator evaluator_for(const PartialFn& f);

struct ShuffleSimResult {
  bool promise_violated = false;
  int value = 0;
  long long queries_used = 0;   // queries charged to the x oracle
  int range_used = 0;           // range size of the sampled map
  ShuffleMode mode = ShuffleMode::UniformBalanced;
};

// The classical simulation: sample alpha (a G-member in Bijection mode, a
// small-range map otherwise), query x only at alpha's used positions,
// materialize x o alpha, then run the evaluator with zero further x-queries.
ShuffleSimResult shuffle_simulate(const Evaluator& f_eval, const GroupAction& g, int r,
                                  QueryOracle& x_oracle, ShuffleMode mode, Rng& rng,
                                  const FiniteDistribution* lp_dual = nullptr);

// Distinguishers consume a position oracle and emit a bit.
using Distinguisher = std::function<int(QueryOracle&)>;

// Cost-preserving reduction combinators. Each wraps a distinguisher for a
// transformed action's domain into one for the original domain, with the
// stated query overhead (measured by QueryOracle counters):
//   reduce_power:    ell raw queries per wrapped query
//   reduce_quotient: 1, via fixed block representatives
//   reduce_restrict: 1, off-set answers fold deterministically into the set
//   reduce_product:  1, the fixed side is synthesized at zero cost
//   reduce_merge:    1, identity wrapper
Distinguisher reduce_power(Distinguisher q_h, int ell, int n);
Distinguisher reduce_quotient(Distinguisher q_h, std::vector<std::vector<int>> blocks, int n);
Distinguisher reduce_restrict(Distinguisher q_h, std::vector<int> points, int n);
Distinguisher reduce_product(Distinguisher q_h, int n1, int n2, int real_side, Str fixed_sample);
Distinguisher reduce_merge(Distinguisher q_h);

// Transcript of a run: query events plus the final output, for replay tests
// and the JSONL transcript format.
struct TranscriptEvent {
  int pos;
  int ans;
};
struct Transcript {
  std::vector<TranscriptEvent> events;
  int output = 0;
  long long queries = 0;
};

Transcript record_transcript(const Distinguisher& d, const Str& input);
// Replays a recorded transcript; ShapeMismatch if the distinguisher deviates
// from the logged positions.
int replay_transcript(const Distinguisher& d, const Transcript& t, int n);

}  // namespace symq
