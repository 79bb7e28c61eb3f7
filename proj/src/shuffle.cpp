#include "symq/shuffle.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace symq {

ShuffleMap ShuffleMap::from_string(const Str& s) {
  ShuffleMap m;
  for (unsigned char c : s)
    if (c >= s.size()) fail(ErrorKind::BadShape, "shuffle map symbol out of range");
  m.str_ = s;
  m.range_ = symq::range_size(s);
  return m;
}

ShuffleMap ShuffleMap::from_images(const std::vector<int>& images) {
  Str s(images.size(), '\0');
  for (size_t i = 0; i < images.size(); ++i) {
    if (images[i] < 0 || images[i] >= static_cast<int>(images.size()))
      fail(ErrorKind::BadShape, "shuffle map image out of range");
    s[i] = static_cast<char>(images[i]);
  }
  return from_string(s);
}

ShuffleMap ShuffleMap::from_perm(const Permutation& p) { return from_string(perm_to_string(p)); }

std::vector<int> ShuffleMap::images() const {
  std::vector<int> out(str_.size());
  for (size_t i = 0; i < str_.size(); ++i) out[i] = static_cast<unsigned char>(str_[i]);
  return out;
}

std::vector<int> ShuffleMap::used_positions() const {
  std::vector<char> seen(str_.size(), 0);
  for (unsigned char c : str_) seen[c] = 1;
  std::vector<int> out;
  for (size_t i = 0; i < str_.size(); ++i)
    if (seen[i]) out.push_back(static_cast<int>(i));
  return out;
}

QueryOracle QueryOracle::over_string(const Str& x) {
  return QueryOracle(static_cast<int>(x.size()),
                     [x](int pos) { return static_cast<unsigned char>(x[pos]); });
}

int QueryOracle::query(int pos) {
  if (pos < 0 || pos >= n_) fail(ErrorKind::PointOutOfRange, "query position out of range");
  int ans = answer_(pos);
  ++count_;
  log_.push_back(pos);
  if (observer_) observer_(pos, ans);
  return ans;
}

QueryOracle memoized(QueryOracle& inner) {
  auto cache = std::make_shared<std::unordered_map<int, int>>();
  QueryOracle* raw = &inner;
  return QueryOracle(inner.n(), [cache, raw](int pos) {
    auto it = cache->find(pos);
    if (it != cache->end()) return it->second;
    int ans = raw->query(pos);
    (*cache)[pos] = ans;
    return ans;
  });
}

FiniteDistribution FiniteDistribution::point_mass(Str s) {
  return from_weights({{std::move(s), Rat(1)}});
}

FiniteDistribution FiniteDistribution::uniform(std::vector<Str> support) {
  if (support.empty()) fail(ErrorKind::BadShape, "uniform distribution over empty support");
  Rat w(1, static_cast<unsigned long>(support.size()));
  std::vector<std::pair<Str, Rat>> weighted;
  weighted.reserve(support.size());
  for (Str& s : support) weighted.push_back({std::move(s), w});
  return from_weights(std::move(weighted));
}

FiniteDistribution FiniteDistribution::from_weights(std::vector<std::pair<Str, Rat>> weighted) {
  std::map<Str, Rat> merged;
  Rat total(0);
  for (auto& [s, w] : weighted) {
    if (w < 0) fail(ErrorKind::BadShape, "negative distribution weight");
    if (w == 0) continue;
    merged[s] += w;
    total += w;
  }
  if (total != 1) fail(ErrorKind::BadShape, "distribution weights must sum to exactly 1");
  FiniteDistribution d;
  for (auto& [s, w] : merged) {
    d.support_.push_back(s);
    d.weights_.push_back(w);
  }
  return d;
}

Rat FiniteDistribution::weight_of(const Str& s) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), s);
  if (it == support_.end() || *it != s) return Rat(0);
  return weights_[it - support_.begin()];
}

const Str& FiniteDistribution::sample(Rng& rng) const {
  if (support_.empty()) fail(ErrorKind::BadShape, "sampling empty distribution");
  // Draw u ~ 2^-64 grid; the discretization bias is far below statistical
  // resolution at any trial count we run.
  Rat u(rng.next_u64());
  u /= Rat(Int(1) << 64);
  Rat acc(0);
  for (size_t i = 0; i < support_.size(); ++i) {
    acc += weights_[i];
    if (u < acc) return support_[i];
  }
  return support_.back();
}

FiniteDistribution symmetrize(const FiniteDistribution& nu, const GroupAction& g,
                              size_t closure_cap) {
  for (const Str& s : nu.support())
    if (s.size() != static_cast<size_t>(g.degree()))
      fail(ErrorKind::LengthMismatch, "distribution strings must match the group degree");
  std::vector<Permutation> members = g.closure_elements(closure_cap);
  Rat inv(1, static_cast<unsigned long>(members.size()));
  std::vector<std::pair<Str, Rat>> weighted;
  weighted.reserve(nu.size() * members.size());
  for (size_t i = 0; i < nu.size(); ++i)
    for (const Permutation& pi : members)
      weighted.push_back({apply_perm(nu.support()[i], pi), nu.weights()[i] * inv});
  return FiniteDistribution::from_weights(std::move(weighted));
}

const char* shuffle_mode_name(ShuffleMode mode) {
  switch (mode) {
    case ShuffleMode::UniformBalanced: return "uniform-balanced";
    case ShuffleMode::LpDual: return "lp-dual";
    case ShuffleMode::Bijection: return "bijection";
  }
  return "unknown";
}

ShuffleMode shuffle_mode_from_name(const std::string& name) {
  if (name == "uniform-balanced") return ShuffleMode::UniformBalanced;
  if (name == "lp-dual") return ShuffleMode::LpDual;
  if (name == "bijection") return ShuffleMode::Bijection;
  fail(ErrorKind::ParseError, "unknown shuffle mode '" + name + "'");
}

ShuffleMap sample_small_range(int n, int r, ShuffleMode mode, Rng& rng,
                              const FiniteDistribution* lp_dual) {
  if (r < 1 || r > n) fail(ErrorKind::BadRange, "range bound out of range");
  switch (mode) {
    case ShuffleMode::UniformBalanced: {
      // r distinct targets, then each position uniform among them.
      std::vector<int> symbols(n);
      for (int i = 0; i < n; ++i) symbols[i] = i;
      for (int i = 0; i < r; ++i) {
        int j = i + rng.below_int(n - i);
        std::swap(symbols[i], symbols[j]);
      }
      std::vector<int> img(n);
      for (int i = 0; i < n; ++i) img[i] = symbols[rng.below_int(r)];
      return ShuffleMap::from_images(img);
    }
    case ShuffleMode::LpDual: {
      if (lp_dual == nullptr || lp_dual->size() == 0)
        fail(ErrorKind::BadShape, "lp-dual mode needs a hard distribution");
      ShuffleMap m = ShuffleMap::from_string(lp_dual->sample(rng));
      if (m.n() != n || !m.in_small_range(r))
        fail(ErrorKind::ShapeMismatch, "lp-dual distribution is not supported on D_{n,r}");
      return m;
    }
    case ShuffleMode::Bijection:
      fail(ErrorKind::BadShape, "bijection sampling needs a group; use shuffle_simulate");
  }
  fail(ErrorKind::Internal, "unreachable");
}

Evaluator evaluator_for(const PartialFn& f) {
  PartialFn copy = f;
  return [copy](QueryOracle& oracle) -> std::optional<int> {
    Str x(copy.n(), '\0');
    for (int i = 0; i < copy.n(); ++i) x[i] = static_cast<char>(oracle.query(i));
    return copy.evaluate(x);
  };
}

ShuffleSimResult shuffle_simulate(const Evaluator& f_eval, const GroupAction& g, int r,
                                  QueryOracle& x_oracle, ShuffleMode mode, Rng& rng,
                                  const FiniteDistribution* lp_dual) {
  int n = g.degree();
  if (x_oracle.n() != n) fail(ErrorKind::LengthMismatch, "oracle degree != group degree");
  ShuffleMap alpha = (mode == ShuffleMode::Bijection)
                         ? ShuffleMap::from_perm(g.uniform_sample(rng))
                         : sample_small_range(n, r, mode, rng, lp_dual);
  if (mode != ShuffleMode::Bijection && !alpha.in_small_range(r))
    fail(ErrorKind::Internal, "sampled map exceeds the range bound");

  long long before = x_oracle.count();
  // Query all used positions of x up front, fully determining x o alpha.
  std::vector<int> answer(n, -1);
  for (int pos : alpha.used_positions()) answer[pos] = x_oracle.query(pos);
  Str shuffled(n, '\0');
  for (int i = 0; i < n; ++i) shuffled[i] = static_cast<char>(answer[alpha(i)]);

  QueryOracle materialized = QueryOracle::over_string(shuffled);
  std::optional<int> value = f_eval(materialized);

  ShuffleSimResult result;
  result.mode = mode;
  result.range_used = alpha.range_size();
  result.queries_used = x_oracle.count() - before;
  if (!value.has_value()) {
    result.promise_violated = true;
  } else {
    result.value = *value;
  }
  return result;
}

Distinguisher reduce_power(Distinguisher q_h, int ell, int n) {
  if (ell < 1) fail(ErrorKind::BadShape, "power must be positive");
  long long big = 1;
  for (int t = 0; t < ell; ++t) {
    big *= n;
    if (big > 100000000LL) fail(ErrorKind::DomainCapExceeded, "power domain too large");
  }
  return [q_h = std::move(q_h), ell, n, big](QueryOracle& raw) {
    if (raw.n() != n) fail(ErrorKind::ShapeMismatch, "raw oracle degree mismatch");
    QueryOracle lifted(static_cast<int>(big), [&raw, ell, n](int z) {
      // Decode z into base-n digits (first most significant), query each,
      // re-encode the answers.
      std::vector<int> digits(ell);
      long long rem = z;
      for (int t = ell - 1; t >= 0; --t) {
        digits[t] = static_cast<int>(rem % n);
        rem /= n;
      }
      long long enc = 0;
      for (int t = 0; t < ell; ++t) enc = enc * n + raw.query(digits[t]);
      return static_cast<int>(enc);
    });
    return q_h(lifted);
  };
}

Distinguisher reduce_quotient(Distinguisher q_h, std::vector<std::vector<int>> blocks, int n) {
  std::vector<int> block_of(n, -1);
  std::vector<int> rep(blocks.size(), -1);
  for (size_t b = 0; b < blocks.size(); ++b) {
    for (int p : blocks[b]) {
      if (p < 0 || p >= n) fail(ErrorKind::PointOutOfRange, "block point out of range");
      if (block_of[p] != -1) fail(ErrorKind::ShapeMismatch, "blocks overlap");
      block_of[p] = static_cast<int>(b);
    }
    rep[b] = *std::min_element(blocks[b].begin(), blocks[b].end());
  }
  for (int p = 0; p < n; ++p)
    if (block_of[p] == -1) fail(ErrorKind::ShapeMismatch, "blocks do not cover the domain");
  int k = static_cast<int>(blocks.size());
  return [q_h = std::move(q_h), block_of = std::move(block_of), rep = std::move(rep), k,
          n](QueryOracle& raw) {
    if (raw.n() != n) fail(ErrorKind::ShapeMismatch, "raw oracle degree mismatch");
    QueryOracle lifted(k, [&raw, &block_of, &rep](int t) { return block_of[raw.query(rep[t])]; });
    return q_h(lifted);
  };
}

Distinguisher reduce_restrict(Distinguisher q_h, std::vector<int> points, int n) {
  std::sort(points.begin(), points.end());
  std::vector<int> rank(n, -1);
  for (size_t i = 0; i < points.size(); ++i) {
    if (points[i] < 0 || points[i] >= n) fail(ErrorKind::PointOutOfRange, "restriction point out of range");
    rank[points[i]] = static_cast<int>(i);
  }
  int s = static_cast<int>(points.size());
  if (s == 0) fail(ErrorKind::ShapeMismatch, "empty restriction set");
  return [q_h = std::move(q_h), points = std::move(points), rank = std::move(rank), s,
          n](QueryOracle& raw) {
    if (raw.n() != n) fail(ErrorKind::ShapeMismatch, "raw oracle degree mismatch");
    QueryOracle lifted(s, [&raw, &points, &rank, s](int j) {
      int a = raw.query(points[j]);
      // Group members never answer outside the orbit union; arbitrary
      // small-range strings may, and those symbols fold consistently so the
      // range size cannot grow.
      return rank[a] >= 0 ? rank[a] : a % s;
    });
    return q_h(lifted);
  };
}

Distinguisher reduce_product(Distinguisher q_h, int n1, int n2, int real_side, Str fixed_sample) {
  if (real_side != 1 && real_side != 2) fail(ErrorKind::BadShape, "real side must be 1 or 2");
  int fixed_n = real_side == 1 ? n2 : n1;
  if (static_cast<int>(fixed_sample.size()) != fixed_n)
    fail(ErrorKind::ShapeMismatch, "fixed sample length mismatch");
  return [q_h = std::move(q_h), n1, n2, real_side, fixed_sample = std::move(fixed_sample)](
             QueryOracle& raw) {
    int real_n = real_side == 1 ? n1 : n2;
    if (raw.n() != real_n) fail(ErrorKind::ShapeMismatch, "raw oracle degree mismatch");
    QueryOracle lifted(n1 * n2, [&raw, &fixed_sample, n2, real_side](int p) {
      int k = p / n2, l = p % n2;
      int a1 = real_side == 1 ? raw.query(k) : static_cast<unsigned char>(fixed_sample[k]);
      int a2 = real_side == 2 ? raw.query(l) : static_cast<unsigned char>(fixed_sample[l]);
      return a1 * n2 + a2;
    });
    return q_h(lifted);
  };
}

Distinguisher reduce_merge(Distinguisher q_h) {
  return [q_h = std::move(q_h)](QueryOracle& raw) { return q_h(raw); };
}

Transcript record_transcript(const Distinguisher& d, const Str& input) {
  Transcript t;
  QueryOracle oracle = QueryOracle::over_string(input);
  oracle.set_observer([&t](int pos, int ans) { t.events.push_back({pos, ans}); });
  t.output = d(oracle);
  t.queries = oracle.count();
  return t;
}

int replay_transcript(const Distinguisher& d, const Transcript& t, int n) {
  size_t cursor = 0;
  QueryOracle oracle(n, [&t, &cursor](int pos) {
    if (cursor >= t.events.size() || t.events[cursor].pos != pos)
      fail(ErrorKind::ShapeMismatch, "replay diverged from the recorded transcript");
    return t.events[cursor++].ans;
  });
  return d(oracle);
}

}  // namespace symq
