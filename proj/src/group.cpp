#include "symq/group.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace symq {
namespace detail {

Int StabChain::order() const {
  Int n = 1;
  for (const Level& lvl : levels) n *= static_cast<unsigned long>(lvl.orbit.size());
  return n;
}

Permutation StabChain::transversal(size_t level, int point) const {
  const Level& lvl = levels[level];
  // Walk the Schreier tree back to the base, then compose forward.
  std::vector<int> path;
  int p = point;
  while (p != lvl.base) {
    path.push_back(p);
    p = lvl.parent_point[p];
  }
  Permutation u = Permutation::identity(degree);
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    u = sgens[lvl.parent_gen[*it]].after(u);
  }
  return u;  // u(base) == point
}

bool StabChain::sift(Permutation g, Permutation* residue, size_t* stall_level) const {
  for (size_t i = 0; i < levels.size(); ++i) {
    const Level& lvl = levels[i];
    int p = g(lvl.base);
    if (!lvl.in_orbit[p]) {
      if (residue) *residue = std::move(g);
      if (stall_level) *stall_level = i;
      return false;
    }
    g = transversal(i, p).inverse().after(g);
  }
  bool id = g.is_identity();
  if (residue) *residue = std::move(g);
  if (stall_level) *stall_level = levels.size();
  return id;
}

Permutation StabChain::sample(Rng& rng) const {
  Permutation g = Permutation::identity(degree);
  for (size_t i = 0; i < levels.size(); ++i) {
    const Level& lvl = levels[i];
    int p = lvl.orbit[rng.below(lvl.orbit.size())];
    g = g.after(transversal(i, p));
  }
  return g;
}

namespace {

struct Builder {
  StabChain chain;
  std::vector<int> base_hint;
  size_t hint_used = 0;
  // Per level: Schreier pairs (orbit position, strong-gen index) not yet
  // verified.
  std::vector<std::deque<std::pair<int, int>>> pending;

  Builder(int degree, std::vector<int> hint) : base_hint(std::move(hint)) {
    chain.degree = degree;
  }

  bool eligible(size_t level, size_t gen_index) const {
    return chain.sgen_level[gen_index] >= level;
  }

  void new_level(int base) {
    StabChain::Level lvl;
    lvl.base = base;
    lvl.orbit = {base};
    lvl.parent_gen.assign(chain.degree, -1);
    lvl.parent_point.assign(chain.degree, -1);
    lvl.in_orbit.assign(chain.degree, 0);
    lvl.in_orbit[base] = 1;
    chain.levels.push_back(std::move(lvl));
    pending.emplace_back();
  }

  // Grow the orbit at `level` with the currently eligible generators,
  // scheduling Schreier pairs for every newly reached point.
  void extend_orbit(size_t level) {
    StabChain::Level& lvl = chain.levels[level];
    size_t frontier = 0;
    while (frontier < lvl.orbit.size()) {
      int p = lvl.orbit[frontier++];
      for (size_t gi = 0; gi < chain.sgens.size(); ++gi) {
        if (!eligible(level, gi)) continue;
        int q = chain.sgens[gi](p);
        if (!lvl.in_orbit[q]) {
          lvl.in_orbit[q] = 1;
          lvl.parent_gen[q] = static_cast<int>(gi);
          lvl.parent_point[q] = p;
          lvl.orbit.push_back(q);
          int oi = static_cast<int>(lvl.orbit.size()) - 1;
          for (size_t gj = 0; gj < chain.sgens.size(); ++gj)
            if (eligible(level, gj)) pending[level].push_back({oi, static_cast<int>(gj)});
        }
      }
    }
  }

  void add_generator(size_t level, Permutation h) {
    if (level == chain.levels.size()) {
      int base = -1;
      while (hint_used < base_hint.size()) {
        int cand = base_hint[hint_used++];
        if (h(cand) != cand) { base = cand; break; }
        // A hint point fixed by the whole remaining group still gets its own
        // (possibly trivial) level so the base order matches the hint.
        new_level(cand);
      }
      if (base < 0) base = *h.first_moved();
      level = chain.levels.size();
      new_level(base);
    }
    int gi = static_cast<int>(chain.sgens.size());
    chain.sgens.push_back(std::move(h));
    chain.sgen_level.push_back(level);
    // The new generator participates at every level up to its own.
    for (size_t l = 0; l <= level; ++l) {
      int existing = static_cast<int>(chain.levels[l].orbit.size());
      for (int oi = 0; oi < existing; ++oi) pending[l].push_back({oi, gi});
      extend_orbit(l);
    }
  }

  // Sift g; install the residue as a new strong generator where sifting
  // stalls.
  void sift_in(const Permutation& g) {
    Permutation h = g;
    size_t level = 0;
    while (level < chain.levels.size()) {
      StabChain::Level& lvl = chain.levels[level];
      int p = h(lvl.base);
      if (!lvl.in_orbit[p]) break;
      h = chain.transversal(level, p).inverse().after(h);
      ++level;
    }
    if (h.is_identity()) return;
    add_generator(level, std::move(h));
  }

  // Drain Schreier pairs until every level is closed (all Schreier
  // generators sift to the identity), which certifies the chain.
  void complete() {
    while (true) {
      size_t level = pending.size();
      for (size_t i = 0; i < pending.size(); ++i)
        if (!pending[i].empty()) { level = i; break; }
      if (level == pending.size()) return;
      auto [oi, gi] = pending[level].front();
      pending[level].pop_front();
      const StabChain::Level& lvl = chain.levels[level];
      int p = lvl.orbit[oi];
      const Permutation& s = chain.sgens[gi];
      Permutation u_p = chain.transversal(level, p);
      Permutation schreier = chain.transversal(level, s(p)).inverse().after(s.after(u_p));
      if (!schreier.is_identity()) sift_in(schreier);
    }
  }
};

}  // namespace

StabChain build_stab_chain(int degree, const std::vector<Permutation>& gens,
                           const std::vector<int>& base_hint) {
  Builder b(degree, base_hint);
  for (const Permutation& g : gens) {
    if (g.degree() != degree) fail(ErrorKind::DegreeMismatch, "generator degree mismatch");
    if (!g.is_identity()) b.sift_in(g);
  }
  b.complete();
  return std::move(b.chain);
}

}  // namespace detail

GroupAction::GroupAction(int degree, std::vector<Permutation> generators)
    : degree_(degree), gens_(std::move(generators)), slot_(std::make_shared<ChainSlot>()) {
  if (degree < 1) fail(ErrorKind::BadShape, "degree must be positive");
  for (const Permutation& g : gens_)
    if (g.degree() != degree) fail(ErrorKind::DegreeMismatch, "generator degree mismatch");
}

const detail::StabChain& GroupAction::chain() const {
  std::call_once(slot_->once, [this] {
    slot_->chain = std::make_unique<const detail::StabChain>(
        detail::build_stab_chain(degree_, gens_));
  });
  return *slot_->chain;
}

GroupAction GroupAction::trivial(int n) { return GroupAction(n, {}); }

GroupAction GroupAction::symmetric(int n) {
  std::vector<Permutation> gens;
  if (n >= 2) gens.push_back(Permutation::cycle(n, {0, 1}));
  if (n >= 3) {
    std::vector<int> full(n);
    for (int i = 0; i < n; ++i) full[i] = i;
    gens.push_back(Permutation::cycle(n, full));
  }
  return GroupAction(n, std::move(gens));
}

GroupAction GroupAction::cyclic(int n) {
  std::vector<Permutation> gens;
  if (n >= 2) {
    std::vector<int> full(n);
    for (int i = 0; i < n; ++i) full[i] = i;
    gens.push_back(Permutation::cycle(n, full));
  }
  return GroupAction(n, std::move(gens));
}

GroupAction GroupAction::alternating(int n) {
  std::vector<Permutation> gens;
  for (int i = 0; i + 2 < n; ++i) gens.push_back(Permutation::cycle(n, {i, i + 1, i + 2}));
  return GroupAction(n, std::move(gens));
}

GroupAction GroupAction::bit_flip(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  if ((1 << k) != n || n < 2) fail(ErrorKind::BadShape, "bit_flip needs a power-of-two domain");
  std::vector<Permutation> gens;
  for (int b = 0; b < k; ++b) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i ^ (1 << b);
    gens.push_back(Permutation::from_images(std::move(img)));
  }
  return GroupAction(n, std::move(gens));
}

GroupAction GroupAction::bit_permutation(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  if ((1 << k) != n || n < 2) fail(ErrorKind::BadShape, "bit_permutation needs a power-of-two domain");
  auto bit_swap = [&](int a, int b) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) {
      int x = i;
      int ba = (i >> a) & 1, bb = (i >> b) & 1;
      x &= ~((1 << a) | (1 << b));
      x |= (bb << a) | (ba << b);
      img[i] = x;
    }
    return Permutation::from_images(std::move(img));
  };
  std::vector<Permutation> gens;
  for (int b = 0; b + 1 < k; ++b) gens.push_back(bit_swap(b, b + 1));
  return GroupAction(n, std::move(gens));
}

Int GroupAction::order() const { return chain().order(); }

bool GroupAction::contains(const Permutation& p) const {
  if (p.degree() != degree_) fail(ErrorKind::DegreeMismatch, "membership test with wrong degree");
  return chain().sift(p, nullptr, nullptr);
}

std::vector<int> GroupAction::orbit(int point) const {
  if (point < 0 || point >= degree_) fail(ErrorKind::PointOutOfRange, "orbit point out of range");
  std::vector<char> seen(degree_, 0);
  std::vector<int> out = {point};
  seen[point] = 1;
  for (size_t i = 0; i < out.size(); ++i)
    for (const Permutation& g : gens_) {
      int q = g(out[i]);
      if (!seen[q]) {
        seen[q] = 1;
        out.push_back(q);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> GroupAction::orbits() const {
  std::vector<char> seen(degree_, 0);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < degree_; ++i) {
    if (seen[i]) continue;
    auto orb = orbit(i);
    for (int p : orb) seen[p] = 1;
    out.push_back(std::move(orb));
  }
  return out;
}

bool GroupAction::is_transitive() const { return static_cast<int>(orbit(0).size()) == degree_; }

bool GroupAction::is_k_transitive(int k) const {
  if (k < 1 || k > degree_) fail(ErrorKind::BadShape, "transitivity arity out of range");
  // Orbit of the canonical distinct k-tuple under the componentwise action:
  // the induced action on distinct k-tuples is transitive iff this single
  // orbit covers all falling-factorial many tuples.
  unsigned long long target = 1;
  for (int t = 0; t < k; ++t) {
    target *= static_cast<unsigned long long>(degree_ - t);
    if (target > 50000000ULL) fail(ErrorKind::TooLarge, "distinct-tuple space too large");
  }
  std::vector<int> start(k);
  for (int t = 0; t < k; ++t) start[t] = t;
  struct VecHash {
    size_t operator()(const std::vector<int>& v) const {
      std::uint64_t h = 0xcbf29ce484222325ULL;
      for (int x : v) { h ^= static_cast<std::uint64_t>(x); h *= 0x100000001b3ULL; }
      return static_cast<size_t>(h);
    }
  };
  std::unordered_set<std::vector<int>, VecHash> seen;
  std::deque<std::vector<int>> queue;
  seen.insert(start);
  queue.push_back(start);
  while (!queue.empty()) {
    std::vector<int> t = std::move(queue.front());
    queue.pop_front();
    for (const Permutation& g : gens_) {
      std::vector<int> u(k);
      for (int j = 0; j < k; ++j) u[j] = g(t[j]);
      if (seen.insert(u).second) queue.push_back(std::move(u));
    }
  }
  return seen.size() == target;
}

Permutation GroupAction::uniform_sample(Rng& rng) const { return chain().sample(rng); }

Rat GroupAction::tuple_map_prob(std::span<const int> from, std::span<const int> to) const {
  if (from.size() != to.size()) fail(ErrorKind::ShapeMismatch, "tuple lengths differ");
  auto check_tuple = [&](std::span<const int> t) {
    std::vector<char> seen(degree_, 0);
    for (int p : t) {
      if (p < 0 || p >= degree_) fail(ErrorKind::PointOutOfRange, "tuple point out of range");
      if (seen[p]) fail(ErrorKind::BadShape, "tuple entries must be distinct");
      seen[p] = 1;
    }
  };
  check_tuple(from);
  check_tuple(to);

  // Chain re-based so the leading base points follow the source tuple; then
  // {pi : pi(from)=to} is either empty or a coset of the pointwise
  // stabilizer, whose order is the product of the orbit sizes below the
  // tuple prefix.
  std::vector<int> hint(from.begin(), from.end());
  detail::StabChain chain = detail::build_stab_chain(degree_, gens_, hint);

  std::vector<int> want(degree_, -1);
  for (size_t t = 0; t < from.size(); ++t) want[from[t]] = to[t];

  Int numer = 1;
  bool exists = true;
  Permutation prefix = Permutation::identity(degree_);  // accumulated transversal product
  size_t matched = 0;
  for (size_t lvl = 0; lvl < chain.levels.size(); ++lvl) {
    const auto& level = chain.levels[lvl];
    if (matched < from.size() && level.base == from[matched]) {
      int target = want[level.base];
      int q = prefix.inverse()(target);
      if (!level.in_orbit[q]) { exists = false; break; }
      prefix = prefix.after(chain.transversal(lvl, q));
      ++matched;
    } else {
      numer *= static_cast<unsigned long>(level.orbit.size());
    }
  }
  if (exists && matched < from.size()) {
    // Tuple points that never became base points are fixed pointwise by the
    // residual group, so the accumulated prefix must map them directly.
    for (size_t t = matched; t < from.size(); ++t)
      if (prefix(from[t]) != to[t]) exists = false;
  }
  if (!exists) return Rat(0);
  Rat prob(numer);
  prob /= Rat(chain.order());
  return prob;
}

std::vector<Permutation> GroupAction::closure_elements(size_t cap) const {
  std::unordered_set<Permutation, PermutationHash> seen;
  std::deque<Permutation> queue;
  Permutation id = Permutation::identity(degree_);
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    Permutation p = std::move(queue.front());
    queue.pop_front();
    for (const Permutation& g : gens_) {
      Permutation q = g.after(p);
      if (seen.insert(q).second) {
        if (seen.size() > cap) fail(ErrorKind::CapExceeded, "closure exceeds element cap");
        queue.push_back(std::move(q));
      }
    }
  }
  std::vector<Permutation> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace symq
