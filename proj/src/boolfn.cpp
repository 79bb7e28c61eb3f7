#include "symq/boolfn.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "symq/smallrange.hpp"

namespace symq {

namespace {
constexpr const char* kDigits = "0123456789abcdefghijklmnopqrstuvwxyz";
}

std::string display_string(const Str& s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    if (c >= 36) fail(ErrorKind::BadShape, "symbol too large for digit display");
    out.push_back(kDigits[c]);
  }
  return out;
}

Str parse_display(const std::string& text, int m) {
  Str out;
  out.reserve(text.size());
  for (char c : text) {
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'z') v = c - 'a' + 10;
    else fail(ErrorKind::ParseError, std::string("bad symbol character '") + c + "'");
    if (v >= m) fail(ErrorKind::ParseError, "symbol exceeds alphabet size");
    out.push_back(static_cast<char>(v));
  }
  return out;
}

Str apply_index_map(const Str& x, std::span<const int> map) {
  if (x.size() != map.size()) fail(ErrorKind::LengthMismatch, "string/index-map length mismatch");
  Str out(x.size(), '\0');
  for (size_t i = 0; i < map.size(); ++i) {
    if (map[i] < 0 || static_cast<size_t>(map[i]) >= x.size())
      fail(ErrorKind::PointOutOfRange, "index map leaves the domain");
    out[i] = x[map[i]];
  }
  return out;
}

Str apply_perm(const Str& x, const Permutation& pi) { return apply_index_map(x, pi.images()); }

PartialFn PartialFn::from_table(int n, int m, std::string name,
                                std::vector<std::pair<Str, int>> entries, size_t table_cap) {
  if (n < 1 || m < 1) fail(ErrorKind::BadShape, "function shape must be positive");
  if (entries.size() > table_cap) fail(ErrorKind::TooLarge, "promise table exceeds cap");
  for (auto& [s, v] : entries) {
    if (s.size() != static_cast<size_t>(n)) fail(ErrorKind::LengthMismatch, "table string length != n");
    for (unsigned char c : s)
      if (c >= m) fail(ErrorKind::BadShape, "table symbol exceeds alphabet");
    if (v != 0 && v != 1) fail(ErrorKind::BadShape, "values must be 0 or 1");
  }
  std::sort(entries.begin(), entries.end());
  for (size_t i = 1; i < entries.size(); ++i)
    if (entries[i].first == entries[i - 1].first)
      fail(ErrorKind::BadShape, "duplicate promise string");
  PartialFn f;
  f.n_ = n;
  f.m_ = m;
  f.name_ = std::move(name);
  f.explicit_ = true;
  f.table_ = std::move(entries);
  return f;
}

PartialFn PartialFn::from_predicate(int n, int m, std::string name, Predicate pred) {
  if (n < 1 || m < 1) fail(ErrorKind::BadShape, "function shape must be positive");
  PartialFn f;
  f.n_ = n;
  f.m_ = m;
  f.name_ = std::move(name);
  f.explicit_ = false;
  f.pred_ = std::move(pred);
  return f;
}

std::optional<int> PartialFn::evaluate(const Str& x) const {
  if (x.size() != static_cast<size_t>(n_)) fail(ErrorKind::LengthMismatch, "input length != n");
  if (!explicit_) return pred_(x);
  auto it = std::lower_bound(table_.begin(), table_.end(), x,
                             [](const auto& e, const Str& key) { return e.first < key; });
  if (it == table_.end() || it->first != x) return std::nullopt;
  return it->second;
}

bool PartialFn::constant_on_domain() const {
  const auto& t = table();
  for (const auto& [s, v] : t)
    if (v != t.front().second) return false;
  return true;
}

const std::vector<std::pair<Str, int>>& PartialFn::table() const {
  if (!explicit_) fail(ErrorKind::TooLarge, "predicate-form function has no explicit table");
  return table_;
}

size_t PartialFn::domain_size() const { return table().size(); }

SymmetryReport is_symmetric_under(const PartialFn& f, const GroupAction& g) {
  if (g.degree() != f.n()) fail(ErrorKind::DegreeMismatch, "group degree != input length");
  SymmetryReport report;
  for (const auto& [x, value] : f.table()) {
    for (const Permutation& gen : g.generators()) {
      Str y = apply_perm(x, gen);
      std::optional<int> fy = f.evaluate(y);
      if (!fy.has_value() || *fy != value) {
        report.symmetric = false;
        report.witness_input = x;
        report.witness_perm = gen;
        return report;
      }
    }
  }
  return report;
}

PartialFn triv(int m) {
  if (m < 1) fail(ErrorKind::BadShape, "triv needs m >= 1");
  std::vector<std::pair<Str, int>> entries;
  entries.push_back({Str(m, 0), 0});
  entries.push_back({Str(m, 1), 1});
  return PartialFn::from_table(m, 2, "triv:" + std::to_string(m), std::move(entries));
}

PartialFn collision(int n) {
  if (n < 2 || n % 2 != 0) fail(ErrorKind::BadShape, "collision needs even n >= 2");
  std::vector<std::pair<Str, int>> entries;
  // 1-to-1 side: every permutation string.
  {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
      Str s(n, '\0');
      for (int i = 0; i < n; ++i) s[i] = static_cast<char>(p[i]);
      entries.push_back({std::move(s), 1});
    } while (std::next_permutation(p.begin(), p.end()));
  }
  // 2-to-1 side: pick the range, then every arrangement with each chosen
  // symbol used exactly twice.
  {
    int half = n / 2;
    std::vector<int> pick(half);
    auto subsets = [&](auto&& self, int start, int pos) -> void {
      if (pos == half) {
        std::vector<int> multiset;
        for (int v : pick) { multiset.push_back(v); multiset.push_back(v); }
        std::sort(multiset.begin(), multiset.end());
        do {
          Str s(n, '\0');
          for (int i = 0; i < n; ++i) s[i] = static_cast<char>(multiset[i]);
          entries.push_back({std::move(s), 0});
        } while (std::next_permutation(multiset.begin(), multiset.end()));
        return;
      }
      for (int v = start; v < n; ++v) {
        pick[pos] = v;
        self(self, v + 1, pos + 1);
      }
    };
    subsets(subsets, 0, 0);
  }
  return PartialFn::from_table(n, n, "collision:" + std::to_string(n), std::move(entries));
}

namespace {

bool is_power_of_two(int v) { return v >= 1 && (v & (v - 1)) == 0; }

// Correlation sum for the split input (x | y), each half of length half:
// sum_{i,j} (-1)^{<i,j>} (-1)^{x_i} (-1)^{y_j}.
long long forrelation_sum(const Str& s, int half) {
  long long total = 0;
  for (int i = 0; i < half; ++i)
    for (int j = 0; j < half; ++j) {
      int sign = (std::popcount(static_cast<unsigned>(i & j)) & 1) ? -1 : 1;
      int xi = s[i] ? -1 : 1;
      int yj = s[half + j] ? -1 : 1;
      total += sign * xi * yj;
    }
  return total;
}

}  // namespace

PartialFn forrelation_decision(int n, const Rat& theta) {
  if (!is_power_of_two(n) || n < 2) fail(ErrorKind::BadShape, "forrelation needs a power-of-two n >= 2");
  if (theta <= Rat(1, 100)) fail(ErrorKind::BadShape, "threshold must exceed 1/100");
  int half = n / 2;
  Int cube = Int(half) * half * half;  // N^3, for exact threshold comparisons
  Int p = theta.get_num(), q = theta.get_den();
  auto classify = [=](const Str& s) -> std::optional<int> {
    Int sum(static_cast<long>(forrelation_sum(s, half)));
    // Phi >= theta  <=>  sum > 0 and (q*sum)^2 >= p^2 * N^3
    if (sum > 0 && (q * sum) * (q * sum) >= p * p * cube) return 1;
    // Phi <= 1/100 (signed, so both promise sides stay populated at small N):
    // nonpositive sums qualify outright, positive ones must stay under
    // N^(3/2)/100.
    if (sum <= 0 || (100 * sum) * (100 * sum) <= cube) return 0;
    return std::nullopt;
  };
  std::string name = "forrel:" + std::to_string(n);
  if (n <= 20) {
    std::vector<std::pair<Str, int>> entries;
    for (long long mask = 0; mask < (1LL << n); ++mask) {
      Str s(n, '\0');
      for (int i = 0; i < n; ++i) s[i] = static_cast<char>((mask >> i) & 1);
      if (auto v = classify(s)) entries.push_back({std::move(s), *v});
    }
    return PartialFn::from_table(n, 2, name, std::move(entries));
  }
  return PartialFn::from_predicate(n, 2, name, classify);
}

PartialFn for_compose_triv(int n) {
  int s = 1;
  while (s * s < n) ++s;
  if (s * s != n || !is_power_of_two(s) || s < 2)
    fail(ErrorKind::BadShape, "for_compose_triv needs n a perfect square with power-of-two root");
  PartialFn outer = forrelation_decision(s);
  std::vector<std::pair<Str, int>> entries;
  for (const auto& [bits, value] : outer.table()) {
    Str x(n, '\0');
    for (int blk = 0; blk < s; ++blk)
      for (int i = 0; i < s; ++i) x[blk * s + i] = bits[blk];
    entries.push_back({std::move(x), value});
  }
  return PartialFn::from_table(n, 2, "fortriv:" + std::to_string(n), std::move(entries));
}

PartialFn simon_decision(int n) {
  if (!is_power_of_two(n) || n < 2) fail(ErrorKind::BadShape, "simon needs a power-of-two n >= 2");
  int k = std::countr_zero(static_cast<unsigned>(n));
  size_t count = static_cast<size_t>(n - 1);
  for (int c = 0; c < n / 2 && count <= kDefaultTableCap; ++c) count *= static_cast<size_t>(n - c);
  if (count > kDefaultTableCap) fail(ErrorKind::TooLarge, "simon table exceeds cap at this n");

  std::vector<std::pair<Str, int>> entries;
  for (int s = 1; s < n; ++s) {
    int value = (s >> (k - 1)) & 1;  // high bit of the hidden shift
    // xor-classes {i, i^s}, listed by their smaller member.
    std::vector<int> reps;
    for (int i = 0; i < n; ++i)
      if (i < (i ^ s)) reps.push_back(i);
    std::vector<char> used(n, 0);
    Str cur(n, '\0');
    auto rec = [&](auto&& self, size_t c) -> void {
      if (c == reps.size()) {
        entries.push_back({cur, value});
        return;
      }
      for (int label = 0; label < n; ++label) {
        if (used[label]) continue;
        used[label] = 1;
        cur[reps[c]] = static_cast<char>(label);
        cur[reps[c] ^ s] = static_cast<char>(label);
        self(self, c + 1);
        used[label] = 0;
      }
    };
    rec(rec, 0);
  }
  return PartialFn::from_table(n, n, "simon:" + std::to_string(n), std::move(entries));
}

Str perm_to_string(const Permutation& p) {
  Str s(p.degree(), '\0');
  for (int i = 0; i < p.degree(); ++i) s[i] = static_cast<char>(p(i));
  return s;
}

PartialFn distinguishing_fn(const GroupAction& g, int r, size_t closure_cap, size_t table_cap) {
  int n = g.degree();
  if (r < 1 || r >= n) fail(ErrorKind::BadRange, "distinguishing function needs 1 <= r < n");
  std::vector<std::pair<Str, int>> entries;
  for (const Permutation& p : g.closure_elements(closure_cap))
    entries.push_back({perm_to_string(p), 1});
  for (std::string& s : enumerate_small_range(n, r))
    entries.push_back({std::move(s), 0});
  return PartialFn::from_table(n, n, "dist(n=" + std::to_string(n) + ",r=" + std::to_string(r) + ")",
                               std::move(entries), table_cap);
}

}  // namespace symq
