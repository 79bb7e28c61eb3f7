#include "symq/smallrange.hpp"

namespace symq {

std::vector<std::string> enumerate_small_range(int n, int r) {
  if (n < 1) fail(ErrorKind::BadShape, "domain size must be positive");
  if (r < 1) fail(ErrorKind::BadRange, "range bound must be positive");
  if (n > 7) fail(ErrorKind::TooLarge, "small-range enumeration capped at n = 7");
  std::vector<std::string> out;
  std::string cur(n, '\0');
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, int pos, int distinct) -> void {
    if (pos == n) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v < n; ++v) {
      int d = distinct + (used[v] ? 0 : 1);
      if (d > r) continue;
      used[v]++;
      cur[pos] = static_cast<char>(v);
      self(self, pos + 1, d);
      used[v]--;
    }
  };
  rec(rec, 0, 0);
  return out;
}

Int small_range_count(int n, int r) {
  if (n < 1) fail(ErrorKind::BadShape, "domain size must be positive");
  if (r < 1) fail(ErrorKind::BadRange, "range bound must be positive");
  int top = std::min(n, r);
  // Stirling partition numbers S(i, k).
  std::vector<std::vector<Int>> s(n + 1, std::vector<Int>(top + 1, 0));
  s[0][0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= top; ++k) s[i][k] = s[i - 1][k] * k + s[i - 1][k - 1];
  Int total = 0;
  for (int k = 1; k <= top; ++k) {
    Int choose;
    mpz_bin_uiui(choose.get_mpz_t(), n, k);
    Int fact;
    mpz_fac_ui(fact.get_mpz_t(), k);
    total += choose * fact * s[n][k];
  }
  return total;
}

}  // namespace symq
