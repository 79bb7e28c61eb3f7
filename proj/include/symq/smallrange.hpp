#pragma once

#include <string>
#include <vector>

#include "symq/error.hpp"
#include "symq/rational.hpp"

namespace symq {

// Number of distinct symbols in a string over {0..255}.
inline int range_size(const std::string& s) {
  bool seen[256] = {};
  int count = 0;
  for (unsigned char c : s)
    if (!seen[c]) {
      seen[c] = true;
      ++count;
    }
  return count;
}

// All strings in [n]^n with at most r distinct symbols, lexicographic order.
// TooLarge beyond n = 7 (n^n blows up past desk scale).
std::vector<std::string> enumerate_small_range(int n, int r);

// |D_{n,r}| in closed form: sum over range sizes k of C(n,k) * k! * S(n,k),
// with S the Stirling partition numbers. Valid for any n.
Int small_range_count(int n, int r);

}  // namespace symq
