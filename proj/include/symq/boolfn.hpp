#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symq/group.hpp"
#include "symq/rational.hpp"

namespace symq {

inline constexpr size_t kDefaultTableCap = 1000000;

// Strings over the alphabet {0..m-1}, one raw byte per symbol. Display form
// uses digit characters '0'-'9','a'-'z' with symbol value = digit value.
using Str = std::string;

std::string display_string(const Str& s);
Str parse_display(const std::string& text, int m);

// (x o pi)_i = x_{map(i)}; also defined for non-bijective index maps such as
// shuffle maps.
Str apply_index_map(const Str& x, std::span<const int> map);
Str apply_perm(const Str& x, const Permutation& pi);

struct SymmetryReport {
  bool symmetric = true;
  // On failure: a promise string and a generator that move it off-promise or
  // change its value.
  std::optional<Str> witness_input;
  std::optional<Permutation> witness_perm;
};

// A partial Boolean function on [m]^n with an explicit promise table, or a
// predicate pair (membership + value) for families too large to tabulate.
class PartialFn {
 public:
  using Predicate = std::function<std::optional<int>(const Str&)>;

  static PartialFn from_table(int n, int m, std::string name,
                              std::vector<std::pair<Str, int>> entries,
                              size_t table_cap = kDefaultTableCap);
  static PartialFn from_predicate(int n, int m, std::string name, Predicate pred);

  int n() const { return n_; }
  int m() const { return m_; }
  const std::string& name() const { return name_; }
  bool is_explicit() const { return explicit_; }

  // nullopt when x is off-promise.
  std::optional<int> evaluate(const Str& x) const;
  bool constant_on_domain() const;  // explicit form only

  // Sorted promise table; TooLarge for predicate-form functions.
  const std::vector<std::pair<Str, int>>& table() const;
  size_t domain_size() const;

 private:
  int n_ = 0, m_ = 0;
  std::string name_;
  bool explicit_ = true;
  std::vector<std::pair<Str, int>> table_;
  Predicate pred_;
};

// Checks the symmetry condition for every promise string against every
// generator; closure under composition and inverses extends the check to all
// of G (the domain is finite, so generator-invariance of Dom(f) is bijective
// and inverse-closed).
SymmetryReport is_symmetric_under(const PartialFn& f, const GroupAction& g);

// Function zoo.
PartialFn triv(int m);
PartialFn collision(int n);  // 1-to-1 (value 1) vs 2-to-1 (value 0); n even
PartialFn forrelation_decision(int n, const Rat& theta = Rat(3, 5));
PartialFn for_compose_triv(int n);  // n a perfect square, sqrt(n) a power of two
PartialFn simon_decision(int n);    // n a power of two; value = high bit of the shift
PartialFn distinguishing_fn(const GroupAction& g, int r,
                            size_t closure_cap = kDefaultClosureCap,
                            size_t table_cap = kDefaultTableCap);

// String form of a permutation: s_i = pi(i). The bridge between group members
// and the distinguishing function's 1-side.
Str perm_to_string(const Permutation& p);

}  // namespace symq
