#pragma once

#include <gmpxx.h>

#include <string>

#include "symq/error.hpp"

namespace symq {

// Exact arithmetic everywhere a spec contract says "exactly": mpq_class is
// always canonical (reduced, positive denominator), so == is true equality.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1) {
  if (den == 0) fail(ErrorKind::BadShape, "rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// "3", "-1/2". Integers serialize without the "/1".
inline std::string rat_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
  try {
    Rat q(s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    fail(ErrorKind::ParseError, "bad rational literal '" + s + "'");
  }
}

inline double rat_to_double(const Rat& q) { return q.get_d(); }

}  // namespace symq
