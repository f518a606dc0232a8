#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lgalg {

// Exact rational scalar. All coefficient arithmetic in the library is exact;
// the field concept used by the templates is: value semantics, +,-,*, unary -,
// ==, kv_is_zero, kv_inv, kv_int (make a small integer in the same ring as a
// sample value), kv_str.
using Q = mpq_class;

inline bool kv_is_zero(const Q& x) { return sgn(x) == 0; }

inline Q kv_inv(const Q& x) {
  if (kv_is_zero(x)) throw std::domain_error("division by zero");
  return Q(1) / x;
}

inline Q kv_int(const Q&, long v) { return Q(v); }

inline std::string kv_str(const Q& x) { return x.get_str(); }

inline Q q_of(long num, long den = 1) {
  Q r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "p", "-p", "p/q".
inline Q q_parse(const std::string& s) {
  Q r(s);
  r.canonicalize();
  return r;
}

}  // namespace lgalg
