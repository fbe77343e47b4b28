#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "mtt/error.hpp"

namespace mtt {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline Rational conj(const Rational& x) { return x; }
inline Rational real_part(const Rational& x) { return x; }

inline Rational inverse(const Rational& x) {
  require(!is_zero(x), "inverse of zero rational");
  return Rational(1) / x;
}

// "p/q" or "p"; always in lowest terms.
inline std::string to_string(const Rational& x) { return x.get_str(); }

inline Rational parse_rational(std::string_view text) {
  Rational r;
  std::string s(text);
  if (s.empty() || r.set_str(s, 10) != 0) throw InputError("bad rational literal '" + s + "'");
  require(sgn(r.get_den()) != 0, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace mtt
