#pragma once

#include "mtt/algebra/rational.hpp"
#include "mtt/algebra/square_matrix.hpp"

namespace mtt {

/// Fraction-free (Bareiss) elimination over Z. Every intermediate division
/// is exact, so the result is the exact determinant.
inline Integer det_bareiss(SquareMatrix<Integer> a) {
  const std::size_t n = a.size();
  require(n >= 1, "determinant of an empty matrix");
  Integer previous = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t r = k + 1;
      while (r < n && sgn(a(r, k)) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), previous.get_mpz_t());
        a(i, j) = std::move(v);
      }
      a(i, k) = 0;
    }
    previous = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Exact determinant of a rational matrix: clear denominators row by row,
/// run Bareiss over Z, divide back.
inline Rational det_exact_commutative(const SquareMatrix<Rational>& m) {
  const std::size_t n = m.size();
  require(n >= 1, "determinant of an empty matrix");
  SquareMatrix<Integer> z(n);
  Integer scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer row_lcm = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(row_lcm.get_mpz_t(), row_lcm.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) {
      Rational v = m(i, j) * row_lcm;
      z(i, j) = v.get_num();
    }
    scale *= row_lcm;
  }
  Rational d(det_bareiss(std::move(z)), scale);
  d.canonicalize();
  return d;
}

}  // namespace mtt
