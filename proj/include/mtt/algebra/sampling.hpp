#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "mtt/algebra/ring.hpp"

namespace mtt {

/// Seeded generator. Draws are derived from raw mt19937_64 output only, so a
/// seed reproduces the same stream on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }
  long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool coin() { return (engine_() >> 17) & 1U; }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Random small elements of a catalog ring.
///   general():  small-height entries, typically non-invertible structure
///   unit():     exactly norm-one elements (rational points on the unit sphere)
template <class T>
struct ElementSampler;

template <>
struct ElementSampler<Rational> {
  Rational general(Rng& rng) const {
    Rational r(rng.range(-4, 4), static_cast<unsigned long>(rng.range(1, 3)));
    r.canonicalize();
    return r;
  }
  Rational nonzero(Rng& rng) const {
    for (;;) {
      Rational r = general(rng);
      if (!is_zero(r)) return r;
    }
  }
  Rational unit(Rng& rng) const { return rng.coin() ? Rational(1) : Rational(-1); }
};

template <>
struct ElementSampler<Gaussian> {
  Gaussian general(Rng& rng) const {
    ElementSampler<Rational> q;
    return {q.general(rng), q.general(rng)};
  }
  Gaussian nonzero(Rng& rng) const {
    for (;;) {
      Gaussian z = general(rng);
      if (!is_zero(z)) return z;
    }
  }
  // z^2 / |z|^2 for a random nonzero integer point z.
  Gaussian unit(Rng& rng) const {
    Gaussian z;
    do z = Gaussian(rng.range(-3, 3), rng.range(-3, 3));
    while (is_zero(z));
    Gaussian sq = z * z;
    Rational n = norm2(z);
    return {sq.re() / n, sq.im() / n};
  }
};

template <>
struct ElementSampler<Quaternion> {
  Quaternion general(Rng& rng) const {
    ElementSampler<Rational> q;
    return {q.general(rng), q.general(rng), q.general(rng), q.general(rng)};
  }
  Quaternion nonzero(Rng& rng) const {
    for (;;) {
      Quaternion x = general(rng);
      if (!is_zero(x)) return x;
    }
  }
  // p^2 / |p|^2 for a random nonzero integer quaternion p.
  Quaternion unit(Rng& rng) const {
    Quaternion p;
    do p = Quaternion(rng.range(-3, 3), rng.range(-3, 3), rng.range(-3, 3), rng.range(-3, 3));
    while (is_zero(p));
    Quaternion sq = p * p;
    Rational n = norm2(p);
    return {sq.w() / n, sq.x() / n, sq.y() / n, sq.z() / n};
  }
};

template <>
struct ElementSampler<GroupRingElement> {
  std::size_t modulus = 2;

  GroupRingElement general(Rng& rng) const {
    std::vector<Integer> c(modulus);
    for (auto& x : c) x = rng.range(-3, 3);
    return {modulus, std::move(c)};
  }
  GroupRingElement nonzero(Rng& rng) const {
    for (;;) {
      GroupRingElement x = general(rng);
      if (!is_zero(x)) return x;
    }
  }
  /// A group element g^e.
  GroupRingElement group_element(Rng& rng) const {
    return GroupRingElement::generator_power(modulus, static_cast<long>(rng.below(modulus)));
  }
  /// ±g^e, the units used for "unitary" holonomies.
  GroupRingElement unit(Rng& rng) const {
    GroupRingElement g = group_element(rng);
    return rng.coin() ? g : -g;
  }
};

template <class T>
struct ElementSampler<SquareMatrix<T>> {
  std::size_t fiber = 2;
  ElementSampler<T> entry{};

  SquareMatrix<T> general(Rng& rng) const {
    SquareMatrix<T> m(fiber);
    for (std::size_t i = 0; i < fiber; ++i)
      for (std::size_t j = 0; j < fiber; ++j) m(i, j) = entry.general(rng);
    return m;
  }

  /// A matrix with M·M* = I: diagonal units, rational plane rotations and
  /// transpositions multiplied together (for group rings: signed
  /// permutation matrices with group-element entries).
  SquareMatrix<T> unit(Rng& rng) const {
    SquareMatrix<T> m = diagonal_unit(rng);
    if constexpr (std::is_same_v<T, GroupRingElement>) {
      for (std::size_t t = 0; t + 1 < fiber; ++t) m = permutation(rng) * m;
      return m;
    } else {
      for (std::size_t t = 0; t < fiber; ++t) {
        m = rotation(rng) * m;
        m = diagonal_unit(rng) * m;
      }
      return permutation(rng) * m;
    }
  }

 private:
  SquareMatrix<T> diagonal_unit(Rng& rng) const {
    SquareMatrix<T> d(fiber);
    for (std::size_t i = 0; i < fiber; ++i) d(i, i) = entry.unit(rng);
    return d;
  }
  // Real rotation by a rational point (c, s) of the unit circle in a random coordinate plane.
  SquareMatrix<T> rotation(Rng& rng) const {
    SquareMatrix<T> r = SquareMatrix<T>::identity(fiber);
    if (fiber < 2) return r;
    long p = rng.range(1, 4), q = rng.range(0, 4);
    Rational n(p * p + q * q);
    Rational c = Rational(p * p - q * q) / n, s = Rational(2 * p * q) / n;
    std::size_t a = rng.below(fiber), b = rng.below(fiber - 1);
    if (b >= a) ++b;
    r(a, a) = T(c);
    r(b, b) = T(c);
    r(a, b) = T(Rational(-s));
    r(b, a) = T(s);
    return r;
  }
  SquareMatrix<T> permutation(Rng& rng) const {
    SquareMatrix<T> p = SquareMatrix<T>::identity(fiber);
    if (fiber < 2) return p;
    std::size_t a = rng.below(fiber), b = rng.below(fiber - 1);
    if (b >= a) ++b;
    p(a, a) = T(0);
    p(b, b) = T(0);
    p(a, b) = T(1);
    p(b, a) = T(1);
    return p;
  }
};

}  // namespace mtt
