#pragma once

#include <concepts>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "mtt/algebra/gaussian.hpp"
#include "mtt/algebra/group_ring.hpp"
#include "mtt/algebra/quaternion.hpp"
#include "mtt/algebra/rational.hpp"
#include "mtt/algebra/square_matrix.hpp"

namespace mtt {

/// What every coefficient ring in the catalog provides: integer embedding
/// (so T(0) and T(1) exist), ring operations, equality, and a zero test.
template <class T>
concept RingElement = requires(const T& a, const T& b) {
  T(0);
  T(1);
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { -a } -> std::convertible_to<T>;
  { a == b } -> std::convertible_to<bool>;
  { is_zero(a) } -> std::convertible_to<bool>;
  { to_string(a) } -> std::convertible_to<std::string>;
};

template <class T>
inline constexpr bool is_commutative_ring_v = true;
template <>
inline constexpr bool is_commutative_ring_v<Quaternion> = false;
template <class T>
inline constexpr bool is_commutative_ring_v<SquareMatrix<T>> = false;

/// Whether the ring contains Q (so 1/N exists for every positive N).
template <class T>
inline constexpr bool contains_rationals_v = true;
template <>
inline constexpr bool contains_rationals_v<GroupRingElement> = false;

template <class T>
struct is_square_matrix : std::false_type {};
template <class T>
struct is_square_matrix<SquareMatrix<T>> : std::true_type {};
template <class T>
inline constexpr bool is_square_matrix_v = is_square_matrix<T>::value;

/// Ring homomorphism K -> H used when a weight in the trace target has to be
/// placed inside a Laplacian over H. The catalog only pairs K = H or K = Q.
template <class H, class K>
H embed(const K& value) {
  if constexpr (std::is_same_v<H, K>) {
    return value;
  } else {
    static_assert(std::is_same_v<K, Rational>, "only Q embeds into a different ring");
    return H(value);
  }
}

/// Multiplication by a rational scalar, available when the ring contains Q.
template <class T>
T scale(const Rational& s, const T& x) {
  if constexpr (std::is_same_v<T, Rational>) {
    return s * x;
  } else {
    static_assert(contains_rationals_v<T>, "ring does not contain Q");
    return T(s) * x;
  }
}

/// Runtime description of a coefficient ring.
struct RingDescriptor {
  enum class Kind { rational, gaussian, quaternion, group_ring, matrix };

  Kind kind = Kind::rational;
  std::size_t modulus = 0;              // group_ring only
  std::size_t fiber = 0;                // matrix only
  std::shared_ptr<const RingDescriptor> base;  // matrix only

  bool commutative() const {
    return kind == Kind::rational || kind == Kind::gaussian || kind == Kind::group_ring;
  }

  const RingDescriptor& scalar() const { return kind == Kind::matrix ? *base : *this; }

  std::string to_string() const {
    switch (kind) {
      case Kind::rational: return "rational";
      case Kind::gaussian: return "gaussian";
      case Kind::quaternion: return "quaternion";
      case Kind::group_ring: return "group_ring:" + std::to_string(modulus);
      case Kind::matrix: return "matrix:" + std::to_string(fiber) + ":" + base->to_string();
    }
    return "?";
  }

  // rational | gaussian | quaternion | group_ring:k | matrix:N:<base>
  static RingDescriptor parse(std::string_view text) {
    RingDescriptor d;
    if (text == "rational") return d;
    if (text == "gaussian") {
      d.kind = Kind::gaussian;
      return d;
    }
    if (text == "quaternion") {
      d.kind = Kind::quaternion;
      return d;
    }
    auto number = [&](std::string_view s) -> std::size_t {
      require(!s.empty() && s.find_first_not_of("0123456789") == std::string_view::npos,
              "bad ring descriptor '" + std::string(text) + "'");
      std::size_t v = std::stoul(std::string(s));
      require(v >= 1, "ring parameter must be positive in '" + std::string(text) + "'");
      return v;
    };
    if (text.starts_with("group_ring:")) {
      d.kind = Kind::group_ring;
      d.modulus = number(text.substr(11));
      return d;
    }
    if (text.starts_with("matrix:")) {
      auto rest = text.substr(7);
      auto colon = rest.find(':');
      require(colon != std::string_view::npos, "bad ring descriptor '" + std::string(text) + "'");
      d.kind = Kind::matrix;
      d.fiber = number(rest.substr(0, colon));
      auto base = parse(rest.substr(colon + 1));
      require(base.kind != Kind::matrix, "nested matrix rings are not supported");
      d.base = std::make_shared<const RingDescriptor>(std::move(base));
      return d;
    }
    throw InputError("unknown ring '" + std::string(text) + "'");
  }

  friend bool operator==(const RingDescriptor& a, const RingDescriptor& b) {
    return a.to_string() == b.to_string();
  }
};

}  // namespace mtt
