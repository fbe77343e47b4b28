#pragma once

#include <string>
#include <string_view>

#include "mtt/algebra/ring.hpp"

namespace mtt {

/// A central additive map τ: H -> K into a commutative ring.
template <class T>
concept CentralTrace = requires(const T& tr, const typename T::source_type& x) {
  typename T::source_type;
  typename T::target_type;
  { tr(x) } -> std::convertible_to<typename T::target_type>;
  { T::name() } -> std::convertible_to<std::string_view>;
};

/// τ = id on a commutative ring (K = H).
template <class H>
struct IdentityTrace {
  static_assert(is_commutative_ring_v<H>, "identity trace requires a commutative ring");
  using source_type = H;
  using target_type = H;
  static constexpr std::string_view name() { return "id"; }
  const H& operator()(const H& x) const { return x; }
};

/// τ = Re on the Gaussian rationals or the quaternions, K = Q.
template <class H>
struct RealPartTrace {
  static_assert(std::is_same_v<H, Gaussian> || std::is_same_v<H, Quaternion>,
                "real part is defined on gaussian or quaternion rings");
  using source_type = H;
  using target_type = Rational;
  static constexpr std::string_view name() { return "re"; }
  Rational operator()(const H& x) const { return real_part(x); }
};

/// (1/N)·Tr composed with a base trace: M_N(H) -> K. Experiments only; the
/// matrix-holonomy theorems go through the lifted graph instead.
template <class BaseTrace>
struct NormalizedMatrixTrace {
  using scalar_type = typename BaseTrace::source_type;
  using source_type = SquareMatrix<scalar_type>;
  using target_type = typename BaseTrace::target_type;
  static_assert(contains_rationals_v<target_type>, "normalized trace needs 1/N in K");
  static constexpr std::string_view name() { return "normalized-matrix-trace"; }

  BaseTrace base{};

  target_type operator()(const source_type& x) const {
    require(x.size() >= 1, "empty matrix");
    target_type sum(0);
    for (std::size_t i = 0; i < x.size(); ++i) sum = sum + base(x(i, i));
    return scale(Rational(1, static_cast<unsigned long>(x.size())), sum);
  }
};

/// The i-coefficient of a quaternion. Additive but NOT central
/// (jk = i while kj = -i); kept as a planted negative for the centrality check.
struct QuaternionICoefficient {
  using source_type = Quaternion;
  using target_type = Rational;
  static constexpr std::string_view name() { return "coeff_i"; }
  Rational operator()(const Quaternion& x) const { return x.x(); }
};

enum class TraceKind { identity, real_part };

inline TraceKind parse_trace_kind(std::string_view text) {
  if (text == "id") return TraceKind::identity;
  if (text == "re") return TraceKind::real_part;
  throw InputError("unknown trace '" + std::string(text) + "' (expected id|re)");
}

inline std::string to_string(TraceKind t) { return t == TraceKind::identity ? "id" : "re"; }

}  // namespace mtt
