#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mtt/algebra/rational.hpp"

namespace mtt {

/// Element of the integral group ring Z[Z/k], stored as the coefficient
/// vector (c_0, ..., c_{k-1}) of Σ c_e·[g^e].
///
/// An element built from a plain integer has no modulus yet ("scalar form",
/// modulus() == 0) and adopts the modulus of whatever it is combined with.
/// This lets 0 and 1 exist without knowing k.
class GroupRingElement {
 public:
  GroupRingElement() = default;
  GroupRingElement(int value) : scalar_(value) {}  // NOLINT: integer embedding
  GroupRingElement(std::size_t modulus, std::vector<Integer> coefficients)
      : coeffs_(std::move(coefficients)) {
    require(modulus >= 1, "group ring modulus must be positive");
    require(coeffs_.size() == modulus, "group ring literal must have exactly k coefficients");
  }

  /// The basis element [g^e] of Z[Z/k].
  static GroupRingElement generator_power(std::size_t modulus, long exponent) {
    std::vector<Integer> c(modulus, 0);
    long e = exponent % static_cast<long>(modulus);
    if (e < 0) e += static_cast<long>(modulus);
    c[static_cast<std::size_t>(e)] = 1;
    return {modulus, std::move(c)};
  }

  std::size_t modulus() const { return coeffs_.size(); }
  bool scalar_form() const { return coeffs_.empty(); }

  /// Coefficient of [g^e]; valid for any e when in scalar form.
  Integer coefficient(std::size_t e) const {
    if (scalar_form()) return e == 0 ? scalar_ : Integer(0);
    return coeffs_.at(e);
  }

  GroupRingElement with_modulus(std::size_t k) const {
    if (!scalar_form()) {
      require(modulus() == k, "group ring modulus mismatch");
      return *this;
    }
    std::vector<Integer> c(k, 0);
    c[0] = scalar_;
    return {k, std::move(c)};
  }

  friend GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b) {
    if (a.scalar_form() && b.scalar_form()) return from_scalar(a.scalar_ + b.scalar_);
    std::size_t k = common_modulus(a, b);
    GroupRingElement out = a.with_modulus(k);
    for (std::size_t e = 0; e < k; ++e) out.coeffs_[e] += b.coefficient(e);
    return out;
  }
  friend GroupRingElement operator-(const GroupRingElement& a) {
    GroupRingElement out = a;
    out.scalar_ = -out.scalar_;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }
  friend GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) {
    return a + (-b);
  }
  // Cyclic convolution.
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
    if (a.scalar_form() && b.scalar_form()) return from_scalar(a.scalar_ * b.scalar_);
    std::size_t k = common_modulus(a, b);
    if (a.scalar_form() || b.scalar_form()) {
      const Integer& s = a.scalar_form() ? a.scalar_ : b.scalar_;
      GroupRingElement out = a.scalar_form() ? b : a;
      for (auto& c : out.coeffs_) c *= s;
      return out;
    }
    std::vector<Integer> c(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      if (sgn(a.coeffs_[i]) == 0) continue;
      for (std::size_t j = 0; j < k; ++j) {
        if (sgn(b.coeffs_[j]) == 0) continue;
        c[(i + j) % k] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return {k, std::move(c)};
  }
  GroupRingElement& operator+=(const GroupRingElement& o) { return *this = *this + o; }
  GroupRingElement& operator-=(const GroupRingElement& o) { return *this = *this - o; }
  GroupRingElement& operator*=(const GroupRingElement& o) { return *this = *this * o; }

  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
    if (a.scalar_form() && b.scalar_form()) return a.scalar_ == b.scalar_;
    std::size_t k = common_modulus(a, b);
    for (std::size_t e = 0; e < k; ++e)
      if (a.coefficient(e) != b.coefficient(e)) return false;
    return true;
  }

 private:
  static GroupRingElement from_scalar(Integer v) {
    GroupRingElement out;
    out.scalar_ = std::move(v);
    return out;
  }
  static std::size_t common_modulus(const GroupRingElement& a, const GroupRingElement& b) {
    if (a.scalar_form()) return b.modulus();
    if (b.scalar_form()) return a.modulus();
    require(a.modulus() == b.modulus(), "group ring modulus mismatch");
    return a.modulus();
  }

  Integer scalar_{0};               // used only in scalar form
  std::vector<Integer> coeffs_;     // empty in scalar form
};

inline bool is_zero(const GroupRingElement& x) {
  if (x.scalar_form()) return sgn(x.coefficient(0)) == 0;
  for (std::size_t e = 0; e < x.modulus(); ++e)
    if (sgn(x.coefficient(e)) != 0) return false;
  return true;
}

// The canonical involution [g^e] -> [g^-e].
inline GroupRingElement conj(const GroupRingElement& x) {
  if (x.scalar_form()) return x;
  std::size_t k = x.modulus();
  std::vector<Integer> c(k, 0);
  for (std::size_t e = 0; e < k; ++e) c[(k - e) % k] = x.coefficient(e);
  return {k, std::move(c)};
}

// Only units of the form ±[g^e] are inverted.
inline GroupRingElement inverse(const GroupRingElement& x) {
  if (x.scalar_form()) {
    Integer s = x.coefficient(0);
    require(s == 1 || s == -1, "group ring element is not a unit");
    return x;
  }
  std::size_t support = 0;
  Integer c;
  for (std::size_t e = 0; e < x.modulus(); ++e)
    if (sgn(x.coefficient(e)) != 0) {
      ++support;
      c = x.coefficient(e);
    }
  require(support == 1 && (c == 1 || c == -1), "only ±g^e is invertible here");
  return conj(x);
}

// Σ c_e·[g^e] over the nonzero coefficients, e.g. "1·[g^0]-2·[g^2]"; "0" if zero.
inline std::string to_string(const GroupRingElement& x) {
  std::size_t k = x.scalar_form() ? 1 : x.modulus();
  std::string out;
  for (std::size_t e = 0; e < k; ++e) {
    Integer c = x.coefficient(e);
    if (sgn(c) == 0) continue;
    if (sgn(c) > 0 && !out.empty()) out += '+';
    out += c.get_str() + "·[g^" + std::to_string(e) + "]";
  }
  return out.empty() ? "0" : out;
}

}  // namespace mtt
