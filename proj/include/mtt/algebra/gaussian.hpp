#pragma once

#include <string>

#include "mtt/algebra/rational.hpp"

namespace mtt {

/// Gaussian rational re + im·i.
class Gaussian {
 public:
  Gaussian() = default;
  Gaussian(int value) : re_(value) {}  // NOLINT: integer embedding
  Gaussian(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  Gaussian& operator+=(const Gaussian& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o) { return *this = *this * o; }

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator-(const Gaussian& a) { return {-a.re_, -a.im_}; }
  friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline bool is_zero(const Gaussian& z) { return is_zero(z.re()) && is_zero(z.im()); }
inline Gaussian conj(const Gaussian& z) { return {z.re(), -z.im()}; }
inline Rational real_part(const Gaussian& z) { return z.re(); }
inline Rational norm2(const Gaussian& z) { return z.re() * z.re() + z.im() * z.im(); }

inline Gaussian inverse(const Gaussian& z) {
  Rational n = norm2(z);
  require(!is_zero(n), "inverse of zero gaussian");
  return {z.re() / n, -z.im() / n};
}

inline std::string to_string(const Gaussian& z) {
  return "(" + to_string(z.re()) + ")+(" + to_string(z.im()) + ")i";
}

}  // namespace mtt
