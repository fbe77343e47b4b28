#pragma once

#include <string>

#include "mtt/algebra/rational.hpp"

namespace mtt {

/// Rational quaternion w + x·i + y·j + z·k (Hamilton convention, ij = k).
class Quaternion {
 public:
  Quaternion() = default;
  Quaternion(int value) : w_(value) {}  // NOLINT: integer embedding
  Quaternion(Rational w, Rational x = 0, Rational y = 0, Rational z = 0)
      : w_(std::move(w)), x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {}

  static Quaternion i() { return {0, 1, 0, 0}; }
  static Quaternion j() { return {0, 0, 1, 0}; }
  static Quaternion k() { return {0, 0, 0, 1}; }

  const Rational& w() const { return w_; }
  const Rational& x() const { return x_; }
  const Rational& y() const { return y_; }
  const Rational& z() const { return z_; }

  Quaternion& operator+=(const Quaternion& o) {
    w_ += o.w_;
    x_ += o.x_;
    y_ += o.y_;
    z_ += o.z_;
    return *this;
  }
  Quaternion& operator-=(const Quaternion& o) {
    w_ -= o.w_;
    x_ -= o.x_;
    y_ -= o.y_;
    z_ -= o.z_;
    return *this;
  }
  Quaternion& operator*=(const Quaternion& o) { return *this = *this * o; }

  friend Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend Quaternion operator-(const Quaternion& a) { return {-a.w_, -a.x_, -a.y_, -a.z_}; }
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w_ * b.w_ - a.x_ * b.x_ - a.y_ * b.y_ - a.z_ * b.z_,
            a.w_ * b.x_ + a.x_ * b.w_ + a.y_ * b.z_ - a.z_ * b.y_,
            a.w_ * b.y_ - a.x_ * b.z_ + a.y_ * b.w_ + a.z_ * b.x_,
            a.w_ * b.z_ + a.x_ * b.y_ - a.y_ * b.x_ + a.z_ * b.w_};
  }
  friend bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.w_ == b.w_ && a.x_ == b.x_ && a.y_ == b.y_ && a.z_ == b.z_;
  }

 private:
  Rational w_{0}, x_{0}, y_{0}, z_{0};
};

inline bool is_zero(const Quaternion& q) {
  return is_zero(q.w()) && is_zero(q.x()) && is_zero(q.y()) && is_zero(q.z());
}
inline Quaternion conj(const Quaternion& q) { return {q.w(), -q.x(), -q.y(), -q.z()}; }
inline Rational real_part(const Quaternion& q) { return q.w(); }
inline Rational norm2(const Quaternion& q) {
  return q.w() * q.w() + q.x() * q.x() + q.y() * q.y() + q.z() * q.z();
}

inline Quaternion inverse(const Quaternion& q) {
  Rational n = norm2(q);
  require(!is_zero(n), "inverse of zero quaternion");
  return {q.w() / n, -q.x() / n, -q.y() / n, -q.z() / n};
}

namespace detail {
inline void append_signed(std::string& out, const Rational& c, char unit) {
  if (sgn(c) < 0) {
    out += '-';
    out += to_string(Rational(-c));
  } else {
    out += '+';
    out += to_string(c);
  }
  out += unit;
}
}  // namespace detail

// w+xi+yj+zk with explicit signs, e.g. "3+2i-1j+1k".
inline std::string to_string(const Quaternion& q) {
  std::string out = to_string(q.w());
  detail::append_signed(out, q.x(), 'i');
  detail::append_signed(out, q.y(), 'j');
  detail::append_signed(out, q.z(), 'k');
  return out;
}

}  // namespace mtt
