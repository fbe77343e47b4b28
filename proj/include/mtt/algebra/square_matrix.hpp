#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mtt/error.hpp"

namespace mtt {

/// Dense square matrix over an arbitrary (possibly noncommutative) ring.
/// Used both for matrix-valued holonomies and for Laplacians over R = H[a].
template <class T>
class SquareMatrix {
 public:
  using value_type = T;

  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t size, const T& fill = T(0))
      : size_(size), data_(size * size, fill) {}

  static SquareMatrix identity(std::size_t size) {
    SquareMatrix m(size);
    for (std::size_t i = 0; i < size; ++i) m(i, i) = T(1);
    return m;
  }

  static SquareMatrix from_rows(const std::vector<std::vector<T>>& rows) {
    SquareMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == rows.size(), "matrix is not square");
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t size() const { return size_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * size_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * size_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * size_, size_}; }

  /// Top-left k×k block.
  SquareMatrix leading(std::size_t k) const {
    require(k >= 1 && k <= size_, "principal submatrix size out of range");
    SquareMatrix out(k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) out(i, j) = (*this)(i, j);
    return out;
  }

  friend SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
    check_shapes(a, b);
    SquareMatrix out = a;
    for (std::size_t t = 0; t < out.data_.size(); ++t) out.data_[t] = out.data_[t] + b.data_[t];
    return out;
  }
  friend SquareMatrix operator-(const SquareMatrix& a) {
    SquareMatrix out = a;
    for (auto& x : out.data_) x = -x;
    return out;
  }
  friend SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) { return a + (-b); }
  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    check_shapes(a, b);
    SquareMatrix out(a.size_);
    for (std::size_t i = 0; i < a.size_; ++i)
      for (std::size_t k = 0; k < a.size_; ++k)
        for (std::size_t j = 0; j < a.size_; ++j) out(i, j) = out(i, j) + a(i, k) * b(k, j);
    return out;
  }
  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
    return a.size_ == b.size_ && a.data_ == b.data_;
  }

 private:
  static void check_shapes(const SquareMatrix& a, const SquareMatrix& b) {
    require(a.size_ == b.size_, "matrix shape mismatch: " + std::to_string(a.size_) + " vs " +
                                    std::to_string(b.size_));
  }

  std::size_t size_ = 0;
  std::vector<T> data_;
};

template <class T>
bool is_zero(const SquareMatrix<T>& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (!is_zero(m(i, j))) return false;
  return true;
}

/// Conjugate transpose.
template <class T>
SquareMatrix<T> conj(const SquareMatrix<T>& m) {
  SquareMatrix<T> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out(j, i) = conj(m(i, j));
  return out;
}

template <class T>
SquareMatrix<T> transpose(const SquareMatrix<T>& m) {
  SquareMatrix<T> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out(j, i) = m(i, j);
  return out;
}

/// Gauss–Jordan inverse using left row operations, valid over any division
/// ring (including the quaternions).
template <class T>
SquareMatrix<T> inverse(const SquareMatrix<T>& m) {
  const std::size_t n = m.size();
  SquareMatrix<T> a = m;
  SquareMatrix<T> inv = SquareMatrix<T>::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && is_zero(a(pivot, col))) ++pivot;
    require(pivot < n, "matrix is singular");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    T scale = inverse(a(col, col));
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) = scale * a(col, j);
      inv(col, j) = scale * inv(col, j);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || is_zero(a(r, col))) continue;
      T factor = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) = a(r, j) - factor * a(col, j);
        inv(r, j) = inv(r, j) - factor * inv(col, j);
      }
    }
  }
  return inv;
}

/// diag(A, B).
template <class T>
SquareMatrix<T> block_diagonal(const SquareMatrix<T>& a, const SquareMatrix<T>& b) {
  SquareMatrix<T> m(a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(a.size() + i, a.size() + j) = b(i, j);
  return m;
}

template <class T>
std::string to_string(const SquareMatrix<T>& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += i ? ",[" : "[";
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out += ',';
      out += to_string(m(i, j));
    }
    out += ']';
  }
  return out + "]";
}

}  // namespace mtt
