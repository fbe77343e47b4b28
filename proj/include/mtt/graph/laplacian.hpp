#pragma once

#include "mtt/graph/instance.hpp"

namespace mtt {

template <class H>
using LaplacianMatrix = SquareMatrix<Polynomial<H>>;

/// The weight of edge (i, j) as an element of R = H[a].
template <class Hol, class Trace>
Polynomial<typename Trace::source_type> weight_polynomial(const GraphInstance<Hol, Trace>& inst, std::size_t i,
                                                          std::size_t j) {
  using H = typename Trace::source_type;
  auto w = inst.edge_weight(i, j);
  H c = embed<H>(w.scale);
  if (w.variable) return Polynomial<H>::variable(*w.variable, c);
  return Polynomial<H>(c);
}

/// Δ_ij = -h_ij a_ij for i != j and Δ_ii = Σ_{j != i} a_ij.
template <class Hol, class Trace>
LaplacianMatrix<typename Trace::source_type> build_laplacian(const GraphInstance<Hol, Trace>& inst) {
  static_assert(!is_square_matrix_v<Hol>,
                "matrix holonomies are assembled through the lifted graph (see lift.hpp)");
  using H = typename Trace::source_type;
  inst.validate();
  LaplacianMatrix<H> lap(inst.n);
  for (std::size_t i = 0; i < inst.n; ++i) {
    for (std::size_t j = 0; j < inst.n; ++j) {
      if (i == j) continue;
      Polynomial<H> w = weight_polynomial(inst, i, j);
      lap(i, i) += w;
      lap(i, j) = (-inst.h(i, j)) * w;
    }
  }
  return lap;
}

/// Δ_[k]: erase rows and columns of index >= k.
template <class T>
SquareMatrix<T> principal_submatrix(const SquareMatrix<T>& m, std::size_t k) {
  return m.leading(k);
}

}  // namespace mtt
