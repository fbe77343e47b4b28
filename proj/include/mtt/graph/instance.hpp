#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mtt/algebra/polynomial.hpp"
#include "mtt/algebra/trace.hpp"

namespace mtt {

/// Dense numbering of the ordered edges (i, j), i != j, of the complete
/// graph on n vertices (0-based): row-major with the diagonal skipped.
class EdgeIndex {
 public:
  explicit EdgeIndex(std::size_t n) : n_(n) {}

  std::size_t vertex_count() const { return n_; }
  std::size_t size() const { return n_ * (n_ - 1); }

  std::size_t operator()(std::size_t i, std::size_t j) const {
    return i * (n_ - 1) + (j < i ? j : j - 1);
  }
  std::pair<std::size_t, std::size_t> endpoints(std::size_t e) const {
    std::size_t i = e / (n_ - 1), r = e % (n_ - 1);
    return {i, r < i ? r : r + 1};
  }

 private:
  std::size_t n_;
};

/// "a{i}_{j}" with 1-based vertices.
inline VariableNamer graph_variable_namer(std::size_t n) {
  return [idx = EdgeIndex(n)](Variable v) {
    auto [i, j] = idx.endpoints(v);
    return "a" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
  };
}

enum class WeightMode { symbolic, symmetric, specialized };

inline std::string to_string(WeightMode mode) {
  switch (mode) {
    case WeightMode::symbolic: return "symbolic";
    case WeightMode::symmetric: return "symmetric";
    case WeightMode::specialized: return "specialized";
  }
  return "?";
}

inline WeightMode parse_weight_mode(std::string_view text) {
  if (text == "symbolic") return WeightMode::symbolic;
  if (text == "symmetric") return WeightMode::symmetric;
  if (text == "specialized") return WeightMode::specialized;
  throw InputError("unknown weight_mode '" + std::string(text) + "'");
}

/// The weight of one edge as seen in S = K[a]: scale·(variable or 1).
template <class K>
struct EdgeWeight {
  std::optional<Variable> variable;
  K scale{1};
};

/// Complete directed graph on {0..n-1} with inner vertices {0..m-1}
/// and well {m..n-1}; every ordered edge carries a holonomy (scalar H or an
/// N×N matrix over H) and a weight.
template <class Hol, CentralTrace Trace>
struct GraphInstance {
  using trace_type = Trace;
  using scalar_type = typename Trace::source_type;
  using target_type = typename Trace::target_type;
  using holonomy_type = Hol;
  static constexpr bool matrix_holonomy = is_square_matrix_v<Hol>;

  std::size_t n = 2;
  std::size_t m = 1;
  Trace trace{};
  WeightMode weight_mode = WeightMode::symbolic;
  std::vector<Hol> holonomy;          // indexed by EdgeIndex
  std::vector<target_type> weight;    // specialized mode only, indexed by EdgeIndex

  EdgeIndex edges() const { return EdgeIndex(n); }
  std::size_t well_size() const { return n - m; }

  const Hol& h(std::size_t i, std::size_t j) const { return holonomy[edges()(i, j)]; }
  Hol& h(std::size_t i, std::size_t j) { return holonomy[edges()(i, j)]; }

  /// Indeterminate attached to (i, j); a_ij and a_ji coincide in symmetric mode.
  Variable variable(std::size_t i, std::size_t j) const {
    if (weight_mode == WeightMode::symmetric && j < i) std::swap(i, j);
    return static_cast<Variable>(edges()(i, j));
  }

  EdgeWeight<target_type> edge_weight(std::size_t i, std::size_t j) const {
    if (weight_mode == WeightMode::specialized) return {std::nullopt, weight[edges()(i, j)]};
    return {variable(i, j), target_type(1)};
  }

  std::size_t fiber() const {
    if constexpr (matrix_holonomy) return holonomy.empty() ? 0 : holonomy.front().size();
    else return 1;
  }

  VariableNamer namer() const { return graph_variable_namer(n); }

  void validate() const {
    require(n >= 2, "n must be at least 2");
    require(m >= 1 && m <= n, "m out of range: need 1 <= m <= n");
    require(holonomy.size() == edges().size(), "holonomy table has the wrong size");
    if (weight_mode == WeightMode::specialized)
      require(weight.size() == edges().size(), "weight table has the wrong size");
    if constexpr (matrix_holonomy) {
      require(fiber() >= 1, "matrix holonomies need N >= 1");
      for (const auto& h : holonomy) require(h.size() == fiber(), "matrix holonomies must share one size N");
    }
  }
};

/// Instance with every holonomy equal to `unit` and (in specialized mode) every weight 1.
template <class Hol, CentralTrace Trace>
GraphInstance<Hol, Trace> make_instance(std::size_t n, std::size_t m, const Hol& unit,
                                        WeightMode mode = WeightMode::symbolic, Trace trace = {}) {
  GraphInstance<Hol, Trace> inst;
  inst.n = n;
  inst.m = m;
  inst.trace = trace;
  inst.weight_mode = mode;
  require(n >= 2, "n must be at least 2");
  inst.holonomy.assign(n * (n - 1), unit);
  if (mode == WeightMode::specialized) inst.weight.assign(n * (n - 1), typename Trace::target_type(1));
  inst.validate();
  return inst;
}

/// Identification a_ij -> a_min(i,j),max(i,j) on polynomials in graph variables.
inline auto symmetric_identification(std::size_t n) {
  return [idx = EdgeIndex(n)](Variable v) {
    auto [i, j] = idx.endpoints(v);
    return static_cast<Variable>(i < j ? idx(i, j) : idx(j, i));
  };
}

}  // namespace mtt
