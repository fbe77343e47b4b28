#pragma once

#include <algorithm>
#include <map>
#include <numeric>

#include "mtt/algebra/sampling.hpp"
#include "mtt/determinant/bareiss.hpp"
#include "mtt/forests/mtkz.hpp"

namespace mtt {

using Cell = std::vector<std::uint32_t>;  // sorted, 0-based vertices

/// "[1,2,3]" with 1-based vertices.
inline std::string cell_name(const Cell& c) {
  std::string out = "[";
  for (std::size_t t = 0; t < c.size(); ++t) out += (t ? "," : "") + std::to_string(c[t] + 1);
  return out + "]";
}

/// Colexicographic order: compare the largest vertices first.
inline bool colex_less(const Cell& a, const Cell& b) {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

/// All k-subsets of {0..v-1} in colex order.
inline std::vector<Cell> colex_subsets(std::size_t v, std::size_t k) {
  std::vector<Cell> out;
  Cell c(k);
  std::iota(c.begin(), c.end(), 0u);
  if (k > v) return out;
  for (;;) {
    out.push_back(c);
    // colex successor: bump the first entry that can move up
    std::size_t t = 0;
    while (t < k && c[t] + 1 == (t + 1 < k ? c[t + 1] : v)) ++t;
    if (t == k) break;
    ++c[t];
    for (std::size_t s = 0; s < t; ++s) c[s] = static_cast<std::uint32_t>(s);
  }
  return out;
}

/// (-1)^j where the vertex of rho missing from sigma is the j-th smallest (0-based).
inline int incidence_sign(const Cell& rho, const Cell& sigma) {
  require(rho.size() == sigma.size() + 1, "incidence sign needs a facet of a cell one dimension up");
  std::size_t j = 0;
  while (j < sigma.size() && rho[j] == sigma[j]) ++j;
  require(std::equal(sigma.begin() + j, sigma.end(), rho.begin() + j + 1), "not a facet");
  return j % 2 == 0 ? 1 : -1;
}

/// The complete d-skeleton on v vertices, seen through its (d-1)-cells.
class SimplicialComplex {
 public:
  SimplicialComplex(std::size_t v, std::size_t d) : v_(v), d_(d) {
    require(v >= 2, "need at least 2 vertices");
    require(d >= 1 && d <= v - 1, "dimension out of range: need 1 <= d <= v-1");
    cells_ = colex_subsets(v, d);
    top_ = colex_subsets(v, d + 1);
    for (std::size_t i = 0; i < cells_.size(); ++i) cell_index_[cells_[i]] = i;
    for (std::size_t i = 0; i < top_.size(); ++i) top_index_[top_[i]] = i;
    adjacent_.resize(cells_.size());
    for (std::size_t i = 0; i < cells_.size(); ++i)
      for (std::size_t j = 0; j < cells_.size(); ++j)
        if (i != j && join(i, j).size() == d + 1) adjacent_[i].push_back(j);
  }

  std::size_t v() const { return v_; }
  std::size_t d() const { return d_; }
  std::size_t cell_count() const { return cells_.size(); }
  std::size_t top_count() const { return top_.size(); }
  const Cell& cell(std::size_t i) const { return cells_[i]; }
  const Cell& top_cell(std::size_t r) const { return top_[r]; }
  const std::vector<std::size_t>& adjacent(std::size_t i) const { return adjacent_[i]; }

  /// Number of k-cells, C(v, k+1).
  std::size_t count(std::size_t k) const { return k + 1 > v_ ? 0 : colex_subsets(v_, k + 1).size(); }

  bool is_adjacent(std::size_t i, std::size_t j) const {
    return i != j && std::binary_search(adjacent_[i].begin(), adjacent_[i].end(), j);
  }

  Cell join(std::size_t i, std::size_t j) const {
    Cell u;
    std::set_union(cells_[i].begin(), cells_[i].end(), cells_[j].begin(), cells_[j].end(), std::back_inserter(u));
    return u;
  }
  /// Colex index of the d-cell σ ∪ τ.
  std::size_t top_of(std::size_t i, std::size_t j) const { return top_index_.at(join(i, j)); }

  std::size_t index_of(const Cell& c) const {
    auto it = cell_index_.find(c);
    require(it != cell_index_.end(), "not a (d-1)-cell: " + cell_name(c));
    return it->second;
  }

  /// (d-1)-cells containing the 0-based vertex x.
  std::vector<std::size_t> cells_containing(std::uint32_t x) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cells_.size(); ++i)
      if (std::binary_search(cells_[i].begin(), cells_[i].end(), x)) out.push_back(i);
    return out;
  }

 private:
  std::size_t v_, d_;
  std::vector<Cell> cells_, top_;
  std::map<Cell, std::size_t> cell_index_, top_index_;
  std::vector<std::vector<std::size_t>> adjacent_;
};

/// One sign per (d-1)-cell, relative to the sorted-vertex orientation.
struct Orientation {
  std::vector<int> sign;

  static Orientation reference(const SimplicialComplex& cx) { return {std::vector<int>(cx.cell_count(), 1)}; }
  static Orientation random(const SimplicialComplex& cx, Rng& rng) {
    Orientation o = reference(cx);
    for (auto& s : o.sign) s = rng.coin() ? 1 : -1;
    return o;
  }
};

/// ε_στ = -s_σ s_τ [ρ:σ][ρ:τ] with ρ = σ ∪ τ, so that the off-diagonal entry
/// -ε_στ a_στ of the Laplacian is the entry of ∂δ when h = 1.
inline int epsilon(const SimplicialComplex& cx, std::size_t i, std::size_t j, const Orientation& o) {
  require(cx.is_adjacent(i, j), "cells " + cell_name(cx.cell(i)) + " and " + cell_name(cx.cell(j)) + " are not adjacent");
  const Cell rho = cx.join(i, j);
  return -o.sign[i] * o.sign[j] * incidence_sign(rho, cx.cell(i)) * incidence_sign(rho, cx.cell(j));
}

/// Product of ε along a closed chain of adjacent cells.
inline int chain_epsilon(const SimplicialComplex& cx, std::span<const std::size_t> chain, const Orientation& o) {
  int e = 1;
  for (std::size_t t = 0; t < chain.size(); ++t) e *= epsilon(cx, chain[t], chain[(t + 1) % chain.size()], o);
  return e;
}

/// Weights and holonomies on the ordered adjacent pairs of a complex, plus
/// the row order of the Laplacian: the first m cells of `order` are inner,
/// the rest form the well. Symmetric weights are x_ρ, one per d-cell.
template <class H, CentralTrace Trace>
struct SimplicialInstance {
  using trace_type = Trace;
  using target_type = typename Trace::target_type;

  SimplicialComplex cx{3, 1};
  Orientation orientation;
  std::vector<std::size_t> order;
  std::size_t m = 1;
  Trace trace{};
  WeightMode weight_mode = WeightMode::symbolic;
  std::vector<H> holonomy;            // EdgeIndex over cells; unused on non-adjacent pairs
  std::vector<target_type> weight;    // specialized mode only, same indexing

  EdgeIndex pairs() const { return EdgeIndex(cx.cell_count()); }
  const H& h(std::size_t i, std::size_t j) const { return holonomy[pairs()(i, j)]; }
  H& h(std::size_t i, std::size_t j) { return holonomy[pairs()(i, j)]; }

  std::vector<std::size_t> well() const { return {order.begin() + static_cast<std::ptrdiff_t>(m), order.end()}; }

  Variable variable(std::size_t i, std::size_t j) const {
    if (weight_mode == WeightMode::symmetric) return static_cast<Variable>(cx.top_of(i, j));
    return static_cast<Variable>(pairs()(i, j));
  }

  EdgeWeight<target_type> edge_weight(std::size_t i, std::size_t j) const {
    if (weight_mode == WeightMode::specialized) return {std::nullopt, weight[pairs()(i, j)]};
    return {variable(i, j), target_type(1)};
  }

  VariableNamer namer() const {
    if (weight_mode == WeightMode::symmetric)
      return [cx = cx](Variable v) { return "x" + cell_name(cx.top_cell(v)); };
    return [cx = cx, idx = pairs()](Variable v) {
      auto [i, j] = idx.endpoints(v);
      return "a" + cell_name(cx.cell(i)) + "_" + cell_name(cx.cell(j));
    };
  }

  void validate() const {
    const std::size_t c = cx.cell_count();
    require(orientation.sign.size() == c, "orientation has the wrong size");
    for (int s : orientation.sign) require(s == 1 || s == -1, "orientation signs must be +1 or -1");
    require(order.size() == c, "cell order has the wrong size");
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < c; ++i) require(sorted[i] == i, "cell order is not a permutation");
    require(m >= 1 && m <= c, "m out of range: need 1 <= m <= number of (d-1)-cells");
    require(holonomy.size() == pairs().size(), "holonomy table has the wrong size");
    if (weight_mode == WeightMode::specialized) require(weight.size() == pairs().size(), "weight table has the wrong size");
  }
};

/// Colex order with the given well cells moved to the end (their relative
/// colex order kept).
inline std::vector<std::size_t> order_with_well(const SimplicialComplex& cx, const std::vector<std::size_t>& well) {
  std::vector<char> in_well(cx.cell_count(), 0);
  for (auto w : well) {
    require(w < cx.cell_count(), "well cell out of range");
    require(!in_well[w], "well cell listed twice");
    in_well[w] = 1;
  }
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < cx.cell_count(); ++i)
    if (!in_well[i]) order.push_back(i);
  for (std::size_t i = 0; i < cx.cell_count(); ++i)
    if (in_well[i]) order.push_back(i);
  return order;
}

/// Instance with every holonomy equal to `unit`, reference orientation,
/// colex order and inner set of size m (every weight 1 when specialized).
template <class H, CentralTrace Trace>
SimplicialInstance<H, Trace> make_simplicial_instance(std::size_t v, std::size_t d, std::size_t m, const H& unit,
                                                      WeightMode mode = WeightMode::symbolic) {
  SimplicialInstance<H, Trace> inst{SimplicialComplex(v, d)};
  inst.orientation = Orientation::reference(inst.cx);
  inst.order.resize(inst.cx.cell_count());
  std::iota(inst.order.begin(), inst.order.end(), std::size_t{0});
  inst.m = m;
  inst.weight_mode = mode;
  inst.holonomy.assign(inst.pairs().size(), unit);
  if (mode == WeightMode::specialized) inst.weight.assign(inst.pairs().size(), typename Trace::target_type(1));
  inst.validate();
  return inst;
}

/// Moves the cells containing the 1-based vertex x to the well.
template <class H, class Trace>
void set_well_containing_vertex(SimplicialInstance<H, Trace>& inst, std::size_t x) {
  require(x >= 1 && x <= inst.cx.v(), "well vertex out of range");
  auto well = inst.cx.cells_containing(static_cast<std::uint32_t>(x - 1));
  inst.order = order_with_well(inst.cx, well);
  inst.m = inst.cx.cell_count() - well.size();
}

template <class H, class Trace>
void set_well(SimplicialInstance<H, Trace>& inst, const std::vector<std::size_t>& well) {
  require(well.size() < inst.cx.cell_count(), "the well must leave at least one inner cell");
  inst.order = order_with_well(inst.cx, well);
  inst.m = inst.cx.cell_count() - well.size();
}

/// Full Laplacian in row order `order`: off-diagonal -ε_στ h_στ a_στ on
/// adjacent pairs, diagonal (1/d) Σ_τ a_στ.
template <class H, class Trace>
LaplacianMatrix<H> build_simplicial_laplacian(const SimplicialInstance<H, Trace>& inst) {
  inst.validate();
  const auto& cx = inst.cx;
  const std::size_t c = cx.cell_count(), d = cx.d();
  if constexpr (!contains_rationals_v<H>) require(d == 1, "the diagonal needs 1/d in the holonomy ring");
  auto weight = [&](std::size_t i, std::size_t j) {
    auto w = inst.edge_weight(i, j);
    H scale_h = embed<H>(w.scale);
    if (w.variable) return Polynomial<H>::variable(*w.variable, scale_h);
    return Polynomial<H>(scale_h);
  };
  LaplacianMatrix<H> lap(c);
  for (std::size_t p = 0; p < c; ++p) {
    const std::size_t i = inst.order[p];
    Polynomial<H> diagonal;
    for (std::size_t q = 0; q < c; ++q) {
      const std::size_t j = inst.order[q];
      if (!cx.is_adjacent(i, j)) continue;
      const auto a = weight(i, j);
      diagonal += a;
      const int e = epsilon(cx, i, j, inst.orientation);
      const H coef = e > 0 ? -inst.h(i, j) : inst.h(i, j);
      if (!is_zero(coef)) lap(p, q) = coef * a;
    }
    if constexpr (contains_rationals_v<H>) {
      const H inv_d = embed<H>(Rational(1, static_cast<unsigned long>(d)));
      lap(p, p) = inv_d * diagonal;
    } else {
      lap(p, p) = diagonal;
    }
  }
  return lap;
}

/// det_τ(Δ_[m]).
template <class H, class Trace>
Polynomial<typename Trace::target_type> lhs_cw(const SimplicialInstance<H, Trace>& inst, const DetOptions& opt = {}) {
  return tau_det(build_simplicial_laplacian(inst).leading(inst.m), inst.trace, opt);
}

/// Forests of the cell graph: positions 0..m-1 of `order` are inner and
/// each sends its edge to an adjacent cell.
template <class H, class Trace>
TargetSpace cell_graph_space(const SimplicialInstance<H, Trace>& inst) {
  const std::size_t c = inst.cx.cell_count();
  std::vector<std::uint32_t> position(c);
  for (std::size_t p = 0; p < c; ++p) position[inst.order[p]] = static_cast<std::uint32_t>(p);
  TargetSpace s;
  s.vertex_count = c;
  s.targets.resize(inst.m);
  for (std::size_t p = 0; p < inst.m; ++p) {
    for (std::size_t j : inst.cx.adjacent(inst.order[p])) s.targets[p].push_back(position[j]);
    std::sort(s.targets[p].begin(), s.targets[p].end());
  }
  return s;
}

/// (1/d^m) Σ_F a_F Π_c (1 - d^{ℓ(c)} ε_c τ(h_c)) over the forests of the cell graph.
template <class H, class Trace>
Polynomial<typename Trace::target_type> rhs_cw(const SimplicialInstance<H, Trace>& inst, const SumOptions& opt = {}) {
  using K = typename Trace::target_type;
  inst.validate();
  const std::size_t d = inst.cx.d();
  if constexpr (!contains_rationals_v<K>) require(d == 1, "the prefactor 1/d^m needs 1/d in the target ring");
  const auto space = cell_graph_space(inst);
  WeightTable<K> table;
  table.variable_count = inst.weight_mode == WeightMode::symmetric ? inst.cx.top_count() : inst.pairs().size();
  table.weights.resize(space.inner());
  for (std::size_t p = 0; p < space.inner(); ++p)
    for (std::uint32_t q : space.targets[p]) table.weights[p].push_back(inst.edge_weight(inst.order[p], inst.order[q]));

  auto make_visitor = [&] {
    return [&inst, d, cache = CycleFactorCache<K>()](std::span<const std::uint32_t>, const CycleList& cycles,
                                                      const CycleFinder&, K& factor) mutable {
      factor = K(1);
      for (std::size_t c = 0; c < cycles.size(); ++c) {
        factor = factor * cache.get(cycles[c], [&](auto cyc) -> K {
          const std::size_t r = cyc.size();
          std::vector<std::size_t> chain(r);
          for (std::size_t t = 0; t < r; ++t) chain[t] = inst.order[cyc[t]];
          H product = inst.h(chain[0], chain[1 % r]);
          for (std::size_t t = 1; t < r; ++t) product = product * inst.h(chain[t], chain[(t + 1) % r]);
          int power = chain_epsilon(inst.cx, chain, inst.orientation);
          for (std::size_t t = 0; t < r; ++t) power *= static_cast<int>(d);
          K tr = inst.trace(product);
          return K(1) - K(power) * tr;
        });
        if (is_zero(factor)) break;
      }
      return true;
    };
  };
  auto sum = forest_sum(space, table, make_visitor, opt);
  if (d == 1) return sum;
  if constexpr (contains_rationals_v<K>) {
    Integer denominator = 1;
    for (std::size_t t = 0; t < inst.m; ++t) denominator *= static_cast<unsigned long>(d);
    const Rational prefactor(Integer(1), denominator);
    return sum.map_coefficients([&](const K& c) { return scale(prefactor, c); });
  }
  return sum;
}

template <class H, class Trace>
VerificationReport verify_cw(const SimplicialInstance<H, Trace>& inst, const VerifyOptions& opt = {}) {
  VerificationReport r;
  r.theorem = "cw";
  r.lhs_label = "det_tau(Delta_[m])";
  r.rhs_label = "cell forest sum";
  check_determinant_size(inst.m, opt.det);
  Stopwatch lhs_clock;
  auto lhs = lhs_cw(inst, opt.det);
  r.lhs_seconds = lhs_clock.seconds();
  Stopwatch rhs_clock;
  auto rhs = rhs_cw(inst, opt.sum);
  r.rhs_seconds = rhs_clock.seconds();
  set_identity(r, lhs, rhs, inst.namer());
  return r;
}

/// Symmetric weights x_ρ: no RHS monomial may contain some x_ρ twice.
/// Expected when Δ = ∂δ holds through Cauchy–Binet, e.g. h = 1 with a
/// commutative H and τ = id or h_στ = u_σρ u_τρ^{-1}.
template <class H, class Trace>
VerificationReport cw_cancellation_check(const SimplicialInstance<H, Trace>& inst, const SumOptions& opt = {}) {
  VerificationReport r;
  r.theorem = "cw-cancellation";
  r.lhs_label = "monomials with some x_rho of degree above 1";
  r.rhs_label = "expected";
  require(inst.weight_mode == WeightMode::symmetric, "the cancellation check needs symmetric weights x_rho");
  Stopwatch clock;
  auto rhs = rhs_cw(inst, opt);
  r.rhs_seconds = clock.seconds();
  for (const auto& [m, c] : rhs.terms())
    if (m.max_exponent() > 1) r.counterexamples.push_back(m.to_string(inst.namer()) + ": " + to_string(c));
  r.lhs_terms = r.counterexamples.size();
  r.rhs_terms = rhs.term_count();
  r.lhs = r.counterexamples.empty() ? "none" : std::to_string(r.counterexamples.size()) + " monomials";
  r.rhs = "none";
  r.equal = r.counterexamples.empty();
  if (!r.equal) r.first_difference = r.counterexamples.front();
  return r;
}

/// Every principal minor (indexed by a nonempty subset of rows) of the
/// Laplacian, as canonical texts.
template <class H, class Trace>
std::vector<std::string> principal_minor_texts(const SimplicialInstance<H, Trace>& inst,
                                               const std::vector<std::vector<std::size_t>>& subsets,
                                               const DetOptions& opt = {}) {
  const auto lap = build_simplicial_laplacian(inst);
  // rows of `lap` follow inst.order; subsets name cells
  std::vector<std::size_t> position(inst.cx.cell_count());
  for (std::size_t p = 0; p < position.size(); ++p) position[inst.order[p]] = p;
  std::vector<std::string> out;
  for (const auto& s : subsets) {
    LaplacianMatrix<H> sub(s.size());
    for (std::size_t x = 0; x < s.size(); ++x)
      for (std::size_t y = 0; y < s.size(); ++y) sub(x, y) = lap(position[s[x]], position[s[y]]);
    out.push_back(tau_det(sub, inst.trace, opt).to_string(inst.namer()));
  }
  return out;
}

/// Subsets of cells of size at most `max_size`, in order of size then colex.
inline std::vector<std::vector<std::size_t>> cell_subsets(std::size_t cells, std::size_t max_size) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t k = 1; k <= std::min(cells, max_size); ++k)
    for (const auto& c : colex_subsets(cells, k)) out.emplace_back(c.begin(), c.end());
  return out;
}

/// Principal minors (all subsets of at most `max_size` cells), the RHS and
/// ε of every triangle chain are unchanged under `flips` random orientations.
template <class H, class Trace>
VerificationReport orientation_invariance_check(const SimplicialInstance<H, Trace>& inst, std::uint64_t seed,
                                                std::size_t flips, std::size_t max_size, const VerifyOptions& opt = {}) {
  VerificationReport r;
  r.theorem = "cw-orientation";
  r.lhs_label = "minors under the reference orientation";
  r.rhs_label = "minors under random orientations";
  const auto subsets = cell_subsets(inst.cx.cell_count(), max_size);
  auto base = inst;
  base.orientation = Orientation::reference(inst.cx);
  Stopwatch clock;
  const auto reference = principal_minor_texts(base, subsets, opt.det);
  const auto reference_rhs = rhs_cw(base, opt.sum).to_string(base.namer());
  std::vector<std::vector<std::size_t>> chains;
  const auto& cx = inst.cx;
  for (std::size_t i = 0; i < cx.cell_count(); ++i)
    for (std::size_t j : cx.adjacent(i))
      for (std::size_t k : cx.adjacent(j))
        if (i < j && j < k && cx.is_adjacent(k, i)) chains.push_back({i, j, k});
  std::vector<int> reference_eps;
  for (const auto& c : chains) reference_eps.push_back(chain_epsilon(cx, c, base.orientation));

  Rng rng(seed);
  for (std::size_t t = 0; t < flips && r.counterexamples.empty(); ++t) {
    auto flipped = inst;
    flipped.orientation = Orientation::random(cx, rng);
    const auto minors = principal_minor_texts(flipped, subsets, opt.det);
    for (std::size_t s = 0; s < subsets.size(); ++s)
      if (minors[s] != reference[s]) {
        std::string rows;
        for (auto c : subsets[s]) rows += cell_name(cx.cell(c));
        r.counterexamples.push_back("flip " + std::to_string(t) + ", minor " + rows + ": " + reference[s] + " vs " +
                                    minors[s]);
        break;
      }
    for (std::size_t c = 0; c < chains.size() && r.counterexamples.empty(); ++c)
      if (chain_epsilon(cx, chains[c], flipped.orientation) != reference_eps[c])
        r.counterexamples.push_back("flip " + std::to_string(t) + ": chain epsilon changed");
    if (r.counterexamples.empty() && rhs_cw(flipped, opt.sum).to_string(flipped.namer()) != reference_rhs)
      r.counterexamples.push_back("flip " + std::to_string(t) + ": forest sum changed");
  }
  r.lhs_seconds = clock.seconds();
  r.lhs_terms = subsets.size();
  r.rhs_terms = flips;
  r.lhs = std::to_string(subsets.size()) + " minors";
  r.rhs = r.counterexamples.empty() ? r.lhs : "changed";
  r.equal = r.counterexamples.empty();
  if (!r.equal) r.first_difference = r.counterexamples.front();
  return r;
}

/// Δ_[m] with h = 1 and all weights 1, as an integer matrix.
inline SquareMatrix<Integer> unit_weight_minor(std::size_t v, std::size_t d, std::size_t well_vertex) {
  auto inst = make_simplicial_instance<Rational, IdentityTrace<Rational>>(v, d, 1, Rational(1), WeightMode::specialized);
  set_well_containing_vertex(inst, well_vertex);
  const auto lap = build_simplicial_laplacian(inst);
  SquareMatrix<Integer> out(inst.m);
  for (std::size_t i = 0; i < inst.m; ++i)
    for (std::size_t j = 0; j < inst.m; ++j) {
      const Rational x = lap(i, j).evaluate([](Variable) { return Rational(1); });
      require(x.get_den() == 1, "unit-weight Laplacian entry is not an integer");
      out(i, j) = x.get_num();
    }
  return out;
}

}  // namespace mtt
