#pragma once

#include "mtt/determinant/tau_det.hpp"
#include "mtt/forests/forest_sum.hpp"
#include "mtt/graph/laplacian.hpp"
#include "mtt/report.hpp"

namespace mtt {

struct VerifyOptions {
  DetOptions det{};
  SumOptions sum{};
};

/// Weight table of the complete graph with inner set {0..m-1}.
template <class Hol, class Trace>
WeightTable<typename Trace::target_type> graph_weight_table(const GraphInstance<Hol, Trace>& inst,
                                                             const TargetSpace& space) {
  WeightTable<typename Trace::target_type> table;
  table.variable_count = inst.edges().size();
  table.weights.resize(space.inner());
  for (std::size_t u = 0; u < space.inner(); ++u)
    for (std::uint32_t t : space.targets[u]) table.weights[u].push_back(inst.edge_weight(u, t));
  return table;
}

/// τ(h_c) with the holonomies multiplied along the cycle in edge direction.
template <class Hol, class Trace>
typename Trace::target_type cycle_trace(const GraphInstance<Hol, Trace>& inst, std::span<const std::uint32_t> cycle) {
  Hol product = inst.h(cycle[0], cycle[1 % cycle.size()]);
  for (std::size_t t = 1; t < cycle.size(); ++t) product = product * inst.h(cycle[t], cycle[(t + 1) % cycle.size()]);
  return inst.trace(product);
}

/// τ(h_{c^{-1}}): the same vertices traversed backwards.
template <class Hol, class Trace>
typename Trace::target_type reversed_cycle_trace(const GraphInstance<Hol, Trace>& inst,
                                                 std::span<const std::uint32_t> cycle) {
  const std::size_t r = cycle.size();
  Hol product = inst.h(cycle[0], cycle[r - 1]);
  for (std::size_t t = r - 1; t >= 1; --t) product = product * inst.h(cycle[t], cycle[t - 1]);
  return inst.trace(product);
}

/// Σ_F a_F Π_{c ∈ C(F)} (1 - τ(h_c)) over all cycle-and-well-rooted forests.
template <class Hol, class Trace>
Polynomial<typename Trace::target_type> rhs_mtkz(const GraphInstance<Hol, Trace>& inst, const SumOptions& opt = {}) {
  static_assert(!is_square_matrix_v<Hol>, "matrix holonomies go through the lifted graph");
  using K = typename Trace::target_type;
  inst.validate();
  const auto space = TargetSpace::complete(inst.n, inst.m);
  const auto table = graph_weight_table(inst, space);
  auto make_visitor = [&] {
    return [&inst, cache = CycleFactorCache<K>()](std::span<const std::uint32_t>, const CycleList& cycles,
                                                   const CycleFinder&, K& factor) mutable {
      factor = K(1);
      for (std::size_t c = 0; c < cycles.size(); ++c) {
        factor = factor * cache.get(cycles[c], [&](auto cyc) -> K { return K(1) - cycle_trace(inst, cyc); });
        if (is_zero(factor)) break;
      }
      return true;
    };
  };
  return forest_sum(space, table, make_visitor, opt);
}

/// x + x̄ in K, i.e. twice the real part (conjugation is trivial on Q).
template <class K>
K twice_real_part(const K& x) {
  return x + conj(x);
}

struct SymOptions {
  SumOptions sum{};
  /// Write the factor of a cycle of length >= 3 as 2 - 2Re τ(h_c). Only
  /// equal to the general form when τ(h_{c^{-1}}) is the conjugate of τ(h_c).
  bool real_part_form = false;
};

/// Class sum in the quotient by a_ij = a_ji: one representative per
/// orientation class, 2-cycles weighted 1 - τ(h_c) and longer cycles
/// 2 - τ(h_c) - τ(h_{c^{-1}}).
template <class Hol, class Trace>
Polynomial<typename Trace::target_type> rhs_sym(const GraphInstance<Hol, Trace>& inst, const SymOptions& opt = {}) {
  static_assert(!is_square_matrix_v<Hol>, "matrix holonomies go through the lifted graph");
  using K = typename Trace::target_type;
  require(inst.weight_mode == WeightMode::symmetric, "the class sum needs weight_mode 'symmetric'");
  inst.validate();
  const auto space = TargetSpace::complete(inst.n, inst.m);
  const auto table = graph_weight_table(inst, space);
  const bool re_form = opt.real_part_form;
  auto make_visitor = [&] {
    return [&inst, re_form, cache = CycleFactorCache<K>()](std::span<const std::uint32_t>, const CycleList& cycles,
                                                            const CycleFinder&, K& factor) mutable {
      for (std::size_t c = 0; c < cycles.size(); ++c)
        if (!canonical_orientation(cycles[c])) return false;
      factor = K(1);
      for (std::size_t c = 0; c < cycles.size(); ++c) {
        factor = factor * cache.get(cycles[c], [&](auto cyc) -> K {
          if (cyc.size() == 2) return K(1) - cycle_trace(inst, cyc);
          if (re_form) return K(2) - twice_real_part(cycle_trace(inst, cyc));
          return K(2) - cycle_trace(inst, cyc) - reversed_cycle_trace(inst, cyc);
        });
        if (is_zero(factor)) break;
      }
      return true;
    };
  };
  return forest_sum(space, table, make_visitor, opt.sum);
}

/// det_τ(Δ_[m]) for a scalar-holonomy instance.
template <class Hol, class Trace>
Polynomial<typename Trace::target_type> lhs_graph(const GraphInstance<Hol, Trace>& inst, const DetOptions& opt = {}) {
  return tau_det(principal_submatrix(build_laplacian(inst), inst.m), inst.trace, opt);
}

/// Both sides of the graph matrix-tree identity.
template <class Hol, class Trace>
VerificationReport verify_mtkz(const GraphInstance<Hol, Trace>& inst, const VerifyOptions& opt = {}) {
  VerificationReport r;
  r.theorem = "mtkz";
  r.lhs_label = "det_tau(Delta_[m])";
  r.rhs_label = "forest sum";
  check_determinant_size(inst.m, opt.det);
  Stopwatch lhs_clock;
  auto lhs = lhs_graph(inst, opt.det);
  r.lhs_seconds = lhs_clock.seconds();
  Stopwatch rhs_clock;
  auto rhs = rhs_mtkz(inst, opt.sum);
  r.rhs_seconds = rhs_clock.seconds();
  set_identity(r, lhs, rhs, inst.namer());
  return r;
}

/// Class sum against the full forest sum after identifying a_ij with a_ji.
template <class Hol, class Trace>
VerificationReport verify_sym(const GraphInstance<Hol, Trace>& inst, const VerifyOptions& opt = {}) {
  VerificationReport r;
  require(inst.weight_mode != WeightMode::specialized, "the class-sum check needs symbolic weights");
  r.theorem = "sym";
  r.lhs_label = "forest sum, a_ij = a_ji";
  r.rhs_label = "class sum";
  auto full = inst;
  full.weight_mode = WeightMode::symbolic;
  auto symmetric = inst;
  symmetric.weight_mode = WeightMode::symmetric;
  Stopwatch lhs_clock;
  auto lhs = rhs_mtkz(full, opt.sum).rename_variables(symmetric_identification(inst.n));
  r.lhs_seconds = lhs_clock.seconds();
  Stopwatch rhs_clock;
  auto rhs = rhs_sym(symmetric, SymOptions{opt.sum, false});
  r.rhs_seconds = rhs_clock.seconds();
  set_identity(r, lhs, rhs, inst.namer());
  return r;
}

}  // namespace mtt
