#pragma once

#include "mtt/algebra/sampling.hpp"
#include "mtt/graph/instance_io.hpp"
#include "mtt/simplicial/simplicial_io.hpp"

namespace mtt {

enum class HolonomyDraw { general, unit, group_element, one };

/// Parameters of a seeded random graph instance. `fiber` > 1 wraps the ring
/// in N×N matrices unless `ring` already names a matrix ring.
struct RandomSpec {
  std::uint64_t seed = 1;
  std::size_t n = 3;
  std::size_t m = 2;
  std::size_t fiber = 1;
  std::string ring = "rational";
  std::optional<TraceKind> trace;  // default: re for quaternions, id otherwise
  WeightMode weight_mode = WeightMode::symbolic;
  HolonomyDraw draw = HolonomyDraw::general;
  bool symmetric = false;          // h_ji = conj(h_ij) (and a_ji = a_ij when specialized)
  std::size_t block_split = 0;     // > 0: block-diagonal matrices with blocks split, N - split
  std::string preset;
};

/// Presets for the classical special cases. Each fixes the ring, the trace
/// and how holonomies are drawn; n, m, seed and fiber stay with the caller.
inline void apply_preset(RandomSpec& spec) {
  const std::string& p = spec.preset;
  if (p.empty()) return;
  if (p == "kirchhoff") {
    spec.ring = "rational";
    spec.trace = TraceKind::identity;
    spec.draw = HolonomyDraw::one;
  } else if (p == "forman") {
    spec.ring = "gaussian";
    spec.trace = TraceKind::identity;
    spec.draw = HolonomyDraw::general;
  } else if (p.rfind("chaiken:", 0) == 0) {
    const std::string k = p.substr(8);
    require(!k.empty() && k.find_first_not_of("0123456789") == std::string::npos && std::stoul(k) >= 1,
            "chaiken preset needs a positive group order, e.g. chaiken:3");
    spec.ring = "group_ring:" + k;
    spec.trace = TraceKind::identity;
    spec.draw = HolonomyDraw::group_element;
  } else if (p == "zaslavsky") {
    spec.ring = "group_ring:2";
    spec.trace = TraceKind::identity;
    spec.draw = HolonomyDraw::group_element;
  } else if (p == "kenyon") {
    spec.ring = "quaternion";
    spec.trace = TraceKind::real_part;
    spec.draw = HolonomyDraw::unit;
    spec.symmetric = true;
    if (spec.weight_mode != WeightMode::specialized) spec.weight_mode = WeightMode::symmetric;
  } else {
    throw InputError("unknown preset '" + p + "' (expected kirchhoff|forman|chaiken:k|zaslavsky|kenyon)");
  }
}

inline RingDescriptor spec_ring(const RandomSpec& spec) {
  RingDescriptor ring = RingDescriptor::parse(spec.ring);
  if (spec.fiber > 1 && ring.kind != RingDescriptor::Kind::matrix)
    ring = RingDescriptor::parse("matrix:" + std::to_string(spec.fiber) + ":" + spec.ring);
  return ring;
}

inline TraceKind spec_trace(const RandomSpec& spec, const RingDescriptor& ring) {
  if (spec.trace) return *spec.trace;
  return ring.scalar().kind == RingDescriptor::Kind::quaternion ? TraceKind::real_part : TraceKind::identity;
}

template <class T>
ElementSampler<T> scalar_sampler(const RingDescriptor& ring) {
  if constexpr (std::is_same_v<T, GroupRingElement>) return {ring.scalar().modulus};
  else return {};
}

template <class T>
T draw_scalar(Rng& rng, const ElementSampler<T>& s, HolonomyDraw draw) {
  switch (draw) {
    case HolonomyDraw::one: return T(1);
    case HolonomyDraw::unit: return s.unit(rng);
    case HolonomyDraw::group_element:
      if constexpr (std::is_same_v<T, GroupRingElement>) return s.group_element(rng);
      else return s.unit(rng);
    case HolonomyDraw::general: break;
  }
  return s.general(rng);
}

template <class T>
SquareMatrix<T> draw_matrix(Rng& rng, std::size_t fiber, const ElementSampler<T>& s, HolonomyDraw draw) {
  ElementSampler<SquareMatrix<T>> ms{fiber, s};
  switch (draw) {
    case HolonomyDraw::one: return SquareMatrix<T>::identity(fiber);
    case HolonomyDraw::unit:
    case HolonomyDraw::group_element: return ms.unit(rng);
    case HolonomyDraw::general: break;
  }
  return ms.general(rng);
}

template <class Hol>
Hol draw_holonomy(Rng& rng, const RingDescriptor& ring, const RandomSpec& spec) {
  if constexpr (is_square_matrix_v<Hol>) {
    using T = typename Hol::value_type;
    const auto s = scalar_sampler<T>(ring);
    if (spec.block_split == 0) return draw_matrix(rng, ring.fiber, s, spec.draw);
    require(spec.block_split < ring.fiber, "block split must lie strictly between 0 and N");
    auto a = draw_matrix(rng, spec.block_split, s, spec.draw);
    auto b = draw_matrix(rng, ring.fiber - spec.block_split, s, spec.draw);
    return block_diagonal(a, b);
  } else {
    require(spec.block_split == 0, "block-diagonal holonomies need a matrix ring");
    return draw_scalar(rng, scalar_sampler<Hol>(ring), spec.draw);
  }
}

/// Deterministic in `spec`: holonomies are drawn edge by edge in EdgeIndex
/// order (only i < j when symmetric), then specialized weights.
inline LoadedInstance generate_random_instance(RandomSpec spec) {
  apply_preset(spec);
  require(spec.n >= 2, "n must be at least 2");
  require(spec.m >= 1 && spec.m <= spec.n, "m out of range: need 1 <= m <= n");
  require(spec.fiber >= 1, "fiber must be at least 1");
  const RingDescriptor ring = spec_ring(spec);
  const TraceKind trace = spec_trace(spec, ring);
  Rng rng(spec.seed);
  AnyGraphInstance any = with_instance_type(ring, trace, [&](auto proto) -> AnyGraphInstance {
    using Inst = decltype(proto);
    using Hol = typename Inst::holonomy_type;
    using KT = typename Inst::target_type;
    Hol unit = [&] {
      if constexpr (Inst::matrix_holonomy) return Hol::identity(ring.fiber);
      else return Hol(1);
    }();
    Inst inst = make_instance<Hol, typename Inst::trace_type>(spec.n, spec.m, unit, spec.weight_mode);
    for (std::size_t i = 0; i < spec.n; ++i)
      for (std::size_t j = 0; j < spec.n; ++j) {
        if (i == j || (spec.symmetric && j < i)) continue;
        inst.h(i, j) = draw_holonomy<Hol>(rng, ring, spec);
        if (spec.symmetric) inst.h(j, i) = conj(inst.h(i, j));
      }
    if (spec.weight_mode == WeightMode::specialized) {
      const auto ks = [&] {
        if constexpr (std::is_same_v<KT, GroupRingElement>) return ElementSampler<KT>{ring.scalar().modulus};
        else return ElementSampler<KT>{};
      }();
      for (std::size_t i = 0; i < spec.n; ++i)
        for (std::size_t j = 0; j < spec.n; ++j) {
          if (i == j || (spec.symmetric && j < i)) continue;
          inst.weight[inst.edges()(i, j)] = ks.nonzero(rng);
          if (spec.symmetric) inst.weight[inst.edges()(j, i)] = inst.weight[inst.edges()(i, j)];
        }
    }
    inst.validate();
    return inst;
  });
  return {std::move(any), ring};
}

/// Parameters of a seeded random simplicial instance.
struct RandomCwSpec {
  std::uint64_t seed = 1;
  std::size_t v = 4;
  std::size_t d = 2;
  std::size_t m = 1;
  std::size_t well_vertex = 0;  // > 0: the well is the cells containing this vertex and m is implied
  std::string ring = "rational";
  std::optional<TraceKind> trace;
  WeightMode weight_mode = WeightMode::symbolic;
  HolonomyDraw draw = HolonomyDraw::general;
  bool random_orientation = false;
};

inline LoadedSimplicialInstance generate_random_simplicial(const RandomCwSpec& spec) {
  const RingDescriptor ring = RingDescriptor::parse(spec.ring);
  const TraceKind trace =
      spec.trace ? *spec.trace
                 : (ring.kind == RingDescriptor::Kind::quaternion ? TraceKind::real_part : TraceKind::identity);
  Rng rng(spec.seed);
  AnySimplicialInstance any = with_simplicial_type(ring, trace, [&](auto tag) -> AnySimplicialInstance {
    using Inst = typename decltype(tag)::type;
    using H = typename Inst::trace_type::source_type;
    using KT = typename Inst::target_type;
    Inst inst = make_simplicial_instance<H, typename Inst::trace_type>(spec.v, spec.d, 1, H(1), spec.weight_mode);
    if (spec.well_vertex > 0) {
      set_well_containing_vertex(inst, spec.well_vertex);
    } else {
      require(spec.m >= 1 && spec.m <= inst.cx.cell_count(), "m out of range: need 1 <= m <= number of (d-1)-cells");
      inst.m = spec.m;
    }
    const auto s = scalar_sampler<H>(ring);
    for (std::size_t i = 0; i < inst.cx.cell_count(); ++i)
      for (std::size_t j : inst.cx.adjacent(i)) inst.h(i, j) = draw_scalar(rng, s, spec.draw);
    if (spec.weight_mode == WeightMode::specialized) {
      const auto ks = [&] {
        if constexpr (std::is_same_v<KT, GroupRingElement>) return ElementSampler<KT>{ring.modulus};
        else return ElementSampler<KT>{};
      }();
      for (std::size_t i = 0; i < inst.cx.cell_count(); ++i)
        for (std::size_t j : inst.cx.adjacent(i)) inst.weight[inst.pairs()(i, j)] = ks.nonzero(rng);
    }
    if (spec.random_orientation) inst.orientation = Orientation::random(inst.cx, rng);
    inst.validate();
    return inst;
  });
  return {std::move(any), ring};
}

}  // namespace mtt
