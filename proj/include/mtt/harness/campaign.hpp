#pragma once

#include <functional>

#include "mtt/harness/generate.hpp"
#include "mtt/harness/render.hpp"
#include "mtt/lift/lift.hpp"
#include "mtt/parallel.hpp"

namespace mtt {

inline const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = {"mtkz",         "sym",         "mtkzn",        "mttnall",
                                               "cw",           "cancellation", "positivity", "factorization"};
  return ids;
}

inline void check_theorem_id(const std::string& id, bool allow_all) {
  if (allow_all && id == "all") return;
  for (const auto& t : theorem_ids())
    if (t == id) return;
  std::string list;
  for (const auto& t : theorem_ids()) list += (list.empty() ? "" : "|") + t;
  throw InputError("unknown theorem '" + id + "' (expected " + list + (allow_all ? "|all" : "") + ")");
}

struct CheckOptions {
  VerifyOptions verify{};
  std::size_t split = 1;            // factorization: size of the first block
  std::uint64_t orientation_seed = 1;
  std::size_t orientation_flips = 100;
  std::size_t orientation_minor_size = 3;
};

/// g ↦ -1 on Z[Z/2].
inline Rational sign_of(const GroupRingElement& x) {
  require(x.scalar_form() || x.modulus() == 2, "the g -> -1 map needs the group ring of order 2");
  return Rational(x.coefficient(0) - x.coefficient(1));
}

/// Signed graphs: the forest sum over Z[Z/2] sent through g ↦ -1 equals
/// the ordinary determinant of the signed graph with holonomies ±1.
inline VerificationReport zaslavsky_check(const IdInstance<GroupRingElement>& inst, const VerifyOptions& opt = {}) {
  VerificationReport r;
  r.theorem = "zaslavsky";
  r.lhs_label = "forest sum over Z[Z/2] at g = -1";
  r.rhs_label = "det(Delta_[m]) of the signed graph";
  require(inst.weight_mode != WeightMode::specialized, "the signed-graph check needs symbolic weights");
  auto signed_graph = make_instance<Rational, IdentityTrace<Rational>>(inst.n, inst.m, Rational(1), inst.weight_mode);
  for (std::size_t e = 0; e < inst.holonomy.size(); ++e) signed_graph.holonomy[e] = sign_of(inst.holonomy[e]);
  Stopwatch lhs_clock;
  auto lhs = rhs_mtkz(inst, opt.sum).map_coefficients([](const GroupRingElement& c) { return sign_of(c); });
  r.lhs_seconds = lhs_clock.seconds();
  Stopwatch rhs_clock;
  auto rhs = lhs_graph(signed_graph, opt.det);
  r.rhs_seconds = rhs_clock.seconds();
  set_identity(r, lhs, rhs, inst.namer());
  return r;
}

template <class Inst>
auto lift_any(const Inst& inst) {
  if constexpr (Inst::matrix_holonomy) return lift_instance(inst);
  else return lift_scalar(inst);
}

/// Runs one theorem check on a graph instance.
template <class Inst>
VerificationReport run_graph_check(const std::string& theorem, const Inst& inst, const CheckOptions& opt) {
  inst.validate();
  if (theorem == "mtkz" || theorem == "sym") {
    if constexpr (Inst::matrix_holonomy) {
      throw InputError("'" + theorem + "' takes scalar holonomies; matrix rings go through mtkzn");
    } else {
      return theorem == "mtkz" ? verify_mtkz(inst, opt.verify) : verify_sym(inst, opt.verify);
    }
  }
  if (theorem == "mtkzn") return verify_mtkzn(lift_any(inst), opt.verify);
  if (theorem == "mttnall") return verify_mttnall(lift_any(inst), opt.verify);
  if (theorem == "cancellation") return cancellation_check(lift_any(inst), opt.verify.sum);
  if (theorem == "positivity") return positivity_check(lift_any(inst), opt.verify.sum);
  if (theorem == "factorization") {
    if constexpr (!Inst::matrix_holonomy) throw InputError("factorization needs matrix holonomies");
    else return factorization_check(lift_instance(inst), opt.split, opt.verify.sum);
  }
  if (theorem == "cw") throw InputError("'cw' needs a simplicial instance (a document with 'complex')");
  check_theorem_id(theorem, false);
  throw InputError("unhandled theorem '" + theorem + "'");
}

template <class Inst>
VerificationReport run_cw_check(const std::string& theorem, const Inst& inst, const CheckOptions& opt) {
  inst.validate();
  if (theorem == "cw") return verify_cw(inst, opt.verify);
  if (theorem == "cancellation") return cw_cancellation_check(inst, opt.verify.sum);
  check_theorem_id(theorem, false);
  throw InputError("'" + theorem + "' takes a graph instance, not a simplicial one");
}

inline std::string describe(const RandomSpec& spec, const RingDescriptor& ring, TraceKind trace) {
  std::string out = "n=" + std::to_string(spec.n) + " m=" + std::to_string(spec.m) + " ring=" + ring.to_string() +
                    " trace=" + to_string(trace) + " weights=" + to_string(spec.weight_mode);
  if (spec.symmetric) out += " h_ji=conj(h_ij)";
  if (spec.draw == HolonomyDraw::unit) out += " unitary";
  if (spec.block_split) out += " blocks=" + std::to_string(spec.block_split) + "+" + std::to_string(ring.fiber - spec.block_split);
  if (!spec.preset.empty()) out += " preset=" + spec.preset;
  return out + " seed=" + std::to_string(spec.seed);
}

inline std::string describe(const RandomCwSpec& spec, const LoadedSimplicialInstance& loaded) {
  return std::visit(
      [&](const auto& inst) {
        std::string out = "v=" + std::to_string(spec.v) + " d=" + std::to_string(spec.d) +
                          " m=" + std::to_string(inst.m) + " ring=" + loaded.ring.to_string() + " trace=" +
                          std::string(std::decay_t<decltype(inst)>::trace_type::name()) +
                          " weights=" + to_string(spec.weight_mode);
        if (spec.draw == HolonomyDraw::one) out += " h=1";
        if (spec.random_orientation) out += " random-orientation";
        return out + " seed=" + std::to_string(spec.seed);
      },
      loaded.instance);
}

template <class Inst>
std::string digest_of(const Inst& inst, const RingDescriptor& ring) {
  return instance_digest(inst, ring);
}

/// Checks for one generated graph instance; presets add their companion
/// checks (the g ↦ -1 map for zaslavsky, nonnegativity for kenyon).
inline std::vector<VerificationReport> check_random_graph(const std::string& theorem, RandomSpec spec,
                                                          const CheckOptions& opt) {
  const std::string preset = spec.preset;
  apply_preset(spec);
  const LoadedInstance loaded = generate_random_instance(spec);
  const std::string label = describe(spec, loaded.ring, spec_trace(spec, loaded.ring));
  return std::visit(
      [&](const auto& inst) {
        using Inst = std::decay_t<decltype(inst)>;
        const std::string digest = instance_digest(inst, loaded.ring);
        std::vector<VerificationReport> out;
        auto add = [&](VerificationReport r) {
          r.instance = label;
          r.digest = digest;
          out.push_back(std::move(r));
        };
        add(run_graph_check(theorem, inst, opt));
        if constexpr (std::is_same_v<Inst, IdInstance<GroupRingElement>>)
          if (preset == "zaslavsky" && theorem == "mtkz") add(zaslavsky_check(inst, opt.verify));
        if (preset == "kenyon" && theorem == "mtkz") add(positivity_check(lift_any(inst), opt.verify.sum));
        return out;
      },
      loaded.instance);
}

inline std::vector<VerificationReport> check_random_cw(const std::string& theorem, const RandomCwSpec& spec,
                                                       const CheckOptions& opt) {
  const LoadedSimplicialInstance loaded = generate_random_simplicial(spec);
  const std::string label = describe(spec, loaded);
  return std::visit(
      [&](const auto& inst) {
        VerificationReport r = run_cw_check(theorem, inst, opt);
        r.instance = label;
        r.digest = fnv1a_hex(simplicial_to_json(inst, loaded.ring).dump());
        return std::vector<VerificationReport>{std::move(r)};
      },
      loaded.instance);
}

/// Integer minor of the unit-weight complex with the cells through vertex v
/// as well, against the count v^{C(v-2, d)} of weighted simplicial spanning trees.
inline VerificationReport kalai_check(std::size_t v, std::size_t d) {
  VerificationReport r;
  r.theorem = "cw-kalai";
  r.instance = "v=" + std::to_string(v) + " d=" + std::to_string(d) + " h=1 a=1 well=contains_vertex:" + std::to_string(v);
  r.lhs_label = "exact elimination of Delta_[m]";
  r.rhs_label = "v^C(v-2,d)";
  Stopwatch clock;
  const Integer det = det_bareiss(unit_weight_minor(v, d, v));
  r.lhs_seconds = clock.seconds();
  Integer expected = 1;
  const std::size_t exponent = colex_subsets(v - 2, d).size();
  for (std::size_t t = 0; t < exponent; ++t) expected *= static_cast<unsigned long>(v);
  r.lhs = det.get_str();
  r.rhs = expected.get_str();
  r.lhs_terms = r.rhs_terms = 1;
  r.equal = r.lhs == r.rhs;
  if (!r.equal) r.first_difference = "1: " + r.lhs + " vs " + r.rhs;
  return r;
}

/// One unit of campaign work; items run independently and their reports
/// are collected in list order.
struct CampaignItem {
  std::function<std::vector<VerificationReport>()> run;
};

struct CatalogEntry {
  std::string ring;
  TraceKind trace;
};

inline const std::vector<CatalogEntry>& scalar_catalog() {
  static const std::vector<CatalogEntry> c = {{"rational", TraceKind::identity},
                                              {"gaussian", TraceKind::identity},
                                              {"gaussian", TraceKind::real_part},
                                              {"quaternion", TraceKind::real_part},
                                              {"group_ring:3", TraceKind::identity}};
  return c;
}

inline const std::vector<std::pair<std::size_t, std::size_t>>& lift_grid() {
  static const std::vector<std::pair<std::size_t, std::size_t>> g = {{2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 2}};
  return g;
}

/// The built-in campaign: every theorem over its default size grid.
/// `trials` random instances per grid cell, seeds derived from `seed`.
inline std::vector<CampaignItem> default_campaign(const std::string& theorem, std::uint64_t seed, std::size_t trials,
                                                  const CheckOptions& opt) {
  std::vector<CampaignItem> items;
  std::uint64_t next_seed = seed;
  auto graph = [&](const std::string& th, RandomSpec spec) {
    spec.seed = next_seed++;
    items.push_back({[th, spec, opt] { return check_random_graph(th, spec, opt); }});
  };
  auto cw = [&](const std::string& th, RandomCwSpec spec) {
    spec.seed = next_seed++;
    items.push_back({[th, spec, opt] { return check_random_cw(th, spec, opt); }});
  };
  auto wants = [&](const char* id) { return theorem == "all" || theorem == id; };

  if (wants("mtkz")) {
    for (std::size_t n = 2; n <= 5; ++n)
      for (std::size_t m = 1; m <= n; ++m)
        for (const auto& c : scalar_catalog())
          for (std::size_t t = 0; t < trials; ++t) graph("mtkz", {.n = n, .m = m, .ring = c.ring, .trace = c.trace});
    graph("mtkz", {.n = 4, .m = 3, .preset = "kirchhoff"});
    graph("mtkz", {.n = 4, .m = 4, .preset = "kirchhoff"});
    graph("mtkz", {.n = 3, .m = 2, .preset = "forman"});
    graph("mtkz", {.n = 3, .m = 2, .preset = "chaiken:3"});
    graph("mtkz", {.n = 3, .m = 2, .preset = "zaslavsky"});
    graph("mtkz", {.n = 3, .m = 3, .preset = "kenyon"});
  }
  if (wants("sym")) {
    for (std::size_t n = 2; n <= 4; ++n)
      for (std::size_t m = 1; m <= n; ++m)
        for (const auto& c : scalar_catalog())
          for (std::size_t t = 0; t < trials; ++t) graph("sym", {.n = n, .m = m, .ring = c.ring, .trace = c.trace});
  }
  for (const char* th : {"mtkzn", "mttnall"}) {
    if (!wants(th)) continue;
    for (auto [n, fiber] : lift_grid())
      for (std::size_t m = 1; m <= n && m * fiber <= 9; ++m) {
        for (std::size_t t = 0; t < trials; ++t) {
          graph(th, {.n = n, .m = m, .fiber = fiber, .ring = "rational"});
          graph(th, {.n = n, .m = m, .fiber = fiber, .ring = "quaternion", .trace = TraceKind::real_part});
          if (std::string(th) == "mtkzn") graph(th, {.n = n, .m = m, .fiber = fiber, .ring = "group_ring:2"});
        }
      }
  }
  if (wants("cancellation")) {
    for (auto [n, fiber] : lift_grid())
      for (std::size_t m = 1; m <= n && m * fiber <= 9; ++m)
        for (std::size_t t = 0; t < trials; ++t)
          for (const auto& c : {CatalogEntry{"rational", TraceKind::identity}, CatalogEntry{"group_ring:3", TraceKind::identity},
                                CatalogEntry{"quaternion", TraceKind::real_part}})
            graph("cancellation", {.n = n, .m = m, .fiber = fiber, .ring = c.ring, .trace = c.trace,
                                   .weight_mode = WeightMode::symmetric, .draw = HolonomyDraw::unit, .symmetric = true});
  }
  if (wants("positivity")) {
    for (auto [n, fiber] : lift_grid())
      for (std::size_t m = 1; m <= n && m * fiber <= 9; ++m)
        for (std::size_t t = 0; t < trials; ++t)
          for (const auto& c : {CatalogEntry{"rational", TraceKind::identity}, CatalogEntry{"gaussian", TraceKind::identity},
                                CatalogEntry{"quaternion", TraceKind::real_part}})
            graph("positivity", {.n = n, .m = m, .fiber = fiber, .ring = c.ring, .trace = c.trace,
                                 .weight_mode = WeightMode::symmetric, .draw = HolonomyDraw::unit, .symmetric = true});
  }
  if (wants("factorization")) {
    for (auto [n, fiber] : lift_grid())
      for (std::size_t m = 1; m <= n && m * fiber <= 9; ++m)
        for (std::size_t t = 0; t < trials; ++t) {
          graph("factorization", {.n = n, .m = m, .fiber = fiber, .ring = "rational", .block_split = 1});
          graph("factorization", {.n = n, .m = m, .fiber = fiber, .ring = "quaternion",
                                  .trace = TraceKind::real_part, .block_split = 1});
        }
  }
  if (wants("cw")) {
    const std::pair<std::size_t, std::size_t> sizes[] = {{4, 2}, {5, 2}};
    for (auto [v, d] : sizes) {
      const std::size_t cells = SimplicialComplex(v, d).cell_count();
      const std::size_t degree = d * (v - d);
      for (std::size_t m = 1; m <= cells; ++m) {
        std::uint64_t forests = 1;
        for (std::size_t t = 0; t < m; ++t) forests *= degree;
        if (m > opt.verify.det.size_cap || forests > opt.verify.sum.enumeration_cap) break;
        // with one variable per ordered pair every forest is its own monomial;
        // past a few hundred thousand of them the x_ρ weights keep the sides small
        const WeightMode mode = forests <= 300000 ? WeightMode::symbolic : WeightMode::symmetric;
        for (std::size_t t = 0; t < trials; ++t) {
          cw("cw", {.v = v, .d = d, .m = m, .ring = "rational", .weight_mode = mode});
          cw("cw", {.v = v, .d = d, .m = m, .ring = "quaternion", .trace = TraceKind::real_part, .weight_mode = mode,
                    .random_orientation = true});
        }
      }
    }
    cw("cw", {.v = 4, .d = 2, .well_vertex = 4, .weight_mode = WeightMode::symmetric, .draw = HolonomyDraw::one});
    cw("cancellation", {.v = 4, .d = 2, .well_vertex = 4, .weight_mode = WeightMode::symmetric, .draw = HolonomyDraw::one});
    cw("cw", {.v = 4, .d = 2, .m = 6, .weight_mode = WeightMode::specialized, .draw = HolonomyDraw::one});
    items.push_back({[] { return std::vector<VerificationReport>{kalai_check(4, 2), kalai_check(6, 2)}; }});
    const std::uint64_t orientation_seed = next_seed++;
    items.push_back({[orientation_seed, opt] {
      RandomCwSpec spec{.seed = orientation_seed, .v = 4, .d = 2, .m = 3, .weight_mode = WeightMode::specialized};
      auto loaded = generate_random_simplicial(spec);
      const auto& inst = std::get<IdCwInstance<Rational>>(loaded.instance);
      auto r = orientation_invariance_check(inst, orientation_seed, opt.orientation_flips, inst.cx.cell_count(), opt.verify);
      r.instance = describe(spec, loaded) + " flips=" + std::to_string(opt.orientation_flips);
      r.digest = fnv1a_hex(simplicial_to_json(inst, loaded.ring).dump());
      return std::vector<VerificationReport>{r};
    }});
  }
  return items;
}

/// Runs items on up to `threads` workers; reports come back in item order.
inline std::vector<VerificationReport> run_items(const std::vector<CampaignItem>& items, std::size_t threads) {
  std::vector<std::vector<VerificationReport>> results(items.size());
  parallel_for(items.size(), threads, [&](std::size_t i) { results[i] = items[i].run(); });
  std::vector<VerificationReport> out;
  for (auto& r : results)
    for (auto& x : r) out.push_back(std::move(x));
  return out;
}

}  // namespace mtt
