#pragma once

#include <variant>

#include "mtt/graph/instance_io.hpp"
#include "mtt/simplicial/simplicial.hpp"

namespace mtt {

template <class H>
using IdCwInstance = SimplicialInstance<H, IdentityTrace<H>>;
template <class H>
using ReCwInstance = SimplicialInstance<H, RealPartTrace<H>>;

using AnySimplicialInstance = std::variant<IdCwInstance<Rational>, IdCwInstance<Gaussian>, ReCwInstance<Gaussian>,
                                           ReCwInstance<Quaternion>, IdCwInstance<GroupRingElement>>;

template <class F>
decltype(auto) with_simplicial_type(const RingDescriptor& ring, TraceKind trace, F&& f) {
  using K = RingDescriptor::Kind;
  require(ring.kind != K::matrix, "simplicial instances take scalar holonomies only");
  if (trace == TraceKind::identity) {
    switch (ring.kind) {
      case K::rational: return f(std::type_identity<IdCwInstance<Rational>>{});
      case K::gaussian: return f(std::type_identity<IdCwInstance<Gaussian>>{});
      case K::group_ring: return f(std::type_identity<IdCwInstance<GroupRingElement>>{});
      case K::quaternion: throw InputError("trace 'id' requires a commutative ring; quaternions need 're'");
      default: break;
    }
  } else {
    switch (ring.kind) {
      case K::gaussian: return f(std::type_identity<ReCwInstance<Gaussian>>{});
      case K::quaternion: return f(std::type_identity<ReCwInstance<Quaternion>>{});
      default: throw InputError("trace 're' is defined on gaussian or quaternion rings only");
    }
  }
  throw InputError("unsupported ring/trace combination");
}

struct LoadedSimplicialInstance {
  AnySimplicialInstance instance;
  RingDescriptor ring;
};

inline Cell cell_from_json(const Json& j, std::size_t v) {
  require(j.is_array(), "a cell is a list of vertices");
  Cell c;
  for (const auto& x : j) {
    require(x.is_number_integer(), "cell vertices must be integers");
    const long k = x.get<long>();
    require(k >= 1 && k <= static_cast<long>(v), "cell vertex out of range");
    c.push_back(static_cast<std::uint32_t>(k - 1));
  }
  std::sort(c.begin(), c.end());
  require(std::adjacent_find(c.begin(), c.end()) == c.end(), "repeated vertex in a cell");
  return c;
}

inline Json cell_to_json(const Cell& c) {
  Json out = Json::array();
  for (auto x : c) out.push_back(x + 1);
  return out;
}

/// {"complex": {"v", "d"}, "ring", "trace", "weight_mode", "m" | "well",
///  "orientation", "pairs": [{"from": cell, "to": cell, "h", "a"}]}.
/// "well" is "contains_vertex:x" or a list of cells; without either, "m"
/// picks the first m cells in colex order.
inline LoadedSimplicialInstance load_simplicial_instance(const Json& doc) {
  require(doc.is_object(), "instance document must be an object");
  require(doc.contains("complex") && doc["complex"].is_object(), "missing object 'complex'");
  const Json& cxdoc = doc["complex"];
  require(cxdoc.contains("v") && cxdoc.contains("d") && cxdoc["v"].is_number_integer() && cxdoc["d"].is_number_integer(),
          "complex needs integer 'v' and 'd'");
  const long v = cxdoc["v"].get<long>(), d = cxdoc["d"].get<long>();
  require(v >= 2, "need at least 2 vertices");
  require(d >= 1 && d <= v - 1, "dimension out of range: need 1 <= d <= v-1");
  require(v <= 12, "complexes are limited to 12 vertices");
  require(doc.contains("ring") && doc["ring"].is_string(), "missing string field 'ring'");
  RingDescriptor ring = RingDescriptor::parse(doc["ring"].get<std::string>());
  TraceKind trace = parse_trace_kind(doc.value("trace", std::string("id")));
  WeightMode mode = parse_weight_mode(doc.value("weight_mode", std::string("symbolic")));

  AnySimplicialInstance any = with_simplicial_type(ring, trace, [&](auto tag) -> AnySimplicialInstance {
    using Inst = typename decltype(tag)::type;
    using H = typename Inst::trace_type::source_type;
    using KT = typename Inst::target_type;
    Inst inst = make_simplicial_instance<H, typename Inst::trace_type>(static_cast<std::size_t>(v),
                                                                       static_cast<std::size_t>(d), 1, H(1), mode);
    const auto& cx = inst.cx;
    require(!(doc.contains("m") && doc.contains("well")), "give either 'm' or 'well', not both");
    if (doc.contains("well")) {
      const Json& w = doc["well"];
      if (w.is_string()) {
        const std::string text = w.get<std::string>();
        const std::string prefix = "contains_vertex:";
        require(text.rfind(prefix, 0) == 0, "well must be 'contains_vertex:x' or a list of cells");
        std::size_t x = 0;
        try {
          x = std::stoul(text.substr(prefix.size()));
        } catch (const std::exception&) {
          throw InputError("bad well vertex in '" + text + "'");
        }
        set_well_containing_vertex(inst, x);
      } else {
        require(w.is_array(), "well must be 'contains_vertex:x' or a list of cells");
        std::vector<std::size_t> cells;
        for (const auto& c : w) cells.push_back(cx.index_of(cell_from_json(c, cx.v())));
        set_well(inst, cells);
      }
    } else {
      require(doc.contains("m") && doc["m"].is_number_integer(), "missing 'm' or 'well'");
      const long m = doc["m"].get<long>();
      require(m >= 1 && m <= static_cast<long>(cx.cell_count()), "m out of range: need 1 <= m <= number of (d-1)-cells");
      inst.m = static_cast<std::size_t>(m);
    }
    if (doc.contains("orientation")) {
      const Json& o = doc["orientation"];
      require(o.is_array() && o.size() == cx.cell_count(), "orientation needs one sign per (d-1)-cell");
      for (std::size_t i = 0; i < cx.cell_count(); ++i) {
        require(o[i].is_number_integer(), "orientation signs must be +1 or -1");
        inst.orientation.sign[i] = o[i].get<int>();
      }
    }
    if (doc.contains("pairs")) {
      require(doc["pairs"].is_array(), "pairs must be a list");
      std::set<std::pair<std::size_t, std::size_t>> seen;
      for (const auto& p : doc["pairs"]) {
        require(p.is_object() && p.contains("from") && p.contains("to"), "pair needs 'from' and 'to'");
        const std::size_t i = cx.index_of(cell_from_json(p["from"], cx.v()));
        const std::size_t j = cx.index_of(cell_from_json(p["to"], cx.v()));
        require(cx.is_adjacent(i, j), "cells " + cell_name(cx.cell(i)) + " and " + cell_name(cx.cell(j)) + " are not adjacent");
        require(seen.emplace(i, j).second, "duplicate pair " + cell_name(cx.cell(i)) + " " + cell_name(cx.cell(j)));
        if (p.contains("h")) inst.h(i, j) = LiteralCodec<H>::read(p["h"], ring);
        if (p.contains("a")) {
          require(mode == WeightMode::specialized, "pair weight 'a' given but weight_mode is not 'specialized'");
          RingDescriptor target = trace == TraceKind::identity ? ring : RingDescriptor{};
          inst.weight[inst.pairs()(i, j)] = LiteralCodec<KT>::read(p["a"], target);
        }
      }
    }
    inst.validate();
    return inst;
  });
  return {std::move(any), ring};
}

inline LoadedSimplicialInstance load_simplicial_instance(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed instance document: ") + e.what());
  }
  return load_simplicial_instance(doc);
}

template <class Inst>
Json simplicial_to_json(const Inst& inst, const RingDescriptor& ring) {
  const auto& cx = inst.cx;
  Json doc;
  doc["complex"] = Json{{"v", cx.v()}, {"d", cx.d()}};
  doc["ring"] = ring.to_string();
  doc["trace"] = std::string(Inst::trace_type::name());
  doc["weight_mode"] = to_string(inst.weight_mode);
  Json well = Json::array();
  for (auto c : inst.well()) well.push_back(cell_to_json(cx.cell(c)));
  if (well.empty()) doc["m"] = inst.m;
  else doc["well"] = std::move(well);
  doc["orientation"] = inst.orientation.sign;
  const RingDescriptor target = std::string(Inst::trace_type::name()) == "id" ? ring : RingDescriptor{};
  Json pairs = Json::array();
  for (std::size_t i = 0; i < cx.cell_count(); ++i)
    for (std::size_t j : cx.adjacent(i)) {
      Json p;
      p["from"] = cell_to_json(cx.cell(i));
      p["to"] = cell_to_json(cx.cell(j));
      p["h"] = write_literal(inst.h(i, j), ring);
      if (inst.weight_mode == WeightMode::specialized) p["a"] = write_literal(inst.weight[inst.pairs()(i, j)], target);
      pairs.push_back(std::move(p));
    }
  doc["pairs"] = std::move(pairs);
  return doc;
}

/// Whether a document describes a simplicial instance.
inline bool is_simplicial_document(const Json& doc) { return doc.is_object() && doc.contains("complex"); }

}  // namespace mtt
