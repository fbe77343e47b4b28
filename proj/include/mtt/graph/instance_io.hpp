#pragma once

#include <cstdint>
#include <cstdio>
#include <set>
#include <string>
#include <variant>

#include <json.hpp>

#include "mtt/graph/instance.hpp"

namespace mtt {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Ring-element literals
//   rational    "p/q" or an integer
//   gaussian    ["p/q", "r/s"]
//   quaternion  [w, x, y, z]
//   group ring  [c_0, ..., c_{k-1}]
//   matrix      N×N nested arrays of base literals

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  require(j.is_string(), "rational literal must be a string \"p/q\" or an integer");
  return parse_rational(j.get<std::string>());
}

template <class T>
struct LiteralCodec;

template <>
struct LiteralCodec<Rational> {
  static Rational read(const Json& j, const RingDescriptor&) { return rational_from_json(j); }
  static Json write(const Rational& x) { return to_string(x); }
};

template <>
struct LiteralCodec<Gaussian> {
  static Gaussian read(const Json& j, const RingDescriptor&) {
    require(j.is_array() && j.size() == 2, "gaussian literal must be [re, im]");
    return {rational_from_json(j[0]), rational_from_json(j[1])};
  }
  static Json write(const Gaussian& z) { return Json::array({to_string(z.re()), to_string(z.im())}); }
};

template <>
struct LiteralCodec<Quaternion> {
  static Quaternion read(const Json& j, const RingDescriptor&) {
    require(j.is_array() && j.size() == 4, "quaternion literal must be [w, x, y, z]");
    return {rational_from_json(j[0]), rational_from_json(j[1]), rational_from_json(j[2]), rational_from_json(j[3])};
  }
  static Json write(const Quaternion& q) {
    return Json::array({to_string(q.w()), to_string(q.x()), to_string(q.y()), to_string(q.z())});
  }
};

template <>
struct LiteralCodec<GroupRingElement> {
  static GroupRingElement read(const Json& j, const RingDescriptor& ring) {
    const std::size_t k = ring.scalar().modulus;
    require(j.is_array() && j.size() == k, "group ring literal must have exactly " + std::to_string(k) + " entries");
    std::vector<Integer> c;
    for (const auto& e : j) {
      Rational r = rational_from_json(e);
      require(r.get_den() == 1, "group ring coefficients must be integers");
      c.push_back(r.get_num());
    }
    return {k, std::move(c)};
  }
  static Json write(const GroupRingElement& x, std::size_t k) {
    Json out = Json::array();
    auto full = x.with_modulus(k);
    for (std::size_t e = 0; e < k; ++e) out.push_back(full.coefficient(e).get_str());
    return out;
  }
};

template <class T>
struct LiteralCodec<SquareMatrix<T>> {
  static SquareMatrix<T> read(const Json& j, const RingDescriptor& ring) {
    const std::size_t n = ring.fiber;
    require(j.is_array() && j.size() == n, "matrix literal must have N rows");
    SquareMatrix<T> m(n);
    for (std::size_t r = 0; r < n; ++r) {
      require(j[r].is_array() && j[r].size() == n, "matrix literal must be N×N");
      for (std::size_t c = 0; c < n; ++c) m(r, c) = LiteralCodec<T>::read(j[r][c], ring);
    }
    return m;
  }
};

template <class T>
Json write_literal(const T& x, const RingDescriptor& ring) {
  if constexpr (std::is_same_v<T, GroupRingElement>) {
    return LiteralCodec<T>::write(x, ring.scalar().modulus);
  } else if constexpr (is_square_matrix_v<T>) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < x.size(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < x.size(); ++c) row.push_back(write_literal(x(r, c), ring));
      rows.push_back(row);
    }
    return rows;
  } else {
    return LiteralCodec<T>::write(x);
  }
}

// ---------------------------------------------------------------------------
// Runtime dispatch over the supported (ring, trace) catalog.

template <class H>
using IdInstance = GraphInstance<H, IdentityTrace<H>>;
template <class H>
using ReInstance = GraphInstance<H, RealPartTrace<H>>;
template <class H>
using IdMatrixInstance = GraphInstance<SquareMatrix<H>, IdentityTrace<H>>;
template <class H>
using ReMatrixInstance = GraphInstance<SquareMatrix<H>, RealPartTrace<H>>;

using AnyGraphInstance =
    std::variant<IdInstance<Rational>, IdInstance<Gaussian>, ReInstance<Gaussian>, ReInstance<Quaternion>,
                 IdInstance<GroupRingElement>, IdMatrixInstance<Rational>, IdMatrixInstance<Gaussian>,
                 ReMatrixInstance<Gaussian>, ReMatrixInstance<Quaternion>, IdMatrixInstance<GroupRingElement>>;

/// Calls f with a default-constructed instance of the alternative matching
/// (ring, trace); throws InputError for unsupported pairs.
template <class F>
decltype(auto) with_instance_type(const RingDescriptor& ring, TraceKind trace, F&& f) {
  using K = RingDescriptor::Kind;
  const bool matrix = ring.kind == K::matrix;
  const K scalar = ring.scalar().kind;
  if (trace == TraceKind::identity) {
    switch (scalar) {
      case K::rational: return matrix ? f(IdMatrixInstance<Rational>{}) : f(IdInstance<Rational>{});
      case K::gaussian: return matrix ? f(IdMatrixInstance<Gaussian>{}) : f(IdInstance<Gaussian>{});
      case K::group_ring:
        return matrix ? f(IdMatrixInstance<GroupRingElement>{}) : f(IdInstance<GroupRingElement>{});
      case K::quaternion: throw InputError("trace 'id' requires a commutative ring; quaternions need 're'");
      default: break;
    }
  } else {
    switch (scalar) {
      case K::gaussian: return matrix ? f(ReMatrixInstance<Gaussian>{}) : f(ReInstance<Gaussian>{});
      case K::quaternion: return matrix ? f(ReMatrixInstance<Quaternion>{}) : f(ReInstance<Quaternion>{});
      case K::rational:
      case K::group_ring: throw InputError("trace 're' is defined on gaussian or quaternion rings only");
      default: break;
    }
  }
  throw InputError("unsupported ring/trace combination");
}

template <class Inst>
RingDescriptor ring_of(const Inst& inst, std::size_t group_modulus) {
  using H = typename Inst::scalar_type;
  RingDescriptor base;
  if constexpr (std::is_same_v<H, Gaussian>) base.kind = RingDescriptor::Kind::gaussian;
  else if constexpr (std::is_same_v<H, Quaternion>) base.kind = RingDescriptor::Kind::quaternion;
  else if constexpr (std::is_same_v<H, GroupRingElement>) {
    base.kind = RingDescriptor::Kind::group_ring;
    base.modulus = group_modulus;
  }
  if constexpr (!Inst::matrix_holonomy) return base;
  RingDescriptor out;
  out.kind = RingDescriptor::Kind::matrix;
  out.fiber = inst.fiber();
  out.base = std::make_shared<const RingDescriptor>(base);
  return out;
}

/// Modulus of the group ring an instance lives in (0 if it cannot be told,
/// i.e. every holonomy is an integer).
template <class Inst>
std::size_t group_modulus_of(const Inst& inst) {
  if constexpr (std::is_same_v<typename Inst::scalar_type, GroupRingElement>) {
    for (const auto& h : inst.holonomy) {
      if constexpr (Inst::matrix_holonomy) {
        for (std::size_t r = 0; r < h.size(); ++r)
          for (std::size_t c = 0; c < h.size(); ++c)
            if (!h(r, c).scalar_form()) return h(r, c).modulus();
      } else if (!h.scalar_form()) {
        return h.modulus();
      }
    }
    for (const auto& w : inst.weight)
      if (!w.scalar_form()) return w.modulus();
  }
  return 0;
}

struct LoadedInstance {
  AnyGraphInstance instance;
  RingDescriptor ring;
};

inline LoadedInstance load_instance(const Json& doc) {
  require(doc.is_object(), "instance document must be an object");
  for (const char* field : {"n", "m", "ring"}) require(doc.contains(field), std::string("missing field '") + field + "'");
  require(doc["n"].is_number_integer() && doc["m"].is_number_integer(), "n and m must be integers");
  const long n = doc["n"].get<long>(), m = doc["m"].get<long>();
  require(n >= 2, "n must be at least 2");
  require(m >= 1 && m <= n, "m out of range: need 1 <= m <= n");
  require(doc["ring"].is_string(), "ring must be a string");
  RingDescriptor ring = RingDescriptor::parse(doc["ring"].get<std::string>());
  TraceKind trace = parse_trace_kind(doc.value("trace", std::string("id")));
  WeightMode mode = parse_weight_mode(doc.value("weight_mode", std::string("symbolic")));

  AnyGraphInstance any = with_instance_type(ring, trace, [&](auto proto) -> AnyGraphInstance {
    using Inst = decltype(proto);
    using Hol = typename Inst::holonomy_type;
    using KT = typename Inst::target_type;
    Hol unit = [&] {
      if constexpr (Inst::matrix_holonomy) return Hol::identity(ring.fiber);
      else return Hol(1);
    }();
    Inst inst = make_instance<Hol, typename Inst::trace_type>(static_cast<std::size_t>(n), static_cast<std::size_t>(m),
                                                              unit, mode);
    std::set<std::pair<long, long>> seen;
    if (doc.contains("edges")) {
      require(doc["edges"].is_array(), "edges must be a list");
      for (const auto& e : doc["edges"]) {
        require(e.is_object() && e.contains("from") && e.contains("to"), "edge needs 'from' and 'to'");
        require(e["from"].is_number_integer() && e["to"].is_number_integer(), "edge endpoints must be integers");
        long i = e["from"].get<long>(), j = e["to"].get<long>();
        require(i != j, "self-loop edge (" + std::to_string(i) + "," + std::to_string(j) + ") is not allowed");
        require(i >= 1 && i <= n && j >= 1 && j <= n, "edge endpoint out of range");
        require(seen.emplace(i, j).second, "duplicate edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
        const auto ii = static_cast<std::size_t>(i - 1), jj = static_cast<std::size_t>(j - 1);
        if (e.contains("h")) inst.h(ii, jj) = LiteralCodec<Hol>::read(e["h"], ring);
        if (e.contains("a")) {
          require(mode == WeightMode::specialized, "edge weight 'a' given but weight_mode is not 'specialized'");
          RingDescriptor target = trace == TraceKind::identity ? ring.scalar() : RingDescriptor{};
          inst.weight[inst.edges()(ii, jj)] = LiteralCodec<KT>::read(e["a"], target);
        }
      }
    }
    inst.validate();
    return inst;
  });
  return {std::move(any), ring};
}

inline LoadedInstance load_instance(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed instance document: ") + e.what());
  }
  return load_instance(doc);
}

/// Canonical document: every edge listed in EdgeIndex order with its holonomy
/// (and weight in specialized mode).
template <class Inst>
Json instance_to_json(const Inst& inst, const RingDescriptor& ring) {
  Json doc;
  doc["n"] = inst.n;
  doc["m"] = inst.m;
  doc["ring"] = ring.to_string();
  doc["trace"] = std::string(Inst::trace_type::name());
  doc["weight_mode"] = to_string(inst.weight_mode);
  Json edges = Json::array();
  const EdgeIndex idx = inst.edges();
  const RingDescriptor target = std::string(Inst::trace_type::name()) == "id" ? ring.scalar() : RingDescriptor{};
  for (std::size_t e = 0; e < idx.size(); ++e) {
    auto [i, j] = idx.endpoints(e);
    Json edge;
    edge["from"] = i + 1;
    edge["to"] = j + 1;
    edge["h"] = write_literal(inst.holonomy[e], ring);
    if (inst.weight_mode == WeightMode::specialized) edge["a"] = write_literal(inst.weight[e], target);
    edges.push_back(std::move(edge));
  }
  doc["edges"] = std::move(edges);
  return doc;
}

/// 64-bit FNV-1a of a canonical text, as 16 hex digits.
inline std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

template <class Inst>
std::string instance_digest(const Inst& inst, const RingDescriptor& ring) {
  return fnv1a_hex(instance_to_json(inst, ring).dump());
}

}  // namespace mtt
