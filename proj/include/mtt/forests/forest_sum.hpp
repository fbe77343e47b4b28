#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "mtt/algebra/polynomial.hpp"
#include "mtt/forests/forest.hpp"
#include "mtt/graph/instance.hpp"
#include "mtt/parallel.hpp"

namespace mtt {

inline constexpr std::uint64_t kDefaultEnumerationCap = 12'000'000;

struct SumOptions {
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  std::size_t threads = 1;
};

/// The configuration space of cycle-and-well-rooted forests on a directed
/// graph: inner vertex u may send its edge to any of targets[u].
struct TargetSpace {
  std::size_t vertex_count = 0;
  std::vector<std::vector<std::uint32_t>> targets;  // one list per inner vertex

  std::size_t inner() const { return targets.size(); }

  /// Number of configurations, saturating at uint64 max.
  std::uint64_t count() const {
    std::uint64_t total = 1;
    for (const auto& t : targets) {
      if (t.empty()) return 0;
      if (total > std::numeric_limits<std::uint64_t>::max() / t.size()) return std::numeric_limits<std::uint64_t>::max();
      total *= t.size();
    }
    return total;
  }

  /// Complete graph on n vertices with inner set {0..m-1}.
  static TargetSpace complete(std::size_t n, std::size_t m) {
    require(n >= 2, "n must be at least 2");
    require(m >= 1 && m <= n, "m out of range: need 1 <= m <= n");
    TargetSpace space;
    space.vertex_count = n;
    space.targets.resize(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        if (j != i) space.targets[i].push_back(j);
    return space;
  }
};

inline void check_enumeration_size(const TargetSpace& space, const SumOptions& opt) {
  if (space.count() > opt.enumeration_cap)
    throw CapExceeded("forest enumeration of " +
                      (space.count() == std::numeric_limits<std::uint64_t>::max() ? std::string("> 2^64")
                                                                                   : std::to_string(space.count())) +
                      " configurations exceeds the cap of " + std::to_string(opt.enumeration_cap));
}

/// Visits configurations with index in [begin, end) in mixed-radix order
/// (inner vertex 0 is the fastest digit). visit(target, digit) receives the
/// chosen heads and the choice index of every inner vertex.
template <class Visit>
void for_each_configuration(const TargetSpace& space, std::uint64_t begin, std::uint64_t end, Visit&& visit) {
  const std::size_t m = space.inner();
  std::vector<std::size_t> digit(m);
  std::vector<std::uint32_t> target(m);
  std::uint64_t rest = begin;
  for (std::size_t u = 0; u < m; ++u) {
    digit[u] = rest % space.targets[u].size();
    rest /= space.targets[u].size();
    target[u] = space.targets[u][digit[u]];
  }
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    visit(std::span<const std::uint32_t>(target), std::span<const std::size_t>(digit));
    for (std::size_t u = 0; u < m; ++u) {
      if (++digit[u] < space.targets[u].size()) {
        target[u] = space.targets[u][digit[u]];
        break;
      }
      digit[u] = 0;
      target[u] = space.targets[u][0];
    }
  }
}

/// All forests of the complete graph on n vertices with inner set {0..m-1},
/// (n-1)^m of them, in mixed-radix order.
inline std::vector<Forest> enumerate_forests(std::size_t n, std::size_t m) {
  auto space = TargetSpace::complete(n, m);
  std::vector<Forest> out;
  out.reserve(space.count());
  for_each_configuration(space, 0, space.count(), [&](std::span<const std::uint32_t> t, auto) {
    out.push_back(Forest{{t.begin(), t.end()}});
  });
  return out;
}

/// Class representative plus the number of forests obtained by reversing cycles.
struct ForestClass {
  Forest representative;
  std::uint64_t orbit_size = 1;
};

/// Quotient by cycle reversal: one representative per class (every cycle of
/// length >= 3 in canonical orientation), orbit size 2^{#cycles of length >= 3}.
inline std::vector<ForestClass> enumerate_forest_classes(std::size_t n, std::size_t m) {
  auto space = TargetSpace::complete(n, m);
  std::vector<ForestClass> out;
  CycleFinder finder;
  CycleList cycles;
  for_each_configuration(space, 0, space.count(), [&](std::span<const std::uint32_t> t, auto) {
    finder.find(t, cycles);
    std::uint64_t orbit = 1;
    for (std::size_t c = 0; c < cycles.size(); ++c) {
      if (!canonical_orientation(cycles[c])) return;
      if (cycles[c].size() >= 3) orbit *= 2;
    }
    out.push_back({Forest{{t.begin(), t.end()}}, orbit});
  });
  return out;
}

/// Per-edge weight table over a TargetSpace: weights[u][t] is the weight of
/// the edge u -> targets[u][t].
template <class K>
struct WeightTable {
  std::vector<std::vector<EdgeWeight<K>>> weights;
  std::size_t variable_count = 0;  // all variables are < variable_count

  bool unit_scales() const {
    for (const auto& row : weights)
      for (const auto& w : row)
        if (!(w.scale == K(1))) return false;
    return true;
  }
};

/// Σ_F a_F · φ(F) over all configurations F of `space`, where a_F is the
/// product of the edge weights and φ(F) is produced by a per-worker visitor:
///
///   bool visitor(std::span<const uint32_t> target, const CycleList& cycles,
///                const CycleFinder& finder, K& factor)
///
/// returns false to exclude F and otherwise stores φ(F) in `factor`.
/// `make_visitor()` is called once per chunk so visitors may keep caches.
/// Chunks are merged in index order; the result is schedule-independent.
template <class K, class MakeVisitor>
Polynomial<K> forest_sum(const TargetSpace& space, const WeightTable<K>& table, MakeVisitor&& make_visitor,
                         const SumOptions& opt) {
  check_enumeration_size(space, opt);
  const std::uint64_t total = space.count();
  const bool unit = table.unit_scales();
  const bool wide = table.variable_count > 255;
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::uint64_t>(total, opt.threads * 4));

  using Accumulator = std::unordered_map<std::string, K>;
  std::vector<Accumulator> partial(chunks);

  parallel_for(chunks, opt.threads, [&](std::size_t chunk) {
    const std::uint64_t begin = total * chunk / chunks, end = total * (chunk + 1) / chunks;
    auto visitor = make_visitor();
    CycleFinder finder;
    CycleList cycles;
    std::vector<Variable> vars;
    std::string key;
    K factor(1);
    Accumulator& acc = partial[chunk];
    for_each_configuration(space, begin, end, [&](std::span<const std::uint32_t> target,
                                                  std::span<const std::size_t> digit) {
      finder.find(target, cycles);
      if (!visitor(target, cycles, finder, factor)) return;
      if (is_zero(factor)) return;
      vars.clear();
      for (std::size_t u = 0; u < target.size(); ++u) {
        const auto& w = table.weights[u][digit[u]];
        if (w.variable) vars.push_back(*w.variable);
        if (!unit) factor = factor * w.scale;
      }
      if (!unit && is_zero(factor)) return;
      std::sort(vars.begin(), vars.end());
      key.clear();
      for (Variable v : vars) {
        key.push_back(static_cast<char>(v & 0xFF));
        if (wide) key.push_back(static_cast<char>((v >> 8) & 0xFF));
      }
      auto [it, inserted] = acc.try_emplace(key, factor);
      if (!inserted) it->second = it->second + factor;
    });
  });

  Accumulator merged = std::move(partial[0]);
  for (std::size_t c = 1; c < chunks; ++c)
    for (auto& [k, v] : partial[c]) {
      auto [it, inserted] = merged.try_emplace(k, v);
      if (!inserted) it->second = it->second + v;
    }

  std::vector<typename Polynomial<K>::Term> terms;
  terms.reserve(merged.size());
  std::vector<Variable> vars;
  for (auto& [k, v] : merged) {
    if (is_zero(v)) continue;
    vars.clear();
    const std::size_t step = wide ? 2 : 1;
    for (std::size_t p = 0; p < k.size(); p += step) {
      Variable var = static_cast<unsigned char>(k[p]);
      if (wide) var |= static_cast<Variable>(static_cast<unsigned char>(k[p + 1])) << 8;
      vars.push_back(var);
    }
    terms.emplace_back(Monomial::from_sorted_variables(vars.data(), vars.data() + vars.size()), v);
  }
  return Polynomial<K>::from_terms(std::move(terms));
}

/// Memo of cycle factors keyed by the vertex sequence (cycles are stored
/// starting at their minimum, so equal keys mean equal cycles). Cycles longer
/// than `max_length` are not cached.
template <class K>
class CycleFactorCache {
 public:
  explicit CycleFactorCache(std::size_t max_length = 8) : max_length_(max_length) {}

  template <class Compute>
  const K& get(std::span<const std::uint32_t> cycle, Compute&& compute) {
    if (cycle.size() > max_length_) {
      scratch_ = compute(cycle);
      return scratch_;
    }
    key_.assign(reinterpret_cast<const char*>(cycle.data()), cycle.size() * sizeof(std::uint32_t));
    auto it = cache_.find(key_);
    if (it == cache_.end()) it = cache_.emplace(key_, compute(cycle)).first;
    return it->second;
  }

 private:
  std::size_t max_length_;
  std::string key_;
  K scratch_;
  std::unordered_map<std::string, K> cache_;
};

}  // namespace mtt
