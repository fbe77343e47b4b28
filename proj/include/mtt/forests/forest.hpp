#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mtt/error.hpp"

namespace mtt {

/// A cycle-and-well-rooted spanning forest: one out-edge per inner vertex,
/// target[i] = head of the edge leaving inner vertex i. Vertices are 0-based;
/// inner vertices are {0..m-1}, every other vertex is in the well.
struct Forest {
  std::vector<std::uint32_t> target;

  friend bool operator==(const Forest&, const Forest&) = default;
};

/// Flat list of disjoint simple cycles. Each cycle starts at its smallest vertex
/// and follows the edge direction.
class CycleList {
 public:
  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  bool empty() const { return size() == 0; }

  std::span<const std::uint32_t> operator[](std::size_t c) const {
    return {vertices_.data() + offsets_[c], offsets_[c + 1] - offsets_[c]};
  }

  void clear() {
    vertices_.clear();
    offsets_.assign(1, 0);
  }
  void push_back(std::span<const std::uint32_t> cycle) {
    if (offsets_.empty()) offsets_.push_back(0);
    // rotate so the smallest vertex comes first
    std::size_t start = 0;
    for (std::size_t t = 1; t < cycle.size(); ++t)
      if (cycle[t] < cycle[start]) start = t;
    for (std::size_t t = 0; t < cycle.size(); ++t) vertices_.push_back(cycle[(start + t) % cycle.size()]);
    offsets_.push_back(vertices_.size());
  }

 private:
  std::vector<std::uint32_t> vertices_;
  std::vector<std::size_t> offsets_{0};
};

/// Cycle detection in a functional graph on the inner vertices with
/// three-colour marking; buffers are reused between calls.
class CycleFinder {
 public:
  /// Fills `cycles` from target[0..inner); targets >= inner are well vertices.
  /// Also records, for every inner vertex, whether it lies on a cycle.
  void find(std::span<const std::uint32_t> target, CycleList& cycles) {
    const std::size_t inner = target.size();
    cycles.clear();
    state_.assign(inner, kUnvisited);
    on_cycle_.assign(inner, 0);
    position_.resize(inner);
    for (std::size_t u = 0; u < inner; ++u) {
      if (state_[u] != kUnvisited) continue;
      stack_.clear();
      std::uint32_t v = static_cast<std::uint32_t>(u);
      while (v < inner && state_[v] == kUnvisited) {
        state_[v] = kOnPath;
        position_[v] = stack_.size();
        stack_.push_back(v);
        v = target[v];
      }
      if (v < inner && state_[v] == kOnPath) {
        std::span<const std::uint32_t> cycle(stack_.data() + position_[v], stack_.size() - position_[v]);
        for (auto w : cycle) on_cycle_[w] = 1;
        cycles.push_back(cycle);
      }
      for (auto w : stack_) state_[w] = kDone;
    }
  }

  bool on_cycle(std::size_t u) const { return on_cycle_[u] != 0; }

 private:
  static constexpr unsigned char kUnvisited = 0, kOnPath = 1, kDone = 2;
  std::vector<unsigned char> state_;
  std::vector<unsigned char> on_cycle_;
  std::vector<std::size_t> position_;
  std::vector<std::uint32_t> stack_;
};

struct CycleDecomposition {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> tree_edges;
};

/// Splits F into its unicycle cycles and the remaining (tree) edges.
inline CycleDecomposition classify_forest(const Forest& forest, std::size_t n, std::size_t m) {
  require(forest.target.size() == m, "forest must have exactly one out-edge per inner vertex");
  for (std::size_t i = 0; i < m; ++i)
    require(forest.target[i] < n && forest.target[i] != i, "forest edge out of range or a self-loop");
  CycleFinder finder;
  CycleList list;
  finder.find(forest.target, list);
  CycleDecomposition out;
  for (std::size_t c = 0; c < list.size(); ++c) out.cycles.emplace_back(list[c].begin(), list[c].end());
  for (std::uint32_t i = 0; i < m; ++i)
    if (!finder.on_cycle(i)) out.tree_edges.emplace_back(i, forest.target[i]);
  return out;
}

/// Cycle orientation kept as class representative: the second vertex is
/// smaller than the last one. 2-cycles are their own reverse.
inline bool canonical_orientation(std::span<const std::uint32_t> cycle) {
  return cycle.size() < 3 || cycle[1] < cycle[cycle.size() - 1];
}

inline std::string to_string(const Forest& f) {
  std::string out;
  for (std::size_t i = 0; i < f.target.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(i + 1) + "->" + std::to_string(f.target[i] + 1);
  }
  return out;
}

}  // namespace mtt
