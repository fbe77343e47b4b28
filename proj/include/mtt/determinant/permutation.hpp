#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace mtt {

/// A permutation of {0..size-1} given by its cycles of length >= 2 and its
/// fixed points. Cycles start at their smallest element.
struct PermutationCycleForm {
  std::size_t size = 0;
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<std::size_t> fixed_points;

  /// ε(σ) = Π over cycles of (-1)^(length-1).
  int sign() const {
    int s = 1;
    for (const auto& c : cycles)
      if (c.size() % 2 == 0) s = -s;
    return s;
  }
};

/// Visits every permutation of {0..k-1} exactly once, built directly as a
/// set partition into cyclically ordered blocks.
inline void for_each_permutation_cycle_form(std::size_t k,
                                            const std::function<void(const PermutationCycleForm&)>& visit) {
  PermutationCycleForm current;
  current.size = k;
  std::vector<bool> used(k, false);
  std::vector<std::size_t> cycle;

  std::function<void()> next_cycle;
  std::function<void()> extend = [&] {
    // Close the current cycle here...
    if (cycle.size() == 1) current.fixed_points.push_back(cycle[0]);
    else current.cycles.push_back(cycle);
    next_cycle();
    if (cycle.size() == 1) current.fixed_points.pop_back();
    else current.cycles.pop_back();
    // ...or continue it with any unused larger element.
    for (std::size_t v = cycle[0] + 1; v < k; ++v) {
      if (used[v]) continue;
      used[v] = true;
      cycle.push_back(v);
      extend();
      cycle.pop_back();
      used[v] = false;
    }
  };
  next_cycle = [&] {
    std::size_t start = 0;
    while (start < k && used[start]) ++start;
    if (start == k) {
      visit(current);
      return;
    }
    std::vector<std::size_t> saved;
    saved.swap(cycle);
    used[start] = true;
    cycle.push_back(start);
    extend();
    used[start] = false;
    cycle.swap(saved);
  };
  next_cycle();
}

}  // namespace mtt
