#pragma once

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "mtt/algebra/polynomial.hpp"
#include "mtt/algebra/trace.hpp"
#include "mtt/determinant/permutation.hpp"
#include "mtt/parallel.hpp"

namespace mtt {

inline constexpr std::size_t kDefaultDeterminantCap = 10;
inline constexpr const char* kDeterminantCapEnv = "MTT_DET_CAP";

/// The determinant size cap: MTT_DET_CAP if set to a positive integer, else 10.
inline std::size_t determinant_cap_from_env() {
  if (const char* env = std::getenv(kDeterminantCapEnv)) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultDeterminantCap;
}

struct DetOptions {
  std::size_t size_cap = determinant_cap_from_env();
  bool force = false;
  std::size_t threads = 1;
};

inline void check_determinant_size(std::size_t k, const DetOptions& opt) {
  require(k >= 1, "determinant of an empty matrix");
  // Subset tables are indexed by 32-bit masks.
  require(k <= 30, "tau-determinant supports at most 30 rows");
  if (k > opt.size_cap && !opt.force)
    throw CapExceeded("tau-determinant of size " + std::to_string(k) + " exceeds the cap of " +
                      std::to_string(opt.size_cap) + " (use --force-large or " + kDeterminantCapEnv + ")");
}

/// τ-determinant
///
///   det_τ(M) = Σ_σ ε(σ) Π_{cycles (i1 ... ir) of σ} τ(M_{i1 i2} M_{i2 i3} ··· M_{ir i1}),
///
/// fixed points contributing τ(M_ii). Entries are multiplied in cyclic order,
/// which matters for noncommutative H; τ then lands in the commutative ring
/// K, where the cycle factors of one permutation commute.
///
/// The sum is organized by the vertex set X of the cycle through the
/// smallest remaining index: det_τ(S) = Σ_{X ∋ min S} (-1)^{|X|-1} C(X) det_τ(S \ X),
/// where C(X) is the τ-image of the sum over all cyclic orders of X. C(X)
/// comes from a path table (paths from min X through larger indices), so
/// no permutation is ever visited twice and zero entries prune whole branches.
template <class Trace>
Polynomial<typename Trace::target_type> tau_det(const SquareMatrix<Polynomial<typename Trace::source_type>>& m,
                                                const Trace& trace, const DetOptions& opt = {}) {
  using H = typename Trace::source_type;
  using K = typename Trace::target_type;
  using RP = Polynomial<H>;
  using SP = Polynomial<K>;
  const std::size_t k = m.size();
  check_determinant_size(k, opt);
  const std::uint32_t full = (k == 32) ? ~0U : ((1U << k) - 1U);

  // C(X) for every vertex set X.
  std::vector<SP> cycle_sum(std::size_t{1} << k);
  parallel_for(k, opt.threads, [&](std::size_t s) {
    cycle_sum[1U << s] = apply_trace(trace, m(s, s));
    const std::size_t free = k - s - 1;  // vertices above s
    if (free == 0) return;
    // paths[mask][v]: sum of products along paths s -> ... -> v visiting exactly
    // mask (bit t of mask stands for vertex s + 1 + t).
    std::vector<std::vector<RP>> paths(std::size_t{1} << free, std::vector<RP>(free));
    for (std::size_t t = 0; t < free; ++t) paths[1U << t][t] = m(s, s + 1 + t);
    for (std::uint32_t mask = 1; mask < (1U << free); ++mask) {
      RP closing;
      for (std::size_t t = 0; t < free; ++t) {
        if (!(mask & (1U << t))) continue;
        const RP& p = paths[mask][t];
        if (p.is_zero()) continue;
        const std::size_t v = s + 1 + t;
        if (!m(v, s).is_zero()) closing += p * m(v, s);
        for (std::size_t u = 0; u < free; ++u) {
          if (mask & (1U << u)) continue;
          const RP& e = m(v, s + 1 + u);
          if (!e.is_zero()) paths[mask | (1U << u)][u] += p * e;
        }
      }
      paths[mask].clear();
      paths[mask].shrink_to_fit();
      if (!closing.is_zero()) cycle_sum[(mask << (s + 1)) | (1U << s)] = apply_trace(trace, closing);
    }
  });

  // det over subsets. Only S = full or S without vertex 0 are ever needed.
  std::vector<SP> det(std::size_t{1} << k);
  det[0] = SP(K(1));
  std::vector<std::vector<std::uint32_t>> levels(k + 1);
  for (std::uint32_t s = 1; s <= full; ++s) {
    if ((s & 1U) && s != full) continue;
    levels[static_cast<std::size_t>(std::popcount(s))].push_back(s);
    if (s == full) break;
  }
  for (std::size_t level = 1; level <= k; ++level) {
    const auto& sets = levels[level];
    parallel_for(sets.size(), opt.threads, [&](std::size_t idx) {
      const std::uint32_t s = sets[idx];
      const std::uint32_t low = s & (~s + 1U);
      const std::uint32_t rest = s ^ low;
      SP acc;
      // Enumerate submasks t of rest, including 0.
      for (std::uint32_t t = rest;; t = (t - 1) & rest) {
        const std::uint32_t x = t | low;
        const SP& c = cycle_sum[x];
        const SP& d = det[s ^ x];
        if (!c.is_zero() && !d.is_zero()) {
          SP term = c * d;
          if (std::popcount(x) % 2 == 0) acc -= term;
          else acc += term;
        }
        if (t == 0) break;
      }
      det[s] = std::move(acc);
    });
  }
  return det[full];
}

/// Reference τ-determinant: literal sum over all permutations, generated in
/// cycle form. Exponential (k!) and used to cross-check tau_det.
template <class Trace>
Polynomial<typename Trace::target_type> tau_det_by_permutations(
    const SquareMatrix<Polynomial<typename Trace::source_type>>& m, const Trace& trace, const DetOptions& opt = {}) {
  using H = typename Trace::source_type;
  using K = typename Trace::target_type;
  check_determinant_size(m.size(), opt);
  Polynomial<K> sum;
  for_each_permutation_cycle_form(m.size(), [&](const PermutationCycleForm& sigma) {
    Polynomial<K> term{K(sigma.sign())};
    for (std::size_t f : sigma.fixed_points) {
      term *= apply_trace(trace, m(f, f));
      if (term.is_zero()) return;
    }
    for (const auto& c : sigma.cycles) {
      Polynomial<H> product = m(c[0], c[1]);
      for (std::size_t t = 1; t < c.size(); ++t) product *= m(c[t], c[(t + 1) % c.size()]);
      term *= apply_trace(trace, product);
      if (term.is_zero()) return;
    }
    sum += term;
  });
  return sum;
}

}  // namespace mtt
