#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mtt/algebra/sampling.hpp"
#include "mtt/algebra/trace.hpp"

namespace mtt {

struct PropertyCheck {
  bool passed = true;
  std::size_t samples = 0;
  std::optional<std::string> witness;  // first failing sample, rendered
};

/// Structured probe elements tried before random samples: the standard basis
/// of each ring, so that failures on basis pairs are reported first.
template <class T>
std::vector<T> basis_probes(const ElementSampler<T>& sampler) {
  if constexpr (std::is_same_v<T, Quaternion>) {
    return {Quaternion(1), Quaternion::i(), Quaternion::j(), Quaternion::k()};
  } else if constexpr (std::is_same_v<T, Gaussian>) {
    return {Gaussian(1), Gaussian(0, 1)};
  } else if constexpr (std::is_same_v<T, GroupRingElement>) {
    std::vector<T> out;
    for (std::size_t e = 0; e < sampler.modulus; ++e)
      out.push_back(GroupRingElement::generator_power(sampler.modulus, static_cast<long>(e)));
    return out;
  } else if constexpr (is_square_matrix_v<T>) {
    std::vector<T> out;
    for (std::size_t i = 0; i < sampler.fiber; ++i)
      for (std::size_t j = 0; j < sampler.fiber; ++j) {
        T e(sampler.fiber);
        e(i, j) = typename T::value_type(1);
        out.push_back(e);
      }
    return out;
  } else {
    return {T(1)};
  }
}

/// Checks τ(xy) = τ(yx) on all basis pairs, then on `trials` random pairs.
template <class Trace>
PropertyCheck check_centrality(const Trace& trace, const ElementSampler<typename Trace::source_type>& sampler,
                               std::uint64_t seed, std::size_t trials) {
  require(trials >= 1, "centrality check needs at least one trial");
  using H = typename Trace::source_type;
  PropertyCheck result;
  auto test = [&](const H& x, const H& y) {
    ++result.samples;
    auto xy = trace(x * y);
    auto yx = trace(y * x);
    if (!(xy == yx)) {
      result.passed = false;
      result.witness = "x=" + to_string(x) + ", y=" + to_string(y) + ": tau(xy)=" + to_string(xy) +
                       ", tau(yx)=" + to_string(yx);
    }
    return result.passed;
  };
  auto probes = basis_probes(sampler);
  for (const auto& x : probes)
    for (const auto& y : probes)
      if (!test(x, y)) return result;
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t)
    if (!test(sampler.general(rng), sampler.general(rng))) return result;
  return result;
}

template <class Trace>
PropertyCheck check_additivity(const Trace& trace, const ElementSampler<typename Trace::source_type>& sampler,
                               std::uint64_t seed, std::size_t trials) {
  PropertyCheck result;
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    auto x = sampler.general(rng);
    auto y = sampler.general(rng);
    ++result.samples;
    if (!(trace(x + y) == trace(x) + trace(y))) {
      result.passed = false;
      result.witness = "x=" + to_string(x) + ", y=" + to_string(y);
      return result;
    }
  }
  return result;
}

/// Associativity, both distributive laws, additive inverse and the unit.
template <class T>
PropertyCheck check_ring_axioms(const ElementSampler<T>& sampler, std::uint64_t seed, std::size_t trials) {
  PropertyCheck result;
  Rng rng(seed);
  const T one = [&] {
    if constexpr (is_square_matrix_v<T>) return T::identity(sampler.fiber);
    else return T(1);
  }();
  for (std::size_t t = 0; t < trials; ++t) {
    T x = sampler.general(rng), y = sampler.general(rng), z = sampler.general(rng);
    ++result.samples;
    const char* failed = nullptr;
    if (!((x * y) * z == x * (y * z))) failed = "associativity";
    else if (!(x * (y + z) == x * y + x * z)) failed = "left distributivity";
    else if (!((x + y) * z == x * z + y * z)) failed = "right distributivity";
    else if (!((x + y) + z == x + (y + z))) failed = "additive associativity";
    else if (!is_zero(x + (-x))) failed = "additive inverse";
    else if (!(x * one == x && one * x == x)) failed = "unit";
    if (failed) {
      result.passed = false;
      result.witness = std::string(failed) + " fails at x=" + to_string(x) + ", y=" + to_string(y) +
                       ", z=" + to_string(z);
      return result;
    }
  }
  return result;
}

}  // namespace mtt
