#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace mtt {

using Variable = std::uint32_t;

/// Names an indeterminate for rendering, e.g. 3 -> "a1_5".
using VariableNamer = std::function<std::string(Variable)>;

inline std::string default_variable_name(Variable v) { return "x" + std::to_string(v); }

/// Sparse exponent vector: (variable, exponent) pairs sorted by variable,
/// exponents strictly positive.
class Monomial {
 public:
  using Factor = std::pair<Variable, std::uint32_t>;

  Monomial() = default;

  static Monomial variable(Variable v, std::uint32_t exponent = 1) {
    Monomial m;
    if (exponent > 0) m.factors_.emplace_back(v, exponent);
    return m;
  }

  /// From a multiset of variables given as a sorted list.
  static Monomial from_sorted_variables(const Variable* begin, const Variable* end) {
    Monomial m;
    for (const Variable* p = begin; p != end; ++p) {
      if (!m.factors_.empty() && m.factors_.back().first == *p)
        ++m.factors_.back().second;
      else
        m.factors_.emplace_back(*p, 1);
    }
    return m;
  }

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }

  std::uint32_t exponent(Variable v) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{v, 0});
    return it != factors_.end() && it->first == v ? it->second : 0;
  }

  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (const auto& f : factors_) d += f.second;
    return d;
  }

  std::uint32_t max_exponent() const {
    std::uint32_t d = 0;
    for (const auto& f : factors_) d = std::max(d, f.second);
    return d;
  }

  /// Apply a variable substitution v -> map(v) (used for a_ij = a_ji identification).
  template <class Map>
  Monomial renamed(Map&& map) const {
    std::vector<Variable> vars;
    for (const auto& [v, e] : factors_)
      for (std::uint32_t t = 0; t < e; ++t) vars.push_back(map(v));
    std::sort(vars.begin(), vars.end());
    return from_sorted_variables(vars.data(), vars.data() + vars.size());
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin();
    auto j = b.factors_.begin();
    while (i != a.factors_.end() || j != b.factors_.end()) {
      if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
        out.factors_.push_back(*i++);
      } else if (i == a.factors_.end() || j->first < i->first) {
        out.factors_.push_back(*j++);
      } else {
        out.factors_.emplace_back(i->first, i->second + j->second);
        ++i;
        ++j;
      }
    }
    return out;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  /// Lexicographic order on the dense exponent vectors (e_0, e_1, ...):
  /// the first variable where the exponents differ decides.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    auto i = a.factors_.begin();
    auto j = b.factors_.begin();
    for (; i != a.factors_.end() && j != b.factors_.end(); ++i, ++j) {
      if (i->first != j->first)
        // a has a positive exponent where b has zero
        return i->first < j->first ? std::strong_ordering::greater : std::strong_ordering::less;
      if (i->second != j->second) return i->second <=> j->second;
    }
    if (i != a.factors_.end()) return std::strong_ordering::greater;
    if (j != b.factors_.end()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
  }

  std::string to_string(const VariableNamer& name) const {
    std::string out;
    for (const auto& [v, e] : factors_) {
      if (!out.empty()) out += '*';
      out += name(v);
      if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
  }

 private:
  std::vector<Factor> factors_;
};

}  // namespace mtt
