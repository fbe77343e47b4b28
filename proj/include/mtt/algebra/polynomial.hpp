#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "mtt/algebra/monomial.hpp"
#include "mtt/algebra/ring.hpp"

namespace mtt {

/// Sparse polynomial in central commuting indeterminates with coefficients
/// in a possibly noncommutative ring C. Terms are kept sorted by the
/// monomial order and never hold a zero coefficient, so two polynomials are
/// equal iff their term lists are equal.
template <RingElement C>
class Polynomial {
 public:
  using coefficient_type = C;
  using Term = std::pair<Monomial, C>;

  Polynomial() = default;
  explicit Polynomial(const C& constant) {
    if (!mtt::is_zero(constant)) terms_.emplace_back(Monomial{}, constant);
  }

  static Polynomial variable(Variable v, const C& coefficient = C(1)) {
    return monomial(Monomial::variable(v), coefficient);
  }
  static Polynomial monomial(Monomial m, const C& coefficient) {
    Polynomial p;
    if (!mtt::is_zero(coefficient)) p.terms_.emplace_back(std::move(m), coefficient);
    return p;
  }
  /// Builds from arbitrary (possibly repeated, unsorted) terms.
  static Polynomial from_terms(std::vector<Term> terms) {
    Polynomial p;
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  C coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) { return t.first < key; });
    return it != terms_.end() && it->first == m ? it->second : C(0);
  }

  /// The constant coefficient (value at the origin).
  C constant_term() const { return coefficient(Monomial{}); }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
        out.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->first < i->first) {
        out.terms_.push_back(*j++);
      } else {
        C c = i->second + j->second;
        if (!mtt::is_zero(c)) out.terms_.emplace_back(i->first, std::move(c));
        ++i;
        ++j;
      }
    }
    return out;
  }
  friend Polynomial operator-(const Polynomial& a) {
    Polynomial out = a;
    for (auto& t : out.terms_) t.second = -t.second;
    return out;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  /// Coefficients multiply as a_coef * b_coef; order matters when C is noncommutative.
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Term> products;
    products.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        C c = ca * cb;
        if (!mtt::is_zero(c)) products.emplace_back(ma * mb, std::move(c));
      }
    return from_terms(std::move(products));
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  /// c·P (left scalar multiplication).
  friend Polynomial operator*(const C& c, const Polynomial& p) {
    Polynomial out;
    for (const auto& [m, x] : p.terms_) {
      C y = c * x;
      if (!mtt::is_zero(y)) out.terms_.emplace_back(m, std::move(y));
    }
    return out;
  }

  /// Applies f to every coefficient; exponent vectors are unchanged.
  template <class F>
  auto map_coefficients(F&& f) const {
    using D = std::decay_t<std::invoke_result_t<F, const C&>>;
    Polynomial<D> out;
    std::vector<std::pair<Monomial, D>> terms;
    terms.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
      D d = f(c);
      if (!mtt::is_zero(d)) terms.emplace_back(m, std::move(d));
    }
    return Polynomial<D>::from_sorted_terms(std::move(terms));
  }

  /// Substitutes variables (the result is renormalized, terms may merge).
  template <class Map>
  Polynomial rename_variables(Map&& map) const {
    std::vector<Term> terms;
    terms.reserve(terms_.size());
    for (const auto& [m, c] : terms_) terms.emplace_back(m.renamed(map), c);
    return from_terms(std::move(terms));
  }

  /// Evaluates at an assignment variable -> C. Each term is evaluated as
  /// c · v_0^e_0 · v_1^e_1 ··· in increasing variable order.
  template <class Assignment>
  C evaluate(Assignment&& value_of) const {
    C sum(0);
    for (const auto& [m, c] : terms_) {
      C t = c;
      for (const auto& [v, e] : m.factors()) {
        const C& x = value_of(v);
        for (std::uint32_t k = 0; k < e; ++k) t = t * x;
      }
      sum = sum + t;
    }
    return sum;
  }

  std::string to_string(const VariableNamer& name = default_variable_name) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      append_term(out, m, c, name, first);
      first = false;
    }
    return out;
  }

  static std::string term_to_string(const Monomial& m, const C& c, const VariableNamer& name) {
    std::string out;
    append_term(out, m, c, name, true);
    return out;
  }

  // Internal: caller guarantees strictly increasing monomials and nonzero coefficients.
  static Polynomial from_sorted_terms(std::vector<Term> terms) {
    Polynomial p;
    p.terms_ = std::move(terms);
    return p;
  }

 private:
  static void append_term(std::string& out, const Monomial& m, const C& c,
                          const VariableNamer& name, bool first) {
    const std::string vars = m.to_string(name);
    if constexpr (std::is_same_v<C, Rational>) {
      Rational mag = abs(c);
      if (!first) out += sgn(c) < 0 ? " - " : " + ";
      else if (sgn(c) < 0) out += '-';
      if (vars.empty()) {
        out += mtt::to_string(mag);
      } else {
        if (mag != 1) out += mtt::to_string(mag) + "*";
        out += vars;
      }
    } else {
      if (!first) out += " + ";
      out += "(" + mtt::to_string(c) + ")";
      if (!vars.empty()) out += "*" + vars;
    }
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().first == t.first)
        merged.back().second = merged.back().second + t.second;
      else
        merged.push_back(std::move(t));
    }
    terms_.clear();
    for (auto& t : merged)
      if (!mtt::is_zero(t.second)) terms_.push_back(std::move(t));
  }

  std::vector<Term> terms_;
};

template <class C>
bool is_zero(const Polynomial<C>& p) {
  return p.is_zero();
}

/// The first monomial (in canonical order) where P and Q disagree, rendered
/// as "<monomial>: <coef in P> vs <coef in Q>".
template <class C>
std::optional<std::string> first_difference(const Polynomial<C>& p, const Polynomial<C>& q,
                                             const VariableNamer& name) {
  auto i = p.terms().begin();
  auto j = q.terms().begin();
  auto render = [&](const Monomial& m, const C& a, const C& b) {
    std::string mono = m.is_one() ? "1" : m.to_string(name);
    return mono + ": " + to_string(a) + " vs " + to_string(b);
  };
  while (i != p.terms().end() || j != q.terms().end()) {
    if (j == q.terms().end() || (i != p.terms().end() && i->first < j->first))
      return render(i->first, i->second, C(0));
    if (i == p.terms().end() || j->first < i->first) return render(j->first, C(0), j->second);
    if (!(i->second == j->second)) return render(i->first, i->second, j->second);
    ++i;
    ++j;
  }
  return std::nullopt;
}

/// Evaluation at a finite assignment; every occurring variable must be assigned.
template <class C>
C specialize(const Polynomial<C>& p, const std::map<Variable, C>& assignment) {
  return p.evaluate([&](Variable v) -> const C& {
    auto it = assignment.find(v);
    if (it == assignment.end()) throw InputError("no value assigned to variable " + default_variable_name(v));
    return it->second;
  });
}

/// poly_trace: τ applied coefficientwise, R = H[a] -> S = K[a].
template <class Trace>
Polynomial<typename Trace::target_type> apply_trace(const Trace& trace,
                                                    const Polynomial<typename Trace::source_type>& p) {
  return p.map_coefficients([&](const auto& c) { return typename Trace::target_type(trace(c)); });
}

}  // namespace mtt
