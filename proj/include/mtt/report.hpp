#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "mtt/algebra/polynomial.hpp"

namespace mtt {

/// Outcome of one theorem check. Identity checks compare two canonical
/// polynomial texts; property checks (cancellation, positivity) list the
/// offending monomials instead.
struct VerificationReport {
  std::string theorem;
  std::string instance;  // short human label
  std::string digest;
  std::string lhs_label = "LHS";
  std::string rhs_label = "RHS";
  std::string lhs;
  std::string rhs;
  std::size_t lhs_terms = 0;
  std::size_t rhs_terms = 0;
  bool equal = false;
  bool skipped = false;
  std::string note;
  std::optional<std::string> first_difference;
  std::vector<std::string> counterexamples;
  double lhs_seconds = 0;
  double rhs_seconds = 0;

  bool passed() const { return skipped || equal; }

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// Fills the identity fields of a report from two polynomials.
template <class C>
void set_identity(VerificationReport& r, const Polynomial<C>& lhs, const Polynomial<C>& rhs,
                  const VariableNamer& namer) {
  r.lhs = lhs.to_string(namer);
  r.rhs = rhs.to_string(namer);
  r.lhs_terms = lhs.term_count();
  r.rhs_terms = rhs.term_count();
  r.equal = r.lhs == r.rhs;
  r.first_difference = r.equal ? std::nullopt : first_difference(lhs, rhs, namer);
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace mtt
