#include <gtest/gtest.h>

#include <set>

#include "mtt/algebra/sampling.hpp"
#include "mtt/determinant/bareiss.hpp"
#include "mtt/forests/mtkz.hpp"
#include "mtt/graph/instance_io.hpp"

using namespace mtt;

namespace {

using RatInst = GraphInstance<Rational, IdentityTrace<Rational>>;
using QuatInst = GraphInstance<Quaternion, RealPartTrace<Quaternion>>;

RatInst rational_instance(std::size_t n, std::size_t m, WeightMode mode = WeightMode::symbolic) {
  return make_instance<Rational, IdentityTrace<Rational>>(n, m, Rational(1), mode);
}

Polynomial<Rational> a(std::size_t n, std::size_t i, std::size_t j) {
  return Polynomial<Rational>::variable(EdgeIndex(n)(i - 1, j - 1));
}

SquareMatrix<Integer> specialize_to_integers(const SquareMatrix<Polynomial<Rational>>& m) {
  SquareMatrix<Integer> z(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      Rational v = m(i, j).evaluate([](Variable) { return Rational(1); });
      z(i, j) = v.get_num();
    }
  return z;
}

}  // namespace

TEST(Laplacian, TwoVertices) {
  auto inst = rational_instance(2, 2);
  inst.h(0, 1) = Rational(3);
  inst.h(1, 0) = Rational(-1, 2);
  auto lap = build_laplacian(inst);
  EXPECT_EQ(lap(0, 0), a(2, 1, 2));
  EXPECT_EQ(lap(0, 1), Rational(-3) * a(2, 1, 2));
  EXPECT_EQ(lap(1, 0), Rational(1, 2) * a(2, 2, 1));
  EXPECT_EQ(lap(1, 1), a(2, 2, 1));
  auto sub = principal_submatrix(lap, 1);
  ASSERT_EQ(sub.size(), 1u);
  EXPECT_EQ(sub(0, 0), a(2, 1, 2));
}

TEST(Laplacian, ShapeAndRowSums) {
  auto inst = rational_instance(4, 4);
  auto lap = build_laplacian(inst);
  EXPECT_EQ(lap(0, 0), a(4, 1, 2) + a(4, 1, 3) + a(4, 1, 4));
  for (std::size_t i = 0; i < 4; ++i) {
    Polynomial<Rational> row;
    for (std::size_t j = 0; j < 4; ++j) {
      row += lap(i, j);
      if (i == j) EXPECT_EQ(lap(i, j).term_count(), 3u);
      else EXPECT_EQ(lap(i, j).term_count(), 1u);
    }
    EXPECT_TRUE(row.is_zero());
  }
  EXPECT_EQ(principal_submatrix(lap, 4), lap);
  EXPECT_THROW(principal_submatrix(lap, 5), InputError);
  EXPECT_THROW(principal_submatrix(lap, 0), InputError);
}

TEST(Laplacian, ThreeVertexBlock) {
  auto inst = rational_instance(3, 2);
  auto sub = principal_submatrix(build_laplacian(inst), 2);
  EXPECT_EQ(sub(0, 0), a(3, 1, 2) + a(3, 1, 3));
  EXPECT_EQ(sub(0, 1), -a(3, 1, 2));
  EXPECT_EQ(sub(1, 0), -a(3, 2, 1));
  EXPECT_EQ(sub(1, 1), a(3, 2, 1) + a(3, 2, 3));
}

TEST(Laplacian, SymmetricNaming) {
  auto inst = rational_instance(3, 3, WeightMode::symmetric);
  auto lap = build_laplacian(inst);
  EXPECT_EQ(lap(1, 0).to_string(inst.namer()), "-a1_2");
  EXPECT_EQ(lap(2, 1).to_string(inst.namer()), "-a2_3");
  EXPECT_EQ(build_laplacian(inst), lap);
}

TEST(Determinant, SmallCases) {
  auto inst = rational_instance(2, 1);
  auto m = principal_submatrix(build_laplacian(inst), 1);
  EXPECT_EQ(tau_det(m, IdentityTrace<Rational>{}), a(2, 1, 2));

  using P = Polynomial<Rational>;
  auto two = SquareMatrix<P>::from_rows({{P::variable(0), P::variable(1)}, {P::variable(2), P::variable(3)}});
  EXPECT_EQ(tau_det(two, IdentityTrace<Rational>{}), P::variable(0) * P::variable(3) - P::variable(1) * P::variable(2));
}

TEST(Determinant, HermitianQuaternionTwoByTwo) {
  using P = Polynomial<Quaternion>;
  Quaternion q(1, 2, -1, 3);
  auto m = SquareMatrix<P>::from_rows({{P(Quaternion(Rational(5))), P(q)}, {P(conj(q)), P(Quaternion(Rational(-2, 3)))}});
  auto d = tau_det(m, RealPartTrace<Quaternion>{});
  EXPECT_EQ(d, Polynomial<Rational>(Rational(5) * Rational(-2, 3) - norm2(q)));
}

TEST(Determinant, Bareiss) {
  EXPECT_EQ(det_bareiss(SquareMatrix<Integer>::identity(5)), 1);
  EXPECT_EQ(det_bareiss(SquareMatrix<Integer>::from_rows({{1, 2}, {3, 4}})), -2);
  EXPECT_EQ(det_bareiss(SquareMatrix<Integer>::from_rows({{0, 1}, {1, 0}})), -1);
  EXPECT_EQ(det_exact_commutative(SquareMatrix<Rational>::from_rows({{Rational(1, 2), 1}, {1, 4}})), Rational(1));
  auto k4 = principal_submatrix(build_laplacian(rational_instance(4, 3)), 3);
  EXPECT_EQ(det_bareiss(specialize_to_integers(k4)), 16);
}

TEST(Determinant, PermutationEnumerationCounts) {
  std::size_t factorial = 1;
  for (std::size_t k = 1; k <= 7; ++k) {
    factorial *= k;
    std::size_t count = 0;
    int sign_sum = 0;
    std::set<std::vector<std::size_t>> seen;
    for_each_permutation_cycle_form(k, [&](const PermutationCycleForm& s) {
      ++count;
      sign_sum += s.sign();
      std::vector<std::size_t> image(k);
      for (auto f : s.fixed_points) image[f] = f;
      for (const auto& c : s.cycles)
        for (std::size_t t = 0; t < c.size(); ++t) image[c[t]] = c[(t + 1) % c.size()];
      seen.insert(image);
    });
    EXPECT_EQ(count, factorial);
    EXPECT_EQ(seen.size(), factorial);
    EXPECT_EQ(sign_sum, k == 1 ? 1 : 0);
  }
}

TEST(Determinant, CapIsEnforced) {
  auto m = SquareMatrix<Polynomial<Rational>>::identity(11);
  DetOptions opt;
  opt.size_cap = 10;
  EXPECT_THROW(tau_det(m, IdentityTrace<Rational>{}, opt), CapExceeded);
  opt.force = true;
  EXPECT_EQ(tau_det(m, IdentityTrace<Rational>{}, opt), Polynomial<Rational>(Rational(1)));
}

namespace {

template <class H>
SquareMatrix<Polynomial<H>> random_matrix(Rng& rng, std::size_t k, const ElementSampler<H>& s, double density) {
  SquareMatrix<Polynomial<H>> m(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (rng.below(1000) >= density * 1000) continue;
      m(i, j) = Polynomial<H>::variable(static_cast<Variable>(rng.below(6)), s.general(rng)) +
                Polynomial<H>(s.general(rng));
    }
  return m;
}

}  // namespace

TEST(Determinant, CycleSetExpansionMatchesPermutationSum) {
  Rng rng(2024);
  for (std::size_t k = 1; k <= 6; ++k) {
    auto q = random_matrix(rng, k, ElementSampler<Quaternion>{}, 0.8);
    EXPECT_EQ(tau_det(q, RealPartTrace<Quaternion>{}), tau_det_by_permutations(q, RealPartTrace<Quaternion>{}));
    auto g = random_matrix(rng, k, ElementSampler<GroupRingElement>{3}, 0.7);
    EXPECT_EQ(tau_det(g, IdentityTrace<GroupRingElement>{}),
              tau_det_by_permutations(g, IdentityTrace<GroupRingElement>{}));
    DetOptions threaded;
    threaded.threads = 3;
    EXPECT_EQ(tau_det(q, RealPartTrace<Quaternion>{}, threaded), tau_det(q, RealPartTrace<Quaternion>{}));
  }
}

TEST(Determinant, AgreesWithEliminationOnSpecializedMatrices) {
  Rng rng(5);
  ElementSampler<Rational> s;
  for (std::size_t k = 1; k <= 7; ++k) {
    for (int t = 0; t < 3; ++t) {
      auto m = random_matrix(rng, k, s, 0.9);
      std::vector<Rational> values(6);
      for (auto& v : values) v = Rational(rng.range(-3, 3));
      auto at = [&](Variable v) { return values[v]; };
      SquareMatrix<Rational> spec(k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) spec(i, j) = m(i, j).evaluate(at);
      EXPECT_EQ(tau_det(m, IdentityTrace<Rational>{}).evaluate(at), det_exact_commutative(spec));
    }
  }
}

TEST(Determinant, RowAdditivityAndBlockProduct) {
  Rng rng(8);
  ElementSampler<Quaternion> s;
  RealPartTrace<Quaternion> re;
  for (std::size_t k = 2; k <= 5; ++k) {
    auto m1 = random_matrix(rng, k, s, 0.9), m2 = m1;
    const std::size_t row = rng.below(k);
    for (std::size_t j = 0; j < k; ++j) m2(row, j) = Polynomial<Quaternion>::variable(7, s.general(rng));
    auto sum = m1;
    for (std::size_t j = 0; j < k; ++j) sum(row, j) = m1(row, j) + m2(row, j);
    EXPECT_EQ(tau_det(sum, re), tau_det(m1, re) + tau_det(m2, re));
  }
  auto x = random_matrix(rng, 3, s, 0.9), y = random_matrix(rng, 2, s, 0.9);
  auto block = block_diagonal(x, y);
  EXPECT_EQ(tau_det(block, re), tau_det(x, re) * tau_det(y, re));
}

TEST(Forests, Counts) {
  EXPECT_EQ(enumerate_forests(2, 1).size(), 1u);
  EXPECT_EQ(enumerate_forests(3, 2).size(), 4u);
  EXPECT_EQ(enumerate_forests(4, 3).size(), 27u);
  auto all = enumerate_forests(4, 4);
  std::set<std::vector<std::uint32_t>> distinct;
  for (const auto& f : all) distinct.insert(f.target);
  EXPECT_EQ(distinct.size(), 81u);
  EXPECT_THROW(enumerate_forests(3, 4), InputError);
  EXPECT_THROW(enumerate_forests(3, 0), InputError);
}

TEST(Forests, Classification) {
  auto d = classify_forest(Forest{{1}}, 2, 1);
  EXPECT_TRUE(d.cycles.empty());
  ASSERT_EQ(d.tree_edges.size(), 1u);
  EXPECT_EQ(d.tree_edges[0], (std::pair<std::uint32_t, std::uint32_t>{0, 1}));

  d = classify_forest(Forest{{1, 0}}, 2, 2);
  ASSERT_EQ(d.cycles.size(), 1u);
  EXPECT_EQ(d.cycles[0], (std::vector<std::uint32_t>{0, 1}));
  EXPECT_TRUE(d.tree_edges.empty());

  d = classify_forest(Forest{{1, 2}}, 3, 2);
  EXPECT_TRUE(d.cycles.empty());
  EXPECT_EQ(d.tree_edges.size(), 2u);

  d = classify_forest(Forest{{2, 0, 1, 1}}, 5, 4);  // 1->3->2->1 plus 4->2
  ASSERT_EQ(d.cycles.size(), 1u);
  EXPECT_EQ(d.cycles[0], (std::vector<std::uint32_t>{0, 2, 1}));
  EXPECT_EQ(d.tree_edges.size(), 1u);
}

TEST(Forests, ClassOrbitsCoverEverything) {
  for (std::size_t n = 2; n <= 5; ++n)
    for (std::size_t m = 1; m <= n; ++m) {
      std::uint64_t total = 0;
      for (const auto& c : enumerate_forest_classes(n, m)) total += c.orbit_size;
      std::uint64_t expected = 1;
      for (std::size_t t = 0; t < m; ++t) expected *= n - 1;
      EXPECT_EQ(total, expected) << n << " " << m;
    }
}

TEST(ForestSum, SingleTwoCycle) {
  auto inst = rational_instance(2, 2);
  inst.h(0, 1) = Rational(3);
  inst.h(1, 0) = Rational(5);
  EXPECT_EQ(rhs_mtkz(inst), Rational(1 - 15) * (a(2, 1, 2) * a(2, 2, 1)));
}

TEST(ForestSum, NoncommutativeCycleOrder) {
  auto inst = make_instance<Quaternion, RealPartTrace<Quaternion>>(3, 3, Quaternion(1));
  inst.h(0, 1) = Quaternion::i();
  inst.h(1, 2) = Quaternion::j();
  inst.h(2, 0) = Quaternion(1, 0, 0, 1);
  auto rhs = rhs_mtkz(inst);
  // cycle 1->2->3->1 has h_c = i·j·(1+k) = k + k·k = -1 + k, trace -1
  Monomial cyc = Monomial::variable(EdgeIndex(3)(0, 1)) * Monomial::variable(EdgeIndex(3)(1, 2)) *
                 Monomial::variable(EdgeIndex(3)(2, 0));
  EXPECT_EQ(rhs.coefficient(cyc), Rational(2));
}

TEST(ForestSum, ZeroHolonomiesCountForests) {
  for (std::size_t n = 2; n <= 5; ++n)
    for (std::size_t m = 1; m <= n; ++m) {
      auto inst = make_instance<Rational, IdentityTrace<Rational>>(n, m, Rational(0), WeightMode::specialized);
      auto rhs = rhs_mtkz(inst);
      Integer expected = 1;
      for (std::size_t t = 0; t < m; ++t) expected *= Integer(n - 1);
      EXPECT_EQ(rhs, Polynomial<Rational>(Rational(expected)));
    }
}

TEST(ForestSum, ClassicalReduction) {
  auto inst = rational_instance(4, 3);
  auto rhs = rhs_mtkz(inst);
  EXPECT_EQ(rhs.term_count(), 16u);
  for (const auto& [mono, c] : rhs.terms()) EXPECT_EQ(c, Rational(1));
  EXPECT_EQ(rhs.evaluate([](Variable) { return Rational(1); }), Rational(16));
  EXPECT_EQ(lhs_graph(inst), rhs);

  for (std::size_t n = 2; n <= 5; ++n) {
    auto full = rational_instance(n, n);
    EXPECT_TRUE(rhs_mtkz(full).is_zero());
    EXPECT_TRUE(lhs_graph(full).is_zero());
  }
}

TEST(ForestSum, WellRootedForestCountsMatchElimination) {
  for (std::size_t n = 2; n <= 5; ++n)
    for (std::size_t m = 1; m < n; ++m) {
      auto inst = rational_instance(n, m);
      auto count = rhs_mtkz(inst).evaluate([](Variable) { return Rational(1); });
      auto minor = principal_submatrix(build_laplacian(inst), m);
      EXPECT_EQ(count, Rational(det_bareiss(specialize_to_integers(minor))));
    }
}

TEST(ForestSum, ThreadCountDoesNotChangeResult) {
  Rng rng(3);
  auto inst = make_instance<Quaternion, RealPartTrace<Quaternion>>(5, 4, Quaternion(1));
  ElementSampler<Quaternion> s;
  for (auto& h : inst.holonomy) h = s.general(rng);
  SumOptions one, four;
  four.threads = 4;
  EXPECT_EQ(rhs_mtkz(inst, one), rhs_mtkz(inst, four));
}

TEST(ForestSum, EnumerationCap) {
  auto inst = rational_instance(5, 5);
  SumOptions opt;
  opt.enumeration_cap = 100;
  EXPECT_THROW(rhs_mtkz(inst, opt), CapExceeded);
}

TEST(ClassSum, Examples) {
  auto inst = rational_instance(2, 2, WeightMode::symmetric);
  inst.h(0, 1) = Rational(2);
  inst.h(1, 0) = Rational(7);
  EXPECT_EQ(rhs_sym(inst), Rational(1 - 14) * (a(2, 1, 2) * a(2, 1, 2)));
  EXPECT_THROW(rhs_sym(rational_instance(2, 2)), InputError);

  auto q = make_instance<Quaternion, RealPartTrace<Quaternion>>(3, 3, Quaternion(1), WeightMode::symmetric);
  q.h(0, 1) = Quaternion::i();
  q.h(1, 2) = Quaternion::j();
  q.h(2, 0) = Quaternion(1, 0, 0, 1);
  q.h(0, 2) = Quaternion(2, 1, 0, 0);
  q.h(2, 1) = Quaternion::k();
  q.h(1, 0) = Quaternion(0, 0, 1, 1);
  RealPartTrace<Quaternion> re;
  Rational expected = 2 - re(q.h(0, 1) * q.h(1, 2) * q.h(2, 0)) - re(q.h(0, 2) * q.h(2, 1) * q.h(1, 0));
  Monomial tri = Monomial::variable(EdgeIndex(3)(0, 1)) * Monomial::variable(EdgeIndex(3)(1, 2)) *
                 Monomial::variable(EdgeIndex(3)(0, 2));
  // the 3-cycle class is the only configuration using each of a12, a23, a13 once
  EXPECT_EQ(rhs_sym(q).coefficient(tri), expected);
}

TEST(ClassSum, UnitaryForbidsTwoCycles) {
  Rng rng(17);
  ElementSampler<Gaussian> s;
  auto inst = make_instance<Gaussian, RealPartTrace<Gaussian>>(4, 4, Gaussian(1), WeightMode::symmetric);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      inst.h(i, j) = s.unit(rng);
      inst.h(j, i) = conj(inst.h(i, j));
    }
  auto rhs = rhs_sym(inst);
  for (const auto& [mono, c] : rhs.terms()) EXPECT_GE(c, 0);
  SymOptions re_form;
  re_form.real_part_form = true;
  EXPECT_EQ(rhs_sym(inst, re_form), rhs);
  auto two = inst;
  two.m = 2;
  two.n = 2;
  two.holonomy = {inst.h(0, 1), inst.h(1, 0)};
  EXPECT_TRUE(rhs_sym(two).is_zero());
}

TEST(ClassSum, MatchesIdentifiedForestSum) {
  Rng rng(21);
  ElementSampler<Quaternion> s;
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t m = 1; m <= n; ++m) {
      auto inst = make_instance<Quaternion, RealPartTrace<Quaternion>>(n, m, Quaternion(1));
      for (auto& h : inst.holonomy) h = s.general(rng);
      auto r = verify_sym(inst);
      EXPECT_TRUE(r.equal) << r.first_difference.value_or("");
    }
}

TEST(Identity, RandomScalarInstances) {
  Rng rng(1);
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t m = 1; m <= n; ++m) {
      auto g = make_instance<GroupRingElement, IdentityTrace<GroupRingElement>>(n, m, GroupRingElement(1));
      ElementSampler<GroupRingElement> s{3};
      for (auto& h : g.holonomy) h = s.general(rng);
      auto r = verify_mtkz(g);
      EXPECT_TRUE(r.equal) << r.first_difference.value_or("");
      auto q = make_instance<Quaternion, RealPartTrace<Quaternion>>(n, m, Quaternion(1), WeightMode::specialized);
      ElementSampler<Quaternion> sq;
      for (auto& h : q.holonomy) h = sq.general(rng);
      for (auto& w : q.weight) w = ElementSampler<Rational>{}.general(rng);
      auto rq = verify_mtkz(q);
      EXPECT_TRUE(rq.equal) << rq.first_difference.value_or("");
    }
}

TEST(InstanceIo, LoadsAndValidates) {
  auto ok = load_instance(std::string(R"({"n":2,"m":1,"ring":"rational","edges":[{"from":1,"to":2,"h":"1"}]})"));
  EXPECT_TRUE(std::holds_alternative<IdInstance<Rational>>(ok.instance));
  EXPECT_THROW(load_instance(std::string(R"({"n":3,"m":4,"ring":"rational"})")), InputError);
  EXPECT_THROW(load_instance(std::string(R"({"n":2,"m":1,"ring":"rational","edges":[{"from":1,"to":1,"h":"1"}]})")),
               InputError);
  EXPECT_THROW(load_instance(std::string(R"({"n":2,"m":1,"ring":"gaussian","edges":[{"from":1,"to":2,"h":"1"}]})")),
               InputError);
  EXPECT_THROW(load_instance(std::string(R"({"n":2,"m":1,"ring":"quaternion","trace":"id"})")), InputError);
  EXPECT_THROW(load_instance(std::string(R"({"n":2,"m":1)")), InputError);
  EXPECT_THROW(load_instance(std::string(R"({"n":2,"m":1,"ring":"rational","edges":[{"from":1,"to":2,"h":"1","a":"2"}]})")),
               InputError);
  EXPECT_THROW(
      load_instance(std::string(R"({"n":2,"m":1,"ring":"group_ring:3","edges":[{"from":1,"to":2,"h":["1","0"]}]})")),
      InputError);
}

TEST(InstanceIo, KenyonStyleQuaternions) {
  auto loaded = load_instance(std::string(R"({"n":2,"m":2,"ring":"quaternion","trace":"re",
      "edges":[{"from":1,"to":2,"h":[0,1,0,0]},{"from":2,"to":1,"h":[0,-1,0,0]}]})"));
  auto& inst = std::get<ReInstance<Quaternion>>(loaded.instance);
  EXPECT_EQ(inst.h(0, 1), Quaternion::i());
  EXPECT_EQ(inst.h(1, 0), conj(inst.h(0, 1)));
}

TEST(InstanceIo, RoundTripEveryVariant) {
  const char* docs[] = {
      R"({"n":3,"m":2,"ring":"rational","weight_mode":"specialized","edges":[{"from":1,"to":2,"h":"-2/3","a":"5"}]})",
      R"({"n":3,"m":2,"ring":"gaussian","trace":"re","edges":[{"from":1,"to":2,"h":["1/2","-1"]}]})",
      R"({"n":3,"m":2,"ring":"group_ring:3","edges":[{"from":2,"to":3,"h":[0,1,-1]}]})",
      R"({"n":2,"m":1,"ring":"matrix:2:quaternion","trace":"re","edges":[{"from":1,"to":2,"h":[[[0,1,0,0],[0,0,0,0]],[[0,0,0,0],[1,0,0,0]]]}]})",
      R"({"n":2,"m":1,"ring":"matrix:2:group_ring:2","weight_mode":"symmetric","edges":[{"from":2,"to":1,"h":[[[0,1],[0,0]],[[0,0],[1,0]]]}]})",
  };
  for (const char* text : docs) {
    auto first = load_instance(std::string(text));
    std::string canonical = std::visit([&](const auto& inst) { return instance_to_json(inst, first.ring).dump(); },
                                       first.instance);
    auto second = load_instance(canonical);
    std::string again = std::visit([&](const auto& inst) { return instance_to_json(inst, second.ring).dump(); },
                                   second.instance);
    EXPECT_EQ(canonical, again);
    EXPECT_EQ(first.instance.index(), second.instance.index());
  }
}
