#include <gtest/gtest.h>

#include "mtt/algebra/sampling.hpp"
#include "mtt/determinant/bareiss.hpp"
#include "mtt/lift/lift.hpp"

using namespace mtt;

namespace {

template <class H, class Trace = IdentityTrace<H>>
GraphInstance<SquareMatrix<H>, Trace> matrix_instance(std::size_t n, std::size_t m, std::size_t fiber,
                                                      WeightMode mode = WeightMode::symbolic) {
  return make_instance<SquareMatrix<H>, Trace>(n, m, SquareMatrix<H>::identity(fiber), mode);
}

template <class H, class Trace>
void randomize(GraphInstance<SquareMatrix<H>, Trace>& inst, Rng& rng, const ElementSampler<H>& entry) {
  ElementSampler<SquareMatrix<H>> s{inst.fiber(), entry};
  for (auto& h : inst.holonomy) h = s.general(rng);
}

// h_ij = M with M·M* = I and h_ji = M*.
template <class H, class Trace>
void unitarize(GraphInstance<SquareMatrix<H>, Trace>& inst, Rng& rng, const ElementSampler<H>& entry) {
  ElementSampler<SquareMatrix<H>> s{inst.fiber(), entry};
  for (std::size_t i = 0; i < inst.n; ++i)
    for (std::size_t j = i + 1; j < inst.n; ++j) {
      inst.h(i, j) = s.unit(rng);
      inst.h(j, i) = conj(inst.h(i, j));
    }
}

Polynomial<Rational> a12() { return Polynomial<Rational>::variable(EdgeIndex(2)(0, 1)); }

SquareMatrix<Rational> swap2() { return SquareMatrix<Rational>::from_rows({{0, 1}, {1, 0}}); }

}  // namespace

TEST(Lift, Shape) {
  auto lift = lift_instance(matrix_instance<Rational>(2, 1, 2));
  EXPECT_EQ(lift.vertex_count(), 4u);
  EXPECT_EQ(lift.edge_count(), 8u);
  EXPECT_EQ(lift_instance(matrix_instance<Rational>(4, 2, 3)).edge_count(), 12u * 9u);
  for (std::size_t u = 0; u < 4; ++u)
    for (std::size_t v = 0; v < 4; ++v) EXPECT_EQ(lift.is_edge(u, v), u / 2 != v / 2);
  auto space = lift.space();
  ASSERT_EQ(space.inner(), 2u);
  EXPECT_EQ(space.targets[0], (std::vector<std::uint32_t>{2, 3}));
  // identity holonomy: 1 on horizontal edges, 0 on skew ones
  EXPECT_EQ(lift.h(0, 2), Rational(1));
  EXPECT_EQ(lift.h(0, 3), Rational(0));
  EXPECT_EQ(lift.h(1, 3), Rational(1));
}

TEST(Lift, BlockLaplacian) {
  Rng rng(4);
  auto inst = matrix_instance<Quaternion, RealPartTrace<Quaternion>>(3, 2, 2);
  randomize(inst, rng, ElementSampler<Quaternion>{});
  auto lift = lift_instance(inst);
  auto lap = build_block_laplacian(lift);
  ASSERT_EQ(lap.size(), 6u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_TRUE(lap(lift.vertex(i, 0), lift.vertex(i, 1)).is_zero());
    EXPECT_TRUE(lap(lift.vertex(i, 1), lift.vertex(i, 0)).is_zero());
    EXPECT_EQ(lap(lift.vertex(i, 0), lift.vertex(i, 0)), lap(lift.vertex(i, 1), lift.vertex(i, 1)));
  }
  auto a = Polynomial<Quaternion>::variable(EdgeIndex(3)(0, 2));
  EXPECT_EQ(lap(lift.vertex(0, 1), lift.vertex(2, 0)), (-inst.h(0, 2)(1, 0)) * a);
}

TEST(Lift, SingleEdgeGivesSquare) {
  Rng rng(11);
  auto inst = matrix_instance<Rational>(2, 1, 2);
  randomize(inst, rng, ElementSampler<Rational>{});
  auto lift = lift_instance(inst);
  auto expected = a12() * a12();
  EXPECT_EQ(rhs_mtkzn(lift), expected);
  EXPECT_EQ(rhs_mttnall(lift), expected);
  EXPECT_EQ(lhs_lifted(lift), expected);
}

TEST(Lift, SwapMatrixVanishes) {
  auto inst = matrix_instance<Rational>(2, 2, 2);
  inst.h(0, 1) = swap2();
  inst.h(1, 0) = swap2();
  auto lift = lift_instance(inst);
  auto block = build_block_laplacian(lift);
  auto by_permutations = tau_det_by_permutations(block, IdentityTrace<Rational>{});
  EXPECT_TRUE(by_permutations.is_zero());
  EXPECT_TRUE(rhs_mttnall(lift).is_zero());
  EXPECT_TRUE(rhs_mtkzn(lift).is_zero());
  EXPECT_TRUE(lhs_lifted(lift).is_zero());
}

TEST(Lift, FiberOneReducesToGraphSum) {
  Rng rng(12);
  ElementSampler<Quaternion> s;
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t m = 1; m <= n; ++m) {
      auto inst = make_instance<Quaternion, RealPartTrace<Quaternion>>(n, m, Quaternion(1));
      for (auto& h : inst.holonomy) h = s.general(rng);
      auto lift = lift_scalar(inst);
      EXPECT_EQ(rhs_mtkzn(lift), rhs_mtkz(inst));
      EXPECT_EQ(rhs_mttnall(lift), rhs_mtkz(inst));
      EXPECT_EQ(lhs_lifted(lift), lhs_graph(inst));
    }
}

TEST(Lift, IdentityOnRandomInstances) {
  Rng rng(13);
  const std::pair<std::size_t, std::size_t> grid[] = {{2, 2}, {2, 3}, {3, 2}};
  for (auto [n, fiber] : grid)
    for (std::size_t m = 1; m <= n; ++m) {
      auto q = matrix_instance<Quaternion, RealPartTrace<Quaternion>>(n, m, fiber);
      randomize(q, rng, ElementSampler<Quaternion>{});
      auto lq = lift_instance(q);
      auto r = verify_mtkzn(lq);
      EXPECT_TRUE(r.equal) << n << " " << m << " " << fiber << " " << r.first_difference.value_or("");
      auto all = verify_mtkzn_vs_mttnall(lq);
      EXPECT_TRUE(all.equal) << all.first_difference.value_or("");

      auto g = matrix_instance<GroupRingElement>(n, m, fiber);
      randomize(g, rng, ElementSampler<GroupRingElement>{2});
      auto lg = lift_instance(g);
      auto rg = verify_mtkzn(lg);
      EXPECT_TRUE(rg.equal) << rg.first_difference.value_or("");
      EXPECT_THROW(rhs_mttnall(lg), InputError);
    }
}

TEST(Lift, GaussianSpecializedAllForests) {
  Rng rng(14);
  auto inst = matrix_instance<Gaussian>(3, 3, 2, WeightMode::specialized);
  randomize(inst, rng, ElementSampler<Gaussian>{});
  for (auto& w : inst.weight) w = ElementSampler<Gaussian>{}.general(rng);
  auto lift = lift_instance(inst);
  auto lhs = lhs_lifted(lift);
  EXPECT_EQ(lhs, rhs_mttnall(lift));
  EXPECT_EQ(lhs, rhs_mtkzn(lift));
}

TEST(Lift, ThreadCountDoesNotChangeResult) {
  Rng rng(15);
  auto inst = matrix_instance<Quaternion, RealPartTrace<Quaternion>>(3, 2, 2);
  randomize(inst, rng, ElementSampler<Quaternion>{});
  auto lift = lift_instance(inst);
  SumOptions four;
  four.threads = 4;
  EXPECT_EQ(rhs_mtkzn(lift), rhs_mtkzn(lift, four));
  EXPECT_EQ(rhs_mttnall(lift), rhs_mttnall(lift, four));
}

TEST(Lift, AcyclicHorizontalForestsAreLayerwiseForests) {
  for (std::size_t n = 2; n <= 3; ++n)
    for (std::size_t m = 1; m < n; ++m)
      for (std::size_t fiber = 1; fiber <= 2; ++fiber) {
        auto lift = lift_instance(matrix_instance<Rational>(n, m, fiber));
        auto space = lift.space();
        std::uint64_t count = 0;
        for_each_configuration(space, 0, space.count(), [&](std::span<const std::uint32_t> t, auto) {
          for (std::size_t u = 0; u < t.size(); ++u)
            if (!lift.horizontal(u, t[u])) return;
          for (std::size_t u = 0; u < t.size(); ++u) {
            std::size_t w = u, steps = 0;
            while (w < t.size() && steps <= t.size()) w = t[w], ++steps;
            if (w < t.size()) return;
          }
          ++count;
        });
        SquareMatrix<Integer> minor(m);
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j) minor(i, j) = i == j ? Integer(n - 1) : Integer(-1);
        Integer base = det_bareiss(minor), expected = 1;
        for (std::size_t k = 0; k < fiber; ++k) expected *= base;
        EXPECT_EQ(Integer(count), expected) << n << " " << m << " " << fiber;
      }
}

TEST(Lift, ClassSumMatchesIdentifiedSum) {
  Rng rng(16);
  for (std::size_t m = 1; m <= 3; ++m) {
    auto inst = matrix_instance<Quaternion, RealPartTrace<Quaternion>>(3, m, 2);
    randomize(inst, rng, ElementSampler<Quaternion>{});
    auto r = verify_mtkzn_classes(lift_instance(inst));
    EXPECT_TRUE(r.equal) << r.first_difference.value_or("");
  }
  EXPECT_THROW(rhs_mtkzn_classes(lift_instance(matrix_instance<Rational>(2, 2, 2))), InputError);
}

TEST(Lift, UnitaryRealPartFormAndPositivity) {
  Rng rng(17);
  auto inst = matrix_instance<Quaternion, RealPartTrace<Quaternion>>(3, 3, 2, WeightMode::symmetric);
  unitarize(inst, rng, ElementSampler<Quaternion>{});
  auto lift = lift_instance(inst);
  ClassSumOptions re_form;
  re_form.real_part_form = true;
  EXPECT_EQ(rhs_mtkzn_classes(lift), rhs_mtkzn_classes(lift, re_form));
  EXPECT_TRUE(verify_mtkzn_classes(lift, {}, true).equal);
  auto p = positivity_check(lift);
  EXPECT_FALSE(p.skipped);
  EXPECT_TRUE(p.equal) << p.first_difference.value_or("");
}

TEST(Lift, CancellationOnUnitaryInstances) {
  Rng rng(18);
  auto q = matrix_instance<Quaternion, RealPartTrace<Quaternion>>(3, 3, 2, WeightMode::symmetric);
  unitarize(q, rng, ElementSampler<Quaternion>{});
  auto rq = cancellation_check(lift_instance(q));
  EXPECT_FALSE(rq.skipped);
  EXPECT_TRUE(rq.equal) << rq.first_difference.value_or("");

  auto g = matrix_instance<GroupRingElement>(3, 3, 2, WeightMode::symmetric);
  unitarize(g, rng, ElementSampler<GroupRingElement>{3});
  auto rg = cancellation_check(lift_instance(g));
  EXPECT_FALSE(rg.skipped);
  EXPECT_TRUE(rg.equal) << rg.first_difference.value_or("");

  // N = 1, |h| = 1, h_ji = conj(h_ij): no squared monomials survive
  auto s = make_instance<Gaussian, IdentityTrace<Gaussian>>(3, 3, Gaussian(1), WeightMode::symmetric);
  ElementSampler<Gaussian> gs;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      s.h(i, j) = gs.unit(rng);
      s.h(j, i) = conj(s.h(i, j));
    }
  auto rs = cancellation_check(lift_scalar(s));
  EXPECT_TRUE(rs.equal) << rs.first_difference.value_or("");

  auto general = matrix_instance<Rational>(3, 3, 2, WeightMode::symmetric);
  randomize(general, rng, ElementSampler<Rational>{});
  EXPECT_TRUE(cancellation_check(lift_instance(general)).skipped);
  EXPECT_TRUE(cancellation_check(lift_instance(matrix_instance<Rational>(3, 3, 2))).skipped);
}

TEST(Lift, CancellationCounterexamplesAreReported) {
  // without h_ji = h_ij^{-1} squared monomials survive: with h = 2·I on one
  // pair the 2-cycle coefficient of a12^2 is 1 - 4
  auto inst = make_instance<Rational, IdentityTrace<Rational>>(2, 2, Rational(2), WeightMode::symmetric);
  auto rhs = rhs_mtkz(inst);
  auto bad = monomials_above_degree(rhs, 1, inst.namer());
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_EQ(bad.front(), "a1_2^2: -3");
}

TEST(Lift, BlockDiagonalFactorizes) {
  Rng rng(19);
  auto inst = matrix_instance<Quaternion, RealPartTrace<Quaternion>>(3, 2, 3);
  ElementSampler<Quaternion> s;
  for (auto& h : inst.holonomy) {
    SquareMatrix<Quaternion> a(1, s.general(rng));
    SquareMatrix<Quaternion> b(2);
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t l = 0; l < 2; ++l) b(k, l) = s.general(rng);
    h = block_diagonal(a, b);
  }
  auto lift = lift_instance(inst);
  auto r = factorization_check(lift, 1);
  EXPECT_TRUE(r.equal) << r.first_difference.value_or("");
  EXPECT_THROW(factorization_check(lift, 2), InputError);
}
