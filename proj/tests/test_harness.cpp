#include <gtest/gtest.h>

#include "mtt/harness/campaign.hpp"

using namespace mtt;

namespace {

CheckOptions defaults() { return {}; }

std::string canonical(const LoadedInstance& loaded) {
  return std::visit([&](const auto& inst) { return instance_to_json(inst, loaded.ring).dump(); }, loaded.instance);
}

}  // namespace

TEST(Generate, SameSeedSameInstance) {
  RandomSpec spec{.seed = 11, .n = 4, .m = 2, .fiber = 2, .ring = "quaternion"};
  EXPECT_EQ(canonical(generate_random_instance(spec)), canonical(generate_random_instance(spec)));
  RandomSpec other = spec;
  other.seed = 12;
  EXPECT_NE(canonical(generate_random_instance(spec)), canonical(generate_random_instance(other)));
}

TEST(Generate, UnitaryDrawsAreExactlyUnitary) {
  RandomSpec spec{.seed = 3, .n = 4, .m = 3, .fiber = 2, .ring = "quaternion", .draw = HolonomyDraw::unit,
                  .symmetric = true};
  auto loaded = generate_random_instance(spec);
  const auto& inst = std::get<GraphInstance<SquareMatrix<Quaternion>, RealPartTrace<Quaternion>>>(loaded.instance);
  const auto id = SquareMatrix<Quaternion>::identity(2);
  for (std::size_t i = 0; i < inst.n; ++i)
    for (std::size_t j = 0; j < inst.n; ++j) {
      if (i == j) continue;
      EXPECT_EQ(inst.h(i, j) * conj(inst.h(i, j)), id);
      EXPECT_EQ(inst.h(j, i), conj(inst.h(i, j)));
    }
}

TEST(Generate, ScalarUnitQuaternionsHaveNormOne) {
  RandomSpec spec{.seed = 5, .n = 5, .m = 2, .ring = "quaternion", .draw = HolonomyDraw::unit};
  auto loaded = generate_random_instance(spec);
  for (const auto& h : std::get<ReInstance<Quaternion>>(loaded.instance).holonomy) EXPECT_EQ(norm2(h), Rational(1));
}

TEST(Generate, BlockSplitGivesBlockDiagonalMatrices) {
  RandomSpec spec{.seed = 9, .n = 3, .m = 2, .fiber = 3, .ring = "rational", .block_split = 1};
  auto loaded = generate_random_instance(spec);
  for (const auto& h : std::get<GraphInstance<SquareMatrix<Rational>, IdentityTrace<Rational>>>(loaded.instance).holonomy) {
    EXPECT_EQ(h(0, 1), Rational(0));
    EXPECT_EQ(h(0, 2), Rational(0));
    EXPECT_EQ(h(1, 0), Rational(0));
    EXPECT_EQ(h(2, 0), Rational(0));
  }
}

TEST(Generate, BadParametersAreInputErrors) {
  EXPECT_THROW(generate_random_instance(RandomSpec{.n = 3, .m = 4}), InputError);
  EXPECT_THROW(generate_random_instance(RandomSpec{.n = 1, .m = 1}), InputError);
  EXPECT_THROW(generate_random_instance(RandomSpec{.preset = "nobody"}), InputError);
  EXPECT_THROW(generate_random_instance(RandomSpec{.block_split = 1}), InputError);
  EXPECT_THROW(generate_random_instance(RandomSpec{.ring = "quaternion", .trace = TraceKind::identity}), InputError);
}

TEST(Presets, KirchhoffCountsRootedTrees) {
  auto reports = check_random_graph("mtkz", RandomSpec{.n = 4, .m = 3, .preset = "kirchhoff"}, defaults());
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_TRUE(reports[0].equal);
  EXPECT_EQ(reports[0].lhs_terms, 16u);
  EXPECT_EQ(reports[0].rhs_terms, 16u);
}

TEST(Presets, ZaslavskyAddsTheSignedGraphCheck) {
  auto reports = check_random_graph("mtkz", RandomSpec{.seed = 2, .n = 4, .m = 3, .preset = "zaslavsky"}, defaults());
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[1].theorem, "zaslavsky");
  EXPECT_TRUE(reports[0].equal);
  EXPECT_TRUE(reports[1].equal);
}

TEST(Presets, ChaikenAndForman) {
  for (const char* p : {"chaiken:3", "chaiken:4", "forman"}) {
    auto reports = check_random_graph("mtkz", RandomSpec{.seed = 7, .n = 4, .m = 2, .preset = p}, defaults());
    ASSERT_EQ(reports.size(), 1u);
    EXPECT_TRUE(reports[0].equal) << p;
    EXPECT_NE(reports[0].instance.find(p), std::string::npos);
  }
  EXPECT_THROW(check_random_graph("mtkz", RandomSpec{.preset = "chaiken:"}, defaults()), InputError);
  EXPECT_THROW(check_random_graph("mtkz", RandomSpec{.preset = "chaiken:0"}, defaults()), InputError);
}

TEST(Presets, KenyonAddsPositivity) {
  auto reports = check_random_graph("mtkz", RandomSpec{.seed = 4, .n = 4, .m = 3, .preset = "kenyon"}, defaults());
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[1].theorem, "positivity");
  EXPECT_TRUE(reports[0].equal);
  EXPECT_TRUE(reports[1].equal);
  EXPECT_FALSE(reports[1].skipped);
}

TEST(Render, VerifiedAndFailedReports) {
  VerificationReport ok;
  ok.theorem = "mtkz";
  ok.instance = "x";
  ok.lhs_label = "lhs";
  ok.rhs_label = "rhs";
  ok.equal = true;
  const std::string text = render_text(std::vector{ok});
  EXPECT_NE(text.find("VERIFIED"), std::string::npos);
  EXPECT_NE(text.find("summary: 1 checks, 1 verified, 0 failed, 0 skipped"), std::string::npos);
  EXPECT_EQ(text.find("time:"), std::string::npos);

  VerificationReport bad = ok;
  bad.equal = false;
  bad.first_difference = "a1_2: 1 vs 2";
  bad.counterexamples = {"a1_2: 1 vs 2", "a2_1: 0 vs 1"};
  const std::string failed = render_text(bad, RenderOptions{.max_counterexamples = 1});
  EXPECT_NE(failed.find("FAILED"), std::string::npos);
  EXPECT_NE(failed.find("first difference: a1_2: 1 vs 2"), std::string::npos);
  EXPECT_NE(failed.find("1 more counterexamples"), std::string::npos);
  EXPECT_EQ(exit_code_for({ok}), kExitVerified);
  EXPECT_EQ(exit_code_for({ok, bad}), kExitFailed);

  VerificationReport skipped = ok;
  skipped.skipped = true;
  skipped.note = "not applicable";
  EXPECT_NE(render_text(skipped).find("SKIPPED: not applicable"), std::string::npos);
  EXPECT_EQ(exit_code_for({skipped}), kExitVerified);
}

TEST(Render, JsonRoundTrip) {
  auto reports = check_random_graph("sym", RandomSpec{.seed = 8, .n = 3, .m = 2, .ring = "gaussian"}, defaults());
  VerificationReport bad = reports[0];
  bad.equal = false;
  bad.first_difference = "a1_2: 1 vs 0";
  bad.counterexamples = {"a1_2: 1 vs 0"};
  reports.push_back(bad);
  const std::string json = render_json(reports);
  const auto back = parse_reports(json);
  ASSERT_EQ(back.size(), reports.size());
  EXPECT_EQ(render_json(back), json);
  EXPECT_EQ(render_text(back), render_text(reports));
  EXPECT_THROW(parse_reports("{"), InputError);
  EXPECT_THROW(parse_reports("{\"reports\": [{}]}"), InputError);
}

TEST(Theorems, IdsAndErrors) {
  EXPECT_NO_THROW(check_theorem_id("mtkzn", false));
  EXPECT_NO_THROW(check_theorem_id("all", true));
  EXPECT_THROW(check_theorem_id("all", false), InputError);
  EXPECT_THROW(check_theorem_id("kirchhoff", true), InputError);
  RandomSpec gr{.seed = 1, .n = 3, .m = 2, .fiber = 2, .ring = "group_ring:3"};
  EXPECT_THROW(check_random_graph("mttnall", gr, defaults()), InputError);
  EXPECT_TRUE(check_random_graph("mtkzn", gr, defaults())[0].equal);
  EXPECT_THROW(check_random_graph("cw", gr, defaults()), InputError);
}

TEST(Campaign, ThreadCountDoesNotChangeOutput) {
  CheckOptions opt;
  const auto items = default_campaign("mtkz", 1, 2, opt);
  const std::string one = render_text(run_items(items, 1));
  EXPECT_EQ(render_text(run_items(items, 4)), one);
  EXPECT_EQ(render_text(run_items(default_campaign("mtkz", 1, 2, opt), 3)), one);
  EXPECT_NE(render_text(run_items(default_campaign("mtkz", 2, 2, opt), 1)), one);
}

TEST(Campaign, KalaiCounts) {
  EXPECT_TRUE(kalai_check(4, 2).equal);
  EXPECT_TRUE(kalai_check(5, 2).equal);
}

TEST(SimplicialIo, RoundTrip) {
  RandomCwSpec spec{.seed = 6, .v = 5, .d = 2, .well_vertex = 5, .ring = "gaussian",
                    .weight_mode = WeightMode::specialized, .random_orientation = true};
  auto loaded = generate_random_simplicial(spec);
  const Json doc = std::visit([&](const auto& inst) { return simplicial_to_json(inst, loaded.ring); }, loaded.instance);
  ASSERT_TRUE(is_simplicial_document(doc));
  auto again = load_simplicial_instance(doc.dump());
  const Json doc2 = std::visit([&](const auto& inst) { return simplicial_to_json(inst, again.ring); }, again.instance);
  EXPECT_EQ(doc, doc2);
}

TEST(SimplicialIo, Rejections) {
  auto load = [](const char* text) { return load_simplicial_instance(std::string(text)); };
  EXPECT_THROW(load(R"({"complex": {"v": 4, "d": 2}, "ring": "rational"})"), InputError);
  EXPECT_THROW(load(R"({"complex": {"v": 4, "d": 2}, "ring": "rational", "m": 1,
                        "pairs": [{"from": [1, 2], "to": [3, 4]}]})"),
               InputError);
  EXPECT_THROW(load(R"({"complex": {"v": 4, "d": 4}, "ring": "rational", "m": 1})"), InputError);
  EXPECT_THROW(load(R"({"complex": {"v": 4, "d": 2}, "ring": "matrix:2:rational", "m": 1})"), InputError);
}
