#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "ontohyp/error.hpp"
#include "ontohyp/io.hpp"
#include "ontohyp/prover.hpp"

using namespace ontohyp;
using namespace ontohyp::testing;

TEST(Topology, HeightOneIsASingleRoot) {
  Rng rng(1);
  const auto wm = build_topology(1, rng);
  ASSERT_EQ(wm.nodes.size(), 1u);
  EXPECT_TRUE(wm.is_leaf(0));
}

TEST(Topology, BranchingFollowsTheDraw) {
  EXPECT_EQ(build_topology(2, [] { return 0.6; }).nodes[0].children.size(), 2u);
  EXPECT_EQ(build_topology(2, [] { return 0.4; }).nodes[0].children.size(), 3u);
  EXPECT_EQ(build_topology(3, [] { return 0.6; }).nodes.size(), 7u);
}

TEST(Topology, MeanLeafCountAtHeightThree) {
  Rng rng(2024);
  const int trials = 10000;
  long leaves = 0;
  for (int i = 0; i < trials; ++i) {
    const auto wm = build_topology(3, rng);
    for (int n = 0; n < static_cast<int>(wm.nodes.size()); ++n) leaves += wm.is_leaf(n);
  }
  // Two or three children with equal odds: 2.5 per level.
  EXPECT_NEAR(static_cast<double>(leaves) / trials, 6.25, 0.1);
}

TEST(Populate, HeightOneHasSixAxioms) {
  Rng rng(3);
  auto wm = build_topology(1, rng);
  NameSource names(primary_pools(), rng);
  populate(wm, names, rng);
  const auto axioms = complete_axioms(wm);
  EXPECT_EQ(axioms.size(), 6u);
  EXPECT_EQ(std::count_if(axioms.begin(), axioms.end(),
                          [](const Axiom& a) { return a.kind == AxiomKind::kMembership; }),
            3);
}

TEST(Populate, ThreeChildrenGiveTwentySevenAxioms) {
  Rng rng(4);
  auto wm = build_topology(2, [] { return 0.4; });
  NameSource names(primary_pools(), rng);
  populate(wm, names, rng);
  validate(wm);
  // Enumerate by hand: 4 nodes x (3 members + 3 properties) + 3 edges.
  std::size_t expected = 0;
  for (const auto& n : wm.nodes) expected += n.members.size() + n.properties.size();
  expected += wm.nodes.size() - 1;
  EXPECT_EQ(expected, 27u);
  EXPECT_EQ(complete_axioms(wm).size(), 27u);
}

TEST(Populate, SameSeedSameWorld) {
  auto make = [] {
    Rng rng(77);
    auto wm = build_topology(3, rng);
    NameSource names(primary_pools(), rng);
    populate(wm, names, rng);
    return wm;
  };
  EXPECT_EQ(make(), make());
}

TEST(HideAxioms, SingleModeHidesOneOfTheRequestedKind) {
  for (auto [subtask, kind] : {std::pair{Subtask::kProperty, AxiomKind::kProperty},
                               std::pair{Subtask::kMembership, AxiomKind::kMembership},
                               std::pair{Subtask::kSubtype, AxiomKind::kSubtype}}) {
    for (int h = 1; h <= 4; ++h) {
      const auto ex = generate_example(config(h, Mode::kSingle, 10 + h, subtask));
      ASSERT_EQ(ex.truth.size(), 1u);
      EXPECT_EQ(ex.truth[0].kind, kind);
      EXPECT_EQ(ex.meta.subtasks, std::vector<Subtask>{subtask});
    }
  }
}

TEST(HideAxioms, SingleHeightOneProperty) {
  const auto ex = generate_example(config(1, Mode::kSingle, 8, Subtask::kProperty));
  const auto& root = ex.world.root();
  EXPECT_EQ(ex.truth[0].kind, AxiomKind::kProperty);
  EXPECT_EQ(ex.truth[0].subject, root.concept_name);
  EXPECT_NE(std::find(root.properties.begin(), root.properties.end(), ex.truth[0].literal()),
            root.properties.end());
}

TEST(HideAxioms, FreshSupertypeAtHeightOne) {
  auto c = config(1, Mode::kSingle, 9, Subtask::kSubtype);
  c.subtype_style = SubtypeStyle::kFreshSupertype;
  const auto ex = generate_example(c);
  ASSERT_EQ(ex.truth.size(), 1u);
  EXPECT_EQ(ex.truth[0].subject, ex.world.root().concept_name);
  EXPECT_EQ(ex.world.find_concept(ex.truth[0].object), -1);
  for (const auto& o : ex.observations) {
    EXPECT_EQ(o.kind, AxiomKind::kMembership);
    EXPECT_EQ(o.object, ex.truth[0].object);
  }
}

TEST(HideAxioms, HideEdgeAtHeightOneIsInfeasible) {
  auto c = config(1, Mode::kSingle, 1, Subtask::kSubtype);
  c.subtype_style = SubtypeStyle::kHideEdge;
  try {
    generate_example(c);
    FAIL() << "expected Infeasible";
  } catch (const Infeasible& e) {
    EXPECT_NE(std::string(e.what()).find("no in-tree edge at height 1"), std::string::npos);
  }
}

TEST(HideAxioms, MultiHeightOneCoversAllSubtasks) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto ex = generate_example(config(1, Mode::kMulti, seed));
    ASSERT_EQ(ex.truth.size(), 3u);
    std::set<AxiomKind> kinds;
    for (const auto& h : ex.truth) kinds.insert(h.kind);
    EXPECT_EQ(kinds.size(), 3u);
  }
}

TEST(HideAxioms, MultiModeCoversAllSubtasksAtEveryHeight) {
  for (int h = 2; h <= 4; ++h)
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto ex = generate_example(config(h, Mode::kMulti, seed));
      const std::set<Subtask> tags(ex.meta.subtasks.begin(), ex.meta.subtasks.end());
      EXPECT_EQ(tags.size(), 3u);
    }
}

TEST(GenObservations, PropertyHypothesisReachesThreeMembers) {
  auto ex = mammal_example();
  Rng rng(5);
  NameSource names(primary_pools(), rng);
  std::set<std::string> used;
  const Hypothesis h{Axiom::property("mammal", lit("hairy")), Subtask::kProperty, 0};
  const auto obs = gen_observations(ex.world, h, used, names, rng);
  ASSERT_EQ(obs.size(), 3u);
  std::set<std::string> members;
  for (const auto& o : obs) {
    EXPECT_EQ(o, Axiom::attribute(o.subject, lit("hairy")));
    members.insert(o.subject);
  }
  EXPECT_EQ(members.size(), 3u);
  EXPECT_TRUE(members.contains("Sam") || members.contains("Tom") || members.contains("John"));
}

TEST(GenObservations, MembershipHypothesisUsesAncestorProperties) {
  auto ex = mammal_example();
  Rng rng(6);
  NameSource names(primary_pools(), rng);
  std::set<std::string> used;
  const Hypothesis h{Axiom::membership("Fae", "tiger"), Subtask::kMembership, 5};
  const auto obs = gen_observations(ex.world, h, used, names, rng);
  const std::set<Axiom> got(obs.begin(), obs.end());
  const std::set<Axiom> expected{Axiom::attribute("Fae", lit("strong")),
                                 Axiom::attribute("Fae", lit("slow", true)),
                                 Axiom::attribute("Fae", lit("warm-blooded"))};
  EXPECT_EQ(got, expected);
}

TEST(GenObservations, FreshSupertypeObservationsAreMemberships) {
  auto ex = mammal_example();
  ex.world.hidden = {Axiom::subtype("mammal", "animal")};
  Rng rng(7);
  NameSource names(primary_pools(), rng);
  std::set<std::string> used;
  const Hypothesis h{Axiom::subtype("mammal", "animal"), Subtask::kSubtype, 0};
  for (const auto& o : gen_observations(ex.world, h, used, names, rng))
    EXPECT_EQ(o.kind == AxiomKind::kMembership && o.object == "animal", true);
}

TEST(GenerateExample, Invariants) {
  for (int h = 1; h <= 4; ++h)
    for (auto mode : {Mode::kSingle, Mode::kMulti})
      for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto ex = generate_example(config(h, mode, seed * 31 + h));
        EXPECT_TRUE(check_example(ex).empty()) << h << " " << seed;
        EXPECT_EQ(ex.truth, std::vector<Axiom>(ex.world.hidden.begin(), ex.world.hidden.end()));
        EXPECT_TRUE(std::is_sorted(ex.truth.begin(), ex.truth.end()));
        EXPECT_EQ(ex.meta.subtasks.size(), ex.truth.size());
        EXPECT_FALSE(explain(ex.visible(), {}, ex.observations));
        EXPECT_TRUE(explain(ex.visible(), ex.truth, ex.observations));
        // Semantic check independent of the prover.
        EXPECT_TRUE(entailed_by_oracle(concat(ex.visible(), ex.truth), ex.observations));
        const auto alone = semantic_closure(ex.visible());
        for (const auto& o : ex.observations) EXPECT_FALSE(alone.contains(o));
      }
}

TEST(GenerateExample, Deterministic) {
  for (auto mode : {Mode::kSingle, Mode::kMulti}) {
    const auto c = config(3, mode, 1234);
    EXPECT_EQ(to_json(make_record("a", generate_example(c))).dump(),
              to_json(make_record("a", generate_example(c))).dump());
  }
  EXPECT_NE(generate_example(config(3, Mode::kMulti, 1)),
            generate_example(config(3, Mode::kMulti, 2)));
}

TEST(GenerateExample, NamesStayInThePrimaryPools) {
  const auto& demo = demonstration_pools();
  const std::set<std::string> demo_concepts(demo.concepts.begin(), demo.concepts.end());
  const auto ex = generate_example(config(4, Mode::kMulti, 3));
  for (const auto& n : ex.world.nodes) EXPECT_FALSE(demo_concepts.contains(n.concept_name));
}

TEST(GenerateExample, MultiModeMatchesReferenceSizes) {
  const double axioms[] = {9.0, 14.0, 25.5, 46.8};
  const double observations[] = {10.0, 11.8, 15.2, 20.0};
  const double hypotheses[] = {3.0, 3.5, 4.6, 6.6};
  for (int h = 1; h <= 4; ++h) {
    double a = 0, o = 0, y = 0;
    const int n = 100;
    for (int i = 0; i < n; ++i) {
      const auto ex = generate_example(config(h, Mode::kMulti, derive_seed(42, i)));
      a += static_cast<double>(ex.visible().size());
      o += static_cast<double>(ex.observations.size());
      y += static_cast<double>(ex.truth.size());
    }
    EXPECT_NEAR(a / n, axioms[h - 1], 0.2 * axioms[h - 1]) << "height " << h;
    EXPECT_NEAR(o / n, observations[h - 1], 0.2 * observations[h - 1]) << "height " << h;
    EXPECT_NEAR(y / n, hypotheses[h - 1], 0.2 * hypotheses[h - 1]) << "height " << h;
  }
}

TEST(Modes, StringsRoundTrip) {
  for (auto m : {Mode::kSingle, Mode::kMulti}) EXPECT_EQ(mode_from_string(to_string(m)), m);
  for (auto s : {Subtask::kProperty, Subtask::kMembership, Subtask::kSubtype, Subtask::kRandom})
    EXPECT_EQ(subtask_from_string(to_string(s)), s);
  for (auto s : {SubtypeStyle::kHideEdge, SubtypeStyle::kFreshSupertype, SubtypeStyle::kMixed})
    EXPECT_EQ(subtype_style_from_string(to_string(s)), s);
  EXPECT_THROW(mode_from_string("both"), FormatError);
}
