#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ontohyp/error.hpp"
#include "ontohyp/rng.hpp"

using namespace ontohyp;
using namespace ontohyp::testing;

TEST(Axiom, TextFormRoundTrips) {
  const std::vector<Axiom> axioms{
      Axiom::property("feline", lit("slow", true)), Axiom::membership("Fae", "tiger"),
      Axiom::subtype("rat", "rodent"), Axiom::attribute("Sam", lit("warm-blooded"))};
  for (const auto& a : axioms) EXPECT_EQ(axiom_from_string(to_string(a)), a) << to_string(a);
  EXPECT_EQ(to_string(axioms[0]), "property(feline, ~slow)");
  EXPECT_EQ(to_string(axioms[2]), "subtype(rat, rodent)");
}

TEST(Axiom, MalformedTextThrows) {
  for (const char* bad : {"", "property(a)", "frob(a, b)", "member(A, b", "subtype(, b)"})
    EXPECT_THROW(axiom_from_string(bad), FormatError) << bad;
}

TEST(Canonical, NormalizesCase) {
  EXPECT_EQ(canonical(Axiom::property("Dalpist", lit("Rainy"))),
            Axiom::property("dalpist", lit("rainy")));
  EXPECT_EQ(canonical(Axiom::subtype("rat", "rodent")), Axiom::subtype("rat", "rodent"));
  EXPECT_EQ(canonical(Axiom::membership("amy", "cat")), Axiom::membership("Amy", "cat"));
  EXPECT_EQ(canonical(Axiom::property("Cat", lit("Slow", true))).negated, true);
}

TEST(Canonical, IsIdempotent) {
  Rng rng(11);
  const std::string letters = "aBcDeFgHiJ";
  auto word = [&] {
    std::string w;
    for (int i = 0, n = 1 + static_cast<int>(rng.index(6)); i < n; ++i)
      w += letters[rng.index(letters.size())];
    return w;
  };
  for (int i = 0; i < 2000; ++i) {
    Axiom a;
    a.kind = static_cast<AxiomKind>(rng.index(4));
    a.subject = word();
    a.object = word();
    a.negated = a.has_literal() && rng.bernoulli(0.5);
    EXPECT_EQ(canonical(canonical(a)), canonical(a));
  }
}

TEST(WorldModel, SingleNodeHasSixAxioms) {
  WorldModel wm;
  wm.height = 1;
  wm.nodes = {node("dalpist", -1, 0, {lit("rainy"), lit("cold"), lit("dull", true)},
                   {"Amy", "Jerry", "Pamela"})};
  validate(wm);
  EXPECT_EQ(visible_axioms(wm).size(), 6u);
  EXPECT_EQ(complete_axioms(wm).size(), 6u);
}

TEST(WorldModel, HidingAnEdgeRemovesExactlyThatAxiom) {
  auto wm = mammal_example().world;
  wm.hidden.clear();
  const auto all = visible_axioms(wm);
  const auto edge = Axiom::subtype("rat", "rodent");
  wm.hidden.insert(edge);
  const auto visible = visible_axioms(wm);
  ASSERT_EQ(visible.size() + 1, all.size());
  EXPECT_FALSE(visible.contains(edge));
  for (const auto& a : all)
    if (a != edge) EXPECT_TRUE(visible.contains(a));
}

TEST(WorldModel, MammalFixtureIsValid) {
  const auto ex = mammal_example();
  EXPECT_NO_THROW(validate(ex.world));
  EXPECT_EQ(ex.world.find_concept("rodent"), 3);
  EXPECT_EQ(ex.world.find_concept("ragdoll"), -1);
  EXPECT_EQ(complete_axioms(ex.world).size(), visible_axioms(ex.world).size() + 3);
}

TEST(WorldModel, ValidateRejectsBrokenTrees) {
  auto wm = mammal_example().world;
  auto dup = wm;
  dup.nodes[4].members.push_back("Sam");
  EXPECT_THROW(validate(dup), InvalidWorldModel);
  auto both = wm;
  both.nodes[1].properties.push_back(lit("slow"));
  EXPECT_THROW(validate(both), InvalidWorldModel);
  auto links = wm;
  links.nodes[0].children.pop_back();
  EXPECT_THROW(validate(links), InvalidWorldModel);
}
