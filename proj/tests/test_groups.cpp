#include <gtest/gtest.h>

#include "rdpairs/error.hpp"
#include "rdpairs/fixtures.hpp"
#include "rdpairs/subgroups.hpp"
#include "support.hpp"

using namespace rdp;
using rdp::test::pick;

namespace {

ErrorCode codeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no rdp::Error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Groups, Z2ZlineKeyIsSecondCoordinate) {
  const Pair p = buildFixture("z2-zline");
  const auto& G = *p.group;
  EXPECT_EQ(G.generators().size(), 4u);
  const auto key = [&](const char* t) { return p.cosets->cosetKey(G.parse(t)); };
  EXPECT_EQ(key("(5,2)"), key("(-3,2)"));
  EXPECT_NE(key("(0,2)"), key("(0,1)"));
  EXPECT_EQ(p.cosets->format(key("(7,-4)")), "(-4)+H");
}

TEST(Groups, LatticeArithmetic) {
  const auto G = makeLattice(2);
  EXPECT_EQ(G->multiply(G->parse("(1,0)"), G->parse("(0,1)")), G->parse("(1,1)"));
  EXPECT_EQ(G->invert(G->parse("(3,-1)")), G->parse("(-3,1)"));
  EXPECT_EQ(G->invert(G->identity()), G->identity());
}

TEST(Groups, FreeReduction) {
  const auto F = makeFreeGroup(2);
  EXPECT_EQ(F->multiply(F->parse("ab"), F->parse("B")), F->parse("a"));
  EXPECT_EQ(F->format(F->multiply(F->parse("aB"), F->parse("ba"))), "aa");
  EXPECT_EQ(F->format(F->identity()), "e");
}

TEST(Groups, BaumslagSolitarAffineLaw) {
  const auto B = makeBaumslagSolitar(2);
  const auto t = B->parse("(1,0)");
  const auto a = B->parse("(0,1)");
  EXPECT_EQ(B->multiply(t, a), B->parse("(1,2)"));
  // t a t^-1 = a^2
  EXPECT_EQ(B->multiply(B->multiply(t, a), B->invert(t)), B->multiply(a, a));
  EXPECT_EQ(B->multiply(B->multiply(t, a), B->invert(t)), B->parse("(0,2)"));
  const auto g = B->parse("(1,1)");
  EXPECT_EQ(B->invert(g), B->parse("(-1,-1/2)"));
  EXPECT_EQ(B->multiply(g, B->invert(g)), B->identity());
}

TEST(Groups, BaumslagSolitarRejectsSmallParameter) {
  EXPECT_EQ(codeOf([] { buildFixture("bs-a:n=1"); }), ErrorCode::ParameterOutOfRange);
}

TEST(Groups, UnknownFixture) {
  EXPECT_EQ(codeOf([] { buildFixture("no-such-pair"); }), ErrorCode::UnknownFixture);
}

TEST(Groups, MalformedKeys) {
  const auto B = makeBaumslagSolitar(2);
  EXPECT_EQ(codeOf([&] { B->parse("(0,1/3)"); }), ErrorCode::MalformedKey);
  EXPECT_EQ(codeOf([&] { B->multiply(ElementKey("garbage"), B->identity()); }),
            ErrorCode::MalformedKey);
  const auto F = makeFreeGroup(2);
  EXPECT_EQ(codeOf([&] { F->invert(ElementKey("aA")); }), ErrorCode::MalformedKey);
  const auto Z = makeLattice(2);
  EXPECT_EQ(codeOf([&] { Z->invert(ElementKey("xyz")); }), ErrorCode::MalformedKey);
}

TEST(Groups, F2KernelKeyIsExponentSum) {
  const Pair p = buildFixture("f2-ker");
  const auto& G = *p.group;
  EXPECT_EQ(p.cosets->cosetKey(G.parse("aB")), p.cosets->base());
  EXPECT_EQ(p.cosets->cosetKey(G.parse("ab")), p.cosets->cosetKey(G.parse("bbaB")));
  EXPECT_EQ(p.cosets->format(p.cosets->cosetKey(G.parse("abA"))), "sum=1");
}

TEST(Groups, F2CyclicKeyStripsTrailingPower) {
  const Pair p = buildFixture("f2-a");
  const auto& G = *p.group;
  EXPECT_EQ(p.cosets->cosetKey(G.parse("baaa")), p.cosets->cosetKey(G.parse("bA")));
  EXPECT_NE(p.cosets->cosetKey(G.parse("ab")), p.cosets->cosetKey(G.parse("b")));
}

// Group axioms, coset invariance and (for normal H) key compatibility on every fixture.
class CatalogLaws : public ::testing::TestWithParam<std::string> {};

TEST_P(CatalogLaws, AxiomsAndCosets) {
  const Pair p = buildFixture(GetParam());
  const auto& G = *p.group;
  const auto pool = enumerateBall(p.group, 4, 200'000).elements();
  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    const auto& x = pick(rng, pool);
    const auto& y = pick(rng, pool);
    const auto& z = pick(rng, pool);
    ASSERT_EQ(G.multiply(G.multiply(x, y), z), G.multiply(x, G.multiply(y, z)));
    ASSERT_EQ(G.multiply(x, G.identity()), x);
    ASSERT_EQ(G.multiply(G.identity(), x), x);
    ASSERT_EQ(G.multiply(x, G.invert(x)), G.identity());
    ASSERT_EQ(G.parse(G.format(x)), x);

    const ElementKey h = rdp::test::randomSubgroupElement(*p.cosets, rng);
    ASSERT_TRUE(p.cosets->inSubgroup(h));
    ASSERT_EQ(p.cosets->cosetKey(G.multiply(x, h)), p.cosets->cosetKey(x));
  }
  for (const auto& s : G.generators()) {
    bool closed = false;
    for (const auto& t : G.generators()) closed |= (t.key == G.invert(s.key));
    EXPECT_TRUE(closed) << s.label;
  }
  if (p.cosets->traits().normal) {
    // key(x y) is a function of (key x, key y): compare against y replaced by y h.
    for (int i = 0; i < 300; ++i) {
      const auto& x = pick(rng, pool);
      const auto& y = pick(rng, pool);
      const ElementKey h1 = rdp::test::randomSubgroupElement(*p.cosets, rng);
      const ElementKey h2 = rdp::test::randomSubgroupElement(*p.cosets, rng);
      ASSERT_EQ(p.cosets->cosetKey(G.multiply(x, y)),
                p.cosets->cosetKey(G.multiply(G.multiply(x, h1), G.multiply(y, h2))));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Catalog, CatalogLaws, ::testing::ValuesIn(rdp::test::catalogSpecs()),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (char& c : s) {
                             if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
                           }
                           return s;
                         });

TEST(Groups, ProductPair) {
  const Pair p = productPair(buildFixture("z-trivial"), buildFixture("zd-whole:d=1"));
  const auto& G = *p.group;
  EXPECT_EQ(G.generators().size(), 4u);
  const auto g = G.parse("<(3);(5)>");
  const auto g2 = G.parse("<(3);(-8)>");
  EXPECT_EQ(p.cosets->cosetKey(g), p.cosets->cosetKey(g2));
  EXPECT_NE(p.cosets->cosetKey(g), p.cosets->cosetKey(G.parse("<(2);(5)>")));
  EXPECT_EQ(G.identity(), G.parse("<(0);(0)>"));
  const BallIndex ball = enumerateBall(p.group, 3);
  EXPECT_EQ(ball.wordLength(G.parse("<(1);(1)>")), 2);
  EXPECT_EQ(ball.wordLength(G.parse("<(2);(-1)>")), 3);
}

TEST(Groups, ProductFixtureSpec) {
  const Pair p = buildFixture("z2-zline*f2-ker");
  EXPECT_EQ(p.group->generators().size(), 8u);
  EXPECT_TRUE(p.cosets->traits().normal);
}

TEST(Groups, RestrictToWholeGroupIsSamePair) {
  const Pair p = buildFixture("z2-zline");
  const Pair r = restrictToSubgroupModel(p, identityEmbedding(p.group));
  const auto g = p.group->parse("(4,-2)");
  EXPECT_EQ(r.cosets->cosetKey(g), p.cosets->cosetKey(g));
  EXPECT_EQ(r.cosets->traits().coAmenable, p.cosets->traits().coAmenable);
}

TEST(Groups, RestrictToHGivesWholeSubgroup) {
  const Pair p = buildFixture("z2-zline");
  const auto Z2 = std::dynamic_pointer_cast<const LatticeModel>(p.group);
  ASSERT_TRUE(Z2);
  const Pair r = restrictToSubgroupModel(p, latticeAxisEmbedding(Z2, 0));
  EXPECT_TRUE(r.cosets->traits().whole);
  const auto& K = *r.group;
  EXPECT_TRUE(r.cosets->inSubgroup(K.parse("(17)")));
}

TEST(Groups, RestrictRejectsSubgroupOutsideK) {
  const Pair p = buildFixture("f2-ker");
  const auto F = std::dynamic_pointer_cast<const FreeGroupModel>(p.group);
  ASSERT_TRUE(F);
  EXPECT_EQ(codeOf([&] { restrictToSubgroupModel(p, freeLetterEmbedding(F, 0)); }),
            ErrorCode::EmbeddingInvalid);
}

TEST(Groups, FixtureSpecRoundTrip) {
  for (const auto& text : rdp::test::catalogSpecs()) {
    EXPECT_EQ(FixtureSpec::parse(text).toString(), text);
  }
  EXPECT_EQ(FixtureSpec::parse("z2-zline*bs-a:n=3").toString(), "z2-zline*bs-a:n=3");
}

TEST(Groups, FiniteSubgroupNormality) {
  EXPECT_TRUE(buildFixture("d8-rot").cosets->traits().normal);
  EXPECT_FALSE(buildFixture("d8-refl").cosets->traits().normal);
  EXPECT_FALSE(buildFixture("s4-d8").cosets->traits().normal);
  EXPECT_EQ(buildFixture("s4-d8").group->order().value_or(0), 24u);
}
