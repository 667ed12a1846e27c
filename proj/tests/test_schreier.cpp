#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "rdpairs/error.hpp"
#include "rdpairs/fixtures.hpp"
#include "rdpairs/schreier.hpp"
#include "support.hpp"

using namespace rdp;
using QF = GroupFunction<Rational>;

namespace {

std::vector<ElementKey> generatorKeys(const GroupModel& G) {
  std::vector<ElementKey> out;
  for (const auto& s : G.generators()) out.push_back(s.key);
  return out;
}

std::string safeName(const ::testing::TestParamInfo<std::string>& info) {
  std::string s = info.param;
  for (char& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  }
  return s;
}

}  // namespace

TEST(Schreier, LineWithLoops) {
  const Pair p = buildFixture("z2-zline");
  const auto graph = buildSchreier(p.cosets, 6);
  EXPECT_EQ(graph.size(), 13u);
  for (int r = 0; r <= 6; ++r) EXPECT_EQ(graph.counts()[r], static_cast<std::uint64_t>(2 * r + 1));
  // generators are e1, e1^-1, e2, e2^-1 in catalog order
  for (std::size_t v = 0; v < graph.size(); ++v) {
    const int i = static_cast<int>(v);
    EXPECT_EQ(graph.target(i, 0), i);
    EXPECT_EQ(graph.target(i, 1), i);
    if (graph.distance(i) < 6) {
      EXPECT_NE(graph.target(i, 2), i);
      EXPECT_NE(graph.target(i, 3), i);
    }
  }
  EXPECT_FALSE(graph.complete());
}

TEST(Schreier, WholeGroupIsOneVertex) {
  const Pair p = buildFixture("f2-whole");
  const auto graph = buildSchreier(p.cosets, 5);
  EXPECT_EQ(graph.size(), 1u);
  EXPECT_TRUE(graph.complete());
  for (std::size_t s = 0; s < graph.degree(); ++s) EXPECT_EQ(graph.target(0, s), 0);
}

TEST(Schreier, FiniteQuotientIsComplete) {
  const auto graph = buildSchreier(buildFixture("s4-d8").cosets, 10);
  EXPECT_EQ(graph.size(), 3u);
  EXPECT_TRUE(graph.complete());
}

TEST(Schreier, DyadicCosetsOfT) {
  // vertices are dyadic rationals; x -> x +- 1 and x -> 2x, x/2 from 0
  const Pair p = buildFixture("bs-t");
  const auto graph = buildSchreier(p.cosets, 4);
  const auto B = std::dynamic_pointer_cast<const BaumslagSolitarModel>(p.group);
  ASSERT_TRUE(B);
  std::set<std::string> oracle{"0"};
  std::set<std::string> frontier{"0"};
  for (int r = 0; r < 4; ++r) {
    std::set<std::string> next;
    for (const auto& x : frontier) {
      const Rational v(x);
      for (Rational w : {Rational(v + 1), Rational(v - 1), Rational(v * 2), Rational(v / 2)}) {
        w.canonicalize();
        if (oracle.insert(w.get_str()).second) next.insert(w.get_str());
      }
    }
    frontier = std::move(next);
  }
  EXPECT_EQ(graph.size(), oracle.size());
  const auto series = schreierGrowth(buildSchreier(p.cosets, 14));
  EXPECT_EQ(series.fit.verdict, GrowthClass::Exponential);
}

TEST(Schreier, GrowthClassification) {
  EXPECT_EQ(schreierGrowth(buildSchreier(buildFixture("z2-zline").cosets, 16)).fit.verdict,
            GrowthClass::Polynomial);
  const auto line = schreierGrowth(buildSchreier(buildFixture("z2-zline").cosets, 16));
  EXPECT_NEAR(line.fit.estimate, 1.0, 0.1);
  const auto ker = schreierGrowth(buildSchreier(buildFixture("f2-ker").cosets, 16));
  EXPECT_EQ(ker.fit.verdict, GrowthClass::Polynomial);
  EXPECT_NEAR(ker.fit.estimate, 1.0, 0.1);
  const auto bsa = schreierGrowth(buildSchreier(buildFixture("bs-a").cosets, 16));
  EXPECT_EQ(bsa.fit.verdict, GrowthClass::Exponential);
  const auto heis = schreierGrowth(buildSchreier(buildFixture("heis-center").cosets, 16));
  EXPECT_EQ(heis.fit.verdict, GrowthClass::Polynomial);
  EXPECT_NEAR(heis.fit.estimate, 2.0, 0.2);
}

TEST(Schreier, GraphCap) {
  try {
    buildSchreier(buildFixture("f2-a").cosets, 12, 1000);
    FAIL();
  } catch (const CapError& e) {
    EXPECT_EQ(e.code(), ErrorCode::GraphTooLarge);
    EXPECT_EQ(e.lastCompleted(), 6);  // 3^6 = 729 vertices, 3^7 = 2187
  }
}

TEST(Schreier, FolnerOnTheLine) {
  const Pair p = buildFixture("z2-zline");
  const auto graph = buildSchreier(p.cosets, 8);
  const auto F = generatorKeys(*p.group);
  const auto w = folnerSearch(graph, F, 0.5);
  ASSERT_TRUE(w.has_value());
  // smallest ball: |V| = 5, boundary {-3, 3}
  EXPECT_EQ(w->radius, 2);
  EXPECT_EQ(w->volume, 5u);
  EXPECT_EQ(w->boundary, 2u);
  EXPECT_DOUBLE_EQ(w->ratio, 0.4);
  // the radius-4 ball also qualifies: boundary 2, size 9
  EXPECT_EQ(folnerBoundary(graph, F, 4), 2u);
  EXPECT_EQ(graph.ballSize(4), 9u);
  EXPECT_EQ(folnerBoundary(graph, F, 1), 2u);  // ratio 2/3 > 0.5
}

TEST(Schreier, FolnerCrudeBoundAcceptsBase) {
  for (const char* spec : {"f2-a", "bs-a", "z2-zline"}) {
    const Pair p = buildFixture(spec);
    const auto graph = buildSchreier(p.cosets, 3);
    const auto F = generatorKeys(*p.group);
    const auto w = folnerSearch(graph, F, 2.0 * static_cast<double>(F.size()));
    ASSERT_TRUE(w.has_value()) << spec;
    EXPECT_EQ(w->radius, 0) << spec;
  }
}

TEST(Schreier, NoFolnerBallInCosetTree) {
  const Pair p = buildFixture("f2-a");
  const auto graph = buildSchreier(p.cosets, 12);
  const auto F = generatorKeys(*p.group);
  EXPECT_FALSE(folnerSearch(graph, F, 0.1).has_value());
  // recount: every ball of the tree keeps a boundary of at least a fixed fraction
  for (int r = 0; r < 12; ++r) {
    const double ratio = static_cast<double>(folnerBoundary(graph, F, r)) /
                         static_cast<double>(graph.ballSize(r));
    EXPECT_GT(ratio, 0.1) << r;
  }
}

TEST(Schreier, RepresentativeIndicatorExamples) {
  const Pair p = buildFixture("z2-zline");
  const auto graph = buildSchreier(p.cosets, 4);
  const auto ball = enumerateBall(p.group, 4);
  const auto f0 = cosetRepresentativeIndicator<Rational>(graph, 0, ball);
  EXPECT_EQ(f0, QF::delta(p.group, p.group->identity()));
  const auto f2 = cosetRepresentativeIndicator<Rational>(graph, 2, ball);
  const auto expected = rdp::test::q(p.group, {{"(0,-2)", 1}, {"(0,-1)", 1}, {"(0,0)", 1},
                                               {"(0,1)", 1}, {"(0,2)", 1}});
  EXPECT_EQ(f2, expected);
  EXPECT_EQ(norm1(f2).squared, Rational(25));
  EXPECT_EQ(norm21(f2, *p.cosets).squared, Rational(5));
  try {
    cosetRepresentativeIndicator<Rational>(graph, 3, enumerateBall(p.group, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BallInsufficient);
  }
}

class SchreierLaws : public ::testing::TestWithParam<std::string> {};

TEST_P(SchreierLaws, DistancesRepresentativesTransitivity) {
  const Pair p = buildFixture(GetParam());
  const int R = 5;
  const auto graph = buildSchreier(p.cosets, R, 500'000);
  const auto ball = enumerateBall(p.group, R, 500'000);

  // BFS structure: each vertex beyond the base is a generator image of a closer vertex.
  for (std::size_t v = 1; v < graph.size(); ++v) {
    const int i = static_cast<int>(v);
    bool reached = false;
    for (std::size_t u = 0; u < graph.size() && !reached; ++u) {
      if (graph.distance(static_cast<int>(u)) != graph.distance(i) - 1) continue;
      for (std::size_t s = 0; s < graph.degree(); ++s) reached |= graph.target(static_cast<int>(u), s) == i;
    }
    ASSERT_TRUE(reached);
    ASSERT_EQ(graph.find(graph.representative(i)), i);
    ASSERT_EQ(ball.wordLength(graph.representative(i)), graph.distance(i));
  }

  const auto pool = ball.elements();
  Rng rng(31);
  for (int t = 0; t < 1000; ++t) {
    const auto& x = rdp::test::pick(rng, pool);
    const int v = graph.find(x);
    ASSERT_GE(v, 0);
    ASSERT_LE(graph.distance(v), ball.wordLength(x));
  }

  for (int Rr = 0; Rr <= R; ++Rr) {
    const auto f = cosetRepresentativeIndicator<Rational>(graph, Rr, ball);
    const Rational n1 = norm1(f).squared;  // squared l1 = gamma^2
    const Rational n21 = norm21(f, *p.cosets).squared;
    const auto gamma = graph.counts()[Rr];
    ASSERT_EQ(f.supportSize(), gamma);
    ASSERT_EQ(n1, Rational(gamma * gamma));
    ASSERT_EQ(n21, Rational(gamma));
    ASSERT_EQ(n1 / n21, Rational(gamma));  // (||f||_1 / ||f||_(2,1))^2
    std::set<CosetKey> cosets;
    for (const auto& [g, v] : f.entries()) {
      ASSERT_LE(ball.wordLength(g), Rr);
      ASSERT_TRUE(cosets.insert(p.cosets->cosetKey(g)).second);
    }
  }

  if (p.cosets->traits().normal) {
    const auto base = graph.countsFrom(0, 2);
    for (std::size_t v = 0; v < graph.size(); ++v) {
      const int i = static_cast<int>(v);
      if (graph.distance(i) + 2 > R) continue;
      ASSERT_EQ(graph.countsFrom(i, 2), base);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Pairs, SchreierLaws,
                         ::testing::Values("z2-zline", "f2-ker", "f2-a", "bs-a:n=2", "bs-t:n=2",
                                           "bs-dyadic:n=2", "heis-center", "s4-s3", "d8-refl",
                                           "zd-sublattice:d=2,k=2"),
                         safeName);
