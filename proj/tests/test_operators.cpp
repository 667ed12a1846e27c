#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "rdpairs/error.hpp"
#include "rdpairs/fixtures.hpp"
#include "rdpairs/operators.hpp"
#include "rdpairs/walks.hpp"
#include "support.hpp"

using namespace rdp;
using rdp::test::q;
using rdp::test::r;
using QF = GroupFunction<Rational>;

namespace {

// Dense matrix of lambda_{G/H}(f) on a complete Schreier graph: M(v, u) = sum_z f(z) [z.u = v].
Eigen::MatrixXd denseQuasiRegular(const GroupFunction<double>& f, const SchreierGraph& graph) {
  const auto n = static_cast<Eigen::Index>(graph.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index u = 0; u < n; ++u) {
    for (const auto& [z, v] : f.entries()) {
      const int t = graph.find(graph.group().multiply(z, graph.representative(static_cast<int>(u))));
      M(t, u) += v;
    }
  }
  return M;
}

CosetVector<Rational> randomVector(const SchreierGraph& graph, Rng& rng, int maxDist) {
  CosetVector<Rational> xi(graph.size(), Rational(0));
  for (std::size_t v = 0; v < graph.size(); ++v) {
    if (graph.distance(static_cast<int>(v)) <= maxDist && rng.below(2)) {
      xi[v] = r(rng.between(-5, 5), rng.between(1, 3));
    }
  }
  return xi;
}

}  // namespace

TEST(Operators, IdentityActsTrivially) {
  const Pair p = buildFixture("bs-a");
  const auto graph = buildSchreier(p.cosets, 4);
  Rng rng(1);
  const auto xi = randomVector(graph, rng, 4);
  EXPECT_EQ(applyQuasiRegular(QF::delta(p.group, p.group->identity()), graph, xi), xi);
}

TEST(Operators, UniformMeasureOnTheLine) {
  const Pair p = buildFixture("z2-zline");
  const auto graph = buildSchreier(p.cosets, 2);
  const auto mu = uniformOnGenerators<Rational>(p.group).function();
  const auto out = applyQuasiRegular(mu, graph, baseVector<Rational>(graph));
  Rational total = 0;
  for (std::size_t v = 0; v < graph.size(); ++v) {
    const int i = static_cast<int>(v);
    const Rational expected = graph.distance(i) == 0 ? r(1, 2) : graph.distance(i) == 1 ? r(1, 4) : r(0);
    EXPECT_EQ(out[v], expected) << graph.cosets().format(graph.key(i));
    total += out[v];
  }
  EXPECT_EQ(total, r(1));
}

TEST(Operators, RepresentationIsMultiplicative) {
  for (const char* spec : {"f2-a", "bs-a", "heis-center", "d8-refl"}) {
    const Pair p = buildFixture(spec);
    const auto graph = buildSchreier(p.cosets, 8);
    const auto pool = enumerateBall(p.group, 2).elements();
    Rng rng(12);
    for (int t = 0; t < 20; ++t) {
      const auto f = randomFunction<Rational>(p.group, pool, rng, {5, 9, 4, true});
      const auto phi = randomFunction<Rational>(p.group, pool, rng, {5, 9, 4, true});
      const auto xi = randomVector(graph, rng, 4);
      EXPECT_EQ(applyQuasiRegular(convolve(f, phi), graph, xi),
                applyQuasiRegular(f, graph, applyQuasiRegular(phi, graph, xi)))
          << spec;
      // adjoint: <lambda(f) xi, eta> = <xi, lambda(f^*) eta>
      const auto eta = randomVector(graph, rng, 4);
      const QuasiRegularOperator<Rational> op(f, graph);
      EXPECT_EQ(innerProduct(op.apply(xi), eta), innerProduct(xi, op.applyAdjoint(eta))) << spec;
    }
  }
}

TEST(Operators, TruncationOverflow) {
  const Pair p = buildFixture("z2-zline");
  const auto graph = buildSchreier(p.cosets, 3);
  CosetVector<Rational> xi(graph.size(), Rational(0));
  xi.back() = 1;  // a vertex at distance 3
  try {
    applyQuasiRegular(uniformOnGenerators<Rational>(p.group).function(), graph, xi);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TruncationOverflow);
  }
}

TEST(Operators, TranslationBracketIsOne) {
  for (const char* spec : {"f2-a", "z2-zline", "bs-t"}) {
    const Pair p = buildFixture(spec);
    const auto graph = buildSchreier(p.cosets, 6);
    const auto g = p.group->generators()[2].key;
    const auto b = hybridNormBracket(QF::delta(p.group, g), graph);
    EXPECT_EQ(b.lowerSquared, r(1)) << spec;
    EXPECT_EQ(b.upperSquared, r(1)) << spec;
  }
}

TEST(Operators, CoAmenableBracketTightensTowardL1) {
  const Pair p = buildFixture("z2-zline");
  const auto mu = toFloat(uniformOnGenerators<Rational>(p.group).function());
  double prevLower = 0.0;
  for (int radius : {10, 40, 160}) {
    const auto graph = buildSchreier(p.cosets, radius);
    const auto b = hybridNormBracket(mu, graph, {400, {}, 1e-12});
    EXPECT_DOUBLE_EQ(b.upper(), 1.0);
    EXPECT_LE(b.lower(), b.upper());
    EXPECT_GE(b.lower(), prevLower);
    for (std::size_t i = 1; i < b.log.size(); ++i) EXPECT_GE(b.log[i], b.log[i - 1]);
    prevLower = b.lower();
  }
  EXPECT_GT(prevLower, 0.99);
}

TEST(Operators, NegativeEntryRejected) {
  const Pair p = buildFixture("z2-zline");
  const auto graph = buildSchreier(p.cosets, 3);
  try {
    hybridNormBracket(q(p.group, {{"(1,0)", r(-1)}}), graph);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeEntry);
  }
}

TEST(Operators, FiniteBracketMatchesDenseSingularValue) {
  const Pair p = buildFixture("s4-s3");
  const auto graph = buildSchreier(p.cosets, 6);
  ASSERT_TRUE(graph.complete());
  const auto pool = enumerateBall(p.group, 6).elements();
  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    const auto f = toFloat(randomFunction<Rational>(p.group, pool, rng, {10, 9, 4, false}));
    const auto b = hybridNormBracket(f, graph, {200, {}, 1e-12});
    const double sigma = Eigen::JacobiSVD<Eigen::MatrixXd>(denseQuasiRegular(f, graph)).singularValues()(0);
    EXPECT_LE(b.lower(), sigma * (1 + 1e-12));
    EXPECT_GE(b.upper(), sigma * (1 - 1e-12));
    EXPECT_NEAR(b.lower(), sigma, 1e-8 * sigma);
  }
}

TEST(Operators, SignedBracketOnTheIntegers) {
  const Pair p = buildFixture("z-trivial");
  const auto graph = buildSchreier(p.cosets, 4);
  const auto f = q(p.group, {{"(1)", r(1)}, {"(-1)", r(-1)}});
  const auto b = generalHybridBracket(f, graph);
  EXPECT_LE(b.upperSquared, r(4));
  EXPECT_GE(b.lowerSquared, r(2));
  EXPECT_LE(b.lowerSquared, b.upperSquared);

  const auto pos = q(p.group, {{"(1)", r(1)}, {"(0)", r(2)}});
  const auto g = generalHybridBracket(pos, graph);
  const auto h = hybridNormBracket(pos, graph);
  EXPECT_EQ(g.lowerSquared, h.lowerSquared);
  EXPECT_EQ(g.upperSquared, h.upperSquared);
}

TEST(Operators, SignedBracketContainsFiniteValue) {
  // On a finite group with H trivial, ||f||_h is the top singular value of the regular
  // representation.
  const Pair p = buildFixture("d8-trivial");
  const auto graph = buildSchreier(p.cosets, 8);
  ASSERT_TRUE(graph.complete());
  const auto pool = enumerateBall(p.group, 4).elements();
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    const auto f = randomFunction<Rational>(p.group, pool, rng, {6, 9, 4, true});
    const auto b = generalHybridBracket(f, graph);
    const double sigma =
        Eigen::JacobiSVD<Eigen::MatrixXd>(denseQuasiRegular(toFloat(f), graph)).singularValues()(0);
    EXPECT_LE(b.lower(), sigma * (1 + 1e-12));
    EXPECT_GE(b.upper(), sigma * (1 - 1e-12));
  }
}

TEST(Operators, SpectralOfTranslationIsOne) {
  const Pair p = buildFixture("f2-a");
  const auto g = QF::delta(p.group, p.group->parse("ab"));
  for (auto kind : {SpectralKind::Rho1, SpectralKind::Rho21Power}) {
    const auto est = spectralRadius(g, kind, p.cosets, {6});
    for (double v : est.sequence) EXPECT_DOUBLE_EQ(v, 1.0);
    EXPECT_DOUBLE_EQ(est.extrapolated, 1.0);
  }
}

TEST(Operators, SpectralOfProbabilityIsOne) {
  const Pair p = buildFixture("z-trivial");
  const auto mu = uniformOnGenerators<Rational>(p.group).function();
  const auto est = spectralRadius(mu, SpectralKind::Rho1, p.cosets, {10});
  ASSERT_EQ(est.sequence.size(), 10u);
  for (double v : est.sequence) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(Operators, SpectralKindNames) {
  for (auto k : {SpectralKind::Rho1, SpectralKind::Rho21Power, SpectralKind::RhoS, SpectralKind::RhoH,
                 SpectralKind::RhoStar}) {
    EXPECT_EQ(parseSpectralKind(toString(k)), k);
  }
}

TEST(Operators, CayleyReturnsNeverExceedCosetReturns) {
  // <A^n delta_H, delta_H> sums A^n over H, so it dominates the value at e.
  for (const char* spec : {"f2-a", "bs-a", "heis-center"}) {
    const Pair p = buildFixture(spec);
    const auto pool = enumerateBall(p.group, 1).elements();
    Rng rng(3);
    const auto f = toFloat(randomFunction<Rational>(p.group, pool, rng, {4, 9, 4, false}));
    const auto star = spectralRadius(f, SpectralKind::RhoStar, p.cosets, {4});
    const auto hyb = spectralRadius(f, SpectralKind::RhoH, p.cosets, {4});
    for (std::size_t n = 0; n < star.sequence.size(); ++n) {
      EXPECT_LE(star.sequence[n], hyb.sequence[n] + 1e-12) << spec << " n=" << n + 1;
    }
  }
}

TEST(Operators, PowerOverflowReportsLastPower) {
  const Pair p = buildFixture("f2-free");
  const auto mu = uniformOnGenerators<Rational>(p.group).function();
  try {
    spectralRadius(mu, SpectralKind::Rho1, p.cosets, {12, 1.0, 100});
    FAIL();
  } catch (const CapError& e) {
    EXPECT_EQ(e.code(), ErrorCode::PowerOverflow);
    EXPECT_GE(e.lastCompleted(), 1);
  }
}

TEST(Operators, CoefficientDecayExamples) {
  const Pair p = buildFixture("z2-zline");
  const auto graph = buildSchreier(p.cosets, 6);
  const auto ball = enumerateBall(p.group, 3);
  const auto base = baseVector<Rational>(graph);
  EXPECT_EQ(coefficientDecaySum(graph, ball, base, base, 0), r(1));
  EXPECT_EQ(coefficientDecaySum(graph, ball, base, base, 1), r(3));

  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    CosetVector<double> xi(graph.size(), 0.0), eta(graph.size(), 0.0);
    double nx = 0, ne = 0;
    for (std::size_t v = 0; v < graph.size(); ++v) {
      xi[v] = rng.unit() - 0.5;
      eta[v] = rng.unit() - 0.5;
      nx += xi[v] * xi[v];
      ne += eta[v] * eta[v];
    }
    for (auto& x : xi) x /= std::sqrt(nx);
    for (auto& x : eta) x /= std::sqrt(ne);
    for (int R = 0; R <= 3; ++R) {
      EXPECT_LE(coefficientDecaySum(graph, ball, xi, eta, R),
                static_cast<double>(ball.ballCounts()[R]) * (1 + 1e-12));
    }
  }
}

TEST(Operators, AitkenOnGeometricTail) {
  std::vector<double> v;
  for (int n = 0; n < 10; ++n) v.push_back(2.0 - std::pow(0.5, n));
  EXPECT_NEAR(aitkenTail(v, 4), 2.0 - std::pow(0.5, 9), 1e-15);  // clamped to the window
  EXPECT_DOUBLE_EQ(aitkenTail({1.0, 1.0, 1.0}, 3), 1.0);
}

TEST(Operators, SupportRadius) {
  const Pair p = buildFixture("bs-a");
  const std::vector<ElementKey> s{p.group->parse("(0,2)"), p.group->parse("(1,0)")};
  EXPECT_EQ(supportRadius(*p.group, s), 2);
}
