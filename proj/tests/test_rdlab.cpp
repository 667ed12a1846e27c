#include <gtest/gtest.h>

#include <cmath>

#include "rdpairs/error.hpp"
#include "rdpairs/fixtures.hpp"
#include "rdpairs/rdlab.hpp"
#include "support.hpp"

using namespace rdp;
using rdp::test::r;

namespace {

const CheckRecord& find(const SuiteReport& report, const std::string& name) {
  for (const auto& c : report.checks) {
    if (c.name == name) return c;
  }
  throw std::runtime_error("no check " + name);
}

}  // namespace

TEST(Rdlab, FamilyRoundTrip) {
  for (const char* text : {"spheres", "cosetreps", "random:42"}) {
    EXPECT_EQ(Family::parse(text).toString(), text);
  }
  EXPECT_EQ(Family::parse("random:7").seed, 7u);
  EXPECT_THROW(Family::parse("nonsense"), Error);
}

TEST(Rdlab, MutationNames) {
  for (Mutation m : {Mutation::None, Mutation::ShiftedCoset, Mutation::ScaledPairing,
                     Mutation::SobolevWeightShift}) {
    EXPECT_EQ(parseMutation(toString(m)), m);
  }
  EXPECT_THROW(parseMutation("flip"), Error);
}

TEST(Rdlab, LineFitIsPolynomial) {
  const auto fit = rdExponentFit(buildFixture("z2-zline"), Family{});
  EXPECT_EQ(fit.verdict, FitVerdict::PolynomialConsistent);
  EXPECT_LE(fit.dHat, 1.5);
  EXPECT_GT(fit.CHat, 0.0);
  EXPECT_EQ(fit.radii.front(), 4);
  EXPECT_EQ(fit.radii.back(), 14);
  EXPECT_FALSE(fit.stopReason.has_value());
  // ratios are lower bounds over norms of the same f
  for (std::size_t i = 0; i < fit.ratios.size(); ++i) {
    EXPECT_NEAR(fit.ratios[i], fit.lowers[i] / fit.norms21[i], 1e-12);
  }
}

TEST(Rdlab, FitVerdictsAcrossPairs) {
  EXPECT_EQ(rdExponentFit(buildFixture("bs-a"), Family{}).verdict,
            FitVerdict::ExponentialConsistent);
  EXPECT_EQ(rdExponentFit(buildFixture("f2-ker"), Family{}).verdict,
            FitVerdict::PolynomialConsistent);
  EXPECT_EQ(rdExponentFit(buildFixture("bs-dyadic"), Family{}).verdict,
            FitVerdict::PolynomialConsistent);
}

TEST(Rdlab, CertifiedLowerOnCoAmenablePairIsL1) {
  const Pair p = buildFixture("z2-zline");
  const auto f = rdp::test::q(p.group, {{"(1,0)", r(1)}, {"(0,1)", r(2)}, {"(3,3)", r(1, 2)}});
  const auto c = certifiedLower(f, *p.cosets, nullptr, 0);
  EXPECT_EQ(c.source, "l1");
  EXPECT_DOUBLE_EQ(c.value, 3.5);
}

TEST(Rdlab, BatteryPassesOnLine) {
  const auto report = equivalenceBattery(buildFixture("z2-zline"), 3, 11, {40});
  ASSERT_EQ(report.checks.size(), 3u);
  for (const auto& c : report.checks) {
    EXPECT_TRUE(c.passed) << c.name;
    EXPECT_EQ(c.evidence["passed"], 40);
    EXPECT_TRUE(c.reproducer.is_null());
  }
  EXPECT_TRUE(report.passed());
}

TEST(Rdlab, MutationsAreCaught) {
  const Pair p = buildFixture("z2-zline");
  const struct {
    Mutation m;
    const char* check;
  } cases[] = {{Mutation::ShiftedCoset, "pairing-identity"},
               {Mutation::ScaledPairing, "pairing-identity"},
               {Mutation::SobolevWeightShift, "spherical-bound"}};
  for (const auto& c : cases) {
    BatteryConfig bc;
    bc.trials = 40;
    bc.mutation = c.m;
    const auto report = equivalenceBattery(p, 3, 11, bc);
    const auto& rec = find(report, c.check);
    EXPECT_FALSE(rec.passed) << toString(c.m);
    EXPECT_FALSE(rec.reproducer.is_null());
    EXPECT_EQ(rec.reproducer["fixture"], "z2-zline");
    EXPECT_FALSE(report.passed());
  }
}

TEST(Rdlab, ReproducerReplays) {
  // The recorded trial index reproduces the failing triple from the seed alone.
  BatteryConfig bc;
  bc.trials = 20;
  bc.mutation = Mutation::ScaledPairing;
  const Pair p = buildFixture("f2-ker");
  const auto report = equivalenceBattery(p, 2, 5, bc);
  const auto& rec = find(report, "pairing-identity");
  ASSERT_FALSE(rec.passed);
  bc.trials = rec.reproducer["trial"].get<int>() + 1;
  bc.mutation = Mutation::None;
  EXPECT_TRUE(equivalenceBattery(p, 2, 5, bc).passed());
}

TEST(Rdlab, LeptinGaps) {
  const Pair line = buildFixture("z2-zline");
  const auto mu = uniformOnGenerators<Rational>(line.group).function();
  const auto rec = leptinCheck(line, mu);
  EXPECT_TRUE(rec.passed);
  EXPECT_LT(rec.evidence["gap"].get<double>(), 0.05);

  const Pair tree = buildFixture("f2-a");
  const auto nonCo = leptinCheck(tree, uniformOnGenerators<Rational>(tree.group).function());
  EXPECT_TRUE(nonCo.passed);  // gap stays large, as expected for a non-co-amenable pair
  EXPECT_GE(nonCo.evidence["gap"].get<double>(), 0.05);

  const Pair whole = buildFixture("f2-whole");
  LeptinConfig exact;
  exact.mode = Mode::Exact;
  const auto w = leptinCheck(whole, uniformOnGenerators<Rational>(whole.group).function(), exact);
  EXPECT_TRUE(w.evidence["gapExactZero"].get<bool>());
  EXPECT_EQ(w.evidence["gap"].get<double>(), 0.0);

  const auto signedF = rdp::test::q(line.group, {{"(1,0)", r(1)}, {"(0,1)", r(-1)}});
  EXPECT_THROW(leptinCheck(line, signedF), Error);
}

TEST(Rdlab, BanachAlgebraAndNormalQuotient) {
  for (const char* spec : {"z2-zline", "f2-ker", "heis-center", "d8-rot"}) {
    const Pair p = buildFixture(spec);
    EXPECT_TRUE(banachAlgebraCheck(p, 2, 2, 3, 10).passed) << spec;
    EXPECT_TRUE(normalQuotientCheck(p, 3, 3, 30).passed) << spec;
  }
  try {
    normalQuotientCheck(buildFixture("f2-a"), 2, 0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotNormal);
  }
}

TEST(Rdlab, StabilityCasesArePolynomial) {
  const auto report = stabilityChecks(defaultStabilityCases(), FitConfig{});
  ASSERT_EQ(report.checks.size(), 3u);
  for (const auto& c : report.checks) EXPECT_TRUE(c.passed) << c.name << " " << c.evidence.dump();
}

TEST(Rdlab, SuiteJsonShape) {
  SuiteConfig config;
  config.trials = 10;
  config.seed = 7;
  config.includeFit = false;
  const auto spec = FixtureSpec::parse("z2-zline");
  const auto report = runSuite(buildFixture(spec), spec, config);
  EXPECT_TRUE(report.passed());
  const Json j = report.toJson();
  EXPECT_EQ(j["fixture"], "z2-zline");
  EXPECT_EQ(j["provenance"]["seed"], 7);
  std::vector<std::string> names;
  for (const auto& c : j["checks"]) names.push_back(c["name"]);
  const std::vector<std::string> expected{"pairing-bound",  "pairing-identity", "spherical-bound",
                                          "banach-algebra", "normal-quotient",  "return-identity",
                                          "leptin"};
  EXPECT_EQ(names, expected);
  // Same config, same bytes.
  EXPECT_EQ(runSuite(buildFixture(spec), spec, config).toJson().dump(), j.dump());
}

TEST(Rdlab, WalkLowerBoundFromLineFit) {
  const Pair p = buildFixture("z2-zline");
  const auto fit = rdExponentFit(p, Family{});
  const auto mu = uniformOnGenerators<Rational>(p.group);
  const double C = walkConstant(fit, mu.stepRadius());
  EXPECT_DOUBLE_EQ(C, fit.CHat * fit.CHat * std::pow(2.0, 2 * fit.dHat));
  const auto report = walkSpectralRadius(mu, p.cosets, {20});
  const auto rows = lowerBoundVerify(report, fit.dHat, C);
  ASSERT_EQ(rows.size(), 20u);
  for (const auto& row : rows) EXPECT_TRUE(row.pass) << row.n;
}
