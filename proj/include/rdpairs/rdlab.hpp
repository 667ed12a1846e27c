#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rdpairs/fixtures.hpp"
#include "rdpairs/operators.hpp"
#include "rdpairs/walks.hpp"

namespace rdp {

using Json = nlohmann::ordered_json;

enum class FitVerdict { PolynomialConsistent, ExponentialConsistent, Inconclusive };

std::string_view toString(FitVerdict v);

enum class FamilyKind { SphereIndicators, CosetRepresentatives, RandomPositive };

/// Test-function family for exponent fits.
struct Family {
  FamilyKind kind = FamilyKind::CosetRepresentatives;
  std::uint64_t seed = 0;   // RandomPositive only
  int samples = 8;          // RandomPositive: functions per radius

  std::string toString() const;
  /// "spheres", "cosetreps" or "random:<seed>".
  static Family parse(std::string_view text);
};

struct FitConfig {
  int lo = 4;
  int hi = 14;
  /// Power-iteration graph radius is hi * (1 + 2 * iterations), shrunk to what fits graphCap.
  int iterations = 6;
  std::size_t graphCap = 200'000;
  std::size_t ballCap = 2'000'000;
  ClassifierOptions classifier{kDefaultMinWindow, 1.0, 0.1};
};

/// M(R) = max over the family of certifiedLower(||f||_h) / ||f||_(2,1), R in [lo, hi].
struct ExponentFit {
  std::string family;
  std::vector<int> radii;
  std::vector<double> ratios;
  std::vector<double> lowers;   // certified lower bound of ||f||_h at the maximizing f
  std::vector<double> norms21;  // ||f||_(2,1) at the maximizing f
  /// Which bound produced the lower: "l1" (co-amenable), "power" or "norm21".
  std::vector<std::string> sources;
  GrowthVerdict fit;
  FitVerdict verdict = FitVerdict::Inconclusive;
  double dHat = 0.0;  // log-log slope of M against 1 + R over the fit range
  double CHat = 0.0;  // max over computed R of M(R) / (1 + R)^dHat
  bool nested = false;
  bool ratiosNondecreasing = false;
  int truncationRadius = 0;
  /// Set when a cap stopped the run before hi; radii holds the completed prefix.
  std::optional<std::string> stopReason;
};

/// Lower bound for ||f||_h of a positive f: max of ||f||_(2,1), ||f||_1 when H is
/// co-amenable, and power iteration on `graph` otherwise (graph may be null).
struct CertifiedLower {
  double value = 0.0;
  std::string source;
};
CertifiedLower certifiedLower(const GroupFunction<Rational>& f, const CosetStructure& cosets,
                              const SchreierGraph* graph, int iterations);

ExponentFit rdExponentFit(const Pair& pair, const Family& family, const FitConfig& config = {});

/// C in n^{-2d} <= C rho^{-2n} P_2n from an exponent fit and the walk step radius:
/// CHat^2 (2 L)^(2 dHat).
double walkConstant(const ExponentFit& fit, int stepRadius);

/// One pass/fail record; failures carry the serialized inputs.
struct CheckRecord {
  std::string name;
  bool passed = true;
  /// Exact-mode checks decide the suite verdict; the others are recorded evidence.
  bool exact = true;
  Json evidence = Json::object();
  Json reproducer = Json();
};

struct SuiteReport {
  std::string fixture;
  Json provenance = Json::object();
  std::vector<CheckRecord> checks;

  bool passed() const;
  Json toJson() const;
};

/// Injected corruptions used to validate the harness.
enum class Mutation { None, ShiftedCoset, ScaledPairing, SobolevWeightShift };

std::string_view toString(Mutation m);
Mutation parseMutation(std::string_view text);

struct BatteryConfig {
  int trials = 100;
  int s = 2;  // Sobolev exponent for check (c)
  std::size_t ballCap = 200'000;
  Mutation mutation = Mutation::None;
};

/// Outcome of the three battery checks on one triple (f, phi, psi).
struct BatteryOutcome {
  bool pairingBound = false;
  bool pairingIdentity = false;
  bool sphericalBound = false;
};

/// f supported in B(R) = ball; phi, psi positive.
BatteryOutcome batteryTrial(const CosetStructure& cosets, const BallIndex& ball,
                            const GroupFunction<Rational>& f, const GroupFunction<Rational>& phi,
                            const GroupFunction<Rational>& psi, int s, Mutation mutation);

/// Checks (a) pairing bound, (b) pairing identity at psi = (f*phi)^*, (c) spherical bound,
/// exactly, on seeded random positive f, phi, psi supported in B(R).
SuiteReport equivalenceBattery(const Pair& pair, int R, std::uint64_t seed,
                               const BatteryConfig& config = {});

struct LeptinConfig {
  std::vector<int> truncationRadii{10, 20, 40};
  int maxIterations = 200;
  double threshold = 0.05;
  Mode mode = Mode::Float;
  std::size_t graphCap = 200'000;
};

/// gap = ||f||_1 - lower(||f||_h) per truncation radius for positive f.
CheckRecord leptinCheck(const Pair& pair, const GroupFunction<Rational>& f,
                        const LeptinConfig& config = {});

/// Two-term splitting bound for ||f*psi||_{s,(2,1)} with ||.||_h relaxed to ||.||_1.
CheckRecord banachAlgebraCheck(const Pair& pair, int s, int R, std::uint64_t seed,
                               int trials = 50);

/// ||f*phi||_(2,1) = ||pi(|f*phi|)||_2 <= ||pi(|f|) * pi(|phi|)||_2 on signed pairs, and
/// ||lift(u)||_(2,1) = ||u||_2 for quotient functions lifted along the BFS transversal.
/// Throws NotNormal.
CheckRecord normalQuotientCheck(const Pair& pair, int R, std::uint64_t seed, int trials = 100);

/// Exponent fits on derived pairs: products and restrictions.
struct StabilityCase {
  std::string label;
  Pair pair;
  /// Polynomial verdict expected from the component facts.
  bool expectPolynomial = true;
};
std::vector<StabilityCase> defaultStabilityCases();
SuiteReport stabilityChecks(const std::vector<StabilityCase>& cases, const FitConfig& config);

struct SuiteConfig {
  int R = 3;
  std::uint64_t seed = 0;
  Mode mode = Mode::Exact;
  int trials = 100;
  int s = 2;
  bool includeFit = true;
  FitConfig fit;
  Family family;
  Mutation mutation = Mutation::None;
};

/// All checks that apply to one fixture.
SuiteReport runSuite(const Pair& pair, const FixtureSpec& spec, const SuiteConfig& config);

/// {"g": format(g), "value": exact text} per entry, in key order.
Json functionToJson(const GroupFunction<Rational>& f);
Json fitToJson(const ExponentFit& fit);

}  // namespace rdp
