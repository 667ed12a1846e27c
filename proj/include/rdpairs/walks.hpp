#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rdpairs/harmonic.hpp"
#include "rdpairs/operators.hpp"
#include "rdpairs/schreier.hpp"

namespace rdp {

inline constexpr int kDefaultExactSteps = 8;

/// Probability measure on G with finite support.
template <class S>
class Measure {
 public:
  /// Throws InvalidArgument unless mu is positive with total mass 1 (exact in rational mode,
  /// within 1e-12 in float mode).
  explicit Measure(GroupFunction<S> mu, int generationDepth = 4);

  const GroupFunction<S>& function() const noexcept { return mu_; }
  bool symmetric() const noexcept { return symmetric_; }
  /// Every catalog generator is a product of at most generationDepth support elements.
  bool generates() const noexcept { return generates_; }
  /// Largest word length on the support.
  int stepRadius() const noexcept { return stepRadius_; }

 private:
  GroupFunction<S> mu_;
  bool symmetric_ = false;
  bool generates_ = false;
  int stepRadius_ = 0;
};

/// Uniform measure on the catalog generating set.
template <class S>
Measure<S> uniformOnGenerators(const ModelPtr& group);

/// mu^(n). Throws CapError(PowerOverflow) when the support exceeds `cap`.
template <class S>
GroupFunction<S> nStepDistribution(const Measure<S>& mu, int n, std::size_t cap = kDefaultBallCap);

/// P_2n(H,H) = sum_{h in H} mu^(2n)(h), as the return mass of the induced chain on G/H.
/// The chain runs on the Schreier ball of radius n * stepRadius, which every returning path
/// stays inside, so dropping mass that leaves it is exact. Requires symmetric mu.
template <class S>
S returnProbability(const Measure<S>& mu, const CosetStructure& cosets, int n,
                    std::size_t cap = kDefaultGraphCap);

/// Same quantity by convolving mu^(2n) on G and summing over H.
template <class S>
S returnProbabilityOnGroup(const Measure<S>& mu, const CosetStructure& cosets, int n,
                           std::size_t cap = kDefaultBallCap);

/// P_2n for n = 1..N in one chain run (index n-1).
template <class S>
std::vector<S> returnSequence(const Measure<S>& mu, const CosetsPtr& cosets, int N,
                              std::size_t cap = kDefaultGraphCap);

template <class S>
struct IdentityCheck {
  S lhs;  // P_2n(H,H)
  S rhs;  // ||mu^(n)||_(2,1)^2
  bool equal = false;
};

template <class S>
IdentityCheck<S> returnIdentityCheck(const Measure<S>& mu, const CosetsPtr& cosets, int n,
                                     std::size_t cap = kDefaultBallCap);

struct WalkReport {
  Mode mode = Mode::Exact;
  /// P_2n for n = 1..N; exact rationals as strings in exact mode, shortest doubles otherwise.
  std::vector<std::string> returnsText;
  std::vector<double> returns;
  /// P_2n^{1/2n}.
  std::vector<double> radiusSequence;
  /// sqrt(P_2n+2 / P_2n).
  std::vector<double> ratioSequence;
  /// Certified: every entry of both sequences is <= rho = ||mu||_h for symmetric mu.
  double rhoLower = 0.0;
  /// Aitken-accelerated ratio tail clamped to [rhoLower, rhoUpper]; an estimate, not a bound.
  double rhoEstimate = 0.0;
  /// min(1, ||mu||_1).
  double rhoUpper = 1.0;
  int stepRadius = 1;
};

struct WalkConfig {
  int N = 20;
  /// Exact arithmetic is used when requested and N <= exactSteps.
  bool exact = false;
  int exactSteps = kDefaultExactSteps;
  std::size_t cap = kDefaultGraphCap;
};

WalkReport walkSpectralRadius(const Measure<Rational>& mu, const CosetsPtr& cosets,
                              const WalkConfig& config);

struct LowerBoundRow {
  int n = 0;
  double lhs = 0.0;            // n^{-2d}
  double rhsConservative = 0;  // C rhoUpper^{-2n} P_2n
  double rhsAtLower = 0;       // C rhoLower^{-2n} P_2n
  bool pass = false;           // lhs <= rhsConservative
  bool passAtLower = false;    // lhs <= rhsAtLower
};

/// Checks n^{-2d} <= C rho^{-2n} P_2n(H,H) per n. The verdict uses rhoUpper, which can only
/// shrink the right side, so a pass is a pass for the true rho; the table also reports the
/// check at rhoLower. Throws MissingRho when the report has no positive rho bracket.
std::vector<LowerBoundRow> lowerBoundVerify(const WalkReport& report, double d, double C);

}  // namespace rdp
