#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rdpairs/balls.hpp"
#include "rdpairs/harmonic.hpp"
#include "rdpairs/schreier.hpp"

namespace rdp {

/// Dense vector over the vertices of a SchreierGraph, indexed like the graph.
template <class S>
using CosetVector = std::vector<S>;

template <class S>
CosetVector<S> baseVector(const SchreierGraph& graph);

template <class S>
S innerProduct(const CosetVector<S>& a, const CosetVector<S>& b);

/// lambda_{G/H}(f) on a built Schreier graph. Targets z.vH are resolved lazily by group
/// multiplication and cached.
template <class S>
class QuasiRegularOperator {
 public:
  QuasiRegularOperator(GroupFunction<S> f, const SchreierGraph& graph);

  /// (lambda(f) xi)(gH) = sum_z f(z) xi(z^-1 gH). Throws TruncationOverflow when mass would
  /// land outside the graph.
  CosetVector<S> apply(const CosetVector<S>& xi) const;
  /// lambda(f)^* = lambda(f^*).
  CosetVector<S> applyAdjoint(const CosetVector<S>& xi) const;

  const GroupFunction<S>& function() const noexcept { return f_; }
  const SchreierGraph& graph() const noexcept { return graph_; }

 private:
  CosetVector<S> applyWith(const GroupFunction<S>& f, std::vector<int>& cache,
                           const CosetVector<S>& xi) const;

  GroupFunction<S> f_;
  GroupFunction<S> adjoint_;
  const SchreierGraph& graph_;
  mutable std::vector<int> cache_;
  mutable std::vector<int> adjointCache_;
};

/// One-shot application.
template <class S>
CosetVector<S> applyQuasiRegular(const GroupFunction<S>& f, const SchreierGraph& graph,
                                 const CosetVector<S>& xi);

/// Bracket lower <= ||f||_h <= upper, stored through exact squares.
template <class S>
struct NormBracket {
  S lowerSquared = ScalarTraits<S>::zero();
  S upperSquared = ScalarTraits<S>::zero();
  std::string method;
  int iterations = 0;
  int truncationRadius = 0;
  bool truncated = false;  // iteration stopped because the next step would leave the graph
  /// Lower bound after each iteration; nondecreasing.
  std::vector<double> log;

  double lower() const { return std::sqrt(ScalarTraits<S>::toDouble(lowerSquared)); }
  double upper() const { return std::sqrt(ScalarTraits<S>::toDouble(upperSquared)); }
};

struct BracketConfig {
  int maxIterations = 60;
  /// Extra valid upper bounds for ||f||_h, combined by min with ||f||_1.
  std::vector<double> analyticUpper;
  /// Relative deflation of float-mode lower bounds against rounding.
  double floatDeflation = 1e-12;
};

/// Power iteration on lambda(f)^* lambda(f) from delta_H; every Rayleigh value
/// ||lambda(f) xi|| / ||xi|| is a lower bound for ||f||_h (positive f). Stops early at the
/// graph boundary. Throws NegativeEntry.
template <class S>
NormBracket<S> hybridNormBracket(const GroupFunction<S>& f, const SchreierGraph& graph,
                                 const BracketConfig& config = {});

/// Signed f: lower = max over deterministic test functions phi of
/// ||f*phi||_(2,1) / ||phi||_(2,1); upper = sum of the positive-part upper bounds.
template <class S>
NormBracket<S> generalHybridBracket(const GroupFunction<S>& f, const SchreierGraph& graph,
                                    const BracketConfig& config = {},
                                    const std::vector<GroupFunction<S>>& extraTests = {});

enum class SpectralKind { Rho1, Rho21Power, RhoS, RhoH, RhoStar };

std::string_view toString(SpectralKind k);
SpectralKind parseSpectralKind(std::string_view text);

struct SpectralConfig {
  int N = 12;
  double s = 1.0;  // Sobolev exponent for RhoS
  std::size_t cap = kDefaultBallCap;
  int tailWindow = 4;
};

struct SpectralRadiusEstimate {
  SpectralKind kind = SpectralKind::Rho1;
  double s = 0.0;
  /// ||f^(n)||^{1/n} (power kinds) or <A^n delta_H, delta_H>^{1/2n} with A = lambda(f^* f)
  /// (RhoH, RhoStar), n = 1..N.
  std::vector<double> sequence;
  /// m_{n+1} / m_n (power kinds), its square root for RhoH/RhoStar, n = 1..N-1.
  std::vector<double> ratios;
  double lastValue = 0.0;
  /// Aitken-accelerated ratio tail, clamped to [min, max] of the tail window. Power kinds on a
  /// finite group use the lag-|G| ratios (m_{n+|G|} / m_n)^{1/|G|} once N >= |G| + 3.
  double extrapolated = 0.0;
  int lag = 1;
  bool sequenceMonotone = false;
  bool ratiosMonotone = false;
};

/// Power kinds use convolution powers (normalized in float mode); RhoH uses the quasi-regular
/// representation on `cosets`, RhoStar the regular one. Throws CapError(PowerOverflow) with
/// the last completed n when the support or graph exceeds config.cap.
template <class S>
SpectralRadiusEstimate spectralRadius(const GroupFunction<S>& f, SpectralKind kind,
                                      const CosetsPtr& cosets, const SpectralConfig& config = {});

/// Largest word length on the support of f, by BFS up to `cap` elements.
int supportRadius(const GroupModel& group, const std::vector<ElementKey>& support,
                  std::size_t cap = kDefaultBallCap);

/// sum over gamma in B(R) of |<lambda(gamma) xi, eta>|^2; eta is zero off the built graph.
template <class S>
S coefficientDecaySum(const SchreierGraph& graph, const BallIndex& ball, const CosetVector<S>& xi,
                      const CosetVector<S>& eta, int R);

/// Aitken delta-squared on the last three values, clamped to [min, max] of the last
/// `window` values; returns the last value when the second difference vanishes.
double aitkenTail(const std::vector<double>& values, int window);

}  // namespace rdp
