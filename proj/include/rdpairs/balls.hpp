#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rdpairs/group_model.hpp"

namespace rdp {

inline constexpr std::size_t kDefaultBallCap = 5'000'000;
inline constexpr int kDefaultMinWindow = 8;

/// Word-length ball B(R) split into spheres S_0..S_R.
class BallIndex {
 public:
  BallIndex(ModelPtr group, std::vector<std::vector<ElementKey>> spheres);

  const GroupModel& group() const noexcept { return *group_; }
  const ModelPtr& groupPtr() const noexcept { return group_; }
  int radius() const noexcept { return static_cast<int>(spheres_.size()) - 1; }
  const std::vector<ElementKey>& sphere(int n) const { return spheres_.at(n); }
  const std::vector<std::vector<ElementKey>>& spheres() const noexcept { return spheres_; }
  std::size_t size() const noexcept { return length_.size(); }

  bool contains(const ElementKey& g) const { return length_.contains(g); }
  /// Throws NotEnumerated outside the ball.
  int wordLength(const ElementKey& g) const;

  /// All elements in BFS order (sphere by sphere).
  std::vector<ElementKey> elements() const;
  /// |B(r)| for r = 0..radius.
  std::vector<std::uint64_t> ballCounts() const;

 private:
  ModelPtr group_;
  std::vector<std::vector<ElementKey>> spheres_;
  std::unordered_map<ElementKey, int, KeyHash> length_;
};

/// BFS from the identity in generator order. Throws CapError(BallTooLarge) carrying the
/// largest radius that completed under `cap` elements.
BallIndex enumerateBall(const ModelPtr& group, int radius, std::size_t cap = kDefaultBallCap);

enum class GrowthClass { Polynomial, Exponential, Inconclusive };

std::string_view toString(GrowthClass c);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

/// Ordinary least squares y = intercept + slope * x; requires at least two distinct x.
LinearFit leastSquares(std::span<const double> x, std::span<const double> y);

struct GrowthVerdict {
  GrowthClass verdict = GrowthClass::Inconclusive;
  /// Degree (polynomial) or log-rate (exponential); the fitted slope of the winning model,
  /// the log-log slope when inconclusive.
  double estimate = 0.0;
  LinearFit semilog;  // log y against r
  LinearFit loglog;   // log y against log(r + offset)
  int fitLo = 0;
  int fitHi = 0;
};

struct ClassifierOptions {
  int minWindow = kDefaultMinWindow;
  /// Added to r before the logarithm in the log-log fit.
  double offset = 0.0;
  /// Minimum semilog slope for an exponential verdict.
  double minRate = 0.1;
};

/// Classifies positive values y[r] over the window [lo, hi] by fitting the upper half
/// [ceil((lo+hi)/2), hi] (r >= 1 when offset = 0). Exponential if the semilog RMS is at most
/// half the log-log RMS and the rate is >= minRate; polynomial in the symmetric case.
/// Throws WindowTooSmall when hi - lo < minWindow.
GrowthVerdict classifyGrowth(std::span<const double> y, int lo, int hi,
                             const ClassifierOptions& options = {});

struct GrowthSeries {
  std::vector<std::uint64_t> counts;
  GrowthVerdict fit;
};

/// gamma(r) = |B(r)| for r = 0..radius with its classification over [0, radius].
GrowthSeries growthSeries(const std::vector<std::uint64_t>& counts,
                          const ClassifierOptions& options = {});
GrowthSeries growthSeries(const BallIndex& ball, const ClassifierOptions& options = {});

}  // namespace rdp
