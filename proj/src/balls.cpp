#include "rdpairs/balls.hpp"

#include <cmath>

#include "rdpairs/error.hpp"

namespace rdp {

BallIndex::BallIndex(ModelPtr group, std::vector<std::vector<ElementKey>> spheres)
    : group_(std::move(group)), spheres_(std::move(spheres)) {
  for (std::size_t n = 0; n < spheres_.size(); ++n) {
    for (const auto& g : spheres_[n]) length_.emplace(g, static_cast<int>(n));
  }
}

int BallIndex::wordLength(const ElementKey& g) const {
  const auto it = length_.find(g);
  if (it == length_.end()) {
    throw Error(ErrorCode::NotEnumerated,
                group_->format(g) + " is outside B(" + std::to_string(radius()) + ")");
  }
  return it->second;
}

std::vector<ElementKey> BallIndex::elements() const {
  std::vector<ElementKey> out;
  out.reserve(length_.size());
  for (const auto& s : spheres_) out.insert(out.end(), s.begin(), s.end());
  return out;
}

std::vector<std::uint64_t> BallIndex::ballCounts() const {
  std::vector<std::uint64_t> out;
  std::uint64_t total = 0;
  for (const auto& s : spheres_) {
    total += s.size();
    out.push_back(total);
  }
  return out;
}

BallIndex enumerateBall(const ModelPtr& group, int radius, std::size_t cap) {
  if (radius < 0) throw Error(ErrorCode::InvalidArgument, "radius must be >= 0");
  std::unordered_map<ElementKey, int, KeyHash> seen;
  std::vector<std::vector<ElementKey>> spheres{{group->identity()}};
  seen.emplace(group->identity(), 0);
  for (int n = 1; n <= radius; ++n) {
    std::vector<ElementKey> next;
    for (const auto& g : spheres.back()) {
      for (const auto& s : group->generators()) {
        ElementKey h = group->multiply(g, s.key);
        if (seen.emplace(h, n).second) {
          if (seen.size() > cap) {
            throw CapError(ErrorCode::BallTooLarge,
                           "ball of " + group->name() + " exceeds " + std::to_string(cap) +
                               " elements at radius " + std::to_string(n),
                           n - 1);
          }
          next.push_back(std::move(h));
        }
      }
    }
    if (next.empty()) break;  // finite group exhausted; larger spheres are empty
    spheres.push_back(std::move(next));
  }
  while (static_cast<int>(spheres.size()) <= radius) spheres.emplace_back();
  return BallIndex(group, std::move(spheres));
}

std::string_view toString(GrowthClass c) {
  switch (c) {
    case GrowthClass::Polynomial: return "polynomial";
    case GrowthClass::Exponential: return "exponential";
    case GrowthClass::Inconclusive: return "inconclusive";
  }
  return "?";
}

LinearFit leastSquares(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "least squares needs two or more points");
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::InvalidArgument, "least squares needs distinct x");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / n);
  return fit;
}

GrowthVerdict classifyGrowth(std::span<const double> y, int lo, int hi,
                             const ClassifierOptions& options) {
  if (lo < 0 || hi >= static_cast<int>(y.size()) || hi - lo < options.minWindow) {
    throw Error(ErrorCode::WindowTooSmall,
                "window [" + std::to_string(lo) + ", " + std::to_string(hi) +
                    "] is narrower than " + std::to_string(options.minWindow) +
                    " or outside the " + std::to_string(y.size()) + " available values");
  }
  GrowthVerdict out;
  out.fitLo = (lo + hi + 1) / 2;
  if (options.offset <= 0.0 && out.fitLo < 1) out.fitLo = 1;
  out.fitHi = hi;
  std::vector<double> r;
  std::vector<double> logr;
  std::vector<double> logy;
  for (int i = out.fitLo; i <= hi; ++i) {
    if (!(y[i] > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "growth values must be positive");
    }
    r.push_back(i);
    logr.push_back(std::log(i + options.offset));
    logy.push_back(std::log(y[i]));
  }
  out.semilog = leastSquares(r, logy);
  out.loglog = leastSquares(logr, logy);
  constexpr double slack = 1e-12;
  if (out.semilog.rms <= 0.5 * out.loglog.rms + slack && out.semilog.slope >= options.minRate) {
    out.verdict = GrowthClass::Exponential;
    out.estimate = out.semilog.slope;
  } else if (out.loglog.rms <= 0.5 * out.semilog.rms + slack) {
    out.verdict = GrowthClass::Polynomial;
    out.estimate = out.loglog.slope;
  } else {
    out.verdict = GrowthClass::Inconclusive;
    out.estimate = out.loglog.slope;
  }
  return out;
}

GrowthSeries growthSeries(const std::vector<std::uint64_t>& counts,
                          const ClassifierOptions& options) {
  GrowthSeries out;
  out.counts = counts;
  std::vector<double> y(counts.begin(), counts.end());
  out.fit = classifyGrowth(y, 0, static_cast<int>(y.size()) - 1, options);
  return out;
}

GrowthSeries growthSeries(const BallIndex& ball, const ClassifierOptions& options) {
  return growthSeries(ball.ballCounts(), options);
}

}  // namespace rdp
