#include "rdpairs/walks.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "rdpairs/error.hpp"

namespace rdp {

template <class S>
Measure<S>::Measure(GroupFunction<S> mu, int generationDepth) : mu_(std::move(mu)) {
  if (mu_.isZero() || !mu_.isPositive()) {
    throw Error(ErrorCode::InvalidArgument, "a measure needs nonnegative values and mass");
  }
  Accumulator<S> mass;
  for (const auto& [g, v] : mu_.entries()) mass.add(v);
  if constexpr (ScalarTraits<S>::mode == Mode::Exact) {
    if (mass.value() != 1) throw Error(ErrorCode::InvalidArgument, "total mass is not 1");
    symmetric_ = involute(mu_) == mu_;
  } else {
    if (std::fabs(mass.value() - 1.0) > 1e-12) {
      throw Error(ErrorCode::InvalidArgument, "total mass is not 1");
    }
    const GroupFunction<S> inv = involute(mu_);
    symmetric_ = inv.supportSize() == mu_.supportSize();
    for (std::size_t i = 0; symmetric_ && i < inv.supportSize(); ++i) {
      symmetric_ = inv.entries()[i].first == mu_.entries()[i].first &&
                   std::fabs(inv.entries()[i].second - mu_.entries()[i].second) <= 1e-15;
    }
  }
  const GroupModel& G = mu_.group();
  std::unordered_set<ElementKey, KeyHash> reached{G.identity()};
  std::vector<ElementKey> frontier{G.identity()};
  for (int d = 0; d < generationDepth; ++d) {
    std::vector<ElementKey> next;
    for (const auto& g : frontier) {
      for (const auto& [z, v] : mu_.entries()) {
        ElementKey h = G.multiply(g, z);
        if (reached.insert(h).second) next.push_back(std::move(h));
      }
    }
    frontier = std::move(next);
  }
  generates_ = true;
  for (const auto& s : G.generators()) generates_ = generates_ && reached.contains(s.key);
  std::vector<ElementKey> support;
  for (const auto& [g, v] : mu_.entries()) support.push_back(g);
  stepRadius_ = std::max(1, supportRadius(G, support));
}

template <class S>
Measure<S> uniformOnGenerators(const ModelPtr& group) {
  std::vector<typename GroupFunction<S>::Entry> entries;
  const long k = static_cast<long>(group->generators().size());
  for (const auto& s : group->generators()) {
    entries.emplace_back(s.key, ScalarTraits<S>::fromRatio(1, k));
  }
  return Measure<S>(GroupFunction<S>(group, std::move(entries)));
}

template <class S>
GroupFunction<S> nStepDistribution(const Measure<S>& mu, int n, std::size_t cap) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 0");
  const GroupFunction<S>& f = mu.function();
  GroupFunction<S> out = GroupFunction<S>::delta(f.groupPtr(), f.group().identity());
  for (int i = 1; i <= n; ++i) {
    out = convolve(out, f);
    if (out.supportSize() > cap) {
      throw CapError(ErrorCode::PowerOverflow,
                     "support of mu^(" + std::to_string(i) + ") exceeds the cap", i - 1);
    }
  }
  return out;
}

namespace {

template <class S>
void requireSymmetric(const Measure<S>& mu) {
  if (!mu.symmetric()) {
    throw Error(ErrorCode::InvalidArgument, "return probabilities need a symmetric measure");
  }
}

// One step of the induced chain; mass mapped outside the graph is dropped.
template <class S>
CosetVector<S> chainStep(const GroupFunction<S>& mu, const SchreierGraph& graph,
                         std::vector<int>& cache, const CosetVector<S>& v) {
  const std::size_t m = mu.supportSize();
  const std::size_t n = graph.size();
  if (cache.empty()) cache.assign(n * m, -2);
  CosetVector<S> out(n, ScalarTraits<S>::zero());
  for (std::size_t u = 0; u < n; ++u) {
    if (ScalarTraits<S>::isZero(v[u])) continue;
    for (std::size_t j = 0; j < m; ++j) {
      int& t = cache[u * m + j];
      if (t == -2) {
        t = graph.find(graph.group().multiply(mu.entries()[j].first,
                                              graph.representative(static_cast<int>(u))));
      }
      if (t >= 0) out[t] += mu.entries()[j].second * v[u];
    }
  }
  return out;
}

}  // namespace

template <class S>
std::vector<S> returnSequence(const Measure<S>& mu, const CosetsPtr& cosets, int N,
                              std::size_t cap) {
  requireSymmetric(mu);
  if (N < 0) throw Error(ErrorCode::InvalidArgument, "N must be >= 0");
  std::optional<SchreierGraph> graph;
  try {
    graph.emplace(buildSchreier(cosets, N * mu.stepRadius(), cap));
  } catch (const CapError& e) {
    const int done = static_cast<int>(e.lastCompleted()) / mu.stepRadius();
    throw CapError(ErrorCode::PowerOverflow,
                   "walk graph exceeds " + std::to_string(cap) + " cosets after n = " +
                       std::to_string(done),
                   done);
  }
  std::vector<int> cache;
  CosetVector<S> v = baseVector<S>(*graph);
  std::vector<S> out;
  for (int n = 1; n <= N; ++n) {
    v = chainStep(mu.function(), *graph, cache, v);
    v = chainStep(mu.function(), *graph, cache, v);
    out.push_back(v[0]);
  }
  return out;
}

template <class S>
S returnProbability(const Measure<S>& mu, const CosetStructure& cosets, int n, std::size_t cap) {
  if (n == 0) return ScalarTraits<S>::one();
  // The chain needs shared ownership only for the graph lifetime inside this call.
  const CosetsPtr alias(std::shared_ptr<const CosetStructure>(), &cosets);
  return returnSequence(mu, alias, n, cap).back();
}

template <class S>
S returnProbabilityOnGroup(const Measure<S>& mu, const CosetStructure& cosets, int n,
                           std::size_t cap) {
  requireSymmetric(mu);
  const GroupFunction<S> p = nStepDistribution(mu, 2 * n, cap);
  Accumulator<S> acc;
  for (const auto& [g, v] : p.entries()) {
    if (cosets.inSubgroup(g)) acc.add(v);
  }
  return acc.value();
}

template <class S>
IdentityCheck<S> returnIdentityCheck(const Measure<S>& mu, const CosetsPtr& cosets, int n,
                                     std::size_t cap) {
  IdentityCheck<S> out{returnProbability(mu, *cosets, n, cap),
                       norm21(nStepDistribution(mu, n, cap), *cosets).squared, false};
  if constexpr (ScalarTraits<S>::mode == Mode::Exact) {
    out.equal = out.lhs == out.rhs;
  } else {
    out.equal = std::fabs(out.lhs - out.rhs) <= 1e-12 * std::max(1.0, std::fabs(out.rhs));
  }
  return out;
}

WalkReport walkSpectralRadius(const Measure<Rational>& mu, const CosetsPtr& cosets,
                              const WalkConfig& config) {
  WalkReport report;
  report.stepRadius = mu.stepRadius();
  report.rhoUpper = std::min(1.0, std::sqrt(norm1(mu.function()).squared.get_d()));
  std::vector<double> p;
  if (config.exact && config.N <= config.exactSteps) {
    report.mode = Mode::Exact;
    for (const auto& q : returnSequence(mu, cosets, config.N, config.cap)) {
      report.returnsText.push_back(q.get_str());
      p.push_back(q.get_d());
    }
  } else {
    report.mode = Mode::Float;
    const Measure<double> muf(toFloat(mu.function()));
    for (double q : returnSequence(muf, cosets, config.N, config.cap)) {
      report.returnsText.push_back(formatDouble(q));
      p.push_back(q);
    }
  }
  report.returns = p;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    report.radiusSequence.push_back(std::pow(p[i], 1.0 / (2.0 * n)));
    report.rhoLower = std::max(report.rhoLower, report.radiusSequence.back());
  }
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    report.ratioSequence.push_back(std::sqrt(p[i + 1] / p[i]));
    report.rhoLower = std::max(report.rhoLower, report.ratioSequence.back());
  }
  report.rhoLower = std::min(report.rhoLower, report.rhoUpper);
  const double tail = report.ratioSequence.empty()
                          ? report.rhoLower
                          : aitkenTail(report.ratioSequence, 4);
  report.rhoEstimate = std::clamp(tail, report.rhoLower, report.rhoUpper);
  return report;
}

std::vector<LowerBoundRow> lowerBoundVerify(const WalkReport& report, double d, double C) {
  if (!(report.rhoLower > 0.0) || !(report.rhoUpper > 0.0)) {
    throw Error(ErrorCode::MissingRho, "walk report carries no positive rho bracket");
  }
  if (!(C > 0.0)) throw Error(ErrorCode::InvalidArgument, "C must be > 0");
  std::vector<LowerBoundRow> rows;
  for (std::size_t i = 0; i < report.returns.size(); ++i) {
    LowerBoundRow row;
    row.n = static_cast<int>(i + 1);
    const double n = row.n;
    const double logP = std::log(report.returns[i]);
    const double logLhs = -2.0 * d * std::log(n);
    const double logUp = std::log(C) - 2.0 * n * std::log(report.rhoUpper) + logP;
    const double logLo = std::log(C) - 2.0 * n * std::log(report.rhoLower) + logP;
    row.lhs = std::exp(logLhs);
    row.rhsConservative = std::exp(logUp);
    row.rhsAtLower = std::exp(logLo);
    row.pass = logLhs <= logUp;
    row.passAtLower = logLhs <= logLo;
    rows.push_back(row);
  }
  return rows;
}

#define RDP_INSTANTIATE(S)                                                                    \
  template class Measure<S>;                                                                  \
  template Measure<S> uniformOnGenerators<S>(const ModelPtr&);                                \
  template GroupFunction<S> nStepDistribution(const Measure<S>&, int, std::size_t);           \
  template S returnProbability(const Measure<S>&, const CosetStructure&, int, std::size_t);   \
  template S returnProbabilityOnGroup(const Measure<S>&, const CosetStructure&, int,          \
                                      std::size_t);                                           \
  template std::vector<S> returnSequence(const Measure<S>&, const CosetsPtr&, int,            \
                                         std::size_t);                                        \
  template IdentityCheck<S> returnIdentityCheck(const Measure<S>&, const CosetsPtr&, int,     \
                                                std::size_t);

RDP_INSTANTIATE(Rational)
RDP_INSTANTIATE(double)

#undef RDP_INSTANTIATE

}  // namespace rdp
