#include "rdpairs/operators.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "rdpairs/error.hpp"

namespace rdp {

namespace {

// Natural log of a positive scalar; rationals go through mantissa/exponent pairs so huge
// numerators and denominators do not overflow a double.
double logOf(const Rational& q) {
  long en = 0;
  long ed = 0;
  const double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  const double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return std::log(mn / md) + static_cast<double>(en - ed) * std::log(2.0);
}

double logOf(double x) { return std::log(x); }

template <class S>
S fromDouble(double x) {
  if constexpr (ScalarTraits<S>::mode == Mode::Exact) {
    return Rational(x);
  } else {
    return x;
  }
}

}  // namespace

template <class S>
CosetVector<S> baseVector(const SchreierGraph& graph) {
  CosetVector<S> v(graph.size(), ScalarTraits<S>::zero());
  v[0] = ScalarTraits<S>::one();
  return v;
}

template <class S>
S innerProduct(const CosetVector<S>& a, const CosetVector<S>& b) {
  Accumulator<S> acc;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (!ScalarTraits<S>::isZero(a[i]) && !ScalarTraits<S>::isZero(b[i])) acc.add(a[i] * b[i]);
  }
  return acc.value();
}

template <class S>
QuasiRegularOperator<S>::QuasiRegularOperator(GroupFunction<S> f, const SchreierGraph& graph)
    : f_(std::move(f)), adjoint_(involute(f_)), graph_(graph) {
  if (!sameModel(f_.group(), graph_.group())) {
    throw Error(ErrorCode::ModelMismatch, "operator function and graph use different groups");
  }
}

template <class S>
CosetVector<S> QuasiRegularOperator<S>::applyWith(const GroupFunction<S>& f,
                                                  std::vector<int>& cache,
                                                  const CosetVector<S>& xi) const {
  const std::size_t m = f.supportSize();
  const std::size_t n = graph_.size();
  if (xi.size() != n) throw Error(ErrorCode::InvalidArgument, "vector size differs from graph");
  if (cache.empty()) cache.assign(n * m, -2);
  const GroupModel& G = graph_.group();
  CosetVector<S> out(n, ScalarTraits<S>::zero());
  for (std::size_t u = 0; u < n; ++u) {
    if (ScalarTraits<S>::isZero(xi[u])) continue;
    for (std::size_t j = 0; j < m; ++j) {
      int& t = cache[u * m + j];
      if (t == -2) {
        t = graph_.find(G.multiply(f.entries()[j].first, graph_.representative(static_cast<int>(u))));
      }
      if (t < 0) {
        throw Error(ErrorCode::TruncationOverflow,
                    "lambda(f) maps mass at distance " + std::to_string(graph_.distance(u)) +
                        " outside the Schreier ball of radius " + std::to_string(graph_.radius()));
      }
      out[t] += f.entries()[j].second * xi[u];
    }
  }
  return out;
}

template <class S>
CosetVector<S> QuasiRegularOperator<S>::apply(const CosetVector<S>& xi) const {
  return applyWith(f_, cache_, xi);
}

template <class S>
CosetVector<S> QuasiRegularOperator<S>::applyAdjoint(const CosetVector<S>& xi) const {
  return applyWith(adjoint_, adjointCache_, xi);
}

template <class S>
CosetVector<S> applyQuasiRegular(const GroupFunction<S>& f, const SchreierGraph& graph,
                                 const CosetVector<S>& xi) {
  return QuasiRegularOperator<S>(f, graph).apply(xi);
}

template <class S>
NormBracket<S> hybridNormBracket(const GroupFunction<S>& f, const SchreierGraph& graph,
                                 const BracketConfig& config) {
  if (!f.isPositive()) {
    throw Error(ErrorCode::NegativeEntry, "hybridNormBracket needs a positive function");
  }
  NormBracket<S> out;
  out.method = "power iteration on lambda(f)^* lambda(f) from delta_H";
  out.truncationRadius = graph.radius();
  out.upperSquared = norm1(f).squared;
  for (double a : config.analyticUpper) {
    const S a2 = fromDouble<S>(a) * fromDouble<S>(a);
    if (a2 < out.upperSquared) out.upperSquared = a2;
  }
  if (f.isZero()) return out;

  const QuasiRegularOperator<S> op(f, graph);
  CosetVector<S> xi = baseVector<S>(graph);
  S best = ScalarTraits<S>::zero();
  S xiSq = ScalarTraits<S>::one();
  for (int it = 1; it <= config.maxIterations; ++it) {
    CosetVector<S> y;
    try {
      y = op.apply(xi);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TruncationOverflow) throw;
      out.truncated = true;
      break;
    }
    const S ySq = innerProduct(y, y);
    const S rayleigh = ySq / xiSq;
    if (best < rayleigh) best = rayleigh;
    out.iterations = it;
    if constexpr (ScalarTraits<S>::mode == Mode::Float) {
      out.log.push_back(std::sqrt(best) * (1.0 - config.floatDeflation));
    } else {
      out.log.push_back(std::sqrt(ScalarTraits<S>::toDouble(best)));
    }
    CosetVector<S> z;
    try {
      z = op.applyAdjoint(y);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TruncationOverflow) throw;
      out.truncated = true;
      break;
    }
    const S zSq = innerProduct(z, z);
    if constexpr (ScalarTraits<S>::mode == Mode::Float) {
      // ||A xi|| / ||xi|| <= ||A|| = ||lambda(f)||^2 for A = lambda(f)^* lambda(f).
      const double viaA = std::sqrt(zSq / xiSq);
      if (best < viaA) {
        best = viaA;
        out.log.back() = std::sqrt(best) * (1.0 - config.floatDeflation);
      }
      const double scale = std::sqrt(zSq);
      if (scale == 0.0) break;
      for (auto& v : z) v /= scale;
      xiSq = 1.0;
    } else {
      xiSq = zSq;
    }
    if (ScalarTraits<S>::isZero(zSq)) break;
    xi = std::move(z);
  }
  if constexpr (ScalarTraits<S>::mode == Mode::Float) {
    const double d = 1.0 - config.floatDeflation;
    out.lowerSquared = best * d * d;
  } else {
    out.lowerSquared = best;
  }
  if (out.upperSquared < out.lowerSquared) out.lowerSquared = out.upperSquared;
  return out;
}

template <class S>
NormBracket<S> generalHybridBracket(const GroupFunction<S>& f, const SchreierGraph& graph,
                                    const BracketConfig& config,
                                    const std::vector<GroupFunction<S>>& extraTests) {
  if (f.isPositive()) {
    NormBracket<S> out = hybridNormBracket(f, graph, config);
    out.method = "positive input: " + out.method;
    return out;
  }
  const CosetStructure& cosets = graph.cosets();
  const GroupModel& G = f.group();
  const ModelPtr& gp = f.groupPtr();

  std::vector<GroupFunction<S>> tests;
  tests.push_back(GroupFunction<S>::delta(gp, G.identity()));
  for (const auto& [g, v] : f.entries()) tests.push_back(GroupFunction<S>::delta(gp, G.invert(g)));
  for (const auto& s : G.generators()) tests.push_back(GroupFunction<S>::delta(gp, s.key));
  for (int r = 1; r <= std::min(3, graph.radius()); ++r) {
    tests.push_back(cosetRepresentativeIndicator<S>(graph, r));
  }
  tests.push_back(involute(f.absolute()));
  for (const auto& t : extraTests) tests.push_back(t);

  NormBracket<S> out;
  out.method = "max over test functions of ||f*phi||_(2,1)/||phi||_(2,1); positive-part sum";
  out.truncationRadius = graph.radius();
  S best = ScalarTraits<S>::zero();
  for (const auto& phi : tests) {
    if (phi.isZero()) continue;
    const S num = norm21(convolve(f, phi), cosets).squared;
    const S den = norm21(phi, cosets).squared;
    const S ratio = num / den;
    if (best < ratio) best = ratio;
    ++out.iterations;
    out.log.push_back(std::sqrt(ScalarTraits<S>::toDouble(best)));
  }
  const PositiveParts<S> parts = positiveDecompose(f);
  Accumulator<S> upper;
  for (const auto* p : {&parts.f1, &parts.f2, &parts.f3, &parts.f4}) {
    Accumulator<S> l1;
    for (const auto& [g, v] : p->entries()) l1.add(v);
    upper.add(l1.value());
  }
  out.upperSquared = upper.value() * upper.value();
  if constexpr (ScalarTraits<S>::mode == Mode::Float) {
    const double d = 1.0 - config.floatDeflation;
    out.lowerSquared = best * d * d;
  } else {
    out.lowerSquared = best;
  }
  return out;
}

std::string_view toString(SpectralKind k) {
  switch (k) {
    case SpectralKind::Rho1: return "rho1";
    case SpectralKind::Rho21Power: return "rho21power";
    case SpectralKind::RhoS: return "rhoS";
    case SpectralKind::RhoH: return "rhoH";
    case SpectralKind::RhoStar: return "rhoStar";
  }
  return "?";
}

SpectralKind parseSpectralKind(std::string_view text) {
  for (auto k : {SpectralKind::Rho1, SpectralKind::Rho21Power, SpectralKind::RhoS,
                 SpectralKind::RhoH, SpectralKind::RhoStar}) {
    if (text == toString(k)) return k;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown spectral kind '" + std::string(text) + "'");
}

int supportRadius(const GroupModel& group, const std::vector<ElementKey>& support,
                  std::size_t cap) {
  std::unordered_set<ElementKey, KeyHash> wanted(support.begin(), support.end());
  std::unordered_set<ElementKey, KeyHash> seen{group.identity()};
  std::vector<ElementKey> frontier{group.identity()};
  wanted.erase(group.identity());
  int r = 0;
  while (!wanted.empty()) {
    if (frontier.empty()) {
      throw Error(ErrorCode::InvalidArgument, "support element not reachable from the identity");
    }
    ++r;
    std::vector<ElementKey> next;
    for (const auto& g : frontier) {
      for (const auto& s : group.generators()) {
        ElementKey h = group.multiply(g, s.key);
        if (seen.insert(h).second) {
          wanted.erase(h);
          next.push_back(std::move(h));
        }
      }
    }
    if (seen.size() > cap) {
      throw CapError(ErrorCode::BallTooLarge, "support radius search exceeded the cap", r - 1);
    }
    frontier = std::move(next);
  }
  return r;
}

double aitkenTail(const std::vector<double>& values, int window) {
  if (values.empty()) return 0.0;
  const std::size_t n = values.size();
  if (n < 3) return values.back();
  const double x0 = values[n - 3];
  const double x1 = values[n - 2];
  const double x2 = values[n - 1];
  const double d2 = x2 - 2.0 * x1 + x0;
  double acc = x2;
  if (std::fabs(d2) > 1e-300 && std::isfinite(d2)) acc = x2 - (x2 - x1) * (x2 - x1) / d2;
  const std::size_t w = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(window, 1)));
  const auto lo = *std::min_element(values.end() - static_cast<std::ptrdiff_t>(w), values.end());
  const auto hi = *std::max_element(values.end() - static_cast<std::ptrdiff_t>(w), values.end());
  if (!std::isfinite(acc)) acc = x2;
  return std::clamp(acc, lo, hi);
}

namespace {

bool nondecreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[i - 1] - 1e-12 * std::max(1.0, std::fabs(v[i - 1]))) return false;
  }
  return true;
}

// lag > 1: extrapolate from (m_{n+lag} / m_n)^{1/lag}, which is blind to any period dividing lag.
void finish(SpectralRadiusEstimate& est, const std::vector<double>& logM, double rootPower,
            int tailWindow, std::size_t lag = 1) {
  // logM[n-1] = log m_n; sequence = m_n^{1/(rootPower n)}.
  for (std::size_t i = 0; i < logM.size(); ++i) {
    est.sequence.push_back(std::exp(logM[i] / (rootPower * static_cast<double>(i + 1))));
  }
  for (std::size_t i = 0; i + 1 < logM.size(); ++i) {
    est.ratios.push_back(std::exp((logM[i + 1] - logM[i]) / rootPower));
  }
  est.lastValue = est.sequence.empty() ? 0.0 : est.sequence.back();
  est.extrapolated = est.ratios.empty() ? est.lastValue : aitkenTail(est.ratios, tailWindow);
  if (lag > 1 && logM.size() >= lag + 3) {
    std::vector<double> lagged;
    for (std::size_t i = 0; i + lag < logM.size(); ++i) {
      lagged.push_back(std::exp((logM[i + lag] - logM[i]) / (rootPower * static_cast<double>(lag))));
    }
    est.extrapolated = aitkenTail(lagged, tailWindow);
    est.lag = static_cast<int>(lag);
  }
  est.sequenceMonotone = nondecreasing(est.sequence);
  est.ratiosMonotone = nondecreasing(est.ratios);
}

}  // namespace

template <class S>
SpectralRadiusEstimate spectralRadius(const GroupFunction<S>& f, SpectralKind kind,
                                      const CosetsPtr& cosets, const SpectralConfig& config) {
  if (config.N < 1) throw Error(ErrorCode::InvalidArgument, "N must be >= 1");
  if (f.isZero()) throw Error(ErrorCode::InvalidArgument, "spectral radius of zero is 0");
  SpectralRadiusEstimate est;
  est.kind = kind;
  est.s = kind == SpectralKind::RhoS ? config.s : 0.0;
  const GroupModel& G = f.group();
  std::vector<ElementKey> support;
  for (const auto& [g, v] : f.entries()) support.push_back(g);
  const int rad = std::max(1, supportRadius(G, support, config.cap));
  std::vector<double> logM;

  if (kind == SpectralKind::RhoH || kind == SpectralKind::RhoStar) {
    CosetsPtr cs = kind == SpectralKind::RhoStar ? trivialSubgroup(f.groupPtr()) : cosets;
    if (!cs) throw Error(ErrorCode::InvalidArgument, "rhoH needs a coset structure");
    std::optional<SchreierGraph> graph;
    try {
      graph.emplace(buildSchreier(cs, 2 * config.N * rad, config.cap));
    } catch (const CapError& e) {
      throw CapError(ErrorCode::PowerOverflow, e.what(), e.lastCompleted() / (2 * rad));
    }
    const QuasiRegularOperator<S> op(f, *graph);
    CosetVector<S> v = baseVector<S>(*graph);
    double logScale = 0.0;
    for (int n = 1; n <= config.N; ++n) {
      v = op.applyAdjoint(op.apply(v));
      const S m = v[0];
      logM.push_back(ScalarTraits<S>::isZero(m) ? -INFINITY
                                                : logScale + logOf(ScalarTraits<S>::absolute(m)));
      if constexpr (ScalarTraits<S>::mode == Mode::Float) {
        const double scale = std::sqrt(innerProduct(v, v));
        if (scale == 0.0) break;
        for (auto& x : v) x /= scale;
        logScale += std::log(scale);
      }
    }
    finish(est, logM, 2.0, config.tailWindow);
    return est;
  }

  std::optional<BallIndex> ball;
  if (kind == SpectralKind::RhoS) {
    try {
      ball.emplace(enumerateBall(f.groupPtr(), config.N * rad, config.cap));
    } catch (const CapError& e) {
      throw CapError(ErrorCode::PowerOverflow, e.what(), e.lastCompleted() / rad);
    }
  }
  auto measure = [&](const GroupFunction<S>& u) -> S {
    switch (kind) {
      case SpectralKind::Rho1: return norm1(u).squared;
      case SpectralKind::Rho21Power: return norm21(u, *cosets).squared;
      default: return sobolevNorm(u, cosets.get(), *ball, config.s).squared;
    }
  };
  if (kind != SpectralKind::Rho1 && !cosets) {
    throw Error(ErrorCode::InvalidArgument, "hybrid spectral kinds need a coset structure");
  }
  GroupFunction<S> u = f;
  double logScale = 0.0;
  for (int n = 1; n <= config.N; ++n) {
    if (n > 1) {
      u = convolve(u, f);
      if (u.supportSize() > config.cap) {
        throw CapError(ErrorCode::PowerOverflow,
                       "support of f^(" + std::to_string(n) + ") exceeds the cap", n - 1);
      }
    }
    const S sq = measure(u);
    logM.push_back(ScalarTraits<S>::isZero(sq) ? -INFINITY : logScale + 0.5 * logOf(sq));
    if constexpr (ScalarTraits<S>::mode == Mode::Float) {
      const double c = std::sqrt(norm1(u).squared);
      if (c == 0.0) break;
      u = u.scaled(1.0 / c);
      logScale += std::log(c);
    }
  }
  // On a finite group the period of a positive f divides |G|.
  finish(est, logM, 1.0, config.tailWindow, G.order().value_or(1));
  return est;
}

template <class S>
S coefficientDecaySum(const SchreierGraph& graph, const BallIndex& ball, const CosetVector<S>& xi,
                      const CosetVector<S>& eta, int R) {
  if (R > ball.radius()) {
    throw Error(ErrorCode::NotEnumerated, "B(" + std::to_string(R) + ") is not enumerated");
  }
  const GroupModel& G = graph.group();
  Accumulator<S> total;
  for (int n = 0; n <= R; ++n) {
    for (const auto& gamma : ball.sphere(n)) {
      // <lambda(gamma) xi, eta> = sum_u xi(u) eta(gamma u); eta vanishes off the graph.
      Accumulator<S> c;
      for (std::size_t u = 0; u < graph.size(); ++u) {
        if (ScalarTraits<S>::isZero(xi[u])) continue;
        const int t = graph.find(G.multiply(gamma, graph.representative(static_cast<int>(u))));
        if (t >= 0 && !ScalarTraits<S>::isZero(eta[t])) c.add(xi[u] * eta[t]);
      }
      const S v = c.value();
      total.add(v * v);
    }
  }
  return total.value();
}

#define RDP_INSTANTIATE(S)                                                                    \
  template CosetVector<S> baseVector<S>(const SchreierGraph&);                                \
  template S innerProduct(const CosetVector<S>&, const CosetVector<S>&);                      \
  template class QuasiRegularOperator<S>;                                                     \
  template CosetVector<S> applyQuasiRegular(const GroupFunction<S>&, const SchreierGraph&,    \
                                            const CosetVector<S>&);                           \
  template NormBracket<S> hybridNormBracket(const GroupFunction<S>&, const SchreierGraph&,    \
                                            const BracketConfig&);                            \
  template NormBracket<S> generalHybridBracket(const GroupFunction<S>&, const SchreierGraph&, \
                                               const BracketConfig&,                          \
                                               const std::vector<GroupFunction<S>>&);         \
  template SpectralRadiusEstimate spectralRadius(const GroupFunction<S>&, SpectralKind,       \
                                                 const CosetsPtr&, const SpectralConfig&);    \
  template S coefficientDecaySum(const SchreierGraph&, const BallIndex&,                      \
                                 const CosetVector<S>&, const CosetVector<S>&, int);

RDP_INSTANTIATE(Rational)
RDP_INSTANTIATE(double)

#undef RDP_INSTANTIATE

}  // namespace rdp
