#include "rdpairs/rdlab.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "rdpairs/error.hpp"
#include "rdpairs/random.hpp"

namespace rdp {

std::string_view toString(FitVerdict v) {
  switch (v) {
    case FitVerdict::PolynomialConsistent: return "polynomial-consistent";
    case FitVerdict::ExponentialConsistent: return "exponential-consistent";
    case FitVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string Family::toString() const {
  switch (kind) {
    case FamilyKind::SphereIndicators: return "spheres";
    case FamilyKind::CosetRepresentatives: return "cosetreps";
    case FamilyKind::RandomPositive: return "random:" + std::to_string(seed);
  }
  return "?";
}

Family Family::parse(std::string_view text) {
  Family out;
  if (text == "spheres") {
    out.kind = FamilyKind::SphereIndicators;
  } else if (text == "cosetreps") {
    out.kind = FamilyKind::CosetRepresentatives;
  } else if (text.starts_with("random")) {
    out.kind = FamilyKind::RandomPositive;
    if (text.size() > 6) {
      if (text[6] != ':') throw Error(ErrorCode::InvalidArgument, "family: random:<seed>");
      try {
        out.seed = std::stoull(std::string(text.substr(7)));
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, "family: bad seed in '" + std::string(text) + "'");
      }
    }
  } else {
    throw Error(ErrorCode::InvalidArgument,
                "unknown family '" + std::string(text) + "' (spheres, cosetreps, random:<seed>)");
  }
  return out;
}

namespace {

// splitmix64 finalizer; seeds derived from (seed, stream, index) are independent of order.
std::uint64_t mixSeed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream * 0x10001ULL + index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rational pow2(int e) { return powRational(Rational(2), static_cast<unsigned>(e)); }

// Largest graph of radius <= want under `cap`; nullopt when not even radius 0 fits.
std::optional<SchreierGraph> buildUpTo(const CosetsPtr& cosets, int want, std::size_t cap,
                                       std::optional<std::string>& note) {
  try {
    return buildSchreier(cosets, want, cap);
  } catch (const CapError& e) {
    const int r = static_cast<int>(e.lastCompleted());
    note = e.what();
    if (r < 0) return std::nullopt;
    return buildSchreier(cosets, r, cap);
  }
}

}  // namespace

CertifiedLower certifiedLower(const GroupFunction<Rational>& f, const CosetStructure& cosets,
                              const SchreierGraph* graph, int iterations) {
  CertifiedLower out{norm21(f, cosets).value(), "norm21"};
  if (cosets.traits().coAmenable) {
    // Positive f on a co-amenable pair: ||f||_h = ||f||_1.
    out.value = norm1(f).value();
    out.source = "l1";
    return out;
  }
  if (graph != nullptr) {
    BracketConfig bc;
    bc.maxIterations = iterations;
    const double lower = hybridNormBracket(toFloat(f), *graph, bc).lower();
    if (lower > out.value) {
      out.value = lower;
      out.source = "power";
    }
  }
  return out;
}

ExponentFit rdExponentFit(const Pair& pair, const Family& family, const FitConfig& config) {
  if (config.lo < 0 || config.hi < config.lo) {
    throw Error(ErrorCode::InvalidArgument, "fit window needs 0 <= lo <= hi");
  }
  ExponentFit out;
  out.family = family.toString();
  out.nested = family.kind == FamilyKind::CosetRepresentatives;
  const bool needPower = !pair.cosets->traits().coAmenable;
  const int want = needPower ? config.hi * (1 + 2 * config.iterations) : config.hi;
  std::optional<std::string> note;
  std::optional<SchreierGraph> graph = buildUpTo(pair.cosets, want, config.graphCap, note);
  int hi = config.hi;
  if (!graph) {
    out.stopReason = note;
    return out;
  }
  if (graph->radius() < hi) {
    hi = graph->radius();
    out.stopReason = note;
  }
  out.truncationRadius = graph->radius();

  std::optional<BallIndex> ball;
  if (family.kind == FamilyKind::SphereIndicators) {
    try {
      ball.emplace(enumerateBall(pair.group, hi, config.ballCap));
    } catch (const CapError& e) {
      out.stopReason = e.what();
      hi = std::min(hi, static_cast<int>(e.lastCompleted()));
      if (hi < 0) return out;
      ball.emplace(enumerateBall(pair.group, hi, config.ballCap));
    }
  }

  // Power iteration costs |graph| * |supp f| cached targets per application.
  constexpr std::size_t kWorkCap = 20'000'000;
  auto lowerFor = [&](const GroupFunction<Rational>& f) {
    const bool usePower = needPower && graph->size() * f.supportSize() <= kWorkCap;
    return certifiedLower(f, *pair.cosets, usePower ? &*graph : nullptr, config.iterations);
  };

  for (int R = config.lo; R <= hi; ++R) {
    std::vector<GroupFunction<Rational>> tests;
    switch (family.kind) {
      case FamilyKind::CosetRepresentatives:
        tests.push_back(cosetRepresentativeIndicator<Rational>(*graph, R));
        break;
      case FamilyKind::SphereIndicators: {
        std::vector<GroupFunction<Rational>::Entry> entries;
        for (const auto& g : ball->sphere(R)) entries.emplace_back(g, Rational(1));
        tests.emplace_back(pair.group, std::move(entries));
        break;
      }
      case FamilyKind::RandomPositive: {
        std::vector<ElementKey> pool;
        const std::size_t n = graph->ballSize(R);
        for (std::size_t v = 0; v < n; ++v) pool.push_back(graph->representative(static_cast<int>(v)));
        RandomFunctionOptions opts;
        opts.maxSupport = std::min<std::size_t>(12, pool.size());
        for (int k = 0; k < family.samples; ++k) {
          Rng rng(mixSeed(family.seed, static_cast<std::uint64_t>(R), static_cast<std::uint64_t>(k)));
          tests.push_back(randomFunction<Rational>(pair.group, pool, rng, opts));
        }
        break;
      }
    }
    double best = -1.0;
    CertifiedLower bestLower;
    double bestNorm = 0.0;
    for (const auto& f : tests) {
      const CertifiedLower lo = lowerFor(f);
      const double n21 = norm21(f, *pair.cosets).value();
      const double ratio = lo.value / n21;
      if (ratio > best) {
        best = ratio;
        bestLower = lo;
        bestNorm = n21;
      }
    }
    out.radii.push_back(R);
    out.ratios.push_back(best);
    out.lowers.push_back(bestLower.value);
    out.norms21.push_back(bestNorm);
    out.sources.push_back(bestLower.source);
  }

  out.ratiosNondecreasing = std::is_sorted(out.ratios.begin(), out.ratios.end());
  if (out.radii.empty()) return out;
  std::vector<double> y(hi + 1, 1.0);
  for (std::size_t i = 0; i < out.radii.size(); ++i) y[out.radii[i]] = out.ratios[i];
  try {
    out.fit = classifyGrowth(y, config.lo, hi, config.classifier);
    out.verdict = out.fit.verdict == GrowthClass::Polynomial    ? FitVerdict::PolynomialConsistent
                  : out.fit.verdict == GrowthClass::Exponential ? FitVerdict::ExponentialConsistent
                                                                : FitVerdict::Inconclusive;
    out.dHat = std::max(0.0, out.fit.loglog.slope);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::WindowTooSmall) throw;
    if (!out.stopReason) out.stopReason = e.what();
  }
  for (std::size_t i = 0; i < out.radii.size(); ++i) {
    out.CHat = std::max(out.CHat, out.ratios[i] / std::pow(1.0 + out.radii[i], out.dHat));
  }
  return out;
}

double walkConstant(const ExponentFit& fit, int stepRadius) {
  return fit.CHat * fit.CHat * std::pow(2.0 * stepRadius, 2.0 * fit.dHat);
}

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckRecord& c) { return c.passed || !c.exact; });
}

Json SuiteReport::toJson() const {
  Json out;
  out["fixture"] = fixture;
  out["provenance"] = provenance;
  out["passed"] = passed();
  Json list = Json::array();
  for (const auto& c : checks) {
    Json j;
    j["name"] = c.name;
    j["passed"] = c.passed;
    j["exact"] = c.exact;
    j["evidence"] = c.evidence;
    if (!c.reproducer.is_null()) j["reproducer"] = c.reproducer;
    list.push_back(std::move(j));
  }
  out["checks"] = std::move(list);
  return out;
}

std::string_view toString(Mutation m) {
  switch (m) {
    case Mutation::None: return "none";
    case Mutation::ShiftedCoset: return "shifted-coset";
    case Mutation::ScaledPairing: return "scaled-pairing";
    case Mutation::SobolevWeightShift: return "sobolev-weight-shift";
  }
  return "?";
}

Mutation parseMutation(std::string_view text) {
  for (Mutation m : {Mutation::None, Mutation::ShiftedCoset, Mutation::ScaledPairing,
                     Mutation::SobolevWeightShift}) {
    if (toString(m) == text) return m;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown mutation '" + std::string(text) + "'");
}

Json functionToJson(const GroupFunction<Rational>& f) {
  Json out = Json::array();
  for (const auto& [g, v] : f.entries()) {
    out.push_back(Json{{"g", f.group().format(g)}, {"value", v.get_str()}});
  }
  return out;
}

namespace {

Rational pairingWith(const GroupFunction<Rational>& f, const GroupFunction<Rational>& phi,
                     const GroupFunction<Rational>& psi, const CosetStructure& cosets,
                     Mutation mutation) {
  if (mutation == Mutation::ShiftedCoset) {
    const GroupModel& G = cosets.group();
    std::optional<CosetKey> shifted;
    for (const auto& s : G.generators()) {
      if (!cosets.inSubgroup(s.key)) {
        shifted = cosets.cosetKey(s.key);
        break;
      }
    }
    if (!shifted) return cosetPairing(f, phi, psi, cosets);
    const GroupFunction<Rational> pair = convolve(involute(convolve(f, phi)), involute(psi));
    Rational acc = 0;
    for (const auto& [g, v] : pair.entries()) {
      if (cosets.cosetKey(g) == *shifted) acc += v;
    }
    return acc;
  }
  Rational p = cosetPairing(f, phi, psi, cosets);
  if (mutation == Mutation::ScaledPairing) p *= 2;
  return p;
}

}  // namespace

BatteryOutcome batteryTrial(const CosetStructure& cosets, const BallIndex& ball,
                            const GroupFunction<Rational>& f, const GroupFunction<Rational>& phi,
                            const GroupFunction<Rational>& psi, int s, Mutation mutation) {
  BatteryOutcome out;
  const GroupFunction<Rational> F = convolve(f, phi);
  const Rational nF = norm21(F, cosets).squared;
  const GroupFunction<Rational> Fstar = involute(F);

  const Rational pRandom = pairingWith(f, phi, psi, cosets, mutation);
  const Rational pTight = pairingWith(f, phi, Fstar, cosets, mutation);
  out.pairingBound = pRandom >= 0 && pRandom * pRandom <= nF * norm21(involute(psi), cosets).squared &&
                     pTight >= 0 && pTight * pTight <= nF * nF;
  out.pairingIdentity = pTight == nF;

  Rational lhs;
  if (mutation == Mutation::SobolevWeightShift) {
    const GroupFunction<Rational> w = f.pointwise([&](const ElementKey& g) {
      return powRational(Rational(2 + ball.wordLength(g)), static_cast<unsigned>(s));
    });
    lhs = norm21(w, cosets).squared;
  } else {
    lhs = sobolevNorm(f, &cosets, ball, s).squared;
  }
  const Rational scale = powRational(Rational(ball.radius() + 1), static_cast<unsigned>(2 * s));
  out.sphericalBound = lhs <= scale * norm21(f, cosets).squared;
  return out;
}

SuiteReport equivalenceBattery(const Pair& pair, int R, std::uint64_t seed,
                               const BatteryConfig& config) {
  if (R < 0 || config.s < 0) throw Error(ErrorCode::InvalidArgument, "R and s must be >= 0");
  const BallIndex ball = enumerateBall(pair.group, R, config.ballCap);
  const std::vector<ElementKey> pool = ball.elements();
  SuiteReport report;
  report.fixture = pair.info.id;
  report.provenance = Json{{"R", R},
                           {"seed", seed},
                           {"trials", config.trials},
                           {"s", config.s},
                           {"mode", "exact"},
                           {"mutation", toString(config.mutation)}};
  struct Tally {
    const char* name;
    int pass = 0;
    Json reproducer;
  };
  Tally tallies[3] = {{"pairing-bound", 0, {}}, {"pairing-identity", 0, {}},
                      {"spherical-bound", 0, {}}};
  for (int t = 0; t < config.trials; ++t) {
    Rng rng(mixSeed(seed, 1, static_cast<std::uint64_t>(t)));
    const auto f = randomFunction<Rational>(pair.group, pool, rng);
    const auto phi = randomFunction<Rational>(pair.group, pool, rng);
    const auto psi = randomFunction<Rational>(pair.group, pool, rng);
    const BatteryOutcome o = batteryTrial(*pair.cosets, ball, f, phi, psi, config.s, config.mutation);
    const bool ok[3] = {o.pairingBound, o.pairingIdentity, o.sphericalBound};
    for (int k = 0; k < 3; ++k) {
      if (ok[k]) {
        ++tallies[k].pass;
      } else if (tallies[k].reproducer.is_null()) {
        tallies[k].reproducer = Json{{"fixture", pair.info.id}, {"R", R},      {"seed", seed},
                                     {"trial", t},              {"s", config.s}, {"f", functionToJson(f)},
                                     {"phi", functionToJson(phi)}, {"psi", functionToJson(psi)}};
      }
    }
  }
  for (auto& tally : tallies) {
    CheckRecord rec;
    rec.name = tally.name;
    rec.passed = tally.pass == config.trials;
    rec.evidence = Json{{"passed", tally.pass}, {"trials", config.trials}};
    rec.reproducer = std::move(tally.reproducer);
    report.checks.push_back(std::move(rec));
  }
  return report;
}

CheckRecord leptinCheck(const Pair& pair, const GroupFunction<Rational>& f,
                        const LeptinConfig& config) {
  if (!f.isPositive()) throw Error(ErrorCode::NegativeEntry, "Leptin check needs positive f");
  CheckRecord rec;
  rec.name = "leptin";
  rec.exact = false;
  const Rational l1sq = norm1(f).squared;
  const double l1 = norm1(f).value();
  Json rows = Json::array();
  double gap = l1;
  bool gapExactZero = false;
  int reached = -1;
  for (int T : config.truncationRadii) {
    std::optional<SchreierGraph> graph;
    try {
      graph.emplace(buildSchreier(pair.cosets, T, config.graphCap));
    } catch (const CapError& e) {
      rec.evidence["stopReason"] = e.what();
      break;
    }
    BracketConfig bc;
    bc.maxIterations = config.maxIterations;
    Json row{{"radius", T}, {"vertices", graph->size()}};
    if (config.mode == Mode::Exact) {
      const auto b = hybridNormBracket(f, *graph, bc);
      gapExactZero = b.lowerSquared == l1sq;
      gap = gapExactZero ? 0.0 : l1 - b.lower();
      row["iterations"] = b.iterations;
      row["truncated"] = b.truncated;
      row["lower"] = b.lower();
    } else {
      const auto b = hybridNormBracket(toFloat(f), *graph, bc);
      gapExactZero = false;
      gap = std::max(0.0, l1 - b.lower());
      row["iterations"] = b.iterations;
      row["truncated"] = b.truncated;
      row["lower"] = b.lower();
    }
    row["upper"] = l1;
    row["gap"] = gap;
    rows.push_back(std::move(row));
    reached = T;
    // A one-vertex quotient gives the exact value; larger radii add nothing.
    if (graph->complete() && graph->size() == 1) break;
  }
  const bool consistent = reached >= 0 && gap < config.threshold;
  rec.evidence["mode"] = config.mode == Mode::Exact ? "exact" : "float";
  rec.evidence["threshold"] = config.threshold;
  rec.evidence["l1"] = l1;
  rec.evidence["rows"] = std::move(rows);
  rec.evidence["gap"] = gap;
  rec.evidence["gapExactZero"] = gapExactZero;
  rec.evidence["verdict"] = consistent ? std::string("consistent with co-amenability")
                                       : "inconsistent at radius " + std::to_string(reached);
  rec.evidence["coAmenableExpected"] = pair.cosets->traits().coAmenable;
  rec.passed = consistent == pair.cosets->traits().coAmenable;
  if (!rec.passed) rec.reproducer = Json{{"fixture", pair.info.id}, {"f", functionToJson(f)}};
  return rec;
}

CheckRecord banachAlgebraCheck(const Pair& pair, int s, int R, std::uint64_t seed, int trials) {
  if (s < 0 || R < 0) throw Error(ErrorCode::InvalidArgument, "s and R must be >= 0");
  const BallIndex ball = enumerateBall(pair.group, 2 * R);
  std::vector<ElementKey> pool;
  for (int r = 0; r <= R; ++r) {
    for (const auto& g : ball.sphere(r)) pool.push_back(g);
  }
  const CosetStructure& H = *pair.cosets;
  const Rational factor = pow2(2 * s + 1);
  RandomFunctionOptions opts;
  opts.allowNegative = true;
  CheckRecord rec;
  rec.name = "banach-algebra";
  int pass = 0;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(mixSeed(seed, 2, static_cast<std::uint64_t>(t)));
    const auto f = randomFunction<Rational>(pair.group, pool, rng, opts);
    const auto psi = randomFunction<Rational>(pair.group, pool, rng, opts);
    const Rational lhs = sobolevNorm(convolve(f, psi), &H, ball, s).squared;
    const auto fa = f.absolute();
    const auto pa = psi.absolute();
    const Rational rhs = factor * (sobolevNorm(fa, &H, ball, s).squared * norm1(pa).squared +
                                   norm1(fa).squared * sobolevNorm(pa, &H, ball, s).squared);
    if (lhs <= rhs) {
      ++pass;
    } else if (rec.reproducer.is_null()) {
      rec.reproducer = Json{{"fixture", pair.info.id}, {"s", s},     {"R", R},
                            {"seed", seed},            {"trial", t}, {"f", functionToJson(f)},
                            {"psi", functionToJson(psi)}};
    }
    worst = std::max(worst, Rational(lhs / rhs).get_d());
  }
  rec.passed = pass == trials;
  rec.evidence = Json{{"s", s}, {"R", R}, {"passed", pass}, {"trials", trials}, {"maxRatio", worst}};
  return rec;
}

CheckRecord normalQuotientCheck(const Pair& pair, int R, std::uint64_t seed, int trials) {
  const CosetStructure& H = *pair.cosets;
  if (!H.traits().normal) {
    throw Error(ErrorCode::NotNormal, H.subgroupName() + " is not declared normal");
  }
  const GroupModel& G = *pair.group;
  const BallIndex ball = enumerateBall(pair.group, R);
  const std::vector<ElementKey> pool = ball.elements();
  RandomFunctionOptions opts;
  opts.allowNegative = true;

  // pi(|u|) with one representative per coset (any element works because H is normal).
  auto quotient = [&](const GroupFunction<Rational>& u) {
    std::map<CosetKey, std::pair<ElementKey, Rational>> out;
    for (const auto& [g, v] : u.entries()) {
      auto [it, inserted] = out.try_emplace(H.cosetKey(g), g, Rational(0));
      it->second.second += abs(v);
    }
    return out;
  };

  CheckRecord rec;
  rec.name = "normal-quotient";
  int pass = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(mixSeed(seed, 3, static_cast<std::uint64_t>(t)));
    const auto f = randomFunction<Rational>(pair.group, pool, rng, opts);
    const auto phi = randomFunction<Rational>(pair.group, pool, rng, opts);
    const auto F = convolve(f, phi);
    const Rational lhs = norm21(F, H).squared;
    const Rational mid = squaredNorm(pushforward(F.absolute(), H));
    std::map<CosetKey, Rational> prod;
    for (const auto& [c1, a] : quotient(f)) {
      for (const auto& [c2, b] : quotient(phi)) {
        prod[H.cosetKey(G.multiply(a.first, b.first))] += a.second * b.second;
      }
    }
    Rational rhs = 0;
    for (const auto& [c, v] : prod) rhs += v * v;
    if (lhs == mid && mid <= rhs) {
      ++pass;
    } else if (rec.reproducer.is_null()) {
      rec.reproducer = Json{{"fixture", pair.info.id}, {"R", R},
                            {"seed", seed},            {"trial", t},
                            {"f", functionToJson(f)},  {"phi", functionToJson(phi)}};
    }
  }

  // Lifting along the BFS transversal.
  const SchreierGraph graph = buildSchreier(pair.cosets, R);
  int liftPass = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(mixSeed(seed, 4, static_cast<std::uint64_t>(t)));
    std::vector<GroupFunction<Rational>::Entry> entries;
    Rational l2 = 0;
    const auto picks = rng.sample(graph.size(), 1 + rng.below(std::min<std::size_t>(graph.size(), 6)));
    for (std::size_t v : picks) {
      const Rational value =
          ScalarTraits<Rational>::fromRatio(rng.between(-9, 9), rng.between(1, 4));
      l2 += value * value;
      entries.emplace_back(graph.representative(static_cast<int>(v)), value);
    }
    const GroupFunction<Rational> lift(pair.group, std::move(entries));
    if (norm21(lift, H).squared == l2) ++liftPass;
  }
  rec.passed = pass == trials && liftPass == trials;
  rec.evidence = Json{{"R", R}, {"chainPassed", pass}, {"liftPassed", liftPass}, {"trials", trials}};
  return rec;
}

std::vector<StabilityCase> defaultStabilityCases() {
  const Pair zline = buildFixture("z2-zline");
  const Pair fker = buildFixture("f2-ker");
  std::vector<StabilityCase> out;
  out.push_back({"z2-zline*z2-zline", productPair(zline, zline), true});
  const auto lattice = std::dynamic_pointer_cast<const LatticeModel>(zline.group);
  Pair restricted = restrictToSubgroupModel(zline, latticeAxisEmbedding(lattice, 0));
  restricted.info.id = "z2-zline|axis0";
  out.push_back({"restrict(z2-zline, axis 0)", restricted, true});
  out.push_back({"z2-zline*f2-ker", productPair(zline, fker), true});
  return out;
}

Json fitToJson(const ExponentFit& fit) {
  Json out;
  out["family"] = fit.family;
  out["radii"] = fit.radii;
  out["ratios"] = fit.ratios;
  out["lowers"] = fit.lowers;
  out["norms21"] = fit.norms21;
  out["sources"] = fit.sources;
  out["verdict"] = toString(fit.verdict);
  out["dHat"] = fit.dHat;
  out["CHat"] = fit.CHat;
  out["fitWindow"] = {fit.fit.fitLo, fit.fit.fitHi};
  out["semilog"] = {{"slope", fit.fit.semilog.slope}, {"rms", fit.fit.semilog.rms}};
  out["loglog"] = {{"slope", fit.fit.loglog.slope},
                   {"intercept", fit.fit.loglog.intercept},
                   {"rms", fit.fit.loglog.rms}};
  out["nested"] = fit.nested;
  out["ratiosNondecreasing"] = fit.ratiosNondecreasing;
  out["truncationRadius"] = fit.truncationRadius;
  if (fit.stopReason) out["stopReason"] = *fit.stopReason;
  return out;
}

SuiteReport stabilityChecks(const std::vector<StabilityCase>& cases, const FitConfig& config) {
  SuiteReport report;
  report.fixture = "stability";
  report.provenance = Json{{"lo", config.lo}, {"hi", config.hi}, {"family", "cosetreps"}};
  for (const auto& c : cases) {
    const ExponentFit fit = rdExponentFit(c.pair, Family{}, config);
    CheckRecord rec;
    rec.name = "stability: " + c.label;
    rec.exact = false;
    const bool poly = fit.verdict == FitVerdict::PolynomialConsistent;
    rec.passed = poly == c.expectPolynomial;
    rec.evidence = fitToJson(fit);
    if (!rec.passed) rec.reproducer = Json{{"pair", c.label}, {"lo", config.lo}, {"hi", config.hi}};
    report.checks.push_back(std::move(rec));
  }
  return report;
}

SuiteReport runSuite(const Pair& pair, const FixtureSpec& spec, const SuiteConfig& config) {
  SuiteReport report;
  report.fixture = spec.toString();
  report.provenance = Json{{"fixture", spec.toString()},
                           {"R", config.R},
                           {"seed", config.seed},
                           {"mode", config.mode == Mode::Exact ? "exact" : "float"},
                           {"trials", config.trials},
                           {"s", config.s},
                           {"fitWindow", {config.fit.lo, config.fit.hi}},
                           {"family", config.family.toString()},
                           {"mutation", toString(config.mutation)}};

  BatteryConfig bc;
  bc.trials = config.trials;
  bc.s = config.s;
  bc.mutation = config.mutation;
  for (auto& rec : equivalenceBattery(pair, config.R, config.seed, bc).checks) {
    report.checks.push_back(std::move(rec));
  }
  report.checks.push_back(banachAlgebraCheck(pair, config.s, config.R, config.seed,
                                             std::max(1, config.trials / 2)));
  if (pair.cosets->traits().normal) {
    report.checks.push_back(normalQuotientCheck(pair, config.R, config.seed, config.trials));
  }

  const Measure<Rational> mu = uniformOnGenerators<Rational>(pair.group);
  const IdentityCheck<Rational> id = returnIdentityCheck(mu, pair.cosets, 1);
  CheckRecord walk;
  walk.name = "return-identity";
  walk.passed = id.equal;
  walk.evidence = Json{{"n", 1}, {"lhs", id.lhs.get_str()}, {"rhs", id.rhs.get_str()}};
  report.checks.push_back(std::move(walk));

  LeptinConfig lc;
  lc.mode = config.mode;
  if (config.mode == Mode::Exact) lc.maxIterations = 40;
  report.checks.push_back(leptinCheck(pair, mu.function(), lc));

  if (config.includeFit) {
    const ExponentFit fit = rdExponentFit(pair, config.family, config.fit);
    CheckRecord rec;
    rec.name = "exponent-fit";
    rec.exact = false;
    const bool poly = fit.verdict == FitVerdict::PolynomialConsistent;
    const bool expo = fit.verdict == FitVerdict::ExponentialConsistent;
    rec.passed = pair.info.rdExpected ? poly : expo;
    rec.evidence = fitToJson(fit);
    rec.evidence["rdExpected"] = pair.info.rdExpected;
    if (!rec.passed) rec.reproducer = Json{{"fixture", spec.toString()}, {"family", fit.family}};
    report.checks.push_back(std::move(rec));
  }
  return report;
}

}  // namespace rdp
