// rdlab: command-line driver for the rdpairs library.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or input error, 3 a computation cap was
// hit (partial artifacts are written when --out is given).

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

#include "rdpairs/error.hpp"
#include "rdpairs/io.hpp"
#include "rdpairs/rdlab.hpp"

namespace fs = std::filesystem;
using namespace rdp;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

/// Artifact sink: writes nothing unless an output directory was given.
struct Sink {
  std::string outDir;
  std::string command;
  Json config;

  bool enabled() const { return !outDir.empty(); }
  fs::path path(std::string_view suffix) const { return fs::path(outDir) / (command + std::string(suffix)); }

  void json(std::string_view schema, const Json& body, std::string_view suffix = ".json") const {
    if (enabled()) writeText(path(suffix), stampArtifact(schema, config, body).dump(2) + "\n");
  }
  void csv(std::string_view schema, const std::vector<std::string>& header,
           const std::vector<std::vector<std::string>>& rows, std::string_view suffix = ".csv") const {
    if (enabled()) writeText(path(suffix), csvDocument(schema, config, header, rows));
  }
  void plot(std::string_view curve, const std::vector<std::pair<double, double>>& points) const {
    if (enabled()) {
      writeText(path("." + std::string(curve) + ".dat"),
                plotSeries(command + "." + std::string(curve), config, points));
    }
  }
};

std::string joinCounts(const std::vector<std::uint64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::vector<std::uint64_t> sphereSizes(const BallIndex& ball) {
  std::vector<std::uint64_t> out;
  for (const auto& s : ball.spheres()) out.push_back(s.size());
  return out;
}

std::vector<std::pair<double, double>> growthPoints(const std::vector<std::uint64_t>& counts) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t r = 0; r < counts.size(); ++r) pts.emplace_back(r, static_cast<double>(counts[r]));
  return pts;
}

// ---------------------------------------------------------------------------------------------

struct FixtureOpt {
  std::string fixture = "z2-zline";
};

int cmdFixtures(const Sink& sink) {
  Json list = Json::array();
  for (const auto& e : fixtureCatalog()) {
    const Pair p = buildFixture(e.id);
    Json params = Json::object();
    for (const auto& [k, v] : e.defaults) params[k] = v;
    list.push_back(Json{{"id", e.id},
                        {"params", params},
                        {"description", e.description},
                        {"rdExpected", p.info.rdExpected},
                        {"coGrowth", toString(p.info.coGrowth)},
                        {"normal", p.cosets->traits().normal},
                        {"coAmenable", p.cosets->traits().coAmenable}});
    std::string ps;
    for (const auto& [k, v] : e.defaults) ps += (ps.empty() ? "" : ",") + k + "=" + std::to_string(v);
    std::cout << e.id << (ps.empty() ? "" : ":" + ps) << "  rd=" << (p.info.rdExpected ? "yes" : "no")
              << "  co-growth=" << toString(p.info.coGrowth) << "  " << e.description << "\n";
  }
  sink.json("rdpairs.fixtures/1", Json{{"fixtures", list}});
  return 0;
}

struct BallOpt {
  int R = 4;
  bool counts = false;
  std::size_t cap = kDefaultBallCap;
};

int cmdBall(const Pair& pair, const BallOpt& o, const Sink& sink) {
  int status = 0;
  std::optional<BallIndex> ball;
  std::string partial;
  try {
    ball.emplace(enumerateBall(pair.group, o.R, o.cap));
  } catch (const CapError& e) {
    partial = e.what();
    status = kExitCap;
    std::cerr << "rdlab: " << e.what() << "\n";
    if (e.lastCompleted() < 0) return status;
    ball.emplace(enumerateBall(pair.group, static_cast<int>(e.lastCompleted()), o.cap));
  }
  const auto spheres = sphereSizes(*ball);
  const auto counts = ball->ballCounts();
  if (o.counts) {
    std::cout << joinCounts(spheres) << "\n";
  } else {
    std::cout << "radius " << ball->radius() << "  |B(R)| = " << counts.back() << "\n";
    std::cout << "spheres " << joinCounts(spheres) << "\n";
  }
  Json body{{"fixture", sink.config["fixture"]}, {"radius", ball->radius()}, {"spheres", spheres},
            {"balls", counts}};
  if (ball->radius() - 0 >= kDefaultMinWindow) body["growth"] = growthToJson(growthSeries(*ball));
  if (!partial.empty()) body["partial"] = partial;
  std::vector<std::vector<std::string>> rows;
  for (std::size_t r = 0; r < counts.size(); ++r) {
    rows.push_back({std::to_string(r), std::to_string(spheres[r]), std::to_string(counts[r])});
  }
  sink.json("rdpairs.ball/1", body);
  sink.csv("rdpairs.ball/1", {"r", "sphere", "ball"}, rows);
  sink.plot("growth", growthPoints(counts));
  return status;
}

struct SchreierOpt {
  int R = 10;
  std::optional<double> folner;
  bool graph = false;
  std::size_t cap = kDefaultGraphCap;
};

int cmdSchreier(const Pair& pair, const SchreierOpt& o, const Sink& sink) {
  int status = 0;
  std::optional<SchreierGraph> g;
  std::string partial;
  try {
    g.emplace(buildSchreier(pair.cosets, o.R, o.cap));
  } catch (const CapError& e) {
    partial = e.what();
    status = kExitCap;
    std::cerr << "rdlab: " << e.what() << "\n";
    if (e.lastCompleted() < 0) return status;
    g.emplace(buildSchreier(pair.cosets, static_cast<int>(e.lastCompleted()), o.cap));
  }
  const auto& counts = g->counts();
  std::cout << "vertices " << g->size() << "  radius " << g->radius()
            << (g->complete() ? "  (complete quotient)" : "") << "\n";
  std::cout << "gamma " << joinCounts(counts) << "\n";
  Json body{{"fixture", sink.config["fixture"]}, {"vertices", g->size()},
            {"radius", g->radius()}, {"complete", g->complete()}};
  if (g->radius() >= kDefaultMinWindow) {
    const GrowthSeries gs = schreierGrowth(*g);
    std::cout << "growth " << toString(gs.fit.verdict) << " (estimate " << gs.fit.estimate << ")\n";
    body["growth"] = growthToJson(gs);
  } else {
    body["counts"] = counts;
  }
  if (o.folner) {
    std::vector<ElementKey> F;
    for (const auto& s : pair.group->generators()) F.push_back(s.key);
    const auto w = folnerSearch(*g, F, *o.folner);
    if (w) {
      std::cout << "folner radius " << w->radius << "  |V| = " << w->volume << "  boundary "
                << w->boundary << "  ratio " << w->ratio << "\n";
      body["folner"] = Json{{"eps", *o.folner}, {"radius", w->radius}, {"volume", w->volume},
                            {"boundary", w->boundary}, {"ratio", w->ratio}};
    } else {
      std::cout << "folner none within radius " << g->radius() << "\n";
      body["folner"] = Json{{"eps", *o.folner}, {"radius", nullptr}};
    }
  }
  if (o.graph) body["graph"] = graphToJson(*g);
  if (!partial.empty()) body["partial"] = partial;
  std::vector<std::vector<std::string>> rows;
  for (std::size_t r = 0; r < counts.size(); ++r) rows.push_back({std::to_string(r), std::to_string(counts[r])});
  sink.json("rdpairs.schreier/1", body);
  sink.csv("rdpairs.schreier/1", {"r", "gamma"}, rows);
  sink.plot("growth", growthPoints(counts));
  return status;
}

struct FunctionOpt {
  std::string f = "uniform";
  std::string g;
  int s = 1;
  int power = 1;
};

int cmdNorms(const Pair& pair, const FunctionOpt& o, const Sink& sink) {
  const auto f = parseFunctionLiteral(pair.group, o.f);
  std::vector<ElementKey> support;
  for (const auto& [g, v] : f.entries()) support.push_back(g);
  const int radius = supportRadius(*pair.group, support);
  const BallIndex ball = enumerateBall(pair.group, radius);
  const auto l1 = norm1(f);
  const auto l2 = norm2(f);
  const auto l21 = norm21(f, *pair.cosets);
  const auto sob = sobolevNorm(f, pair.cosets.get(), ball, o.s);
  const Rational push = squaredNorm(pushforward(f.absolute(), *pair.cosets));
  std::cout << "||f||_1       = " << l1.value() << "\n"
            << "||f||_2^2     = " << l2.squared << "\n"
            << "||f||_(2,1)^2 = " << l21.squared << "\n"
            << "||f||_{" << o.s << ",(2,1)}^2 = " << sob.squared << "\n"
            << "||pi(|f|)||_2^2 = " << push << (push == l21.squared ? "  (equal)" : "  (MISMATCH)")
            << "\n";
  sink.json("rdpairs.norms/1",
            Json{{"f", formatFunctionLiteral(f)},
                 {"l1Squared", l1.squared.get_str()},
                 {"l2Squared", l2.squared.get_str()},
                 {"norm21Squared", l21.squared.get_str()},
                 {"sobolev", {{"s", o.s}, {"squared", sob.squared.get_str()}}},
                 {"pushforwardSquared", push.get_str()},
                 {"chainHolds", l2.squared <= l21.squared && l21.squared <= l1.squared},
                 {"pushforwardEqual", push == l21.squared}});
  return push == l21.squared ? 0 : kExitCheckFailed;
}

int cmdConv(const Pair& pair, const FunctionOpt& o, const Sink& sink) {
  const auto f = parseFunctionLiteral(pair.group, o.f);
  GroupFunction<Rational> out = f;
  if (!o.g.empty()) {
    out = convolve(f, parseFunctionLiteral(pair.group, o.g));
  } else {
    out = convolutionPower(f, o.power);
  }
  const std::string text = formatFunctionLiteral(out);
  std::cout << text << "\n";
  sink.json("rdpairs.conv/1", Json{{"f", formatFunctionLiteral(f)}, {"g", o.g}, {"power", o.power},
                                   {"result", functionToJson(out)}});
  return 0;
}

struct OpnormOpt {
  std::string f = "uniform";
  int truncation = 20;
  int iterations = 60;
  bool exact = false;
  std::size_t cap = kDefaultGraphCap;
};

int cmdOpnorm(const Pair& pair, const OpnormOpt& o, const Sink& sink) {
  const auto f = parseFunctionLiteral(pair.group, o.f);
  int status = 0;
  std::optional<SchreierGraph> g;
  try {
    g.emplace(buildSchreier(pair.cosets, o.truncation, o.cap));
  } catch (const CapError& e) {
    std::cerr << "rdlab: " << e.what() << "\n";
    status = kExitCap;
    if (e.lastCompleted() < 0) return status;
    g.emplace(buildSchreier(pair.cosets, static_cast<int>(e.lastCompleted()), o.cap));
  }
  BracketConfig bc;
  bc.maxIterations = o.iterations;
  Json body;
  if (o.exact) {
    const auto b = f.isPositive() ? hybridNormBracket(f, *g, bc) : generalHybridBracket(f, *g, bc);
    body = bracketToJson(b);
    std::cout << "lower^2 = " << b.lowerSquared << "\nupper^2 = " << b.upperSquared << "\n";
  } else {
    const auto ff = toFloat(f);
    const auto b = ff.isPositive() ? hybridNormBracket(ff, *g, bc) : generalHybridBracket(ff, *g, bc);
    body = bracketToJson(b);
  }
  std::cout << "||f||_h in [" << body["lower"].get<double>() << ", " << body["upper"].get<double>()
            << "]  (truncation radius " << g->radius() << ", " << body["iterations"].get<int>()
            << " iterations)\n";
  body["f"] = formatFunctionLiteral(f);
  sink.json("rdpairs.opnorm/1", body);
  std::vector<std::pair<double, double>> pts;
  const auto& log = body["log"];
  for (std::size_t i = 0; i < log.size(); ++i) pts.emplace_back(i + 1, log[i].get<double>());
  sink.plot("lower", pts);
  return status;
}

struct SpectralOpt {
  std::string f = "uniform";
  std::string kind = "rhoH";
  int N = 12;
  double s = 1.0;
  bool exact = false;
  std::size_t cap = kDefaultBallCap;
};

int cmdSpectral(const Pair& pair, const SpectralOpt& o, const Sink& sink) {
  const auto f = parseFunctionLiteral(pair.group, o.f);
  SpectralConfig sc;
  sc.N = o.N;
  sc.s = o.s;
  sc.cap = o.cap;
  const SpectralKind kind = parseSpectralKind(o.kind);
  const auto est = o.exact ? spectralRadius(f, kind, pair.cosets, sc)
                           : spectralRadius(toFloat(f), kind, pair.cosets, sc);
  std::cout << o.kind << ": last " << est.lastValue << "  extrapolated " << est.extrapolated << "\n";
  Json body = spectralToJson(est);
  body["f"] = formatFunctionLiteral(f);
  sink.json("rdpairs.spectral/1", body);
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < est.sequence.size(); ++i) pts.emplace_back(i + 1, est.sequence[i]);
  sink.plot("sequence", pts);
  return 0;
}

struct FitOpt {
  std::string family = "cosetreps";
  int lo = 4;
  int hi = 14;
  int iterations = 6;
  std::size_t graphCap = 200'000;
};

FitConfig toFitConfig(const FitOpt& o) {
  FitConfig c;
  c.lo = o.lo;
  c.hi = o.hi;
  c.iterations = o.iterations;
  c.graphCap = o.graphCap;
  return c;
}

Json fitConfigJson(const FitOpt& o) {
  return Json{{"family", o.family}, {"lo", o.lo}, {"hi", o.hi}, {"iterations", o.iterations},
              {"graphCap", o.graphCap}};
}

/// Fit JSON, reused from RDLAB_CACHE_DIR when present there.
Json cachedFit(const Pair& pair, const std::string& fixture, const FitOpt& o) {
  Json key{{"fixture", fixture}, {"fit", fitConfigJson(o)}, {"tool_version", kToolVersion}};
  std::optional<fs::path> file;
  if (const char* dir = std::getenv("RDLAB_CACHE_DIR"); dir != nullptr && *dir != '\0') {
    file = fs::path(dir) / ("rdfit-" + configDigest(key) + ".json");
    std::ifstream in(*file);
    if (in) {
      try {
        return Json::parse(in);
      } catch (const std::exception&) {
        // unreadable entry: recompute and overwrite
      }
    }
  }
  const Json out = fitToJson(rdExponentFit(pair, Family::parse(o.family), toFitConfig(o)));
  if (file) writeText(*file, out.dump() + "\n");
  return out;
}

int cmdRdfit(const Pair& pair, const std::string& fixture, const FitOpt& o, const Sink& sink) {
  const Json fit = cachedFit(pair, fixture, o);
  const auto& radii = fit["radii"];
  const auto& ratios = fit["ratios"];
  std::cout << "verdict " << fit["verdict"].get<std::string>() << "  dHat "
            << fit["dHat"].get<double>() << "  CHat " << fit["CHat"].get<double>() << "\n";
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<double, double>> pts;
  std::vector<std::pair<double, double>> line;
  const double slope = fit["loglog"]["slope"].get<double>();
  const double icpt = fit["loglog"]["intercept"].get<double>();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const int R = radii[i].get<int>();
    const double M = ratios[i].get<double>();
    rows.push_back({std::to_string(R), formatDouble(M), formatDouble(fit["lowers"][i].get<double>()),
                    formatDouble(fit["norms21"][i].get<double>()), fit["sources"][i].get<std::string>()});
    pts.emplace_back(std::log(1.0 + R), std::log(M));
    line.emplace_back(std::log(1.0 + R), icpt + slope * std::log(1.0 + R));
    std::cout << "R=" << R << "  M(R)=" << M << "\n";
  }
  sink.json("rdpairs.rdfit/1", fit);
  sink.csv("rdpairs.rdfit/1", {"R", "M", "lower", "norm21", "source"}, rows);
  sink.plot("loglog", pts);
  sink.plot("loglog.fit", line);
  if (fit.contains("stopReason")) {
    std::cerr << "rdlab: " << fit["stopReason"].get<std::string>() << "\n";
    return kExitCap;
  }
  return 0;
}

struct WalkOpt {
  std::string mu = "uniform";
  int N = 20;
  bool exact = false;
  int exactSteps = kDefaultExactSteps;
  bool lowerBound = false;
  std::size_t cap = kDefaultGraphCap;
  FitOpt fit;
};

int cmdWalk(const Pair& pair, const std::string& fixture, const WalkOpt& o, const Sink& sink) {
  const Measure<Rational> mu(parseFunctionLiteral(pair.group, o.mu));
  WalkConfig wc;
  wc.N = o.N;
  wc.exact = o.exact;
  wc.exactSteps = o.exactSteps;
  wc.cap = o.cap;
  int status = 0;
  WalkReport report;
  std::string partial;
  try {
    report = walkSpectralRadius(mu, pair.cosets, wc);
  } catch (const CapError& e) {
    std::cerr << "rdlab: " << e.what() << "\n";
    status = kExitCap;
    partial = e.what();
    if (e.lastCompleted() < 1) return status;
    wc.N = static_cast<int>(e.lastCompleted());
    report = walkSpectralRadius(mu, pair.cosets, wc);
  }
  std::vector<std::vector<std::string>> rows;
  std::cout << "n,P_2n,P_2n^(1/2n)\n";
  for (std::size_t i = 0; i < report.returns.size(); ++i) {
    rows.push_back({std::to_string(i + 1), report.returnsText[i], formatDouble(report.radiusSequence[i])});
    std::cout << rows.back()[0] << "," << rows.back()[1] << "," << rows.back()[2] << "\n";
  }
  std::cout << "# rho in [" << report.rhoLower << ", " << report.rhoUpper << "], estimate "
            << report.rhoEstimate << "\n";
  Json body = walkToJson(report);
  if (!partial.empty()) body["partial"] = partial;
  if (o.lowerBound) {
    const Json fit = cachedFit(pair, fixture, o.fit);
    ExponentFit ef;
    ef.dHat = fit["dHat"].get<double>();
    ef.CHat = fit["CHat"].get<double>();
    const double C = walkConstant(ef, report.stepRadius);
    const auto table = lowerBoundVerify(report, ef.dHat, C);
    Json rowsJson = Json::array();
    bool all = true;
    for (const auto& r : table) {
      all = all && r.pass;
      rowsJson.push_back(Json{{"n", r.n}, {"lhs", r.lhs}, {"rhsConservative", r.rhsConservative},
                              {"rhsAtLower", r.rhsAtLower}, {"pass", r.pass},
                              {"passAtLower", r.passAtLower}});
    }
    std::cout << "# lower bound d=" << ef.dHat << " C=" << C << ": " << (all ? "pass" : "FAIL")
              << " for n <= " << table.size() << "\n";
    body["lowerBound"] = Json{{"d", ef.dHat}, {"C", C}, {"fitVerdict", fit["verdict"]},
                              {"rows", rowsJson}, {"pass", all}};
    if (!all && status == 0) status = kExitCheckFailed;
  }
  sink.json("rdpairs.walk/1", body);
  sink.csv("rdpairs.walk/1", {"n", "P_2n", "P_2n^(1/2n)"}, rows);
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < report.radiusSequence.size(); ++i) pts.emplace_back(i + 1, report.radiusSequence[i]);
  sink.plot("radius", pts);
  return status;
}

struct SuiteOpt {
  std::vector<std::string> fixtures{"z2-zline"};
  int R = 3;
  std::uint64_t seed = 0;
  bool useFloat = false;
  int trials = 100;
  int s = 2;
  bool noFit = false;
  bool stability = false;
  std::string mutation = "none";
  int jobs = 1;
  FitOpt fit;
};

int cmdSuite(const SuiteOpt& o, const Sink& sink) {
  SuiteConfig sc;
  sc.R = o.R;
  sc.seed = o.seed;
  sc.mode = o.useFloat ? Mode::Float : Mode::Exact;
  sc.trials = o.trials;
  sc.s = o.s;
  sc.includeFit = !o.noFit;
  sc.fit = toFitConfig(o.fit);
  sc.family = Family::parse(o.fit.family);
  sc.mutation = parseMutation(o.mutation);

  auto job = [&](const std::string& text) {
    const FixtureSpec spec = FixtureSpec::parse(text);
    return runSuite(buildFixture(spec), spec, sc);
  };
  std::vector<SuiteReport> reports;
  const std::size_t width = static_cast<std::size_t>(std::max(1, o.jobs));
  for (std::size_t i = 0; i < o.fixtures.size(); i += width) {
    std::vector<std::future<SuiteReport>> batch;
    for (std::size_t j = i; j < std::min(o.fixtures.size(), i + width); ++j) {
      batch.push_back(std::async(width > 1 ? std::launch::async : std::launch::deferred, job,
                                 o.fixtures[j]));
    }
    for (auto& f : batch) reports.push_back(f.get());
  }
  if (o.stability) reports.push_back(stabilityChecks(defaultStabilityCases(), sc.fit));

  bool ok = true;
  Json all = Json::array();
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : reports) {
    ok = ok && r.passed();
    for (const auto& c : r.checks) {
      std::cout << r.fixture << "  " << c.name << "  "
                << (c.passed ? "pass" : (c.exact ? "FAIL" : "fail (evidence)")) << "\n";
      rows.push_back({r.fixture, c.name, c.passed ? "pass" : "fail", c.exact ? "exact" : "evidence"});
    }
    all.push_back(r.toJson());
  }
  std::cout << (ok ? "suite passed" : "suite FAILED") << "\n";
  sink.json("rdpairs.suite/1", Json{{"passed", ok}, {"reports", all}});
  sink.csv("rdpairs.suite/1", {"fixture", "check", "status", "kind"}, rows);
  return ok ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rdlab: hybrid norms, Schreier growth and rapid decay evidence for group pairs"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML configuration file; command-line flags override it");
  app.option_defaults()->always_capture_default();
  std::string outDir;
  bool dumpConfig = false;
  app.add_option("--out", outDir, "Directory for JSON/CSV/plot artifacts");
  app.add_flag("--dump-config", dumpConfig, "Print the effective configuration and exit");

  FixtureOpt fx;
  auto addFixture = [&](CLI::App* sub) {
    sub->add_option("--fixture", fx.fixture, "Fixture spec, e.g. z2-zline or zd-sublattice:d=3,k=2");
  };

  auto* fixtures = app.add_subcommand("fixtures", "List the fixture catalog");

  BallOpt ballOpt;
  auto* ball = app.add_subcommand("ball", "Enumerate the word-length ball of G");
  addFixture(ball);
  ball->add_option("-R,--radius", ballOpt.R, "Radius")->check(CLI::NonNegativeNumber);
  ball->add_flag("--counts", ballOpt.counts, "Print sphere sizes only");
  ball->add_option("--cap", ballOpt.cap, "Element cap")->check(CLI::PositiveNumber);

  SchreierOpt schOpt;
  double folnerEps = 0.0;
  auto* sch = app.add_subcommand("schreier", "Build the Schreier graph ball of G/H");
  addFixture(sch);
  sch->add_option("-R,--radius", schOpt.R, "Radius")->check(CLI::NonNegativeNumber);
  auto* folnerOpt = sch->add_option("--folner", folnerEps, "Search for a Folner ball with this epsilon");
  sch->add_flag("--graph", schOpt.graph, "Include vertices and adjacency in the JSON artifact");
  sch->add_option("--cap", schOpt.cap, "Vertex cap")->check(CLI::PositiveNumber);

  FunctionOpt fnOpt;
  auto* norms = app.add_subcommand("norms", "l1, l2, (2,1) and Sobolev norms of a function");
  addFixture(norms);
  norms->add_option("--f", fnOpt.f, "Function literal g=v, ... or 'uniform'");
  norms->add_option("--s", fnOpt.s, "Sobolev exponent (integer)")->check(CLI::NonNegativeNumber);

  auto* conv = app.add_subcommand("conv", "Convolution f*g or the power f^(n)");
  addFixture(conv);
  conv->add_option("--f", fnOpt.f, "Function literal");
  conv->add_option("--g", fnOpt.g, "Second function literal");
  conv->add_option("--power", fnOpt.power, "Convolution power when --g is absent")
      ->check(CLI::NonNegativeNumber);

  OpnormOpt opOpt;
  auto* opnorm = app.add_subcommand("opnorm", "Bracket the hybrid operator norm of f");
  addFixture(opnorm);
  opnorm->add_option("--f", opOpt.f, "Function literal");
  opnorm->add_option("--truncation", opOpt.truncation, "Schreier truncation radius")
      ->check(CLI::NonNegativeNumber);
  opnorm->add_option("--iterations", opOpt.iterations, "Power iterations")->check(CLI::PositiveNumber);
  opnorm->add_flag("--exact", opOpt.exact, "Exact rational arithmetic");
  opnorm->add_option("--cap", opOpt.cap, "Vertex cap")->check(CLI::PositiveNumber);

  SpectralOpt spOpt;
  auto* spectral = app.add_subcommand("spectral", "Spectral radius sequences of f");
  addFixture(spectral);
  spectral->add_option("--f", spOpt.f, "Function literal");
  spectral->add_option("--kind", spOpt.kind, "rho1, rho21power, rhoS, rhoH or rhoStar");
  spectral->add_option("-N", spOpt.N, "Number of terms")->check(CLI::PositiveNumber);
  spectral->add_option("--s", spOpt.s, "Sobolev exponent for rhoS")->check(CLI::NonNegativeNumber);
  spectral->add_flag("--exact", spOpt.exact, "Exact rational arithmetic");
  spectral->add_option("--cap", spOpt.cap, "Support / vertex cap")->check(CLI::PositiveNumber);

  auto addFit = [](CLI::App* sub, FitOpt& f) {
    sub->add_option("--family", f.family, "cosetreps, spheres or random:<seed>");
    sub->add_option("--lo", f.lo, "First radius of the fit window")->check(CLI::NonNegativeNumber);
    sub->add_option("--hi", f.hi, "Last radius of the fit window")->check(CLI::NonNegativeNumber);
    sub->add_option("--iterations", f.iterations, "Power iterations for non-co-amenable pairs")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--graph-cap", f.graphCap, "Vertex cap for the fit graph")->check(CLI::PositiveNumber);
  };

  FitOpt fitOpt;
  auto* rdfit = app.add_subcommand("rdfit", "Fit M(R) and classify polynomial vs exponential");
  addFixture(rdfit);
  addFit(rdfit, fitOpt);

  WalkOpt walkOpt;
  auto* walk = app.add_subcommand("walk", "Return probabilities P_2n(H,H) of a symmetric walk");
  addFixture(walk);
  walk->add_option("--mu", walkOpt.mu, "Measure literal or 'uniform'");
  walk->add_option("-n,-N,--steps", walkOpt.N, "Largest n")->check(CLI::PositiveNumber);
  walk->add_flag("--exact", walkOpt.exact, "Exact rationals (n <= --exact-steps)");
  walk->add_option("--exact-steps", walkOpt.exactSteps, "Largest N run exactly")
      ->check(CLI::PositiveNumber);
  walk->add_flag("--lower-bound", walkOpt.lowerBound, "Check n^-2d <= C rho^-2n P_2n with (d, C) from rdfit");
  walk->add_option("--cap", walkOpt.cap, "Vertex cap")->check(CLI::PositiveNumber);
  addFit(walk, walkOpt.fit);

  SuiteOpt suiteOpt;
  bool suiteExact = false;
  auto* suite = app.add_subcommand("suite", "Run every applicable check on one or more fixtures");
  suite->add_option("--fixture", suiteOpt.fixtures, "Fixture specs (repeatable)");
  suite->add_option("--radius", suiteOpt.R, "Ball radius for exact checks")->check(CLI::NonNegativeNumber);
  suite->add_option("--seed", suiteOpt.seed, "Seed");
  suite->add_flag("--exact", suiteExact, "Exact mode for the Leptin check (default)");
  suite->add_flag("--float", suiteOpt.useFloat, "Float mode for the Leptin check");
  suite->add_option("--trials", suiteOpt.trials, "Random trials per check")->check(CLI::PositiveNumber);
  suite->add_option("--s", suiteOpt.s, "Sobolev exponent (integer)")->check(CLI::NonNegativeNumber);
  suite->add_flag("--no-fit", suiteOpt.noFit, "Skip the exponent fit");
  suite->add_flag("--stability", suiteOpt.stability, "Also run product and restriction fits");
  suite->add_option("--mutation", suiteOpt.mutation, "Harness self-test corruption")
      ->check(CLI::IsMember({"none", "shifted-coset", "scaled-pairing", "sobolev-weight-shift"}));
  suite->add_option("--jobs", suiteOpt.jobs, "Fixtures run concurrently")->check(CLI::PositiveNumber);
  addFit(suite, suiteOpt.fit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  if (dumpConfig) {
    std::cout << app.config_to_str(true, false);
    return 0;
  }
  if (suiteExact && suiteOpt.useFloat) {
    std::cerr << "rdlab: --exact and --float are exclusive\n";
    return kExitUsage;
  }
  if (folnerOpt->count() > 0) schOpt.folner = folnerEps;

  Sink sink;
  sink.outDir = outDir;
  try {
    auto sub = app.get_subcommands().front();
    sink.command = sub->get_name();
    if (sub == fixtures) {
      sink.config = Json{{"command", "fixtures"}};
      return cmdFixtures(sink);
    }
    if (sub == suite) {
      sink.config = Json{{"command", "suite"},     {"fixtures", suiteOpt.fixtures},
                         {"radius", suiteOpt.R},   {"seed", suiteOpt.seed},
                         {"mode", suiteOpt.useFloat ? "float" : "exact"},
                         {"trials", suiteOpt.trials}, {"s", suiteOpt.s},
                         {"fit", suiteOpt.noFit ? Json(nullptr) : fitConfigJson(suiteOpt.fit)},
                         {"stability", suiteOpt.stability}, {"mutation", suiteOpt.mutation}};
      return cmdSuite(suiteOpt, sink);
    }
    const FixtureSpec spec = FixtureSpec::parse(fx.fixture);
    const Pair pair = buildFixture(spec);
    const std::string fixture = spec.toString();
    sink.config = Json{{"command", sink.command}, {"fixture", fixture}};
    if (sub == ball) {
      sink.config.update(Json{{"radius", ballOpt.R}, {"cap", ballOpt.cap}});
      return cmdBall(pair, ballOpt, sink);
    }
    if (sub == sch) {
      sink.config.update(Json{{"radius", schOpt.R}, {"cap", schOpt.cap}, {"graph", schOpt.graph},
                              {"folner", schOpt.folner ? Json(*schOpt.folner) : Json(nullptr)}});
      return cmdSchreier(pair, schOpt, sink);
    }
    if (sub == norms) {
      sink.config.update(Json{{"f", fnOpt.f}, {"s", fnOpt.s}});
      return cmdNorms(pair, fnOpt, sink);
    }
    if (sub == conv) {
      sink.config.update(Json{{"f", fnOpt.f}, {"g", fnOpt.g}, {"power", fnOpt.power}});
      return cmdConv(pair, fnOpt, sink);
    }
    if (sub == opnorm) {
      sink.config.update(Json{{"f", opOpt.f}, {"truncation", opOpt.truncation},
                              {"iterations", opOpt.iterations}, {"exact", opOpt.exact},
                              {"cap", opOpt.cap}});
      return cmdOpnorm(pair, opOpt, sink);
    }
    if (sub == spectral) {
      sink.config.update(Json{{"f", spOpt.f}, {"kind", spOpt.kind}, {"N", spOpt.N}, {"s", spOpt.s},
                              {"exact", spOpt.exact}, {"cap", spOpt.cap}});
      return cmdSpectral(pair, spOpt, sink);
    }
    if (sub == rdfit) {
      sink.config.update(fitConfigJson(fitOpt));
      return cmdRdfit(pair, fixture, fitOpt, sink);
    }
    if (sub == walk) {
      sink.config.update(Json{{"mu", walkOpt.mu}, {"N", walkOpt.N}, {"exact", walkOpt.exact},
                              {"exactSteps", walkOpt.exactSteps}, {"cap", walkOpt.cap},
                              {"lowerBound", walkOpt.lowerBound},
                              {"fit", walkOpt.lowerBound ? fitConfigJson(walkOpt.fit) : Json(nullptr)}});
      return cmdWalk(pair, fixture, walkOpt, sink);
    }
  } catch (const CapError& e) {
    std::cerr << "rdlab: " << e.what() << "\n";
    if (sink.enabled()) {
      sink.json("rdpairs.error/1", Json{{"error", e.what()}, {"code", toString(e.code())},
                                        {"lastCompleted", e.lastCompleted()}, {"partial", true}});
    }
    return kExitCap;
  } catch (const Error& e) {
    std::cerr << "rdlab: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
