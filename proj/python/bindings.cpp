#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rdpairs/error.hpp"
#include "rdpairs/io.hpp"
#include "rdpairs/rdlab.hpp"

namespace py = pybind11;
using namespace rdp;

// Structured results cross the boundary as JSON text; the Python side decodes them.
namespace {

std::string fixturesJson() {
  Json out = Json::array();
  for (const auto& e : fixtureCatalog()) {
    const Pair p = buildFixture(e.id);
    Json params = Json::object();
    for (const auto& [k, v] : e.defaults) params[k] = v;
    out.push_back(Json{{"id", e.id}, {"params", params}, {"description", e.description},
                       {"rd_expected", p.info.rdExpected},
                       {"co_growth", toString(p.info.coGrowth)}});
  }
  return out.dump();
}

std::vector<std::uint64_t> sphereSizes(const std::string& fixture, int R) {
  const BallIndex ball = enumerateBall(buildFixture(fixture).group, R);
  std::vector<std::uint64_t> out;
  for (const auto& s : ball.spheres()) out.push_back(s.size());
  return out;
}

std::vector<std::uint64_t> schreierCounts(const std::string& fixture, int R) {
  return buildSchreier(buildFixture(fixture).cosets, R).counts();
}

std::string normsJson(const std::string& fixture, const std::string& literal) {
  const Pair p = buildFixture(fixture);
  const auto f = parseFunctionLiteral(p.group, literal);
  return Json{{"l1_squared", norm1(f).squared.get_str()},
              {"l2_squared", norm2(f).squared.get_str()},
              {"norm21_squared", norm21(f, *p.cosets).squared.get_str()},
              {"pushforward_squared", squaredNorm(pushforward(f.absolute(), *p.cosets)).get_str()}}
      .dump();
}

std::string convolveText(const std::string& fixture, const std::string& f, const std::string& g) {
  const Pair p = buildFixture(fixture);
  return formatFunctionLiteral(convolve(parseFunctionLiteral(p.group, f), parseFunctionLiteral(p.group, g)));
}

std::vector<std::string> returnProbabilities(const std::string& fixture, int N, bool exact,
                                             const std::string& mu) {
  const Pair p = buildFixture(fixture);
  WalkConfig wc;
  wc.N = N;
  wc.exact = exact;
  wc.exactSteps = exact ? N : kDefaultExactSteps;
  return walkSpectralRadius(Measure<Rational>(parseFunctionLiteral(p.group, mu)), p.cosets, wc)
      .returnsText;
}

std::string exponentFitJson(const std::string& fixture, const std::string& family, int lo, int hi) {
  FitConfig c;
  c.lo = lo;
  c.hi = hi;
  return fitToJson(rdExponentFit(buildFixture(fixture), Family::parse(family), c)).dump();
}

std::string suiteJson(const std::string& fixture, int radius, std::uint64_t seed, int trials,
                      bool fit) {
  SuiteConfig sc;
  sc.R = radius;
  sc.seed = seed;
  sc.trials = trials;
  sc.includeFit = fit;
  const FixtureSpec spec = FixtureSpec::parse(fixture);
  return runSuite(buildFixture(spec), spec, sc).toJson().dump();
}

}  // namespace

PYBIND11_MODULE(_rdpairs, m) {
  m.doc() = "Hybrid (2,1)-norms, Schreier growth and random walks on group pairs";
  m.attr("__version__") = kToolVersion;

  static py::exception<Error> rdError(m, "RdpairsError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(rdError, e.what());
    }
  });

  m.def("fixtures_json", &fixturesJson);
  m.def("sphere_sizes", &sphereSizes, py::arg("fixture"), py::arg("radius"));
  m.def("schreier_counts", &schreierCounts, py::arg("fixture"), py::arg("radius"));
  m.def("norms_json", &normsJson, py::arg("fixture"), py::arg("f"));
  m.def("convolve", &convolveText, py::arg("fixture"), py::arg("f"), py::arg("g"));
  m.def("return_probabilities", &returnProbabilities, py::arg("fixture"), py::arg("n"),
        py::arg("exact") = true, py::arg("mu") = "uniform");
  m.def("exponent_fit_json", &exponentFitJson, py::arg("fixture"), py::arg("family") = "cosetreps",
        py::arg("lo") = 4, py::arg("hi") = 14);
  m.def("suite_json", &suiteJson, py::arg("fixture"), py::arg("radius") = 3, py::arg("seed") = 0,
        py::arg("trials") = 100, py::arg("fit") = true);
}
