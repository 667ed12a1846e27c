#include "rdpairs/io.hpp"

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rdpairs/error.hpp"

namespace rdp {

std::string configDigest(const Json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json stampArtifact(std::string_view schema, const Json& config, const Json& body) {
  Json out;
  out["schema"] = schema;
  out["tool_version"] = kToolVersion;
  out["config_digest"] = configDigest(config);
  out["config"] = config;
  for (const auto& [k, v] : body.items()) out[k] = v;
  return out;
}

void writeText(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + path.parent_path().string());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
}

namespace {

std::string headerLine(std::string_view schema, const Json& config) {
  return "# schema=" + std::string(schema) + " tool_version=" + kToolVersion +
         " config_digest=" + configDigest(config) + "\n";
}

}  // namespace

std::string csvDocument(std::string_view schema, const Json& config,
                        const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows) {
  std::string out = headerLine(schema, config);
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::string plotSeries(std::string_view title, const Json& config,
                       const std::vector<std::pair<double, double>>& points) {
  std::string out = headerLine(title, config);
  for (const auto& [x, y] : points) out += formatDouble(x) + ' ' + formatDouble(y) + '\n';
  return out;
}

Rational parseExactValue(std::string_view text) {
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return ScalarTraits<Rational>::parse(text);
  std::string_view whole = text.substr(0, dot);
  const std::string_view frac = text.substr(dot + 1);
  bool negative = false;
  if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) {
    negative = whole[0] == '-';
    whole.remove_prefix(1);
  }
  const std::string digits = std::string(whole) + std::string(frac);
  if (digits.empty() || frac.empty() ||
      !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw Error(ErrorCode::InvalidArgument, "not a decimal literal: '" + std::string(text) + "'");
  }
  Rational q(mpz_class(digits, 10), powRational(Rational(10), static_cast<unsigned>(frac.size())).get_num());
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

GroupFunction<Rational> parseFunctionLiteral(const ModelPtr& group, std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text == "uniform") return uniformOnGenerators<Rational>(group).function();
  if (text == "0") return GroupFunction<Rational>(group);
  std::vector<std::string_view> items;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const char c = i < text.size() ? text[i] : ',';
    if (c == '(' || c == '[' || c == '<') ++depth;
    if (c == ')' || c == ']' || c == '>') --depth;
    if (depth < 0) throw Error(ErrorCode::InvalidArgument, "unbalanced brackets in function literal");
    if (depth == 0 && (c == ',' || c == ';')) {
      const std::string_view item = trim(text.substr(start, i - start));
      if (!item.empty()) items.push_back(item);
      start = i + 1;
    }
  }
  if (depth != 0) throw Error(ErrorCode::InvalidArgument, "unbalanced brackets in function literal");
  GroupFunction<Rational>::Map values;
  for (const auto item : items) {
    const auto eq = item.rfind('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::InvalidArgument,
                  "function entry '" + std::string(item) + "' is not of the form g=value");
    }
    const ElementKey g = group->parse(trim(item.substr(0, eq)));
    values[g] += parseExactValue(trim(item.substr(eq + 1)));
  }
  return GroupFunction<Rational>(group, std::move(values));
}

std::string formatFunctionLiteral(const GroupFunction<Rational>& f) {
  std::string out;
  for (const auto& [g, v] : f.entries()) {
    if (!out.empty()) out += ", ";
    out += f.group().format(g) + '=' + v.get_str();
  }
  return out.empty() ? "0" : out;
}

std::string formatFunctionLiteral(const GroupFunction<double>& f) {
  std::string out;
  for (const auto& [g, v] : f.entries()) {
    if (!out.empty()) out += ", ";
    out += f.group().format(g) + '=' + formatDouble(v);
  }
  return out.empty() ? "0" : out;
}

Json graphToJson(const SchreierGraph& graph) {
  Json out;
  out["subgroup"] = graph.cosets().subgroupName();
  out["radius"] = graph.radius();
  out["complete"] = graph.complete();
  Json gens = Json::array();
  for (const auto& s : graph.group().generators()) gens.push_back(s.label);
  out["generators"] = std::move(gens);
  Json vertices = Json::array();
  Json adjacency = Json::array();
  for (std::size_t v = 0; v < graph.size(); ++v) {
    const int i = static_cast<int>(v);
    vertices.push_back(Json{{"coset", graph.cosets().format(graph.key(i))},
                            {"distance", graph.distance(i)},
                            {"representative", graph.group().format(graph.representative(i))}});
    Json row = Json::array();
    for (std::size_t s = 0; s < graph.degree(); ++s) row.push_back(graph.target(i, s));
    adjacency.push_back(std::move(row));
  }
  out["vertices"] = std::move(vertices);
  out["adjacency"] = std::move(adjacency);
  out["counts"] = graph.counts();
  return out;
}

Json walkToJson(const WalkReport& report) {
  Json out;
  out["mode"] = report.mode == Mode::Exact ? "exact" : "float";
  out["stepRadius"] = report.stepRadius;
  out["returns"] = report.returnsText;
  out["radiusSequence"] = report.radiusSequence;
  out["ratioSequence"] = report.ratioSequence;
  out["rhoLower"] = report.rhoLower;
  out["rhoEstimate"] = report.rhoEstimate;
  out["rhoUpper"] = report.rhoUpper;
  return out;
}

Json growthToJson(const GrowthSeries& series) {
  Json out;
  out["counts"] = series.counts;
  out["verdict"] = toString(series.fit.verdict);
  out["estimate"] = series.fit.estimate;
  out["fitWindow"] = {series.fit.fitLo, series.fit.fitHi};
  out["semilog"] = {{"slope", series.fit.semilog.slope}, {"rms", series.fit.semilog.rms}};
  out["loglog"] = {{"slope", series.fit.loglog.slope}, {"rms", series.fit.loglog.rms}};
  return out;
}

namespace {

template <class S>
Json bracketJson(const NormBracket<S>& b) {
  Json out;
  out["lower"] = b.lower();
  out["upper"] = b.upper();
  out["lowerSquared"] = ScalarTraits<S>::toString(b.lowerSquared);
  out["upperSquared"] = ScalarTraits<S>::toString(b.upperSquared);
  out["method"] = b.method;
  out["iterations"] = b.iterations;
  out["truncationRadius"] = b.truncationRadius;
  out["truncated"] = b.truncated;
  out["log"] = b.log;
  return out;
}

}  // namespace

Json bracketToJson(const NormBracket<Rational>& b) { return bracketJson(b); }
Json bracketToJson(const NormBracket<double>& b) { return bracketJson(b); }

Json spectralToJson(const SpectralRadiusEstimate& e) {
  Json out;
  out["kind"] = toString(e.kind);
  out["s"] = e.s;
  out["sequence"] = e.sequence;
  out["ratios"] = e.ratios;
  out["lastValue"] = e.lastValue;
  out["extrapolated"] = e.extrapolated;
  out["lag"] = e.lag;
  out["sequenceMonotone"] = e.sequenceMonotone;
  out["ratiosMonotone"] = e.ratiosMonotone;
  return out;
}

}  // namespace rdp
