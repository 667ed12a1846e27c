#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "rdpairs/rdlab.hpp"
#include "rdpairs/schreier.hpp"
#include "rdpairs/walks.hpp"

namespace rdp {

inline constexpr const char* kToolVersion = "0.1.0";

/// 64-bit FNV-1a of the compact JSON dump, as 16 hex digits.
std::string configDigest(const Json& config);

/// {"schema", "tool_version", "config_digest", "config"} followed by the fields of `body`.
Json stampArtifact(std::string_view schema, const Json& config, const Json& body);

/// Writes `content` to `path`, creating parent directories. Throws IoError.
void writeText(const std::filesystem::path& path, std::string_view content);

/// Comma-separated rows after a "# schema=... tool_version=... config_digest=..." line.
std::string csvDocument(std::string_view schema, const Json& config,
                        const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows);

/// Two-column "x y" series with a one-line comment header.
std::string plotSeries(std::string_view title, const Json& config,
                       const std::vector<std::pair<double, double>>& points);

/// Exact value from "p/q", an integer, or a plain decimal such as "-0.125".
Rational parseExactValue(std::string_view text);

/// Function literal "g=v, g=v, ..." where g uses the model's element syntax; commas and
/// semicolons inside (), [] or <> belong to the element. "uniform" is the uniform measure on
/// the generating set and "0" the zero function. Throws InvalidArgument.
GroupFunction<Rational> parseFunctionLiteral(const ModelPtr& group, std::string_view text);

/// Inverse of parseFunctionLiteral.
std::string formatFunctionLiteral(const GroupFunction<Rational>& f);
std::string formatFunctionLiteral(const GroupFunction<double>& f);

/// Vertices (coset, distance, representative) and generator-indexed adjacency (-1 = outside).
Json graphToJson(const SchreierGraph& graph);

Json walkToJson(const WalkReport& report);
Json growthToJson(const GrowthSeries& series);
Json bracketToJson(const NormBracket<Rational>& b);
Json bracketToJson(const NormBracket<double>& b);
Json spectralToJson(const SpectralRadiusEstimate& e);

}  // namespace rdp
