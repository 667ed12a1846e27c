#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "rdpairs/error.hpp"
#include "rdpairs/fixtures.hpp"
#include "rdpairs/io.hpp"
#include "support.hpp"

using namespace rdp;
using rdp::test::r;

TEST(Io, ConfigDigestIsStableHex) {
  const Json a{{"fixture", "z2-zline"}, {"R", 3}};
  const std::string d = configDigest(a);
  EXPECT_EQ(d.size(), 16u);
  EXPECT_EQ(d.find_first_not_of("0123456789abcdef"), std::string::npos);
  EXPECT_EQ(configDigest(Json{{"fixture", "z2-zline"}, {"R", 3}}), d);
  EXPECT_NE(configDigest(Json{{"fixture", "z2-zline"}, {"R", 4}}), d);
  // FNV-1a of the empty-object dump "{}"
  EXPECT_EQ(configDigest(Json::object()), "08f44b07b5901a25");
}

TEST(Io, StampFieldOrder) {
  const Json config{{"seed", 1}};
  const Json out = stampArtifact("walk", config, Json{{"n", 3}, {"rho", 0.5}});
  std::vector<std::string> keys;
  for (const auto& [k, v] : out.items()) keys.push_back(k);
  const std::vector<std::string> expected{"schema", "tool_version", "config_digest", "config", "n",
                                          "rho"};
  EXPECT_EQ(keys, expected);
  EXPECT_EQ(out["tool_version"], kToolVersion);
  EXPECT_EQ(out["config_digest"], configDigest(config));
}

TEST(Io, CsvHeaderLine) {
  const Json config{{"a", 1}};
  const std::string doc = csvDocument("returns", config, {"n", "P"}, {{"1", "3/8"}, {"2", "1/4"}});
  std::istringstream in(doc);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# schema=returns tool_version=" + std::string(kToolVersion) +
                      " config_digest=" + configDigest(config));
  std::getline(in, line);
  EXPECT_EQ(line, "n,P");
  std::getline(in, line);
  EXPECT_EQ(line, "1,3/8");
}

TEST(Io, ExactValues) {
  EXPECT_EQ(parseExactValue("3/8"), r(3, 8));
  EXPECT_EQ(parseExactValue("-0.125"), r(-1, 8));
  EXPECT_EQ(parseExactValue("2.50"), r(5, 2));
  EXPECT_EQ(parseExactValue("7"), r(7));
  for (const char* bad : {"1.", "x.5", "1.2.3", "abc"}) {
    try {
      parseExactValue(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::MalformedKey)
          << bad;
    }
  }
}

TEST(Io, FunctionLiteralRoundTrip) {
  const Pair z = buildFixture("z2-zline");
  const auto f = parseFunctionLiteral(z.group, "(1,0)=1/2, (0,-1)=0.25; (0,-1)=1/4");
  EXPECT_EQ(f, rdp::test::q(z.group, {{"(1,0)", r(1, 2)}, {"(0,-1)", r(1, 2)}}));
  EXPECT_EQ(parseFunctionLiteral(z.group, formatFunctionLiteral(f)), f);
  EXPECT_EQ(parseFunctionLiteral(z.group, "uniform"),
            uniformOnGenerators<Rational>(z.group).function());
  EXPECT_EQ(parseFunctionLiteral(z.group, formatFunctionLiteral(GroupFunction<Rational>(z.group))),
            GroupFunction<Rational>(z.group));

  const Pair prod = buildFixture("z2-zline*f2-ker");
  const auto g = parseFunctionLiteral(prod.group, "<(1,2);ab>=3, <(0,0);e>=-1/3");
  EXPECT_EQ(g.supportSize(), 2u);
  EXPECT_EQ(parseFunctionLiteral(prod.group, formatFunctionLiteral(g)), g);

  const Pair s4 = buildFixture("s4-d8");
  const auto h = parseFunctionLiteral(s4.group, formatFunctionLiteral(
                                                   uniformOnGenerators<Rational>(s4.group).function()));
  EXPECT_EQ(h, uniformOnGenerators<Rational>(s4.group).function());

  EXPECT_THROW(parseFunctionLiteral(z.group, "(1,0)"), Error);
  EXPECT_THROW(parseFunctionLiteral(z.group, "(1,0=1"), Error);
}

TEST(Io, WriteTextCreatesDirectories) {
  const auto dir = std::filesystem::temp_directory_path() / "rdpairs-io-test";
  std::filesystem::remove_all(dir);
  const auto path = dir / "a" / "b" / "out.json";
  writeText(path, "{}\n");
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(content, "{}\n");
  std::filesystem::remove_all(dir);
}
