#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ehrhart_local/job.hpp"
#include "test_support.hpp"

using namespace ehrhart_local;
using namespace ehrhart_local::testing;
namespace fs = std::filesystem;

namespace {

fs::path scratchDir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("ehrhart_local_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Outcome {
  int status;
  std::string out, err;
};

Outcome run(const JobConfig& cfg, const std::string& cmd, RunOptions opt) {
  std::ostringstream out, err;
  int s = runCommand(cfg, cmd, opt, out, err);
  return {s, out.str(), err.str()};
}

JobConfig triangleConfig() {
  return JobConfig::fromJson(Json::parse(R"({"polygon": [[1,0],[2,1],[0,2]], "domain": "cube", "t": 8})"));
}

RunOptions into(const fs::path& dir) {
  RunOptions o;
  o.outDir = dir.string();
  return o;
}

// Tag-balance check of a serialized SVG: every opened element is closed in
// order, self-closing elements aside, and the root is <svg>.
bool wellFormedSvg(const std::string& s) {
  std::vector<std::string> stack;
  bool sawRoot = false;
  std::size_t i = 0;
  while ((i = s.find('<', i)) != std::string::npos) {
    std::size_t j = s.find('>', i);
    if (j == std::string::npos) return false;
    std::string tag = s.substr(i + 1, j - i - 1);
    i = j + 1;
    if (tag.empty() || tag[0] == '?') continue;
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    std::string name = tag.substr(0, tag.find_first_of(" /"));
    if (stack.empty()) {
      if (sawRoot || name != "svg") return false;
      sawRoot = true;
    }
    if (tag.back() != '/') stack.push_back(name);
  }
  return sawRoot && stack.empty();
}

}  // namespace

TEST(Config, ParsesAllDomainForms) {
  EXPECT_EQ(triangleConfig().policy.kind, DomainPolicy::Kind::Cube);
  auto g = JobConfig::fromJson(Json::parse(R"({"polygon": [[1,0],[2,1],[0,2]], "domain": {"dv": {"gram": [[2,"1/2"],["1/2",2]]}}})"));
  EXPECT_EQ(g.policy.gram, GramMatrix(2, makeRational(1, 2), 2));
  auto grp = JobConfig::fromJson(Json::parse(R"({"polygon": [[0,0],[1,0],[0,1]], "domain": {"dv": {"group": [[[0,-1],[1,1]]]}}})"));
  EXPECT_EQ(grp.policy.group->order(), 6u);
  EXPECT_EQ(grp.policy.gram, GramMatrix(makeRational(4, 3), makeRational(2, 3), makeRational(4, 3)));
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(JobConfig::fromJson(Json::parse(R"({"domain": "cube"})")), ConfigError);
  EXPECT_THROW(JobConfig::fromJson(Json::parse(R"({"polygon": [[0,0],[1,1],[2,2]]})")), ConfigError);
  EXPECT_THROW(JobConfig::fromJson(Json::parse(R"({"polygon": [[0,0],[1,0],[0,1]], "domain": "hex"})")), ConfigError);
  EXPECT_THROW(JobConfig::fromJson(Json::parse(R"({"polygon": [[0,0],[1,0],[0,1]], "commands": ["draw"]})")), ConfigError);
  EXPECT_THROW(JobConfig::fromJson(Json::parse(R"({"polygon": [[0,0],[1,0],[0,1]], "t": -2})")), ConfigError);
  EXPECT_THROW(JobConfig::fromJson(Json::parse(R"({"polygon": [[0,0],[1,0],[0,1]], "domain": {"dv": {"gram": [[1,2],[2,1]]}}})")),
               ConfigError);
  fs::path bad = scratchDir("bad") / "bad.json";
  fs::create_directories(bad.parent_path());
  std::ofstream(bad) << "{ not json";
  EXPECT_THROW(JobConfig::load(bad.string()), ConfigError);
  EXPECT_THROW(JobConfig::load((bad.parent_path() / "missing.json").string()), ConfigError);
}

TEST(Commands, MuTableForTheTriangle) {
  fs::path dir = scratchDir("mu");
  Outcome r = run(triangleConfig(), "mu", into(dir));
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("P\tmu=1\t"), std::string::npos);
  EXPECT_NE(r.out.find("v0\tmu=3/8\tv=7/4"), std::string::npos);
  EXPECT_NE(r.out.find("v2\tmu=1/4\tv=9/2"), std::string::npos);
  Json j = Json::parse(slurp(dir / "mu.json"));
  std::vector<std::string> mus;
  for (const auto& f : j["faces"]) mus.push_back(f["mu"]);
  EXPECT_EQ(mus, (std::vector<std::string>{"1", "1/2", "1/2", "1/2", "3/8", "3/8", "1/4"}));
  EXPECT_TRUE(j["recursionConsistent"].get<bool>());
  EXPECT_EQ(j["faces"][4]["w"]["P"], "7/8");
}

TEST(Commands, EhrhartForTheSquare) {
  JobConfig cfg = JobConfig::fromJson(Json::parse(R"({"polygon": [[0,0],[1,0],[1,1],[0,1]]})"));
  Outcome r = run(cfg, "ehrhart", into(scratchDir("ehrhart")));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "local = oracle = 1, 2, 1\n");
}

TEST(Commands, VerifyEq1AtEight) {
  fs::path dir = scratchDir("eq1");
  Outcome r = run(triangleConfig(), "verify-eq1", into(dir));
  EXPECT_EQ(r.out, "109 = 109, matched\n");
  Json j = Json::parse(slurp(dir / "verify-eq1.json"));
  EXPECT_EQ(j["total"], "109");
  EXPECT_EQ(j["latticeCount"], 109);
}

TEST(Commands, VerifyEq2ReportsBothReadings) {
  fs::path dir = scratchDir("eq2");
  Outcome r = run(triangleConfig(), "verify-eq2", into(dir));
  EXPECT_EQ(r.status, 0);
  Json j = Json::parse(slurp(dir / "verify-eq2.json"));
  EXPECT_EQ(j["faces"][0]["relativeVolume"], "96");
  EXPECT_TRUE(j["faces"][0]["matchedCountOfLowerFace"].get<bool>());
  EXPECT_TRUE(j["faces"][0].contains("sumWithCountOfFace"));
}

TEST(Commands, TilingAtEight) {
  Outcome r = run(triangleConfig(), "tiling", into(scratchDir("tiling")));
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("covered 400/400, matched"), std::string::npos) << r.out;
}

TEST(Commands, StrictModeExitCodes) {
  RunOptions o = into(scratchDir("strict"));
  o.strict = true;
  EXPECT_EQ(run(triangleConfig(), "verify-eq1", o).status, 0);
  o.t = 1;
  Outcome below = run(triangleConfig(), "verify-eq1", o);
  EXPECT_EQ(below.status, 1);
  EXPECT_NE(below.out.find("below t0"), std::string::npos);
  o.strict = false;
  EXPECT_EQ(run(triangleConfig(), "verify-eq1", o).status, 0);
  o.t = 0;
  EXPECT_EQ(run(triangleConfig(), "tiling", o).status, 2);
  EXPECT_EQ(run(triangleConfig(), "frobnicate", o).status, 2);
}

TEST(Commands, OutputsAreByteIdenticalAcrossRuns) {
  fs::path a = scratchDir("det_a"), b = scratchDir("det_b");
  JobConfig cfg = triangleConfig();
  for (const auto& cmd : knownCommands()) {
    Outcome ra = run(cfg, cmd, into(a));
    Outcome rb = run(cfg, cmd, into(b));
    EXPECT_EQ(ra.status, 0) << cmd;
    EXPECT_EQ(ra.out.size(), rb.out.size()) << cmd;
  }
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    ++files;
    EXPECT_EQ(slurp(e.path()), slurp(b / e.path().filename())) << e.path().filename();
  }
  EXPECT_GE(files, 6u + 14u + 1u);
}

TEST(Svg, EmptyDocumentIsValid) {
  SvgDocument doc;
  std::string s = doc.str();
  EXPECT_TRUE(doc.empty());
  EXPECT_TRUE(wellFormedSvg(s));
  EXPECT_NE(s.find("viewBox=\"0 0 1 1\""), std::string::npos) << s;
}

TEST(Svg, ExactCoordinatesAreRoundedOnlyWhenWritten) {
  SvgDocument doc;
  doc.addPoint({makeRational(1, 3), makeRational(-2, 7)});
  doc.addTitle("a < b & c");
  std::string s = doc.str();
  EXPECT_NE(s.find("cx=\"0.333333333333\""), std::string::npos) << s;
  EXPECT_NE(s.find("cy=\"0.285714285714\""), std::string::npos) << s;
  EXPECT_NE(s.find("a &lt; b &amp; c"), std::string::npos);
  EXPECT_TRUE(wellFormedSvg(s));
}

TEST(Svg, RenderedScenesAreWellFormed) {
  fs::path dir = scratchDir("render");
  Outcome r = run(triangleConfig(), "render", into(dir));
  EXPECT_EQ(r.status, 0);
  for (const auto& name : {"region-e1.svg", "measures-v2.svg", "region-P.svg", "tiling.svg"}) {
    std::string s = slurp(dir / name);
    EXPECT_TRUE(wellFormedSvg(s)) << name;
    EXPECT_NE(s.find("<circle"), std::string::npos) << name;  // lattice points
  }
  std::string region = slurp(dir / "region-e1.svg");
  EXPECT_NE(region.find(faceColor("e1")), std::string::npos);
}
