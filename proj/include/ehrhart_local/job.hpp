#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ehrhart_local/svg.hpp"
#include "ehrhart_local/verify.hpp"
#include "json.hpp"

namespace ehrhart_local {

using Json = nlohmann::ordered_json;

/// Invalid configuration or arguments.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& knownCommands() {
  static const std::vector<std::string> c{"mu", "ehrhart", "verify-eq1", "verify-eq2", "tiling", "render"};
  return c;
}

struct JobConfig {
  std::vector<IVec2> polygon;
  DomainPolicy policy;
  std::vector<std::string> commands;
  std::optional<std::int64_t> t;
  std::optional<Box> window;
  std::string outputDir = ".";

  static Rational parseNumber(const Json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) return parseRational(j.get<std::string>());
    throw ConfigError("expected an integer or a \"p/q\" string");
  }

  static IVec2 parsePoint(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
      throw ConfigError("points must be [x, y] integer pairs");
    return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
  }

  static DomainPolicy parseDomain(const Json& j) {
    if (j.is_string()) {
      if (j == "cube") return DomainPolicy::cube();
      if (j == "dv") return DomainPolicy::dv(GramMatrix::identity());
      throw ConfigError("domain must be \"cube\", \"dv\" or {\"dv\": {...}}");
    }
    if (!j.is_object() || !j.contains("dv")) throw ConfigError("domain must be \"cube\", \"dv\" or {\"dv\": {...}}");
    const Json& dv = j["dv"];
    if (dv.contains("group")) {
      std::vector<IMat2> gens;
      for (const auto& m : dv["group"]) {
        if (!m.is_array() || m.size() != 2 || m[0].size() != 2 || m[1].size() != 2)
          throw ConfigError("group elements must be 2x2 integer matrices");
        gens.push_back({m[0][0].get<std::int64_t>(), m[0][1].get<std::int64_t>(), m[1][0].get<std::int64_t>(),
                        m[1][1].get<std::int64_t>()});
      }
      try {
        return DomainPolicy::dv(SymmetryGroup::generatedBy(gens));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
    if (dv.contains("gram")) {
      const Json& g = dv["gram"];
      if (!g.is_array() || g.size() != 2 || g[0].size() != 2 || g[1].size() != 2)
        throw ConfigError("gram must be a 2x2 matrix");
      Rational b = parseNumber(g[0][1]);
      if (parseNumber(g[1][0]) != b) throw ConfigError("gram matrix must be symmetric");
      try {
        return DomainPolicy::dv(GramMatrix(parseNumber(g[0][0]), b, parseNumber(g[1][1])));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
    return DomainPolicy::dv(GramMatrix::identity());
  }

  static JobConfig fromJson(const Json& j) {
    JobConfig c;
    if (!j.is_object() || !j.contains("polygon")) throw ConfigError("config needs a \"polygon\" vertex list");
    for (const auto& p : j["polygon"]) c.polygon.push_back(parsePoint(p));
    if (j.contains("domain")) c.policy = parseDomain(j["domain"]);
    if (j.contains("commands"))
      for (const auto& s : j["commands"]) {
        std::string cmd = s.get<std::string>();
        if (std::find(knownCommands().begin(), knownCommands().end(), cmd) == knownCommands().end())
          throw ConfigError("unknown command " + cmd);
        c.commands.push_back(cmd);
      }
    if (j.contains("t")) {
      if (!j["t"].is_number_integer() || j["t"].get<std::int64_t>() < 0) throw ConfigError("t must be a nonnegative integer");
      c.t = j["t"].get<std::int64_t>();
    }
    if (j.contains("window")) {
      const Json& w = j["window"];
      if (!w.is_array() || w.size() != 2) throw ConfigError("window must be [[x0, y0], [x1, y1]]");
      Box b{parsePoint(w[0]), parsePoint(w[1])};
      if (b.lo.x >= b.hi.x || b.lo.y >= b.hi.y) throw ConfigError("window corners must be ordered");
      c.window = b;
    }
    if (j.contains("outputDir")) c.outputDir = j["outputDir"].get<std::string>();
    try {
      LatticePolygon check(c.polygon);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("invalid polygon: ") + e.what());
    }
    return c;
  }

  static JobConfig load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    try {
      return fromJson(j);
    } catch (const Json::exception& e) {
      throw ConfigError(std::string("config has the wrong shape: ") + e.what());
    }
  }
};

struct RunOptions {
  std::optional<std::int64_t> t;
  bool strict = false;
  std::optional<std::string> outDir;
  int seed = 0;
};

namespace detail {

inline Json toJson(const XSet& x) {
  Json j;
  j["step"] = {x.step.x, x.step.y};
  j["explicit"] = x.explicitMembers;
  j["tailStart"] = x.tailStart;
  return j;
}

inline Json coeffsJson(const EhrhartPolynomial& p) {
  Json a = Json::array();
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) a.push_back(toString(*it));
  return a;
}

inline Json provenanceJson(const MuTable& tab) {
  Json j;
  j["domain"] = tab.ctx->policy().name();
  j["gram"] = tab.ctx->gram().toString();
  j["epsDirection"] = {toString(tab.ctx->u().x), toString(tab.ctx->u().y)};
  j["epsSequenceIndex"] = tab.ctx->eps().sequenceIndex;
  j["epsFallbacks"] = tab.ctx->eps().fallbacks;
  return j;
}

inline void writeFile(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path().empty() ? "." : p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

}  // namespace detail

/// Runs one command; returns the process exit status (0 ok, 1 verdict
/// mismatch under strict mode, 2 invalid input, 3 construction failure).
inline int runCommand(const JobConfig& cfg, const std::string& command, const RunOptions& opt, std::ostream& out,
                      std::ostream& err) {
  try {
    if (std::find(knownCommands().begin(), knownCommands().end(), command) == knownCommands().end())
      throw ConfigError("unknown command " + command);
    const std::filesystem::path dir = opt.outDir ? *opt.outDir : cfg.outputDir;
    std::optional<std::int64_t> t = opt.t ? opt.t : cfg.t;
    auto needT = [&]() {
      if (!t || *t < 1) throw ConfigError(command + " needs --t N with N >= 1");
      return *t;
    };
    LatticePolygon poly(cfg.polygon);
    MuTable tab = buildMuTable(poly, cfg.policy, opt.seed);
    Json report;
    report["command"] = command;
    report["polygon"] = Json::array();
    for (IVec2 v : poly.vertices()) report["polygon"].push_back({v.x, v.y});
    report["provenance"] = detail::provenanceJson(tab);
    bool ok = true;

    if (command == "mu") {
      Json faces = Json::array();
      for (const auto& f : tab.faces) {
        Json j;
        j["face"] = f.id;
        j["dim"] = f.dim;
        j["fcone"] = f.fcone.key();
        j["normalCone"] = normalConeFromFcone(f.fcone).key();
        j["mu"] = toString(f.mu);
        j["v"] = toString(f.v);
        Json w = Json::object();
        for (const auto& [g, val] : f.w) w[g] = toString(val);
        j["w"] = w;
        if (!f.xsets.empty()) {
          Json xs = Json::object();
          for (const auto& [g, x] : f.xsets) xs[g] = detail::toJson(x);
          j["xsets"] = xs;
          j["window"] = f.window;
          j["epsDecisions"] = f.epsDecisions;
        }
        bool consistent = tab.recomputedMu(f.id) == f.mu;
        ok = ok && consistent;
        faces.push_back(j);
        out << f.id << "\tmu=" << toString(f.mu) << "\tv=" << toString(f.v) << "\n";
      }
      report["faces"] = faces;
      report["recursionConsistent"] = ok;
    } else if (command == "ehrhart") {
      EhrhartPolynomial local = localFormulaCoefficients(tab);
      EhrhartPolynomial oracle = ehrhartByBruteForce(poly);
      ok = local == oracle;
      report["local"] = detail::coeffsJson(local);
      report["oracle"] = detail::coeffsJson(oracle);
      report["equal"] = ok;
      if (ok) out << "local = oracle = " << local.toString() << "\n";
      else out << "local = " << local.toString() << ", oracle = " << oracle.toString() << ", mismatch\n";
    } else if (command == "verify-eq1") {
      TilingReport r = verifyEq1(tab, needT());
      Json faces = Json::array();
      for (const auto& f : r.perFace)
        faces.push_back({{"face", f.face}, {"count", f.count}, {"v", toString(f.v)}, {"contribution", toString(f.contribution)}});
      report["t"] = r.t;
      report["perFace"] = faces;
      report["total"] = toString(r.total);
      report["latticeCount"] = r.latticeCount;
      report["matched"] = r.matched;
      report["belowT0"] = r.belowT0;
      ok = r.matched;
      out << toString(r.total) << (ok ? " = " : " != ") << r.latticeCount << (ok ? ", matched" : ", below t0") << "\n";
    } else if (command == "verify-eq2") {
      std::int64_t tt = needT();
      Json all = Json::array();
      for (const auto& f : tab.faces) {
        Eq2Report r = verifyEq2(tab, f.id, tt);
        Json terms = Json::array();
        for (const auto& term : r.terms)
          terms.push_back({{"face", term.face}, {"w", toString(term.w)}, {"count", term.countG}});
        all.push_back({{"face", r.face},
                       {"relativeVolume", toString(r.relativeVolume)},
                       {"countOfFace", r.countF},
                       {"terms", terms},
                       {"sumWithCountOfLowerFace", toString(r.sumWithCountG)},
                       {"sumWithCountOfFace", toString(r.sumWithCountF)},
                       {"matchedCountOfLowerFace", r.matchedCountG},
                       {"matchedCountOfFace", r.matchedCountF}});
        ok = ok && r.matchedCountG;
        out << r.face << ": " << toString(r.relativeVolume) << " vs " << toString(r.sumWithCountG)
            << " (lower-face counts), " << toString(r.sumWithCountF) << " (face count)\n";
      }
      report["t"] = tt;
      report["faces"] = all;
    } else if (command == "tiling") {
      std::int64_t tt = needT();
      Box win = cfg.window ? *cfg.window : boundingBox(poly, tt).inflated(2);
      TilingCheck c = verifyTiling(tab, tt, win);
      report["t"] = tt;
      report["window"] = {{win.lo.x, win.lo.y}, {win.hi.x, win.hi.y}};
      report["tilesChecked"] = c.tilesChecked;
      report["coveredArea"] = toString(c.coveredArea);
      report["windowArea"] = toString(c.windowArea);
      report["badTiles"] = c.badTiles;
      report["failures"] = c.failures;
      report["matched"] = c.matched;
      report["belowT0"] = c.belowT0;
      ok = c.matched;
      out << "tiling t=" << tt << ": " << c.tilesChecked << " tiles, covered " << toString(c.coveredArea) << "/"
          << toString(c.windowArea) << (ok ? ", matched" : ", below t0") << "\n";
    } else if (command == "render") {
      Json files = Json::array();
      for (const auto& f : tab.faces) {
        std::string a = "region-" + f.id + ".svg", b = "measures-" + f.id + ".svg";
        detail::writeFile(dir / a, renderRegion(tab, f.id).str());
        detail::writeFile(dir / b, renderMeasures(tab, f.id).str());
        files.push_back(a);
        files.push_back(b);
      }
      if (t && *t >= 1) {
        Box win = cfg.window ? *cfg.window : boundingBox(poly, *t).inflated(2);
        detail::writeFile(dir / "tiling.svg", renderTiling(tab, *t, win).str());
        files.push_back("tiling.svg");
      }
      report["files"] = files;
      for (const auto& f : files) out << (dir / f.get<std::string>()).string() << "\n";
    }

    detail::writeFile(dir / (command + ".json"), report.dump(2) + "\n");
    return (opt.strict && !ok) ? 1 : 0;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConstructionError& e) {
    err << "construction failed: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace ehrhart_local
