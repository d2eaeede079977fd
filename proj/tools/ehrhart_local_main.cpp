#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ehrhart_local/job.hpp"

using namespace ehrhart_local;

int main(int argc, char** argv) {
  CLI::App app{"Local Ehrhart formulas from lattice tilings"};
  app.require_subcommand(1);

  std::string configPath;
  std::int64_t t = -1;
  bool strict = false;
  std::string outDir;

  std::vector<std::string> names = knownCommands();
  names.push_back("all");
  for (const auto& name : names) {
    auto* sub = app.add_subcommand(name, name == "all" ? "run every command listed in the config" : "run " + name);
    sub->add_option("--config", configPath, "JSON job file")->required()->check(CLI::ExistingFile);
    sub->add_option("--t", t, "dilation factor")->check(CLI::NonNegativeNumber);
    sub->add_flag("--strict", strict, "exit 1 unless every verification matched");
    sub->add_option("--out", outDir, "output directory for reports and SVG files");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  int seed = 0;
  JobConfig cfg;
  try {
    seed = EpsDirection::seedFromEnvironment();
    cfg = JobConfig::load(configPath);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  RunOptions opt;
  if (t >= 0) opt.t = t;
  opt.strict = strict;
  if (!outDir.empty()) opt.outDir = outDir;
  opt.seed = seed;

  if (command != "all") return runCommand(cfg, command, opt, std::cout, std::cerr);
  int status = 0;
  for (const auto& c : cfg.commands) {
    int s = runCommand(cfg, c, opt, std::cout, std::cerr);
    if (s > status) status = s;
  }
  return status;
}
