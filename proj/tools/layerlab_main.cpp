#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "layerlab/errors.hpp"
#include "layerlab/experiments.hpp"

namespace exps = layerlab::experiments;

int main(int argc, char** argv) {
  CLI::App app{"boundary layer potential experiment runner"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  auto* run = app.add_subcommand("run", "run one experiment from a JSON config");
  run->add_option("--config", config_path, "config file path")->required();
  run->add_option("--out", out_dir, "output directory");

  auto* list = app.add_subcommand("list", "enumerate experiment names");
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& name : exps::experiment_names()) std::cout << name << "\n";
      return 0;
    }
    if (*selftest) {
      const auto results = exps::selftest();
      bool all = true;
      for (const auto& r : results) {
        std::printf("[%s] %2d %-20s measured=%.6g threshold=%.3g  %s\n",
                    r.pass ? "PASS" : "FAIL", r.index, r.name.c_str(),
                    r.measured, r.threshold, r.detail.c_str());
        all = all && r.pass;
      }
      std::printf("%s\n", all ? "PASS" : "FAIL");
      return all ? 0 : 1;
    }
    // run
    std::ifstream f(config_path);
    if (!f) {
      std::cerr << "cannot open config: " << config_path << "\n";
      return 2;
    }
    std::stringstream ss;
    ss << f.rdbuf();
    const auto cfg = exps::parse_config(ss.str());
    const auto result = exps::run(cfg);
    const std::string dir = !out_dir.empty() ? out_dir
                            : !cfg.output.empty() ? cfg.output
                                                  : std::string(".");
    exps::write_report(cfg, result, dir);
    std::cout << result.summary;
    return result.pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
