#include <algorithm>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "mimohi/config.hpp"
#include "mimohi/harness.hpp"
#include "mimohi/results.hpp"

namespace {

std::string flag_name(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return "--" + key;
}

int simulate(const std::string& config_path, const std::map<std::string, std::string>& flags) {
  mimohi::ExperimentConfig cfg;
  if (!config_path.empty()) mimohi::apply_config_file(cfg, config_path);
  mimohi::apply_env(cfg);
  for (const auto& key : mimohi::config_keys()) {
    if (const auto it = flags.find(key); it != flags.end() && !it->second.empty()) {
      mimohi::set_key(cfg, key, it->second);
    }
  }
  cfg.validate();
  const auto registry = mimohi::DetectorRegistry::builtin();
  for (const auto& name : cfg.detectors) registry.at(name);

  const mimohi::SerResult result = mimohi::run_experiment(cfg, registry);
  if (cfg.out.empty()) {
    std::cout << (cfg.format == "json" ? mimohi::results_json(result)
                                       : mimohi::results_csv(result));
  } else {
    mimohi::write_results(result, cfg.out, cfg.format);
    std::fprintf(stderr, "wrote %zu records to %s\n", result.records.size(), cfg.out.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MIMO detection under hardware impairments"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "Monte-Carlo SER sweep");
  std::string config_path;
  sim->add_option("--config", config_path, "flat key = value config file");
  std::map<std::string, std::string> flags;
  for (const auto& key : mimohi::config_keys()) {
    sim->add_option(flag_name(key), flags[key], "override '" + key + "'");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return simulate(config_path, flags);
  } catch (const mimohi::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
