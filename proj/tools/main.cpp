#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "newsgauge/error.hpp"
#include "newsgauge/pipeline.hpp"
#include "newsgauge/service.hpp"

namespace {

using newsgauge::pipeline::PipelineConfig;

PipelineConfig load(const std::string& path, const std::optional<std::uint64_t>& seed) {
  auto config = newsgauge::pipeline::load_config(path);
  if (seed) config.seed = *seed;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"newsgauge: quality indicators for science news"};
  app.require_subcommand(1);

  std::string config_path;
  std::string stage_name = "all";
  std::optional<std::uint64_t> seed;
  std::optional<int> port;
  std::string host = "127.0.0.1";

  auto* run = app.add_subcommand("run", "Run pipeline stages");
  run->add_option("--config", config_path, "TOML config file")->required()->check(CLI::ExistingFile);
  run->add_option("--stage", stage_name, "ingest, graph, indicators, train, score, report or all")
      ->check(CLI::IsMember({"ingest", "graph", "indicators", "train", "score", "report", "all"}));
  run->add_option("--seed", seed, "Override the config seed");

  auto* serve = app.add_subcommand("serve", "Serve the review API");
  serve->add_option("--config", config_path, "TOML config file")->required()->check(CLI::ExistingFile);
  serve->add_option("--port", port, "Port (default from config)");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--seed", seed, "Override the config seed");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto config = load(config_path, seed);
    if (*run) {
      const auto stage = *newsgauge::pipeline::parse_stage(stage_name);
      newsgauge::pipeline::run(stage, config);
      std::cerr << "stage " << stage_name << " done; artifacts in " << config.output_dir.string() << "\n";
      return 0;
    }
    newsgauge::service::ReviewService service(newsgauge::service::load_data(config));
    const int p = port.value_or(config.port);
    std::cerr << "serving on http://" << host << ":" << p << "\n";
    service.serve(host, p, config.ui_dir);
  } catch (const std::exception& e) {
    std::cerr << "newsgauge: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
