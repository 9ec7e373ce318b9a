// solab: CLI front end. `solab run <config-or-preset>... [--jobs N]
// [--out DIR]`, `solab presets`, `solab export-soliton <name> <path>`.
// Exit codes: 0 all checks pass, 1 check failure or runtime error,
// 2 usage / parse / validation error.
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "scenario.hpp"
#include "solab/errors.hpp"
#include "solab/soliton_forge.hpp"

namespace {

int run_command(const std::vector<std::string>& configs, int jobs,
                const std::string& out_root) {
  std::vector<solab::Scenario> scenarios;
  for (const auto& arg : configs) {
    try {
      if (const solab::PresetInfo* preset = solab::find_preset(arg)) {
        solab::Scenario sc = solab::parse_config(preset->config);
        sc.name = preset->name;
        scenarios.push_back(std::move(sc));
        continue;
      }
      std::ifstream is(arg, std::ios::binary);
      if (!is) {
        std::cerr << "solab: '" << arg
                  << "' is neither a preset nor a readable config file\n";
        return 2;
      }
      std::ostringstream text;
      text << is.rdbuf();
      solab::Scenario sc = solab::parse_config(text.str());
      sc.name = std::filesystem::path(arg).stem().string();
      scenarios.push_back(std::move(sc));
    } catch (const solab::ParseError& e) {
      std::cerr << "solab: " << arg << ": parse error at line " << e.line()
                << ": " << e.what() << "\n";
      return 2;
    } catch (const solab::ValidationError& e) {
      std::cerr << "solab: " << arg << ": invalid config (key '" << e.key()
                << "'): " << e.what() << "\n";
      return 2;
    }
  }

  // Scenarios run concurrently up to --jobs; pipelines share no state.
  std::vector<solab::ScenarioOutcome> outcomes(scenarios.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= scenarios.size()) return;
      outcomes[i] = solab::run_scenario(scenarios[i], out_root);
    }
  };
  const size_t pool =
      std::min<size_t>(std::max(1, jobs), scenarios.size());
  std::vector<std::thread> threads;
  for (size_t i = 0; i + 1 < pool; ++i) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  bool all_pass = true;
  for (size_t i = 0; i < outcomes.size(); ++i) {
    if (i) std::cout << "\n";
    std::cout << outcomes[i].summary;
    all_pass = all_pass && outcomes[i].pass;
  }
  return all_pass ? 0 : 1;
}

int presets_command() {
  for (const auto& p : solab::list_presets())
    std::cout << p.name << ": " << p.description << "\n";
  return 0;
}

int export_command(const std::string& name, const std::string& path) {
  try {
    solab::SolitonPtr sol = solab::builtin_soliton(name, {});
    solab::export_soliton_file(*sol, path);
  } catch (const solab::UnknownName& e) {
    std::cerr << "solab: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "solab: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solab: radial soliton laboratory"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run scenario configs or presets");
  std::vector<std::string> configs;
  int jobs = 1;
  std::string out_root;
  run->add_option("config", configs, "Config file path or preset name")
      ->required();
  run->add_option("--jobs", jobs, "Concurrent scenario limit")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", out_root,
                  "Output root; scenarios write to <out>/<name>");

  auto* presets = app.add_subcommand("presets", "List built-in presets");

  auto* exp =
      app.add_subcommand("export-soliton", "Write a builtin soliton table");
  std::string exp_name, exp_path;
  exp->add_option("name", exp_name, "Builtin soliton name")->required();
  exp->add_option("path", exp_path, "Destination file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (run->parsed()) return run_command(configs, jobs, out_root);
  if (presets->parsed()) return presets_command();
  if (exp->parsed()) return export_command(exp_name, exp_path);
  return 2;
}
