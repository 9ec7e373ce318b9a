// solab: scenario configs (strict INI), the preset library, and the runner
// that turns one scenario into CSV + certification reports on disk.
#pragma once

#include <string>
#include <vector>

#include "solab/flow_engine.hpp"

namespace solab {

struct Scenario {
  std::string name = "scenario";

  // [soliton] — builtin name xor import path.
  std::string soliton_name;
  std::string import_path;
  int n = 3;
  double eps = 0.5;
  bool has_eps = false;
  double w_slope = 1.0;

  // [flow]
  FlowKind flow_kind = FlowKind::normalized;
  double rho0 = 0.0;
  double s_max = 0.0;      // normalized horizon
  double t0 = 0.0;
  double t1 = 0.0;         // background horizon
  StepControl ctrl;

  // [checks]
  std::vector<std::string> checks;

  // [output]
  std::string output_dir = "out";
};

// Strict INI: sections [soliton] [flow] [checks] [output], `key = value`,
// full-line `#` comments. Duplicate key -> ParseError at its line; unknown
// section/key or invalid value -> ValidationError naming the key. Nothing is
// computed here.
Scenario parse_config(const std::string& text);

struct PresetInfo {
  std::string name;
  std::string description;
  std::string config;
};

const std::vector<PresetInfo>& list_presets();
// nullptr when no preset has that name.
const PresetInfo* find_preset(const std::string& name);

struct ScenarioOutcome {
  bool pass = false;
  std::string summary;  // contents of summary.txt
};

// Runs the full pipeline: build soliton, run the flow, write trajectory.csv,
// one <check>.txt per requested check, and summary.txt. out_root, when
// nonempty, replaces the configured output dir with out_root/<name>. Module
// errors are captured into the summary with overall FAIL.
ScenarioOutcome run_scenario(const Scenario& sc,
                             const std::string& out_root = "");

}  // namespace solab
