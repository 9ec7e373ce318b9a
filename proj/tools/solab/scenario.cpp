// solab: strict INI parsing and the scenario pipeline.
#include "scenario.hpp"

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "solab/convergence_analyzer.hpp"
#include "solab/errors.hpp"
#include "solab/monotonicity_lab.hpp"
#include "solab/numerics.hpp"
#include "solab/soliton_forge.hpp"

namespace solab {

namespace {

const std::set<std::string> kSections = {"soliton", "flow", "checks", "output"};
const std::set<std::string> kChecks = {
    "residuals",  "monotonicity", "half_weight",     "second_derivative",
    "type_one",   "limit",        "reduced_distance"};
const std::set<std::string> kBuiltins = {"gaussian", "cap_projected", "flat"};

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_number(const std::string& v, int line) {
  size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, "invalid number '" + v + "'");
  }
  while (pos < v.size() && std::isspace(static_cast<unsigned char>(v[pos])))
    ++pos;
  if (pos != v.size()) throw ParseError(line, "invalid number '" + v + "'");
  return d;
}

int parse_int(const std::string& v, int line) {
  const double d = parse_number(v, line);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d)
    throw ParseError(line, "expected an integer, got '" + v + "'");
  return i;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(v);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

Scenario parse_config(const std::string& text) {
  Scenario sc;
  bool saw_soliton_section = false, saw_flow_section = false;
  bool has_kind = false, has_rho0 = false, has_s_max = false, has_t1 = false;
  std::string flow_kind_text;
  std::set<std::string> seen;  // "section.key"
  std::string section;

  std::stringstream ss(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(ss, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError(line_no, "malformed section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      if (!kSections.count(section))
        throw ValidationError(section, "unknown section [" + section + "]");
      if (section == "soliton") saw_soliton_section = true;
      if (section == "flow") saw_flow_section = true;
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(line_no, "expected 'key = value', got '" + line + "'");
    if (section.empty())
      throw ParseError(line_no, "key before any section header");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (!seen.insert(section + "." + key).second)
      throw ParseError(line_no, "duplicate key '" + key + "'");

    if (section == "soliton") {
      if (key == "name") {
        sc.soliton_name = value;
      } else if (key == "import") {
        sc.import_path = value;
      } else if (key == "n") {
        sc.n = parse_int(value, line_no);
      } else if (key == "eps") {
        sc.eps = parse_number(value, line_no);
        sc.has_eps = true;
      } else if (key == "w_slope") {
        sc.w_slope = parse_number(value, line_no);
      } else {
        throw ValidationError(key, "unknown key '" + key + "' in [soliton]");
      }
    } else if (section == "flow") {
      if (key == "kind") {
        flow_kind_text = value;
        has_kind = true;
      } else if (key == "rho0") {
        sc.rho0 = parse_number(value, line_no);
        has_rho0 = true;
      } else if (key == "s_max") {
        sc.s_max = parse_number(value, line_no);
        has_s_max = true;
      } else if (key == "t0") {
        sc.t0 = parse_number(value, line_no);
      } else if (key == "t1") {
        sc.t1 = parse_number(value, line_no);
        has_t1 = true;
      } else if (key == "ds_out") {
        sc.ctrl.out_ds = parse_number(value, line_no);
      } else if (key == "max_step") {
        sc.ctrl.max_step = parse_number(value, line_no);
      } else if (key == "abs_tol") {
        sc.ctrl.abs_tol = parse_number(value, line_no);
      } else if (key == "rel_tol") {
        sc.ctrl.rel_tol = parse_number(value, line_no);
      } else if (key == "rho_floor") {
        sc.ctrl.rho_floor = parse_number(value, line_no);
      } else if (key == "rho_ceiling") {
        sc.ctrl.rho_ceiling = parse_number(value, line_no);
      } else {
        throw ValidationError(key, "unknown key '" + key + "' in [flow]");
      }
    } else if (section == "checks") {
      if (key == "checks") {
        sc.checks = split_list(value);
      } else {
        throw ValidationError(key, "unknown key '" + key + "' in [checks]");
      }
    } else {  // output
      if (key == "dir") {
        sc.output_dir = value;
      } else {
        throw ValidationError(key, "unknown key '" + key + "' in [output]");
      }
    }
  }

  // Semantic validation, still before any computation.
  if (!saw_soliton_section)
    throw ValidationError("soliton", "missing [soliton] section");
  if (!saw_flow_section) throw ValidationError("flow", "missing [flow] section");
  if (sc.soliton_name.empty() && sc.import_path.empty())
    throw ValidationError("name", "[soliton] needs 'name' or 'import'");
  if (!sc.soliton_name.empty() && !sc.import_path.empty())
    throw ValidationError("name", "'name' and 'import' are exclusive");
  if (!sc.soliton_name.empty() && !kBuiltins.count(sc.soliton_name))
    throw ValidationError("name", "unknown builtin '" + sc.soliton_name + "'");
  if (sc.n < 3) throw ValidationError("n", "n must be >= 3");
  if (sc.has_eps && !(sc.eps > 0.0 && sc.eps < 1.0))
    throw ValidationError("eps", "eps must lie in (0, 1)");
  if (!has_kind) throw ValidationError("kind", "[flow] needs 'kind'");
  if (flow_kind_text == "normalized") {
    sc.flow_kind = FlowKind::normalized;
  } else if (flow_kind_text == "background") {
    sc.flow_kind = FlowKind::background;
  } else {
    throw ValidationError("kind", "kind must be normalized or background");
  }
  if (!has_rho0) throw ValidationError("rho0", "[flow] needs 'rho0'");
  if (!(sc.rho0 > 0.0)) throw ValidationError("rho0", "rho0 must be > 0");
  if (sc.flow_kind == FlowKind::normalized && !has_s_max)
    throw ValidationError("s_max", "normalized flow needs 's_max'");
  if (sc.flow_kind == FlowKind::background && !has_t1)
    throw ValidationError("t1", "background flow needs 't1'");
  if (sc.flow_kind == FlowKind::background && !(sc.t1 > sc.t0))
    throw ValidationError("t1", "t1 must exceed t0");
  if (!(sc.ctrl.out_ds > 0.0))
    throw ValidationError("ds_out", "ds_out must be > 0");
  if (!(sc.ctrl.max_step > 0.0))
    throw ValidationError("max_step", "max_step must be > 0");
  if (!(sc.ctrl.abs_tol > 0.0))
    throw ValidationError("abs_tol", "abs_tol must be > 0");
  if (!(sc.ctrl.rel_tol > 0.0))
    throw ValidationError("rel_tol", "rel_tol must be > 0");
  if (!(sc.ctrl.rho_floor > 0.0))
    throw ValidationError("rho_floor", "rho_floor must be > 0");
  if (!(sc.ctrl.rho_ceiling > sc.ctrl.rho_floor))
    throw ValidationError("rho_ceiling", "rho_ceiling must exceed rho_floor");
  for (const auto& c : sc.checks)
    if (!kChecks.count(c))
      throw ValidationError(c, "unknown check '" + c + "'");
  return sc;
}

namespace {

CertificationReport check_residuals(const SolitonData& sol) {
  CertificationReport rep;
  const auto& d = sol.diagnostics;
  const int samples = sol.val_points;
  rep.add({"max |diagonal soliton residual| on validation grid", d.max_diag,
           1e-8, d.max_diag <= 1e-8, samples});
  rep.add({"max |off-diagonal soliton residual| on validation grid",
           d.max_offdiag, 1e-8, d.max_offdiag <= 1e-8, samples});
  rep.add({"max |w equation residual| on validation grid", d.max_w_eq, 1e-8,
           d.max_w_eq <= 1e-8, samples});
  rep.add({"max |Hamilton identity residual| on validation grid",
           d.max_hamilton, 1e-8, d.max_hamilton <= 1e-8, samples});
  const double neg = std::max(0.0, -d.min_S);
  rep.add({"S >= 0 on validation grid", neg, 1e-9, neg <= 1e-9, samples});
  return rep;
}

CertificationReport check_half_weight(const FlowTrajectory& traj) {
  CertificationReport rep;
  const double sup = half_weight_bound(traj);
  rep.add({"sup of half-weight functional is finite", sup,
           std::numeric_limits<double>::infinity(), std::isfinite(sup),
           static_cast<int>(traj.samples.size())});
  return rep;
}

CertificationReport check_second_derivative(const FlowTrajectory& traj) {
  CertificationReport rep;
  const double sup = second_derivative_bound(traj);
  const double tail = second_derivative_tail(traj);
  const int samples = static_cast<int>(traj.samples.size());
  rep.add({"sup |d2/ds2 weighted area| is finite", sup,
           std::numeric_limits<double>::infinity(), std::isfinite(sup),
           samples});
  rep.add({"second-derivative estimate decays over the final decade", tail,
           1e-6, tail <= 1e-6, samples});
  return rep;
}

CertificationReport check_type_one(const FlowTrajectory& traj) {
  CertificationReport rep;
  const double ratio = type_one_ratio(traj);
  rep.add({"type-I ratio sup sqrt(T-t) |A| is finite", ratio,
           std::numeric_limits<double>::infinity(), std::isfinite(ratio),
           static_cast<int>(traj.samples.size())});
  return rep;
}

CertificationReport check_limit(const FlowTrajectory& traj,
                                LimitVerdict* out_verdict) {
  CertificationReport rep;
  const LimitVerdict v = limit_extraction(traj, 1e-8);
  if (out_verdict) *out_verdict = v;
  rep.add({"normalized flow converges to an f-minimal radius",
           std::fabs(v.defect_at_limit), 1e-7, v.converged,
           static_cast<int>(traj.samples.size())});
  rep.add({"radius variation over the final decade", v.tail_variation, 1e-8,
           v.tail_variation <= 1e-8,
           static_cast<int>(traj.samples.size())});
  return rep;
}

CertificationReport check_reduced_distance(const SolitonPtr& sol) {
  CertificationReport rep;
  // Flat-background exactness: for S == 0 fixtures ell must equal
  // d^2/(4 tau). Other solitons get informational values only.
  const bool flat_like =
      sol->name == "flat" || sol->name == "gaussian";
  std::mt19937 rng(12345u);
  std::uniform_real_distribution<double> uq1(0.2, 3.0), uq2(0.1, 2.5),
      ut1(0.0, 0.3), utau(0.2, 0.6);
  const int pairs = 10;
  for (int k = 0; k < pairs; ++k) {
    const double q1 = uq1(rng), q2 = uq2(rng);
    const double t1 = ut1(rng), tau = utau(rng);
    const auto query = reduced_distance(sol, q1, t1, q2, t1 + tau, 33);
    if (flat_like) {
      const double expected = (q1 - q2) * (q1 - q2) / (4.0 * tau);
      const double err = std::fabs(query.ell - expected);
      rep.add({"ell matches d^2/(4 tau), pair " + std::to_string(k), err,
               1e-4, err <= 1e-4, query.m_nodes});
    } else {
      rep.add({"ell value, pair " + std::to_string(k), query.ell,
               std::numeric_limits<double>::infinity(), !query.stalled,
               query.m_nodes});
    }
  }
  return rep;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw Error("cannot open '" + p.string() + "' for writing");
  os << text;
}

}  // namespace

ScenarioOutcome run_scenario(const Scenario& sc, const std::string& out_root) {
  ScenarioOutcome outcome;
  std::ostringstream sum;
  sum << "scenario: " << sc.name << "\n";

  std::filesystem::path dir = out_root.empty()
                                  ? std::filesystem::path(sc.output_dir)
                                  : std::filesystem::path(out_root) / sc.name;
  try {
    std::filesystem::create_directories(dir);

    SolitonPtr sol;
    if (!sc.import_path.empty()) {
      sol = import_soliton_file(sc.import_path);
    } else {
      BuiltinParams params;
      params.n = sc.n;
      params.eps = sc.eps;
      params.w_slope = sc.w_slope;
      sol = builtin_soliton(sc.soliton_name, params);
    }
    sum << "soliton: " << sol->name << " n=" << sol->metric.n << "\n";

    FlowTrajectory traj;
    if (sc.flow_kind == FlowKind::normalized) {
      sum << "flow: normalized rho0=" << format_g17(sc.rho0)
          << " s_max=" << format_g17(sc.s_max) << "\n";
      traj = run_normalized_flow(sol, sc.rho0, sc.s_max, sc.ctrl);
    } else {
      sum << "flow: background rho0=" << format_g17(sc.rho0)
          << " t0=" << format_g17(sc.t0) << " t1=" << format_g17(sc.t1)
          << "\n";
      traj = run_background_flow(sol, sc.rho0, sc.t0, sc.t1, sc.ctrl);
    }
    const char* term = "reached_horizon";
    switch (traj.termination) {
      case Termination::reached_horizon: term = "reached_horizon"; break;
      case Termination::extinction: term = "extinction"; break;
      case Termination::step_floor: term = "step_floor"; break;
      case Termination::domain_exit: term = "domain_exit"; break;
    }
    sum << "termination: " << term << "\n";
    sum << "samples: " << traj.samples.size() << "\n";

    {
      std::ofstream csv(dir / "trajectory.csv", std::ios::binary);
      if (!csv) throw Error("cannot write trajectory.csv");
      write_trajectory_csv(traj, csv);
    }

    bool all_pass = true;
    LimitVerdict limit_verdict;
    bool have_limit = false;
    for (const auto& check : sc.checks) {
      CertificationReport rep;
      if (check == "residuals") {
        rep = check_residuals(*sol);
      } else if (check == "monotonicity") {
        rep = verify_monotonicity(traj);
      } else if (check == "half_weight") {
        rep = check_half_weight(traj);
      } else if (check == "second_derivative") {
        rep = check_second_derivative(traj);
      } else if (check == "type_one") {
        rep = check_type_one(traj);
      } else if (check == "limit") {
        rep = check_limit(traj, &limit_verdict);
        have_limit = true;
      } else if (check == "reduced_distance") {
        rep = check_reduced_distance(sol);
      }
      write_text(dir / (check + ".txt"), rep.str());
      const bool ok = rep.pass();
      all_pass = all_pass && ok;
      sum << "check " << check << ": " << (ok ? "PASS" : "FAIL") << "\n";
    }

    // Echo headline quantities.
    if (have_limit && limit_verdict.limit_radius)
      sum << "limit_radius = " << format_g17(*limit_verdict.limit_radius)
          << "\n";
    if (sol->name == "cap_projected")
      sum << "lambda_at_1 = " << format_g17(sol->lambda.value_at(1.0)) << "\n";
    if (!traj.samples.empty()) {
      const auto fin =
          functional_sample(*sol, traj.samples.back(), traj.kind);
      sum << "huisken_A_final = " << format_g17(fin.huisken_A) << "\n";
    }
    for (const auto& check : sc.checks)
      if (check == "type_one")
        sum << "type_one_ratio = " << format_g17(type_one_ratio(traj)) << "\n";
    if (sol->background == BackgroundKind::static_fixture &&
        sc.flow_kind == FlowKind::background && !traj.samples.empty()) {
      const auto& last = traj.samples.back();
      const double est =
          last.time + last.rho * last.rho / (2.0 * (sol->metric.n - 1));
      sum << "extinction_time_estimate = " << format_g17(est) << "\n";
    }

    outcome.pass = all_pass;
  } catch (const std::exception& e) {
    sum << "error: " << e.what() << "\n";
    outcome.pass = false;
  }

  sum << "overall: " << (outcome.pass ? "PASS" : "FAIL") << "\n";
  outcome.summary = sum.str();
  try {
    write_text(dir / "summary.txt", outcome.summary);
  } catch (const std::exception&) {
    outcome.pass = false;
  }
  return outcome;
}

}  // namespace solab
