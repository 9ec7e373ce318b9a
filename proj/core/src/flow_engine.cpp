// solab: flow_engine implementation. Background flows in shrinking solitons
// are integrated in the normalized picture (which removes the 1/(T-t)
// stiffness) and mapped back through the soliton diffeomorphisms.
#include "solab/flow_engine.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "solab/errors.hpp"

namespace solab {

double mean_curvature_sphere(const ConformalRadialMetric& metric, double rho) {
  if (!(rho > 0.0)) throw DomainError("mean_curvature_sphere: rho must be > 0");
  const double Fv = metric.F.value_at(rho);
  const double F1 = metric.F.d1_at(rho);
  return (metric.n - 1) * (Fv / rho - F1);
}

double normal_derivative_f(const ConformalRadialMetric& metric,
                           const RadialField& f, double rho) {
  if (!(rho > 0.0)) throw DomainError("normal_derivative_f: rho must be > 0");
  return -metric.F.value_at(rho) * f.d1_at(rho);
}

double soliton_defect(const SolitonData& soliton, double rho) {
  return mean_curvature_sphere(soliton.metric, rho) +
         normal_derivative_f(soliton.metric, soliton.f, rho);
}

// ---------------------------------------------------------------------------
// Diffeomorphism flow
// ---------------------------------------------------------------------------

namespace {

// Adaptive integration of dphi/dt = F^2 f'/(T-t) from the reference slice
// t_ref = T - 1. With `escape` supplied, a trajectory leaving the field
// domain reports the crossing direction (+1 above, -1 below) instead of
// throwing, so callers can bisect against the monotone-in-r0 flow map.
double generic_diffeo(const SolitonData& soliton, double r0, double t,
                      int* escape) {
  if (escape) *escape = 0;
  const double t_ref = soliton.T - 1.0;
  if (t == t_ref) return r0;
  const double dir = t > t_ref ? 1.0 : -1.0;
  const double span = std::abs(t - t_ref);
  const double lo_guard =
      std::max(1e-12, soliton.metric.F.lo() + 1e-12);
  const double hi_guard = std::min(soliton.metric.F.hi(), soliton.f.hi());

  auto rhs = [&](double x, double phi) {
    const double p = std::clamp(phi, lo_guard, hi_guard);
    const double Fv = soliton.metric.F.value_at(p);
    const double f1 = soliton.f.d1_at(p);
    return dir * Fv * Fv * f1 / (soliton.T - (t_ref + dir * x));
  };
  auto escaped = [&](double, double phi) {
    return phi <= lo_guard || phi >= hi_guard;
  };

  double x = 0.0, phi = r0;
  OdeControl ctrl;
  const OdeOutcome outcome = integrate_ode(rhs, x, phi, span, ctrl, escaped);
  if (outcome != OdeOutcome::reached_end) {
    if (escape) {
      *escape = phi >= hi_guard ? 1 : -1;
      return phi;
    }
    throw BlowUp("diffeo_flow: trajectory left the domain before t = " +
                 format_g17(t));
  }
  return phi;
}

}  // namespace

double diffeo_flow(const SolitonData& soliton, double r0, double t) {
  if (!(t < soliton.T)) throw DomainError("diffeo_flow: t must be < T");
  if (soliton.has_closed_diffeo()) return soliton.psi(r0, t);
  return generic_diffeo(soliton, r0, t, nullptr);
}

double diffeo_flow_inverse(const SolitonData& soliton, double rho, double t) {
  if (!(t < soliton.T))
    throw DomainError("diffeo_flow_inverse: t must be < T");
  if (soliton.has_closed_diffeo() && soliton.psi_inv)
    return soliton.psi_inv(rho, t);
  const double lo = std::max(1e-9, soliton.metric.F.lo() + 1e-9);
  const double hi =
      std::min(soliton.metric.F.hi(), soliton.f.hi()) * (1.0 - 1e-9);
  // phi_t(r) is strictly increasing in r, so "lands at or above rho" is a
  // monotone predicate even where the forward flow exits the sampled domain;
  // bisect on it rather than requiring finite endpoint values.
  auto above = [&](double r) {
    int esc = 0;
    const double v = generic_diffeo(soliton, r, t, &esc);
    return esc != 0 ? esc > 0 : v >= rho;
  };
  if (above(lo) || !above(hi))
    throw InverseFlowFailure("diffeo_flow_inverse: no preimage of rho = " +
                             format_g17(rho));
  double a = lo, b = hi;
  for (int it = 0; it < 200 && b - a > 1e-12 * std::max(1.0, a); ++it) {
    const double mid = 0.5 * (a + b);
    (above(mid) ? b : a) = mid;
  }
  return 0.5 * (a + b);
}

// ---------------------------------------------------------------------------
// Flow integration
// ---------------------------------------------------------------------------

namespace {

SphereState normalized_state(const SolitonData& sol, double s, double rho) {
  SphereState st;
  st.rho = rho;
  st.time = s;
  st.H = mean_curvature_sphere(sol.metric, rho);
  st.ef = normal_derivative_f(sol.metric, sol.f, rho);
  st.A_norm = std::abs(st.H) / std::sqrt(static_cast<double>(sol.metric.n - 1));
  return st;
}

// Integrate a scalar flow over a per-index uniform output grid, recording a
// sample at every grid node plus a final off-grid sample if a stop event or
// the step floor intervenes. `record` maps (param, rho) to a SphereState.
template <typename Rhs, typename Record>
void integrate_on_grid(FlowTrajectory& traj, Rhs rhs, Record record, double x0,
                       double x_end, double rho0, const StepControl& ctrl) {
  OdeControl octrl;
  octrl.abs_tol = ctrl.abs_tol;
  octrl.rel_tol = ctrl.rel_tol;
  octrl.max_step = ctrl.max_step;

  auto stopped = [&](double, double rho) {
    return rho <= ctrl.rho_floor || rho >= ctrl.rho_ceiling;
  };

  double x = x0, rho = rho0;
  traj.samples.push_back(record(x0, rho0));
  if (stopped(x0, rho0)) {
    traj.termination =
        rho0 <= ctrl.rho_floor ? Termination::extinction : Termination::domain_exit;
    traj.end_param = x0;
    return;
  }

  const long k_max =
      ctrl.out_ds > 0.0
          ? static_cast<long>(std::ceil((x_end - x0) / ctrl.out_ds - 1e-9))
          : 1;
  for (long k = 1; k <= k_max; ++k) {
    const double x_k =
        k == k_max ? x_end : x0 + static_cast<double>(k) * ctrl.out_ds;
    const OdeOutcome outcome = integrate_ode(rhs, x, rho, x_k, octrl, stopped);
    if (outcome == OdeOutcome::stopped) {
      traj.samples.push_back(record(x, rho));
      traj.termination = rho <= ctrl.rho_floor ? Termination::extinction
                                               : Termination::domain_exit;
      traj.end_param = x;
      return;
    }
    if (outcome == OdeOutcome::step_floor) {
      traj.samples.push_back(record(x, rho));
      traj.termination = Termination::step_floor;
      traj.end_param = x;
      return;
    }
    x = x_k;  // land exactly on the grid node (removes 1-ulp accumulation)
    traj.samples.push_back(record(x_k, rho));
  }
  traj.termination = Termination::reached_horizon;
  traj.end_param = x_end;
}

}  // namespace

FlowTrajectory run_normalized_flow(const SolitonPtr& soliton, double rho0,
                                   double s_max, const StepControl& ctrl) {
  if (!soliton) throw ParamError("run_normalized_flow: null soliton");
  if (!(rho0 > 0.0)) throw ParamError("run_normalized_flow: rho0 must be > 0");
  const SolitonData& sol = *soliton;
  const double s0 = -std::log(sol.T);
  if (!(s_max > s0))
    throw ParamError("run_normalized_flow: s_max must exceed -log T");

  const double lo_guard = std::max(1e-9, sol.metric.F.lo() + 1e-12);
  const double hi_guard =
      std::min(sol.metric.F.hi(), sol.f.hi()) * (1.0 - 1e-12);
  auto rhs = [&sol, lo_guard, hi_guard](double, double rho) {
    const double r = std::clamp(rho, lo_guard, hi_guard);
    const double Fv = sol.metric.F.value_at(r);
    const double f1 = sol.f.d1_at(r);
    const double H = mean_curvature_sphere(sol.metric, r);
    return Fv * Fv * f1 - Fv * H;
  };

  FlowTrajectory traj;
  traj.kind = FlowKind::normalized;
  traj.soliton = soliton;
  integrate_on_grid(
      traj, rhs,
      [&sol](double s, double rho) { return normalized_state(sol, s, rho); },
      s0, s_max, rho0, ctrl);
  return traj;
}

FlowTrajectory run_background_flow(const SolitonPtr& soliton, double rho0,
                                   double t0, double t1,
                                   const StepControl& ctrl) {
  if (!soliton) throw ParamError("run_background_flow: null soliton");
  if (!(rho0 > 0.0)) throw ParamError("run_background_flow: rho0 must be > 0");
  const SolitonData& sol = *soliton;
  if (!(t0 >= 0.0) || !(t1 > t0))
    throw ParamError("run_background_flow: need 0 <= t0 < t1");

  FlowTrajectory traj;
  traj.kind = FlowKind::background;
  traj.soliton = soliton;

  if (sol.background == BackgroundKind::static_fixture) {
    // Classical MCF in the fixed metric g: drho/dt = -F(rho) H(rho).
    const double lo_guard = std::max(1e-9, sol.metric.F.lo() + 1e-12);
    const double hi_guard = sol.metric.F.hi() * (1.0 - 1e-12);
    auto rhs = [&sol, lo_guard, hi_guard](double, double rho) {
      const double r = std::clamp(rho, lo_guard, hi_guard);
      return -sol.metric.F.value_at(r) * mean_curvature_sphere(sol.metric, r);
    };
    integrate_on_grid(
        traj, rhs,
        [&sol](double t, double rho) { return normalized_state(sol, t, rho); },
        t0, t1, rho0, ctrl);
    return traj;
  }

  if (!(t1 < sol.T))
    throw ParamError("run_background_flow: t1 must be < T for shrinking");

  // Shrinking soliton: run in s = -log(T-t) and map back. The output grid is
  // uniform in t; each node is converted per-index.
  const double lo_guard = std::max(1e-9, sol.metric.F.lo() + 1e-12);
  const double hi_guard =
      std::min(sol.metric.F.hi(), sol.f.hi()) * (1.0 - 1e-12);
  auto rhs = [&sol, lo_guard, hi_guard](double, double rho) {
    const double r = std::clamp(rho, lo_guard, hi_guard);
    const double Fv = sol.metric.F.value_at(r);
    const double f1 = sol.f.d1_at(r);
    const double H = mean_curvature_sphere(sol.metric, r);
    return Fv * Fv * f1 - Fv * H;
  };

  auto record = [&sol](double s, double rho_norm) {
    const double t = sol.T - std::exp(-s);
    const double scale = std::sqrt(sol.T - t);
    SphereState st;
    st.rho = diffeo_flow_inverse(sol, rho_norm, t);
    st.time = t;
    st.H = mean_curvature_sphere(sol.metric, rho_norm) / scale;
    st.ef = normal_derivative_f(sol.metric, sol.f, rho_norm) / scale;
    st.A_norm =
        std::abs(st.H) / std::sqrt(static_cast<double>(sol.metric.n - 1));
    return st;
  };

  OdeControl octrl;
  octrl.abs_tol = ctrl.abs_tol;
  octrl.rel_tol = ctrl.rel_tol;
  octrl.max_step = ctrl.max_step;
  auto stopped = [&](double, double rho) {
    return rho <= ctrl.rho_floor || rho >= ctrl.rho_ceiling;
  };

  const double rho_norm0 = diffeo_flow(sol, rho0, t0);
  double s = -std::log(sol.T - t0);
  double rho = rho_norm0;
  traj.samples.push_back(record(s, rho));
  if (stopped(s, rho)) {
    traj.termination = rho <= ctrl.rho_floor ? Termination::extinction
                                             : Termination::domain_exit;
    traj.end_param = t0;
    return traj;
  }

  const long k_max = static_cast<long>(
      std::ceil((t1 - t0) / (ctrl.out_ds > 0.0 ? ctrl.out_ds : (t1 - t0)) -
                1e-9));
  for (long k = 1; k <= k_max; ++k) {
    const double t_k =
        k == k_max ? t1 : t0 + static_cast<double>(k) * ctrl.out_ds;
    const double s_k = -std::log(sol.T - t_k);
    const OdeOutcome outcome = integrate_ode(rhs, s, rho, s_k, octrl, stopped);
    if (outcome == OdeOutcome::stopped) {
      traj.samples.push_back(record(s, rho));
      traj.termination = rho <= ctrl.rho_floor ? Termination::extinction
                                               : Termination::domain_exit;
      traj.end_param = sol.T - std::exp(-s);
      return traj;
    }
    if (outcome == OdeOutcome::step_floor) {
      traj.samples.push_back(record(s, rho));
      traj.termination = Termination::step_floor;
      traj.end_param = sol.T - std::exp(-s);
      return traj;
    }
    s = s_k;
    traj.samples.push_back(record(s_k, rho));
  }
  traj.termination = Termination::reached_horizon;
  traj.end_param = t1;
  return traj;
}

double type_one_ratio(const FlowTrajectory& traj) {
  double sup = 0.0;
  if (traj.kind == FlowKind::normalized) {
    for (const SphereState& st : traj.samples)
      sup = std::max(sup, st.A_norm);
    return sup;
  }
  const double T = traj.soliton ? traj.soliton->T : 1.0;
  for (const SphereState& st : traj.samples) {
    const double tau = T - st.time;
    if (tau <= 0.0) continue;
    sup = std::max(sup, std::sqrt(tau) * st.A_norm);
  }
  return sup;
}

void write_trajectory_csv(const FlowTrajectory& traj, std::ostream& os) {
  os << "kind,n,soliton,param_time,rho,H,ef,A_norm\n";
  const char* kind =
      traj.kind == FlowKind::background ? "background" : "normalized";
  const int n = traj.soliton ? traj.soliton->metric.n : 0;
  const std::string name = traj.soliton ? traj.soliton->name : "";
  for (const SphereState& st : traj.samples) {
    os << kind << ',' << n << ',' << name << ',' << format_g17(st.time) << ','
       << format_g17(st.rho) << ',' << format_g17(st.H) << ','
       << format_g17(st.ef) << ',' << format_g17(st.A_norm) << "\n";
  }
}

}  // namespace solab
