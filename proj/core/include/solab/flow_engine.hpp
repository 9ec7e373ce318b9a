// solab: mean curvature flow of round concentric spheres in a soliton
// background — the normalized flow in s = -log(T-t), the background flow
// recovered through the soliton diffeomorphisms, and type-I diagnostics.
#pragma once

#include <iosfwd>
#include <vector>

#include "solab/soliton_forge.hpp"

namespace solab {

enum class FlowKind { background, normalized };
enum class Termination { reached_horizon, extinction, step_floor, domain_exit };

struct SphereState {
  double rho = 0.0;     // Euclidean radius in the active chart
  double time = 0.0;    // t (background) or s (normalized)
  double H = 0.0;       // mean curvature w.r.t. the inward normal
  double ef = 0.0;      // normal derivative e(f)
  double A_norm = 0.0;  // |second fundamental form| = |H|/sqrt(n-1)
};

struct StepControl {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double max_step = 0.01;
  double rho_floor = 1e-6;    // extinction threshold
  double rho_ceiling = 1e4;   // escape threshold (domain_exit)
  double out_ds = 0.01;       // output grid spacing (s or t)
};

struct FlowTrajectory {
  FlowKind kind = FlowKind::normalized;
  SolitonPtr soliton;
  std::vector<SphereState> samples;
  Termination termination = Termination::reached_horizon;
  double end_param = 0.0;  // final time parameter actually reached
};

// H = (n-1) [ F(rho)/rho - F'(rho) ], inward normal convention: flat spheres
// have H > 0 and shrink.
double mean_curvature_sphere(const ConformalRadialMetric& metric, double rho);

// e(f) = -F(rho) f'(rho) (inward unit normal has Euclidean component -F).
double normal_derivative_f(const ConformalRadialMetric& metric,
                           const RadialField& f, double rho);

// H + e(f): zero exactly at f-minimal spheres.
double soliton_defect(const SolitonData& soliton, double rho);
inline double soliton_defect(const SolitonPtr& s, double rho) {
  return soliton_defect(*s, rho);
}

// psi_t(r0) with reference slice psi_{T-1} = Id; closed form when the soliton
// carries one, otherwise adaptive integration of dphi/dt = F^2 f'/(T-t).
double diffeo_flow(const SolitonData& soliton, double r0, double t);

// psi_t^{-1}(rho); closed form or bracketed root-finding to 1e-12.
double diffeo_flow_inverse(const SolitonData& soliton, double rho, double t);

// Normalized flow drho/ds = F^2 f' - F H from s0 = -log T to s_max, sampled
// on the uniform grid s_k = s0 + k * out_ds.
FlowTrajectory run_normalized_flow(const SolitonPtr& soliton, double rho0,
                                   double s_max, const StepControl& ctrl = {});

// Background MCF on t_span = [t0, t1] sampled at t_k = t0 + k * out_ds.
// Shrinking solitons integrate the normalized flow and map back through
// psi_t^{-1}; static fixtures integrate drho/dt = -F H directly.
FlowTrajectory run_background_flow(const SolitonPtr& soliton, double rho0,
                                   double t0, double t1,
                                   const StepControl& ctrl = {});

// sup over samples of sqrt(T-t) |A|_gbar (background) or sup |A|_g
// (normalized); the two agree by parabolic scaling.
double type_one_ratio(const FlowTrajectory& traj);

// CSV with header kind,n,soliton,param_time,rho,H,ef,A_norm.
void write_trajectory_csv(const FlowTrajectory& traj, std::ostream& os);

}  // namespace solab
