// solab: f-minimal limit extraction for normalized flows, f-minimal sphere
// root-finding, and the L-length / reduced-distance machinery with the
// pointwise-limit hypothesis check.
#pragma once

#include <optional>
#include <vector>

#include "solab/flow_engine.hpp"
#include "solab/report.hpp"

namespace solab {

// All sign-change roots of soliton_defect on the bracket, refined to
// |interval| <= tol. Throws NoRoot when no sign change exists.
std::vector<double> f_minimal_roots(const SolitonPtr& soliton,
                                    Interval bracket, double tol = 1e-12);

struct LimitVerdict {
  bool converged = false;
  std::optional<double> limit_radius;  // set only when converged
  double final_radius = 0.0;
  double defect_at_limit = 0.0;
  double tail_variation = 0.0;  // max - min of rho over the last 10% of s
};

// converged iff the trajectory reached its s-horizon, the last-decade radius
// variation is <= tol, and |soliton_defect(final)| <= 10 * tol.
LimitVerdict limit_extraction(const FlowTrajectory& traj, double tol);

// --- L-length and reduced distance -----------------------------------------

enum class PathInterp { linear_t, linear_u };  // u = sqrt(t2 - t)

struct RadialPath {
  std::vector<double> t;    // strictly increasing, t.back() = t2 < T
  std::vector<double> rho;  // same length
  PathInterp interp = PathInterp::linear_t;
};

// L(gamma) = integral over [t1, t2] of sqrt(t2 - t) (S_gbar + |gamma'|^2_gbar)
// with the endpoint singularity removed by u = sqrt(t2 - t). Static fixtures
// use the fixed metric; shrinking solitons pull every quantity through psi_t.
double l_length(const SolitonData& soliton, const RadialPath& path);

struct ReducedDistanceQuery {
  double q1 = 0.0, t1 = 0.0;  // probe endpoint (earlier time)
  double q2 = 0.0, t2 = 0.0;  // base endpoint (later time)
  int m_nodes = 0;
  double ell = 0.0;       // L_min / (2 sqrt(t2 - t1))
  RadialPath minimizer;   // nodes on the u-uniform grid, linear_u interp
  bool stalled = false;   // optimizer hit the iteration cap or line search
};

// Minimize l_length over radial paths with fixed endpoints (m_nodes nodes on
// the uniform u-grid, interior radii free) by L-BFGS from the straight-line
// initialization.
ReducedDistanceQuery reduced_distance(const SolitonPtr& soliton, double q1,
                                      double t1, double q2, double t2,
                                      int m_nodes);

// For each t2 in t_list (increasing toward T): base point = the trajectory
// radius at t2, probe fixed at (q, trajectory start time). Reports the gap
// |ell - f_bar(q, t1)| per probe, the proof's intermediate bound
// ell <= C sqrt(T - t1)/sqrt(t2 - t1) with C = sup (T-t)(H_gbar^2 + S_gbar),
// and whether the gap sequence is monotone decreasing.
CertificationReport reduced_distance_limit_check(
    const SolitonPtr& soliton, const FlowTrajectory& traj, double q,
    const std::vector<double>& t_list, int m_nodes = 64);

// Two-column `t rho` table of a path (17 significant digits).
void write_path(const RadialPath& path, std::ostream& os);

}  // namespace solab
