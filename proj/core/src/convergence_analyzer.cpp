// solab: convergence_analyzer implementation.
#include "solab/convergence_analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "solab/errors.hpp"
#include "solab/monotonicity_lab.hpp"
#include "solab/optimize.hpp"
#include "solab/radial_geometry.hpp"

namespace solab {

// ---------------------------------------------------------------------------
// f-minimal roots / limit extraction
// ---------------------------------------------------------------------------

std::vector<double> f_minimal_roots(const SolitonPtr& soliton, Interval bracket,
                                    double tol) {
  if (!soliton) throw ParamError("f_minimal_roots: null soliton");
  if (!(bracket.lo > 0.0) || !(bracket.hi > bracket.lo))
    throw ParamError("f_minimal_roots: invalid bracket");
  const SolitonData& sol = *soliton;

  const int scan = 2048;
  std::vector<double> radii(scan + 1), values(scan + 1);
  for (int i = 0; i <= scan; ++i) {
    radii[i] =
        bracket.lo + (bracket.hi - bracket.lo) * static_cast<double>(i) / scan;
    values[i] = soliton_defect(sol, radii[i]);
  }
  // Exact zeros at scan nodes are taken verbatim; sign-change cells are
  // refined only when neither endpoint is such a zero, so a root sitting on a
  // node is reported once.
  std::vector<double> roots;
  for (int i = 0; i <= scan; ++i)
    if (values[i] == 0.0) roots.push_back(radii[i]);
  for (int i = 1; i <= scan; ++i)
    if (values[i - 1] != 0.0 && values[i] != 0.0 &&
        (values[i - 1] > 0.0) != (values[i] > 0.0))
      roots.push_back(refine_root(
          [&sol](double x) { return soliton_defect(sol, x); }, radii[i - 1],
          radii[i], tol));
  std::sort(roots.begin(), roots.end());
  if (roots.empty())
    throw NoRoot("f_minimal_roots: no sign change of the defect on bracket");
  return roots;
}

LimitVerdict limit_extraction(const FlowTrajectory& traj, double tol) {
  LimitVerdict v;
  if (!traj.soliton || traj.samples.empty()) return v;
  const double s0 = traj.samples.front().time;
  const double s1 = traj.samples.back().time;
  const double cutoff = s1 - 0.1 * (s1 - s0);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const SphereState& st : traj.samples) {
    if (st.time < cutoff) continue;
    lo = std::min(lo, st.rho);
    hi = std::max(hi, st.rho);
  }
  v.tail_variation = hi - lo;
  v.final_radius = traj.samples.back().rho;
  v.defect_at_limit = soliton_defect(*traj.soliton, v.final_radius);
  v.converged = traj.termination == Termination::reached_horizon &&
                v.tail_variation <= tol &&
                std::abs(v.defect_at_limit) <= 10.0 * tol;
  if (v.converged) v.limit_radius = v.final_radius;
  return v;
}

// ---------------------------------------------------------------------------
// L-length
// ---------------------------------------------------------------------------

namespace {

// S of the background metric gbar(t) at chart radius r: S_g(psi_t(r))/(T-t)
// for shrinking solitons, S_g(r) for static fixtures.
double s_gbar(const SolitonData& sol, double r, double t) {
  const bool origin = r < 1e-12;
  if (sol.background == BackgroundKind::static_fixture)
    return s_scalar(sol.metric, sol.w, r, origin);
  const double big_r = diffeo_flow(sol, r, t);
  const bool origin_big = big_r < 1e-12;
  return s_scalar(sol.metric, sol.w, big_r, origin_big) / (sol.T - t);
}

// Squared gbar-speed density multiplier for a chart-radial velocity v at
// (r, t): |v d/dr|^2_gbar = mult(r, t) * v^2.
double speed_metric(const SolitonData& sol, double r, double t) {
  if (sol.background == BackgroundKind::static_fixture) {
    const double F = sol.metric.F.value_at(r);
    return 1.0 / (F * F);
  }
  const double big_r = diffeo_flow(sol, r, t);
  const double F = sol.metric.F.value_at(big_r);
  double dpsi;
  if (sol.has_closed_diffeo() && sol.psi_prime) {
    dpsi = sol.psi_prime(r, t);
  } else {
    const double h = std::max(1e-7, 1e-7 * std::abs(r));
    dpsi = (diffeo_flow(sol, r + h, t) - diffeo_flow(sol, std::max(r - h, 0.0), t)) /
           (h + std::min(h, r));
  }
  return (sol.T - t) * dpsi * dpsi / (F * F);
}

struct UPath {
  // Node values in increasing u (u = sqrt(t2 - t)); u[0] = 0 is the t2 end.
  std::vector<double> u;
  std::vector<double> rho;
  double t2 = 0.0;
};

// L contribution of segment [u_a, u_b] with linear-in-u radii.
double segment_l(const SolitonData& sol, const UPath& p, size_t i,
                 double rho_a, double rho_b) {
  const double ua = p.u[i], ub = p.u[i + 1];
  const double du = ub - ua;
  const double slope = (rho_b - rho_a) / du;
  auto integrand = [&](double u) {
    const double r = std::max(0.0, rho_a + slope * (u - ua));
    const double t = p.t2 - u * u;
    const double speed = 0.5 * speed_metric(sol, r, t) * slope * slope;
    return 2.0 * u * u * s_gbar(sol, r, t) + speed;
  };
  return simpson_fixed(integrand, ua, ub, 16);
}

UPath path_to_u(const SolitonData& sol, const RadialPath& path) {
  if (path.t.size() != path.rho.size() || path.t.size() < 2)
    throw ParamError("l_length: path needs matching t/rho arrays, size >= 2");
  for (size_t i = 1; i < path.t.size(); ++i)
    if (!(path.t[i] > path.t[i - 1]))
      throw ParamError("l_length: path times must be strictly increasing");
  // Static fixtures never become singular, so T constrains shrinking
  // backgrounds only.
  if (sol.background == BackgroundKind::shrinking && !(path.t.back() < sol.T))
    throw DomainError("l_length: path must end before the singular time");
  UPath p;
  p.t2 = path.t.back();
  const size_t m = path.t.size();
  p.u.resize(m);
  p.rho.resize(m);
  for (size_t i = 0; i < m; ++i) {
    p.u[i] = std::sqrt(p.t2 - path.t[m - 1 - i]);
    p.rho[i] = path.rho[m - 1 - i];
  }
  return p;
}

}  // namespace

double l_length(const SolitonData& soliton, const RadialPath& path) {
  UPath p = path_to_u(soliton, path);
  if (path.interp == PathInterp::linear_t) {
    // gamma is linear in t on each original segment, so under u = sqrt(t2 - t)
    // the radius is rho_j + m_j (t2 - u^2 - t_j) with exact u-slope -2 u m_j.
    // Integrating with that slope keeps the representation exact; for the
    // flat fixture the speed integrand is a plain quadratic in u, which the
    // quadrature reproduces to round-off.
    const size_t m = path.t.size();
    double total = 0.0;
    for (size_t j = 0; j + 1 < m; ++j) {
      const double ta = path.t[j], tb = path.t[j + 1];
      const double mj = (path.rho[j + 1] - path.rho[j]) / (tb - ta);
      const double ub = std::sqrt(p.t2 - ta);
      const double ua = std::sqrt(p.t2 - tb);
      auto integrand = [&](double u) {
        const double t = p.t2 - u * u;
        const double r = std::max(0.0, path.rho[j] + mj * (t - ta));
        const double speed =
            2.0 * speed_metric(soliton, r, t) * u * u * mj * mj;
        return 2.0 * u * u * s_gbar(soliton, r, t) + speed;
      };
      total += simpson_fixed(integrand, ua, ub, 16);
    }
    return total;
  }
  double total = 0.0;
  for (size_t i = 0; i + 1 < p.u.size(); ++i)
    total += segment_l(soliton, p, i, p.rho[i], p.rho[i + 1]);
  return total;
}

// ---------------------------------------------------------------------------
// Reduced distance
// ---------------------------------------------------------------------------

ReducedDistanceQuery reduced_distance(const SolitonPtr& soliton, double q1,
                                      double t1, double q2, double t2,
                                      int m_nodes) {
  if (!soliton) throw ParamError("reduced_distance: null soliton");
  if (!(t1 >= 0.0) || !(t2 > t1))
    throw ParamError("reduced_distance: need 0 <= t1 < t2");
  if (soliton->background == BackgroundKind::shrinking && !(t2 < soliton->T))
    throw ParamError("reduced_distance: need t2 < T on a shrinking background");
  if (m_nodes < 8) throw ParamError("reduced_distance: m_nodes must be >= 8");
  if (q1 < 0.0 || q2 < 0.0)
    throw ParamError("reduced_distance: radii must be >= 0");
  const SolitonData& sol = *soliton;

  const double U = std::sqrt(t2 - t1);
  UPath p;
  p.t2 = t2;
  p.u.resize(m_nodes);
  p.rho.resize(m_nodes);
  for (int j = 0; j < m_nodes; ++j) {
    p.u[j] = U * static_cast<double>(j) / (m_nodes - 1);
    p.rho[j] = q2 + (q1 - q2) * static_cast<double>(j) / (m_nodes - 1);
  }

  const int n_free = m_nodes - 2;
  auto unpack = [&](const Eigen::VectorXd& x, std::vector<double>& rho) {
    rho = p.rho;
    for (int j = 0; j < n_free; ++j) rho[j + 1] = x[j];
  };

  auto total_l = [&](const std::vector<double>& rho) {
    double sum = 0.0;
    for (size_t i = 0; i + 1 < p.u.size(); ++i)
      sum += segment_l(sol, p, i, rho[i], rho[i + 1]);
    return sum;
  };

  // Objective with a segment-aware central-difference gradient: perturbing an
  // interior node only touches its two adjacent segments.
  std::vector<double> rho_work;
  auto fn = [&](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
    unpack(x, rho_work);
    std::vector<double> seg(p.u.size() - 1);
    double sum = 0.0;
    for (size_t i = 0; i + 1 < p.u.size(); ++i) {
      seg[i] = segment_l(sol, p, i, rho_work[i], rho_work[i + 1]);
      sum += seg[i];
    }
    for (int j = 0; j < n_free; ++j) {
      const size_t node = static_cast<size_t>(j) + 1;
      const double r = rho_work[node];
      const double h = std::max(1e-7, 1e-7 * std::abs(r));
      const double r_plus = r + h;
      const double r_minus = std::max(0.0, r - h);
      const double denom = r_plus - r_minus;
      const double up = segment_l(sol, p, node - 1, rho_work[node - 1], r_plus) +
                        segment_l(sol, p, node, r_plus, rho_work[node + 1]);
      const double dn =
          segment_l(sol, p, node - 1, rho_work[node - 1], r_minus) +
          segment_l(sol, p, node, r_minus, rho_work[node + 1]);
      grad[j] = (up - dn) / denom;
    }
    return sum;
  };

  ReducedDistanceQuery out;
  out.q1 = q1;
  out.t1 = t1;
  out.q2 = q2;
  out.t2 = t2;
  out.m_nodes = m_nodes;

  Eigen::VectorXd x0(n_free);
  for (int j = 0; j < n_free; ++j) x0[j] = p.rho[j + 1];
  const LbfgsResult res = minimize_lbfgs(fn, std::move(x0));
  out.stalled = !res.converged;

  std::vector<double> rho_best;
  unpack(res.x, rho_best);
  out.ell = total_l(rho_best) / (2.0 * U);

  out.minimizer.interp = PathInterp::linear_u;
  out.minimizer.t.resize(m_nodes);
  out.minimizer.rho.resize(m_nodes);
  for (int j = 0; j < m_nodes; ++j) {
    // Emit in increasing t: node j of the u-grid sits at t = t2 - u_j^2.
    const int src = m_nodes - 1 - j;
    out.minimizer.t[j] = t2 - p.u[src] * p.u[src];
    out.minimizer.rho[j] = rho_best[src];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pointwise-limit hypothesis check
// ---------------------------------------------------------------------------

namespace {

// Chart radius of the trajectory base point at time t, interpolating the
// (monotone-in-s) normalized radius so the mapping stays accurate near T.
double base_radius_at(const SolitonData& sol, const FlowTrajectory& traj,
                      double t) {
  if (traj.samples.empty())
    throw ParamError("reduced_distance_limit_check: empty trajectory");
  if (sol.background == BackgroundKind::static_fixture ||
      traj.kind == FlowKind::normalized) {
    std::vector<double> ts, rhos;
    for (const SphereState& st : traj.samples) {
      ts.push_back(st.time);
      rhos.push_back(st.rho);
    }
    return CubicSpline(ts, rhos).value(t);
  }
  std::vector<double> ss, rhon;
  for (const SphereState& st : traj.samples) {
    ss.push_back(-std::log(sol.T - st.time));
    rhon.push_back(diffeo_flow(sol, st.rho, st.time));
  }
  const double s = -std::log(sol.T - t);
  const double rho_norm = CubicSpline(ss, rhon).value(s);
  return diffeo_flow_inverse(sol, rho_norm, t);
}

}  // namespace

CertificationReport reduced_distance_limit_check(
    const SolitonPtr& soliton, const FlowTrajectory& traj, double q,
    const std::vector<double>& t_list, int m_nodes) {
  if (!soliton) throw ParamError("reduced_distance_limit_check: null soliton");
  if (traj.kind != FlowKind::background)
    throw ParamError(
        "reduced_distance_limit_check: needs a background trajectory");
  if (t_list.size() < 2)
    throw ParamError("reduced_distance_limit_check: need >= 2 probe times");
  for (size_t i = 1; i < t_list.size(); ++i)
    if (!(t_list[i] > t_list[i - 1]))
      throw ParamError(
          "reduced_distance_limit_check: probe times must increase");
  const SolitonData& sol = *soliton;
  const double t1 = traj.samples.front().time;

  // f_bar(q, t1) = f(psi_{t1}(q)).
  const double f_ref = sol.f.value_at(diffeo_flow(sol, q, t1));

  // Proof-bound constant: sup over samples of (T - t)(H_gbar^2 + S_gbar).
  double c_bound = 0.0;
  for (const SphereState& st : traj.samples) {
    const double tau = sol.T - st.time;
    if (tau <= 0.0) continue;
    const double s_val = s_gbar(sol, st.rho, st.time);
    c_bound = std::max(c_bound, tau * (st.H * st.H + s_val));
  }

  CertificationReport report;
  std::vector<double> gaps;
  for (double t2 : t_list) {
    if (!(t2 > t1) || !(t2 < sol.T))
      throw ParamError(
          "reduced_distance_limit_check: probe times must lie in (t1, T)");
    const double q2 = base_radius_at(sol, traj, t2);
    const ReducedDistanceQuery rd =
        reduced_distance(soliton, q, t1, q2, t2, m_nodes);
    const double gap = std::abs(rd.ell - f_ref);
    gaps.push_back(gap);
    report.add({"reduced-distance gap |ell - f(q)| at t2 = " + format_g17(t2),
                gap, std::numeric_limits<double>::infinity(), true, m_nodes});
    const double bound = c_bound * std::sqrt(sol.T - t1) / std::sqrt(t2 - t1);
    report.add({"proof bound ell <= C sqrt(T-t1)/sqrt(t2-t1) at t2 = " +
                    format_g17(t2),
                rd.ell, bound, rd.ell <= bound + 1e-12, m_nodes});
  }

  double worst_increase = 0.0;
  for (size_t i = 1; i < gaps.size(); ++i)
    worst_increase = std::max(worst_increase, gaps[i] - gaps[i - 1]);
  report.add({"gap sequence monotone decreasing", worst_increase, 1e-3,
              worst_increase <= 1e-3, static_cast<int>(gaps.size())});
  return report;
}

void write_path(const RadialPath& path, std::ostream& os) {
  for (size_t i = 0; i < path.t.size(); ++i)
    os << format_g17(path.t[i]) << ' ' << format_g17(path.rho[i]) << "\n";
}

}  // namespace solab
