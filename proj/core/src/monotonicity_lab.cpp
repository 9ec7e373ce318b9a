// solab: monotonicity_lab implementation. Spheres make every surface integral
// a closed-form product, so the only error source in the certification is the
// finite-difference discretization itself.
#include "solab/monotonicity_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "solab/errors.hpp"

namespace solab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double normalization(int n) { return std::pow(4.0 * kPi, -(n - 1) / 2.0); }

// Longest prefix of strictly uniform parameter spacing.
std::vector<double> uniform_prefix_times(const FlowTrajectory& traj,
                                         size_t* count) {
  const auto& s = traj.samples;
  std::vector<double> t;
  t.reserve(s.size());
  for (const SphereState& st : s) t.push_back(st.time);
  size_t k = t.size();
  if (t.size() >= 3) {
    const double ds = t[1] - t[0];
    for (size_t i = 2; i < t.size(); ++i) {
      const double expected = t[0] + static_cast<double>(i) * ds;
      if (std::abs(t[i] - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
        k = i;
        break;
      }
    }
  }
  *count = k;
  return t;
}

}  // namespace

double weighted_area(const SolitonData& soliton, double rho) {
  if (!(rho > 0.0)) throw DomainError("weighted_area: rho must be > 0");
  const int n = soliton.metric.n;
  const double F = soliton.metric.F.value_at(rho);
  const double f = soliton.f.value_at(rho);
  return unit_sphere_area(n) * std::pow(rho, n - 1) * std::pow(F, -(n - 1)) *
         std::exp(-f);
}

double half_weight(const SolitonData& soliton, double rho) {
  if (!(rho > 0.0)) throw DomainError("half_weight: rho must be > 0");
  const int n = soliton.metric.n;
  const double F = soliton.metric.F.value_at(rho);
  const double f = soliton.f.value_at(rho);
  return unit_sphere_area(n) * std::pow(rho, n - 1) * std::pow(F, -(n - 1)) *
         std::exp(-f / 2.0);
}

double dissipation(const SolitonData& soliton, double rho) {
  const double d = soliton_defect(soliton, rho);
  return d * d * weighted_area(soliton, rho);
}

double huisken_functional(const SolitonData& soliton, const SphereState& state,
                          FlowKind kind) {
  double rho_norm = state.rho;
  if (kind == FlowKind::background &&
      soliton.background == BackgroundKind::shrinking)
    rho_norm = diffeo_flow(soliton, state.rho, state.time);
  return normalization(soliton.metric.n) * weighted_area(soliton, rho_norm);
}

FunctionalSample functional_sample(const SolitonData& soliton,
                                   const SphereState& state, FlowKind kind) {
  double rho_norm = state.rho;
  if (kind == FlowKind::background &&
      soliton.background == BackgroundKind::shrinking)
    rho_norm = diffeo_flow(soliton, state.rho, state.time);
  FunctionalSample out;
  out.param_time = state.time;
  out.weighted_area = weighted_area(soliton, rho_norm);
  out.huisken_A = normalization(soliton.metric.n) * out.weighted_area;
  out.dissipation = dissipation(soliton, rho_norm);
  out.half_weight = half_weight(soliton, rho_norm);
  return out;
}

CertificationReport verify_monotonicity(const FlowTrajectory& traj,
                                        const MonotonicityTolerances& tol) {
  if (!traj.soliton) throw ParamError("verify_monotonicity: null soliton");
  size_t count = 0;
  std::vector<double> times = uniform_prefix_times(traj, &count);
  if (count < 5)
    throw InsufficientSamples(
        "verify_monotonicity: need >= 5 uniformly spaced samples");
  const double ds = times[1] - times[0];
  const SolitonData& sol = *traj.soliton;
  const double norm = normalization(sol.metric.n);

  std::vector<double> A(count), D(count);
  for (size_t i = 0; i < count; ++i) {
    const double rho = traj.samples[i].rho;
    A[i] = weighted_area(sol, rho);
    D[i] = dissipation(sol, rho);
  }

  // Third-derivative magnitude estimate for the automatic tolerance.
  double third_max = 0.0;
  for (size_t i = 2; i + 2 < count; ++i) {
    const double third =
        (A[i + 2] - 2.0 * A[i + 1] + 2.0 * A[i - 1] - A[i - 2]) /
        (2.0 * ds * ds * ds);
    third_max = std::max(third_max, std::abs(third));
  }

  double disc_raw = 0.0;
  for (size_t i = 1; i + 1 < count; ++i) {
    const double fd = (A[i + 1] - A[i - 1]) / (2.0 * ds);
    disc_raw = std::max(disc_raw, std::abs(fd + D[i]));
  }

  const double tol_raw =
      tol.fd_tol > 0.0 ? tol.fd_tol / norm
                       : std::max(1e-6, 10.0 * ds * ds * third_max);
  const double tol_norm =
      tol.fd_tol > 0.0 ? tol.fd_tol
                       : std::max(1e-6, 10.0 * ds * ds * third_max * norm);

  double uphill = 0.0;
  for (size_t i = 1; i < count; ++i)
    uphill = std::max(uphill, A[i] - A[i - 1]);

  CertificationReport report;
  report.add({"d/ds weighted_area = -dissipation (normalized units)",
              disc_raw * norm, tol_norm, disc_raw * norm <= tol_norm,
              static_cast<int>(count)});
  report.add({"d/ds weighted_area = -dissipation (raw units)", disc_raw,
              tol_raw, disc_raw <= tol_raw, static_cast<int>(count)});
  report.add({"weighted_area non-increasing", uphill, tol.mono_slack,
              uphill <= tol.mono_slack, static_cast<int>(count)});
  return report;
}

double half_weight_bound(const FlowTrajectory& traj) {
  if (!traj.soliton || traj.samples.empty())
    throw ParamError("half_weight_bound: empty trajectory");
  double sup = 0.0;
  for (const SphereState& st : traj.samples)
    sup = std::max(sup, half_weight(*traj.soliton, st.rho));
  return sup;
}

namespace {

double second_derivative_sup(const FlowTrajectory& traj, double from_time) {
  size_t count = 0;
  std::vector<double> times = uniform_prefix_times(traj, &count);
  if (count < 7)
    throw InsufficientSamples(
        "second_derivative_bound: need >= 7 uniformly spaced samples");
  const double ds = times[1] - times[0];
  const SolitonData& sol = *traj.soliton;
  std::vector<double> A(count);
  for (size_t i = 0; i < count; ++i)
    A[i] = weighted_area(sol, traj.samples[i].rho);
  double sup = 0.0;
  for (size_t i = 1; i + 1 < count; ++i) {
    if (times[i] < from_time) continue;
    const double d2 = (A[i + 1] - 2.0 * A[i] + A[i - 1]) / (ds * ds);
    sup = std::max(sup, std::abs(d2));
  }
  return sup;
}

}  // namespace

double second_derivative_bound(const FlowTrajectory& traj) {
  if (!traj.soliton) throw ParamError("second_derivative_bound: null soliton");
  return second_derivative_sup(traj, -std::numeric_limits<double>::infinity());
}

double second_derivative_tail(const FlowTrajectory& traj) {
  if (!traj.soliton) throw ParamError("second_derivative_tail: null soliton");
  const double t0 = traj.samples.front().time;
  const double t1 = traj.samples.back().time;
  return second_derivative_sup(traj, t1 - 0.1 * (t1 - t0));
}

double weighted_area_tail_variation(const FlowTrajectory& traj) {
  if (!traj.soliton || traj.samples.empty())
    throw ParamError("weighted_area_tail_variation: empty trajectory");
  const double t0 = traj.samples.front().time;
  const double t1 = traj.samples.back().time;
  const double cutoff = t1 - 0.1 * (t1 - t0);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const SphereState& st : traj.samples) {
    if (st.time < cutoff) continue;
    const double A = weighted_area(*traj.soliton, st.rho);
    lo = std::min(lo, A);
    hi = std::max(hi, A);
  }
  return hi - lo;
}

}  // namespace solab
