// solab: weighted-area / Huisken-type functionals along sphere flows and the
// finite-difference certification of the monotonicity identity
// d/ds (weighted area) = -dissipation, plus the half-weight and
// second-derivative boundedness checks.
#pragma once

#include "solab/flow_engine.hpp"
#include "solab/report.hpp"

namespace solab {

struct FunctionalSample {
  double param_time = 0.0;
  double weighted_area = 0.0;  // omega_{n-1} rho^{n-1} F^{-(n-1)} e^{-f}
  double huisken_A = 0.0;      // (4 pi)^{-(n-1)/2} * weighted_area
  double dissipation = 0.0;    // defect^2 * weighted_area
  double half_weight = 0.0;    // omega_{n-1} rho^{n-1} F^{-(n-1)} e^{-f/2}
};

double weighted_area(const SolitonData& soliton, double rho);
double half_weight(const SolitonData& soliton, double rho);
double dissipation(const SolitonData& soliton, double rho);

// (4 pi)^{-(n-1)/2} * weighted_area at the normalized radius. Background
// samples are first mapped to the normalized picture through psi_t.
double huisken_functional(const SolitonData& soliton, const SphereState& state,
                          FlowKind kind);

FunctionalSample functional_sample(const SolitonData& soliton,
                                   const SphereState& state, FlowKind kind);

struct MonotonicityTolerances {
  // Finite-difference tolerance; 0 selects the automatic model
  // max(1e-6, 10 * ds^2 * max |third-derivative estimate|).
  double fd_tol = 0.0;
  double mono_slack = 1e-12;  // allowed uphill slack for the monotone check
};

// Certify d/ds A = -dissipation by centered finite differences on the uniform
// prefix of the sample grid, in normalized (Huisken) units and raw units, and
// check that the weighted area is non-increasing. Throws InsufficientSamples
// below 5 uniform samples.
CertificationReport verify_monotonicity(const FlowTrajectory& traj,
                                        const MonotonicityTolerances& tol = {});

// sup over samples of the half-weight functional.
double half_weight_bound(const FlowTrajectory& traj);

// sup of |3-point second finite difference of weighted area| / ds^2 on the
// uniform prefix; throws InsufficientSamples below 7 samples.
double second_derivative_bound(const FlowTrajectory& traj);

// Same estimator restricted to the final 10% of the parameter span.
double second_derivative_tail(const FlowTrajectory& traj);

// max - min of the weighted area over the final 10% of the parameter span
// (the Cauchy tail used by the convergence property check).
double weighted_area_tail_variation(const FlowTrajectory& traj);

}  // namespace solab
