// solab: construction and validation of radial gradient shrinking extended
// Ricci solitons — potential/auxiliary-field ODE solves, lambda inference,
// the four-residual validator (including the Hamilton-type identity), the
// builtin soliton library, and plain-text export/import.
#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "solab/radial_geometry.hpp"

namespace solab {

enum class Provenance { builtin, solved, user };
enum class BackgroundKind { shrinking, static_fixture };

struct ResidualVector {
  double diag = 0.0;      // tangential-slot residual of Ric + Hess f - a dw2 - lambda g
  double offdiag = 0.0;   // off-diagonal bracket residual
  double w_eq = 0.0;      // Delta w - <grad f, grad w> residual
  double hamilton = 0.0;  // |S + |grad f|^2 - f - C*| after additive normalization
};

struct SolitonDiagnostics {
  double max_diag = 0.0;
  double max_offdiag = 0.0;
  double max_w_eq = 0.0;
  double max_hamilton = 0.0;
  double min_S = 0.0;    // minimum of S over the validation grid
  double c_star = 0.0;   // additive normalization used by the Hamilton residual
};

struct SolitonData {
  ConformalRadialMetric metric;
  RadialField f;       // potential function
  RadialField w;       // auxiliary scalar
  RadialField lambda;  // pointwise soliton coefficient (constant allowed)
  double T = 1.0;      // singular time
  int c = 1;           // soliton sign constant (1 = shrinking)
  Provenance provenance = Provenance::user;
  BackgroundKind background = BackgroundKind::shrinking;
  std::string name;
  std::optional<double> eps;  // cap_projected parameter, when applicable

  // Validation grid [val_lo, val_hi] with val_points uniform radii; residual
  // maxima over it are recorded at construction.
  double val_lo = 0.0;
  double val_hi = 0.0;
  int val_points = 0;
  SolitonDiagnostics diagnostics;

  // Closed-form diffeomorphism flow when available (builtin cases); generic
  // solitons fall back to adaptive integration of dphi/dt = F^2 f'/(T-t).
  std::function<double(double /*r*/, double /*t*/)> psi;       // psi_t(r)
  std::function<double(double /*r*/, double /*t*/)> psi_prime; // d psi_t / dr
  std::function<double(double /*rho*/, double /*t*/)> psi_inv; // psi_t^{-1}

  bool has_closed_diffeo() const { return static_cast<bool>(psi); }
};

using SolitonPtr = std::shared_ptr<const SolitonData>;

struct Anchor {
  double r0 = 0.0;
  double v0 = 0.0;
};

// --- ODE solves -------------------------------------------------------------

// f with f'(r) = [lambda/F^2 - (2n-3)F'/(rF) - F''/F + (n-1)(F'/F)^2]
//               / (1/r - F'/F)
// determined algebraically, then f recovered by Richardson-controlled
// quadrature anchored at f(anchor.r0) = anchor.v0. Throws SingularCoefficient
// when 1/r - F'/F changes sign strictly inside the domain.
RadialField solve_potential(const ConformalRadialMetric& metric,
                            const RadialField& lambda, Interval domain,
                            Anchor anchor);

// lambda(r) recovered from (F, f) by inverting the same equation. With
// origin_limit the removable r -> 0 limit is taken.
double infer_lambda(const ConformalRadialMetric& metric, const RadialField& f,
                    double r, bool origin_limit = false);

// w solving w'' + ((n-1)/r - (n-2)F'/F - f') w' = 0 via the positive
// integrating factor, then quadrature for w with w(anchor.r0) = anchor.v0 and
// w'(anchor.r0) = slope. slope = 0 short-circuits to the constant field.
RadialField solve_w(const ConformalRadialMetric& metric, const RadialField& f,
                    Interval domain, Anchor anchor, double slope);

// --- Validation -------------------------------------------------------------

// The four absolute residuals at radius r. c_star is the additive Hamilton
// normalization (use data.diagnostics.c_star; soliton_residuals recomputes
// nothing globally).
ResidualVector soliton_residuals(const SolitonData& data, double r);

// Median over the validation grid of (S + |grad f|^2) - f.
double hamilton_normalization(const SolitonData& data);

// Populate data.diagnostics by sweeping the validation grid.
void validate_soliton(SolitonData& data);

// --- Builtins ---------------------------------------------------------------

struct BuiltinParams {
  int n = 3;
  double eps = 0.5;      // cap_projected only, 0 < eps < 1
  double w_anchor_r = 1.0;
  double w_anchor_v = 0.0;
  double w_slope = 1.0;  // cap_projected w'(1)
};

// name in {gaussian, cap_projected, flat} ("flat" is the degenerate static
// test fixture, F = 1, f = w = 0).
SolitonPtr builtin_soliton(const std::string& name, const BuiltinParams& params);
inline SolitonPtr builtin_solitons(const std::string& name,
                                   const BuiltinParams& params) {
  return builtin_soliton(name, params);
}

SolitonPtr make_flat_fixture(int n);

// --- Stereographic height map ----------------------------------------------

double height_to_radius(double h);  // r = sqrt((1-h)/(1+h)), h in (-1, 1]
double radius_to_height(double r);  // h = (1-r^2)/(1+r^2),  r >= 0

// --- Export / import --------------------------------------------------------

// Plain-text table: header `# soliton n=<int> T=<real> c=<int> eps=<real|none>`
// then rows `r F f w lambda`, 17 significant digits.
void export_soliton(const SolitonData& data, std::ostream& os, int rows = 1025);
void export_soliton_file(const SolitonData& data, const std::string& path,
                         int rows = 1025);
SolitonPtr import_soliton(std::istream& is);
SolitonPtr import_soliton_file(const std::string& path);

}  // namespace solab
