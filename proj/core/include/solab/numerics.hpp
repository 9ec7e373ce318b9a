// solab: shared numerical kernels — Richardson-controlled Simpson quadrature,
// not-a-knot cubic splines, bracketed root refinement, and the adaptive
// Dormand-Prince stepping loop used by every flow integration.
#pragma once

#include <functional>
#include <string>
#include <vector>

namespace solab {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x < hi; }
};

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

// Composite Simpson on 2^12 base panels, panel count doubled until two
// successive results differ by less than abs_tol (Richardson control) or
// max_doublings is exhausted, in which case QuadratureFailure is thrown.
double simpson_richardson(const std::function<double(double)>& f, double a,
                          double b, double abs_tol = 1e-10,
                          int base_panels = 4096, int max_doublings = 16);

// Fixed-panel composite Simpson (panels must be even). Internal workhorse for
// short smooth segments where the Richardson machinery would be wasteful.
double simpson_fixed(const std::function<double(double)>& f, double a, double b,
                     int panels);

// Cumulative integral of f over the uniform grid [a, b] with `points` nodes
// (points = panels+1, panels even). Returns the antiderivative values at the
// nodes, with per-node Richardson control against a doubled grid.
std::vector<double> cumulative_simpson(const std::function<double(double)>& f,
                                       double a, double b, int points,
                                       double abs_tol = 1e-10,
                                       int max_doublings = 16);

// ---------------------------------------------------------------------------
// Cubic spline, not-a-knot end conditions
// ---------------------------------------------------------------------------

class CubicSpline {
 public:
  CubicSpline() = default;
  // x strictly increasing, size >= 2 (size >= 4 for true not-a-knot; smaller
  // sizes degrade to the natural low-order interpolant).
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double value(double t) const;
  double deriv(double t) const;
  double deriv2(double t) const;
  double lo() const { return x_.front(); }
  double hi() const { return x_.back(); }
  bool empty() const { return x_.empty(); }

 private:
  int find_segment(double t) const;
  std::vector<double> x_, y_, b_, c_, d_;  // y + b(x-xi) + c(x-xi)^2 + d(x-xi)^3
};

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

// Refine a bracketed sign change of f to |hi - lo| <= tol. Wraps the TOMS 748
// bracketing iteration (same family as Brent; strictly enclosing).
double refine_root(const std::function<double(double)>& f, double lo, double hi,
                   double tol = 1e-12);

// ---------------------------------------------------------------------------
// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) for scalar ODEs
// ---------------------------------------------------------------------------

struct OdeControl {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double max_step = 0.01;
  double min_step = 1e-14;  // below this the step control has collapsed
};

enum class OdeOutcome { reached_end, stopped, step_floor };

// Integrate dy/dx = rhs(x, y) from (x0, y0) to x1 (x1 > x0). After every
// accepted step `stop` is consulted; returning true freezes the state and
// reports `stopped`. `observe` (if set) sees every accepted step including the
// initial state. Final (x, y) are written back through the references.
OdeOutcome integrate_ode(const std::function<double(double, double)>& rhs,
                         double& x, double& y, double x1, const OdeControl& ctrl,
                         const std::function<bool(double, double)>& stop = {},
                         const std::function<void(double, double)>& observe = {});

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

// 17-significant-digit decimal rendering (%.17g), the byte-stable format used
// by every emitted artifact.
std::string format_g17(double v);

// Area of the unit (n-1)-sphere, 2 pi^{n/2} / Gamma(n/2).
double unit_sphere_area(int n);

}  // namespace solab
