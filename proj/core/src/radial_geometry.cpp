// solab: radial_geometry implementation. Eigenvalues are reported per unit
// g-length; the round-sphere calibration F = (1+r^2)/2 -> Ric = (n-1)g,
// R = n(n-1) pins the sign convention.
#include "solab/radial_geometry.hpp"

#include <cmath>

#include "solab/errors.hpp"

namespace solab {

ConformalRadialMetric ConformalRadialMetric::make(int n, RadialField F) {
  if (n < 3) throw ParamError("ConformalRadialMetric: dimension must be >= 3");
  if (!F.valid()) throw ParamError("ConformalRadialMetric: F required");
  ConformalRadialMetric m;
  m.n = n;
  m.F = std::move(F);
  m.alpha_n = static_cast<double>(n - 1) / static_cast<double>(n - 2);
  return m;
}

namespace {

void require_positive_radius(double r, bool origin_limit) {
  if (r < 0.0) throw DomainError("radial_geometry: negative radius");
  if (r == 0.0 && !origin_limit)
    throw DomainError(
        "radial_geometry: r = 0 requires the removable-limit flag");
}

}  // namespace

RicciPair conformal_ricci(const ConformalRadialMetric& metric, double r,
                          bool origin_limit) {
  require_positive_radius(r, origin_limit);
  const int n = metric.n;
  const RadialField& F = metric.F;
  const double Fv = F.value_at(r);
  const double F1 = F.d1_at(r);
  const double F2 = F.d2_at(r);
  RicciPair out;
  if (r == 0.0) {
    // Smooth radial F has F'(0) = 0 and F'/r -> F''; both eigenvalues
    // coalesce to 2(n-1) F(0) F''(0).
    out.radial = 2.0 * (n - 1) * Fv * F2;
    out.tangential = 2.0 * (n - 1) * Fv * F2;
    return out;
  }
  out.radial = (n - 1) * (Fv * F2 + Fv * F1 / r - F1 * F1);
  out.tangential =
      Fv * F2 + (2 * n - 3) * Fv * F1 / r - (n - 1) * F1 * F1;
  return out;
}

double scalar_curvature(const ConformalRadialMetric& metric, double r,
                        bool origin_limit) {
  const RicciPair p = conformal_ricci(metric, r, origin_limit);
  return p.radial + (metric.n - 1) * p.tangential;
}

double laplacian_radial(const ConformalRadialMetric& metric,
                        const RadialField& h, double r, bool origin_limit) {
  require_positive_radius(r, origin_limit);
  const int n = metric.n;
  const double Fv = metric.F.value_at(r);
  const double h2 = h.d2_at(r);
  if (r == 0.0) {
    // h'(0) = 0 and h'/r -> h''; the F'/F term carries an extra factor r.
    return Fv * Fv * n * h2;
  }
  const double F1 = metric.F.d1_at(r);
  const double h1 = h.d1_at(r);
  return Fv * Fv * (h2 + (n - 1) * h1 / r + (2 - n) * (F1 / Fv) * h1);
}

HessianPair hessian_radial(const ConformalRadialMetric& metric,
                           const RadialField& h, double r, bool origin_limit) {
  require_positive_radius(r, origin_limit);
  const double Fv = metric.F.value_at(r);
  const double h2 = h.d2_at(r);
  HessianPair out;
  if (r == 0.0) {
    out.radial = Fv * Fv * h2;
    out.tangential = Fv * Fv * h2;  // h'/r -> h'', F F' h' -> 0
    return out;
  }
  const double F1 = metric.F.d1_at(r);
  const double h1 = h.d1_at(r);
  out.radial = Fv * Fv * h2 + Fv * F1 * h1;
  out.tangential = Fv * Fv * h1 / r - Fv * F1 * h1;
  return out;
}

double grad_norm_sq(const ConformalRadialMetric& metric, const RadialField& h,
                    double r) {
  if (r < 0.0) throw DomainError("grad_norm_sq: negative radius");
  const double Fv = metric.F.value_at(r);
  const double h1 = h.d1_at(r);
  return Fv * Fv * h1 * h1;
}

double s_scalar(const ConformalRadialMetric& metric, const RadialField& w,
                double r, bool origin_limit) {
  return scalar_curvature(metric, r, origin_limit) -
         metric.alpha_n * grad_norm_sq(metric, w, r);
}

CurvatureSample curvature_sample(const ConformalRadialMetric& metric,
                                 const RadialField& w, double r,
                                 bool origin_limit) {
  CurvatureSample s;
  s.r = r;
  const RicciPair p = conformal_ricci(metric, r, origin_limit);
  s.ricci_radial = p.radial;
  s.ricci_tangential = p.tangential;
  s.scalar_R = p.radial + (metric.n - 1) * p.tangential;
  s.S = s.scalar_R - metric.alpha_n * grad_norm_sq(metric, w, r);
  return s;
}

}  // namespace solab
