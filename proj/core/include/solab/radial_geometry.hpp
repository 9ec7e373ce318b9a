// solab: curvature, Hessian, Laplacian, and gradient operations for
// conformally flat radial metrics g_ij = F(r)^{-2} delta_ij on R^n. The
// Cartesian formulas are specialized to radial functions (h_{x_i} = h' x_i/r),
// which is exact for every configuration this laboratory touches.
#pragma once

#include "solab/radial_field.hpp"

namespace solab {

struct ConformalRadialMetric {
  int n = 3;                 // ambient dimension, >= 3
  RadialField F;             // nonvanishing conformal factor
  double alpha_n = 2.0;      // (n-1)/(n-2)

  static ConformalRadialMetric make(int n, RadialField F);
};

struct CurvatureSample {
  double r = 0.0;
  double ricci_radial = 0.0;      // Ric(e_r, e_r), unit g-length radial slot
  double ricci_tangential = 0.0;  // tangential eigenvalue
  double scalar_R = 0.0;          // = ricci_radial + (n-1) * ricci_tangential
  double S = 0.0;                 // = R - alpha_n |grad w|^2
};

// Two distinct Ricci eigenvalues of g = F^{-2} delta at radius r. With
// origin_limit = true the removable r -> 0 limit is taken (valid for smooth
// radial F with F'(0) = 0); otherwise r = 0 is a DomainError.
struct RicciPair {
  double radial = 0.0;
  double tangential = 0.0;
};
RicciPair conformal_ricci(const ConformalRadialMetric& metric, double r,
                          bool origin_limit = false);

double scalar_curvature(const ConformalRadialMetric& metric, double r,
                        bool origin_limit = false);

// Laplace-Beltrami of a radial function h:
//   F^2 [ h'' + (n-1) h'/r + (2-n)(F'/F) h' ].
double laplacian_radial(const ConformalRadialMetric& metric,
                        const RadialField& h, double r,
                        bool origin_limit = false);

// Hessian eigenvalues of a radial function h:
//   radial     F^2 h'' + F F' h'
//   tangential F^2 h'/r - F F' h'
struct HessianPair {
  double radial = 0.0;
  double tangential = 0.0;
};
HessianPair hessian_radial(const ConformalRadialMetric& metric,
                           const RadialField& h, double r,
                           bool origin_limit = false);

// |grad_g h|^2_g = F(r)^2 h'(r)^2.
double grad_norm_sq(const ConformalRadialMetric& metric, const RadialField& h,
                    double r);

// S(r) = R(r) - alpha_n |grad w|^2.
double s_scalar(const ConformalRadialMetric& metric, const RadialField& w,
                double r, bool origin_limit = false);

// Full curvature record at one radius.
CurvatureSample curvature_sample(const ConformalRadialMetric& metric,
                                 const RadialField& w, double r,
                                 bool origin_limit = false);

}  // namespace solab
