// solab: implementation of the shared numerical kernels.
#include "solab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <boost/math/tools/toms748_solve.hpp>
#include <boost/numeric/odeint.hpp>

#include "solab/errors.hpp"

namespace solab {

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

double simpson_fixed(const std::function<double(double)>& f, double a, double b,
                     int panels) {
  if (panels < 2 || panels % 2 != 0)
    throw ParamError("simpson_fixed: panel count must be even and >= 2");
  const double h = (b - a) / panels;
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < panels; i += 2) odd += f(a + i * h);
  for (int i = 2; i < panels; i += 2) even += f(a + i * h);
  return (h / 3.0) * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

double simpson_richardson(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, int base_panels,
                          int max_doublings) {
  if (a == b) return 0.0;
  int panels = base_panels;
  double prev = simpson_fixed(f, a, b, panels);
  for (int k = 0; k < max_doublings; ++k) {
    panels *= 2;
    const double cur = simpson_fixed(f, a, b, panels);
    if (std::abs(cur - prev) < abs_tol) return cur;
    prev = cur;
  }
  throw QuadratureFailure("simpson_richardson: refinement stalled above " +
                          format_g17(abs_tol));
}

std::vector<double> cumulative_simpson(const std::function<double(double)>& f,
                                       double a, double b, int points,
                                       double abs_tol, int max_doublings) {
  if (points < 3 || (points - 1) % 2 != 0)
    throw ParamError("cumulative_simpson: need an odd node count >= 3");

  // Cumulative Simpson over a uniform grid refined `sub` times per output
  // panel; the whole table is recomputed with doubled sub-sampling until the
  // worst node-wise change drops below abs_tol.
  auto table = [&](int sub) {
    const int n = points - 1;  // output panels
    std::vector<double> out(points, 0.0);
    const double h = (b - a) / n;
    for (int i = 0; i < n; ++i) {
      const double x0 = a + i * h;
      out[i + 1] = out[i] + simpson_fixed(f, x0, x0 + h, 2 * sub);
    }
    return out;
  };

  int sub = 1;
  std::vector<double> prev = table(sub);
  for (int k = 0; k < max_doublings; ++k) {
    sub *= 2;
    std::vector<double> cur = table(sub);
    double worst = 0.0;
    for (int i = 0; i < points; ++i)
      worst = std::max(worst, std::abs(cur[i] - prev[i]));
    if (worst < abs_tol) return cur;
    prev = std::move(cur);
  }
  throw QuadratureFailure("cumulative_simpson: refinement stalled above " +
                          format_g17(abs_tol));
}

// ---------------------------------------------------------------------------
// Cubic spline (not-a-knot)
// ---------------------------------------------------------------------------

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const int n = static_cast<int>(x_.size());
  if (n < 2 || y_.size() != x_.size())
    throw ParamError("CubicSpline: need matching arrays of size >= 2");
  for (int i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1]))
      throw ParamError("CubicSpline: abscissae must be strictly increasing");

  b_.assign(n, 0.0);
  c_.assign(n, 0.0);
  d_.assign(n, 0.0);

  if (n == 2) {  // straight line
    b_[0] = b_[1] = (y_[1] - y_[0]) / (x_[1] - x_[0]);
    return;
  }

  std::vector<double> h(n - 1);
  for (int i = 0; i < n - 1; ++i) h[i] = x_[i + 1] - x_[i];

  // Solve for second derivatives m_i (c_i = m_i / 2) with not-a-knot end
  // conditions: third derivative continuous across x_1 and x_{n-2}.
  std::vector<double> sub(n, 0.0), diag(n, 0.0), sup(n, 0.0), rhs(n, 0.0);
  for (int i = 1; i < n - 1; ++i) {
    sub[i] = h[i - 1];
    diag[i] = 2.0 * (h[i - 1] + h[i]);
    sup[i] = h[i];
    rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1]);
  }
  std::vector<double> m(n, 0.0);
  if (n == 3) {
    // With both not-a-knot conditions the interpolant is the single parabola
    // through the three points: m_0 = m_1 = m_2, fixed by the interior row.
    m[1] = rhs[1] / (diag[1] + sub[1] + sup[1]);
    m[0] = m[2] = m[1];
  } else {
    // General not-a-knot: eliminate the two out-of-band corner entries and run
    // the Thomas algorithm on the resulting tridiagonal system in m_1..m_{n-2},
    // then recover m_0 and m_{n-1} from the end conditions.
    //   h1*m0 = (h0+h1)*m1 - h0*m2
    //   h_{n-3}*m_{n-1} = (h_{n-2}+h_{n-3})*m_{n-2} - h_{n-2}*m_{n-3}
    const int k = n - 2;  // unknowns m_1..m_{n-2}
    std::vector<double> A(k, 0.0), B(k, 0.0), C(k, 0.0), R(k, 0.0);
    for (int i = 1; i <= n - 2; ++i) {
      const int j = i - 1;
      A[j] = sub[i];
      B[j] = diag[i];
      C[j] = sup[i];
      R[j] = rhs[i];
    }
    // Row for i=1 contains m0; substitute m0 = ((h0+h1)m1 - h0 m2)/h1.
    B[0] += A[0] * (h[0] + h[1]) / h[1];
    C[0] += A[0] * (-h[0] / h[1]);
    A[0] = 0.0;
    // Row for i=n-2 contains m_{n-1}; substitute symmetrically.
    const double hl = h[n - 2], hp = h[n - 3];
    B[k - 1] += C[k - 1] * (hl + hp) / hp;
    A[k - 1] += C[k - 1] * (-hl / hp);
    C[k - 1] = 0.0;

    std::vector<double> cw(k, 0.0), dw(k, 0.0);
    cw[0] = C[0] / B[0];
    dw[0] = R[0] / B[0];
    for (int i = 1; i < k; ++i) {
      const double mlt = B[i] - A[i] * cw[i - 1];
      cw[i] = (i < k - 1) ? C[i] / mlt : 0.0;
      dw[i] = (R[i] - A[i] * dw[i - 1]) / mlt;
    }
    std::vector<double> mi(k, 0.0);
    mi[k - 1] = dw[k - 1];
    for (int i = k - 2; i >= 0; --i) mi[i] = dw[i] - cw[i] * mi[i + 1];
    for (int i = 1; i <= n - 2; ++i) m[i] = mi[i - 1];
    m[0] = ((h[0] + h[1]) * m[1] - h[0] * m[2]) / h[1];
    m[n - 1] = ((hl + hp) * m[n - 2] - hl * m[n - 3]) / hp;
  }

  for (int i = 0; i < n - 1; ++i) {
    c_[i] = m[i] / 2.0;
    d_[i] = (m[i + 1] - m[i]) / (6.0 * h[i]);
    b_[i] = (y_[i + 1] - y_[i]) / h[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
  }
  // Fill the last slot so value() can clamp-extrapolate off the right end.
  b_[n - 1] = b_[n - 2] + 2.0 * c_[n - 2] * h[n - 2] + 3.0 * d_[n - 2] * h[n - 2] * h[n - 2];
  c_[n - 1] = c_[n - 2] + 3.0 * d_[n - 2] * h[n - 2];
  d_[n - 1] = d_[n - 2];
}

int CubicSpline::find_segment(double t) const {
  const int n = static_cast<int>(x_.size());
  if (t <= x_.front()) return 0;
  if (t >= x_.back()) return n - 2;
  int i = static_cast<int>(std::upper_bound(x_.begin(), x_.end(), t) -
                           x_.begin()) - 1;
  return std::clamp(i, 0, n - 2);
}

double CubicSpline::value(double t) const {
  const int i = find_segment(t);
  const double u = t - x_[i];
  return y_[i] + u * (b_[i] + u * (c_[i] + u * d_[i]));
}

double CubicSpline::deriv(double t) const {
  const int i = find_segment(t);
  const double u = t - x_[i];
  return b_[i] + u * (2.0 * c_[i] + 3.0 * u * d_[i]);
}

double CubicSpline::deriv2(double t) const {
  const int i = find_segment(t);
  const double u = t - x_[i];
  return 2.0 * c_[i] + 6.0 * u * d_[i];
}

// ---------------------------------------------------------------------------
// Root refinement
// ---------------------------------------------------------------------------

double refine_root(const std::function<double(double)>& f, double lo, double hi,
                   double tol) {
  if (!(lo < hi)) throw ParamError("refine_root: invalid bracket");
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw NoRoot("refine_root: no sign change on the bracket");
  boost::uintmax_t max_iter = 200;
  auto stop = [tol](double a, double b) { return std::abs(b - a) <= tol; };
  auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, stop, max_iter);
  return 0.5 * (r.first + r.second);
}

// ---------------------------------------------------------------------------
// Adaptive Dormand-Prince stepping loop
// ---------------------------------------------------------------------------

OdeOutcome integrate_ode(const std::function<double(double, double)>& rhs,
                         double& x, double& y, double x1, const OdeControl& ctrl,
                         const std::function<bool(double, double)>& stop,
                         const std::function<void(double, double)>& observe) {
  namespace odeint = boost::numeric::odeint;
  using state = std::array<double, 1>;
  using stepper_t = odeint::runge_kutta_dopri5<state>;
  auto stepper = odeint::make_controlled<stepper_t>(ctrl.abs_tol, ctrl.rel_tol);

  auto system = [&rhs](const state& s, state& dsdt, double t) {
    dsdt[0] = rhs(t, s[0]);
  };

  state s{y};
  double h = std::min(ctrl.max_step, x1 - x);
  if (observe) observe(x, s[0]);
  if (stop && stop(x, s[0])) {
    y = s[0];
    return OdeOutcome::stopped;
  }

  while (x < x1) {
    // A remaining gap below the step floor is roundoff from landing on grid
    // nodes, not a controller failure: snap to the target.
    if (x1 - x < ctrl.min_step) {
      x = x1;
      break;
    }
    h = std::min({h, ctrl.max_step, x1 - x});
    if (h < ctrl.min_step) {
      y = s[0];
      return OdeOutcome::step_floor;
    }
    odeint::controlled_step_result res;
    int rejections = 0;
    do {
      res = stepper.try_step(system, s, x, h);
      if (res == odeint::fail) {
        if (++rejections > 200 || h < ctrl.min_step) {
          y = s[0];
          return OdeOutcome::step_floor;
        }
      }
    } while (res == odeint::fail);
    if (observe) observe(x, s[0]);
    if (stop && stop(x, s[0])) {
      y = s[0];
      return OdeOutcome::stopped;
    }
  }
  y = s[0];
  return OdeOutcome::reached_end;
}

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

double unit_sphere_area(int n) {
  if (n < 2) throw ParamError("unit_sphere_area: dimension must be >= 2");
  const double pi = 3.14159265358979323846;
  return 2.0 * std::pow(pi, n / 2.0) / std::tgamma(n / 2.0);
}

}  // namespace solab
