// solab: soliton_forge implementation — ODE solves by integrating factor and
// Richardson-controlled quadrature, residual validation, builtin library,
// and the plain-text exchange format.
#include "solab/soliton_forge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

#include "solab/errors.hpp"

namespace solab {

namespace {

constexpr int kDenseGridPanels = 4096;  // cumulative-quadrature resolution

// Algebraic f' of the first soliton equation.
double potential_slope(const ConformalRadialMetric& metric,
                       const RadialField& lambda, double r) {
  const double Fv = metric.F.value_at(r);
  const double F1 = metric.F.d1_at(r);
  const double F2 = metric.F.d2_at(r);
  const int n = metric.n;
  const double num = lambda.value_at(r) / (Fv * Fv) -
                     (2 * n - 3) * F1 / (r * Fv) - F2 / Fv +
                     (n - 1) * (F1 / Fv) * (F1 / Fv);
  const double den = 1.0 / r - F1 / Fv;
  return num / den;
}

// 1/r - F'/F, the coefficient whose zero makes the algebraic solve singular.
double singular_coefficient(const ConformalRadialMetric& metric, double r) {
  return 1.0 / r - metric.F.d1_at(r) / metric.F.value_at(r);
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
  return g;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  if (n == 0) throw ParamError("median_of: empty sample");
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

// ---------------------------------------------------------------------------
// solve_potential
// ---------------------------------------------------------------------------

RadialField solve_potential(const ConformalRadialMetric& metric,
                            const RadialField& lambda, Interval domain,
                            Anchor anchor) {
  if (!(domain.lo > 0.0) || !(domain.hi > domain.lo))
    throw ParamError("solve_potential: need 0 < lo < hi");
  if (anchor.r0 < domain.lo || anchor.r0 > domain.hi)
    throw DomainError("solve_potential: anchor outside domain");

  // Scan for a strictly interior zero of 1/r - F'/F (midpoint nodes, so the
  // endpoints themselves are allowed to be singular).
  {
    const int scan = 2048;
    double prev_r = domain.lo + 0.5 * (domain.hi - domain.lo) / scan;
    double prev_v = singular_coefficient(metric, prev_r);
    for (int i = 1; i < scan; ++i) {
      const double r = domain.lo + (i + 0.5) * (domain.hi - domain.lo) / scan;
      const double v = singular_coefficient(metric, r);
      if (prev_v == 0.0 || (prev_v > 0.0) != (v > 0.0)) {
        const double r_star =
            prev_v == 0.0 ? prev_r
                          : refine_root(
                                [&](double x) {
                                  return singular_coefficient(metric, x);
                                },
                                prev_r, r, 1e-12);
        throw SingularCoefficient(
            r_star, "solve_potential: coefficient 1/r - F'/F vanishes at r = " +
                        format_g17(r_star));
      }
      prev_r = r;
      prev_v = v;
    }
  }

  // Captured by value: the returned field must not dangle when the caller's
  // metric/lambda objects move or die (fields are shared-ptr handles).
  auto fprime = [F = metric.F, n = metric.n, alpha = metric.alpha_n,
                 lam = lambda](double r) {
    ConformalRadialMetric m{n, F, alpha};
    return potential_slope(m, lam, r);
  };

  // Antiderivative on a dense grid, then shift to honor the anchor.
  const int points = kDenseGridPanels + 1;
  std::vector<double> grid = uniform_grid(domain.lo, domain.hi, points);
  std::vector<double> cum =
      cumulative_simpson(fprime, domain.lo, domain.hi, points);
  auto value_spline = std::make_shared<CubicSpline>(grid, cum);
  const double offset = anchor.v0 - value_spline->value(anchor.r0);

  return RadialField::analytic(
      [value_spline, offset](double r) { return value_spline->value(r) + offset; },
      fprime,
      [fprime, domain](double r) {
        const double h = std::max(1e-6, 1e-6 * std::abs(r));
        double a = std::max(r - h, domain.lo);
        double b = std::min(r + h, domain.hi);
        return (fprime(b) - fprime(a)) / (b - a);
      },
      domain.lo, domain.hi);
}

// ---------------------------------------------------------------------------
// infer_lambda
// ---------------------------------------------------------------------------

double infer_lambda(const ConformalRadialMetric& metric, const RadialField& f,
                    double r, bool origin_limit) {
  if (r < 0.0) throw DomainError("infer_lambda: negative radius");
  const int n = metric.n;
  const double Fv = metric.F.value_at(r);
  const double F2 = metric.F.d2_at(r);
  if (r == 0.0) {
    if (!origin_limit)
      throw DomainError("infer_lambda: r = 0 requires the removable-limit flag");
    // F'/r -> F'', f'/r -> f'', mixed F' f' terms vanish.
    return Fv * (2.0 * n - 2.0) * F2 + Fv * Fv * f.d2_at(0.0);
  }
  const double F1 = metric.F.d1_at(r);
  const double f1 = f.d1_at(r);
  return Fv * Fv *
         ((2 * n - 3) * F1 / (r * Fv) + f1 / r + F2 / Fv -
          (n - 1) * (F1 / Fv) * (F1 / Fv) - (F1 / Fv) * f1);
}

// ---------------------------------------------------------------------------
// solve_w
// ---------------------------------------------------------------------------

RadialField solve_w(const ConformalRadialMetric& metric, const RadialField& f,
                    Interval domain, Anchor anchor, double slope) {
  if (!(domain.lo > 0.0) || !(domain.hi > domain.lo))
    throw ParamError("solve_w: need 0 < lo < hi");
  if (anchor.r0 < domain.lo || anchor.r0 > domain.hi)
    throw DomainError("solve_w: anchor outside domain");
  if (slope == 0.0)
    return RadialField::constant(anchor.v0, domain.lo, domain.hi);

  const int n = metric.n;
  // b(r) = (n-1)/r - (n-2) F'/F - f'; the ODE is w'' + b w' = 0. F and f are
  // captured by value so the returned field owns everything it needs.
  auto b = [F = metric.F, ff = f, n](double r) {
    return (n - 1) / r - (n - 2) * F.d1_at(r) / F.value_at(r) - ff.d1_at(r);
  };

  const int points = kDenseGridPanels + 1;
  std::vector<double> grid = uniform_grid(domain.lo, domain.hi, points);
  std::vector<double> cum_b =
      cumulative_simpson(b, domain.lo, domain.hi, points);
  auto b_integral = std::make_shared<CubicSpline>(grid, cum_b);
  const double at_anchor = b_integral->value(anchor.r0);

  auto wprime = [b_integral, at_anchor, slope](double r) {
    return slope * std::exp(-(b_integral->value(r) - at_anchor));
  };

  std::vector<double> cum_w =
      cumulative_simpson(wprime, domain.lo, domain.hi, points);
  auto w_spline = std::make_shared<CubicSpline>(grid, cum_w);
  const double offset = anchor.v0 - w_spline->value(anchor.r0);

  return RadialField::analytic(
      [w_spline, offset](double r) { return w_spline->value(r) + offset; },
      wprime,
      // The ODE itself supplies w'' = -b w'; using it keeps the re-substituted
      // equation residual at the round-off floor.
      [b, wprime](double r) { return -b(r) * wprime(r); }, domain.lo,
      domain.hi);
}

// ---------------------------------------------------------------------------
// Residuals and validation
// ---------------------------------------------------------------------------

ResidualVector soliton_residuals(const SolitonData& data, double r) {
  const ConformalRadialMetric& m = data.metric;
  const int n = m.n;
  const double Fv = m.F.value_at(r);
  const double F1 = m.F.d1_at(r);
  const double F2 = m.F.d2_at(r);
  const double f1 = data.f.d1_at(r);
  const double f2 = data.f.d2_at(r);
  const double w1 = data.w.d1_at(r);
  const double lam = data.lambda.value_at(r);

  ResidualVector out;

  // (i) tangential slot of Ric + Hess f - alpha dw (x) dw - lambda g; the
  // dw (x) dw term has no tangential component for radial w.
  const RicciPair ric = conformal_ricci(m, r);
  const HessianPair hess = hessian_radial(m, data.f, r);
  out.diag = std::abs(ric.tangential + hess.tangential - lam);

  // (ii) off-diagonal bracket.
  out.offdiag = std::abs((n - 2) * (F2 / Fv - F1 / (r * Fv)) + f2 - f1 / r +
                         2.0 * (F1 / Fv) * f1 - m.alpha_n * w1 * w1);

  // (iii) w-equation: Delta_g w - <grad f, grad w>_g.
  const double lap_w = laplacian_radial(m, data.w, r);
  out.w_eq = std::abs(lap_w - Fv * Fv * f1 * w1);

  // (iv) Hamilton-type identity after additive normalization.
  const double S = s_scalar(m, data.w, r);
  out.hamilton = std::abs(S + Fv * Fv * f1 * f1 - data.f.value_at(r) -
                          data.diagnostics.c_star);
  return out;
}

double hamilton_normalization(const SolitonData& data) {
  std::vector<double> samples;
  samples.reserve(data.val_points);
  for (double r : uniform_grid(data.val_lo, data.val_hi, data.val_points)) {
    const double S = s_scalar(data.metric, data.w, r);
    const double g2 = grad_norm_sq(data.metric, data.f, r);
    samples.push_back(S + g2 - data.f.value_at(r));
  }
  return median_of(std::move(samples));
}

void validate_soliton(SolitonData& data) {
  if (data.val_points < 2) throw ParamError("validate_soliton: empty grid");
  data.diagnostics.c_star = hamilton_normalization(data);
  SolitonDiagnostics d = data.diagnostics;
  d.max_diag = d.max_offdiag = d.max_w_eq = d.max_hamilton = 0.0;
  d.min_S = std::numeric_limits<double>::infinity();
  for (double r : uniform_grid(data.val_lo, data.val_hi, data.val_points)) {
    const ResidualVector rv = soliton_residuals(data, r);
    d.max_diag = std::max(d.max_diag, rv.diag);
    d.max_offdiag = std::max(d.max_offdiag, rv.offdiag);
    d.max_w_eq = std::max(d.max_w_eq, rv.w_eq);
    d.max_hamilton = std::max(d.max_hamilton, rv.hamilton);
    d.min_S = std::min(d.min_S, s_scalar(data.metric, data.w, r));
  }
  data.diagnostics = d;
}

// ---------------------------------------------------------------------------
// Builtins
// ---------------------------------------------------------------------------

namespace {

constexpr double kFieldHi = 1e6;  // analytic fields live on [0, kFieldHi]

SolitonPtr finish(SolitonData data) {
  validate_soliton(data);
  return std::make_shared<const SolitonData>(std::move(data));
}

SolitonPtr make_gaussian(int n) {
  if (n < 3) throw ParamError("gaussian: dimension must be >= 3");
  SolitonData d;
  d.metric = ConformalRadialMetric::make(
      n, RadialField::constant(1.0, 0.0, kFieldHi));
  d.f = RadialField::analytic([](double r) { return r * r / 4.0; },
                              [](double r) { return r / 2.0; },
                              [](double) { return 0.5; }, 0.0, kFieldHi);
  d.w = RadialField::constant(0.0, 0.0, kFieldHi);
  d.lambda = RadialField::constant(0.5, 0.0, kFieldHi);
  d.T = 1.0;
  d.c = 1;
  d.provenance = Provenance::builtin;
  d.background = BackgroundKind::shrinking;
  d.name = "gaussian";
  d.val_lo = 0.1;
  d.val_hi = 10.0;
  d.val_points = 500;
  const double T = d.T;
  d.psi = [T](double r, double t) { return r / std::sqrt(T - t); };
  d.psi_prime = [T](double, double t) { return 1.0 / std::sqrt(T - t); };
  d.psi_inv = [T](double rho, double t) { return rho * std::sqrt(T - t); };
  return finish(std::move(d));
}

SolitonPtr make_cap(const BuiltinParams& p) {
  if (p.n < 3) throw ParamError("cap_projected: dimension must be >= 3");
  if (!(p.eps > 0.0) || !(p.eps < 1.0))
    throw ParamError("cap_projected: eps must lie in (0, 1)");
  const int n = p.n;
  const double eps = p.eps;
  const double K = eps * (n - 1) / (eps * eps - 1.0);  // negative

  SolitonData d;
  d.metric = ConformalRadialMetric::make(
      n, RadialField::analytic([](double r) { return (1.0 + r * r) / 2.0; },
                               [](double r) { return r; },
                               [](double) { return 1.0; }, 0.0, kFieldHi));
  d.f = RadialField::analytic(
      [K](double r) { return K * (1.0 - r * r) / (1.0 + r * r); },
      [K](double r) {
        const double q = 1.0 + r * r;
        return -4.0 * K * r / (q * q);
      },
      [K](double r) {
        const double q = 1.0 + r * r;
        return -4.0 * K * (1.0 - 3.0 * r * r) / (q * q * q);
      },
      0.0, kFieldHi);
  const double slope_l = 2.0 * (n - 1) * eps / (eps * eps - 1.0);
  d.lambda = RadialField::analytic(
      [n, eps](double r) {
        return (n - 1) + eps / (eps * eps - 1.0) * (n - 1) * (r * r - 1.0);
      },
      [slope_l](double r) { return slope_l * r; },
      [slope_l](double) { return slope_l; }, 0.0, kFieldHi);
  d.w = solve_w(d.metric, d.f, Interval{0.05, 8.0},
                Anchor{p.w_anchor_r, p.w_anchor_v}, p.w_slope);
  d.T = 1.0;
  d.c = 1;
  d.eps = eps;
  d.provenance = Provenance::builtin;
  d.background = BackgroundKind::shrinking;
  d.name = "cap_projected";
  d.val_lo = 0.1;
  d.val_hi = 2.0;
  d.val_points = 500;
  // dphi/dt = F^2 f'/(T-t) with F^2 f' = -K r integrates in closed form.
  const double T = d.T;
  d.psi = [T, K](double r, double t) { return r * std::pow(T - t, K); };
  d.psi_prime = [T, K](double, double t) { return std::pow(T - t, K); };
  d.psi_inv = [T, K](double rho, double t) {
    return rho * std::pow(T - t, -K);
  };
  return finish(std::move(d));
}

}  // namespace

SolitonPtr make_flat_fixture(int n) {
  if (n < 3) throw ParamError("flat fixture: dimension must be >= 3");
  SolitonData d;
  d.metric = ConformalRadialMetric::make(
      n, RadialField::constant(1.0, 0.0, kFieldHi));
  d.f = RadialField::constant(0.0, 0.0, kFieldHi);
  d.w = RadialField::constant(0.0, 0.0, kFieldHi);
  d.lambda = RadialField::constant(0.0, 0.0, kFieldHi);
  d.T = 1.0;
  d.c = 1;
  d.provenance = Provenance::builtin;
  d.background = BackgroundKind::static_fixture;
  d.name = "flat";
  d.val_lo = 0.1;
  d.val_hi = 10.0;
  d.val_points = 500;
  d.psi = [](double r, double) { return r; };
  d.psi_prime = [](double, double) { return 1.0; };
  d.psi_inv = [](double rho, double) { return rho; };
  return finish(std::move(d));
}

SolitonPtr builtin_soliton(const std::string& name,
                           const BuiltinParams& params) {
  if (name == "gaussian") return make_gaussian(params.n);
  if (name == "cap_projected") return make_cap(params);
  if (name == "flat") return make_flat_fixture(params.n);
  throw UnknownName("builtin_soliton: unknown soliton '" + name + "'");
}

// ---------------------------------------------------------------------------
// Stereographic height map
// ---------------------------------------------------------------------------

double height_to_radius(double h) {
  if (!(h > -1.0) || h > 1.0)
    throw ParamError("height_to_radius: h must lie in (-1, 1]");
  return std::sqrt((1.0 - h) / (1.0 + h));
}

double radius_to_height(double r) {
  if (r < 0.0) throw ParamError("radius_to_height: r must be >= 0");
  return (1.0 - r * r) / (1.0 + r * r);
}

// ---------------------------------------------------------------------------
// Export / import
// ---------------------------------------------------------------------------

void export_soliton(const SolitonData& data, std::ostream& os, int rows) {
  if (rows < 4) throw ParamError("export_soliton: need at least 4 rows");
  os << "# soliton n=" << data.metric.n << " T=" << format_g17(data.T)
     << " c=" << data.c << " eps=";
  if (data.eps.has_value())
    os << format_g17(*data.eps);
  else
    os << "none";
  os << "\n";
  for (int i = 0; i < rows; ++i) {
    const double r =
        data.val_lo + (data.val_hi - data.val_lo) * static_cast<double>(i) /
                          (rows - 1);
    os << format_g17(r) << ' ' << format_g17(data.metric.F.value_at(r)) << ' '
       << format_g17(data.f.value_at(r)) << ' '
       << format_g17(data.w.value_at(r)) << ' '
       << format_g17(data.lambda.value_at(r)) << "\n";
  }
}

void export_soliton_file(const SolitonData& data, const std::string& path,
                         int rows) {
  std::ofstream os(path);
  if (!os) throw Error("export_soliton_file: cannot open " + path);
  export_soliton(data, os, rows);
}

SolitonPtr import_soliton(std::istream& is) {
  std::string header;
  if (!std::getline(is, header))
    throw ParseError(1, "import_soliton: empty input");
  int n = 0, c = 0;
  double T = 0.0;
  char epsbuf[64] = {0};
  if (std::sscanf(header.c_str(), "# soliton n=%d T=%lf c=%d eps=%63s", &n, &T,
                  &c, epsbuf) != 4)
    throw ParseError(1, "import_soliton: malformed header");
  if (n < 3 || !(T > 0.0))
    throw ParseError(1, "import_soliton: invalid header values");
  std::optional<double> eps;
  if (std::string(epsbuf) != "none") {
    try {
      eps = std::stod(epsbuf);
    } catch (const std::exception&) {
      throw ParseError(1, "import_soliton: malformed eps");
    }
  }

  std::vector<double> r, F, f, w, lam;
  std::string line;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    double a, b2, c2, d2, e2;
    if (!(ls >> a >> b2 >> c2 >> d2 >> e2))
      throw ParseError(line_no, "import_soliton: malformed row");
    if (!r.empty() && a <= r.back())
      throw ParseError(line_no, "import_soliton: radii not increasing");
    r.push_back(a);
    F.push_back(b2);
    f.push_back(c2);
    w.push_back(d2);
    lam.push_back(e2);
  }
  if (r.size() < 4) throw ParseError(line_no, "import_soliton: need >= 4 rows");

  SolitonData d;
  d.metric =
      ConformalRadialMetric::make(n, RadialField::from_samples(r, F));
  d.f = RadialField::from_samples(r, f);
  d.w = RadialField::from_samples(r, w);
  d.lambda = RadialField::from_samples(r, lam);
  d.T = T;
  d.c = c;
  d.eps = eps;
  d.provenance = Provenance::user;
  d.background = BackgroundKind::shrinking;
  d.name = "imported";
  d.val_lo = r.front();
  d.val_hi = r.back();
  d.val_points = 500;
  return finish(std::move(d));
}

SolitonPtr import_soliton_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("import_soliton_file: cannot open " + path);
  return import_soliton(is);
}

}  // namespace solab
