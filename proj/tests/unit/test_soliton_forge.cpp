// solab: unit tests for soliton construction, residual validation, the
// builtin library, and export/import. Expected numbers are frozen closed
// forms (derivations noted inline).
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "solab/errors.hpp"
#include "solab/soliton_forge.hpp"

using namespace solab;

namespace {

RadialField round_sphere_factor() {
  return RadialField::analytic([](double r) { return (1.0 + r * r) / 2.0; },
                               [](double r) { return r; },
                               [](double) { return 1.0; }, 0.0, 1e6);
}

constexpr double kInvSqrt3 = 0.57735026918962584;  // 1/sqrt(3)

}  // namespace

TEST_CASE("gaussian builtin certifies at the 1e-10 level") {
  const SolitonPtr g = builtin_soliton("gaussian", {});
  CHECK(g->name == "gaussian");
  CHECK(g->provenance == Provenance::builtin);
  CHECK(g->background == BackgroundKind::shrinking);
  CHECK(g->metric.n == 3);
  CHECK(g->T == 1.0);
  const SolitonDiagnostics& d = g->diagnostics;
  CHECK(d.max_diag <= 1e-10);
  CHECK(d.max_offdiag <= 1e-10);
  CHECK(d.max_w_eq <= 1e-10);
  CHECK(d.max_hamilton <= 1e-10);
  CHECK(std::fabs(d.c_star) <= 1e-12);  // S + |grad f|^2 - f vanishes exactly
  CHECK(d.min_S >= -1e-12);
}

TEST_CASE("gaussian lambda inference returns the constant 1/2") {
  const SolitonPtr g = builtin_soliton("gaussian", {});
  for (double r : {0.3, 1.0, 2.5, 7.0}) {
    CHECK(infer_lambda(g->metric, g->f, r) ==
          doctest::Approx(0.5).epsilon(1e-12));
  }
  // Removable origin limit: F (2n-2) F'' + F^2 f'' = 0 + 1 * 0.5.
  CHECK(infer_lambda(g->metric, g->f, 0.0, true) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(infer_lambda(g->metric, g->f, 0.0), DomainError);
}

TEST_CASE("cap_projected reproduces the displayed lambda and potential") {
  BuiltinParams p;
  p.eps = 0.5;
  const SolitonPtr cap = builtin_soliton("cap_projected", p);
  CHECK(cap->eps.has_value());
  CHECK(*cap->eps == 0.5);
  // lambda(r) = 2 - (4/3)(r^2 - 1) at eps = 1/2, n = 3.
  const auto lam = [](double r) { return 2.0 - 4.0 / 3.0 * (r * r - 1.0); };
  for (double r : {0.0, 0.5, 1.0}) {
    CHECK(std::fabs(cap->lambda.value_at(r) - lam(r)) <=
          1e-8 * std::fabs(lam(r)));
  }
  // f(0) = K = eps (n-1) / (eps^2 - 1) = -4/3.
  CHECK(cap->f.value_at(0.0) ==
        doctest::Approx(-4.0 / 3.0).epsilon(1e-12));
  CHECK(cap->f.value_at(1.0) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("cap_projected frozen residuals at r = 0.8") {
  const SolitonPtr cap = builtin_soliton("cap_projected", {});
  const ResidualVector rv = soliton_residuals(*cap, 0.8);
  // Diagonal gap between the displayed lambda and the ODE-inferred one:
  // closed form 192/1025.
  CHECK(std::fabs(rv.diag - 0.18731707317073171) < 1e-10);
  CHECK(std::fabs(rv.offdiag - 1.8284226489609703) < 1e-9);
  // w' enters S; the solved w keeps the re-substituted equation at round-off.
  CHECK(rv.w_eq < 1e-10);
  CHECK(std::fabs(rv.hamilton - 2.8056750700366356) < 1e-8);
}

TEST_CASE("cap_projected Hamilton normalization and S floor are frozen") {
  const SolitonPtr cap = builtin_soliton("cap_projected", {});
  CHECK(std::fabs(cap->diagnostics.c_star - 3.9496909497517073) < 1e-8);
  // The projected fixture is not S >= 0: the grid minimum is frozen instead.
  CHECK(std::fabs(cap->diagnostics.min_S - -89.281795332540044) < 1e-5);
  CHECK(std::fabs(hamilton_normalization(*cap) - cap->diagnostics.c_star) <
        1e-14);
}

TEST_CASE("cap_projected auxiliary scalar: frozen slope and monotonicity") {
  const SolitonPtr cap = builtin_soliton("cap_projected", {});
  // Frozen reference value of w'(0.8) for w'(1) = 1.
  CHECK(std::fabs(cap->w.d1_at(0.8) - 0.95614398731597174) < 1e-9);
  CHECK(cap->w.value_at(1.0) == doctest::Approx(0.0).epsilon(1e-12));
  for (int i = 0; i <= 50; ++i) {
    const double r = 0.1 + 1.9 * i / 50.0;
    CHECK(cap->w.d1_at(r) > 0.0);
  }
}

TEST_CASE("solve_w on the gaussian background has the closed form") {
  const SolitonPtr g = builtin_soliton("gaussian", {});
  const RadialField w =
      solve_w(g->metric, g->f, Interval{0.05, 8.0}, Anchor{1.0, 0.0}, 1.0);
  // b = 2/r - r/2 integrates to w'(r) = r^{-2} exp((r^2-1)/4); at r = 2 this
  // is (1/4) e^{3/4}.
  CHECK(std::fabs(w.d1_at(2.0) - 0.52925000415316867) < 1e-9);
  CHECK(std::fabs(w.d1_at(1.0) - 1.0) < 1e-10);
  CHECK(w.value_at(1.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("solve_w zero slope short-circuits to a constant") {
  const SolitonPtr g = builtin_soliton("gaussian", {});
  const RadialField w =
      solve_w(g->metric, g->f, Interval{0.1, 5.0}, Anchor{1.0, 0.7}, 0.0);
  CHECK(w.is_constant());
  CHECK(w.value_at(3.0) == 0.7);
}

TEST_CASE("solve_potential on the cap data recovers the algebraic slope") {
  const auto metric = ConformalRadialMetric::make(3, round_sphere_factor());
  const SolitonPtr cap = builtin_soliton("cap_projected", {});
  // Domain stops short of r = 1 where both numerator and denominator of the
  // algebraic slope vanish.
  const double anchor_v = -1.2533430113219615;  // (8/3) ln(0.625)
  const RadialField f = solve_potential(metric, cap->lambda,
                                        Interval{0.05, 0.9999},
                                        Anchor{0.5, anchor_v});
  // Slope closed form: f'(r) = 16 r / (3 (1 + r^2)).
  CHECK(std::fabs(f.d1_at(0.5) - 2.1333333333333333) < 1e-12);
  CHECK(f.value_at(0.5) == doctest::Approx(anchor_v).epsilon(1e-13));
  // Antiderivative (8/3) ln((1+r^2)/2) evaluated near the equator.
  CHECK(std::fabs(f.value_at(0.9999) - -0.00026666666622218889) < 1e-8);
}

TEST_CASE("solve_potential detects the singular coefficient") {
  const auto metric = ConformalRadialMetric::make(3, round_sphere_factor());
  const RadialField lam = RadialField::constant(2.0, 0.0, 1e6);
  try {
    solve_potential(metric, lam, Interval{0.5, 1.5}, Anchor{0.6, 0.0});
    FAIL("expected SingularCoefficient");
  } catch (const SingularCoefficient& e) {
    // 1/r = F'/F = 2r/(1+r^2) exactly at r = 1.
    CHECK(std::fabs(e.r_star() - 1.0) <= 1e-6);
  }
}

TEST_CASE("infer_lambda round-trips the solved potential") {
  const auto metric = ConformalRadialMetric::make(3, round_sphere_factor());
  const SolitonPtr cap = builtin_soliton("cap_projected", {});
  const RadialField f = solve_potential(metric, cap->lambda,
                                        Interval{0.05, 0.9999},
                                        Anchor{0.5, 0.0});
  for (double r : {0.1, 0.3, 0.62, 0.9}) {
    CHECK(std::fabs(infer_lambda(metric, f, r) - cap->lambda.value_at(r)) <
          1e-9);
  }
}

TEST_CASE("soliton_residuals matches the diagonal identity definition") {
  // The diagonal residual is |Ric_tan + Hess_tan f - lambda| by construction;
  // for the gaussian every term is closed-form.
  const SolitonPtr g = builtin_soliton("gaussian", {});
  const ResidualVector rv = soliton_residuals(*g, 1.3);
  CHECK(rv.diag <= 1e-14);
  CHECK(rv.offdiag <= 1e-14);
  CHECK(rv.w_eq <= 1e-14);
  CHECK(rv.hamilton <= 1e-13);
}

TEST_CASE("stereographic height map") {
  CHECK(std::fabs(radius_to_height(kInvSqrt3) - 0.5) <= 1e-12);
  CHECK(std::fabs(height_to_radius(0.5) - kInvSqrt3) <= 1e-12);
  CHECK(height_to_radius(1.0) == 0.0);
  CHECK(radius_to_height(0.0) == 1.0);
  for (double h : {-0.9, -0.2, 0.1, 0.77}) {
    CHECK(std::fabs(radius_to_height(height_to_radius(h)) - h) < 1e-14);
  }
  CHECK_THROWS_AS(height_to_radius(-1.0), ParamError);
  CHECK_THROWS_AS(height_to_radius(1.5), ParamError);
  CHECK_THROWS_AS(radius_to_height(-0.1), ParamError);
}

TEST_CASE("builtin guards") {
  CHECK_THROWS_AS(builtin_soliton("torus", {}), UnknownName);
  BuiltinParams bad;
  bad.eps = 1.5;
  CHECK_THROWS_AS(builtin_soliton("cap_projected", bad), ParamError);
  bad.eps = 0.5;
  bad.n = 2;
  CHECK_THROWS_AS(builtin_soliton("gaussian", bad), ParamError);
}

TEST_CASE("flat fixture is degenerate and static") {
  const SolitonPtr flat = make_flat_fixture(3);
  CHECK(flat->background == BackgroundKind::static_fixture);
  CHECK(flat->metric.F.is_constant());
  CHECK(flat->f.value_at(5.0) == 0.0);
  CHECK(flat->lambda.value_at(5.0) == 0.0);
  CHECK(flat->diagnostics.max_hamilton <= 1e-14);
  CHECK(flat->psi(1.7, 0.3) == 1.7);
}

TEST_CASE("export/import round trip preserves the gaussian") {
  const SolitonPtr g = builtin_soliton("gaussian", {});
  std::stringstream table;
  export_soliton(*g, table);
  const SolitonPtr back = import_soliton(table);
  CHECK(back->provenance == Provenance::user);
  CHECK(back->name == "imported");
  CHECK(back->metric.n == 3);
  CHECK(back->T == 1.0);
  CHECK(!back->has_closed_diffeo());
  for (double r : {0.5, 1.0, 2.2, 6.0, 9.5}) {
    CHECK(std::fabs(back->metric.F.value_at(r) - 1.0) < 1e-12);
    CHECK(std::fabs(back->f.value_at(r) - r * r / 4.0) < 1e-10);
    CHECK(std::fabs(back->w.value_at(r)) < 1e-12);
    CHECK(std::fabs(back->lambda.value_at(r) - 0.5) < 1e-12);
  }
  CHECK(back->diagnostics.max_diag <= 1e-8);
  CHECK(back->diagnostics.max_hamilton <= 1e-8);
}

TEST_CASE("import rejects malformed tables") {
  {
    std::stringstream bad("not a header\n");
    CHECK_THROWS_AS(import_soliton(bad), ParseError);
  }
  {
    std::stringstream bad(
        "# soliton n=3 T=1 c=1 eps=none\n"
        "0.1 1 0 0 0.5\n"
        "0.2 1 0 0 0.5\n"
        "0.15 1 0 0 0.5\n"
        "0.4 1 0 0 0.5\n");
    try {
      import_soliton(bad);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 4);  // the non-increasing radius row
    }
  }
  {
    std::stringstream bad(
        "# soliton n=3 T=1 c=1 eps=none\n"
        "0.1 1 0 0 0.5\n"
        "0.2 1 0 0 0.5\n"
        "0.3 1 0 0 0.5\n");
    CHECK_THROWS_AS(import_soliton(bad), ParseError);  // fewer than 4 rows
  }
}

TEST_CASE("solver guards") {
  const SolitonPtr g = builtin_soliton("gaussian", {});
  CHECK_THROWS_AS(
      solve_potential(g->metric, g->lambda, Interval{0.0, 1.0}, Anchor{0.5, 0.0}),
      ParamError);
  CHECK_THROWS_AS(
      solve_potential(g->metric, g->lambda, Interval{0.5, 1.0}, Anchor{0.1, 0.0}),
      DomainError);
  CHECK_THROWS_AS(
      solve_w(g->metric, g->f, Interval{2.0, 1.0}, Anchor{1.5, 0.0}, 1.0),
      ParamError);
}

TEST_CASE("validation grid median is exact for an even sample count") {
  // 500 grid points: the median is the mean of the two middle values; the
  // gaussian collapses them both to 0.
  const SolitonPtr g = builtin_soliton("gaussian", {});
  CHECK(g->val_points == 500);
  CHECK(std::fabs(hamilton_normalization(*g)) <= 1e-12);
}
