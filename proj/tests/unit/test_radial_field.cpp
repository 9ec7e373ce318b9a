// solab: unit tests for the immutable radial field abstraction.
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "solab/errors.hpp"
#include "solab/radial_field.hpp"

using namespace solab;

TEST_CASE("analytic field evaluates value and derivatives") {
  const RadialField f = RadialField::analytic(
      [](double r) { return r * r / 4.0; }, [](double r) { return r / 2.0; },
      [](double) { return 0.5; }, 0.0, 10.0);
  CHECK(f.value_at(2.0) == 1.0);
  CHECK(f.d1_at(3.0) == 1.5);
  CHECK(f.d2_at(0.25) == 0.5);
  CHECK(f.kind() == FieldKind::analytic);
  CHECK(!f.is_constant());
  CHECK(f.lo() == 0.0);
  CHECK(f.hi() == 10.0);
}

TEST_CASE("analytic field without explicit d2 falls back to differencing") {
  const RadialField f = RadialField::analytic(
      [](double r) { return std::sin(r); }, [](double r) { return std::cos(r); },
      nullptr, 0.0, 6.0);
  for (double r : {0.5, 1.2, 2.9, 4.4}) {
    CHECK(std::fabs(f.d2_at(r) + std::sin(r)) < 1e-5);
  }
}

TEST_CASE("field evaluation outside the domain is a DomainError") {
  const RadialField f = RadialField::analytic(
      [](double r) { return r; }, [](double) { return 1.0; },
      [](double) { return 0.0; }, 1.0, 2.0);
  CHECK_THROWS_AS(f.value_at(0.5), DomainError);
  CHECK_THROWS_AS(f.d1_at(2.5), DomainError);
  CHECK_NOTHROW(f.value_at(1.0));
  CHECK_NOTHROW(f.value_at(2.0));
}

TEST_CASE("constant fields report is_constant and zero derivatives") {
  const RadialField c = RadialField::constant(3.5, 0.0, 100.0);
  CHECK(c.is_constant());
  CHECK(c.value_at(42.0) == 3.5);
  CHECK(c.d1_at(7.0) == 0.0);
  CHECK(c.d2_at(7.0) == 0.0);
}

TEST_CASE("from_samples interpolates smooth data") {
  std::vector<double> r, v;
  const int m = 1200;
  for (int i = 0; i <= m; ++i) {
    r.push_back(0.1 + 2.9 * i / m);
    v.push_back(std::log(r.back()));
  }
  const RadialField f = RadialField::from_samples(r, v);
  CHECK(f.kind() == FieldKind::sampled_spline);
  for (double x : {0.17, 0.8, 1.33, 2.5, 2.93}) {
    CHECK(std::fabs(f.value_at(x) - std::log(x)) < 1e-8);
    CHECK(std::fabs(f.d1_at(x) - 1.0 / x) < 1e-4);
  }
}

TEST_CASE("from_samples needs at least four nodes") {
  CHECK_THROWS_AS(
      RadialField::from_samples({0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}), ParamError);
}

TEST_CASE("default-constructed field refuses evaluation") {
  RadialField f;
  CHECK(!f.valid());
  CHECK_THROWS_AS(f.value_at(1.0), ParamError);
}

TEST_CASE("derivative consistency at 100 seeded probes") {
  // Central differences of value_at agree with the stored d1; differences of
  // d1_at agree with the stored d2 (relative tolerance 1e-5).
  const double K = -4.0 / 3.0;
  const RadialField f = RadialField::analytic(
      [K](double r) { return K * (1.0 - r * r) / (1.0 + r * r); },
      [K](double r) {
        const double q = 1.0 + r * r;
        return -4.0 * K * r / (q * q);
      },
      [K](double r) {
        const double q = 1.0 + r * r;
        return -4.0 * K * (1.0 - 3.0 * r * r) / (q * q * q);
      },
      0.0, 50.0);
  std::mt19937 rng(24680u);
  std::uniform_real_distribution<double> dist(0.2, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double r = dist(rng);
    const double h = 1e-6 * std::max(1.0, r);
    const double d1_fd = (f.value_at(r + h) - f.value_at(r - h)) / (2.0 * h);
    const double d2_fd = (f.d1_at(r + h) - f.d1_at(r - h)) / (2.0 * h);
    CHECK(std::fabs(d1_fd - f.d1_at(r)) <=
          1e-5 * std::max(1.0, std::fabs(f.d1_at(r))));
    CHECK(std::fabs(d2_fd - f.d2_at(r)) <=
          1e-5 * std::max(1.0, std::fabs(f.d2_at(r))));
  }
}
