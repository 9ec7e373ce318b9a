// solab: RadialField implementation.
#include "solab/radial_field.hpp"

#include <cmath>
#include <utility>

#include "solab/errors.hpp"

namespace solab {

struct RadialField::Impl {
  FieldKind kind = FieldKind::analytic;
  bool constant = false;
  double lo = 0.0, hi = 0.0;
  Fn value, d1, d2;      // analytic path
  CubicSpline spline;    // sampled path
};

RadialField RadialField::analytic(Fn value, Fn d1, Fn d2, double lo, double hi) {
  if (!value || !d1) throw ParamError("RadialField::analytic: value and d1 required");
  if (!(lo < hi)) throw ParamError("RadialField::analytic: empty domain");
  auto impl = std::make_shared<Impl>();
  impl->kind = FieldKind::analytic;
  impl->lo = lo;
  impl->hi = hi;
  impl->value = std::move(value);
  impl->d1 = std::move(d1);
  impl->d2 = std::move(d2);
  return RadialField(std::move(impl));
}

RadialField RadialField::constant(double c, double lo, double hi) {
  auto f = analytic([c](double) { return c; }, [](double) { return 0.0; },
                    [](double) { return 0.0; }, lo, hi);
  const_cast<Impl*>(f.impl_.get())->constant = true;
  return f;
}

RadialField RadialField::from_samples(std::vector<double> r,
                                      std::vector<double> v) {
  if (r.size() < 4)
    throw ParamError("RadialField::from_samples: need at least 4 nodes");
  auto impl = std::make_shared<Impl>();
  impl->kind = FieldKind::sampled_spline;
  impl->lo = r.front();
  impl->hi = r.back();
  impl->spline = CubicSpline(std::move(r), std::move(v));
  return RadialField(std::move(impl));
}

void RadialField::require_in_domain(double r) const {
  if (!impl_) throw ParamError("RadialField: empty field");
  const double slack = 1e-12 * std::max(1.0, std::abs(impl_->hi));
  if (r < impl_->lo - slack || r > impl_->hi + slack)
    throw DomainError("RadialField: r = " + format_g17(r) +
                      " outside [" + format_g17(impl_->lo) + ", " +
                      format_g17(impl_->hi) + "]");
}

double RadialField::value_at(double r) const {
  require_in_domain(r);
  return impl_->kind == FieldKind::analytic ? impl_->value(r)
                                            : impl_->spline.value(r);
}

double RadialField::d1_at(double r) const {
  require_in_domain(r);
  return impl_->kind == FieldKind::analytic ? impl_->d1(r)
                                            : impl_->spline.deriv(r);
}

double RadialField::d2_at(double r) const {
  require_in_domain(r);
  if (impl_->kind == FieldKind::sampled_spline) return impl_->spline.deriv2(r);
  if (impl_->d2) return impl_->d2(r);
  // Central difference of d1, clamped inside the domain.
  const double h = std::max(1e-6, 1e-6 * std::abs(r));
  double a = r - h, b = r + h;
  if (a < impl_->lo) { a = impl_->lo; }
  if (b > impl_->hi) { b = impl_->hi; }
  return (impl_->d1(b) - impl_->d1(a)) / (b - a);
}

double RadialField::lo() const {
  if (!impl_) throw ParamError("RadialField: empty field");
  return impl_->lo;
}

double RadialField::hi() const {
  if (!impl_) throw ParamError("RadialField: empty field");
  return impl_->hi;
}

FieldKind RadialField::kind() const {
  if (!impl_) throw ParamError("RadialField: empty field");
  return impl_->kind;
}

bool RadialField::is_constant() const {
  if (!impl_) throw ParamError("RadialField: empty field");
  return impl_->constant;
}

}  // namespace solab
