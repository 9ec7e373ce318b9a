// solab: immutable radial scalar fields r -> (value, d1, d2) on an interval,
// backed either by closed-form callables or by a not-a-knot spline through
// samples. All geometry and flow code consumes this one interface.
#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "solab/numerics.hpp"

namespace solab {

enum class FieldKind { analytic, sampled_spline };

class RadialField {
 public:
  using Fn = std::function<double(double)>;

  RadialField() = default;

  // Closed-form field; d2 may be empty, in which case d2_at falls back to a
  // central difference of d1 with step max(1e-6, 1e-6 * r).
  static RadialField analytic(Fn value, Fn d1, Fn d2, double lo, double hi);
  static RadialField constant(double c, double lo, double hi);
  // Spline through (r_i, v_i); r strictly increasing, at least 4 nodes.
  static RadialField from_samples(std::vector<double> r, std::vector<double> v);

  bool valid() const { return static_cast<bool>(impl_); }
  double value_at(double r) const;
  double d1_at(double r) const;
  double d2_at(double r) const;
  double lo() const;
  double hi() const;
  FieldKind kind() const;
  bool is_constant() const;

  // Throws DomainError when r lies outside [lo, hi] beyond a small slack.
  void require_in_domain(double r) const;

 private:
  struct Impl;
  explicit RadialField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace solab
