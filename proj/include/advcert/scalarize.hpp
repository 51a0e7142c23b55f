#pragma once

#include <limits>

#include "advcert/scalar_field.hpp"

namespace advcert {

/// Gradient norms at or below this are treated as stationary points
/// (the regularity assumption fails at x) instead of being normalized.
inline constexpr double kGradientFloor = 1e-12;

/// Forward/backward pass bookkeeping for the cost comparison between
/// strategies. Owned by one solver run; not thread-shared.
struct PassCounter {
  long forwards = 0;
  long backwards = 0;
};

/// Binary reduction of a multi-class network: either the pairwise margin
/// f_l - f_j or the outer margin f_l - max_{j != l} f_j. Positive on the
/// correctly classified side of the boundary.
class BinaryView : public ScalarField {
 public:
  BinaryView(const Network& net, ScalarSelector sel);

  int dim() const override { return net_->input_dim(); }
  double value(const Vec& x) const override { return select_scalar(*net_, x, sel_); }
  Vec gradient(const Vec& x) const override { return advcert::gradient(*net_, x, sel_); }
  Vec hessian_vec(const Vec& x, const Vec& v) const override {
    return hvp(*net_, x, sel_, v);
  }

  const Network& net() const { return *net_; }
  const ScalarSelector& selector() const { return sel_; }
  bool is_outer() const { return sel_.mode == ScalarSelector::Mode::OuterMargin; }

  /// Gap between the active competitor and the runner-up of max_{j != l} f_j
  /// at x. +inf for pair views and two-class outer views (no second branch).
  double competitor_gap(const Vec& x) const;

 private:
  const Network* net_;
  ScalarSelector sel_;
};

BinaryView make_pair_view(const Network& net, int l, int j);
BinaryView make_outer_view(const Network& net, int l);

/// Unit direction of steepest decrease of |view| at x:
/// -sgn(view(x)) * grad / ||grad||. Throws StationaryPointError when the
/// gradient norm is at or below kGradientFloor.
Vec descent_direction(const ScalarField& view, const Vec& x);

/// Restriction of a view to the ray x + t*dir, with the directional
/// derivative. Every g() call is one forward pass, every g_prime() one
/// gradient pass; both are tallied when a counter is attached.
struct RaySection {
  const ScalarField* view;
  Vec origin;
  Vec dir;
  PassCounter* counter = nullptr;

  double g(double t) const {
    if (counter) ++counter->forwards;
    return view->value(origin + t * dir);
  }
  double g_prime(double t) const {
    if (counter) ++counter->backwards;
    return view->gradient(origin + t * dir).dot(dir);
  }
  Vec point(double t) const { return origin + t * dir; }
};

RaySection ray(const ScalarField& view, const Vec& x, const Vec& direction,
               PassCounter* counter = nullptr);

}  // namespace advcert
