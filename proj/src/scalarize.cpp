#include "advcert/scalarize.hpp"

#include <cmath>

namespace advcert {

BinaryView::BinaryView(const Network& net, ScalarSelector sel) : net_(&net), sel_(sel) {
  if (sel.mode == ScalarSelector::Mode::Component)
    throw ClassIndexError("binary views are margins, not single components");
  sel_.validate(net.class_count());
}

double BinaryView::competitor_gap(const Vec& x) const {
  if (!is_outer() || net_->class_count() < 3)
    return std::numeric_limits<double>::infinity();
  const Vec scores = forward(*net_, x);
  double best = -std::numeric_limits<double>::infinity();
  double runner_up = best;
  for (int c = 1; c <= net_->class_count(); ++c) {
    if (c == sel_.l) continue;
    const double s = scores[c - 1];
    if (s > best) {
      runner_up = best;
      best = s;
    } else if (s > runner_up) {
      runner_up = s;
    }
  }
  return best - runner_up;
}

BinaryView make_pair_view(const Network& net, int l, int j) {
  return BinaryView(net, ScalarSelector::pair_margin(l, j));
}

BinaryView make_outer_view(const Network& net, int l) {
  return BinaryView(net, ScalarSelector::outer_margin(l));
}

Vec descent_direction(const ScalarField& view, const Vec& x) {
  const Vec grad = view.gradient(x);
  const double norm = grad.norm();
  if (norm <= kGradientFloor)
    throw StationaryPointError("vanishing gradient, cannot orient the ray");
  const double sign = view.value(x) < 0.0 ? -1.0 : 1.0;
  return (-sign / norm) * grad;
}

RaySection ray(const ScalarField& view, const Vec& x, const Vec& direction,
               PassCounter* counter) {
  if (x.size() != view.dim() || direction.size() != view.dim())
    throw InputShapeError("ray origin/direction dimension mismatch");
  if (std::abs(direction.norm() - 1.0) > 1e-9)
    throw PreconditionError("ray direction must be a unit vector");
  return RaySection{&view, x, direction, counter};
}

}  // namespace advcert
