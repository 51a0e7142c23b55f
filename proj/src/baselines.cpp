#include "advcert/baselines.hpp"

#include <cmath>

#include "advcert/scalarize.hpp"

namespace advcert {

namespace {

void require_attackable(const Network& net, const Vec& x, int l) {
  if (l < 1 || l > net.class_count())
    throw ClassIndexError("label out of range: " + std::to_string(l));
  if (predicted_class(net, x) != l)
    throw PreconditionError("sample is not classified as its label");
}

}  // namespace

DeepFoolResult deepfool(const Network& net, const Vec& x, int l, int max_iter,
                        double overshoot) {
  require_attackable(net, x, l);
  DeepFoolResult res;
  Vec current = x;

  for (int k = 0; k < max_iter; ++k) {
    if (predicted_class(net, current) != l) {
      res.converged = true;
      break;
    }
    // Best linearized step: argmin_j |f_l - f_j| / ||grad(f_l - f_j)||.
    double best_ratio = std::numeric_limits<double>::infinity();
    double best_margin = 0.0;
    Vec best_grad;
    for (int j = 1; j <= net.class_count(); ++j) {
      if (j == l) continue;
      const ScalarSelector sel = ScalarSelector::pair_margin(l, j);
      const double margin = select_scalar(net, current, sel);
      const Vec grad = gradient(net, current, sel);
      const double gnorm = grad.norm();
      if (gnorm <= kGradientFloor) continue;
      const double ratio = std::abs(margin) / gnorm;
      if (ratio < best_ratio) {
        best_ratio = ratio;
        best_margin = margin;
        best_grad = grad;
      }
    }
    if (!best_grad.size()) break;  // every margin gradient vanished
    const double gnorm2 = best_grad.squaredNorm();
    current -= (best_margin / gnorm2) * best_grad;
    ++res.iterations;
  }

  if (!res.converged && predicted_class(net, current) != l) res.converged = true;
  Vec delta = current - x;
  if (res.converged && overshoot > 0.0) delta *= 1.0 + overshoot;
  res.perturbation = delta;
  res.distance = delta.norm();
  return res;
}

AttackResult fgm_l2(const Network& net, const Vec& x, int l, double eps) {
  if (!(eps > 0.0)) throw PreconditionError("attack budget must be positive");
  require_attackable(net, x, l);
  AttackResult res;
  res.method = "fgm";
  res.epsilon = eps;

  const BinaryView view = make_outer_view(net, l);
  const Vec grad = view.gradient(x);
  const double gnorm = grad.norm();
  if (gnorm <= kGradientFloor) return res;  // nothing to follow

  const Vec adv = x - (eps / gnorm) * grad;
  res.norm = eps;
  res.success = predicted_class(net, adv) != l;
  if (res.success) res.adversarial = adv;
  return res;
}

AttackResult pgd_l2(const Network& net, const Vec& x, int l, double eps, int steps,
                    double step_size) {
  if (!(eps > 0.0)) throw PreconditionError("attack budget must be positive");
  if (steps < 1) throw PreconditionError("pgd needs at least one step");
  require_attackable(net, x, l);
  if (step_size <= 0.0) step_size = 2.5 * eps / steps;

  AttackResult res;
  res.method = "pgd";
  res.epsilon = eps;

  const BinaryView view = make_outer_view(net, l);
  Vec delta = Vec::Zero(x.size());
  for (int s = 0; s < steps; ++s) {
    const Vec grad = view.gradient(x + delta);
    const double gnorm = grad.norm();
    if (gnorm <= kGradientFloor) break;
    delta -= (step_size / gnorm) * grad;
    const double dnorm = delta.norm();
    if (dnorm > eps) delta *= eps / dnorm;
  }

  res.norm = delta.norm();
  const Vec adv = x + delta;
  res.success = predicted_class(net, adv) != l;
  if (res.success) res.adversarial = adv;
  return res;
}

AttackResult deepfool_clipped(const Network& net, const Vec& x, int l, double eps,
                              int max_iter) {
  if (!(eps > 0.0)) throw PreconditionError("attack budget must be positive");
  AttackResult res;
  res.method = "deepfool";
  res.epsilon = eps;

  const DeepFoolResult df = deepfool(net, x, l, max_iter);
  Vec delta = df.perturbation;
  const double dnorm = delta.norm();
  if (dnorm > eps) delta *= eps / dnorm;

  res.norm = delta.norm();
  const Vec adv = x + delta;
  res.success = predicted_class(net, adv) != l;
  if (res.success) res.adversarial = adv;
  return res;
}

}  // namespace advcert
