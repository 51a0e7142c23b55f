#pragma once

#include <optional>
#include <string>

#include "advcert/network.hpp"

namespace advcert {

struct AttackResult {
  bool success = false;
  std::optional<Vec> adversarial;
  double norm = 0.0;  // achieved ||delta||
  std::string method;
  double epsilon = 0.0;
};

struct DeepFoolResult {
  bool converged = false;
  double distance = 0.0;
  Vec perturbation;
  int iterations = 0;
};

/// DeepFool reference method: repeated linearized minimal steps over the
/// best competitor class, stopped as soon as the predicted class changes
/// (or becomes untrusted). overshoot scales the final perturbation; the
/// default 0 stops exactly at the first region change.
DeepFoolResult deepfool(const Network& net, const Vec& x, int l, int max_iter = 50,
                        double overshoot = 0.0);

/// Single normalized gradient step of size eps against the outer margin.
AttackResult fgm_l2(const Network& net, const Vec& x, int l, double eps);

/// Projected gradient descent on the outer margin inside the eps-ball.
/// step_size <= 0 selects the default 2.5 * eps / steps. No random start.
AttackResult pgd_l2(const Network& net, const Vec& x, int l, double eps,
                    int steps = 40, double step_size = -1.0);

/// DeepFool with the perturbation radially projected onto the eps-sphere
/// whenever it exceeds the budget; success is judged at the clipped point.
AttackResult deepfool_clipped(const Network& net, const Vec& x, int l, double eps,
                              int max_iter = 50);

}  // namespace advcert
