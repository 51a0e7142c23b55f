#pragma once

#include <optional>

#include "advcert/scalar_field.hpp"

namespace advcert {

struct AdamParams {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct PenaltyConfig {
  double tol = 5e-5;
  int max_gd_iters = 10000;
  double c_low = 0.0;
  double c_up = 100.0;
  int c_bisections = 12;
  AdamParams adam;
  /// When set, each penalty trial starts from the previous trial's final
  /// perturbation instead of zero.
  bool warm_start = false;

  void validate() const;
};

struct GroundTruthDistance {
  double d = 0.0;
  Vec adversarial;        // x + delta of the best converged trial
  double c_final = 0.0;   // penalty that produced it
  bool converged = false;
  long inner_iters = 0;   // Adam iterations summed over all trials
};

/// Ground-truth boundary distance by the penalty method: minimize
/// ||delta|| + c * max(0, margin(x + delta)) with Adam, stopping a trial as
/// soon as -tol < margin <= 0, and bisecting the penalty c between c_low and
/// c_up (non-convergence lowers c_up, convergence raises c_low). Returns the
/// smallest ||delta|| over all converged trials; throws OracleFailure when
/// no trial lands in the stopping band.
GroundTruthDistance iterative_penalty(const ScalarField& margin, const Vec& x,
                                      const PenaltyConfig& cfg);

/// Multi-class wrapper on the outer margin; requires predicted_class == l.
GroundTruthDistance iterative_penalty(const Network& net, const Vec& x, int l,
                                      const PenaltyConfig& cfg);

struct SearchBox {
  Vec lo;
  Vec hi;
};

/// Independent brute-force distance oracle for 2D analytic functions:
/// scans a resolution x resolution grid over the box for sign changes of fn,
/// refines each crossing edge by bisection, and returns the minimum distance
/// from x to the recovered boundary points. Throws BoundaryNotFound when the
/// box contains no sign change.
double grid_projection(const ScalarField& fn, const Vec& x, const SearchBox& box,
                       int resolution);

}  // namespace advcert
