#pragma once

#include <string>
#include <vector>

#include "advcert/rootfind.hpp"
#include "advcert/scalarize.hpp"

namespace advcert {

enum class Strategy { ClosestBoundary, FastOuterBoundary };
enum class RootAlgorithm { Bisection, Newton };

const char* strategy_name(Strategy s);
const char* algorithm_name(RootAlgorithm a);

/// Result of one multi-class distance run.
struct DistanceEstimate {
  enum class Status { Converged, Partial, Failed };

  double t = std::numeric_limits<double>::infinity();
  Vec direction;       // unit vector, set when converged
  int competitor = 0;  // winning class j* (1-based); 0 for the outer strategy
  RootAlgorithm algorithm = RootAlgorithm::Bisection;
  Strategy strategy = Strategy::ClosestBoundary;
  Status status = Status::Failed;
  long forward_passes = 0;
  long backward_passes = 0;
  /// True only for bisection roots (minimal crossing of the bracket).
  bool minimal_certified = false;
  /// Two competitor classes reached the minimum within tol.
  bool tied_competitor = false;
  /// Outer-margin max was nearly tied at the root point, so the solved ray
  /// function has a kink there and the smooth-error theory applies only
  /// formally.
  bool near_tie_at_root = false;
  /// False when the solved view is only piecewise smooth (outer margin with
  /// three or more classes, or any ReLU network).
  bool smooth_view = true;
  std::vector<std::string> failures;  // per-class reasons, empty when clean
};

/// Minimal root of a scalar field along its own descent ray from x.
/// Shared kernel of both strategies; also runs directly on the analytic
/// test fields.
struct RayRootResult {
  RootResult root;
  Vec direction;
};
RayRootResult min_root_along_gradient(
    const ScalarField& view, const Vec& x, RootAlgorithm algo, const RootConfig& cfg,
    PassCounter* counter = nullptr,
    double early_stop = std::numeric_limits<double>::infinity());

/// Closest Boundary: one pairwise margin root problem per competitor class,
/// minimum over classes. With bisection, the running minimum is passed down
/// as an early-stop cutoff. Requires predicted_class(net, x) == l.
DistanceEstimate closest_boundary(const Network& net, const Vec& x, int l,
                                  RootAlgorithm algo, const RootConfig& cfg);

/// Fast Outer Boundary: a single root problem on f_l - max_{j!=l} f_j.
DistanceEstimate fast_outer_boundary(const Network& net, const Vec& x, int l,
                                     RootAlgorithm algo, const RootConfig& cfg);

/// Materializes x + t * direction for a converged estimate.
Vec adversarial_point(const DistanceEstimate& est, const Vec& x);

}  // namespace advcert
