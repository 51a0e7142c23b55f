#include "advcert/strategies.hpp"

#include <cmath>

namespace advcert {

namespace {

// Outer-margin competitor gaps below this at the root point get flagged.
constexpr double kNearTieGap = 1e-9;

std::string class_failure(int j, const std::string& why) {
  return "class " + std::to_string(j) + ": " + why;
}

void require_correctly_classified(const Network& net, const Vec& x, int l) {
  if (l < 1 || l > net.class_count())
    throw ClassIndexError("label out of range: " + std::to_string(l));
  if (predicted_class(net, x) != l)
    throw PreconditionError("sample is not classified as its label");
}

bool view_is_smooth(const Network& net, bool outer) {
  return net.is_smooth() && (!outer || net.class_count() < 3);
}

}  // namespace

const char* strategy_name(Strategy s) {
  return s == Strategy::ClosestBoundary ? "cb" : "fob";
}

const char* algorithm_name(RootAlgorithm a) {
  return a == RootAlgorithm::Bisection ? "bisection" : "newton";
}

RayRootResult min_root_along_gradient(const ScalarField& view, const Vec& x,
                                      RootAlgorithm algo, const RootConfig& cfg,
                                      PassCounter* counter, double early_stop) {
  if (counter) ++counter->backwards;
  const Vec direction = descent_direction(view, x);
  const RaySection section = ray(view, x, direction, counter);
  const auto g = [&section](double t) { return section.g(t); };
  RootResult root;
  if (algo == RootAlgorithm::Bisection) {
    root = bisect(g, cfg, early_stop);
  } else {
    const auto gp = [&section](double t) { return section.g_prime(t); };
    root = newton(g, gp, 0.0, cfg);
  }
  return {root, direction};
}

DistanceEstimate closest_boundary(const Network& net, const Vec& x, int l,
                                  RootAlgorithm algo, const RootConfig& cfg) {
  require_correctly_classified(net, x, l);
  PassCounter counter;
  ++counter.forwards;  // the classification check above

  DistanceEstimate est;
  est.algorithm = algo;
  est.strategy = Strategy::ClosestBoundary;
  est.smooth_view = view_is_smooth(net, /*outer=*/false);

  bool any_converged = false;
  for (int j = 1; j <= net.class_count(); ++j) {
    if (j == l) continue;
    try {
      const BinaryView view = make_pair_view(net, l, j);
      const RayRootResult solved =
          min_root_along_gradient(view, x, algo, cfg, &counter, est.t);
      const RootResult& root = solved.root;
      if (root.status == RootStatus::Stalled) continue;  // pruned by the cutoff
      if (root.status != RootStatus::Converged) {
        est.failures.push_back(class_failure(j, root_status_name(root.status)));
        continue;
      }
      any_converged = true;
      if (root.t < est.t) {
        if (est.competitor != 0 && est.t - root.t <= cfg.tol) est.tied_competitor = true;
        est.t = root.t;
        est.direction = solved.direction;
        est.competitor = j;
        est.minimal_certified = root.minimal_certified;
      } else if (root.t - est.t <= cfg.tol) {
        est.tied_competitor = true;  // keep the lower class index
      }
    } catch (const StationaryPointError& e) {
      est.failures.push_back(class_failure(j, e.what()));
    } catch (const DerivativeVanishedError& e) {
      est.failures.push_back(class_failure(j, e.what()));
    }
  }

  est.forward_passes = counter.forwards;
  est.backward_passes = counter.backwards;
  if (!any_converged) {
    est.status = DistanceEstimate::Status::Failed;
    if (est.failures.empty()) est.failures.push_back("no competitor class converged");
  } else {
    est.status = est.failures.empty() ? DistanceEstimate::Status::Converged
                                      : DistanceEstimate::Status::Partial;
  }
  return est;
}

DistanceEstimate fast_outer_boundary(const Network& net, const Vec& x, int l,
                                     RootAlgorithm algo, const RootConfig& cfg) {
  require_correctly_classified(net, x, l);
  if (algo == RootAlgorithm::Newton && net.has_relu())
    throw ConfigError(
        "Newton on an outer-margin view of a ReLU network: the ray function is "
        "piecewise linear, use bisection");

  PassCounter counter;
  ++counter.forwards;

  DistanceEstimate est;
  est.algorithm = algo;
  est.strategy = Strategy::FastOuterBoundary;
  est.smooth_view = view_is_smooth(net, /*outer=*/true);

  const BinaryView view = make_outer_view(net, l);
  try {
    const RayRootResult solved = min_root_along_gradient(view, x, algo, cfg, &counter);
    const RootResult& root = solved.root;
    if (root.status == RootStatus::Converged) {
      est.status = DistanceEstimate::Status::Converged;
      est.t = root.t;
      est.direction = solved.direction;
      est.minimal_certified = root.minimal_certified;
      if (net.class_count() >= 3) {
        est.near_tie_at_root =
            view.competitor_gap(x + root.t * solved.direction) < kNearTieGap;
        ++counter.forwards;  // the gap check costs one forward pass
      }
    } else {
      est.status = DistanceEstimate::Status::Failed;
      est.failures.push_back(root_status_name(root.status));
    }
  } catch (const StationaryPointError& e) {
    est.status = DistanceEstimate::Status::Failed;
    est.failures.push_back(e.what());
  } catch (const DerivativeVanishedError& e) {
    est.status = DistanceEstimate::Status::Failed;
    est.failures.push_back(e.what());
  }

  est.forward_passes += counter.forwards;
  est.backward_passes = counter.backwards;
  return est;
}

Vec adversarial_point(const DistanceEstimate& est, const Vec& x) {
  if (est.status != DistanceEstimate::Status::Converged &&
      est.status != DistanceEstimate::Status::Partial)
    throw InvalidEstimateError("adversarial point needs a converged estimate");
  if (est.direction.size() != x.size())
    throw InvalidEstimateError("estimate direction does not match the sample");
  return x + est.t * est.direction;
}

}  // namespace advcert
