#pragma once

#include <functional>
#include <limits>

#include "advcert/errors.hpp"

namespace advcert {

/// Tolerances and budgets for the univariate minimal-root solvers.
/// t_up is the initial upper endpoint b; callers that work on datasets
/// default it to the diameter of the data bounding box.
struct RootConfig {
  double tol = 5e-5;
  int max_iter = 60;
  int max_attempts = 10;  // R in the halving preprocessing
  double t_up = 0.0;

  void validate() const;
};

enum class RootStatus { Converged, NoSignChange, MaxIterExceeded, Stalled };

const char* root_status_name(RootStatus s);

struct RootResult {
  double t = 0.0;
  double g_at_t = 0.0;
  int iterations = 0;
  RootStatus status = RootStatus::MaxIterExceeded;
  /// Bisection keeps a sign-change bracket from 0 upward, so a converged
  /// result is the minimal crossing of the preprocessed interval. Newton
  /// roots carry no such guarantee and are never certified minimal.
  bool minimal_certified = false;
};

using UnivariateFn = std::function<double(double)>;

/// Armijo-like upper bound b~ = b * 2^-k with k the largest i in 0..R such
/// that g(b * 2^-i) < 0. Evaluates i = 0,1,...,R in order (g may oscillate,
/// so the max cannot be taken on a prefix). Throws NoSignChangeError when
/// no exponent qualifies.
double armijo_upper(const UnivariateFn& g, double b, int max_attempts);

/// Bisection for the minimal positive root of g with g(0) > 0, preprocessed
/// with armijo_upper. Converges when 0 >= g(t_up) > -tol and returns t_up.
/// When early_stop is finite the search aborts with Stalled as soon as the
/// bracket lower end exceeds it (the running-minimum cutoff of the
/// closest-boundary loop).
RootResult bisect(const UnivariateFn& g, const RootConfig& cfg,
                  double early_stop = std::numeric_limits<double>::infinity());

/// Vanilla Newton iteration t <- t - g(t)/g'(t) from t0, negative iterates
/// clamped to 0. Converges when |g(t)| < tol; the root may not be the
/// minimal positive one.
RootResult newton(const UnivariateFn& g, const UnivariateFn& g_prime, double t0,
                  const RootConfig& cfg);

}  // namespace advcert
