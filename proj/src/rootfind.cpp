#include "advcert/rootfind.hpp"

#include <cmath>
#include <string>

namespace advcert {

void RootConfig::validate() const {
  if (!(tol > 0.0)) throw ConfigError("root tolerance must be positive");
  if (max_iter < 1) throw ConfigError("max_iter must be at least 1");
  if (max_attempts < 0) throw ConfigError("max_attempts must be nonnegative");
  if (!(t_up > 0.0)) throw ConfigError("t_up must be positive");
}

const char* root_status_name(RootStatus s) {
  switch (s) {
    case RootStatus::Converged: return "converged";
    case RootStatus::NoSignChange: return "no_sign_change";
    case RootStatus::MaxIterExceeded: return "max_iter";
    case RootStatus::Stalled: return "stalled";
  }
  return "unknown";
}

namespace {

struct ArmijoOutcome {
  double b_tilde;
  double g_at_b_tilde;
  bool found;
};

ArmijoOutcome armijo_scan(const UnivariateFn& g, double b, int max_attempts) {
  ArmijoOutcome out{b, 0.0, false};
  double point = b;
  for (int i = 0; i <= max_attempts; ++i) {
    const double value = g(point);
    if (value < 0.0) {
      out.b_tilde = point;
      out.g_at_b_tilde = value;
      out.found = true;
    }
    point *= 0.5;
  }
  return out;
}

}  // namespace

double armijo_upper(const UnivariateFn& g, double b, int max_attempts) {
  if (!(b > 0.0)) throw ConfigError("upper endpoint must be positive");
  const ArmijoOutcome out = armijo_scan(g, b, max_attempts);
  if (!out.found)
    throw NoSignChangeError("g stays nonnegative at every b*2^-i, i in 0.." +
                            std::to_string(max_attempts));
  return out.b_tilde;
}

RootResult bisect(const UnivariateFn& g, const RootConfig& cfg, double early_stop) {
  cfg.validate();
  const double g0 = g(0.0);
  if (!(g0 > 0.0)) throw BadBracketError("bisect requires g(0) > 0");

  const ArmijoOutcome armijo = armijo_scan(g, cfg.t_up, cfg.max_attempts);
  if (!armijo.found)
    return {cfg.t_up, armijo.g_at_b_tilde, 0, RootStatus::NoSignChange, false};

  double t_low = 0.0;
  double t_up = armijo.b_tilde;
  double out_up = armijo.g_at_b_tilde;
  if (out_up > -cfg.tol)
    return {t_up, out_up, 0, RootStatus::Converged, true};

  for (int step = 1; step <= cfg.max_iter; ++step) {
    const double t_curr = 0.5 * (t_low + t_up);
    const double out = g(t_curr);
    if (out > 0.0) {
      t_low = t_curr;
    } else {
      t_up = t_curr;
      out_up = out;
    }
    if (t_low > early_stop)
      return {t_up, out_up, step, RootStatus::Stalled, false};
    if (out_up > -cfg.tol && out_up <= 0.0)
      return {t_up, out_up, step, RootStatus::Converged, true};
  }
  return {t_up, out_up, cfg.max_iter, RootStatus::MaxIterExceeded, false};
}

RootResult newton(const UnivariateFn& g, const UnivariateFn& g_prime, double t0,
                  const RootConfig& cfg) {
  cfg.validate();
  double t = t0;
  double gt = g(t);
  if (std::abs(gt) < cfg.tol) return {t, gt, 0, RootStatus::Converged, false};

  for (int step = 1; step <= cfg.max_iter; ++step) {
    const double d = g_prime(t);
    if (std::abs(d) < 1e-12)
      throw DerivativeVanishedError("|g'| < 1e-12 at t = " + std::to_string(t));
    t -= gt / d;
    if (t < 0.0) t = 0.0;
    gt = g(t);
    if (!std::isfinite(gt)) throw NumericalError("Newton iterate left the domain");
    if (std::abs(gt) < cfg.tol) return {t, gt, step, RootStatus::Converged, false};
  }
  return {t, gt, cfg.max_iter, RootStatus::MaxIterExceeded, false};
}

}  // namespace advcert
