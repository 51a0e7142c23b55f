#include "advcert/oracle.hpp"

#include <cmath>
#include <vector>

#include "advcert/scalarize.hpp"

namespace advcert {

void PenaltyConfig::validate() const {
  if (!(tol > 0.0)) throw ConfigError("penalty tolerance must be positive");
  if (max_gd_iters < 1) throw ConfigError("max_gd_iters must be at least 1");
  if (!(c_low < c_up)) throw ConfigError("penalty search needs c_low < c_up");
  if (c_low < 0.0) throw ConfigError("penalty c_low must be nonnegative");
  if (c_bisections < 1) throw ConfigError("c_bisections must be at least 1");
  if (!(adam.lr > 0.0)) throw ConfigError("Adam learning rate must be positive");
}

namespace {

struct TrialOutcome {
  bool converged = false;
  Vec delta;
  long iters = 0;
};

// One penalized descent for a fixed c. Stops inside the band
// -tol < margin(x + delta) <= 0; the norm term uses subgradient 0 at the
// origin.
TrialOutcome penalty_trial(const ScalarField& margin, const Vec& x, double c,
                           const PenaltyConfig& cfg, const Vec& delta0) {
  TrialOutcome out;
  out.delta = delta0;
  Vec m = Vec::Zero(x.size());
  Vec v = Vec::Zero(x.size());
  const AdamParams& ap = cfg.adam;

  for (int k = 1; k <= cfg.max_gd_iters; ++k) {
    const double level = margin.value(x + out.delta);
    if (level > -cfg.tol && level <= 0.0) {
      out.converged = true;
      return out;
    }
    Vec grad = Vec::Zero(x.size());
    const double dnorm = out.delta.norm();
    if (dnorm > 0.0) grad = out.delta / dnorm;
    if (level > 0.0) grad += c * margin.gradient(x + out.delta);

    m = ap.beta1 * m + (1.0 - ap.beta1) * grad;
    v = ap.beta2 * v + (1.0 - ap.beta2) * grad.cwiseProduct(grad);
    const double bc1 = 1.0 - std::pow(ap.beta1, k);
    const double bc2 = 1.0 - std::pow(ap.beta2, k);
    out.delta -= (ap.lr * (m / bc1).array() / ((v / bc2).array().sqrt() + ap.eps))
                     .matrix();
    ++out.iters;
  }

  const double level = margin.value(x + out.delta);
  out.converged = level > -cfg.tol && level <= 0.0;
  return out;
}

}  // namespace

GroundTruthDistance iterative_penalty(const ScalarField& margin, const Vec& x,
                                      const PenaltyConfig& cfg) {
  cfg.validate();
  if (!(margin.value(x) > 0.0))
    throw PreconditionError("penalty oracle needs a positively classified start");

  GroundTruthDistance best;
  best.d = std::numeric_limits<double>::infinity();
  double lo = cfg.c_low;
  double hi = cfg.c_up;
  Vec carry = Vec::Zero(x.size());

  for (int b = 0; b < cfg.c_bisections; ++b) {
    const double c = 0.5 * (lo + hi);
    const Vec start = cfg.warm_start ? carry : Vec(Vec::Zero(x.size()));
    const TrialOutcome trial = penalty_trial(margin, x, c, cfg, start);
    best.inner_iters += trial.iters;
    carry = trial.delta;
    if (trial.converged) {
      lo = c;
      const double norm = trial.delta.norm();
      if (norm < best.d) {
        best.d = norm;
        best.adversarial = x + trial.delta;
        best.c_final = c;
        best.converged = true;
      }
    } else {
      hi = c;
    }
  }

  if (!best.converged)
    throw OracleFailure("no penalty trial landed in the stopping band");
  return best;
}

GroundTruthDistance iterative_penalty(const Network& net, const Vec& x, int l,
                                      const PenaltyConfig& cfg) {
  if (predicted_class(net, x) != l)
    throw PreconditionError("sample is not classified as its label");
  const BinaryView view = make_outer_view(net, l);
  return iterative_penalty(view, x, cfg);
}

namespace {

// Root of fn restricted to the segment [a, b] with a sign change across it.
Vec refine_crossing(const ScalarField& fn, Vec a, double fa, Vec b, double fb) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  for (int i = 0; i < 40; ++i) {
    const Vec mid = 0.5 * (a + b);
    const double fm = fn.value(mid);
    if (fm == 0.0) return mid;
    if ((fa < 0.0) == (fm < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
      fb = fm;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double grid_projection(const ScalarField& fn, const Vec& x, const SearchBox& box,
                       int resolution) {
  if (fn.dim() != 2) throw PreconditionError("grid projection is for 2D functions");
  if (box.lo.size() != 2 || box.hi.size() != 2 || !(box.lo[0] < box.hi[0]) ||
      !(box.lo[1] < box.hi[1]))
    throw PreconditionError("degenerate search box");
  if (resolution < 2) throw PreconditionError("resolution must be at least 2");

  const double dx = (box.hi[0] - box.lo[0]) / (resolution - 1);
  const double dy = (box.hi[1] - box.lo[1]) / (resolution - 1);
  auto grid_point = [&](int i, int j) {
    Vec p(2);
    p << box.lo[0] + i * dx, box.lo[1] + j * dy;
    return p;
  };

  double best = std::numeric_limits<double>::infinity();
  auto consider_edge = [&](const Vec& a, double fa, const Vec& b, double fb) {
    if (fa == 0.0) {
      best = std::min(best, (x - a).norm());
      return;
    }
    if ((fa < 0.0) != (fb < 0.0) || fb == 0.0) {
      const Vec p = refine_crossing(fn, a, fa, b, fb);
      best = std::min(best, (x - p).norm());
    }
  };

  std::vector<double> prev_row(resolution), row(resolution);
  for (int j = 0; j < resolution; ++j) {
    for (int i = 0; i < resolution; ++i) row[i] = fn.value(grid_point(i, j));
    for (int i = 0; i + 1 < resolution; ++i)
      consider_edge(grid_point(i, j), row[i], grid_point(i + 1, j), row[i + 1]);
    if (j > 0)
      for (int i = 0; i < resolution; ++i)
        consider_edge(grid_point(i, j - 1), prev_row[i], grid_point(i, j), row[i]);
    std::swap(prev_row, row);
  }

  if (!std::isfinite(best))
    throw BoundaryNotFound("no sign change of fn inside the search box");
  return best;
}

}  // namespace advcert
