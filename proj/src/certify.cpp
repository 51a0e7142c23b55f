#include "advcert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "advcert/baselines.hpp"

namespace advcert {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kQuarterPi = 0.7853981633974483;

void check_rho(double rho) {
  if (!(rho > kSqrt2) || !(rho <= 2.0))
    throw PreconditionError("rho must lie in (sqrt(2), 2]");
}

}  // namespace

RhoAlpha RhoAlpha::from_rho(double rho) {
  check_rho(rho);
  const double alpha = std::acos(rho / 2.0);
  return {rho, alpha, std::cos(2.0 * alpha)};
}

RhoAlpha RhoAlpha::from_alpha(double alpha) {
  if (!(alpha >= 0.0) || !(alpha < kQuarterPi))
    throw PreconditionError("alpha must lie in [0, pi/4)");
  return {2.0 * std::cos(alpha), alpha, std::cos(2.0 * alpha)};
}

std::pair<double, double> rho_star() {
  // (1 - cos a)/2 - 2 cos(2a) is strictly increasing on (0, pi/4), negative
  // at 0 and positive at pi/4, so plain bisection pins the unique root.
  const auto h = [](double a) {
    return 0.5 * (1.0 - std::cos(a)) - 2.0 * std::cos(2.0 * a);
  };
  double lo = 0.0;
  double hi = kQuarterPi;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double alpha = 0.5 * (lo + hi);
  return {alpha, 2.0 * std::cos(alpha)};
}

double sigma_hat(const std::vector<std::pair<double, double>>& dt_pairs, double rho) {
  if (dt_pairs.empty()) throw EmptyDatasetError("sigma_hat needs at least one sample");
  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& [d, t] : dt_pairs) {
    if (!(d > 0.0) || !(t >= 0.0))
      throw PreconditionError("sigma_hat needs d > 0 and t >= 0");
    if (t / d > rho) smallest = std::min(smallest, d);
  }
  return smallest;
}

namespace {

// Largest |eigenvalue| of the Hessian at x via power iteration on
// Hessian-vector products. Deterministic start, so repeated runs agree.
double hessian_norm_estimate(const ScalarField& view, const Vec& x, int iters,
                             double tol) {
  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(x.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = gauss(rng);
  v.normalize();

  double estimate = 0.0;
  for (int k = 0; k < iters; ++k) {
    const Vec w = view.hessian_vec(x, v);
    const double norm = w.norm();
    if (norm < 1e-300) return 0.0;
    const bool settled = std::abs(norm - estimate) <= tol * std::max(1.0, norm);
    estimate = norm;
    v = w / norm;
    if (settled) break;
  }
  return estimate;
}

}  // namespace

SigmaBounds sigma_lower_bounds(const ScalarField& view, const RegionSampler& sampler,
                               double alpha) {
  if (sampler.omega_points.empty() || sampler.boundary_points.empty())
    throw RegionSamplingError("sigma bounds need both omega and boundary samples");
  const RhoAlpha ra = RhoAlpha::from_alpha(alpha);

  auto scan = [&view](const std::vector<Vec>& points, double& inf_grad,
                      double& sup_hess) {
    inf_grad = std::numeric_limits<double>::infinity();
    sup_hess = 0.0;
    for (const Vec& p : points) {
      inf_grad = std::min(inf_grad, view.gradient(p).norm());
      sup_hess = std::max(sup_hess, hessian_norm_estimate(view, p, 20, 1e-6));
    }
  };

  double inf_grad_omega, sup_hess_omega, inf_grad_boundary, sup_hess_boundary;
  scan(sampler.omega_points, inf_grad_omega, sup_hess_omega);
  scan(sampler.boundary_points, inf_grad_boundary, sup_hess_boundary);

  const double inf = std::numeric_limits<double>::infinity();
  SigmaBounds out{inf, inf};
  if (sup_hess_omega >= 1e-12)
    out.sigma1 = 0.5 * (inf_grad_omega / sup_hess_omega) * (1.0 - std::cos(alpha));
  if (sup_hess_boundary >= 1e-12)
    out.sigma2 = 2.0 * ra.beta * (inf_grad_boundary / sup_hess_boundary);
  return out;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::NotRobust: return "not_robust";
    case Verdict::Robust: return "robust";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

RobustnessVerdict verdict(double t, double eps, double rho) {
  if (!(t >= 0.0)) throw PreconditionError("t must be nonnegative");
  if (!(eps > 0.0)) throw PreconditionError("eps must be positive");
  check_rho(rho);
  static const char* note =
      "robust branch valid only for samples inside the sigma(rho) tube";
  Verdict v = Verdict::Inconclusive;
  if (t < eps)
    v = Verdict::NotRobust;
  else if (t > rho * eps)
    v = Verdict::Robust;
  return {v, eps, t, rho, note};
}

std::vector<VerifyRecord> verify_experiment(const Network& net,
                                            const std::vector<VerifySample>& samples,
                                            double rho_star_value,
                                            const AttackBudget& budget,
                                            ExecutionPolicy policy) {
  std::vector<VerifyRecord> records(samples.size());
  for_each_index(samples.size(), policy, [&](std::size_t i) {
    const VerifySample& s = samples[i];
    VerifyRecord rec;
    rec.id = s.id;
    rec.d = s.d;
    rec.t = s.t;
    rec.eps = s.t / rho_star_value;
    try {
      rec.fgm = fgm_l2(net, s.x, s.label, rec.eps).success;
      rec.pgd = pgd_l2(net, s.x, s.label, rec.eps, budget.pgd_steps).success;
      rec.df = deepfool_clipped(net, s.x, s.label, rec.eps, budget.df_max_iter).success;
    } catch (const Error&) {
      // a degenerate sample counts as not attacked
    }
    rec.any = rec.fgm || rec.pgd || rec.df;
    records[i] = rec;
  });
  std::stable_sort(records.begin(), records.end(),
                   [](const VerifyRecord& a, const VerifyRecord& b) { return a.d < b.d; });
  return records;
}

std::vector<double> cumulative_success_fraction(const std::vector<VerifyRecord>& sorted) {
  long total = 0;
  for (const VerifyRecord& r : sorted) total += r.any ? 1 : 0;
  std::vector<double> curve(sorted.size(), 0.0);
  long running = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    running += sorted[i].any ? 1 : 0;
    curve[i] = total == 0 ? 0.0 : static_cast<double>(running) / total;
  }
  return curve;
}

}  // namespace advcert
