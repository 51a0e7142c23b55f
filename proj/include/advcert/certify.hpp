#pragma once

#include <utility>
#include <vector>

#include "advcert/parallel.hpp"
#include "advcert/scalar_field.hpp"

namespace advcert {

/// Consistent (rho, alpha, beta) triple of the error bound: rho = 2 cos(alpha),
/// beta = cos(2 alpha), with rho in (sqrt(2), 2].
struct RhoAlpha {
  double rho;
  double alpha;
  double beta;

  static RhoAlpha from_rho(double rho);
  static RhoAlpha from_alpha(double alpha);
};

/// Solves (1 - cos a)/2 = 2 cos(2a) on (0, pi/4) by bisection to 1e-12 and
/// returns (alpha*, rho* = 2 cos alpha*). rho* is the bound factor whose
/// analytic tube-radius lower bound is largest, about 1.461.
std::pair<double, double> rho_star();

/// Empirical tube radius: the smallest ground-truth distance among samples
/// whose ratio t/d exceeds rho; +infinity when no sample violates the bound.
double sigma_hat(const std::vector<std::pair<double, double>>& dt_pairs, double rho);

/// Points the sampled sigma bounds are evaluated on: omega_points lie in a
/// band around the boundary, boundary_points on the boundary itself
/// (converged root or oracle points in practice).
struct RegionSampler {
  std::vector<Vec> omega_points;
  std::vector<Vec> boundary_points;
};

struct SigmaBounds {
  double sigma1;  // from the angular constraint, grows with alpha
  double sigma2;  // from the thickness constraint, shrinks with alpha
};

/// Sampled lower bounds of the tube radius:
///   sigma1 = (inf_Omega ||grad|| / sup_Omega ||H||) * (1 - cos alpha) / 2
///   sigma2 = 2 cos(2 alpha) * (inf_B ||grad|| / sup_B ||H||)
/// Gradient norms are taken at the sampled points; Hessian operator norms
/// come from power iteration on Hessian-vector products (20 iterations,
/// tolerance 1e-6). Infima/suprema over samples are estimates, not
/// certificates. Returns +infinity where the Hessian norm estimate is below
/// 1e-12 (affine classifiers).
SigmaBounds sigma_lower_bounds(const ScalarField& view, const RegionSampler& sampler,
                               double alpha);

enum class Verdict { NotRobust, Robust, Inconclusive };

const char* verdict_name(Verdict v);

struct RobustnessVerdict {
  Verdict verdict;
  double eps;
  double t;
  double rho;
  /// The Robust branch is certified only for samples inside the sigma(rho)
  /// tube of the boundary.
  const char* validity_note;
};

/// Ternary rule: t < eps is not robust, t > rho*eps is robust, anything
/// between is inconclusive.
RobustnessVerdict verdict(double t, double eps, double rho);

struct VerifySample {
  int id;
  Vec x;
  int label;  // 1-based, equals predicted_class
  double t;   // closest-boundary bisection distance
  double d;   // ground-truth distance
};

struct VerifyRecord {
  int id;
  double d;
  double t;
  double eps;
  bool fgm = false;
  bool pgd = false;
  bool df = false;
  bool any = false;
};

struct AttackBudget {
  int pgd_steps = 40;
  int df_max_iter = 50;
};

/// Runs FGM, PGD and clipped DeepFool on every sample with budget
/// eps = t / rho_star and reports which ones succeed. Records are returned
/// sorted by ground-truth distance.
std::vector<VerifyRecord> verify_experiment(const Network& net,
                                            const std::vector<VerifySample>& samples,
                                            double rho_star_value,
                                            const AttackBudget& budget = {},
                                            ExecutionPolicy policy = ExecutionPolicy::Serial);

/// Cumulative curve of Fig-5 shape: entry i is the fraction of all successful
/// attacks that happened at distance <= d_i (0 everywhere when nothing
/// succeeded). Input must be sorted by d.
std::vector<double> cumulative_success_fraction(const std::vector<VerifyRecord>& sorted);

}  // namespace advcert
