#include "advcert/scalar_field.hpp"

#include <cmath>

namespace advcert {

Vec ScalarField::hessian_vec(const Vec& x, const Vec& v) const {
  const double vnorm = v.norm();
  if (!(vnorm > 0.0)) throw PreconditionError("hessian_vec direction must be nonzero");
  const double h = 1e-4 * std::max(1.0, x.norm());
  const Vec vhat = v / vnorm;
  return (gradient(x + h * vhat) - gradient(x - h * vhat)) * (vnorm / (2.0 * h));
}

const ScalarField& analytic_field(const std::string& name) {
  static const SphereField circle(2);
  static const ParabolaField parabola;
  static const SineStressField sine_stress;
  if (name == "circle") return circle;
  if (name == "parabola") return parabola;
  if (name == "sine_stress") return sine_stress;
  throw ConfigError("unknown analytic function: " + name);
}

}  // namespace advcert
