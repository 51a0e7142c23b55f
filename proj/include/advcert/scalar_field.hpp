#pragma once

#include <functional>
#include <memory>
#include <string>

#include "advcert/network.hpp"

namespace advcert {

/// A differentiable scalar function on R^n. Binary margins of a network and
/// the analytic 2D test functions both implement this, so the root solvers,
/// the penalty oracle and the sigma bounds run on either.
class ScalarField {
 public:
  virtual ~ScalarField() = default;

  virtual int dim() const = 0;
  virtual double value(const Vec& x) const = 0;
  virtual Vec gradient(const Vec& x) const = 0;

  /// (d^2 f / dx^2) v by central differences of the gradient with
  /// h = 1e-4 * max(1, ||x||). Overridden where an exact Hessian exists.
  virtual Vec hessian_vec(const Vec& x, const Vec& v) const;
};

/// Field defined by explicit callables; handy for fixtures.
class CallableField : public ScalarField {
 public:
  CallableField(int dim, std::function<double(const Vec&)> value,
                std::function<Vec(const Vec&)> gradient)
      : dim_(dim), value_(std::move(value)), gradient_(std::move(gradient)) {}

  int dim() const override { return dim_; }
  double value(const Vec& x) const override { return value_(x); }
  Vec gradient(const Vec& x) const override { return gradient_(x); }

 private:
  int dim_;
  std::function<double(const Vec&)> value_;
  std::function<Vec(const Vec&)> gradient_;
};

/// f(x) = ||x||^2 - 1; boundary is the unit circle/sphere, Hessian 2I.
class SphereField : public ScalarField {
 public:
  explicit SphereField(int dim = 2) : dim_(dim) {}
  int dim() const override { return dim_; }
  double value(const Vec& x) const override { return x.squaredNorm() - 1.0; }
  Vec gradient(const Vec& x) const override { return 2.0 * x; }
  Vec hessian_vec(const Vec&, const Vec& v) const override { return 2.0 * v; }

 private:
  int dim_;
};

/// f(x, y) = y - x^2; boundary is a parabola.
class ParabolaField : public ScalarField {
 public:
  int dim() const override { return 2; }
  double value(const Vec& x) const override { return x[1] - x[0] * x[0]; }
  Vec gradient(const Vec& x) const override {
    Vec g(2);
    g << -2.0 * x[0], 1.0;
    return g;
  }
};

/// f(x, y) = y - sin(x^2); the boundary accumulates on the x axis and is
/// not compact, so nearest-point projections stop being unique far out.
class SineStressField : public ScalarField {
 public:
  int dim() const override { return 2; }
  double value(const Vec& x) const override { return x[1] - std::sin(x[0] * x[0]); }
  Vec gradient(const Vec& x) const override {
    Vec g(2);
    g << -2.0 * x[0] * std::cos(x[0] * x[0]), 1.0;
    return g;
  }
};

/// Registered 2D analytic functions, addressable by name from the CLI and
/// the grid-projection oracle: "circle", "parabola", "sine_stress".
const ScalarField& analytic_field(const std::string& name);

}  // namespace advcert
