#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "advcert/errors.hpp"

namespace advcert {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Activation applied after a layer's affine map. None is the identity
/// (used for final layers and purely affine classifiers). ReLU is not
/// smooth and is rejected by every operation that needs second derivatives.
enum class Activation { None, Tanh, Softplus, ReLU };

bool activation_is_smooth(Activation a);
const char* activation_name(Activation a);
Activation activation_from_name(const std::string& name);

struct Layer {
  Mat weight;  // out x in
  Vec bias;    // out
  Activation act = Activation::None;
};

/// Immutable feedforward classifier. Class labels are 1-based (1..C),
/// matching predicted_class() which reserves 0 for untrusted ties.
class Network {
 public:
  Network(std::vector<Layer> layers);

  int input_dim() const { return input_dim_; }
  int class_count() const { return class_count_; }
  const std::vector<Layer>& layers() const { return layers_; }

  bool has_relu() const { return has_relu_; }
  /// True when every activation is C-infinity (None/Tanh/Softplus).
  bool is_smooth() const { return !has_relu_; }

  void save(std::ostream& os) const;
  void save_file(const std::string& path) const;
  static Network load(std::istream& is);
  static Network load_file(const std::string& path);

 private:
  std::vector<Layer> layers_;
  int input_dim_ = 0;
  int class_count_ = 0;
  bool has_relu_ = false;
};

/// Selects the scalar the gradient is taken of: a single output component,
/// a pairwise margin f_l - f_j, or the outer margin f_l - max_{j!=l} f_j.
/// All class indices are 1-based.
struct ScalarSelector {
  enum class Mode { Component, PairMargin, OuterMargin };

  Mode mode = Mode::Component;
  int l = 1;  // Component: the component k; margins: the reference class l
  int j = 0;  // PairMargin only

  static ScalarSelector component(int k) { return {Mode::Component, k, 0}; }
  static ScalarSelector pair_margin(int l, int j);
  static ScalarSelector outer_margin(int l) { return {Mode::OuterMargin, l, 0}; }

  void validate(int class_count) const;
};

/// Absolute tie tolerance under which the top two scores are considered
/// equal and the prediction is reported as untrusted (class 0).
inline constexpr double kTieTolerance = 1e-12;

Vec forward(const Network& net, const Vec& x);

/// 1-based predicted class; 0 when the two highest scores tie within
/// kTieTolerance.
int predicted_class(const Network& net, const Vec& x);

/// Value of the selected scalar at x. For OuterMargin the max is resolved
/// at x with ties broken toward the lowest class index.
double select_scalar(const Network& net, const Vec& x, const ScalarSelector& sel);
double select_scalar(const Vec& scores, const ScalarSelector& sel);

/// Exact reverse-mode gradient of the selected scalar with respect to x.
Vec gradient(const Network& net, const Vec& x, const ScalarSelector& sel);

/// Hessian-vector product (d^2 s / dx^2) v, approximated by central
/// differences of the exact gradient with h = 1e-4 * max(1, ||x||).
Vec hvp(const Network& net, const Vec& x, const ScalarSelector& sel, const Vec& v);

}  // namespace advcert
