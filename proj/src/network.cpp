#include "advcert/network.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace advcert {

bool activation_is_smooth(Activation a) { return a != Activation::ReLU; }

const char* activation_name(Activation a) {
  switch (a) {
    case Activation::None: return "none";
    case Activation::Tanh: return "tanh";
    case Activation::Softplus: return "softplus";
    case Activation::ReLU: return "relu";
  }
  return "none";
}

Activation activation_from_name(const std::string& name) {
  if (name == "none") return Activation::None;
  if (name == "tanh") return Activation::Tanh;
  if (name == "softplus") return Activation::Softplus;
  if (name == "relu") return Activation::ReLU;
  throw ConfigError("unknown activation: " + name);
}

Network::Network(std::vector<Layer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw InputShapeError("network needs at least one layer");
  input_dim_ = static_cast<int>(layers_.front().weight.cols());
  class_count_ = static_cast<int>(layers_.back().weight.rows());
  if (input_dim_ < 1 || class_count_ < 1)
    throw InputShapeError("degenerate layer dimensions");
  Eigen::Index prev = layers_.front().weight.cols();
  for (const Layer& layer : layers_) {
    if (layer.weight.cols() != prev)
      throw InputShapeError("layer input does not match previous layer output");
    if (layer.bias.size() != layer.weight.rows())
      throw InputShapeError("bias length does not match layer output");
    if (!layer.weight.allFinite() || !layer.bias.allFinite())
      throw NumericalError("non-finite network parameters");
    if (layer.act == Activation::ReLU) has_relu_ = true;
    prev = layer.weight.rows();
  }
}

ScalarSelector ScalarSelector::pair_margin(int l, int j) {
  if (l == j) throw ClassIndexError("pair margin requires distinct classes");
  return {Mode::PairMargin, l, j};
}

void ScalarSelector::validate(int class_count) const {
  auto check = [&](int c, const char* what) {
    if (c < 1 || c > class_count)
      throw ClassIndexError(std::string(what) + " out of range: " + std::to_string(c));
  };
  check(l, "class index");
  if (mode == Mode::PairMargin) {
    check(j, "class index");
    if (l == j) throw ClassIndexError("pair margin requires distinct classes");
  }
}

namespace {

double apply_act(Activation a, double z) {
  switch (a) {
    case Activation::None: return z;
    case Activation::Tanh: return std::tanh(z);
    case Activation::Softplus:
      // numerically stable log(1 + e^z)
      return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
    case Activation::ReLU: return z > 0.0 ? z : 0.0;
  }
  return z;
}

double act_derivative(Activation a, double z) {
  switch (a) {
    case Activation::None: return 1.0;
    case Activation::Tanh: {
      const double t = std::tanh(z);
      return 1.0 - t * t;
    }
    case Activation::Softplus: return 1.0 / (1.0 + std::exp(-z));
    case Activation::ReLU: return z > 0.0 ? 1.0 : 0.0;
  }
  return 1.0;
}

void check_input(const Network& net, const Vec& x) {
  if (x.size() != net.input_dim())
    throw InputShapeError("input has length " + std::to_string(x.size()) +
                          ", expected " + std::to_string(net.input_dim()));
  if (!x.allFinite()) throw InputShapeError("input has non-finite entries");
}

// Forward pass keeping per-layer pre-activations for the backward sweep.
struct Trace {
  std::vector<Vec> pre;  // z_i = W_i a_{i-1} + b_i
  Vec out;
};

Trace forward_trace(const Network& net, const Vec& x) {
  Trace tr;
  tr.pre.reserve(net.layers().size());
  Vec a = x;
  for (const Layer& layer : net.layers()) {
    Vec z = layer.weight * a + layer.bias;
    tr.pre.push_back(z);
    a.resize(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) a[i] = apply_act(layer.act, z[i]);
  }
  tr.out = std::move(a);
  if (!tr.out.allFinite()) throw NumericalError("non-finite forward pass");
  return tr;
}

// Index (1-based) of max_{j != l} f_j, ties toward the lowest class index.
int active_competitor(const Vec& scores, int l) {
  int best = 0;
  for (int c = 1; c <= static_cast<int>(scores.size()); ++c) {
    if (c == l) continue;
    if (best == 0 || scores[c - 1] > scores[best - 1]) best = c;
  }
  if (best == 0) throw ClassIndexError("outer margin needs at least two classes");
  return best;
}

Vec output_seed(const Vec& scores, const ScalarSelector& sel) {
  Vec seed = Vec::Zero(scores.size());
  switch (sel.mode) {
    case ScalarSelector::Mode::Component:
      seed[sel.l - 1] = 1.0;
      break;
    case ScalarSelector::Mode::PairMargin:
      seed[sel.l - 1] = 1.0;
      seed[sel.j - 1] = -1.0;
      break;
    case ScalarSelector::Mode::OuterMargin: {
      const int j = active_competitor(scores, sel.l);
      seed[sel.l - 1] = 1.0;
      seed[j - 1] = -1.0;
      break;
    }
  }
  return seed;
}

}  // namespace

Vec forward(const Network& net, const Vec& x) {
  check_input(net, x);
  return forward_trace(net, x).out;
}

int predicted_class(const Network& net, const Vec& x) {
  const Vec scores = forward(net, x);
  if (scores.size() == 1) return 1;
  int top = 0;
  for (int c = 1; c < static_cast<int>(scores.size()); ++c)
    if (scores[c] > scores[top]) top = c;
  double runner_up = -std::numeric_limits<double>::infinity();
  for (int c = 0; c < static_cast<int>(scores.size()); ++c)
    if (c != top && scores[c] > runner_up) runner_up = scores[c];
  if (scores[top] - runner_up <= kTieTolerance) return 0;
  return top + 1;
}

double select_scalar(const Vec& scores, const ScalarSelector& sel) {
  switch (sel.mode) {
    case ScalarSelector::Mode::Component:
      return scores[sel.l - 1];
    case ScalarSelector::Mode::PairMargin:
      return scores[sel.l - 1] - scores[sel.j - 1];
    case ScalarSelector::Mode::OuterMargin:
      return scores[sel.l - 1] - scores[active_competitor(scores, sel.l) - 1];
  }
  return 0.0;
}

double select_scalar(const Network& net, const Vec& x, const ScalarSelector& sel) {
  sel.validate(net.class_count());
  return select_scalar(forward(net, x), sel);
}

Vec gradient(const Network& net, const Vec& x, const ScalarSelector& sel) {
  sel.validate(net.class_count());
  check_input(net, x);
  const Trace tr = forward_trace(net, x);
  // Reverse accumulation: seed at the outputs, walk the layers backwards.
  Vec delta = output_seed(tr.out, sel);
  const auto& layers = net.layers();
  for (int i = static_cast<int>(layers.size()) - 1; i >= 0; --i) {
    const Vec& z = tr.pre[i];
    for (Eigen::Index k = 0; k < delta.size(); ++k)
      delta[k] *= act_derivative(layers[i].act, z[k]);
    delta = layers[i].weight.transpose() * delta;
  }
  if (!delta.allFinite()) throw NumericalError("non-finite gradient");
  return delta;
}

Vec hvp(const Network& net, const Vec& x, const ScalarSelector& sel, const Vec& v) {
  if (net.has_relu())
    throw UnsupportedActivationError("Hessian-vector products need smooth activations");
  const double vnorm = v.norm();
  if (!(vnorm > 0.0)) throw PreconditionError("hvp direction must be nonzero");
  const double h = 1e-4 * std::max(1.0, x.norm());
  const Vec vhat = v / vnorm;
  const Vec gp = gradient(net, x + h * vhat, sel);
  const Vec gm = gradient(net, x - h * vhat, sel);
  return (gp - gm) * (vnorm / (2.0 * h));
}

namespace {

void write_value(std::ostream& os, double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  os.write(buf, res.ptr - buf);
}

double read_value(std::istream& is) {
  std::string tok;
  if (!(is >> tok)) throw IoError("truncated model file");
  double v = 0.0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc()) throw IoError("bad numeric token in model file: " + tok);
  return v;
}

}  // namespace

void Network::save(std::ostream& os) const {
  os << "advcert-model v1\n";
  os << "input_dim " << input_dim_ << "\n";
  os << "layers " << layers_.size() << "\n";
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const Layer& layer = layers_[i];
    os << "layer " << i << " " << layer.weight.cols() << " " << layer.weight.rows()
       << " " << activation_name(layer.act) << "\n";
    os << "w";
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
        os << ' ';
        write_value(os, layer.weight(r, c));
      }
    os << "\nb";
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) {
      os << ' ';
      write_value(os, layer.bias[r]);
    }
    os << "\n";
  }
}

void Network::save_file(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write model file: " + path);
  save(os);
}

Network Network::load(std::istream& is) {
  std::string magic, version;
  is >> magic >> version;
  if (magic != "advcert-model" || version != "v1")
    throw IoError("not an advcert v1 model file");
  std::string key;
  int input_dim = 0;
  std::size_t n_layers = 0;
  is >> key >> input_dim;
  if (key != "input_dim") throw IoError("malformed model file");
  is >> key >> n_layers;
  if (key != "layers") throw IoError("malformed model file");
  std::vector<Layer> layers;
  layers.reserve(n_layers);
  for (std::size_t i = 0; i < n_layers; ++i) {
    std::size_t idx = 0;
    Eigen::Index in = 0, out = 0;
    std::string act;
    is >> key >> idx >> in >> out >> act;
    if (key != "layer" || idx != i) throw IoError("malformed layer header");
    Layer layer;
    layer.act = activation_from_name(act);
    layer.weight.resize(out, in);
    layer.bias.resize(out);
    is >> key;
    if (key != "w") throw IoError("expected weight block");
    for (Eigen::Index r = 0; r < out; ++r)
      for (Eigen::Index c = 0; c < in; ++c) layer.weight(r, c) = read_value(is);
    is >> key;
    if (key != "b") throw IoError("expected bias block");
    for (Eigen::Index r = 0; r < out; ++r) layer.bias[r] = read_value(is);
    layers.push_back(std::move(layer));
  }
  Network net(std::move(layers));
  if (net.input_dim() != input_dim) throw IoError("input_dim mismatch in model file");
  return net;
}

Network Network::load_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open model file: " + path);
  return load(is);
}

}  // namespace advcert
