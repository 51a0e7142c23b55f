#include "advcert/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace advcert {

namespace {

struct Param {
  Mat w;
  Vec b;
  Activation act;
  // optimizer state
  Mat mw, vw;
  Vec mb, vb;
};

double act_value(Activation a, double z) {
  switch (a) {
    case Activation::None: return z;
    case Activation::Tanh: return std::tanh(z);
    case Activation::Softplus: return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
    case Activation::ReLU: return z > 0.0 ? z : 0.0;
  }
  return z;
}

double act_deriv(Activation a, double z) {
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

Vec softmax(const Vec& logits) {
  const double m = logits.maxCoeff();
  Vec e = (logits.array() - m).exp();
  return e / e.sum();
}

}  // namespace

Network train(const ModelSpec& model, const Dataset& train_set,
              const Dataset& heldout, const TrainerSpec& trainer,
              TrainReport* report) {
  if (train_set.size() == 0) throw EmptyDatasetError("cannot train on an empty set");
  const int in_dim = train_set.dim();
  const int classes = *std::max_element(train_set.labels.begin(), train_set.labels.end());
  if (classes < 2) throw TrainingError("training needs at least two classes");

  // Glorot-uniform init, seeded.
  std::mt19937_64 rng(trainer.seed);
  std::vector<Param> params;
  int prev = in_dim;
  auto add_layer = [&](int out, Activation act) {
    const double limit = std::sqrt(6.0 / (prev + out));
    std::uniform_real_distribution<double> u(-limit, limit);
    Param p;
    p.w.resize(out, prev);
    for (Eigen::Index r = 0; r < p.w.rows(); ++r)
      for (Eigen::Index c = 0; c < p.w.cols(); ++c) p.w(r, c) = u(rng);
    p.b = Vec::Zero(out);
    p.act = act;
    p.mw = Mat::Zero(out, prev);
    p.vw = Mat::Zero(out, prev);
    p.mb = Vec::Zero(out);
    p.vb = Vec::Zero(out);
    params.push_back(std::move(p));
    prev = out;
  };
  for (int width : model.hidden) add_layer(width, model.act);
  add_layer(classes, Activation::None);

  const std::size_t n = train_set.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  const int layer_count = static_cast<int>(params.size());
  std::vector<Vec> acts(layer_count + 1), pre(layer_count), delta(layer_count);
  std::vector<Mat> grad_w(layer_count);
  std::vector<Vec> grad_b(layer_count);

  double epoch_loss = 0.0;
  long adam_step = 0;
  for (int epoch = 0; epoch < trainer.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    epoch_loss = 0.0;
    for (std::size_t start = 0; start < n; start += trainer.batch) {
      const std::size_t stop = std::min(n, start + trainer.batch);
      const double inv = 1.0 / static_cast<double>(stop - start);
      for (int li = 0; li < layer_count; ++li) {
        grad_w[li] = Mat::Zero(params[li].w.rows(), params[li].w.cols());
        grad_b[li] = Vec::Zero(params[li].b.size());
      }
      for (std::size_t s = start; s < stop; ++s) {
        const std::size_t i = order[s];
        acts[0] = train_set.x[i];
        for (int li = 0; li < layer_count; ++li) {
          pre[li] = params[li].w * acts[li] + params[li].b;
          acts[li + 1].resize(pre[li].size());
          for (Eigen::Index k = 0; k < pre[li].size(); ++k)
            acts[li + 1][k] = act_value(params[li].act, pre[li][k]);
        }
        const Vec prob = softmax(acts[layer_count]);
        const int target = train_set.labels[i] - 1;
        epoch_loss -= std::log(std::max(prob[target], 1e-300)) / n;

        delta[layer_count - 1] = prob;
        delta[layer_count - 1][target] -= 1.0;
        for (int li = layer_count - 1; li >= 0; --li) {
          if (li < layer_count - 1)
            for (Eigen::Index k = 0; k < delta[li].size(); ++k)
              delta[li][k] *= act_deriv(params[li].act, pre[li][k]);
          grad_w[li] += delta[li] * acts[li].transpose();
          grad_b[li] += delta[li];
          if (li > 0) delta[li - 1] = params[li].w.transpose() * delta[li];
        }
      }

      ++adam_step;
      for (int li = 0; li < layer_count; ++li) {
        grad_w[li] *= inv;
        grad_b[li] *= inv;
        Param& p = params[li];
        if (trainer.opt == TrainerSpec::Optimizer::Adam) {
          constexpr double b1 = 0.9, b2 = 0.999, eps = 1e-8;
          const double c1 = 1.0 - std::pow(b1, adam_step);
          const double c2 = 1.0 - std::pow(b2, adam_step);
          p.mw = b1 * p.mw + (1.0 - b1) * grad_w[li];
          p.vw = b2 * p.vw + (1.0 - b2) * grad_w[li].cwiseProduct(grad_w[li]);
          p.w -= (trainer.lr * (p.mw / c1).array() / ((p.vw / c2).array().sqrt() + eps))
                     .matrix();
          p.mb = b1 * p.mb + (1.0 - b1) * grad_b[li];
          p.vb = b2 * p.vb + (1.0 - b2) * grad_b[li].cwiseProduct(grad_b[li]);
          p.b -= (trainer.lr * (p.mb / c1).array() / ((p.vb / c2).array().sqrt() + eps))
                     .matrix();
        } else {
          p.mw = trainer.momentum * p.mw + grad_w[li];
          p.w -= trainer.lr * p.mw;
          p.mb = trainer.momentum * p.mb + grad_b[li];
          p.b -= trainer.lr * p.mb;
        }
      }
    }
    if (!std::isfinite(epoch_loss))
      throw TrainingError("loss diverged at epoch " + std::to_string(epoch));
  }

  std::vector<Layer> layers;
  layers.reserve(params.size());
  for (Param& p : params) layers.push_back({std::move(p.w), std::move(p.b), p.act});
  Network net(std::move(layers));
  if (report) {
    report->train_accuracy = accuracy(net, train_set);
    report->heldout_accuracy = heldout.size() ? accuracy(net, heldout) : 0.0;
    report->final_loss = epoch_loss;
  }
  return net;
}

double accuracy(const Network& net, const Dataset& ds) {
  if (ds.size() == 0) throw EmptyDatasetError("accuracy of an empty set");
  long hits = 0;
  for (std::size_t i = 0; i < ds.size(); ++i)
    if (predicted_class(net, ds.x[i]) == ds.labels[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(ds.size());
}

}  // namespace advcert
