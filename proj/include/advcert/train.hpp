#pragma once

#include "advcert/dataset.hpp"
#include "advcert/network.hpp"

namespace advcert {

struct ModelSpec {
  std::vector<int> hidden = {32, 32};
  Activation act = Activation::Tanh;
};

struct TrainerSpec {
  enum class Optimizer { Adam, Sgd };
  Optimizer opt = Optimizer::Adam;
  double lr = 0.01;
  int epochs = 200;
  int batch = 32;
  double momentum = 0.9;  // SGD only
  std::uint64_t seed = 11;
};

struct TrainReport {
  double train_accuracy = 0.0;
  double heldout_accuracy = 0.0;
  double final_loss = 0.0;
};

/// Mini-batch cross-entropy training, deterministic by seed (identical spec
/// and seed give identical weights). Throws TrainingError on divergence.
Network train(const ModelSpec& model, const Dataset& train_set,
              const Dataset& heldout, const TrainerSpec& trainer,
              TrainReport* report = nullptr);

double accuracy(const Network& net, const Dataset& ds);

}  // namespace advcert
