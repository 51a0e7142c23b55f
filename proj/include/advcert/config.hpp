#pragma once

#include <string>

#include "advcert/certify.hpp"
#include "advcert/dataset.hpp"
#include "advcert/oracle.hpp"
#include "advcert/rootfind.hpp"
#include "advcert/train.hpp"

namespace advcert {

/// Everything a pipeline run depends on. All seeds are explicit so identical
/// configs reproduce identical bytes. Parsed from a `key = value` text file;
/// unset keys keep the defaults below.
struct ExperimentConfig {
  DatasetSpec dataset;        // training-pool generator
  ModelSpec model;
  TrainerSpec trainer;
  double split_fraction = 0.6;   // sigma estimation split
  std::uint64_t split_seed = 99;
  int eval_samples = 200;        // distance-table size (correctly classified)
  double eval_epsilon = 0.3;     // reference budget for verdict reporting
  RootConfig root;               // root.t_up = 0 means "data bbox diameter"
  PenaltyConfig penalty;
  AttackBudget attack;
  int threads = 0;               // 0 = OpenMP runtime default

  static ExperimentConfig defaults() { return {}; }
  static ExperimentConfig from_file(const std::string& path);

  /// Derives dataset/trainer/split seeds from one master seed.
  void apply_master_seed(std::uint64_t seed);

  /// Sizes of the three generated pools (train / heldout / eval).
  int heldout_n() const { return std::max(200, dataset.n / 4); }
  int eval_pool_n() const { return 2 * eval_samples; }
};

}  // namespace advcert
