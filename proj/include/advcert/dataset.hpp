#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "advcert/network.hpp"

namespace advcert {

struct Dataset {
  std::vector<Vec> x;
  std::vector<int> labels;  // 1-based class labels

  std::size_t size() const { return x.size(); }
  int dim() const { return x.empty() ? 0 : static_cast<int>(x.front().size()); }
};

struct DatasetSpec {
  std::string name = "two_moons";  // two_moons | circles | blobs | sine_stress
  int n = 1000;
  double noise = 0.1;
  double radius = 1.0;  // circles only
  int classes = 3;      // blobs only
  std::uint64_t seed = 7;
};

/// Deterministic by seed: same spec, same bytes.
Dataset generate_dataset(const DatasetSpec& spec);

/// Seeded shuffle split; first part holds round(fraction * n) samples.
std::pair<Dataset, Dataset> split_dataset(const Dataset& ds, double fraction,
                                          std::uint64_t seed);

/// Diameter of the axis-aligned bounding box of the samples; the default
/// upper endpoint of the root search.
double bounding_box_diameter(const Dataset& ds);

void save_dataset_csv(const Dataset& ds, const std::string& path);
Dataset load_dataset_csv(const std::string& path);

}  // namespace advcert
