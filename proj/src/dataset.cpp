#include "advcert/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "advcert/csv.hpp"

namespace advcert {

namespace {

constexpr double kPi = 3.141592653589793;

Dataset make_two_moons(const DatasetSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, kPi);
  std::normal_distribution<double> jitter(0.0, spec.noise > 0.0 ? spec.noise : 0.0);
  Dataset ds;
  ds.x.reserve(spec.n);
  ds.labels.reserve(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    const double th = angle(rng);
    Vec p(2);
    int label;
    if (i % 2 == 0) {
      p << std::cos(th), std::sin(th);
      label = 1;
    } else {
      p << 1.0 - std::cos(th), 0.5 - std::sin(th);
      label = 2;
    }
    if (spec.noise > 0.0) {
      p[0] += jitter(rng);
      p[1] += jitter(rng);
    }
    ds.x.push_back(p);
    ds.labels.push_back(label);
  }
  return ds;
}

// Points scattered around the circle of the given radius, labeled exactly by
// the sign of ||x|| - radius (1 inside, 2 outside).
Dataset make_circles(const DatasetSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> radial(0.0, 2.0 * spec.radius);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::normal_distribution<double> jitter(0.0, spec.noise > 0.0 ? spec.noise : 0.0);
  Dataset ds;
  ds.x.reserve(spec.n);
  ds.labels.reserve(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    const double r = radial(rng);
    const double th = angle(rng);
    Vec p(2);
    p << r * std::cos(th), r * std::sin(th);
    if (spec.noise > 0.0) {
      p[0] += jitter(rng);
      p[1] += jitter(rng);
    }
    ds.x.push_back(p);
    ds.labels.push_back(p.norm() > spec.radius ? 2 : 1);
  }
  return ds;
}

Dataset make_blobs(const DatasetSpec& spec, std::mt19937_64& rng) {
  if (spec.classes < 2) throw ConfigError("blobs need at least two classes");
  std::normal_distribution<double> jitter(0.0, spec.noise > 0.0 ? spec.noise : 0.0);
  Dataset ds;
  ds.x.reserve(spec.n);
  ds.labels.reserve(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    const int k = i % spec.classes;
    const double th = 2.0 * kPi * k / spec.classes;
    Vec p(2);
    p << 3.0 * std::cos(th), 3.0 * std::sin(th);
    if (spec.noise > 0.0) {
      p[0] += jitter(rng);
      p[1] += jitter(rng);
    }
    ds.x.push_back(p);
    ds.labels.push_back(k + 1);
  }
  return ds;
}

// Labels by the sign of y - sin(x^2); the boundary wiggles faster and faster
// along x, the stress case where nearest-point projections stop being unique.
Dataset make_sine_stress(const DatasetSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ux(-3.0, 3.0);
  std::uniform_real_distribution<double> uy(-2.0, 2.0);
  Dataset ds;
  ds.x.reserve(spec.n);
  ds.labels.reserve(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    Vec p(2);
    p << ux(rng), uy(rng);
    ds.x.push_back(p);
    ds.labels.push_back(p[1] - std::sin(p[0] * p[0]) > 0.0 ? 1 : 2);
  }
  return ds;
}

}  // namespace

Dataset generate_dataset(const DatasetSpec& spec) {
  if (spec.n < 1) throw ConfigError("dataset size must be positive");
  std::mt19937_64 rng(spec.seed);
  if (spec.name == "two_moons") return make_two_moons(spec, rng);
  if (spec.name == "circles") return make_circles(spec, rng);
  if (spec.name == "blobs") return make_blobs(spec, rng);
  if (spec.name == "sine_stress") return make_sine_stress(spec, rng);
  throw ConfigError("unknown dataset generator: " + spec.name);
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& ds, double fraction,
                                          std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw ConfigError("split fraction must lie in (0, 1)");
  std::vector<std::size_t> idx(ds.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  const std::size_t head = static_cast<std::size_t>(std::lround(fraction * ds.size()));
  Dataset a, b;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    Dataset& dst = i < head ? a : b;
    dst.x.push_back(ds.x[idx[i]]);
    dst.labels.push_back(ds.labels[idx[i]]);
  }
  return {std::move(a), std::move(b)};
}

double bounding_box_diameter(const Dataset& ds) {
  if (ds.x.empty()) throw EmptyDatasetError("empty dataset has no diameter");
  Vec lo = ds.x.front();
  Vec hi = ds.x.front();
  for (const Vec& p : ds.x) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

void save_dataset_csv(const Dataset& ds, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write dataset file: " + path);
  os << "# advcert-dataset v1\n";
  os << "id";
  for (int d = 0; d < ds.dim(); ++d) os << ",x" << d;
  os << ",label\n";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    os << i;
    for (Eigen::Index d = 0; d < ds.x[i].size(); ++d)
      os << ',' << format_double(ds.x[i][d]);
    os << ',' << ds.labels[i] << '\n';
  }
}

Dataset load_dataset_csv(const std::string& path) {
  std::string header;
  const auto rows = read_csv(path, &header);
  const auto cols = split_csv_line(header);
  if (cols.size() < 3 || cols.front() != "id" || cols.back() != "label")
    throw IoError("not a dataset csv: " + path);
  const int dim = static_cast<int>(cols.size()) - 2;
  Dataset ds;
  ds.x.reserve(rows.size());
  ds.labels.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != cols.size()) throw IoError("ragged dataset row in " + path);
    Vec p(dim);
    for (int d = 0; d < dim; ++d) p[d] = parse_double(row[1 + d]);
    ds.x.push_back(std::move(p));
    ds.labels.push_back(static_cast<int>(parse_double(row.back())));
  }
  return ds;
}

}  // namespace advcert
