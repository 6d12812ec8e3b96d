#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "resnet_synth/geometry.hpp"
#include "resnet_synth/linalg.hpp"

namespace resnet_synth::testing {

inline LabeledDataset xor_dataset() {
  return {{{0, 0}, {1, 1}, {0, 1}, {1, 0}}, {1, 1, 2, 2}, 2, 2};
}

// Distinct points in [-5, 5]^n, pairwise Chebyshev distance >= min_gap. Fewer
// than `size` points come back if the rejection budget runs out.
inline LabeledDataset random_dataset(std::uint64_t seed, std::size_t n, int k, std::size_t size,
                                     double min_gap = 0.05) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  std::uniform_int_distribution<int> label(1, k);
  LabeledDataset d;
  d.n = n;
  d.k = k;
  for (std::size_t attempt = 0; attempt < 50 * size && d.size() < size; ++attempt) {
    Vector x(n);
    for (double& v : x) v = coord(rng);
    bool far = true;
    for (const Vector& y : d.points) {
      double dist = 0.0;
      for (std::size_t j = 0; j < n; ++j) dist = std::max(dist, std::abs(x[j] - y[j]));
      if (dist < min_gap) {
        far = false;
        break;
      }
    }
    if (!far) continue;
    d.points.push_back(std::move(x));
    int l = d.labels.size() < 2 ? static_cast<int>(d.labels.size()) + 1 : label(rng);
    d.labels.push_back(l);
  }
  return d;
}

struct CorpusEntry {
  std::uint64_t seed;
  LabeledDataset data;
};

// The fixed 200-dataset corpus used by the acceptance suite.
inline std::vector<CorpusEntry> acceptance_corpus(std::size_t count = 200) {
  std::vector<CorpusEntry> corpus;
  std::mt19937_64 meta(20240601);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  std::uniform_int_distribution<int> cats(2, 5);
  std::uniform_int_distribution<std::size_t> size(2, 200);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t seed = 1000 + i;
    std::size_t n = dim(meta);
    int k = cats(meta);
    std::size_t m = size(meta);
    corpus.push_back({seed, random_dataset(seed, n, k, m)});
  }
  return corpus;
}

inline std::vector<Vector> random_probes(std::uint64_t seed, const Box& box, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<Vector> probes;
  for (std::size_t i = 0; i < count; ++i) {
    Vector x(box.lower.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] = std::uniform_real_distribution<double>(box.lower[j], box.upper[j])(rng);
    }
    probes.push_back(std::move(x));
  }
  return probes;
}

}  // namespace resnet_synth::testing
