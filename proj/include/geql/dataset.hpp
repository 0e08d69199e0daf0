#pragma once

#include "geql/core.hpp"

namespace geql {

/// Regression rows (feature vector, target), all sharing one dimension.
struct Dataset {
  std::vector<FeatureVector> features;
  std::vector<double> targets;

  std::size_t size() const { return features.size(); }
  bool empty() const { return features.empty(); }
  int dim() const { return features.empty() ? 0 : static_cast<int>(features.front().size()); }

  void add(FeatureVector x, double y) {
    if (!features.empty() && x.size() != features.front().size()) {
      throw std::invalid_argument("Dataset: inconsistent feature dimension");
    }
    features.push_back(std::move(x));
    targets.push_back(y);
  }

  double target_mean() const {
    if (targets.empty()) return 0.0;
    double sum = 0.0;
    for (double y : targets) sum += y;
    return sum / static_cast<double>(targets.size());
  }
};

}  // namespace geql
