#pragma once

#include "geql/tree.hpp"

namespace geql {

/// Bagged regression trees; the prediction is the unweighted mean over the
/// member trees. Each tree is fit on a bootstrap resample of the same size
/// as the training set (or on the full set when bootstrapping is disabled).
class ForestModel {
 public:
  ForestModel() = default;

  static ForestModel fit(const Dataset& data, int n_trees, int max_depth, Rng& rng,
                         bool bootstrap = true, int min_leaf = 1) {
    if (data.empty()) throw std::invalid_argument("ForestModel: empty dataset");
    if (n_trees < 1) throw std::invalid_argument("ForestModel: n_trees must be >= 1");
    ForestModel forest;
    forest.trees_.reserve(n_trees);
    std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
    for (int t = 0; t < n_trees; ++t) {
      if (!bootstrap) {
        forest.trees_.push_back(RegressionTree::fit(data, max_depth, min_leaf, &rng));
        continue;
      }
      Dataset sample;
      sample.features.reserve(data.size());
      sample.targets.reserve(data.size());
      for (std::size_t i = 0; i < data.size(); ++i) {
        const std::size_t row = pick(rng);
        sample.features.push_back(data.features[row]);
        sample.targets.push_back(data.targets[row]);
      }
      forest.trees_.push_back(RegressionTree::fit(sample, max_depth, min_leaf, &rng));
    }
    return forest;
  }

  double predict(const FeatureVector& x) const {
    if (trees_.empty()) throw std::logic_error("ForestModel: predict on empty forest");
    double sum = 0.0;
    for (const RegressionTree& tree : trees_) sum += tree.predict(x);
    return sum / static_cast<double>(trees_.size());
  }

  const std::vector<RegressionTree>& trees() const { return trees_; }
  bool empty() const { return trees_.empty(); }

 private:
  std::vector<RegressionTree> trees_;
};

}  // namespace geql
