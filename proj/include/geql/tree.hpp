#pragma once

#include <algorithm>
#include <limits>
#include <ostream>

#include "geql/dataset.hpp"

namespace geql {

/// Depth-limited CART regression tree. Splits are searched exhaustively over
/// midpoints between consecutive distinct feature values and chosen to
/// minimize the total squared error of the two children; ties go to the
/// lowest feature index, then the lowest threshold. Leaves predict the mean
/// of the targets routed to them.
class RegressionTree {
 public:
  struct Node {
    bool leaf = true;
    int feature = -1;
    double threshold = 0.0;
    double value = 0.0;
    int left = -1;
    int right = -1;
  };

  RegressionTree() = default;

  /// With an rng, ties among equal-SSE splits are broken uniformly at random
  /// (reproducible through the seed); without one, the lowest feature index
  /// and then the lowest threshold win.
  static RegressionTree fit(const Dataset& data, int max_depth, int min_leaf = 1,
                            Rng* rng = nullptr) {
    if (data.empty()) throw std::invalid_argument("RegressionTree: empty dataset");
    if (max_depth < 0) throw std::invalid_argument("RegressionTree: negative max_depth");
    if (min_leaf < 1) throw std::invalid_argument("RegressionTree: min_leaf must be >= 1");
    RegressionTree tree;
    tree.dim_ = data.dim();
    std::vector<int> order(data.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    tree.build(data, order, 0, static_cast<int>(order.size()), 0, max_depth, min_leaf,
               rng);
    return tree;
  }

  double predict(const FeatureVector& x) const {
    if (static_cast<int>(x.size()) != dim_) {
      throw std::invalid_argument("RegressionTree: feature dimension mismatch");
    }
    int node = 0;
    while (!nodes_[node].leaf) {
      node = x[nodes_[node].feature] < nodes_[node].threshold ? nodes_[node].left
                                                              : nodes_[node].right;
    }
    return nodes_[node].value;
  }

  int dimension() const { return dim_; }
  const std::vector<Node>& nodes() const { return nodes_; }

  int depth() const { return nodes_.empty() ? 0 : depth_below(0); }

  /// Plain-text dump, one node per line: id, kind, payload, children.
  void dump(std::ostream& os) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& n = nodes_[i];
      if (n.leaf) {
        os << i << " leaf " << n.value << "\n";
      } else {
        os << i << " split " << n.feature << " " << n.threshold << " " << n.left
           << " " << n.right << "\n";
      }
    }
  }

 private:
  std::vector<Node> nodes_;
  int dim_ = 0;

  int depth_below(int node) const {
    if (nodes_[node].leaf) return 0;
    return 1 + std::max(depth_below(nodes_[node].left), depth_below(nodes_[node].right));
  }

  struct Split {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double sse = std::numeric_limits<double>::infinity();
  };

  // Builds the subtree for rows order[lo, hi) and returns its node index.
  int build(const Dataset& data, std::vector<int>& order, int lo, int hi, int depth,
            int max_depth, int min_leaf, Rng* rng) {
    const int n = hi - lo;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = lo; i < hi; ++i) {
      const double y = data.targets[order[i]];
      sum += y;
      sum_sq += y * y;
    }
    const double mean = sum / n;
    const double node_sse = std::max(0.0, sum_sq - sum * sum / n);

    const int index = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{});
    nodes_[index].value = mean;

    if (depth >= max_depth || n <= min_leaf || node_sse <= 0.0) return index;

    const Split split = best_split(data, order, lo, hi, min_leaf, rng);
    if (!split.found) return index;

    auto mid_it = std::stable_partition(
        order.begin() + lo, order.begin() + hi, [&](int row) {
          return data.features[row][split.feature] < split.threshold;
        });
    const int mid = static_cast<int>(mid_it - order.begin());

    nodes_[index].leaf = false;
    nodes_[index].feature = split.feature;
    nodes_[index].threshold = split.threshold;
    const int left = build(data, order, lo, mid, depth + 1, max_depth, min_leaf, rng);
    nodes_[index].left = left;
    const int right = build(data, order, mid, hi, depth + 1, max_depth, min_leaf, rng);
    nodes_[index].right = right;
    return index;
  }

  Split best_split(const Dataset& data, const std::vector<int>& order, int lo, int hi,
                   int min_leaf, Rng* rng) const {
    const int n = hi - lo;
    Split best;
    int ties = 0;
    std::vector<std::pair<double, double>> rows(n);  // (feature value, target)
    for (int f = 0; f < dim_; ++f) {
      for (int i = 0; i < n; ++i) {
        const int row = order[lo + i];
        rows[i] = {data.features[row][f], data.targets[row]};
      }
      std::sort(rows.begin(), rows.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      double left_sum = 0.0, left_sq = 0.0;
      double total_sum = 0.0, total_sq = 0.0;
      for (const auto& r : rows) {
        total_sum += r.second;
        total_sq += r.second * r.second;
      }
      for (int i = 0; i < n - 1; ++i) {
        left_sum += rows[i].second;
        left_sq += rows[i].second * rows[i].second;
        if (rows[i].first == rows[i + 1].first) continue;
        const int n_left = i + 1;
        const int n_right = n - n_left;
        if (n_left < min_leaf || n_right < min_leaf) continue;
        const double right_sum = total_sum - left_sum;
        const double right_sq = total_sq - left_sq;
        const double sse = (left_sq - left_sum * left_sum / n_left) +
                           (right_sq - right_sum * right_sum / n_right);
        const bool tie = rng != nullptr && best.found &&
                         std::fabs(sse - best.sse) <=
                             1e-12 * std::max(1.0, std::fabs(best.sse));
        if (tie) {
          // reservoir draw: keep each tied candidate with probability 1/k
          ++ties;
          if (std::uniform_int_distribution<int>(0, ties)(*rng) != 0) continue;
        } else if (sse >= best.sse) {
          continue;
        } else {
          ties = 0;
        }
        best.found = true;
        best.feature = f;
        best.threshold = (rows[i].first + rows[i + 1].first) / 2.0;
        best.sse = std::min(sse, best.sse);
      }
    }
    return best;
  }
};

}  // namespace geql
