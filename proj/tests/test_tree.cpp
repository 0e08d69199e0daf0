#include <catch2/catch_amalgamated.hpp>

#include "geql/tree.hpp"

using namespace geql;

namespace {

Dataset one_dim(const std::vector<std::pair<double, double>>& rows) {
  Dataset data;
  for (const auto& [x, y] : rows) data.add({x}, y);
  return data;
}

double training_sse(const RegressionTree& tree, const Dataset& data) {
  double sse = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double e = tree.predict(data.features[i]) - data.targets[i];
    sse += e * e;
  }
  return sse;
}

Dataset random_dataset(Rng& rng, int rows, int dims) {
  std::uniform_real_distribution<double> unit(-3.0, 3.0);
  Dataset data;
  for (int r = 0; r < rows; ++r) {
    FeatureVector x(dims);
    for (double& v : x) v = unit(rng);
    data.add(std::move(x), unit(rng));
  }
  return data;
}

}  // namespace

TEST_CASE("fit_tree on a single row predicts that row's target everywhere") {
  Dataset data = one_dim({{0.3, 7.5}});
  const RegressionTree tree = RegressionTree::fit(data, 3);
  CHECK(tree.predict({0.3}) == 7.5);
  CHECK(tree.predict({-100.0}) == 7.5);
  CHECK(tree.depth() == 0);
}

TEST_CASE("fit_tree with zero-variance targets stays a depth-0 stump") {
  Dataset data = one_dim({{0, 3.0}, {1, 3.0}, {2, 3.0}});
  const RegressionTree tree = RegressionTree::fit(data, 2);
  CHECK(tree.depth() == 0);
  CHECK(tree.predict({1.5}) == 3.0);
}

TEST_CASE("fit_tree finds the exhaustive-search split on a step function") {
  // hand oracle: best split separates {0,0} from {10,10}, threshold in (1,2]
  Dataset data = one_dim({{0, 0.0}, {1, 0.0}, {2, 10.0}, {3, 10.0}});
  const RegressionTree tree = RegressionTree::fit(data, 1);
  REQUIRE(tree.depth() == 1);
  const auto& root = tree.nodes()[0];
  CHECK(root.threshold > 1.0);
  CHECK(root.threshold <= 2.0);
  CHECK(tree.predict({0.5}) == 0.0);
  CHECK(tree.predict({2.5}) == 10.0);
  CHECK(training_sse(tree, data) == 0.0);
}

TEST_CASE("predict_tree routes strictly: left iff feature < threshold") {
  Dataset data = one_dim({{0, 0.0}, {1, 0.0}, {2, 10.0}, {3, 10.0}});
  const RegressionTree tree = RegressionTree::fit(data, 1);
  const double thr = tree.nodes()[0].threshold;
  CHECK(tree.predict({thr - 1e-9}) == 0.0);
  CHECK(tree.predict({thr}) == 10.0);
}

TEST_CASE("fit_tree rejects an empty dataset; predict rejects bad dimensions") {
  CHECK_THROWS_AS(RegressionTree::fit(Dataset{}, 2), std::invalid_argument);
  Dataset data = one_dim({{0, 1.0}, {1, 2.0}});
  const RegressionTree tree = RegressionTree::fit(data, 2);
  CHECK_THROWS_AS(tree.predict({0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("training SSE is at most the best-constant SSE") {
  Rng rng(101);
  for (int rep = 0; rep < 200; ++rep) {
    const Dataset data = random_dataset(rng, 2 + rep % 40, 1 + rep % 4);
    const RegressionTree tree = RegressionTree::fit(data, 2);
    const double mean = data.target_mean();
    double constant_sse = 0.0, zero_sse = 0.0;
    for (double y : data.targets) {
      constant_sse += (y - mean) * (y - mean);
      zero_sse += y * y;
    }
    const double sse = training_sse(tree, data);
    CHECK(sse <= constant_sse + 1e-9);
    CHECK(constant_sse <= zero_sse + 1e-9);
  }
}

TEST_CASE("increasing max_depth never increases training SSE") {
  Rng rng(55);
  for (int rep = 0; rep < 50; ++rep) {
    const Dataset data = random_dataset(rng, 30, 3);
    double previous = std::numeric_limits<double>::infinity();
    for (int depth = 0; depth <= 4; ++depth) {
      const double sse = training_sse(RegressionTree::fit(data, depth), data);
      CHECK(sse <= previous + 1e-9);
      previous = sse;
    }
  }
}

TEST_CASE("predictions are piecewise constant between thresholds") {
  Rng rng(77);
  const Dataset data = random_dataset(rng, 40, 2);
  const RegressionTree tree = RegressionTree::fit(data, 2);
  std::vector<double> thresholds;
  for (const auto& node : tree.nodes()) {
    if (!node.leaf) thresholds.push_back(node.threshold);
  }
  std::uniform_real_distribution<double> unit(-3.0, 3.0);
  for (int rep = 0; rep < 200; ++rep) {
    FeatureVector x = {unit(rng), unit(rng)};
    FeatureVector nudged = x;
    // a perturbation too small to cross any split boundary
    double margin = std::numeric_limits<double>::infinity();
    for (double v : x) {
      for (double thr : thresholds) margin = std::min(margin, std::fabs(v - thr));
    }
    if (margin <= 0.0) continue;
    const double delta = margin / 2.0;
    for (double& v : nudged) v += (rep % 2 == 0 ? delta : -delta);
    CHECK(tree.predict(x) == tree.predict(nudged));
  }
}

TEST_CASE("tree depth never exceeds max_depth") {
  Rng rng(13);
  for (int rep = 0; rep < 30; ++rep) {
    const Dataset data = random_dataset(rng, 60, 3);
    for (int depth = 0; depth <= 3; ++depth) {
      CHECK(RegressionTree::fit(data, depth).depth() <= depth);
    }
  }
}

TEST_CASE("dump writes one line per node") {
  Dataset data = one_dim({{0, 0.0}, {1, 0.0}, {2, 10.0}, {3, 10.0}});
  const RegressionTree tree = RegressionTree::fit(data, 1);
  std::ostringstream os;
  tree.dump(os);
  int lines = 0;
  for (char c : os.str()) lines += c == '\n';
  CHECK(lines == static_cast<int>(tree.nodes().size()));
}
