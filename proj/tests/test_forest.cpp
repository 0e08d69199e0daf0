#include <catch2/catch_amalgamated.hpp>

#include "geql/forest.hpp"

using namespace geql;

TEST_CASE("forest of constant targets predicts the constant") {
  Dataset data;
  for (double x : {0.0, 1.0, 2.0, 3.0}) data.add({x}, 4.5);
  Rng rng(5);
  const ForestModel forest = ForestModel::fit(data, 7, 2, rng);
  CHECK(forest.predict({1.7}) == Catch::Approx(4.5));
  CHECK(forest.predict({-3.0}) == Catch::Approx(4.5));
}

TEST_CASE("single tree without bootstrap reduces to fit_tree") {
  Dataset data;
  for (int i = 0; i < 12; ++i) data.add({static_cast<double>(i)}, i < 6 ? 0.0 : 2.0);
  Rng rng(17);
  const ForestModel forest = ForestModel::fit(data, 1, 2, rng, /*bootstrap=*/false);
  const RegressionTree tree = RegressionTree::fit(data, 2);
  for (double x = -1.0; x < 13.0; x += 0.25) {
    CHECK(forest.predict({x}) == tree.predict({x}));
  }
}

TEST_CASE("forest predictions stay inside the training target range") {
  Rng rng(23);
  std::uniform_real_distribution<double> unit(-5.0, 5.0);
  for (int rep = 0; rep < 30; ++rep) {
    Dataset data;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int r = 0; r < 20; ++r) {
      const double y = unit(rng);
      lo = std::min(lo, y);
      hi = std::max(hi, y);
      data.add({unit(rng), unit(rng)}, y);
    }
    const ForestModel forest = ForestModel::fit(data, 5, 2, rng);
    for (int probe = 0; probe < 20; ++probe) {
      const double prediction = forest.predict({unit(rng), unit(rng)});
      CHECK(prediction >= lo - 1e-9);
      CHECK(prediction <= hi + 1e-9);
    }
  }
}

TEST_CASE("forest fitting is deterministic given the seed") {
  Dataset data;
  Rng data_rng(31);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int r = 0; r < 30; ++r) data.add({unit(data_rng)}, unit(data_rng));
  Rng rng_a(9), rng_b(9);
  const ForestModel a = ForestModel::fit(data, 11, 2, rng_a);
  const ForestModel b = ForestModel::fit(data, 11, 2, rng_b);
  for (double x = -1.0; x <= 1.0; x += 0.05) {
    CHECK(a.predict({x}) == b.predict({x}));
  }
}

TEST_CASE("fit_forest input validation") {
  Dataset data;
  data.add({0.0}, 1.0);
  Rng rng(1);
  CHECK_THROWS_AS(ForestModel::fit(Dataset{}, 3, 2, rng), std::invalid_argument);
  CHECK_THROWS_AS(ForestModel::fit(data, 0, 2, rng), std::invalid_argument);
}
