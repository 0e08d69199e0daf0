#include <catch2/catch_amalgamated.hpp>

#include "geql/linear.hpp"

using namespace geql;

TEST_CASE("fit_linear recovers an exact line with ridge zero") {
  Dataset data;
  for (double x : {0.0, 1.0, 2.0}) data.add({x}, 2.0 * x + 1.0);
  const LinearModel model = LinearModel::fit(data, 0.0);
  CHECK(model.weights()[0] == Catch::Approx(2.0).margin(1e-9));
  CHECK(model.weights()[1] == Catch::Approx(1.0).margin(1e-9));
  CHECK(model.predict({10.0}) == Catch::Approx(21.0).margin(1e-8));
}

TEST_CASE("fit_linear with all-zero targets yields zero weights") {
  Dataset data;
  data.add({1.0, 2.0}, 0.0);
  data.add({3.0, -1.0}, 0.0);
  data.add({0.5, 0.5}, 0.0);
  const LinearModel model = LinearModel::fit(data);
  for (double w : model.weights()) CHECK(w == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("single point with ridge: shrunk but finite, matches closed form") {
  // 1-D ridge oracle: minimize (w x + b - y)^2 + l (w^2 + b^2)
  const double x = 2.0, y = 3.0, ridge = 0.1;
  Dataset data;
  data.add({x}, y);
  const LinearModel model = LinearModel::fit(data, ridge);
  // closed form via the 2x2 normal equations
  const double a11 = x * x + ridge, a12 = x, a22 = 1 + ridge;
  const double det = a11 * a22 - a12 * a12;
  const double w = (y * x * a22 - a12 * y) / det;
  const double b = (a11 * y - y * x * a12) / det;
  CHECK(model.weights()[0] == Catch::Approx(w).margin(1e-10));
  CHECK(model.weights()[1] == Catch::Approx(b).margin(1e-10));
  const double prediction = model.predict({x});
  CHECK(std::fabs(prediction) < std::fabs(y) + 1e-12);  // ridge shrinks
  CHECK(prediction == Catch::Approx(y).margin(0.5));
}

TEST_CASE("residuals are orthogonal to the features when ridge is zero") {
  Rng rng(29);
  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  for (int rep = 0; rep < 30; ++rep) {
    Dataset data;
    for (int r = 0; r < 25; ++r) {
      FeatureVector f = {unit(rng), unit(rng), unit(rng)};
      data.add(f, unit(rng));
    }
    const LinearModel model = LinearModel::fit(data, 0.0);
    for (int j = 0; j < 4; ++j) {  // three features plus the implicit bias
      double dot = 0.0;
      for (std::size_t r = 0; r < data.size(); ++r) {
        const double residual = model.predict(data.features[r]) - data.targets[r];
        const double feature = j < 3 ? data.features[r][j] : 1.0;
        dot += residual * feature;
      }
      CHECK(std::fabs(dot) < 1e-8);
    }
  }
}

TEST_CASE("axpy accumulates scaled weights") {
  Dataset data;
  for (double x : {0.0, 1.0, 2.0}) data.add({x}, x);
  const LinearModel h = LinearModel::fit(data, 0.0);
  LinearModel acc(1);
  acc.axpy(0.5, h);
  acc.axpy(0.5, h);
  CHECK(acc.predict({3.0}) == Catch::Approx(h.predict({3.0})).margin(1e-9));
}

TEST_CASE("fit_linear rejects an empty dataset") {
  CHECK_THROWS_AS(LinearModel::fit(Dataset{}), std::invalid_argument);
}
