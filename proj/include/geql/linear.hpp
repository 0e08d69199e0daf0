#pragma once

#include <cmath>

#include "geql/dataset.hpp"

namespace geql {

/// Least-squares linear regression with an optional ridge penalty. The bias
/// is handled by an appended constant-one feature; the weight layout is
/// [w_0 .. w_{d-1}, bias].
class LinearModel {
 public:
  LinearModel() = default;
  explicit LinearModel(int dim) : weights_(dim + 1, 0.0) {}

  static LinearModel fit(const Dataset& data, double ridge = 1e-6) {
    if (data.empty()) throw std::invalid_argument("LinearModel: empty dataset");
    if (ridge < 0.0) throw std::invalid_argument("LinearModel: negative ridge");
    const int d = data.dim() + 1;
    // Normal equations (X'X + ridge I) w = X'y with the bias column appended.
    std::vector<double> gram(static_cast<std::size_t>(d) * d, 0.0);
    std::vector<double> rhs(d, 0.0);
    std::vector<double> row(d);
    for (std::size_t r = 0; r < data.size(); ++r) {
      for (int j = 0; j < d - 1; ++j) row[j] = data.features[r][j];
      row[d - 1] = 1.0;
      for (int i = 0; i < d; ++i) {
        rhs[i] += row[i] * data.targets[r];
        for (int j = i; j < d; ++j) gram[i * d + j] += row[i] * row[j];
      }
    }
    for (int i = 0; i < d; ++i) {
      gram[i * d + i] += ridge;
      for (int j = 0; j < i; ++j) gram[i * d + j] = gram[j * d + i];
    }
    LinearModel model;
    model.weights_ = solve(std::move(gram), std::move(rhs), d);
    return model;
  }

  double predict(const FeatureVector& x) const {
    if (x.size() + 1 != weights_.size()) {
      throw std::invalid_argument("LinearModel: feature dimension mismatch");
    }
    double value = weights_.back();
    for (std::size_t i = 0; i < x.size(); ++i) value += weights_[i] * x[i];
    return value;
  }

  /// weights += alpha * other.weights (dimensions must agree).
  void axpy(double alpha, const LinearModel& other) {
    if (weights_.size() != other.weights_.size()) {
      throw std::invalid_argument("LinearModel: axpy dimension mismatch");
    }
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      weights_[i] += alpha * other.weights_[i];
    }
  }

  int dimension() const { return weights_.empty() ? 0 : static_cast<int>(weights_.size()) - 1; }
  const std::vector<double>& weights() const { return weights_; }
  std::vector<double>& weights() { return weights_; }

 private:
  std::vector<double> weights_;

  // Gaussian elimination with partial pivoting; near-zero pivots leave the
  // corresponding weight at zero instead of failing.
  static std::vector<double> solve(std::vector<double> a, std::vector<double> b, int d) {
    std::vector<int> cols(d);
    for (int i = 0; i < d; ++i) cols[i] = i;
    for (int k = 0; k < d; ++k) {
      int pivot = k;
      for (int i = k + 1; i < d; ++i) {
        if (std::fabs(a[i * d + k]) > std::fabs(a[pivot * d + k])) pivot = i;
      }
      if (pivot != k) {
        for (int j = 0; j < d; ++j) std::swap(a[k * d + j], a[pivot * d + j]);
        std::swap(b[k], b[pivot]);
      }
      const double p = a[k * d + k];
      if (std::fabs(p) < 1e-300) continue;
      for (int i = k + 1; i < d; ++i) {
        const double factor = a[i * d + k] / p;
        if (factor == 0.0) continue;
        for (int j = k; j < d; ++j) a[i * d + j] -= factor * a[k * d + j];
        b[i] -= factor * b[k];
      }
    }
    std::vector<double> w(d, 0.0);
    for (int k = d - 1; k >= 0; --k) {
      const double p = a[k * d + k];
      if (std::fabs(p) < 1e-300) {
        w[k] = 0.0;
        continue;
      }
      double acc = b[k];
      for (int j = k + 1; j < d; ++j) acc -= a[k * d + j] * w[j];
      w[k] = acc / p;
    }
    return w;
  }
};

}  // namespace geql
