#pragma once

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "geql/core.hpp"

namespace geql {

inline double squared_distance(const FeatureVector& a, const FeatureVector& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

/// State-collapsing function phi: maps a feature vector to the nearest of m
/// cluster centers (squared Euclidean metric, ties to the lowest index).
class StateCollapser {
 public:
  StateCollapser() = default;
  explicit StateCollapser(std::vector<FeatureVector> centers)
      : centers_(std::move(centers)) {
    if (centers_.empty()) throw std::invalid_argument("StateCollapser: no centers");
    for (const FeatureVector& c : centers_) {
      if (c.size() != centers_.front().size()) {
        throw std::invalid_argument("StateCollapser: inconsistent center dimension");
      }
    }
  }

  int collapse(const FeatureVector& s) const {
    if (s.size() != centers_.front().size()) {
      throw std::invalid_argument("StateCollapser: feature dimension mismatch");
    }
    int best = 0;
    double best_dist = squared_distance(s, centers_[0]);
    for (std::size_t c = 1; c < centers_.size(); ++c) {
      const double d = squared_distance(s, centers_[c]);
      if (d < best_dist) {
        best_dist = d;
        best = static_cast<int>(c);
      }
    }
    return best;
  }

  int cluster_count() const { return static_cast<int>(centers_.size()); }
  int dimension() const {
    return centers_.empty() ? 0 : static_cast<int>(centers_.front().size());
  }
  const std::vector<FeatureVector>& centers() const { return centers_; }

  /// CSV: one row per center, full double precision.
  void save_csv(std::ostream& os) const {
    os << std::setprecision(17);
    for (const FeatureVector& c : centers_) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i > 0) os << ',';
        os << c[i];
      }
      os << '\n';
    }
  }

  static StateCollapser load_csv(std::istream& is) {
    std::vector<FeatureVector> centers;
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      FeatureVector row;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
      centers.push_back(std::move(row));
    }
    return StateCollapser(std::move(centers));
  }

 private:
  std::vector<FeatureVector> centers_;
};

/// Lloyd's algorithm with k-means++ initialization. Stops when assignments
/// are unchanged or after max_iters sweeps; empty clusters are reseeded to
/// the corpus point farthest from its assigned center. The per-sweep inertia
/// is checked to be nonincreasing and optionally reported.
inline StateCollapser kmeans_fit(const std::vector<FeatureVector>& corpus, int m,
                                 int max_iters, Rng& rng,
                                 std::vector<double>* inertia_history = nullptr) {
  if (m < 1) throw std::invalid_argument("kmeans_fit: m must be >= 1");
  if (static_cast<int>(corpus.size()) < m) {
    throw std::invalid_argument("kmeans_fit: corpus smaller than cluster count");
  }
  const std::size_t n = corpus.size();
  const std::size_t dim = corpus.front().size();
  for (const FeatureVector& x : corpus) {
    if (x.size() != dim) throw std::invalid_argument("kmeans_fit: inconsistent dims");
  }

  // k-means++ seeding
  std::vector<FeatureVector> centers;
  centers.reserve(m);
  std::uniform_int_distribution<std::size_t> first(0, n - 1);
  centers.push_back(corpus[first(rng)]);
  std::vector<double> dist_sq(n);
  while (static_cast<int>(centers.size()) < m) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = squared_distance(corpus[i], centers[0]);
      for (std::size_t c = 1; c < centers.size(); ++c) {
        best = std::min(best, squared_distance(corpus[i], centers[c]));
      }
      dist_sq[i] = best;
      total += best;
    }
    std::size_t chosen;
    if (total <= 0.0) {
      chosen = first(rng);
    } else {
      const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
      double cumulative = 0.0;
      chosen = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        cumulative += dist_sq[i];
        if (u < cumulative) {
          chosen = i;
          break;
        }
      }
    }
    centers.push_back(corpus[chosen]);
  }

  std::vector<int> assignment(n, -1);
  double prev_inertia = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < max_iters; ++iter) {
    bool changed = false;
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double best_dist = squared_distance(corpus[i], centers[0]);
      for (int c = 1; c < m; ++c) {
        const double d = squared_distance(corpus[i], centers[c]);
        if (d < best_dist) {
          best_dist = d;
          best = c;
        }
      }
      if (assignment[i] != best) {
        assignment[i] = best;
        changed = true;
      }
      inertia += best_dist;
    }
    if (inertia > prev_inertia * (1.0 + 1e-12) + 1e-12) {
      throw std::logic_error("kmeans_fit: inertia increased");
    }
    prev_inertia = inertia;
    if (inertia_history) inertia_history->push_back(inertia);
    if (!changed) break;

    std::vector<FeatureVector> sums(m, FeatureVector(dim, 0.0));
    std::vector<std::size_t> sizes(m, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const int c = assignment[i];
      ++sizes[c];
      for (std::size_t j = 0; j < dim; ++j) sums[c][j] += corpus[i][j];
    }
    std::vector<bool> reseeded_point(n, false);
    for (int c = 0; c < m; ++c) {
      if (sizes[c] > 0) {
        for (std::size_t j = 0; j < dim; ++j) {
          centers[c][j] = sums[c][j] / static_cast<double>(sizes[c]);
        }
        continue;
      }
      // Reseed an empty cluster to the point farthest from its own center.
      std::size_t farthest = 0;
      double farthest_dist = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (reseeded_point[i]) continue;
        const double d = squared_distance(corpus[i], centers[assignment[i]]);
        if (d > farthest_dist) {
          farthest_dist = d;
          farthest = i;
        }
      }
      centers[c] = corpus[farthest];
      reseeded_point[farthest] = true;
    }
  }
  return StateCollapser(std::move(centers));
}

/// Offline collapser training: run a uniform-random policy, keep every
/// sample_every-th observation, and cluster the collected corpus.
inline StateCollapser build_collapser_from_random_policy(Environment& env,
                                                         long duration_steps,
                                                         int sample_every, int m,
                                                         Rng& rng,
                                                         int max_iters = 100) {
  if (sample_every < 1) {
    throw std::invalid_argument("build_collapser: sample_every must be >= 1");
  }
  if (duration_steps < static_cast<long>(m) * sample_every) {
    throw std::invalid_argument("build_collapser: duration too short for m clusters");
  }
  std::vector<FeatureVector> corpus;
  corpus.reserve(duration_steps / sample_every);
  std::uniform_int_distribution<int> pick(0, env.action_count() - 1);
  env.reset(rng);
  for (long step = 1; step <= duration_steps; ++step) {
    StepResult result = env.step(pick(rng), rng);
    if (step % sample_every == 0) corpus.push_back(result.observation);
    if (result.terminal) env.reset(rng);
  }
  return kmeans_fit(corpus, m, max_iters, rng);
}

}  // namespace geql
