#pragma once

#include <functional>
#include <span>

#include "geql/qapprox.hpp"

namespace geql {

/// Visit counts per (cluster, action). Entries start at zero and only ever
/// increment; storage is exactly clusters * actions counters.
class CountTable {
 public:
  CountTable(int clusters, int actions)
      : clusters_(clusters),
        actions_(actions),
        counts_(static_cast<std::size_t>(clusters) * actions, 0) {
    if (clusters < 1 || actions < 1) {
      throw std::invalid_argument("CountTable: dimensions must be positive");
    }
  }

  int clusters() const { return clusters_; }
  int actions() const { return actions_; }

  long long at(int cluster, int action) const {
    return counts_[index(cluster, action)];
  }
  void increment(int cluster, int action) { ++counts_[index(cluster, action)]; }

  std::span<const long long> row(int cluster) const {
    return {counts_.data() + static_cast<std::size_t>(cluster) * actions_,
            static_cast<std::size_t>(actions_)};
  }

  void reset() { std::fill(counts_.begin(), counts_.end(), 0); }

 private:
  int clusters_;
  int actions_;
  std::vector<long long> counts_;

  std::size_t index(int cluster, int action) const {
    if (cluster < 0 || cluster >= clusters_ || action < 0 || action >= actions_) {
      throw std::out_of_range("CountTable: index out of range");
    }
    return static_cast<std::size_t>(cluster) * actions_ + action;
  }
};

enum class IauuVariant {
  plain,                // count every action taken
  uniform_mix,          // mix t^(-1/H) uniform mass into the exploration draw
  explore_only_counts,  // count only exploration steps
};

struct IauuConfig {
  double rho = 1.0;
  IauuVariant variant = IauuVariant::plain;
  bool reset_counts_each_episode = false;
};

/// Gibbs distribution over actions, p(a) proportional to exp(-rho count[a]),
/// computed with max-subtraction so large counts cannot underflow the whole
/// row.
inline std::vector<double> iauu_distribution(std::span<const long long> counts_row,
                                             double rho) {
  if (counts_row.empty()) throw std::invalid_argument("iauu_distribution: empty row");
  long long min_count = counts_row[0];
  for (long long c : counts_row) min_count = std::min(min_count, c);
  std::vector<double> p(counts_row.size());
  double total = 0.0;
  for (std::size_t a = 0; a < counts_row.size(); ++a) {
    p[a] = std::exp(-rho * static_cast<double>(counts_row[a] - min_count));
    total += p[a];
  }
  for (double& v : p) v /= total;
  return p;
}

/// Exploration draw for the given IAUU variant. The uniform-mix variant adds
/// mix_mass to every unnormalized weight before normalizing; the other
/// variants ignore mix_mass.
inline std::vector<double> iauu_exploration_distribution(
    std::span<const long long> counts_row, const IauuConfig& cfg, double mix_mass) {
  if (cfg.variant != IauuVariant::uniform_mix) {
    return iauu_distribution(counts_row, cfg.rho);
  }
  if (counts_row.empty()) throw std::invalid_argument("iauu_distribution: empty row");
  std::vector<double> p(counts_row.size());
  double total = 0.0;
  for (std::size_t a = 0; a < counts_row.size(); ++a) {
    p[a] = std::exp(-cfg.rho * static_cast<double>(counts_row[a])) + mix_mass;
    total += p[a];
  }
  for (double& v : p) v /= total;
  return p;
}

inline int sample_discrete(const std::vector<double>& p, Rng& rng) {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double cumulative = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    cumulative += p[i];
    if (u < cumulative) return static_cast<int>(i);
  }
  return static_cast<int>(p.size()) - 1;
}

using CollapseFn = std::function<int(const FeatureVector&)>;

/// IAUU action selection: greedy with probability 1 - eps_t, otherwise a
/// draw from the Gibbs distribution over the current state's cluster counts.
/// Counting behaviour follows the configured variant.
class IauuSelector : public ActionSelector {
 public:
  IauuSelector(const QFunction& q, CollapseFn collapse, CountTable& table,
               IauuConfig cfg, int horizon)
      : q_(&q),
        collapse_(std::move(collapse)),
        table_(&table),
        cfg_(cfg),
        horizon_(horizon) {}

  void begin_episode(int episode, const LearningSchedule& schedule) {
    epsilon_t_ = schedule.epsilon(episode);
    mix_mass_ = std::pow(static_cast<double>(episode), -1.0 / horizon_);
    if (cfg_.reset_counts_each_episode) table_->reset();
  }

  ActionId select(const FeatureVector& s, Rng& rng) override {
    const int cluster = collapse_(s);
    const bool explore =
        std::uniform_real_distribution<double>(0.0, 1.0)(rng) < epsilon_t_;
    ActionId action;
    if (explore) {
      const std::vector<double> p =
          iauu_exploration_distribution(table_->row(cluster), cfg_, mix_mass_);
      action = sample_discrete(p, rng);
    } else {
      action = greedy_action(*q_, s);
    }
    if (cfg_.variant != IauuVariant::explore_only_counts || explore) {
      table_->increment(cluster, action);
    }
    return action;
  }

  double epsilon() const { return epsilon_t_; }

 private:
  const QFunction* q_;
  CollapseFn collapse_;
  CountTable* table_;
  IauuConfig cfg_;
  int horizon_;
  double epsilon_t_ = 0.0;
  double mix_mass_ = 0.0;
};

/// Baseline selection: greedy with probability 1 - eps_t, uniform otherwise.
class EpsilonUniformSelector : public ActionSelector {
 public:
  explicit EpsilonUniformSelector(const QFunction& q) : q_(&q) {}
  EpsilonUniformSelector(const QFunction& q, double epsilon)
      : q_(&q), epsilon_t_(epsilon) {}

  void begin_episode(int episode, const LearningSchedule& schedule) {
    epsilon_t_ = schedule.epsilon(episode);
  }

  ActionId select(const FeatureVector& s, Rng& rng) override {
    const bool explore =
        std::uniform_real_distribution<double>(0.0, 1.0)(rng) < epsilon_t_;
    if (explore) {
      return std::uniform_int_distribution<int>(0, q_->action_count() - 1)(rng);
    }
    return greedy_action(*q_, s);
  }

  double epsilon() const { return epsilon_t_; }

 private:
  const QFunction* q_;
  double epsilon_t_ = 0.0;
};

class UniformRandomSelector : public ActionSelector {
 public:
  explicit UniformRandomSelector(int action_count) : action_count_(action_count) {}
  ActionId select(const FeatureVector&, Rng& rng) override {
    return std::uniform_int_distribution<int>(0, action_count_ - 1)(rng);
  }

 private:
  int action_count_;
};

class GreedySelector : public ActionSelector {
 public:
  explicit GreedySelector(const QFunction& q) : q_(&q) {}
  ActionId select(const FeatureVector& s, Rng&) override {
    return greedy_action(*q_, s);
  }

 private:
  const QFunction* q_;
};

}  // namespace geql
