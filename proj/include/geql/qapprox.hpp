#pragma once

#include <memory>
#include <unordered_map>

#include "geql/forest.hpp"
#include "geql/linear.hpp"

namespace geql {

/// State-action input encoding shared by every function approximator: the
/// observation concatenated with a one-hot action block.
inline FeatureVector encode_state_action(const FeatureVector& s, ActionId a,
                                         int action_count) {
  FeatureVector x;
  x.reserve(s.size() + action_count);
  x.insert(x.end(), s.begin(), s.end());
  for (int i = 0; i < action_count; ++i) x.push_back(i == a ? 1.0 : 0.0);
  return x;
}

class QFunction {
 public:
  virtual ~QFunction() = default;
  virtual double value(const FeatureVector& s, ActionId a) const = 0;
  virtual int action_count() const = 0;
};

/// argmax over actions; ties break to the lowest action index.
inline ActionId greedy_action(const QFunction& q, const FeatureVector& s) {
  ActionId best = 0;
  double best_value = q.value(s, 0);
  for (ActionId a = 1; a < q.action_count(); ++a) {
    const double v = q.value(s, a);
    if (v > best_value) {
      best_value = v;
      best = a;
    }
  }
  return best;
}

inline double max_q(const QFunction& q, const FeatureVector& s) {
  double best = q.value(s, 0);
  for (ActionId a = 1; a < q.action_count(); ++a) best = std::max(best, q.value(s, a));
  return best;
}

/// Per-episode decay of the exploration and learning rates:
/// eps_t = eps0 / (1 + decay t), alpha_t = alpha0 / (1 + decay t).
struct LearningSchedule {
  double epsilon0 = 0.4;
  double alpha0 = 0.15;
  double decay = 0.04;

  double epsilon(int episode) const { return epsilon0 / (1.0 + decay * episode); }
  double alpha(int episode) const { return alpha0 / (1.0 + decay * episode); }
};

struct TreeParams {
  int max_depth = 2;
  int min_leaf = 1;
};

/// Incrementally boosted Q-approximator: a weighted sum of regression trees
/// over the state-action encoding. An empty ensemble evaluates to zero
/// everywhere.
class BoostedQ : public QFunction {
 public:
  struct Stage {
    double weight;
    RegressionTree tree;
  };

  BoostedQ(int feature_dim, int action_count)
      : feature_dim_(feature_dim), action_count_(action_count) {}

  double value(const FeatureVector& s, ActionId a) const override {
    if (static_cast<int>(s.size()) != feature_dim_) {
      throw std::invalid_argument("BoostedQ: observation dimension mismatch");
    }
    if (stages_.empty()) return 0.0;
    const FeatureVector x = encode_state_action(s, a, action_count_);
    double sum = 0.0;
    for (const Stage& stage : stages_) sum += stage.weight * stage.tree.predict(x);
    return sum;
  }

  int action_count() const override { return action_count_; }
  int feature_dim() const { return feature_dim_; }

  void add_stage(double weight, RegressionTree tree) {
    stages_.push_back({weight, std::move(tree)});
  }
  void pop_stage() { stages_.pop_back(); }
  std::size_t stage_count() const { return stages_.size(); }
  const std::vector<Stage>& stages() const { return stages_; }

 private:
  int feature_dim_;
  int action_count_;
  std::vector<Stage> stages_;
};

/// Q-learning targets of the boosting regression: one row per transition,
/// features encode(s, a) and target (r + gamma max_a' Q(s', a')) - Q(s, a).
/// The bootstrap term is zero on terminal transitions.
inline Dataset residual_targets(const EpisodeTrace& trace, const QFunction& q,
                                double gamma) {
  if (trace.empty()) throw std::invalid_argument("residual_targets: empty trace");
  Dataset data;
  const int actions = q.action_count();
  for (const Transition& t : trace.transitions) {
    const double bootstrap = t.terminal ? 0.0 : gamma * max_q(q, t.next_state);
    const double target = (t.reward + bootstrap) - q.value(t.state, t.action);
    data.add(encode_state_action(t.state, t.action, actions), target);
  }
  return data;
}

/// One boosting iteration: fit a weak tree to the TD residuals of the trace
/// and append it with weight alpha_t. Prior stages are untouched.
inline void boost_step(BoostedQ& q, const EpisodeTrace& trace, double alpha_t,
                       double gamma, const TreeParams& params, Rng* rng = nullptr) {
  Dataset data = residual_targets(trace, q, gamma);
  q.add_stage(alpha_t,
              RegressionTree::fit(data, params.max_depth, params.min_leaf, rng));
}

/// Linear Q over the state-action encoding, grown by weighted accumulation
/// of per-episode least-squares fits to the TD residuals.
class LinearQ : public QFunction {
 public:
  LinearQ(int feature_dim, int action_count)
      : feature_dim_(feature_dim),
        action_count_(action_count),
        model_(feature_dim + action_count) {}

  double value(const FeatureVector& s, ActionId a) const override {
    return model_.predict(encode_state_action(s, a, action_count_));
  }
  int action_count() const override { return action_count_; }

  void accumulate(double alpha, const LinearModel& h) { model_.axpy(alpha, h); }
  const LinearModel& model() const { return model_; }

 private:
  int feature_dim_;
  int action_count_;
  LinearModel model_;
};

enum class BatchKind { boosted, forest };

/// Fitted-Q style batch approximator: periodically retrained from scratch on
/// a window of recent episodes, against one-step look-ahead targets computed
/// with the pre-refit model. Evaluates to zero until the first refit.
class BatchQ : public QFunction {
 public:
  BatchQ(int feature_dim, int action_count, BatchKind kind, int retrain_period,
         int window)
      : feature_dim_(feature_dim),
        action_count_(action_count),
        kind_(kind),
        retrain_period_(retrain_period),
        window_(window) {}

  double value(const FeatureVector& s, ActionId a) const override {
    if (!trained_) return 0.0;
    const FeatureVector x = encode_state_action(s, a, action_count_);
    if (kind_ == BatchKind::forest) return forest_.predict(x);
    double sum = base_;
    for (const RegressionTree& tree : boost_trees_) sum += shrinkage_ * tree.predict(x);
    return sum;
  }

  int action_count() const override { return action_count_; }
  bool trained() const { return trained_; }
  int retrain_period() const { return retrain_period_; }
  int window() const { return window_; }
  BatchKind kind() const { return kind_; }

  /// Discards the current model and fits a fresh ensemble of ensemble_size
  /// trees on all transitions in the window (single fitted-Q sweep).
  void refit(const std::vector<EpisodeTrace>& window_traces, double gamma,
             int ensemble_size, const TreeParams& params, Rng& rng) {
    if (window_traces.empty()) throw std::invalid_argument("BatchQ: empty window");
    if (ensemble_size < 1) throw std::invalid_argument("BatchQ: ensemble_size < 1");
    Dataset data;
    for (const EpisodeTrace& trace : window_traces) {
      for (const Transition& t : trace.transitions) {
        const double bootstrap = t.terminal ? 0.0 : gamma * max_q(*this, t.next_state);
        data.add(encode_state_action(t.state, t.action, action_count_),
                 t.reward + bootstrap);
      }
    }
    if (data.empty()) throw std::invalid_argument("BatchQ: window holds no transitions");
    if (kind_ == BatchKind::forest) {
      forest_ = ForestModel::fit(data, ensemble_size, params.max_depth, rng, true,
                                 params.min_leaf);
    } else {
      base_ = data.target_mean();
      boost_trees_.clear();
      boost_trees_.reserve(ensemble_size);
      std::vector<double> residual(data.targets);
      for (double& r : residual) r -= base_;
      Dataset stage{data.features, residual};
      for (int j = 0; j < ensemble_size; ++j) {
        RegressionTree tree =
            RegressionTree::fit(stage, params.max_depth, params.min_leaf, &rng);
        for (std::size_t i = 0; i < stage.size(); ++i) {
          stage.targets[i] -= shrinkage_ * tree.predict(stage.features[i]);
        }
        boost_trees_.push_back(std::move(tree));
      }
    }
    trained_ = true;
  }

 private:
  int feature_dim_;
  int action_count_;
  BatchKind kind_;
  int retrain_period_;
  int window_;
  bool trained_ = false;
  // batch gradient boosting: constant base fit plus shrunk residual trees
  double base_ = 0.0;
  double shrinkage_ = 0.1;
  std::vector<RegressionTree> boost_trees_;
  ForestModel forest_;
};

/// Q-table over discrete state ids; unvisited entries read as zero.
class TabularQ {
 public:
  explicit TabularQ(int action_count) : action_count_(action_count) {}

  double value(int state, ActionId a) const {
    const auto it = table_.find(key(state, a));
    return it == table_.end() ? 0.0 : it->second;
  }

  void set(int state, ActionId a, double v) { table_[key(state, a)] = v; }

  double max_value(int state) const {
    double best = value(state, 0);
    for (ActionId a = 1; a < action_count_; ++a) best = std::max(best, value(state, a));
    return best;
  }

  ActionId greedy(int state) const {
    ActionId best = 0;
    double best_value = value(state, 0);
    for (ActionId a = 1; a < action_count_; ++a) {
      const double v = value(state, a);
      if (v > best_value) {
        best_value = v;
        best = a;
      }
    }
    return best;
  }

  /// Standard Q-learning update; the bootstrap term is dropped on terminal
  /// transitions.
  void update(int state, ActionId a, double reward, int next_state, bool terminal,
              double alpha, double gamma) {
    const double bootstrap = terminal ? 0.0 : gamma * max_value(next_state);
    const double current = value(state, a);
    table_[key(state, a)] = current + alpha * ((reward + bootstrap) - current);
  }

  int action_count() const { return action_count_; }
  std::size_t entry_count() const { return table_.size(); }

 private:
  int action_count_;
  std::unordered_map<long long, double> table_;

  long long key(int state, ActionId a) const {
    return static_cast<long long>(state) * action_count_ + a;
  }
};

}  // namespace geql
