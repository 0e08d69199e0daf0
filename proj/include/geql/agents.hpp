#pragma once

#include <deque>

#include "geql/clustering.hpp"
#include "geql/exploration.hpp"

namespace geql {

enum class ApproxKind { booster, linear, batchboost, forest, tabular };
enum class ExploreKind { uniform, iauu };

struct AgentConfig {
  ApproxKind approx = ApproxKind::booster;
  ExploreKind explore = ExploreKind::iauu;
  LearningSchedule schedule;
  double gamma = 0.95;
  int episodes = 500;
  int max_steps = 100;
  TreeParams tree;
  int batch_period = 50;
  int batch_window = 50;
  int total_trees = 0;  // 0: match the episode count
  double ridge = 1e-6;
  IauuConfig iauu;
  std::uint64_t seed = 0;
};

struct TrainResult {
  std::vector<double> episode_rewards;
  std::function<ActionId(const FeatureVector&)> policy;  // greedy on the final model
  std::size_t booster_stages = 0;                        // booster agents only
};

namespace detail {

inline int resolve_total_trees(const AgentConfig& cfg) {
  return cfg.total_trees > 0 ? cfg.total_trees : cfg.episodes;
}

}  // namespace detail

/// Shared episode loop for the four function approximators under either
/// exploration strategy. IAUU agents need a prebuilt state collapser.
inline TrainResult train_approximator(Environment& env, const AgentConfig& cfg,
                                      const StateCollapser* collapser) {
  if (cfg.approx == ApproxKind::tabular) {
    throw std::invalid_argument("train_approximator: use train_tabular");
  }
  if (cfg.explore == ExploreKind::iauu && collapser == nullptr) {
    throw std::invalid_argument("train_approximator: IAUU requires a collapser");
  }

  Rng rng(cfg.seed);
  const int dim = env.observation_dim();
  const int actions = env.action_count();

  std::unique_ptr<BoostedQ> booster;
  std::unique_ptr<LinearQ> linear;
  std::unique_ptr<BatchQ> batch;
  QFunction* q = nullptr;
  switch (cfg.approx) {
    case ApproxKind::booster:
      booster = std::make_unique<BoostedQ>(dim, actions);
      q = booster.get();
      break;
    case ApproxKind::linear:
      linear = std::make_unique<LinearQ>(dim, actions);
      q = linear.get();
      break;
    case ApproxKind::batchboost:
      batch = std::make_unique<BatchQ>(dim, actions, BatchKind::boosted,
                                       cfg.batch_period, cfg.batch_window);
      q = batch.get();
      break;
    case ApproxKind::forest:
      batch = std::make_unique<BatchQ>(dim, actions, BatchKind::forest,
                                       cfg.batch_period, cfg.batch_window);
      q = batch.get();
      break;
    default:
      throw std::invalid_argument("train_approximator: unknown approximator");
  }

  std::unique_ptr<CountTable> counts;
  std::unique_ptr<IauuSelector> iauu;
  std::unique_ptr<EpsilonUniformSelector> eps_uniform;
  ActionSelector* selector = nullptr;
  if (cfg.explore == ExploreKind::iauu) {
    counts = std::make_unique<CountTable>(collapser->cluster_count(), actions);
    iauu = std::make_unique<IauuSelector>(
        *q, [collapser](const FeatureVector& s) { return collapser->collapse(s); },
        *counts, cfg.iauu, cfg.max_steps);
    selector = iauu.get();
  } else {
    eps_uniform = std::make_unique<EpsilonUniformSelector>(*q);
    selector = eps_uniform.get();
  }

  std::deque<EpisodeTrace> window;
  TrainResult result;
  result.episode_rewards.reserve(cfg.episodes);

  for (int t = 1; t <= cfg.episodes; ++t) {
    if (iauu) iauu->begin_episode(t, cfg.schedule);
    if (eps_uniform) eps_uniform->begin_episode(t, cfg.schedule);

    EpisodeTrace trace = run_episode(env, *selector, cfg.max_steps, rng);
    result.episode_rewards.push_back(trace.total_reward());

    switch (cfg.approx) {
      case ApproxKind::booster:
        boost_step(*booster, trace, cfg.schedule.alpha(t), cfg.gamma, cfg.tree, &rng);
        break;
      case ApproxKind::linear: {
        const LinearModel h =
            LinearModel::fit(residual_targets(trace, *linear, cfg.gamma), cfg.ridge);
        linear->accumulate(cfg.schedule.alpha(t), h);
        break;
      }
      default: {
        window.push_back(std::move(trace));
        while (static_cast<int>(window.size()) > cfg.batch_window) window.pop_front();
        if (t % cfg.batch_period == 0) {
          batch->refit({window.begin(), window.end()}, cfg.gamma,
                       detail::resolve_total_trees(cfg), cfg.tree, rng);
        }
        break;
      }
    }
  }

  if (booster) {
    result.booster_stages = booster->stage_count();
    result.policy = [model = std::move(*booster)](const FeatureVector& s) {
      return greedy_action(model, s);
    };
  } else if (linear) {
    result.policy = [model = std::move(*linear)](const FeatureVector& s) {
      return greedy_action(model, s);
    };
  } else {
    result.policy = [model = std::move(*batch)](const FeatureVector& s) {
      return greedy_action(model, s);
    };
  }
  return result;
}

/// Algorithm "GEQL": incremental boosting with IAUU exploration.
inline TrainResult train_geql(Environment& env, const AgentConfig& cfg,
                              const StateCollapser& collapser) {
  AgentConfig geql_cfg = cfg;
  geql_cfg.approx = ApproxKind::booster;
  geql_cfg.explore = ExploreKind::iauu;
  return train_approximator(env, geql_cfg, &collapser);
}

/// The linear / batchboost / forest baselines under either exploration.
inline TrainResult train_baseline(Environment& env, const AgentConfig& cfg,
                                  const StateCollapser* collapser = nullptr) {
  if (cfg.approx != ApproxKind::linear && cfg.approx != ApproxKind::batchboost &&
      cfg.approx != ApproxKind::forest) {
    throw std::invalid_argument("train_baseline: approximator must be a baseline");
  }
  return train_approximator(env, cfg, collapser);
}

enum class TabularVariant { uniform, iauu, iauu_mix, iauu_explore_counts };

/// Online tabular Q-learning over discrete state ids (phi is the identity).
/// Exploration follows the chosen variant; observations are assumed one-hot
/// so the returned policy can decode states from feature vectors.
inline TrainResult train_tabular(Environment& env, const AgentConfig& cfg,
                                 TabularVariant variant) {
  if (env.state_count() <= 0) {
    throw std::invalid_argument("train_tabular: environment is not discrete");
  }
  Rng rng(cfg.seed);
  const int actions = env.action_count();
  TabularQ q(actions);
  CountTable counts(env.state_count(), actions);
  IauuConfig iauu_cfg = cfg.iauu;
  if (variant == TabularVariant::iauu_mix) iauu_cfg.variant = IauuVariant::uniform_mix;
  if (variant == TabularVariant::iauu_explore_counts) {
    iauu_cfg.variant = IauuVariant::explore_only_counts;
  }

  TrainResult result;
  result.episode_rewards.reserve(cfg.episodes);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> any_action(0, actions - 1);

  for (int t = 1; t <= cfg.episodes; ++t) {
    const double epsilon_t = cfg.schedule.epsilon(t);
    const double alpha_t = cfg.schedule.alpha(t);
    const double mix_mass = std::pow(static_cast<double>(t), -1.0 / cfg.max_steps);
    if (variant != TabularVariant::uniform && iauu_cfg.reset_counts_each_episode) {
      counts.reset();
    }

    env.reset(rng);
    int state = env.state_id();
    double episode_reward = 0.0;
    for (int step = 0; step < cfg.max_steps; ++step) {
      const bool explore = unit(rng) < epsilon_t;
      ActionId action;
      if (!explore) {
        action = q.greedy(state);
      } else if (variant == TabularVariant::uniform) {
        action = any_action(rng);
      } else {
        const std::vector<double> p =
            iauu_exploration_distribution(counts.row(state), iauu_cfg, mix_mass);
        action = sample_discrete(p, rng);
      }
      if (variant != TabularVariant::uniform &&
          (iauu_cfg.variant != IauuVariant::explore_only_counts || explore)) {
        counts.increment(state, action);
      }

      const StepResult r = env.step(action, rng);
      const int next_state = env.state_id();
      q.update(state, action, r.reward, next_state, r.terminal, alpha_t, cfg.gamma);
      episode_reward += r.reward;
      state = next_state;
      if (r.terminal) break;
    }
    result.episode_rewards.push_back(episode_reward);
  }

  result.policy = [q = std::move(q)](const FeatureVector& s) {
    int state = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (s[i] > s[state]) state = static_cast<int>(i);
    }
    return q.greedy(state);
  };
  return result;
}

struct RMaxConfig {
  int known_threshold = 5;
  double r_max = 100.0;
  double planning_tolerance = 1e-4;
  double gamma = 0.95;
};

/// Model-based RMax learner for small discrete MDPs: unknown state-action
/// pairs are treated as maximally rewarding self-loops, and the optimistic
/// model is re-planned by value iteration whenever a pair becomes known.
class RMaxAgent {
 public:
  RMaxAgent(int states, int actions, const RMaxConfig& cfg)
      : states_(states),
        actions_(actions),
        cfg_(cfg),
        visits_(static_cast<std::size_t>(states) * actions, 0),
        reward_sum_(static_cast<std::size_t>(states) * actions, 0.0),
        transition_counts_(static_cast<std::size_t>(states) * actions * states, 0),
        q_(static_cast<std::size_t>(states) * actions, 0.0) {
    if (cfg.known_threshold < 1) {
      throw std::invalid_argument("RMaxAgent: known_threshold must be >= 1");
    }
    plan();
  }

  bool known(int s, ActionId a) const { return visits_[sa(s, a)] >= cfg_.known_threshold; }

  ActionId select(int s) const {
    ActionId best = 0;
    double best_value = q_[sa(s, 0)];
    for (ActionId a = 1; a < actions_; ++a) {
      if (q_[sa(s, a)] > best_value) {
        best_value = q_[sa(s, a)];
        best = a;
      }
    }
    return best;
  }

  void observe(int s, ActionId a, double reward, int next) {
    if (known(s, a)) return;  // the first known_threshold samples fix the model
    visits_[sa(s, a)] += 1;
    reward_sum_[sa(s, a)] += reward;
    transition_counts_[(sa(s, a)) * states_ + next] += 1;
    if (known(s, a)) plan();
  }

  double q_value(int s, ActionId a) const { return q_[sa(s, a)]; }
  double state_value(int s) const {
    double best = q_[sa(s, 0)];
    for (ActionId a = 1; a < actions_; ++a) best = std::max(best, q_[sa(s, a)]);
    return best;
  }
  bool any_unknown() const {
    for (long long v : visits_) {
      if (v < cfg_.known_threshold) return true;
    }
    return false;
  }

  /// Value iteration on the optimistic model to the planning tolerance.
  void plan() {
    std::vector<double> value(states_, cfg_.r_max / (1.0 - cfg_.gamma));
    const int max_sweeps = 100000;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
      double delta = 0.0;
      for (int s = 0; s < states_; ++s) {
        double best = -std::numeric_limits<double>::infinity();
        for (ActionId a = 0; a < actions_; ++a) {
          double qa;
          if (!known(s, a)) {
            qa = cfg_.r_max + cfg_.gamma * value[s];
          } else {
            const double n = static_cast<double>(visits_[sa(s, a)]);
            double expected_next = 0.0;
            for (int next = 0; next < states_; ++next) {
              const long long c = transition_counts_[(sa(s, a)) * states_ + next];
              if (c > 0) expected_next += (c / n) * value[next];
            }
            qa = reward_sum_[sa(s, a)] / n + cfg_.gamma * expected_next;
          }
          q_[sa(s, a)] = qa;
          best = std::max(best, qa);
        }
        delta = std::max(delta, std::fabs(best - value[s]));
        value[s] = best;
      }
      if (delta < cfg_.planning_tolerance) break;
    }
  }

 private:
  int states_;
  int actions_;
  RMaxConfig cfg_;
  std::vector<long long> visits_;
  std::vector<double> reward_sum_;
  std::vector<long long> transition_counts_;
  std::vector<double> q_;

  std::size_t sa(int s, ActionId a) const {
    return static_cast<std::size_t>(s) * actions_ + a;
  }
};

inline TrainResult train_rmax(Environment& env, const RMaxConfig& cfg, int episodes,
                              int max_steps, std::uint64_t seed) {
  if (env.state_count() <= 0) {
    throw std::invalid_argument("train_rmax: environment is not discrete");
  }
  Rng rng(seed);
  RMaxAgent agent(env.state_count(), env.action_count(), cfg);

  TrainResult result;
  result.episode_rewards.reserve(episodes);
  for (int t = 1; t <= episodes; ++t) {
    env.reset(rng);
    int state = env.state_id();
    double episode_reward = 0.0;
    for (int step = 0; step < max_steps; ++step) {
      const ActionId action = agent.select(state);
      const StepResult r = env.step(action, rng);
      const int next_state = env.state_id();
      agent.observe(state, action, r.reward, next_state);
      episode_reward += r.reward;
      state = next_state;
      if (r.terminal) break;
    }
    result.episode_rewards.push_back(episode_reward);
  }

  result.policy = [agent = std::move(agent)](const FeatureVector& s) {
    int state = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (s[i] > s[state]) state = static_cast<int>(i);
    }
    return agent.select(state);
  };
  return result;
}

}  // namespace geql
