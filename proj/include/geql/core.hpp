#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace geql {

using FeatureVector = std::vector<double>;
using ActionId = int;
using Rng = std::mt19937_64;

inline bool all_finite(const FeatureVector& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

struct Transition {
  FeatureVector state;
  ActionId action = 0;
  double reward = 0.0;
  FeatureVector next_state;
  bool terminal = false;
};

/// Ordered transitions from one episode. Consecutive transitions chain
/// (next_state of one is the state of the next) and a terminal transition,
/// if present, is last.
struct EpisodeTrace {
  std::vector<Transition> transitions;

  std::size_t size() const { return transitions.size(); }
  bool empty() const { return transitions.empty(); }

  double total_reward() const {
    double sum = 0.0;
    for (const Transition& t : transitions) sum += t.reward;
    return sum;
  }
};

struct DiscountConfig {
  double gamma = 0.95;
};

struct StepResult {
  FeatureVector observation;
  double reward = 0.0;
  bool terminal = false;
};

/// Agent-environment contract. Observations are fixed-dimension feature
/// vectors; environments with a finite state space may additionally expose
/// integer state ids for tabular agents and planners.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual int observation_dim() const = 0;
  virtual int action_count() const = 0;
  virtual FeatureVector reset(Rng& rng) = 0;
  virtual StepResult step(ActionId action, Rng& rng) = 0;

  /// Number of discrete states, or 0 when the state space is not enumerable.
  virtual int state_count() const { return 0; }
  /// Current discrete state id, or -1 when not enumerable.
  virtual int state_id() const { return -1; }
};

class ActionSelector {
 public:
  virtual ~ActionSelector() = default;
  virtual ActionId select(const FeatureVector& observation, Rng& rng) = 0;
};

/// Runs one episode of at most max_steps actions. The episode ends early
/// only when the environment reports a terminal transition.
inline EpisodeTrace run_episode(Environment& env, ActionSelector& policy,
                                int max_steps, Rng& rng) {
  if (max_steps < 1) {
    throw std::invalid_argument("run_episode: max_steps must be >= 1");
  }
  EpisodeTrace trace;
  trace.transitions.reserve(static_cast<std::size_t>(max_steps));
  FeatureVector state = env.reset(rng);
  for (int i = 0; i < max_steps; ++i) {
    const ActionId action = policy.select(state, rng);
    if (action < 0 || action >= env.action_count()) {
      throw std::logic_error("run_episode: selector returned out-of-range action");
    }
    StepResult result = env.step(action, rng);
    trace.transitions.push_back(
        {std::move(state), action, result.reward, result.observation, result.terminal});
    if (result.terminal) break;
    state = std::move(result.observation);
  }
  return trace;
}

inline double discounted_return(const EpisodeTrace& trace, const DiscountConfig& cfg) {
  if (trace.empty()) {
    throw std::invalid_argument("discounted_return: empty trace");
  }
  if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0)) {
    throw std::invalid_argument("discounted_return: gamma must lie in (0,1)");
  }
  double value = 0.0;
  double weight = 1.0;
  for (const Transition& t : trace.transitions) {
    value += weight * t.reward;
    weight *= cfg.gamma;
  }
  return value;
}

/// splitmix64; used to derive independent per-trial seeds from a master seed.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return mix_seed(master ^ mix_seed(stream));
}

}  // namespace geql
