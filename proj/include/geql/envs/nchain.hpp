#pragma once

#include "geql/core.hpp"

namespace geql {

/// Strens's n-Chain. States 0..n-1; return (action 0) moves to state 0 for
/// reward 2, forward (action 1) advances one state, paying 100 on transitions
/// into state n-1 (including the self-loop there). With the slip probability
/// an action has the other action's effect. Episodes never terminate on
/// their own; the harness caps them.
class NChainEnv : public Environment {
 public:
  enum Action { kReturn = 0, kForward = 1 };

  explicit NChainEnv(int n = 5, double slip = 0.2) : n_(n), slip_(slip) {
    if (n < 2) throw std::invalid_argument("NChainEnv: n must be >= 2");
    if (slip < 0.0 || slip > 1.0) throw std::invalid_argument("NChainEnv: bad slip");
  }

  int observation_dim() const override { return n_; }
  int action_count() const override { return 2; }

  FeatureVector reset(Rng&) override {
    position_ = 0;
    return observe();
  }

  StepResult step(ActionId action, Rng& rng) override {
    if (action != kReturn && action != kForward) {
      throw std::invalid_argument("NChainEnv: bad action");
    }
    const bool slipped =
        std::uniform_real_distribution<double>(0.0, 1.0)(rng) < slip_;
    const ActionId effective = slipped ? 1 - action : action;
    double reward;
    if (effective == kForward) {
      position_ = std::min(position_ + 1, n_ - 1);
      reward = position_ == n_ - 1 ? 100.0 : 0.0;
    } else {
      position_ = 0;
      reward = 2.0;
    }
    return {observe(), reward, false};
  }

  int state_count() const override { return n_; }
  int state_id() const override { return position_; }
  int position() const { return position_; }

 private:
  int n_;
  double slip_;
  int position_ = 0;

  FeatureVector observe() const {
    FeatureVector one_hot(n_, 0.0);
    one_hot[position_] = 1.0;
    return one_hot;
  }
};

}  // namespace geql
