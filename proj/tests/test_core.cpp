#include <catch2/catch_amalgamated.hpp>

#include "geql/core.hpp"
#include "geql/exploration.hpp"
#include "geql/envs/nchain.hpp"

using namespace geql;

namespace {

// Degenerate single-state environment paying a constant reward.
class ConstantRewardEnv : public Environment {
 public:
  explicit ConstantRewardEnv(double reward) : reward_(reward) {}
  int observation_dim() const override { return 1; }
  int action_count() const override { return 1; }
  FeatureVector reset(Rng&) override { return {0.0}; }
  StepResult step(ActionId, Rng&) override { return {{0.0}, reward_, false}; }

 private:
  double reward_;
};

class FixedSelector : public ActionSelector {
 public:
  explicit FixedSelector(ActionId a) : action_(a) {}
  ActionId select(const FeatureVector&, Rng&) override { return action_; }

 private:
  ActionId action_;
};

EpisodeTrace trace_from_rewards(const std::vector<double>& rewards) {
  EpisodeTrace trace;
  for (double r : rewards) trace.transitions.push_back({{0.0}, 0, r, {0.0}, false});
  return trace;
}

}  // namespace

TEST_CASE("discounted_return matches hand-computed sums") {
  CHECK(discounted_return(trace_from_rewards({1, 1, 1}), {0.5}) ==
        Catch::Approx(1.75).epsilon(1e-12));
  CHECK(discounted_return(trace_from_rewards({5}), {0.3}) == Catch::Approx(5.0));
  CHECK(discounted_return(trace_from_rewards({0, 0, 0, 0}), {0.9}) ==
        Catch::Approx(0.0));
  CHECK_THROWS_AS(discounted_return(EpisodeTrace{}, {0.5}), std::invalid_argument);
}

TEST_CASE("discounted_return is linear in rewards") {
  Rng rng(7);
  std::uniform_real_distribution<double> unit(-5.0, 5.0);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> rewards(1 + rep % 17);
    for (double& r : rewards) r = unit(rng);
    const double c = unit(rng);
    std::vector<double> scaled(rewards);
    for (double& r : scaled) r *= c;
    const DiscountConfig cfg{0.9};
    CHECK(discounted_return(trace_from_rewards(scaled), cfg) ==
          Catch::Approx(c * discounted_return(trace_from_rewards(rewards), cfg))
              .margin(1e-9));
  }
}

TEST_CASE("run_episode on a degenerate env yields max_steps constant rewards") {
  ConstantRewardEnv env(1.0);
  FixedSelector policy(0);
  Rng rng(1);
  const EpisodeTrace trace = run_episode(env, policy, 3, rng);
  REQUIRE(trace.size() == 3);
  for (const Transition& t : trace.transitions) CHECK(t.reward == 1.0);
}

TEST_CASE("run_episode: n-Chain always-return with slip disabled") {
  NChainEnv env(5, 0.0);
  FixedSelector policy(NChainEnv::kReturn);
  Rng rng(3);
  const EpisodeTrace trace = run_episode(env, policy, 2, rng);
  REQUIRE(trace.size() == 2);
  for (const Transition& t : trace.transitions) {
    CHECK(t.reward == 2.0);
    CHECK(t.next_state[0] == 1.0);  // back at state 0
  }
}

TEST_CASE("run_episode is deterministic under a fixed seed") {
  NChainEnv env_a(5, 0.2);
  NChainEnv env_b(5, 0.2);
  UniformRandomSelector policy_a(2), policy_b(2);
  Rng rng_a(42), rng_b(42);
  const EpisodeTrace a = run_episode(env_a, policy_a, 50, rng_a);
  const EpisodeTrace b = run_episode(env_b, policy_b, 50, rng_b);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.transitions[i].action == b.transitions[i].action);
    CHECK(a.transitions[i].reward == b.transitions[i].reward);
    CHECK(a.transitions[i].state == b.transitions[i].state);
    CHECK(a.transitions[i].next_state == b.transitions[i].next_state);
  }
}

TEST_CASE("run_episode traces chain: next_state equals the following state") {
  NChainEnv env(5, 0.2);
  UniformRandomSelector policy(2);
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const EpisodeTrace trace = run_episode(env, policy, 30, rng);
    for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
      CHECK(trace.transitions[i].next_state == trace.transitions[i + 1].state);
    }
  }
}

TEST_CASE("run_episode rejects out-of-range actions from the policy") {
  ConstantRewardEnv env(0.0);
  FixedSelector bad(5);
  Rng rng(1);
  CHECK_THROWS_AS(run_episode(env, bad, 3, rng), std::logic_error);
}
