#pragma once

#include <memory>

#include "geql/envs/visual.hpp"

namespace geql {

/// 6x6 navigation task with a visual observation model. The agent starts at
/// (0,0), always faces north, and must reach (5,5) by deterministic N/E/S/W
/// moves clipped at the walls. Reward is the negated Euclidean distance of
/// the new position from the goal; reaching the goal ends the episode.
///
/// The arena is rendered as a heightmap: flat floor, a wall ring around the
/// playing field, and a pillar marking the goal, so the view descriptors and
/// occupancy grid vary with position.
class GridWorldEnv : public Environment {
 public:
  static constexpr int kGrid = 6;
  static constexpr int kGoal = kGrid - 1;
  static constexpr int kMargin = kViewDepth;  // world border beyond the arena
  static constexpr int kWallHeight = 3;
  static constexpr int kPillarHeight = 6;

  enum Action { kMoveNorth = 0, kMoveEast = 1, kMoveSouth = 2, kMoveWest = 3 };

  explicit GridWorldEnv(StateCollapser codebook)
      : world_(build_world()), codebook_(std::move(codebook)) {}

  static HeightWorld build_world() {
    HeightWorld world(kGrid + 2 * kMargin, 0);
    const int lo = kMargin - 1, hi = kMargin + kGrid;  // wall ring bounds
    for (int x = lo; x <= hi; ++x) {
      for (int y = lo; y <= hi; ++y) {
        const bool on_ring = x == lo || x == hi || y == lo || y == hi;
        if (on_ring) world.set_height(x, y, kWallHeight);
      }
    }
    world.set_height(kMargin + kGoal, kMargin + kGoal, kPillarHeight);
    return world;
  }

  int observation_dim() const override {
    return visual_feature_dim(codebook_.cluster_count());
  }
  int action_count() const override { return 4; }

  FeatureVector reset(Rng&) override {
    x_ = 0;
    y_ = 0;
    return observe();
  }

  StepResult step(ActionId action, Rng&) override {
    const auto [nx, ny] = apply_move(x_, y_, action);
    x_ = nx;
    y_ = ny;
    const bool at_goal = x_ == kGoal && y_ == kGoal;
    return {observe(), -distance_to_goal(x_, y_), at_goal};
  }

  static std::pair<int, int> apply_move(int x, int y, ActionId action) {
    switch (action) {
      case kMoveNorth: y += 1; break;
      case kMoveEast: x += 1; break;
      case kMoveSouth: y -= 1; break;
      case kMoveWest: x -= 1; break;
      default: throw std::invalid_argument("GridWorldEnv: bad action");
    }
    x = std::max(0, std::min(kGrid - 1, x));
    y = std::max(0, std::min(kGrid - 1, y));
    return {x, y};
  }

  static double distance_to_goal(int x, int y) {
    const double dx = kGoal - x;
    const double dy = kGoal - y;
    return std::sqrt(dx * dx + dy * dy);
  }

  /// Offline codebook training: descriptors sampled along a random walk that
  /// restarts whenever it stumbles onto the goal.
  static StateCollapser build_codebook(long duration_steps, int sample_every, int k,
                                       Rng& rng) {
    const HeightWorld world = build_world();
    std::vector<PartitionDescriptor> corpus;
    corpus.reserve(9 * (duration_steps / sample_every));
    std::uniform_int_distribution<int> pick(0, 3);
    int x = 0, y = 0;
    for (long step = 1; step <= duration_steps; ++step) {
      const auto [nx, ny] = apply_move(x, y, pick(rng));
      x = nx;
      y = ny;
      if (step % sample_every == 0) {
        const auto descriptors =
            view_descriptors(world, Pose{kMargin + x, kMargin + y, kNorth});
        corpus.insert(corpus.end(), descriptors.begin(), descriptors.end());
      }
      if (x == kGoal && y == kGoal) {
        x = 0;
        y = 0;
      }
    }
    return cluster_descriptors(corpus, k, rng);
  }

  int state_count() const override { return kGrid * kGrid; }
  int state_id() const override { return y_ * kGrid + x_; }

  int x() const { return x_; }
  int y() const { return y_; }
  void set_position(int x, int y) {
    x_ = x;
    y_ = y;
  }

  const HeightWorld& world() const { return world_; }
  const StateCollapser& codebook() const { return codebook_; }

 private:
  HeightWorld world_;
  StateCollapser codebook_;
  int x_ = 0;
  int y_ = 0;

  FeatureVector observe() const {
    return extract_features(world_, Pose{kMargin + x_, kMargin + y_, kNorth},
                            codebook_);
  }
};

}  // namespace geql
