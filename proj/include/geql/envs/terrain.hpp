#pragma once

#include "geql/envs/visual.hpp"

namespace geql {

struct TerrainParams {
  double roughness = 12.0;  // initial midpoint displacement amplitude, blocks
  double decay = 1.0;       // displacement halving exponent per subdivision
};

namespace detail {

/// Diamond-square pass over a (2^k + 1)-sided grid.
inline std::vector<double> midpoint_displacement(int grid, const TerrainParams& params,
                                                 Rng& rng) {
  std::vector<double> h(static_cast<std::size_t>(grid) * grid, 0.0);
  auto at = [&](int x, int y) -> double& { return h[static_cast<std::size_t>(y) * grid + x]; };
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  double amplitude = params.roughness;
  at(0, 0) = unit(rng) * amplitude;
  at(grid - 1, 0) = unit(rng) * amplitude;
  at(0, grid - 1) = unit(rng) * amplitude;
  at(grid - 1, grid - 1) = unit(rng) * amplitude;

  for (int step = grid - 1; step > 1; step /= 2) {
    const int half = step / 2;
    amplitude *= std::pow(2.0, -params.decay);
    // diamond: centers of each square
    for (int y = half; y < grid; y += step) {
      for (int x = half; x < grid; x += step) {
        const double avg = (at(x - half, y - half) + at(x + half, y - half) +
                            at(x - half, y + half) + at(x + half, y + half)) /
                           4.0;
        at(x, y) = avg + unit(rng) * amplitude;
      }
    }
    // square: edge midpoints, averaging the in-bounds neighbors
    for (int y = 0; y < grid; y += half) {
      for (int x = (y / half) % 2 == 0 ? half : 0; x < grid; x += step) {
        double sum = 0.0;
        int n = 0;
        if (x - half >= 0) { sum += at(x - half, y); ++n; }
        if (x + half < grid) { sum += at(x + half, y); ++n; }
        if (y - half >= 0) { sum += at(x, y - half); ++n; }
        if (y + half < grid) { sum += at(x, y + half); ++n; }
        at(x, y) = sum / n + unit(rng) * amplitude;
      }
    }
  }
  return h;
}

struct PeakScan {
  int count = 0;
  bool separated = false;
};

/// Weak local maxima above the map mean, and whether two of them lie at
/// least min_separation apart.
inline PeakScan scan_peaks(const HeightWorld& world, int min_separation) {
  const int w = world.size();
  double mean = 0.0;
  for (int y = 0; y < w; ++y) {
    for (int x = 0; x < w; ++x) mean += world.height_at(x, y);
  }
  mean /= static_cast<double>(w) * w;

  std::vector<std::pair<int, int>> peaks;
  for (int y = 0; y < w; ++y) {
    for (int x = 0; x < w; ++x) {
      const int h = world.height_at(x, y);
      if (h <= mean) continue;
      bool is_max = true;
      for (int dy = -1; dy <= 1 && is_max; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          if (!world.in_bounds(x + dx, y + dy)) continue;
          if (world.height_at(x + dx, y + dy) > h) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) peaks.emplace_back(x, y);
    }
  }

  PeakScan scan;
  scan.count = static_cast<int>(peaks.size());
  for (std::size_t i = 0; i < peaks.size() && !scan.separated; ++i) {
    for (std::size_t j = i + 1; j < peaks.size(); ++j) {
      const double dx = peaks[i].first - peaks[j].first;
      const double dy = peaks[i].second - peaks[j].second;
      if (dx * dx + dy * dy >= static_cast<double>(min_separation) * min_separation) {
        scan.separated = true;
        break;
      }
    }
  }
  return scan;
}

}  // namespace detail

/// Deterministic fractal heightmap via midpoint displacement, shifted so the
/// minimum elevation (the sea level) is zero. Regenerates with successive
/// seeds until the map holds at least two local maxima min_peak_separation
/// apart, so there is always more than one hill to find.
inline HeightWorld generate_terrain(std::uint64_t seed, int size,
                                    const TerrainParams& params = {},
                                    int min_peak_separation = 16) {
  if (size < 16) throw std::invalid_argument("generate_terrain: size must be >= 16");
  int grid = 2;
  while (grid + 1 < size) grid *= 2;
  grid += 1;

  for (int attempt = 0; attempt < 64; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    const std::vector<double> raw = detail::midpoint_displacement(grid, params, rng);
    double lowest = raw[0];
    for (int y = 0; y < size; ++y) {
      for (int x = 0; x < size; ++x) {
        lowest = std::min(lowest, raw[static_cast<std::size_t>(y) * grid + x]);
      }
    }
    HeightWorld world(size, 0);
    for (int y = 0; y < size; ++y) {
      for (int x = 0; x < size; ++x) {
        const double h = raw[static_cast<std::size_t>(y) * grid + x] - lowest;
        world.set_height(x, y, static_cast<int>(std::lround(h)));
      }
    }
    world.set_sea_level(0);
    if (params.roughness == 0.0) return world;  // flat world, nothing to scan
    const detail::PeakScan scan = detail::scan_peaks(world, min_peak_separation);
    if (scan.count >= 2 && scan.separated) return world;
  }
  throw std::runtime_error("generate_terrain: no multi-peaked map found");
}

/// Pose update for the hill-climbing action set: forward climbs rises of at
/// most one block, the jump-forward combination at most two; larger rises
/// and map edges block the move. Turning and jumping in place do not move.
inline Pose terrain_move(const HeightWorld& world, const Pose& pose, ActionId action) {
  Pose next = pose;
  switch (action) {
    case 1: next.heading = (pose.heading + 3) & 3; return next;  // turn left
    case 2: next.heading = (pose.heading + 1) & 3; return next;  // turn right
    case 3: return next;                                         // jump in place
    case 0:
    case 4: {
      const auto [fx, fy] = heading_vector(pose.heading);
      const int nx = pose.x + fx;
      const int ny = pose.y + fy;
      if (!world.in_bounds(nx, ny)) return next;
      const int rise = world.height_at(nx, ny) - world.height_at(pose.x, pose.y);
      if (rise > (action == 4 ? 2 : 1)) return next;
      next.x = nx;
      next.y = ny;
      return next;
    }
    default:
      throw std::invalid_argument("terrain_move: bad action");
  }
}

/// Hill climbing on a fractal heightmap. Reward per step is the elevation
/// change plus a small standing bonus, (z - sea_level) / 1000, at the new
/// elevation. Episodes never terminate on their own.
class HillClimbEnv : public Environment {
 public:
  enum Action { kForward = 0, kTurnLeft = 1, kTurnRight = 2, kJump = 3, kJumpForward = 4 };

  HillClimbEnv(HeightWorld world, StateCollapser codebook)
      : world_(std::move(world)), codebook_(std::move(codebook)) {
    const Pose start = start_pose(world_);
    world_.set_sea_level(world_.height_at(start.x, start.y));
    pose_ = start;
  }

  /// Start low: the lowest cell of the central half of the map, facing north.
  static Pose start_pose(const HeightWorld& world) {
    const int w = world.size();
    Pose best{w / 2, w / 2, kNorth};
    int best_height = world.height_at(best.x, best.y);
    for (int y = w / 4; y < w - w / 4; ++y) {
      for (int x = w / 4; x < w - w / 4; ++x) {
        if (world.height_at(x, y) < best_height) {
          best_height = world.height_at(x, y);
          best = {x, y, kNorth};
        }
      }
    }
    return best;
  }

  int observation_dim() const override {
    return visual_feature_dim(codebook_.cluster_count());
  }
  int action_count() const override { return 5; }

  FeatureVector reset(Rng&) override {
    pose_ = start_pose(world_);
    return extract_features(world_, pose_, codebook_);
  }

  StepResult step(ActionId action, Rng&) override {
    const int z_old = world_.height_at(pose_.x, pose_.y);
    pose_ = terrain_move(world_, pose_, action);
    const int z_new = world_.height_at(pose_.x, pose_.y);
    const double reward =
        (z_new - z_old) + (z_new - world_.sea_level()) / 1000.0;
    return {extract_features(world_, pose_, codebook_), reward, false};
  }

  int elevation() const { return world_.height_at(pose_.x, pose_.y); }
  int start_elevation() const {
    const Pose start = start_pose(world_);
    return world_.height_at(start.x, start.y);
  }
  const Pose& pose() const { return pose_; }
  const HeightWorld& world() const { return world_; }

  static StateCollapser build_codebook(const HeightWorld& world, long duration_steps,
                                       int sample_every, int k, Rng& rng) {
    std::vector<PartitionDescriptor> corpus;
    corpus.reserve(9 * (duration_steps / sample_every));
    std::uniform_int_distribution<int> pick(0, 4);
    Pose pose = start_pose(world);
    for (long step = 1; step <= duration_steps; ++step) {
      pose = terrain_move(world, pose, pick(rng));
      if (step % sample_every == 0) {
        const auto descriptors = view_descriptors(world, pose);
        corpus.insert(corpus.end(), descriptors.begin(), descriptors.end());
      }
    }
    return cluster_descriptors(corpus, k, rng);
  }

 private:
  HeightWorld world_;
  StateCollapser codebook_;
  Pose pose_;
};

}  // namespace geql
