#pragma once

#include <array>

#include "geql/clustering.hpp"

namespace geql {

/// Column heightmap world: one integer surface elevation per cell. Blocks
/// below the surface are solid; an agent on cell (x, y) stands at
/// z = height(x, y). Lookups outside the map clamp to the border.
class HeightWorld {
 public:
  HeightWorld() = default;
  HeightWorld(int size, int initial_height = 0)
      : size_(size), heights_(static_cast<std::size_t>(size) * size, initial_height) {
    if (size < 1) throw std::invalid_argument("HeightWorld: size must be positive");
  }

  int size() const { return size_; }

  int height_at(int x, int y) const {
    return heights_[index(clamp(x), clamp(y))];
  }
  void set_height(int x, int y, int h) {
    if (x < 0 || x >= size_ || y < 0 || y >= size_) {
      throw std::out_of_range("HeightWorld: set_height out of range");
    }
    heights_[index(x, y)] = h;
  }

  bool in_bounds(int x, int y) const {
    return x >= 0 && x < size_ && y >= 0 && y < size_;
  }

  int sea_level() const { return sea_level_; }
  void set_sea_level(int level) { sea_level_ = level; }

  int max_height() const {
    int best = heights_.empty() ? 0 : heights_[0];
    for (int h : heights_) best = std::max(best, h);
    return best;
  }

  void save_csv(std::ostream& os) const {
    for (int y = 0; y < size_; ++y) {
      for (int x = 0; x < size_; ++x) {
        if (x > 0) os << ',';
        os << heights_[index(x, y)];
      }
      os << '\n';
    }
  }

 private:
  int size_ = 0;
  int sea_level_ = 0;
  std::vector<int> heights_;

  int clamp(int v) const { return std::max(0, std::min(size_ - 1, v)); }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * size_ + x;
  }
};

enum Heading { kNorth = 0, kEast = 1, kSouth = 2, kWest = 3 };

struct Pose {
  int x = 0;
  int y = 0;
  int heading = kNorth;
};

/// Unit vector of a heading; north is +y, east is +x.
inline std::pair<int, int> heading_vector(int heading) {
  switch (heading & 3) {
    case kNorth: return {0, 1};
    case kEast: return {1, 0};
    case kSouth: return {0, -1};
    default: return {-1, 0};
  }
}

// Forward view window: kViewDepth rows ahead of the agent (including its own
// row) by kViewWidth lateral cells, partitioned into a 3x3 grid.
constexpr int kViewDepth = 12;
constexpr int kViewWidth = 12;  // lateral offsets -6..5 relative to heading
constexpr int kViewPartitions = 9;
constexpr int kDescriptorDim = 4;
constexpr int kOccupancyBits = 36;  // 4 vertical layers x 3x3 neighborhood

using PartitionDescriptor = std::array<double, kDescriptorDim>;

/// Elevation statistics of the cells in each view partition, relative to the
/// agent's own elevation: mean, max, min, and the fraction of cells rising
/// above the agent. These local descriptors stand in for image keypoints.
inline std::array<PartitionDescriptor, kViewPartitions> view_descriptors(
    const HeightWorld& world, const Pose& pose) {
  const int z = world.height_at(pose.x, pose.y);
  const auto [fx, fy] = heading_vector(pose.heading);
  const auto [rx, ry] = heading_vector(pose.heading + 1);  // clockwise right

  std::array<double, kViewPartitions> sum{}, max_dz{}, min_dz{}, above{};
  std::array<int, kViewPartitions> count{};
  max_dz.fill(std::numeric_limits<double>::lowest());
  min_dz.fill(std::numeric_limits<double>::max());

  for (int d = 0; d < kViewDepth; ++d) {
    for (int l = -kViewWidth / 2; l < kViewWidth / 2; ++l) {
      const int cx = pose.x + fx * d + rx * l;
      const int cy = pose.y + fy * d + ry * l;
      const double dz = world.height_at(cx, cy) - z;
      const int part = (d / (kViewDepth / 3)) * 3 + (l + kViewWidth / 2) / (kViewWidth / 3);
      sum[part] += dz;
      max_dz[part] = std::max(max_dz[part], dz);
      min_dz[part] = std::min(min_dz[part], dz);
      if (dz > 0.0) above[part] += 1.0;
      ++count[part];
    }
  }

  std::array<PartitionDescriptor, kViewPartitions> descriptors;
  for (int p = 0; p < kViewPartitions; ++p) {
    descriptors[p] = {sum[p] / count[p], max_dz[p], min_dz[p], above[p] / count[p]};
  }
  return descriptors;
}

/// 4x3x3 occupancy block of the cells the agent is touching: vertical layers
/// at z-1, z, z+1, z+2 over the heading-relative 3x3 neighborhood. A bit is 1
/// when the block at that level is inside terrain.
inline std::array<double, kOccupancyBits> occupancy_grid(const HeightWorld& world,
                                                         const Pose& pose) {
  const int z = world.height_at(pose.x, pose.y);
  const auto [fx, fy] = heading_vector(pose.heading);
  const auto [rx, ry] = heading_vector(pose.heading + 1);

  std::array<double, kOccupancyBits> grid{};
  int i = 0;
  for (int layer = 0; layer < 4; ++layer) {
    const int level = z - 1 + layer;
    for (int df = 1; df >= -1; --df) {
      for (int dl = -1; dl <= 1; ++dl) {
        const int cx = pose.x + fx * df + rx * dl;
        const int cy = pose.y + fy * df + ry * dl;
        grid[i++] = level < world.height_at(cx, cy) ? 1.0 : 0.0;
      }
    }
  }
  return grid;
}

inline int visual_feature_dim(int codebook_size) {
  return kViewPartitions * codebook_size + kOccupancyBits + 1;
}

/// Full visual observation: per-partition Euclidean distances to each of the
/// codebook centers, the occupancy grid, and a trailing constant bias.
inline FeatureVector extract_features(const HeightWorld& world, const Pose& pose,
                                      const StateCollapser& codebook) {
  if (codebook.dimension() != kDescriptorDim) {
    throw std::invalid_argument("extract_features: codebook dimension mismatch");
  }
  const auto descriptors = view_descriptors(world, pose);
  const auto occupancy = occupancy_grid(world, pose);

  FeatureVector features;
  features.reserve(visual_feature_dim(codebook.cluster_count()));
  FeatureVector descriptor(kDescriptorDim);
  for (const PartitionDescriptor& desc : descriptors) {
    descriptor.assign(desc.begin(), desc.end());
    for (const FeatureVector& center : codebook.centers()) {
      features.push_back(std::sqrt(squared_distance(descriptor, center)));
    }
  }
  features.insert(features.end(), occupancy.begin(), occupancy.end());
  features.push_back(1.0);
  return features;
}

/// Clusters a corpus of partition descriptors into the codebook consumed by
/// extract_features.
inline StateCollapser cluster_descriptors(const std::vector<PartitionDescriptor>& corpus,
                                          int k, Rng& rng, int max_iters = 100) {
  std::vector<FeatureVector> rows;
  rows.reserve(corpus.size());
  for (const PartitionDescriptor& d : corpus) rows.emplace_back(d.begin(), d.end());
  return kmeans_fit(rows, k, max_iters, rng);
}

}  // namespace geql
