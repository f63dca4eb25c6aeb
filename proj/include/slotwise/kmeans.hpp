#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace slotwise {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Clustering {
  std::vector<int> label;  // cluster of each point
  std::vector<Point2> centers;
  double inertia = 0.0;  // sum of squared distances to assigned centers

  int cluster_count() const { return static_cast<int>(centers.size()); }
  std::vector<std::vector<int>> members() const;
};

struct KMeansOptions {
  int restarts = 10;
  int max_iterations = 100;
};

/// Lloyd's algorithm with farthest-point seeding; each restart starts from a
/// different random first center and the lowest-inertia run is kept.
/// k is clamped to [1, points.size()].
Clustering kmeans(std::span<const Point2> points, int k, std::uint64_t seed, const KMeansOptions& options = {});

}  // namespace slotwise
