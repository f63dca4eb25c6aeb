#include "slotwise/kmeans.hpp"

#include <algorithm>
#include <limits>

#include "slotwise/rng.hpp"

namespace slotwise {
namespace {

double sq_dist(const Point2& a, const Point2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

Clustering lloyd(std::span<const Point2> points, int k, std::size_t first, int max_iterations) {
  const std::size_t n = points.size();
  Clustering c;
  c.centers.push_back(points[first]);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  while (static_cast<int>(c.centers.size()) < k) {
    std::size_t far = 0;
    double far_d = -1.0;
    for (std::size_t p = 0; p < n; ++p) {
      nearest[p] = std::min(nearest[p], sq_dist(points[p], c.centers.back()));
      if (nearest[p] > far_d) {
        far_d = nearest[p];
        far = p;
      }
    }
    c.centers.push_back(points[far]);
  }

  c.label.assign(n, -1);
  for (int it = 0; it < max_iterations; ++it) {
    bool changed = false;
    for (std::size_t p = 0; p < n; ++p) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int j = 0; j < k; ++j) {
        const double d = sq_dist(points[p], c.centers[static_cast<std::size_t>(j)]);
        if (d < best_d) {
          best_d = d;
          best = j;
        }
      }
      if (c.label[p] != best) {
        c.label[p] = best;
        changed = true;
      }
    }
    if (!changed && it > 0) break;

    std::vector<Point2> sum(static_cast<std::size_t>(k));
    std::vector<int> count(static_cast<std::size_t>(k), 0);
    for (std::size_t p = 0; p < n; ++p) {
      const auto j = static_cast<std::size_t>(c.label[p]);
      sum[j].x += points[p].x;
      sum[j].y += points[p].y;
      ++count[j];
    }
    for (int j = 0; j < k; ++j) {
      const auto jj = static_cast<std::size_t>(j);
      if (count[jj] > 0) {
        c.centers[jj] = {sum[jj].x / count[jj], sum[jj].y / count[jj]};
        continue;
      }
      // Empty cluster: move its center onto the point worst served by its own center.
      std::size_t worst = 0;
      double worst_d = -1.0;
      for (std::size_t p = 0; p < n; ++p) {
        const double d = sq_dist(points[p], c.centers[static_cast<std::size_t>(c.label[p])]);
        if (count[static_cast<std::size_t>(c.label[p])] > 1 && d > worst_d) {
          worst_d = d;
          worst = p;
        }
      }
      if (worst_d >= 0.0) {
        --count[static_cast<std::size_t>(c.label[worst])];
        c.label[worst] = j;
        count[jj] = 1;
        c.centers[jj] = points[worst];
      }
    }
  }

  c.inertia = 0.0;
  for (std::size_t p = 0; p < n; ++p) c.inertia += sq_dist(points[p], c.centers[static_cast<std::size_t>(c.label[p])]);
  return c;
}

}  // namespace

std::vector<std::vector<int>> Clustering::members() const {
  std::vector<std::vector<int>> out(centers.size());
  for (std::size_t p = 0; p < label.size(); ++p) out[static_cast<std::size_t>(label[p])].push_back(static_cast<int>(p));
  return out;
}

Clustering kmeans(std::span<const Point2> points, int k, std::uint64_t seed, const KMeansOptions& options) {
  if (points.empty()) return {};
  k = std::clamp(k, 1, static_cast<int>(points.size()));
  Rng rng(derive_key(seed, {0x6b6d65616e73ULL}));
  Clustering best;
  bool have = false;
  const int restarts = std::max(1, options.restarts);
  for (int run = 0; run < restarts; ++run) {
    const auto first = static_cast<std::size_t>(rng.below(points.size()));
    Clustering c = lloyd(points, k, first, options.max_iterations);
    if (!have || c.inertia < best.inertia) {
      best = std::move(c);
      have = true;
    }
  }
  return best;
}

}  // namespace slotwise
