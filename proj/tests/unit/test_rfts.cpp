#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>

#include "../support.hpp"
#include "slotwise/choice.hpp"
#include "slotwise/exact.hpp"
#include "slotwise/harness.hpp"
#include "slotwise/kmeans.hpp"
#include "slotwise/rfts.hpp"

using namespace slotwise;

namespace {

Instance c101(int customers) {
  return load_solomon(read_text_file(std::string(SLOTWISE_DATA_DIR) + "/c101_head.txt"), customers, 3);
}

ScenarioSet fixed_taste(const Instance& inst, double time_mean) {
  BehaviorSpec spec = BehaviorSpec{}.without_heterogeneity();
  spec.time_mean.fill(time_mean);
  return ScenarioSet::deterministic(spec, inst);
}

}  // namespace

TEST(Windows, SingleCustomerGetsEverySlot) {
  const Instance inst = fixtures::small_instance({{10, 0}});
  const int route[] = {0};
  const auto w = forward_backward_windows(route, inst);
  EXPECT_EQ(w.earliest_slot[0], 0);
  EXPECT_EQ(w.latest_slot[0], 2);
  EXPECT_EQ(w.offered_slots(0), (std::vector<int>{0, 1, 2}));
}

TEST(Windows, LongFirstStopPushesSecondIntoSlotOne) {
  Instance inst = fixtures::small_instance({{10, 0}, {20, 0}});
  inst.customers[0].service_time = 430.0;  // arrive at the second stop at 10 + 430 + 10 = 450
  inst.finalize();
  const int route[] = {0, 1};
  const auto w = forward_backward_windows(route, inst);
  EXPECT_EQ(w.earliest_slot[0], 0);
  EXPECT_EQ(w.earliest_slot[1], 1);
  EXPECT_EQ(w.latest_slot[1], 2);
}

TEST(Windows, TightHorizonLeavesOneSlot) {
  // The second stop is reached exactly at the end of the horizon.
  const Instance inst = fixtures::small_instance({{10, 0}, {20, 0}}, 3, 20.0);
  const int route[] = {0, 1};
  const auto w = forward_backward_windows(route, inst);
  for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(w.earliest_slot[k], w.latest_slot[k]);
  EXPECT_EQ(w.earliest_slot[0], 1);
  EXPECT_EQ(w.earliest_slot[1], 2);
}

TEST(Windows, UnschedulableRouteThrows) {
  const Instance inst = fixtures::small_instance({{10, 0}, {20, 0}}, 3, 19.0);
  const int route[] = {0, 1};
  EXPECT_THROW(forward_backward_windows(route, inst), ModelError);
}

TEST(Windows, EarliestNeverAfterLatest) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RandomInstanceSpec spec;
    spec.customers = 6;
    const Instance inst = random_instance(spec, seed);
    std::vector<int> all(6);
    for (int i = 0; i < 6; ++i) all[static_cast<std::size_t>(i)] = i;
    const auto route = nearest_neighbor_route(all, inst);
    const auto w = forward_backward_windows(route, inst);
    for (std::size_t k = 0; k < route.size(); ++k) EXPECT_LE(w.earliest_slot[k], w.latest_slot[k]);
  }
}

TEST(Discounts, CheapestWinningRate) {
  const Instance inst = fixtures::small_instance({{10, 0}});
  const int all_slots[] = {0, 1, 2};
  // Full price loses to the opt-out (3 - 3.064 < 0), the discount wins (3 - 2.696 > 0).
  auto ids = assign_discounts(0, all_slots, fixed_taste(inst, 3.0), inst);
  for (int s = 0; s < 3; ++s) EXPECT_EQ(ids[static_cast<std::size_t>(s)], inst.option_id(s, 1));
  ids = assign_discounts(0, all_slots, fixed_taste(inst, 5.0), inst);
  for (int s = 0; s < 3; ++s) EXPECT_EQ(ids[static_cast<std::size_t>(s)], inst.option_id(s, 0));
  ids = assign_discounts(0, all_slots, fixed_taste(inst, 1.0), inst);  // nothing wins: deepest discount
  for (int s = 0; s < 3; ++s) EXPECT_EQ(ids[static_cast<std::size_t>(s)], inst.option_id(s, 1));
}

TEST(Discounts, MatchesWinRateRuleOnRandomDraws) {
  const Instance inst = c101(4);
  BehaviorSpec spec;
  spec.time_mean.fill(3.0);  // straddles the opt-out at full price
  const auto scen = sample_scenarios(spec, inst, 200, 6);
  for (int n = 0; n < 4; ++n) {
    for (int s = 0; s < 3; ++s) {
      int expect = 1;
      for (int k = 0; k < 2; ++k) {
        int wins = 0;
        for (int r = 0; r < 200; ++r)
          wins += scenario_utility(inst.option(inst.option_id(s, k)), n, r, scen, inst) > scen.xi(kOptOut, n, r);
        if (wins > 100) {
          expect = k;
          break;
        }
      }
      EXPECT_EQ(preferred_discount(n, s, scen, inst), expect);
    }
  }
}

TEST(Clusters, SeparatedBlobsSplitAtFleetSize) {
  const Instance inst = fixtures::small_instance({{30, 30}, {31, 30}, {30, 31}, {-30, -30}, {-31, -30}, {-30, -31}}, 3,
                                                 1236.0, {0.0, 0.12}, 2, 2);
  const auto clusters = choose_clusters(inst, 0, 7);
  ASSERT_EQ(clusters.size(), 2u);
  for (const auto& c : clusters) {
    const bool east = inst.customers[static_cast<std::size_t>(c[0])].x > 0;
    for (int m : c) EXPECT_EQ(inst.customers[static_cast<std::size_t>(m)].x > 0, east);
  }
}

TEST(Clusters, PicksCheapestCandidateCount) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    RandomInstanceSpec spec;
    spec.customers = 9;
    spec.fleet_size = 4;
    spec.capacity = 1000.0;
    const Instance inst = random_instance(spec, 70 + seed);
    auto tour = [&](const std::vector<int>& c) {
      const auto r = nearest_neighbor_route(c, inst);
      double t = 0.0;
      std::size_t at = 0;
      for (int m : r) {
        t += inst.travel_cost(at, static_cast<std::size_t>(m) + 1);
        at = static_cast<std::size_t>(m) + 1;
      }
      return t + inst.travel_cost(at, 0);
    };
    std::vector<Point2> pts;
    for (const auto& c : inst.customers) pts.push_back({c.x, c.y});
    double cheapest = 1e300;
    for (int k = 2; k <= 4; ++k) {
      double total = 0.0;
      for (const auto& c : kmeans(pts, k, derive_key(seed, {static_cast<std::uint64_t>(k)})).members()) total += tour(c);
      cheapest = std::min(cheapest, total);
    }
    double chosen = 0.0;
    for (const auto& c : choose_clusters(inst, 2, seed)) chosen += tour(c);
    EXPECT_DOUBLE_EQ(chosen, cheapest);
  }
}

TEST(Clusters, ZeroSlackUsesFleetSize) {
  RandomInstanceSpec spec;
  spec.customers = 8;
  spec.fleet_size = 3;
  const Instance inst = random_instance(spec, 2);
  EXPECT_EQ(choose_clusters(inst, 0, 1).size(), 3u);
}

TEST(Clusters, CapacityRepair) {
  const Instance inst = fixtures::small_instance({{10, 10}, {11, 10}, {10, 11}, {-20, 0}}, 3, 1236.0, {0.0, 0.12}, 2, 5,
                                                 50.0, 0.0, 20.0);
  std::vector<std::vector<int>> clusters{{0, 1, 2}, {3}};
  repair_cluster_capacity(clusters, inst);
  std::vector<int> seen;
  for (const auto& c : clusters) {
    double load = 0.0;
    for (int m : c) load += inst.customers[static_cast<std::size_t>(m)].demand;
    EXPECT_LE(load, inst.capacity);
    seen.insert(seen.end(), c.begin(), c.end());
  }
  std::sort(seen.begin(), seen.end());
  EXPECT_EQ(seen, (std::vector<int>{0, 1, 2, 3}));
}

TEST(NearestNeighbor, GreedyOrder) {
  const Instance inst = fixtures::small_instance({{30, 0}, {10, 0}, {20, 0}});
  const int all[] = {0, 1, 2};
  EXPECT_EQ(nearest_neighbor_route(all, inst), (std::vector<int>{1, 2, 0}));
}

TEST(Rfts, ValidOnC101Head) {
  const Instance inst = c101(5);
  const auto scen = sample_scenarios(BehaviorSpec{}, inst, 80, 1);
  const Evaluator ev(inst, scen);
  const Solution sol = rfts(ev, 1, 3);
  EXPECT_TRUE(assortment_violation(sol.assortment, inst).empty());
  for (int n = 0; n < 5; ++n) EXPECT_GE(sol.assortment.offered_count(n), 2);
  EXPECT_TRUE(fixtures::same_solution(sol, rfts(ev, 1, 3)));
}

TEST(Rfts, SingleCustomerOffersEverySlot) {
  const Instance inst = fixtures::small_instance({{10, 0}});
  const auto scen = sample_scenarios(BehaviorSpec{}, inst, 20, 1);
  const Assortment a = rfts_assortment(inst, scen, 0, 1);
  for (int s = 0; s < 3; ++s) EXPECT_GE(offered_discount(a, inst, 0, s), 0);
}

TEST(Rfts, NeverBeatsExactOptimum) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    RandomInstanceSpec spec;
    spec.customers = 4;
    const Instance inst = random_instance(spec, 40 + seed);
    const auto scen = sample_scenarios(BehaviorSpec{}, inst, 5, seed);
    EvaluationOptions opts;
    opts.router.kind = RouterKind::Exact;
    const Solution sol = rfts(Evaluator(inst, scen, opts), 1, seed);
    EXPECT_LE(sol.profit, exact_solve(inst, scen).profit + 1e-9);
  }
}

TEST(Rfts, AlwaysValidOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomInstanceSpec spec;
    spec.customers = 3 + static_cast<int>(seed % 10);
    spec.min_options = 1 + static_cast<int>(seed % 4);
    spec.horizon = 400.0 + 100.0 * static_cast<double>(seed);
    const Instance inst = random_instance(spec, seed);
    const auto scen = sample_scenarios(BehaviorSpec{}, inst, 10, seed);
    EXPECT_TRUE(assortment_violation(rfts_assortment(inst, scen, 1, seed), inst).empty());
  }
}

TEST(Rfts, FastAtEightyCustomers) {
  const Instance inst = load_solomon(synthetic_solomon(80, 1), 80, 3);
  const auto scen = sample_scenarios(BehaviorSpec{}, inst, 80, 1);
  const auto t0 = std::chrono::steady_clock::now();
  const Assortment a = rfts_assortment(inst, scen, 1, 1);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_TRUE(assortment_violation(a, inst).empty());
  EXPECT_LT(secs, 1.0);
}
