#include <gtest/gtest.h>

#include <cmath>

#include "../support.hpp"
#include "slotwise/choice.hpp"
#include "slotwise/exact.hpp"
#include "slotwise/harness.hpp"
#include "slotwise/parallel.hpp"
#include "slotwise/rfts.hpp"
#include "slotwise/salns.hpp"

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

Assortment every_slot(const Instance& inst, int discount) {
  Assortment a(inst.customer_count(), inst.option_count());
  for (int n = 0; n < inst.customer_count(); ++n)
    for (int s = 0; s < inst.slot_count(); ++s) a.set(n, inst.option_id(s, discount), true);
  return a;
}

}  // namespace

TEST(Evaluate, OptOutOnlyEarnsNothing) {
  const Instance inst = fixtures::small_instance({{10, 0}, {0, 10}}, 3, 1236.0, {0.0, 0.12}, 1);
  const auto scen = sample_scenarios(BehaviorSpec{}, inst, 10, 1);
  const Solution s = evaluate(Assortment(2, inst.option_count()), inst, scen);
  EXPECT_EQ(s.profit, 0.0);
  for (const auto& p : s.plans) EXPECT_TRUE(p.routes.empty());
}

TEST(Evaluate, SingleDiscountedRoundTrip) {
  const Instance inst = fixtures::small_instance({{6, 8}});
  Assortment a(1, inst.option_count());
  a.set(0, inst.option_id(0, 1), true);
  const Solution s = evaluate(a, inst, fixed_taste(inst, 3.0));
  EXPECT_EQ(s.choices.chosen(0, 0), inst.option_id(0, 1));
  EXPECT_NEAR(s.profit, 35.2 - (2 * 10.0 + 50.0), 1e-12);
}

TEST(Evaluate, ProfitIdentityAndRouterOrdering) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    RandomInstanceSpec spec;
    spec.customers = 4;
    const Instance inst = random_instance(spec, seed);
    const auto scen = sample_scenarios(BehaviorSpec{}, inst, 12, seed);
    const Assortment a = full_assortment_lowest_discount(inst);
    const Solution cw = evaluate(a, inst, scen, RouterConfig{RouterKind::CW});
    const Solution ex = evaluate(a, inst, scen, RouterConfig{RouterKind::Exact});
    EXPECT_GE(ex.profit, cw.profit - 1e-9);
    double total = 0.0;
    for (int r = 0; r < 12; ++r) {
      double revenue = 0.0;
      for (int n = 0; n < 4; ++n) revenue += inst.option(cw.choices.chosen(n, r)).effective_price;
      ASSERT_TRUE(cw.feasible[static_cast<std::size_t>(r)]);
      total += revenue - cw.plans[static_cast<std::size_t>(r)].total_cost;
    }
    EXPECT_NEAR(cw.profit, total / 12, 1e-9);
  }
}

TEST(Evaluate, PlanReuseMatchesFreshEvaluation) {
  const Instance inst = c101(6);
  const auto scen = sample_scenarios(BehaviorSpec{}, inst, 20, 3);
  const Evaluator ev(inst, scen);
  const Solution base = ev(every_slot(inst, 0));
  Assortment changed = base.assortment;
  changed.set(2, inst.option_id(1, 0), false);
  EXPECT_TRUE(fixtures::same_solution(ev.evaluate(changed, &base), ev(changed)));
}

TEST(Evaluate, SameResultOnAnyThreadCount) {
  const Instance inst = c101(10);
  const auto scen = sample_scenarios(BehaviorSpec{}, inst, 30, 5);
  const Assortment a = every_slot(inst, 1);
  set_thread_count(1);
  const Solution one = evaluate(a, inst, scen, RouterConfig{RouterKind::ICW});
  set_thread_count(8);
  const Solution eight = evaluate(a, inst, scen, RouterConfig{RouterKind::ICW});
  set_thread_count(0);
  EXPECT_TRUE(fixtures::same_solution(one, eight));
}

TEST(Rrt, Threshold) {
  EXPECT_TRUE(rrt_accept(10.0, 10.0, 0.0));
  EXPECT_TRUE(rrt_accept(7.0, 10.0, 3.0));
  EXPECT_FALSE(rrt_accept(6.0, 10.0, 3.0));
  EXPECT_TRUE(rrt_accept(12.0, 10.0, 0.0));
}

TEST(Weights, Update) {
  EXPECT_DOUBLE_EQ(update_weight(4.0, 0.8, 10.0), 5.2);
  EXPECT_DOUBLE_EQ(update_weight(4.0, 1.0, 10.0), 4.0);
  EXPECT_DOUBLE_EQ(update_weight(4.0, 0.0, 10.0), 10.0);
}

TEST(Weights, RouletteFrequencies) {
  Rng rng(3);
  const double w[] = {1.0, 3.0, 0.0, 4.0};
  std::array<int, 4> hits{};
  const int draws = 80000;
  for (int k = 0; k < draws; ++k) ++hits[static_cast<std::size_t>(roulette(w, rng))];
  EXPECT_EQ(hits[2], 0);
  EXPECT_NEAR(hits[0] / double(draws), 0.125, 0.01);
  EXPECT_NEAR(hits[1] / double(draws), 0.375, 0.01);
  EXPECT_NEAR(hits[3] / double(draws), 0.5, 0.01);
  const double zero[] = {0.0, 0.0};
  std::array<int, 2> z{};
  for (int k = 0; k < 10000; ++k) ++z[static_cast<std::size_t>(roulette(zero, rng))];
  EXPECT_NEAR(z[0] / 10000.0, 0.5, 0.03);
}

TEST(Params, Validation) {
  SalnsParams p;
  EXPECT_NO_THROW(p.validate());
  p.theta = 1.5;
  EXPECT_THROW(p.validate(), ModelError);
  p = {};
  p.scores = {1.0, 2.0, 0.0, 0.0};
  EXPECT_THROW(p.validate(), ModelError);
  p = {};
  p.phi0 = 1.0;
  p.phi_min = 2.0;
  EXPECT_THROW(p.validate(), ModelError);
}

TEST(Destroy, RemovalCount) {
  EXPECT_EQ(removal_count(0.01, 5), 1);
  EXPECT_EQ(removal_count(0.4, 5), 2);
  EXPECT_EQ(removal_count(1.0, 5), 5);
}

TEST(Destroy, RandomWithFullKappaRemovesEveryone) {
  const Instance inst = c101(5);
  const auto scen = sample_scenarios(BehaviorSpec{}, inst, 10, 2);
  const Evaluator ev(inst, scen);
  const SearchContext ctx(inst, scen, 1);
  Rng rng(1);
  const auto res = destroy(DestroyKind::Random, ev(every_slot(inst, 0)), 1.0, ctx, rng);
  EXPECT_EQ(res.removed.size(), 5u);
  for (int n = 0; n < 5; ++n) EXPECT_EQ(res.partial.offered_count(n), 1);
}

TEST(Destroy, WorstRemovesFarLowRevenueCustomer) {
  const Instance inst = fixtures::small_instance({{5, 0}, {0, 5}, {5, 5}, {60, 0}});
  Assortment a(4, inst.option_count());
  for (int n = 0; n < 3; ++n) a.set(n, inst.option_id(0, 0), true);
  a.set(3, inst.option_id(0, 1), true);
  const auto scen = fixed_taste(inst, 5.0);
  const Solution sol = evaluate(a, inst, scen);
  const auto score = removal_scores(sol, inst);
  // Customer 3 pays 35.2 and adds a 110-unit detour; the others pay 40 for a short hop.
  for (int n = 0; n < 3; ++n) EXPECT_GT(score[3], score[static_cast<std::size_t>(n)]);
  const SearchContext ctx(inst, scen, 1);
  Rng rng(2);
  const auto res = destroy(DestroyKind::Worst, sol, 0.25, ctx, rng);
  EXPECT_EQ(res.removed, std::vector<int>{3});
}

TEST(Destroy, EveryKindKeepsOptOut) {
  const Instance inst = c101(8);
  const auto scen = sample_scenarios(BehaviorSpec{}, inst, 10, 2);
  const Evaluator ev(inst, scen);
  const SearchContext ctx(inst, scen, 1);
  const Solution sol = ev(every_slot(inst, 0));
  Rng rng(5);
  for (int k = 0; k < kDestroyKinds; ++k) {
    for (int t = 0; t < 20; ++t) {
      const double kappa = 0.4 * rng.uniform01();
      const auto res = destroy(static_cast<DestroyKind>(k), sol, kappa, ctx, rng);
      const int size = static_cast<int>(res.removed.size());
      if (static_cast<DestroyKind>(k) == DestroyKind::Neighborhood) {
        EXPECT_GE(size, 1);  // limited to the anchor's cluster
        EXPECT_LE(size, removal_count(kappa, 8));
      } else {
        EXPECT_EQ(size, removal_count(kappa, 8));
      }
      for (int n = 0; n < 8; ++n) EXPECT_TRUE(res.partial.offered(n, kOptOut));
      for (int n : res.removed) EXPECT_EQ(res.partial.offered_count(n), 1);
    }
  }
}

TEST(Repair, EveryKindYieldsValidAssortments) {
  const Instance inst = c101(8);
  const auto scen = sample_scenarios(BehaviorSpec{}, inst, 10, 2);
  const Evaluator ev(inst, scen);
  const SearchContext ctx(inst, scen, 1);
  const Solution sol = ev(rfts_assortment(inst, scen, 1, 1));
  Rng rng(9);
  for (int d = 0; d < kDestroyKinds; ++d) {
    for (int p = 0; p < kRepairKinds; ++p) {
      for (int t = 0; t < 10; ++t) {
        const auto res = destroy(static_cast<DestroyKind>(d), sol, 0.4 * rng.uniform01(), ctx, rng);
        const Assortment a = repair(static_cast<RepairKind>(p), res.partial, res.removed, sol, ctx, rng);
        EXPECT_TRUE(assortment_violation(a, inst).empty()) << to_string(static_cast<RepairKind>(p));
        for (int n : res.removed) {
          EXPECT_GE(a.offered_count(n), 2);
          EXPECT_LE(a.offered_count(n), inst.slot_count() + 1);
        }
      }
    }
  }
}

TEST(Repair, DiscountAdjustKeepsSlots) {
  const Instance inst = c101(3);
  const auto scen = sample_scenarios(BehaviorSpec{}, inst, 10, 2);
  const Evaluator ev(inst, scen);
  const SearchContext ctx(inst, scen, 1);
  Assortment base(3, inst.option_count());
  for (int n = 0; n < 3; ++n) base.set(n, inst.option_id(1, 0), true);
  const Solution sol = ev(base);
  Rng rng(4);
  bool saw_discount = false;
  for (int t = 0; t < 30; ++t) {
    Assortment partial = base;
    partial.clear_customer(0);
    const Assortment a = repair(RepairKind::DiscountAdjust, partial, {0}, sol, ctx, rng);
    ASSERT_EQ(a.offered_options(0).size(), 1u);
    const auto& o = inst.option(a.offered_options(0)[0]);
    EXPECT_EQ(o.slot, 1);
    saw_discount = saw_discount || o.discount == 1;
  }
  EXPECT_TRUE(saw_discount);
}

TEST(Repair, HighUtilityPrefersFrequentWinner) {
  // Win rates against the opt-out are the logistic of V: 0.9 for slot 0, 0.4 for slot 1.
  const Instance inst = fixtures::small_instance({{10, 0}}, 2, 1236.0, {0.0}, 2);
  BehaviorSpec spec = BehaviorSpec{}.without_heterogeneity();
  spec.price_mean = 0.0;
  spec.time_mean = {std::log(9.0), std::log(2.0 / 3.0), 0.0};
  const auto scen = sample_scenarios(spec, inst, 4000, 8);
  const SearchContext ctx(inst, scen, 1);
  EXPECT_NEAR(ctx.win_rate(0, 1), 0.9, 0.02);
  EXPECT_NEAR(ctx.win_rate(0, 2), 0.4, 0.02);
  const Evaluator ev(inst, scen);
  Assortment base(1, inst.option_count());
  base.set(0, 2, true);
  const Solution sol = ev(base);
  Rng rng(6);
  int singles = 0;
  for (int t = 0; t < 40; ++t) {
    const Assortment a = repair(RepairKind::HighUtility, Assortment(1, inst.option_count()), {0}, sol, ctx, rng);
    if (a.offered_count(0) == 2) {
      ++singles;
      EXPECT_TRUE(a.offered(0, 1));
    }
  }
  EXPECT_GT(singles, 0);
}

TEST(LocalSearch, NeverWorseAndRespectsFloor) {
  const Instance inst = c101(6);
  const auto scen = sample_scenarios(BehaviorSpec{}, inst, 20, 4);
  const Evaluator ev(inst, scen);
  const SearchContext ctx(inst, scen, 1);
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    Assortment a(6, inst.option_count());
    for (int n = 0; n < 6; ++n) a.set(n, inst.option_id(static_cast<int>(rng.below(3)), static_cast<int>(rng.below(2))), true);
    const Solution start = ev(a);
    const Solution out = local_search(start, ev, ctx, rng);
    EXPECT_GE(out.profit, start.profit);
    EXPECT_TRUE(assortment_violation(out.assortment, inst).empty());
  }
}

TEST(LocalSearch, FixedPointWhenNoMoveExists) {
  // Every slot is mandatory and there is one price: no operator has a move.
  const Instance inst = fixtures::small_instance({{10, 0}}, 2, 1236.0, {0.0}, 3);
  const auto scen = sample_scenarios(BehaviorSpec{}, inst, 10, 1);
  const Evaluator ev(inst, scen);
  const SearchContext ctx(inst, scen, 1);
  Rng rng(1);
  const Solution start = ev(every_slot(inst, 0));
  const Solution out = local_search(start, ev, ctx, rng);
  EXPECT_TRUE(out.assortment == start.assortment);
  EXPECT_EQ(ev.evaluations(), 1);
}

TEST(LocalSearch, DropsUnprofitableCommonOption) {
  // Customer 1 is far: serving it costs more than it pays, so its offer goes.
  const Instance inst =
      fixtures::small_instance({{5, 0}, {200, 0}}, 1, 1236.0, {0.0}, 1, 5, 200.0, 0.0, 10.0, 0.0);
  const auto scen = fixed_taste(inst, 5.0);
  const Evaluator ev(inst, scen);
  const SearchContext ctx(inst, scen, 1);
  Rng rng(2);
  const Solution start = ev(every_slot(inst, 0));
  const Solution out = local_search(start, ev, ctx, rng);
  EXPECT_GT(out.profit, start.profit);
  EXPECT_TRUE(out.assortment.offered(0, 1));
  EXPECT_FALSE(out.assortment.offered(1, 1));
}

TEST(Salns, DeterministicForSeed) {
  const Instance inst = c101(6);
  const auto scen = sample_scenarios(BehaviorSpec{}, inst, 10, 4);
  SalnsParams p;
  p.max_iterations = 150;
  const auto a = salns(inst, scen, p, 5);
  const auto b = salns(inst, scen, p, 5);
  EXPECT_TRUE(fixtures::same_solution(a.best, b.best));
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Salns, StopsAtFirstWindowWithoutEnoughGain) {
  const Instance inst = c101(5);
  const auto scen = sample_scenarios(BehaviorSpec{}, inst, 10, 4);
  SalnsParams p;
  p.window = 1;
  p.epsilon = 100.0;
  std::vector<double> best;
  const auto res = salns(inst, scen, p, 1, [&](const IterationRecord& rec, const Assortment&) { best.push_back(rec.best_profit); });
  ASSERT_GE(res.iterations, 1);
  ASSERT_EQ(static_cast<int>(best.size()), res.iterations);
  double prev = res.rfts_profit;
  for (int i = 0; i + 1 < res.iterations; ++i) {
    EXPECT_GT(best[static_cast<std::size_t>(i)] - prev, std::abs(prev));  // kept going only after doubling
    prev = best[static_cast<std::size_t>(i)];
  }
  EXPECT_LE(best.back() - prev, std::abs(prev));
}

TEST(Salns, BestMonotoneAndIterationsValid) {
  const Instance inst = c101(8);
  const auto scen = sample_scenarios(BehaviorSpec{}, inst, 15, 4);
  SalnsParams p;
  p.max_iterations = 300;
  double last = -1e300;
  const auto res = salns(inst, scen, p, 2, [&](const IterationRecord& rec, const Assortment& a) {
    EXPECT_GE(rec.best_profit, last);
    last = rec.best_profit;
    EXPECT_TRUE(assortment_violation(a, inst).empty());
  });
  EXPECT_GE(res.search_profit, res.rfts_profit);
}

TEST(Salns, ZeroThresholdIsHillClimbing) {
  const Instance inst = c101(8);
  const auto scen = sample_scenarios(BehaviorSpec{}, inst, 15, 4);
  SalnsParams p;
  p.phi0 = 0.0;
  p.phi_min = 0.0;
  p.max_iterations = 300;
  double last = -1e300;
  salns(inst, scen, p, 3, [&](const IterationRecord& rec, const Assortment&) {
    EXPECT_GE(rec.incumbent_profit, last);
    last = rec.incumbent_profit;
  });
}

TEST(Salns, WeightsStayPositiveWithPositiveRejectScore) {
  const Instance inst = c101(6);
  const auto scen = sample_scenarios(BehaviorSpec{}, inst, 10, 4);
  SalnsParams p;
  p.scores = {10.0, 6.0, 2.0, 0.5};
  p.max_iterations = 200;
  const auto res = salns(inst, scen, p, 4);
  for (const auto& s : res.destroy_stats) EXPECT_GT(s.weight, 0.0);
  for (const auto& s : res.repair_stats) EXPECT_GT(s.weight, 0.0);
}

TEST(Salns, OperatorNames) {
  for (int k = 0; k < kDestroyKinds; ++k)
    EXPECT_EQ(destroy_from_string(to_string(static_cast<DestroyKind>(k))), static_cast<DestroyKind>(k));
  for (int k = 0; k < kRepairKinds; ++k)
    EXPECT_EQ(repair_from_string(to_string(static_cast<RepairKind>(k))), static_cast<RepairKind>(k));
}

TEST(Salns, FiveCustomersCloseToExactOptimum) {
  const Instance inst = c101(5);
  const auto scen = sample_scenarios(BehaviorSpec{}, inst, 80, 1);
  ExactOptions opts;
  opts.customer_cap = 5;
  opts.max_assortments = 2e7;
  const double optimum = exact_solve(inst, scen, opts).profit;
  SalnsParams p;
  p.final_router = RouterConfig{RouterKind::Exact};  // score on the optimum's routing
  double gap = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto res = salns(inst, scen, p, seed);
    EXPECT_GE(res.search_profit, res.rfts_profit);
    EXPECT_LE(res.best.profit, optimum + 1e-9);
    gap += (optimum - res.best.profit) / std::abs(optimum) * 100.0;
  }
  EXPECT_LE(gap / 10.0, 5.0);
}
