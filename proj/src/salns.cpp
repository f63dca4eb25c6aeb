#include "slotwise/salns.hpp"

#include <chrono>
#include <cmath>

#include "slotwise/rfts.hpp"

namespace slotwise {

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::NewBest: return "best";
    case Outcome::Better: return "better";
    case Outcome::Accepted: return "accepted";
    case Outcome::Rejected: return "rejected";
  }
  return "rejected";
}

void SalnsParams::validate() const {
  if (!(epsilon >= 0.0)) throw ModelError("epsilon must be >= 0");
  if (window < 1) throw ModelError("window must be >= 1");
  if (phi0 >= 0.0 && phi_min > phi0) throw ModelError("phi_min must not exceed phi0");
  if (!(phi_min >= 0.0)) throw ModelError("phi_min must be >= 0");
  if (!(theta >= 0.0 && theta <= 1.0)) throw ModelError("theta must lie in [0, 1]");
  for (std::size_t k = 0; k < scores.size(); ++k) {
    if (!(scores[k] >= 0.0)) throw ModelError("scores must be >= 0");
    if (k > 0 && scores[k] > scores[k - 1]) throw ModelError("scores must be non-increasing");
  }
  if (!(p_local_search >= 0.0 && p_local_search <= 1.0)) throw ModelError("p_local_search must lie in [0, 1]");
  if (!(kappa_max > 0.0 && kappa_max <= 1.0)) throw ModelError("kappa_max must lie in (0, 1]");
  if (max_iterations < 0) throw ModelError("max_iterations must be >= 0");
  if (zeta < 0) throw ModelError("zeta must be >= 0");
  if (ls_moves_per_operator < 0) throw ModelError("ls_moves_per_operator must be >= 0");
}

SalnsResult salns(const Instance& instance, const ScenarioSet& scen, const SalnsParams& params, std::uint64_t seed,
                  const IterationObserver& observer) {
  params.validate();
  const auto t0 = std::chrono::steady_clock::now();
  EvaluationOptions eo;
  eo.router = params.search_router;
  eo.router_seed = derive_key(seed, {3});
  const Evaluator evaluator(instance, scen, eo);
  SearchContext ctx(instance, scen, derive_key(seed, {2}));
  Rng rng(derive_key(seed, {1}));

  SalnsResult result;
  Solution incumbent = rfts(evaluator, params.zeta, derive_key(seed, {0}));
  Solution best = incumbent;
  result.rfts_profit = incumbent.profit;

  const double phi0 = params.phi0 >= 0.0 ? params.phi0 : 0.05 * std::abs(incumbent.profit);
  const double step = params.phi_step >= 0.0 ? params.phi_step : phi0 / 1000.0;
  double phi = std::max(phi0, params.phi_min);

  std::array<double, kDestroyKinds> wd;
  std::array<double, kRepairKinds> wr;
  wd.fill(1.0);
  wr.fill(1.0);
  std::vector<double> best_history{best.profit};

  int it = 0;
  while (it < params.max_iterations) {
    const auto n_hist = best_history.size();
    if (n_hist > static_cast<std::size_t>(params.window)) {
      const double then = best_history[n_hist - 1 - static_cast<std::size_t>(params.window)];
      if (best_history.back() - then <= params.epsilon / 100.0 * std::abs(then)) break;
    }
    ++it;

    const auto d = static_cast<DestroyKind>(roulette(wd, rng));
    const auto p = static_cast<RepairKind>(roulette(wr, rng));
    const double kappa = params.kappa_max * (1.0 - rng.uniform01());  // (0, kappa_max]
    DestroyResult ruined = destroy(d, incumbent, kappa, ctx, rng);
    Assortment repaired = repair(p, ruined.partial, ruined.removed, incumbent, ctx, rng);
    Solution candidate = evaluator.evaluate(repaired, &incumbent);

    bool searched = false;
    if (candidate.profit > incumbent.profit && rng.uniform01() < params.p_local_search) {
      candidate = local_search(candidate, evaluator, ctx, rng, params.ls_moves_per_operator);
      searched = true;
    }

    Outcome outcome;
    if (candidate.profit > best.profit) {
      outcome = Outcome::NewBest;
    } else if (candidate.profit > incumbent.profit) {
      outcome = Outcome::Better;
    } else if (rrt_accept(candidate.profit, incumbent.profit, phi)) {
      outcome = Outcome::Accepted;
    } else {
      outcome = Outcome::Rejected;
    }

    if (outcome == Outcome::NewBest || outcome == Outcome::Better) {
      for (int n : ruined.removed) ctx.removal_counters()[static_cast<std::size_t>(n)] += 1.0;
    }
    if (outcome == Outcome::NewBest) best = candidate;
    if (outcome != Outcome::Rejected) incumbent = std::move(candidate);

    const double score = params.scores[static_cast<std::size_t>(outcome)];
    auto& di = wd[static_cast<std::size_t>(d)];
    auto& ri = wr[static_cast<std::size_t>(p)];
    di = update_weight(di, params.theta, score);
    ri = update_weight(ri, params.theta, score);
    auto& ds = result.destroy_stats[static_cast<std::size_t>(d)];
    auto& rs = result.repair_stats[static_cast<std::size_t>(p)];
    ++ds.used;
    ++rs.used;
    ++ds.outcomes[static_cast<std::size_t>(outcome)];
    ++rs.outcomes[static_cast<std::size_t>(outcome)];

    phi = std::max(params.phi_min, phi - step);
    best_history.push_back(best.profit);

    if (observer) {
      IterationRecord rec;
      rec.iteration = it;
      rec.destroy = d;
      rec.repair = p;
      rec.removed = static_cast<int>(ruined.removed.size());
      rec.candidate_profit = outcome == Outcome::Rejected ? candidate.profit : incumbent.profit;
      rec.incumbent_profit = incumbent.profit;
      rec.best_profit = best.profit;
      rec.local_search = searched;
      rec.outcome = outcome;
      rec.phi = phi;
      rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      observer(rec, incumbent.assortment);
    }
  }

  for (int k = 0; k < kDestroyKinds; ++k) result.destroy_stats[static_cast<std::size_t>(k)].weight = wd[static_cast<std::size_t>(k)];
  for (int k = 0; k < kRepairKinds; ++k) result.repair_stats[static_cast<std::size_t>(k)].weight = wr[static_cast<std::size_t>(k)];
  result.iterations = it;
  result.search_profit = best.profit;
  result.evaluations = evaluator.evaluations();
  if (params.reevaluate_final && params.final_router.kind != params.search_router.kind) {
    result.best = evaluator.with_router(params.final_router)(best.assortment);
  } else {
    result.best = std::move(best);
  }
  return result;
}

}  // namespace slotwise
