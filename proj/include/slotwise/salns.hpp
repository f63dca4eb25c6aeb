#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "slotwise/evaluate.hpp"
#include "slotwise/model.hpp"
#include "slotwise/rng.hpp"

namespace slotwise {

enum class DestroyKind { Random, Neighborhood, Worst, Adaptive };
enum class RepairKind { Random, HighUtility, Greedy, TwoRegret, Best, DiscountAdjust };

inline constexpr int kDestroyKinds = 4;
inline constexpr int kRepairKinds = 6;

std::string_view to_string(DestroyKind kind);
std::string_view to_string(RepairKind kind);
DestroyKind destroy_from_string(std::string_view name);
RepairKind repair_from_string(std::string_view name);

struct SalnsParams {
  double epsilon = 0.5;      // percent improvement required over the window
  int window = 200;          // N
  double phi0 = -1.0;        // negative: 5% of |RFTS profit|
  double phi_min = 0.0;
  double phi_step = -1.0;    // negative: phi0 / 1000
  double theta = 0.8;
  std::array<double, 4> scores{10.0, 6.0, 2.0, 0.0};  // best, better, accepted, rejected
  double p_local_search = 0.3;
  double kappa_max = 0.4;
  int max_iterations = 5000;
  int zeta = 1;  // RFTS cluster slack
  /// Candidate moves tried per local-search operator; 0 means every target.
  int ls_moves_per_operator = 0;
  RouterConfig search_router{RouterKind::CW};
  /// The best assortment is re-scored once with this router at the end.
  RouterConfig final_router{RouterKind::ICW};
  bool reevaluate_final = true;

  /// Throws ModelError on inconsistent values.
  void validate() const;
};

/// Per-customer statistics shared by the operators. Built once per run.
class SearchContext {
 public:
  SearchContext(const Instance& instance, const ScenarioSet& scen, std::uint64_t seed);

  const Instance& instance() const { return *instance_; }
  const ScenarioSet& scenarios() const { return *scen_; }

  double win_rate(int n, int option) const { return win_rate_[cell(n, option)]; }
  double mean_utility(int n, int option) const { return mean_utility_[cell(n, option)]; }
  /// Discount index chosen by the RFTS rule for (customer, slot).
  int preferred_discount(int n, int slot) const {
    return preferred_[static_cast<std::size_t>(n) * static_cast<std::size_t>(instance_->slot_count()) +
                      static_cast<std::size_t>(slot)];
  }
  /// Geographic cluster of each customer.
  const std::vector<int>& cluster() const { return cluster_; }

  /// Success counters of adaptive removal, one per customer, starting at 1.
  std::vector<double>& removal_counters() { return counters_; }
  const std::vector<double>& removal_counters() const { return counters_; }

 private:
  std::size_t cell(int n, int option) const {
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(instance_->option_count()) +
           static_cast<std::size_t>(option);
  }

  const Instance* instance_;
  const ScenarioSet* scen_;
  std::vector<double> win_rate_;
  std::vector<double> mean_utility_;
  std::vector<int> preferred_;
  std::vector<int> cluster_;
  std::vector<double> counters_;
};

struct DestroyResult {
  Assortment partial;
  std::vector<int> removed;  // D
};

/// Number of customers a destroy step removes: max(1, ceil(kappa * |C|)).
int removal_count(double kappa, int customers);

/// Clears the slot options of the removed customers (the opt-out stays).
DestroyResult destroy(DestroyKind kind, const Solution& solution, double kappa, const SearchContext& ctx, Rng& rng);

/// Average over scenarios of (routing cost saved by dropping n - revenue of n).
/// Higher means the customer is worth less to the current solution.
std::vector<double> removal_scores(const Solution& solution, const Instance& instance);

/// Gives every removed customer a fresh valid set of options. `original` is
/// the assortment before destruction; DiscountAdjust re-prices its slots.
Assortment repair(RepairKind kind, const Assortment& partial, const std::vector<int>& removed,
                  const Solution& original, const SearchContext& ctx, Rng& rng);

/// Five improvement operators in fixed order; each stops at its first
/// improving move. Never returns a worse solution.
Solution local_search(const Solution& solution, const Evaluator& evaluator, const SearchContext& ctx, Rng& rng,
                      int moves_per_operator = 0);

/// Record-to-record travel: accept when the candidate is at most phi below the incumbent.
inline bool rrt_accept(double candidate_profit, double incumbent_profit, double phi) {
  return incumbent_profit - candidate_profit <= phi;
}

inline double update_weight(double omega, double theta, double score) {
  return theta * omega + (1.0 - theta) * score;
}

/// Index drawn with probability weight / sum; uniform when every weight is 0.
int roulette(std::span<const double> weights, Rng& rng);

enum class Outcome { NewBest = 0, Better = 1, Accepted = 2, Rejected = 3 };
std::string_view to_string(Outcome o);

struct IterationRecord {
  int iteration = 0;
  DestroyKind destroy = DestroyKind::Random;
  RepairKind repair = RepairKind::Random;
  int removed = 0;
  double candidate_profit = 0.0;
  double incumbent_profit = 0.0;
  double best_profit = 0.0;
  bool local_search = false;
  Outcome outcome = Outcome::Rejected;
  double phi = 0.0;
  double elapsed_ms = 0.0;
};

struct OperatorStats {
  int used = 0;
  std::array<int, 4> outcomes{};  // indexed by Outcome
  double weight = 1.0;
};

struct SalnsResult {
  Solution best;              // re-scored with the final router when enabled
  double search_profit = 0.0; // best profit under the search router
  double rfts_profit = 0.0;   // starting point under the search router
  int iterations = 0;
  long evaluations = 0;
  std::array<OperatorStats, kDestroyKinds> destroy_stats{};
  std::array<OperatorStats, kRepairKinds> repair_stats{};
};

using IterationObserver = std::function<void(const IterationRecord&, const Assortment& incumbent)>;

/// Simulation-based adaptive large neighborhood search starting from RFTS.
SalnsResult salns(const Instance& instance, const ScenarioSet& scen, const SalnsParams& params, std::uint64_t seed,
                  const IterationObserver& observer = {});

}  // namespace slotwise
