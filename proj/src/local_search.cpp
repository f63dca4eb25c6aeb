#include <algorithm>
#include <numeric>
#include <optional>

#include "slotwise/salns.hpp"

namespace slotwise {

namespace {

/// Tries candidate moves in order and keeps the first improving one.
class MoveLoop {
 public:
  MoveLoop(Solution& current, const Evaluator& evaluator, int budget)
      : current_(current), evaluator_(evaluator), budget_(budget) {}

  bool exhausted() const { return budget_ > 0 && tried_ >= budget_; }

  /// Returns true when the move improved and was adopted.
  bool attempt(const Assortment& candidate) {
    ++tried_;
    Solution s = evaluator_.evaluate(candidate, &current_);
    if (s.profit > current_.profit) {
      current_ = std::move(s);
      return true;
    }
    return false;
  }

 private:
  Solution& current_;
  const Evaluator& evaluator_;
  int budget_;
  int tried_ = 0;
};

std::vector<int> shuffled_customers(int n, Rng& rng) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order.begin(), order.end());
  return order;
}

template <class T>
const T& pick(const std::vector<T>& v, Rng& rng) {
  return v[static_cast<std::size_t>(rng.below(v.size()))];
}

void random_inclusion(Solution& cur, const Evaluator& ev, Rng& rng, int budget) {
  const Instance& inst = ev.instance();
  MoveLoop loop(cur, ev, budget);
  for (int n : shuffled_customers(inst.customer_count(), rng)) {
    if (loop.exhausted()) return;
    std::vector<int> free_slots;
    for (int s = 0; s < inst.slot_count(); ++s)
      if (offered_discount(cur.assortment, inst, n, s) < 0) free_slots.push_back(s);
    if (free_slots.empty()) continue;
    Assortment a = cur.assortment;
    const int s = pick(free_slots, rng);
    a.set(n, inst.option_id(s, static_cast<int>(rng.below(static_cast<std::uint64_t>(inst.discount_count())))), true);
    if (loop.attempt(a)) return;
  }
}

void random_elimination(Solution& cur, const Evaluator& ev, Rng& rng, int budget) {
  const Instance& inst = ev.instance();
  MoveLoop loop(cur, ev, budget);
  for (int n : shuffled_customers(inst.customer_count(), rng)) {
    if (loop.exhausted()) return;
    if (cur.assortment.offered_count(n) <= inst.min_options) continue;
    const auto options = cur.assortment.offered_options(n);
    Assortment a = cur.assortment;
    a.set(n, pick(options, rng), false);
    if (loop.attempt(a)) return;
  }
}

void discount_adjustment(Solution& cur, const Evaluator& ev, Rng& rng, int budget) {
  const Instance& inst = ev.instance();
  if (inst.discount_count() < 2) return;
  MoveLoop loop(cur, ev, budget);
  for (int n : shuffled_customers(inst.customer_count(), rng)) {
    if (loop.exhausted()) return;
    const auto options = cur.assortment.offered_options(n);
    if (options.empty()) continue;
    const auto& o = inst.option(pick(options, rng));
    int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(inst.discount_count() - 1)));
    if (k >= o.discount) ++k;
    Assortment a = cur.assortment;
    a.set(n, o.id, false);
    a.set(n, inst.option_id(o.slot, k), true);
    if (loop.attempt(a)) return;
  }
}

void common_elimination(Solution& cur, const Evaluator& ev, Rng& rng, int budget) {
  const Instance& inst = ev.instance();
  std::vector<int> common;
  for (int i = 1; i < inst.option_count(); ++i) {
    bool everyone = true;
    for (int n = 0; n < inst.customer_count() && everyone; ++n) everyone = cur.assortment.offered(n, i);
    if (everyone) common.push_back(i);
  }
  rng.shuffle(common.begin(), common.end());
  MoveLoop loop(cur, ev, budget);
  for (int i : common) {
    for (int n : shuffled_customers(inst.customer_count(), rng)) {
      if (loop.exhausted()) return;
      if (cur.assortment.offered_count(n) <= inst.min_options) continue;
      Assortment a = cur.assortment;
      a.set(n, i, false);
      if (loop.attempt(a)) return;
    }
  }
}

void high_utility_elimination(Solution& cur, const Evaluator& ev, const SearchContext& ctx, Rng& rng, int budget) {
  const Instance& inst = ev.instance();
  MoveLoop loop(cur, ev, budget);
  for (int n : shuffled_customers(inst.customer_count(), rng)) {
    if (loop.exhausted()) return;
    if (cur.assortment.offered_count(n) <= inst.min_options) continue;
    const auto options = cur.assortment.offered_options(n);
    const int top = *std::max_element(options.begin(), options.end(), [&](int x, int y) {
      return ctx.mean_utility(n, x) < ctx.mean_utility(n, y);
    });
    Assortment a = cur.assortment;
    a.set(n, top, false);
    if (loop.attempt(a)) return;
  }
}

}  // namespace

Solution local_search(const Solution& solution, const Evaluator& evaluator, const SearchContext& ctx, Rng& rng,
                      int moves_per_operator) {
  Solution cur = solution;
  random_inclusion(cur, evaluator, rng, moves_per_operator);
  random_elimination(cur, evaluator, rng, moves_per_operator);
  discount_adjustment(cur, evaluator, rng, moves_per_operator);
  common_elimination(cur, evaluator, rng, moves_per_operator);
  high_utility_elimination(cur, evaluator, ctx, rng, moves_per_operator);
  return cur;
}

}  // namespace slotwise
