#include "slotwise/model.hpp"
#include "slotwise/parallel.hpp"
#include "slotwise/rng.hpp"

namespace slotwise {

void ScenarioSet::allocate() {
  const auto cells = static_cast<std::size_t>(customers_) * static_cast<std::size_t>(scenarios_);
  beta_time_.assign(cells * static_cast<std::size_t>(slots_), 0.0);
  beta_price_.assign(cells, 0.0);
  xi_.assign(cells * static_cast<std::size_t>(options_), 0.0);
}

ScenarioSet sample_scenarios(const BehaviorSpec& spec, const Instance& instance, int scenarios,
                             std::uint64_t seed) {
  if (scenarios < 1) throw ModelError("scenario count must be at least 1");
  spec.validate();

  ScenarioSet set;
  set.scenarios_ = scenarios;
  set.customers_ = instance.customer_count();
  set.slots_ = instance.slot_count();
  set.options_ = instance.option_count();
  set.seed_ = seed;
  set.spec_ = spec;
  set.allocate();

  const auto R = static_cast<std::size_t>(scenarios);
  parallel_for(static_cast<std::size_t>(set.customers_), [&](std::size_t n) {
    for (std::size_t r = 0; r < R; ++r) {
      Rng rng(derive_key(seed, {n, r}));
      const std::size_t cell = n * R + r;
      double* bt = set.beta_time_.data() + cell * static_cast<std::size_t>(set.slots_);
      for (int s = 0; s < set.slots_; ++s) {
        const auto seg = static_cast<std::size_t>(instance.slots[static_cast<std::size_t>(s)].segment);
        bt[s] = spec.time_mean[seg] + spec.time_std[seg] * rng.normal();
      }
      set.beta_price_[cell] = spec.price_mean + spec.price_std * rng.normal();
      double* xi = set.xi_.data() + cell * static_cast<std::size_t>(set.options_);
      for (int i = 0; i < set.options_; ++i) xi[i] = rng.gumbel();
    }
  });
  return set;
}

ScenarioSet ScenarioSet::single(int r) const {
  ScenarioSet out;
  out.scenarios_ = 1;
  out.customers_ = customers_;
  out.slots_ = slots_;
  out.options_ = options_;
  out.seed_ = seed_;
  out.spec_ = spec_;
  out.allocate();
  for (int n = 0; n < customers_; ++n) {
    const std::size_t src = cell(n, r);
    const auto dst = static_cast<std::size_t>(n);
    for (int s = 0; s < slots_; ++s)
      out.beta_time_[dst * static_cast<std::size_t>(slots_) + static_cast<std::size_t>(s)] =
          beta_time_[src * static_cast<std::size_t>(slots_) + static_cast<std::size_t>(s)];
    out.beta_price_[dst] = beta_price_[src];
    for (int i = 0; i < options_; ++i)
      out.xi_[dst * static_cast<std::size_t>(options_) + static_cast<std::size_t>(i)] =
          xi_[src * static_cast<std::size_t>(options_) + static_cast<std::size_t>(i)];
  }
  return out;
}

ScenarioSet ScenarioSet::deterministic(const BehaviorSpec& spec, const Instance& instance) {
  ScenarioSet out;
  out.scenarios_ = 1;
  out.customers_ = instance.customer_count();
  out.slots_ = instance.slot_count();
  out.options_ = instance.option_count();
  out.spec_ = spec;
  out.allocate();
  for (int n = 0; n < out.customers_; ++n) {
    const auto cell = static_cast<std::size_t>(n);
    for (int s = 0; s < out.slots_; ++s) {
      const auto seg = static_cast<std::size_t>(instance.slots[static_cast<std::size_t>(s)].segment);
      out.beta_time_[cell * static_cast<std::size_t>(out.slots_) + static_cast<std::size_t>(s)] =
          spec.time_mean[seg];
    }
    out.beta_price_[cell] = spec.price_mean;
  }
  return out;
}

}  // namespace slotwise
