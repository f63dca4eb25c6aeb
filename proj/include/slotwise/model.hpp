#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace slotwise {

/// Thrown when input data violates a documented invariant.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Segment { Morning = 0, Afternoon = 1, Evening = 2 };
inline constexpr int kSegmentCount = 3;

std::string_view to_string(Segment s);
Segment segment_from_string(std::string_view s);

struct TimeSlot {
  int index = 0;
  double lower = 0.0;
  double upper = 0.0;
  Segment segment = Segment::Morning;

  bool contains(double t) const { return lower <= t && t <= upper; }
};

/// How the price that enters utility and revenue is derived from a discount.
enum class PricingMode {
  Discounted,    // (1 - h) * fee
  LiteralRate,   // h * fee
};

struct DeliveryOption {
  int id = 0;
  bool opt_out = true;
  int slot = -1;      // index into Instance::slots, -1 for the opt-out
  int discount = -1;  // index into Instance::discounts, -1 for the opt-out
  double discount_rate = 0.0;
  double effective_price = 0.0;
};

inline constexpr int kOptOut = 0;

/// Catalog of slot x discount combinations plus the opt-out at id 0.
/// Slot options are laid out slot-major: id = 1 + slot * |H| + discount.
std::vector<DeliveryOption> build_option_catalog(const std::vector<TimeSlot>& slots,
                                                 const std::vector<double>& discounts,
                                                 double fee,
                                                 PricingMode pricing = PricingMode::Discounted);

/// Dense square matrix, row-major.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct Customer {
  int id = 0;  // external label (e.g. the Solomon row number)
  double x = 0.0;
  double y = 0.0;
  double demand = 0.0;
  double service_time = 0.0;
};

struct Depot {
  double x = 0.0;
  double y = 0.0;
  double horizon_end = 0.0;
};

/// Problem data. Matrices are indexed by node: 0 is the depot and customer k
/// (0-based position in `customers`) is node k + 1.
struct Instance {
  std::string name;
  std::vector<Customer> customers;
  Depot depot;
  SquareMatrix travel_time;
  SquareMatrix travel_cost;
  int fleet_size = 1;
  double capacity = 0.0;
  double vehicle_cost = 50.0;
  double unit_cost = 1.0;
  std::vector<TimeSlot> slots;
  std::vector<double> discounts;
  double base_fee = 40.0;
  int min_options = 1;
  PricingMode pricing = PricingMode::Discounted;

  /// Derived from slots/discounts/base_fee/pricing by finalize().
  std::vector<DeliveryOption> catalog;

  int customer_count() const { return static_cast<int>(customers.size()); }
  int slot_count() const { return static_cast<int>(slots.size()); }
  int discount_count() const { return static_cast<int>(discounts.size()); }
  int option_count() const { return static_cast<int>(catalog.size()); }
  static int node(int customer) { return customer + 1; }

  int option_id(int slot, int discount) const {
    return 1 + slot * discount_count() + discount;
  }
  const DeliveryOption& option(int id) const { return catalog[static_cast<std::size_t>(id)]; }

  /// Recomputes the catalog and checks every invariant. Throws ModelError.
  void finalize();

  /// Fills travel_time with Euclidean distances and travel_cost = unit_cost * time.
  void compute_euclidean_matrices();
};

/// Knobs that Solomon files do not carry.
struct InstanceOptions {
  int fleet_size = 0;  // 0 = take it from the file
  double vehicle_cost = 50.0;
  double unit_cost = 1.0;
  std::vector<double> discounts{0.0, 0.12};
  double base_fee = 40.0;
  int min_options = 2;
  PricingMode pricing = PricingMode::Discounted;
};

/// n equal consecutive slots covering [0, horizon_end]. Segments cycle
/// Morning, Afternoon, Evening.
std::vector<TimeSlot> partition_horizon(double horizon_end, int n_slots);

/// Parses a Solomon VRPTW file and keeps the first n_customers rows.
Instance load_solomon(std::string_view text, int n_customers, int n_slots,
                      const InstanceOptions& options = {});

struct BehaviorSpec {
  std::array<double, kSegmentCount> time_mean{3.0066, 3.1213, 2.7334};
  std::array<double, kSegmentCount> time_std{0.3273, 0.5486, 0.2168};
  double price_mean = -0.0766;
  double price_std = 0.01;

  /// Behavioral means and deviations from the Yang et al. survey.
  static BehaviorSpec survey_defaults() { return {}; }
  /// Same means with every deviation set to 0 (multinomial logit).
  BehaviorSpec without_heterogeneity() const;
  void validate() const;

  bool operator==(const BehaviorSpec&) const = default;
};

/// Monte Carlo draws. Storage is [customer][scenario][...] so that a single
/// customer's draws in one scenario are contiguous.
class ScenarioSet {
 public:
  ScenarioSet() = default;

  int scenario_count() const { return scenarios_; }
  int customer_count() const { return customers_; }
  int slot_count() const { return slots_; }
  int option_count() const { return options_; }
  std::uint64_t seed() const { return seed_; }
  const BehaviorSpec& spec() const { return spec_; }

  double beta_time(int slot, int n, int r) const {
    return beta_time_[cell(n, r) * static_cast<std::size_t>(slots_) + static_cast<std::size_t>(slot)];
  }
  double beta_price(int n, int r) const { return beta_price_[cell(n, r)]; }
  double xi(int option, int n, int r) const {
    return xi_[cell(n, r) * static_cast<std::size_t>(options_) + static_cast<std::size_t>(option)];
  }

  /// Contiguous Gumbel draws for every catalog option of (n, r).
  const double* xi_row(int n, int r) const {
    return xi_.data() + cell(n, r) * static_cast<std::size_t>(options_);
  }

  /// A one-scenario set holding scenario r of this set.
  ScenarioSet single(int r) const;

  /// R = 1, xi = 0 and coefficients at their means.
  static ScenarioSet deterministic(const BehaviorSpec& spec, const Instance& instance);

  bool operator==(const ScenarioSet&) const = default;

 private:
  friend ScenarioSet sample_scenarios(const BehaviorSpec&, const Instance&, int, std::uint64_t);

  std::size_t cell(int n, int r) const {
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(scenarios_) +
           static_cast<std::size_t>(r);
  }
  void allocate();

  int scenarios_ = 0;
  int customers_ = 0;
  int slots_ = 0;
  int options_ = 0;
  std::uint64_t seed_ = 0;
  BehaviorSpec spec_;
  std::vector<double> beta_time_;
  std::vector<double> beta_price_;
  std::vector<double> xi_;
};

/// Draws R behavioral scenarios. Cell (n, r) uses its own generator keyed on
/// (seed, n, r), so a set with more scenarios extends one with fewer and the
/// result does not depend on the thread schedule.
ScenarioSet sample_scenarios(const BehaviorSpec& spec, const Instance& instance, int scenarios,
                             std::uint64_t seed);

/// Binary offer matrix gamma[n][i].
class Assortment {
 public:
  Assortment() = default;
  /// Every customer starts with only the opt-out offered.
  Assortment(int customers, int options);

  int customer_count() const { return customers_; }
  int option_count() const { return options_; }

  bool offered(int n, int option) const { return gamma_[index(n, option)] != 0; }
  void set(int n, int option, bool on) { gamma_[index(n, option)] = on ? 1 : 0; }

  /// Number of offered options for customer n, opt-out included.
  int offered_count(int n) const;

  /// Offered slot options of customer n, in id order.
  std::vector<int> offered_options(int n) const;

  /// Removes every slot option of customer n (the opt-out stays).
  void clear_customer(int n);

  bool operator==(const Assortment&) const = default;

 private:
  std::size_t index(int n, int option) const {
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(options_) +
           static_cast<std::size_t>(option);
  }

  int customers_ = 0;
  int options_ = 0;
  std::vector<std::uint8_t> gamma_;
};

/// Empty string when the assortment satisfies the opt-out, minimum-options and
/// one-price-per-slot constraints; otherwise a description of the first violation.
std::string assortment_violation(const Assortment& a, const Instance& instance);

/// Throws ModelError when assortment_violation is non-empty.
void validate_assortment(const Assortment& a, const Instance& instance);

/// Every slot offered at its lowest discount (the "no slot management" policy).
Assortment full_assortment_lowest_discount(const Instance& instance);

/// For slot s of customer n, the discount index offered or -1.
int offered_discount(const Assortment& a, const Instance& instance, int n, int slot);

}  // namespace slotwise
