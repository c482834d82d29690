#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "nvsim/periodic_demand.hpp"

namespace nvsim {

// Per-SKU economics. Prices and costs are per unit; fixed_cost accrues per
// month; holding_cost is per unit of stock per month.
struct SkuEconomics {
    double price = 0.0;
    double variable_cost = 0.0;
    double fixed_cost = 0.0;
    double holding_cost = 0.0;
    double safety_buffer = 0.0;  // reorder point and batch size of the buffer policy

    void validate() const {
        if (!(variable_cost >= 0.0) || !(price > variable_cost))
            throw std::domain_error("economics require price > variable_cost >= 0");
        if (!(holding_cost >= 0.0) || !(fixed_cost >= 0.0) || !(safety_buffer >= 0.0))
            throw std::domain_error("economics require nonnegative fixed, holding and buffer");
        if (!(price - variable_cost - holding_cost / 2.0 > 0.0))
            throw std::domain_error("economics require price - variable_cost - holding/2 > 0");
    }

    bool operator==(const SkuEconomics&) const = default;
};

// The three single-number ordering rules, distinguished by their critical
// fractile:
//   Classic     -- margin ratio (p - c) / p of the single-period rule
//   Extended    -- (p - cv) / (p + h), holding cost charged on leftovers
//   MultiPeriod -- (p - cv - h/2) / (p - cv + h/2), holding cost charged on
//                  average stock across the period
enum class NewsvendorKind { Classic, Extended, MultiPeriod };

inline double critical_fractile(NewsvendorKind kind, const SkuEconomics& econ) {
    econ.validate();
    const double p = econ.price, cv = econ.variable_cost, h = econ.holding_cost;
    double fractile = 0.0;
    switch (kind) {
        case NewsvendorKind::Classic: fractile = (p - cv) / p; break;
        case NewsvendorKind::Extended: fractile = (p - cv) / (p + h); break;
        case NewsvendorKind::MultiPeriod:
            fractile = (p - cv - h / 2.0) / (p - cv + h / 2.0);
            break;
    }
    if (!(fractile > 0.0 && fractile < 1.0))
        throw std::domain_error("critical fractile falls outside (0, 1)");
    return fractile;
}

struct InventorySnapshot {
    double on_hand = 0.0;  // units, after same-day deliveries
    long day = 0;
};

// Stock expected to remain when an order placed now is delivered: the last
// known level less expected demand over the lead time. May be negative; a
// negative estimate enlarges the order.
inline double estimate_carryover(const InventorySnapshot& snapshot,
                                 double expected_periodic_demand, int lead_days,
                                 int period_days) {
    if (lead_days < 0 || period_days < 1 || lead_days > period_days)
        throw std::domain_error("carryover estimate requires 0 <= lead_days <= period_days");
    return snapshot.on_hand - expected_periodic_demand * static_cast<double>(lead_days) /
                                  static_cast<double>(period_days);
}

// Reorder-point policy: order a fixed batch whenever stock is seen below the
// buffer and nothing is currently on order.
struct SafetyStockPolicy {
    double reorder_point = 0.0;
    double order_size = 0.0;
};

// Same quantity every review, regardless of stock.
struct StaticOrderPolicy {
    NewsvendorKind kind = NewsvendorKind::Classic;
    double base_q = 0.0;
};

// Extended rule netting off current stock from the base quantity.
struct StockAdjustedPolicy {
    double base_q = 0.0;
};

// Multi-period rule netting off the expected carryover at delivery time.
struct AdaptivePolicy {
    double base_q = 0.0;
    double expected_periodic_demand = 0.0;
    int lead_days = 0;
    int period_days = 1;
};

using Policy = std::variant<SafetyStockPolicy, StaticOrderPolicy, StockAdjustedPolicy, AdaptivePolicy>;

// Safety stock reviews stock daily; the newsvendor rules review once per
// period.
inline bool reviews_daily(const Policy& policy) {
    return std::holds_alternative<SafetyStockPolicy>(policy);
}

// Stock a fresh run starts with: one full batch.
inline double initial_stock(const Policy& policy) {
    return std::visit(
        [](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SafetyStockPolicy>) return p.order_size;
            else return p.base_q;
        },
        policy);
}

// Order placed at a review. Never negative.
inline double order_quantity(const Policy& policy, const InventorySnapshot& snapshot,
                             double outstanding) {
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SafetyStockPolicy>) {
                return (snapshot.on_hand < p.reorder_point && outstanding == 0.0) ? p.order_size
                                                                                  : 0.0;
            } else if constexpr (std::is_same_v<T, StaticOrderPolicy>) {
                return p.base_q;
            } else if constexpr (std::is_same_v<T, StockAdjustedPolicy>) {
                return std::max(0.0, p.base_q - snapshot.on_hand);
            } else {
                const double carryover = estimate_carryover(snapshot, p.expected_periodic_demand,
                                                            p.lead_days, p.period_days);
                return std::max(0.0, p.base_q - carryover);
            }
        },
        policy);
}

// Policy kinds runnable in the simulator, in report column order. The
// stock-adjusted extended variant exists to measure its shortfall against the
// static extended rule; benchmark tables omit it.
enum class PolicyKind { SafetyStock, Classic, Extended, ExtendedAdjusted, MultiPeriod };

inline constexpr PolicyKind kAllPolicyKinds[] = {
    PolicyKind::SafetyStock, PolicyKind::Classic, PolicyKind::Extended,
    PolicyKind::ExtendedAdjusted, PolicyKind::MultiPeriod};

inline std::string_view policy_name(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::SafetyStock: return "safety_stock";
        case PolicyKind::Classic: return "classic";
        case PolicyKind::Extended: return "extended";
        case PolicyKind::ExtendedAdjusted: return "extended_adjusted";
        case PolicyKind::MultiPeriod: return "multi_period";
    }
    throw std::domain_error("unknown policy kind");
}

inline PolicyKind parse_policy_kind(std::string_view name) {
    for (PolicyKind kind : kAllPolicyKinds)
        if (policy_name(kind) == name) return kind;
    throw std::domain_error("unknown policy '" + std::string(name) + "'");
}

// Builds a runnable policy. Newsvendor base quantities are the periodic
// model's quantiles at the rule's critical fractile; they are fixed once per
// scenario. The multi-period rule nets off expected demand over the lead
// time; that expectation comes from the SKU's observed mean daily demand when
// one is known, since the model distribution's own mean can be a poor stand-in
// for it (a min/max-fitted uniform does not carry the sample mean). Without an
// observed mean the model's analytic mean is used.
inline Policy make_policy(PolicyKind kind, const SkuEconomics& econ,
                          const PeriodicDemandModel& model, int lead_days,
                          std::optional<double> observed_daily_mean = std::nullopt) {
    econ.validate();
    switch (kind) {
        case PolicyKind::SafetyStock:
            return SafetyStockPolicy{econ.safety_buffer, econ.safety_buffer};
        case PolicyKind::Classic:
            return StaticOrderPolicy{NewsvendorKind::Classic,
                                     model.quantile(critical_fractile(NewsvendorKind::Classic, econ))};
        case PolicyKind::Extended:
            return StaticOrderPolicy{NewsvendorKind::Extended,
                                     model.quantile(critical_fractile(NewsvendorKind::Extended, econ))};
        case PolicyKind::ExtendedAdjusted:
            return StockAdjustedPolicy{
                model.quantile(critical_fractile(NewsvendorKind::Extended, econ))};
        case PolicyKind::MultiPeriod: {
            const double expected_periodic =
                observed_daily_mean ? *observed_daily_mean * static_cast<double>(model.period_days())
                                    : model.expected_demand();
            return AdaptivePolicy{
                model.quantile(critical_fractile(NewsvendorKind::MultiPeriod, econ)),
                expected_periodic, lead_days, model.period_days()};
        }
    }
    throw std::domain_error("unknown policy kind");
}

// Expected one-period profit of holding quantity available_q under the given
// rule, evaluated by averaging sold = min(D, Q) over the model's empirical
// samples. Serves as the optimality oracle for the closed-form quantities.
//   Classic:     p E[min(D,Q)] - cv Q
//   Extended:    p E[min(D,Q)] - cf - cv (Q - q0) - h E[max(Q - D, 0)]
//   MultiPeriod: (p - cv) E[min(D,Q)] - cf - h (Q + E[max(Q - D, 0)]) / 2
inline double expected_profit(NewsvendorKind kind, double available_q, const SkuEconomics& econ,
                              const PeriodicDemandModel& model, double initial_inventory = 0.0) {
    if (!(available_q >= 0.0)) throw std::domain_error("quantity must be nonnegative");
    const auto& samples = model.samples();
    double sold_sum = 0.0;
    for (double demand : samples) sold_sum += std::min(demand, available_q);
    const double expected_sold = sold_sum / static_cast<double>(samples.size());
    const double expected_leftover = available_q - expected_sold;

    const double p = econ.price, cv = econ.variable_cost, cf = econ.fixed_cost,
                 h = econ.holding_cost;
    switch (kind) {
        case NewsvendorKind::Classic: return p * expected_sold - cv * available_q;
        case NewsvendorKind::Extended:
            return p * expected_sold - cf - cv * (available_q - initial_inventory) -
                   h * expected_leftover;
        case NewsvendorKind::MultiPeriod:
            return (p - cv) * expected_sold - cf - h * (available_q + expected_leftover) / 2.0;
    }
    throw std::domain_error("unknown newsvendor kind");
}

}  // namespace nvsim
