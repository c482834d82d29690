#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "nvsim/distributions.hpp"
#include "nvsim/policy.hpp"
#include "nvsim/random.hpp"

namespace nvsim {

struct SimConfig {
    int months = 120;
    int days_per_month = 23;  // working days
    int period_days = 7;      // review cadence of the periodic policies
    int lead_days = 7;        // working days between placing and receiving an order
    SkuEconomics econ;
    Policy policy;
    DemandDistribution true_dist;  // drives realized demand, day by day

    void validate() const {
        if (months < 1) throw std::domain_error("simulation needs at least one month");
        if (days_per_month < 1) throw std::domain_error("month needs at least one working day");
        if (lead_days < 1 || period_days < lead_days || days_per_month < period_days)
            throw std::domain_error("simulation requires 1 <= lead_days <= period_days <= days_per_month");
        econ.validate();
    }
};

struct RunResult {
    double monthly_profit = 0.0;  // total operating profit / months
    double avg_inventory = 0.0;   // mean end-of-day stock over the horizon
    long stockout_days = 0;       // days on which demand exceeded available stock
};

struct TraceRow {
    long day = 0;
    double arrivals = 0.0;
    double order_placed = 0.0;
    double demand = 0.0;
    double sold = 0.0;
    double end_inventory = 0.0;
    double profit_delta = 0.0;
};

using TraceSink = std::function<void(const TraceRow&)>;

inline constexpr std::string_view kTraceCsvHeader =
    "day,arrivals,order_placed,demand,sold,end_inventory,profit_delta";

// One simulated history of company operations at day granularity. Each
// working day, in order:
//   1. orders due today enter stock
//   2. the policy reviews stock and may place an order (safety stock reviews
//      daily; periodic policies when a full period has passed since the last
//      order), delivered lead_days later
//   3. demand for the day is drawn from the true distribution
//   4. sales = min(demand, stock); margin is earned on units sold
//   5. a day with unmet demand counts once as a stock-out day
//   6. holding cost accrues on end-of-day stock at holding_cost/days_per_month
//   7. on the last day of a month the fixed monthly cost is charged
// The run starts with one full batch in stock, treated as an order received
// on day 0, so the periodic review clock starts one period before the run.
// Demand is the only consumer of the random stream; policies are
// deterministic, so equal seeds face equal demand paths under every policy.
inline RunResult run_simulation(const SimConfig& cfg, std::uint64_t seed,
                                const TraceSink& trace = {}) {
    cfg.validate();
    RandomStream rng(seed);

    const long total_days = static_cast<long>(cfg.months) * cfg.days_per_month;
    const double margin = cfg.econ.price - cfg.econ.variable_cost;
    const double daily_holding = cfg.econ.holding_cost / static_cast<double>(cfg.days_per_month);
    const bool daily_review = reviews_daily(cfg.policy);

    struct PendingOrder {
        double quantity = 0.0;
        long due_day = 0;
    };
    std::vector<PendingOrder> pending;

    double on_hand = initial_stock(cfg.policy);
    double profit = 0.0;
    double inventory_day_sum = 0.0;
    long stockout_days = 0;
    long last_order_day = -cfg.period_days;  // initial stock = an order received day 0

    for (long day = 0; day < total_days; ++day) {
        const double profit_before = profit;

        double arrived = 0.0;
        for (auto it = pending.begin(); it != pending.end();) {
            if (it->due_day == day) {
                arrived += it->quantity;
                it = pending.erase(it);
            } else {
                ++it;
            }
        }
        on_hand += arrived;

        double placed = 0.0;
        if (daily_review || day - last_order_day == cfg.period_days) {
            double outstanding = 0.0;
            for (const auto& order : pending) outstanding += order.quantity;
            placed = order_quantity(cfg.policy, InventorySnapshot{on_hand, day}, outstanding);
            if (!daily_review) last_order_day = day;
        }
        if (placed > 0.0) pending.push_back({placed, day + cfg.lead_days});

        const double demand = cfg.true_dist.sample(rng);
        const double sold = std::min(demand, on_hand);
        on_hand -= sold;
        profit += margin * sold;
        if (demand > sold) ++stockout_days;

        profit -= on_hand * daily_holding;
        inventory_day_sum += on_hand;
        if ((day + 1) % cfg.days_per_month == 0) profit -= cfg.econ.fixed_cost;

        if (trace)
            trace(TraceRow{day, arrived, placed, demand, sold, on_hand, profit - profit_before});
    }

    return RunResult{profit / static_cast<double>(cfg.months),
                     inventory_day_sum / static_cast<double>(total_days), stockout_days};
}

}  // namespace nvsim
