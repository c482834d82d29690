#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "nvsim/engine.hpp"
#include "nvsim/periodic_demand.hpp"
#include "nvsim/policy.hpp"
#include "nvsim/report.hpp"
#include "nvsim/stats.hpp"

namespace nvsim {

// Quantile models are built on their own seed, separate from simulation
// seeds, so policy constants are identical across every run of a scenario.
inline constexpr std::uint64_t kDefaultQuantileSeed = 1000003;
inline constexpr std::size_t kDefaultQuantileSamples = 1'000'000;

inline const std::vector<PolicyKind> kBenchmarkPolicies = {
    PolicyKind::SafetyStock, PolicyKind::Classic, PolicyKind::Extended, PolicyKind::MultiPeriod};

// One experiment: a "model" distribution that sets the policy constants and a
// "true" distribution that drives simulated demand. They coincide in matched
// runs and differ in robustness runs.
struct Scenario {
    std::string name;
    SkuEconomics econ;
    DemandDistribution model_dist;
    DemandDistribution true_dist;
    // Observed mean daily demand of the SKU, when known from data. Feeds the
    // multi-period rule's lead-time expectation.
    std::optional<double> observed_daily_mean;
    std::vector<PolicyKind> policies = kBenchmarkPolicies;
    int runs = 900;
    int months = 120;
    int days_per_month = 23;
    int period_days = 7;
    int lead_days = 7;
    std::uint64_t base_seed = 42;
    std::uint64_t quantile_seed = kDefaultQuantileSeed;
    std::size_t quantile_samples = kDefaultQuantileSamples;

    void validate() const {
        if (runs < 1) throw std::domain_error("scenario needs at least one run");
        if (policies.empty()) throw std::domain_error("scenario needs at least one policy");
        sim_config(SafetyStockPolicy{econ.safety_buffer, econ.safety_buffer}).validate();
    }

    SimConfig sim_config(Policy policy) const {
        return SimConfig{months, days_per_month, period_days, lead_days,
                         econ,   std::move(policy), true_dist};
    }

    bool operator==(const Scenario&) const = default;
};

// Runs fn(0) .. fn(n-1) on up to `threads` workers. Callers write results by
// index, which keeps output independent of scheduling.
template <typename Fn>
void parallel_for_index(long n, int threads, Fn&& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (threads > n) threads = static_cast<int>(n);
    if (threads <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        workers.emplace_back([&] {
            for (long i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& w : workers) w.join();
}

// Independent runs of one policy under one scenario. Run i draws demand from
// substream i of the scenario seed, for every policy, so policies face
// identical demand paths and their results differ only by their decisions.
inline std::vector<RunResult> run_policy_cell(const Scenario& scenario, const Policy& policy,
                                              int threads = 0) {
    const SimConfig cfg = scenario.sim_config(policy);
    cfg.validate();
    std::vector<RunResult> results(static_cast<std::size_t>(scenario.runs));
    parallel_for_index(scenario.runs, threads, [&](long i) {
        results[static_cast<std::size_t>(i)] =
            run_simulation(cfg, substream_seed(scenario.base_seed, static_cast<std::uint64_t>(i)));
    });
    return results;
}

struct MetricStats {
    AggregateStats profit;
    AggregateStats avg_inventory;
    AggregateStats stockout_days;
};

using ScenarioResults = std::map<PolicyKind, MetricStats>;

inline constexpr double kReportFractiles[] = {0.05, 0.10, 0.50, 0.90, 0.95, 0.99};

inline MetricStats aggregate_runs(std::span<const RunResult> runs) {
    std::vector<double> profit, inventory, stockouts;
    profit.reserve(runs.size());
    inventory.reserve(runs.size());
    stockouts.reserve(runs.size());
    for (const RunResult& r : runs) {
        profit.push_back(r.monthly_profit);
        inventory.push_back(r.avg_inventory);
        stockouts.push_back(static_cast<double>(r.stockout_days));
    }
    return MetricStats{aggregate(profit, kReportFractiles),
                       aggregate(inventory, kReportFractiles),
                       aggregate(stockouts, kReportFractiles)};
}

// Builds the periodic model once (cached), fixes every policy's constants
// from it, then simulates the scenario's runs per policy.
inline ScenarioResults run_scenario(const Scenario& scenario, PeriodicModelCache& cache,
                                    int threads = 0) {
    scenario.validate();
    const auto model = cache.get(scenario.model_dist, scenario.period_days,
                                 scenario.quantile_samples, scenario.quantile_seed);
    ScenarioResults results;
    for (PolicyKind kind : scenario.policies) {
        const Policy policy = make_policy(kind, scenario.econ, *model, scenario.lead_days,
                                          scenario.observed_daily_mean);
        results.emplace(kind, aggregate_runs(run_policy_cell(scenario, policy, threads)));
    }
    return results;
}

inline void add_scenario_rows(ReportTable& table, const std::string& label,
                              const ScenarioResults& results) {
    for (const auto& [kind, stats] : results) {
        table.add(label, kind, kMetricProfit, stats.profit);
        table.add(label, kind, kMetricAvgInventory, stats.avg_inventory);
        table.add(label, kind, kMetricStockoutDays, stats.stockout_days);
    }
}

struct LabeledDistribution {
    std::string label;
    DemandDistribution dist;
};

// Robustness study: every (model, true) pair over the given families. The
// scenario's own model/true fields are ignored; everything else (economics,
// horizon, seeds, run count) carries over, so all cells with the same true
// distribution see identical demand paths.
inline ReportTable run_robustness_matrix(const Scenario& base,
                                         std::span<const LabeledDistribution> families,
                                         PeriodicModelCache& cache, int threads = 0) {
    if (families.empty()) throw std::domain_error("robustness study needs at least one family");
    ReportTable table;
    for (const auto& model_family : families) {
        for (const auto& true_family : families) {
            Scenario cell = base;
            cell.model_dist = model_family.dist;
            cell.true_dist = true_family.dist;
            cell.name = base.name.empty()
                            ? model_family.label + "/" + true_family.label
                            : base.name + ":" + model_family.label + "/" + true_family.label;
            add_scenario_rows(table, cell.name, run_scenario(cell, cache, threads));
        }
    }
    return table;
}

}  // namespace nvsim
