#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "nvsim/policy.hpp"
#include "nvsim/stats.hpp"

namespace nvsim {

enum class ReportFormat { Csv, Markdown };

inline ReportFormat parse_report_format(std::string_view name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "markdown" || name == "md") return ReportFormat::Markdown;
    throw std::domain_error("unknown report format '" + std::string(name) + "'");
}

inline constexpr std::string_view kMetricProfit = "profit";
inline constexpr std::string_view kMetricAvgInventory = "avg_inventory";
inline constexpr std::string_view kMetricStockoutDays = "stockout_days";

// Statistics a report row can expand to: mean, moe95, stdev, median, or a
// percentile pNN present in the aggregate.
inline std::optional<double> stat_value(const AggregateStats& s, std::string_view stat) {
    if (stat == "mean") return s.mean;
    if (stat == "moe95") return s.moe95;
    if (stat == "stdev") return s.stdev;
    if (stat == "median") return s.median;
    if (stat.size() == 3 && stat[0] == 'p') {
        const double fractile = (stat[1] - '0') * 0.1 + (stat[2] - '0') * 0.01;
        for (const auto& [p, v] : s.percentiles)
            if (std::abs(p - fractile) < 1e-12) return v;
        return std::nullopt;
    }
    throw std::domain_error("unknown statistic '" + std::string(stat) + "'");
}

// Aggregated results keyed by (scenario, policy, metric). Scenario and metric
// rows keep first-insertion order; policy columns always print in the
// canonical order safety_stock, classic, extended, extended_adjusted,
// multi_period.
class ReportTable {
public:
    void add(const std::string& scenario, PolicyKind policy, std::string_view metric,
             AggregateStats stats) {
        const Key key{scenario, policy, std::string(metric)};
        if (cells_.count(key)) throw std::domain_error("duplicate report row");
        if (std::find(scenarios_.begin(), scenarios_.end(), scenario) == scenarios_.end())
            scenarios_.push_back(scenario);
        if (std::find(metrics_.begin(), metrics_.end(), key.metric) == metrics_.end())
            metrics_.push_back(key.metric);
        if (std::find(policies_.begin(), policies_.end(), policy) == policies_.end()) {
            policies_.push_back(policy);
            std::sort(policies_.begin(), policies_.end());
        }
        cells_.emplace(key, std::move(stats));
    }

    const AggregateStats* find(const std::string& scenario, PolicyKind policy,
                               std::string_view metric) const {
        const auto it = cells_.find(Key{scenario, policy, std::string(metric)});
        return it == cells_.end() ? nullptr : &it->second;
    }

    bool empty() const { return cells_.empty(); }
    const std::vector<std::string>& scenarios() const { return scenarios_; }
    const std::vector<PolicyKind>& policies() const { return policies_; }
    const std::vector<std::string>& metrics() const { return metrics_; }

private:
    struct Key {
        std::string scenario;
        PolicyKind policy;
        std::string metric;
        bool operator<(const Key& o) const {
            return std::tie(scenario, policy, metric) < std::tie(o.scenario, o.policy, o.metric);
        }
    };
    std::map<Key, AggregateStats> cells_;
    std::vector<std::string> scenarios_;
    std::vector<PolicyKind> policies_;
    std::vector<std::string> metrics_;
};

// Row-major rendering form: fixed columns scenario, metric, stat, then one
// value column per policy. Also what the CSV parser returns.
struct FlatReport {
    std::vector<std::string> policy_names;
    struct Row {
        std::string scenario;
        std::string metric;
        std::string stat;
        std::vector<std::optional<double>> values;
    };
    std::vector<Row> rows;
};

inline FlatReport flatten_report(const ReportTable& table, std::span<const std::string> metrics,
                                 std::span<const std::string> stats) {
    FlatReport flat;
    for (PolicyKind policy : table.policies())
        flat.policy_names.emplace_back(policy_name(policy));
    for (const std::string& scenario : table.scenarios()) {
        for (const std::string& metric : metrics) {
            if (std::find(table.metrics().begin(), table.metrics().end(), metric) ==
                table.metrics().end())
                continue;
            for (const std::string& stat : stats) {
                FlatReport::Row row{scenario, metric, stat, {}};
                bool any = false;
                for (PolicyKind policy : table.policies()) {
                    const AggregateStats* cell = table.find(scenario, policy, metric);
                    std::optional<double> value;
                    if (cell) value = stat_value(*cell, stat);
                    any = any || value.has_value();
                    row.values.push_back(value);
                }
                if (any) flat.rows.push_back(std::move(row));
            }
        }
    }
    return flat;
}

namespace detail {
inline std::string format_cell(std::optional<double> v) {
    if (!v) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", *v);
    return buf;
}
}  // namespace detail

inline std::string render_flat(const FlatReport& flat, ReportFormat format) {
    std::ostringstream out;
    if (format == ReportFormat::Csv) {
        out << "scenario,metric,stat";
        for (const auto& name : flat.policy_names) out << ',' << name;
        out << '\n';
        for (const auto& row : flat.rows) {
            out << row.scenario << ',' << row.metric << ',' << row.stat;
            for (const auto& v : row.values) out << ',' << detail::format_cell(v);
            out << '\n';
        }
    } else {
        out << "| scenario | metric | stat |";
        for (const auto& name : flat.policy_names) out << ' ' << name << " |";
        out << '\n' << "| --- | --- | --- |";
        for (std::size_t i = 0; i < flat.policy_names.size(); ++i) out << " ---: |";
        out << '\n';
        for (const auto& row : flat.rows) {
            out << "| " << row.scenario << " | " << row.metric << " | " << row.stat << " |";
            for (const auto& v : row.values) out << ' ' << detail::format_cell(v) << " |";
            out << '\n';
        }
    }
    return out.str();
}

// Renders the requested metrics, one row per (scenario, metric, statistic).
// An empty metric list yields just the header.
inline std::string render_report(const ReportTable& table, ReportFormat format,
                                 std::span<const std::string> metrics,
                                 std::span<const std::string> stats) {
    return render_flat(flatten_report(table, metrics, stats), format);
}

inline FlatReport parse_report_csv(const std::string& text) {
    FlatReport flat;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (fields.size() < 4) throw std::domain_error("report CSV row needs at least four fields");
        if (header) {
            if (fields[0] != "scenario" || fields[1] != "metric" || fields[2] != "stat")
                throw std::domain_error("not a report CSV: unexpected header");
            flat.policy_names.assign(fields.begin() + 3, fields.end());
            header = false;
            continue;
        }
        if (fields.size() != flat.policy_names.size() + 3)
            throw std::domain_error("report CSV row has the wrong number of fields");
        FlatReport::Row row{fields[0], fields[1], fields[2], {}};
        for (std::size_t i = 3; i < fields.size(); ++i) {
            if (fields[i].empty())
                row.values.emplace_back(std::nullopt);
            else
                row.values.emplace_back(std::stod(fields[i]));
        }
        flat.rows.push_back(std::move(row));
    }
    if (header) throw std::domain_error("report CSV is empty");
    return flat;
}

}  // namespace nvsim
