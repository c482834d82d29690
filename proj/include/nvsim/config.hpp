#pragma once

#include <cctype>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nvsim/distributions.hpp"
#include "nvsim/experiments.hpp"

namespace nvsim {

// Scenario config: a small key = value text document, one key per line, with
// '#' comments. Distributions are written as a kind tag with named decimal
// parameters, e.g.
//
//   model_dist = triangular(a=235, b=810, c=600.5652)
//
// The per-family keys (uniform_dist, triangular_dist, lognormal_dist) are
// optional; when present, model_dist / true_dist may name a family instead of
// spelling out parameters, and robustness studies draw all their cells from
// them.

struct ScenarioConfig {
    Scenario scenario;
    std::vector<LabeledDistribution> families;

    const DemandDistribution* family(std::string_view label) const {
        for (const auto& f : families)
            if (f.label == label) return &f.dist;
        return nullptr;
    }

    bool operator==(const ScenarioConfig& other) const {
        if (!(scenario == other.scenario) || families.size() != other.families.size()) return false;
        for (std::size_t i = 0; i < families.size(); ++i)
            if (families[i].label != other.families[i].label ||
                !(families[i].dist == other.families[i].dist))
                return false;
        return true;
    }
};

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline double parse_number(const std::string& text, const std::string& what) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw std::domain_error("config: bad number for " + what + ": '" + text + "'");
    return v;
}

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        out.push_back(trim(text.substr(start, pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

// "kind(name=value, ...)" -> kind plus named parameter map
inline std::map<std::string, double> parse_named_args(const std::string& body,
                                                      const std::string& what) {
    std::map<std::string, double> args;
    for (const std::string& part : split(body, ',')) {
        const std::size_t eq = part.find('=');
        if (eq == std::string::npos)
            throw std::domain_error("config: expected name=value in " + what);
        const std::string name = trim(part.substr(0, eq));
        args[name] = parse_number(trim(part.substr(eq + 1)), what + "." + name);
    }
    return args;
}

}  // namespace detail

inline DemandDistribution parse_distribution(const std::string& raw) {
    const std::string text = detail::trim(raw);
    const std::size_t open = text.find('(');
    if (open == std::string::npos || text.back() != ')')
        throw std::domain_error("config: expected kind(params) distribution, got '" + text + "'");
    const std::string kind = detail::trim(text.substr(0, open));
    auto args = detail::parse_named_args(text.substr(open + 1, text.size() - open - 2), kind);
    auto take = [&](const char* name) {
        const auto it = args.find(name);
        if (it == args.end())
            throw std::domain_error("config: " + kind + " is missing parameter '" + name + "'");
        const double v = it->second;
        args.erase(it);
        return v;
    };
    DemandDistribution dist;
    if (kind == "uniform") {
        const double a = take("a"), b = take("b");
        dist = Uniform{a, b};
    } else if (kind == "triangular") {
        const double a = take("a"), b = take("b"), c = take("c");
        dist = Triangular{a, b, c};
    } else if (kind == "lognormal") {
        const double mu = take("mu"), sigma = take("sigma");
        dist = LogNormal{mu, sigma};
    } else {
        throw std::domain_error("config: unknown distribution kind '" + kind + "'");
    }
    if (!args.empty())
        throw std::domain_error("config: unexpected parameter '" + args.begin()->first + "' for " +
                                kind);
    return dist;
}

inline ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig config;
    Scenario& s = config.scenario;
    std::map<std::string, std::string> pending_dists;  // resolved after families are known

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = detail::trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::domain_error("config: expected key = value, got '" + stripped + "'");
        const std::string key = detail::trim(stripped.substr(0, eq));
        const std::string value = detail::trim(stripped.substr(eq + 1));

        if (key == "version") {
            if (value != "1") throw std::domain_error("config: unsupported version " + value);
        } else if (key == "name") {
            s.name = value;
        } else if (key == "price") {
            s.econ.price = detail::parse_number(value, key);
        } else if (key == "variable_cost") {
            s.econ.variable_cost = detail::parse_number(value, key);
        } else if (key == "fixed_cost") {
            s.econ.fixed_cost = detail::parse_number(value, key);
        } else if (key == "holding_cost") {
            s.econ.holding_cost = detail::parse_number(value, key);
        } else if (key == "safety_buffer") {
            s.econ.safety_buffer = detail::parse_number(value, key);
        } else if (key == "daily_demand_mean") {
            s.observed_daily_mean = detail::parse_number(value, key);
        } else if (key == "uniform_dist" || key == "triangular_dist" || key == "lognormal_dist") {
            config.families.push_back(
                LabeledDistribution{key.substr(0, key.find('_')), parse_distribution(value)});
        } else if (key == "model_dist" || key == "true_dist") {
            pending_dists[key] = value;
        } else if (key == "policies") {
            s.policies.clear();
            for (const std::string& name : detail::split(value, ','))
                s.policies.push_back(parse_policy_kind(name));
        } else if (key == "runs") {
            s.runs = static_cast<int>(detail::parse_number(value, key));
        } else if (key == "months") {
            s.months = static_cast<int>(detail::parse_number(value, key));
        } else if (key == "days_per_month") {
            s.days_per_month = static_cast<int>(detail::parse_number(value, key));
        } else if (key == "period_days") {
            s.period_days = static_cast<int>(detail::parse_number(value, key));
        } else if (key == "lead_days") {
            s.lead_days = static_cast<int>(detail::parse_number(value, key));
        } else if (key == "base_seed") {
            s.base_seed = static_cast<std::uint64_t>(detail::parse_number(value, key));
        } else if (key == "quantile_seed") {
            s.quantile_seed = static_cast<std::uint64_t>(detail::parse_number(value, key));
        } else if (key == "quantile_samples") {
            s.quantile_samples = static_cast<std::size_t>(detail::parse_number(value, key));
        } else {
            throw std::domain_error("config: unknown key '" + key + "'");
        }
    }

    for (const auto& [key, value] : pending_dists) {
        DemandDistribution dist;
        if (const DemandDistribution* family = config.family(value)) {
            dist = *family;
        } else {
            dist = parse_distribution(value);
        }
        (key == "model_dist" ? s.model_dist : s.true_dist) = dist;
    }
    s.econ.validate();
    return config;
}

inline std::string serialize_config(const ScenarioConfig& config) {
    using detail::format_number;
    const Scenario& s = config.scenario;
    std::ostringstream out;
    out << "version = 1\n";
    out << "name = " << s.name << '\n';
    out << "price = " << format_number(s.econ.price) << '\n';
    out << "variable_cost = " << format_number(s.econ.variable_cost) << '\n';
    out << "fixed_cost = " << format_number(s.econ.fixed_cost) << '\n';
    out << "holding_cost = " << format_number(s.econ.holding_cost) << '\n';
    out << "safety_buffer = " << format_number(s.econ.safety_buffer) << '\n';
    if (s.observed_daily_mean)
        out << "daily_demand_mean = " << format_number(*s.observed_daily_mean) << '\n';
    for (const auto& family : config.families)
        out << family.label << "_dist = " << family.dist.text() << '\n';
    out << "model_dist = " << s.model_dist.text() << '\n';
    out << "true_dist = " << s.true_dist.text() << '\n';
    out << "policies = ";
    for (std::size_t i = 0; i < s.policies.size(); ++i)
        out << (i ? ", " : "") << policy_name(s.policies[i]);
    out << '\n';
    out << "runs = " << s.runs << '\n';
    out << "months = " << s.months << '\n';
    out << "days_per_month = " << s.days_per_month << '\n';
    out << "period_days = " << s.period_days << '\n';
    out << "lead_days = " << s.lead_days << '\n';
    out << "base_seed = " << s.base_seed << '\n';
    out << "quantile_seed = " << s.quantile_seed << '\n';
    out << "quantile_samples = " << s.quantile_samples << '\n';
    return out.str();
}

// Benchmark SKUs. sku_a sells steadily every day; sku_b sells occasionally
// (roughly 40% of days see no demand), so its distributions are strongly
// right-skewed.
inline ScenarioConfig preset_config(std::string_view name) {
    ScenarioConfig config;
    Scenario& s = config.scenario;
    if (name == "sku_a") {
        s.econ = SkuEconomics{100.0, 60.0, 240'000.0, 2.8, 5670.0};
        s.observed_daily_mean = 548.5217;
        config.families = {
            {"uniform", Uniform{235.0, 810.0}},
            {"triangular", Triangular{235.0, 810.0, 600.5652}},
            {"lognormal", LogNormal{6.266708826, 0.284668531}},
        };
    } else if (name == "sku_b") {
        s.econ = SkuEconomics{100.0, 60.0, 14'000.0, 2.8, 595.0};
        s.observed_daily_mean = 29.0;
        config.families = {
            {"uniform", Uniform{0.0, 85.0}},
            {"triangular", Triangular{0.0, 85.0, 2.0}},
            {"lognormal", LogNormal{2.98129577, 0.878635374}},
        };
    } else {
        throw std::domain_error("unknown preset '" + std::string(name) + "'");
    }
    s.name = std::string(name);
    s.model_dist = config.families[0].dist;
    s.true_dist = config.families[0].dist;
    return config;
}

}  // namespace nvsim
