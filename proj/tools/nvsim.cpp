// Command-line front end: fit distributions, inspect critical fractiles and
// order sizes, simulate scenarios and robustness matrices, re-render reports.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nvsim/nvsim.hpp>

namespace {

using namespace nvsim;

ScenarioConfig load_config(const std::string& ref) {
    if (std::filesystem::exists(ref)) {
        std::ifstream in(ref);
        if (!in) throw std::runtime_error("cannot open config file '" + ref + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return parse_config(buffer.str());
    }
    try {
        return preset_config(ref);  // "sku_a", "sku_b"
    } catch (const std::domain_error&) {
        throw std::runtime_error("no such config file or preset: '" + ref + "'");
    }
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    out << text;
    if (!out) throw std::runtime_error("cannot write output file '" + path + "'");
}

std::vector<std::string> comma_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        std::string item = text.substr(start, comma - start);
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

DemandDistribution resolve_distribution(const ScenarioConfig* config, const std::string& text) {
    if (config)
        if (const DemandDistribution* family = config->family(text)) return *family;
    return parse_distribution(text);
}

struct CommonOptions {
    std::string config_ref;
    std::string out_path;
    std::string format = "csv";
    std::string metrics = "profit,avg_inventory,stockout_days";
    std::string stats = "mean,moe95,stdev,median";
    std::string cache_dir;
    int runs = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
};

void render_and_write(const ReportTable& table, const CommonOptions& opts) {
    const auto metrics = comma_list(opts.metrics);
    const auto stats = comma_list(opts.stats);
    write_output(opts.out_path,
                 render_report(table, parse_report_format(opts.format), metrics, stats));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"production batch sizing under stochastic demand: policies and simulation"};
    app.require_subcommand(1);

    // ---- fit ----
    double fit_mean = 0, fit_stdev = 0, fit_min = 0, fit_max = 0;
    auto* fit = app.add_subcommand("fit", "fit daily demand distributions from sample moments");
    fit->add_option("--mean", fit_mean, "sample mean of daily demand")->required();
    fit->add_option("--stdev", fit_stdev, "sample stdev of daily demand")->required();
    auto* fit_min_opt = fit->add_option("--min", fit_min, "observed minimum (triangular fit)");
    auto* fit_max_opt = fit->add_option("--max", fit_max, "observed maximum (triangular fit)");

    // ---- fractile ----
    CommonOptions frac_opts;
    double frac_price = 0, frac_cv = 0, frac_h = 0;
    auto* fractile = app.add_subcommand("fractile", "critical fractiles of the ordering rules");
    fractile->add_option("--config", frac_opts.config_ref, "config file or preset name");
    auto* frac_p = fractile->add_option("--price", frac_price, "selling price per unit");
    fractile->add_option("--variable-cost", frac_cv, "variable cost per unit");
    fractile->add_option("--holding-cost", frac_h, "holding cost per unit per month");

    // ---- quantile ----
    CommonOptions q_opts;
    std::string q_dist, q_policy;
    double q_fractile = 0;
    int q_period = 0;
    std::size_t q_samples = kDefaultQuantileSamples;
    std::uint64_t q_seed = kDefaultQuantileSeed;
    auto* quantile = app.add_subcommand("quantile", "periodic-demand quantile (base order size)");
    quantile->add_option("--config", q_opts.config_ref, "config file or preset name");
    quantile->add_option("--dist", q_dist, "distribution expression or family name");
    auto* q_frac_opt = quantile->add_option("--fractile", q_fractile, "fractile in (0,1)");
    quantile->add_option("--policy", q_policy, "derive the fractile from a policy: classic|extended|multi_period");
    quantile->add_option("--period", q_period, "days per period");
    quantile->add_option("--samples", q_samples, "Monte Carlo sample count");
    quantile->add_option("--seed", q_seed, "seed of the model build");
    quantile->add_option("--cache-dir", q_opts.cache_dir, "directory for cached model builds");

    // ---- simulate ----
    CommonOptions sim_opts;
    std::string sim_model, sim_true, sim_trace;
    auto* simulate = app.add_subcommand("simulate", "simulate one scenario across its policies");
    simulate->add_option("--config", sim_opts.config_ref, "config file or preset name")->required();
    simulate->add_option("--model", sim_model, "model distribution (family name or expression)");
    simulate->add_option("--true", sim_true, "true distribution (family name or expression)");
    simulate->add_option("--runs", sim_opts.runs, "number of simulation runs");
    simulate->add_option("--seed", sim_opts.seed, "base seed for demand streams");
    simulate->add_option("--threads", sim_opts.threads, "worker threads (0 = hardware)");
    simulate->add_option("--out", sim_opts.out_path, "output file (default stdout)");
    simulate->add_option("--format", sim_opts.format, "csv|markdown");
    simulate->add_option("--metrics", sim_opts.metrics, "comma list of metrics to report");
    simulate->add_option("--stats", sim_opts.stats, "comma list of statistics to report");
    simulate->add_option("--trace", sim_trace, "write a day-by-day CSV trace of run 0, first policy");
    simulate->add_option("--cache-dir", sim_opts.cache_dir, "directory for cached model builds");

    // ---- robustness ----
    CommonOptions rob_opts;
    auto* robustness = app.add_subcommand("robustness", "model-vs-true matrix over the config's families");
    robustness->add_option("--config", rob_opts.config_ref, "config file or preset name")->required();
    robustness->add_option("--runs", rob_opts.runs, "number of simulation runs per cell");
    robustness->add_option("--seed", rob_opts.seed, "base seed for demand streams");
    robustness->add_option("--threads", rob_opts.threads, "worker threads (0 = hardware)");
    robustness->add_option("--out", rob_opts.out_path, "output file (default stdout)");
    robustness->add_option("--format", rob_opts.format, "csv|markdown");
    robustness->add_option("--metrics", rob_opts.metrics, "comma list of metrics to report");
    robustness->add_option("--stats", rob_opts.stats, "comma list of statistics to report");
    robustness->add_option("--cache-dir", rob_opts.cache_dir, "directory for cached model builds");

    // ---- report ----
    CommonOptions rep_opts;
    std::string rep_in;
    auto* report = app.add_subcommand("report", "re-render a saved report CSV");
    report->add_option("--in", rep_in, "input report CSV")->required();
    report->add_option("--out", rep_opts.out_path, "output file (default stdout)");
    report->add_option("--format", rep_opts.format, "csv|markdown");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*fit) {
            const SampleMoments moments{fit_mean, fit_stdev};
            const LogNormal ln = fit_lognormal(moments);
            std::cout << DemandDistribution(ln).text() << '\n';
            if (*fit_min_opt || *fit_max_opt) {
                if (!(*fit_min_opt && *fit_max_opt))
                    throw std::domain_error("triangular fit needs both --min and --max");
                const Triangular tri = fit_triangular_mode(fit_min, fit_max, moments);
                std::cout << DemandDistribution(tri).text() << '\n';
            }
        } else if (*fractile) {
            SkuEconomics econ;
            if (!frac_opts.config_ref.empty()) {
                econ = load_config(frac_opts.config_ref).scenario.econ;
            } else if (*frac_p) {
                econ = SkuEconomics{frac_price, frac_cv, 0.0, frac_h, 0.0};
            } else {
                throw std::domain_error("fractile needs --config or --price/--variable-cost/--holding-cost");
            }
            char buf[128];
            std::snprintf(buf, sizeof buf, "classic = %.9f\nextended = %.9f\nmulti_period = %.9f\n",
                          critical_fractile(NewsvendorKind::Classic, econ),
                          critical_fractile(NewsvendorKind::Extended, econ),
                          critical_fractile(NewsvendorKind::MultiPeriod, econ));
            std::cout << buf;
        } else if (*quantile) {
            ScenarioConfig config;
            const ScenarioConfig* config_ptr = nullptr;
            if (!q_opts.config_ref.empty()) {
                config = load_config(q_opts.config_ref);
                config_ptr = &config;
            }
            DemandDistribution dist =
                q_dist.empty() ? (config_ptr ? config.scenario.model_dist
                                             : throw std::domain_error("quantile needs --dist or --config"))
                               : resolve_distribution(config_ptr, q_dist);
            double fractile_value = q_fractile;
            if (!q_policy.empty()) {
                if (!config_ptr) throw std::domain_error("--policy needs a --config for economics");
                NewsvendorKind kind;
                if (q_policy == "classic") kind = NewsvendorKind::Classic;
                else if (q_policy == "extended") kind = NewsvendorKind::Extended;
                else if (q_policy == "multi_period") kind = NewsvendorKind::MultiPeriod;
                else throw std::domain_error("unknown policy '" + q_policy + "'");
                fractile_value = critical_fractile(kind, config.scenario.econ);
            } else if (!*q_frac_opt) {
                throw std::domain_error("quantile needs --fractile or --policy");
            }
            const int period = q_period > 0 ? q_period
                               : config_ptr ? config.scenario.period_days
                                            : 7;
            PeriodicModelCache cache(q_opts.cache_dir.empty()
                                         ? std::filesystem::path{}
                                         : std::filesystem::path(q_opts.cache_dir));
            const auto model = cache.get(dist, period, q_samples, q_seed);
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.4f\n", model->quantile(fractile_value));
            std::cout << buf;
        } else if (*simulate) {
            ScenarioConfig config = load_config(sim_opts.config_ref);
            Scenario& scenario = config.scenario;
            std::string label = scenario.name;
            if (!sim_model.empty()) {
                scenario.model_dist = resolve_distribution(&config, sim_model);
                label += ":" + sim_model;
            }
            if (!sim_true.empty()) {
                scenario.true_dist = resolve_distribution(&config, sim_true);
                label += (sim_model.empty() ? ":?" : "") + std::string("/") + sim_true;
            }
            if (sim_opts.runs > 0) scenario.runs = sim_opts.runs;
            if (simulate->count("--seed")) scenario.base_seed = sim_opts.seed;
            PeriodicModelCache cache(sim_opts.cache_dir.empty()
                                         ? std::filesystem::path{}
                                         : std::filesystem::path(sim_opts.cache_dir));
            const ScenarioResults results = run_scenario(scenario, cache, sim_opts.threads);
            if (!sim_trace.empty()) {
                const auto model = cache.get(scenario.model_dist, scenario.period_days,
                                             scenario.quantile_samples, scenario.quantile_seed);
                const Policy policy =
                    make_policy(scenario.policies.front(), scenario.econ, *model,
                                scenario.lead_days, scenario.observed_daily_mean);
                std::ofstream out(sim_trace);
                if (!out) throw std::runtime_error("cannot write trace file '" + sim_trace + "'");
                out << kTraceCsvHeader << '\n';
                run_simulation(scenario.sim_config(policy), substream_seed(scenario.base_seed, 0),
                               [&out](const TraceRow& row) {
                                   char buf[200];
                                   std::snprintf(buf, sizeof buf,
                                                 "%ld,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f\n", row.day,
                                                 row.arrivals, row.order_placed, row.demand,
                                                 row.sold, row.end_inventory, row.profit_delta);
                                   out << buf;
                               });
            }
            ReportTable table;
            add_scenario_rows(table, label, results);
            render_and_write(table, sim_opts);
        } else if (*robustness) {
            ScenarioConfig config = load_config(rob_opts.config_ref);
            if (config.families.empty())
                throw std::domain_error("robustness needs uniform_dist/triangular_dist/lognormal_dist in the config");
            if (rob_opts.runs > 0) config.scenario.runs = rob_opts.runs;
            if (robustness->count("--seed")) config.scenario.base_seed = rob_opts.seed;
            PeriodicModelCache cache(rob_opts.cache_dir.empty()
                                         ? std::filesystem::path{}
                                         : std::filesystem::path(rob_opts.cache_dir));
            const ReportTable table =
                run_robustness_matrix(config.scenario, config.families, cache, rob_opts.threads);
            render_and_write(table, rob_opts);
        } else if (*report) {
            std::ifstream in(rep_in);
            if (!in) throw std::runtime_error("cannot open report file '" + rep_in + "'");
            std::ostringstream buffer;
            buffer << in.rdbuf();
            const FlatReport flat = parse_report_csv(buffer.str());
            write_output(rep_opts.out_path, render_flat(flat, parse_report_format(rep_opts.format)));
        }
    } catch (const std::exception& e) {
        std::cerr << "nvsim: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
