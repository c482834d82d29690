#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nvsim/config.hpp>
#include <nvsim/experiments.hpp>
#include <nvsim/report.hpp>

using namespace nvsim;

namespace {

// small horizon keeps the suite quick; statistics are still meaningful
Scenario quick_scenario(const char* preset, const char* family) {
    ScenarioConfig config = preset_config(preset);
    Scenario s = config.scenario;
    s.model_dist = *config.family(family);
    s.true_dist = s.model_dist;
    s.months = 6;
    s.runs = 40;
    s.quantile_samples = 100'000;
    return s;
}

bool stats_equal(const AggregateStats& a, const AggregateStats& b) {
    return a.n == b.n && a.mean == b.mean && a.stdev == b.stdev && a.moe95 == b.moe95 &&
           a.median == b.median && a.percentiles == b.percentiles;
}

bool metric_stats_equal(const MetricStats& a, const MetricStats& b) {
    return stats_equal(a.profit, b.profit) && stats_equal(a.avg_inventory, b.avg_inventory) &&
           stats_equal(a.stockout_days, b.stockout_days);
}

AggregateStats tiny_stats(double center) {
    const std::vector<double> values{center - 1.0, center, center + 1.0};
    return aggregate(values, kReportFractiles);
}

}  // namespace

TEST_CASE("run_scenario covers every requested policy with n = runs") {
    PeriodicModelCache cache;
    const Scenario s = quick_scenario("sku_b", "uniform");
    const ScenarioResults results = run_scenario(s, cache, 2);
    REQUIRE(results.size() == 4);
    for (PolicyKind kind : s.policies) {
        REQUIRE(results.count(kind) == 1);
        CHECK(results.at(kind).profit.n == 40);
        CHECK(results.at(kind).avg_inventory.n == 40);
        CHECK(results.at(kind).stockout_days.n == 40);
    }
}

TEST_CASE("a single run aggregates to a mean without spread statistics") {
    PeriodicModelCache cache;
    Scenario s = quick_scenario("sku_b", "triangular");
    s.runs = 1;
    const ScenarioResults results = run_scenario(s, cache, 1);
    const AggregateStats& profit = results.at(PolicyKind::MultiPeriod).profit;
    CHECK(profit.n == 1);
    CHECK(!profit.stdev.has_value());
    CHECK(!profit.moe95.has_value());
}

TEST_CASE("results are bit-identical no matter how many threads run") {
    PeriodicModelCache cache;
    const Scenario s = quick_scenario("sku_a", "lognormal");
    const ScenarioResults serial = run_scenario(s, cache, 1);
    const ScenarioResults parallel = run_scenario(s, cache, 4);
    for (PolicyKind kind : s.policies) CHECK(metric_stats_equal(serial.at(kind), parallel.at(kind)));
}

TEST_CASE("safety stock results depend only on the true distribution") {
    PeriodicModelCache cache;
    ScenarioConfig config = preset_config("sku_b");
    Scenario a = quick_scenario("sku_b", "uniform");
    Scenario b = a;
    b.model_dist = *config.family("lognormal");  // same true_dist, different model
    const ScenarioResults ra = run_scenario(a, cache, 2);
    const ScenarioResults rb = run_scenario(b, cache, 2);
    CHECK(metric_stats_equal(ra.at(PolicyKind::SafetyStock), rb.at(PolicyKind::SafetyStock)));
    // the quantile-driven policies do change with the model distribution
    CHECK(ra.at(PolicyKind::Classic).profit.mean != rb.at(PolicyKind::Classic).profit.mean);
}

TEST_CASE("the stock-adjusted extended rule earns less than the static one") {
    PeriodicModelCache cache;
    Scenario s = quick_scenario("sku_a", "uniform");
    s.months = 24;
    s.runs = 60;
    s.policies = {PolicyKind::Extended, PolicyKind::ExtendedAdjusted};
    const ScenarioResults results = run_scenario(s, cache, 2);
    CHECK(results.at(PolicyKind::ExtendedAdjusted).profit.mean <
          results.at(PolicyKind::Extended).profit.mean);
    CHECK(results.at(PolicyKind::ExtendedAdjusted).stockout_days.mean >
          results.at(PolicyKind::Extended).stockout_days.mean);
}

TEST_CASE("robustness matrix: diagonal cells equal the matched scenario, labels cover all pairs") {
    PeriodicModelCache cache;
    ScenarioConfig config = preset_config("sku_b");
    Scenario base = config.scenario;
    base.months = 6;
    base.runs = 25;
    base.quantile_samples = 100'000;
    const ReportTable table = run_robustness_matrix(base, config.families, cache, 2);
    CHECK(table.scenarios().size() == 9);

    Scenario diag = base;
    diag.model_dist = *config.family("triangular");
    diag.true_dist = diag.model_dist;
    const ScenarioResults direct = run_scenario(diag, cache, 2);
    const AggregateStats* cell =
        table.find("sku_b:triangular/triangular", PolicyKind::MultiPeriod, kMetricProfit);
    REQUIRE(cell != nullptr);
    CHECK(stats_equal(*cell, direct.at(PolicyKind::MultiPeriod).profit));

    // safety stock column is constant across model rows for a fixed true dist
    for (const char* true_label : {"uniform", "triangular", "lognormal"}) {
        const AggregateStats* u = table.find(std::string("sku_b:uniform/") + true_label,
                                             PolicyKind::SafetyStock, kMetricProfit);
        const AggregateStats* t = table.find(std::string("sku_b:triangular/") + true_label,
                                             PolicyKind::SafetyStock, kMetricProfit);
        const AggregateStats* l = table.find(std::string("sku_b:lognormal/") + true_label,
                                             PolicyKind::SafetyStock, kMetricProfit);
        REQUIRE(u != nullptr);
        CHECK(stats_equal(*u, *t));
        CHECK(stats_equal(*u, *l));
    }
}

TEST_CASE("doubling the run count moves means by less than twice the margin of error") {
    PeriodicModelCache cache;
    Scenario small = quick_scenario("sku_b", "uniform");
    small.months = 12;
    small.runs = 150;
    Scenario big = small;
    big.runs = 300;
    const ScenarioResults rs = run_scenario(small, cache, 2);
    const ScenarioResults rb = run_scenario(big, cache, 2);
    for (PolicyKind kind : small.policies) {
        const double moe = rs.at(kind).profit.moe95.value();
        CHECK(std::abs(rb.at(kind).profit.mean - rs.at(kind).profit.mean) < 2.0 * moe);
    }
}

TEST_CASE("config serialization round-trips") {
    const ScenarioConfig preset = preset_config("sku_a");
    const ScenarioConfig reparsed = parse_config(serialize_config(preset));
    CHECK(reparsed == preset);

    ScenarioConfig custom;
    custom.scenario.name = "toy";
    custom.scenario.econ = SkuEconomics{12.5, 4.0, 100.0, 0.5, 40.0};
    custom.scenario.model_dist = DemandDistribution(LogNormal{1.25, 0.5});
    custom.scenario.true_dist = DemandDistribution(Triangular{0.0, 9.0, 2.5});
    custom.scenario.policies = {PolicyKind::Classic, PolicyKind::ExtendedAdjusted};
    custom.scenario.runs = 17;
    custom.scenario.base_seed = 987654321;
    CHECK(parse_config(serialize_config(custom)) == custom);
}

TEST_CASE("shipped preset files parse to the built-in presets") {
    for (const char* name : {"sku_a", "sku_b"}) {
        CAPTURE(name);
        std::ifstream in(std::string(NVSIM_SOURCE_DIR) + "/presets/" + name + ".cfg");
        REQUIRE(in.good());
        std::ostringstream buffer;
        buffer << in.rdbuf();
        CHECK(parse_config(buffer.str()) == preset_config(name));
    }
}

TEST_CASE("presets carry the benchmark inputs") {
    const ScenarioConfig a = preset_config("sku_a");
    CHECK(a.scenario.econ.price == 100.0);
    CHECK(a.scenario.econ.variable_cost == 60.0);
    CHECK(a.scenario.econ.fixed_cost == 240'000.0);
    CHECK(a.scenario.econ.holding_cost == 2.8);
    CHECK(a.scenario.econ.safety_buffer == 5670.0);
    CHECK(a.scenario.observed_daily_mean == 548.5217);
    REQUIRE(a.families.size() == 3);
    CHECK(a.families[1].dist == DemandDistribution(Triangular{235.0, 810.0, 600.5652}));
    const ScenarioConfig b = preset_config("sku_b");
    CHECK(b.scenario.econ.fixed_cost == 14'000.0);
    CHECK(b.scenario.econ.safety_buffer == 595.0);
    CHECK(b.families[2].dist == DemandDistribution(LogNormal{2.98129577, 0.878635374}));
    CHECK_THROWS_AS(preset_config("sku_c"), std::domain_error);
}

TEST_CASE("config parsing rejects malformed input") {
    CHECK_THROWS_AS(parse_config("version = 2\n"), std::domain_error);
    CHECK_THROWS_AS(parse_config("unknown_key = 1\n"), std::domain_error);
    CHECK_THROWS_AS(parse_config("price = abc\n"), std::domain_error);
    CHECK_THROWS_AS(parse_config("just a line\n"), std::domain_error);
    CHECK_THROWS_AS(parse_distribution("uniform(a=1)"), std::domain_error);
    CHECK_THROWS_AS(parse_distribution("uniform(a=1, b=2, c=3)"), std::domain_error);
    CHECK_THROWS_AS(parse_distribution("gaussian(mu=0, sigma=1)"), std::domain_error);
    CHECK_THROWS_AS(parse_distribution("uniform(1, 2)"), std::domain_error);
    // economics must validate even if all keys parse
    CHECK_THROWS_AS(parse_config("price = 10\nvariable_cost = 20\nfixed_cost = 0\nholding_cost = 1\n"),
                    std::domain_error);
}

TEST_CASE("distribution expressions parse with named parameters in any order") {
    CHECK(parse_distribution("triangular(c=2, a=0, b=85)") ==
          DemandDistribution(Triangular{0.0, 85.0, 2.0}));
    CHECK(parse_distribution(" lognormal( sigma = 0.5 , mu = 1.25 ) ") ==
          DemandDistribution(LogNormal{1.25, 0.5}));
}

TEST_CASE("family references resolve inside a config") {
    const std::string text =
        "price = 100\nvariable_cost = 60\nfixed_cost = 1\nholding_cost = 2.8\n"
        "uniform_dist = uniform(a=0, b=85)\nlognormal_dist = lognormal(mu=3, sigma=0.9)\n"
        "model_dist = lognormal\ntrue_dist = uniform\n";
    const ScenarioConfig config = parse_config(text);
    CHECK(config.scenario.model_dist == DemandDistribution(LogNormal{3.0, 0.9}));
    CHECK(config.scenario.true_dist == DemandDistribution(Uniform{0.0, 85.0}));
}

TEST_CASE("policy names round-trip") {
    for (PolicyKind kind : kAllPolicyKinds) CHECK(parse_policy_kind(policy_name(kind)) == kind);
    CHECK_THROWS_AS(parse_policy_kind("bogus"), std::domain_error);
}

TEST_CASE("report table keeps canonical policy order and rejects duplicates") {
    ReportTable table;
    table.add("s1", PolicyKind::MultiPeriod, kMetricProfit, tiny_stats(10.0));
    table.add("s1", PolicyKind::SafetyStock, kMetricProfit, tiny_stats(20.0));
    table.add("s1", PolicyKind::Classic, kMetricProfit, tiny_stats(30.0));
    const std::vector<PolicyKind> expected{PolicyKind::SafetyStock, PolicyKind::Classic,
                                           PolicyKind::MultiPeriod};
    CHECK(table.policies() == expected);
    CHECK_THROWS_AS(table.add("s1", PolicyKind::Classic, kMetricProfit, tiny_stats(1.0)),
                    std::domain_error);
    CHECK(table.find("s1", PolicyKind::Extended, kMetricProfit) == nullptr);
}

TEST_CASE("render: benchmark-shaped table gives one row per scenario") {
    ReportTable table;
    for (const char* scenario : {"a:u/u", "a:t/t", "a:l/l", "b:u/u", "b:t/t", "b:l/l"})
        for (PolicyKind kind : kBenchmarkPolicies) {
            table.add(scenario, kind, kMetricProfit, tiny_stats(100.0));
            table.add(scenario, kind, kMetricAvgInventory, tiny_stats(5.0));
        }
    const std::vector<std::string> metrics{std::string(kMetricProfit)};
    const std::vector<std::string> stats{"mean"};
    const std::string csv = render_report(table, ReportFormat::Csv, metrics, stats);
    int lines = 0;
    for (char ch : csv) lines += ch == '\n';
    CHECK(lines == 7);  // header + 6 scenarios
    CHECK(csv.rfind("scenario,metric,stat,safety_stock,classic,extended,multi_period", 0) == 0);
}

TEST_CASE("render: an empty metric filter yields only the header") {
    ReportTable table;
    table.add("s", PolicyKind::Classic, kMetricProfit, tiny_stats(1.0));
    const std::string csv = render_report(table, ReportFormat::Csv, {}, {});
    CHECK(csv == "scenario,metric,stat,classic\n");
}

TEST_CASE("csv rendering parses back to the same values at printed precision") {
    ReportTable table;
    table.add("cell", PolicyKind::Extended, kMetricProfit, tiny_stats(21'994.7312));
    table.add("cell", PolicyKind::Extended, kMetricStockoutDays, tiny_stats(236.25));
    const std::vector<std::string> metrics{std::string(kMetricProfit),
                                           std::string(kMetricStockoutDays)};
    const std::vector<std::string> stats{"mean", "moe95", "stdev", "median", "p95"};
    const std::string csv = render_report(table, ReportFormat::Csv, metrics, stats);
    const FlatReport flat = parse_report_csv(csv);
    REQUIRE(flat.policy_names == std::vector<std::string>{"extended"});
    for (const auto& row : flat.rows) {
        const AggregateStats* source = table.find(row.scenario, PolicyKind::Extended, row.metric);
        REQUIRE(source != nullptr);
        const auto expected = stat_value(*source, row.stat);
        REQUIRE(row.values.size() == 1);
        REQUIRE(row.values[0].has_value() == expected.has_value());
        if (expected) CHECK(std::abs(*row.values[0] - *expected) <= 0.5e-4);
    }
    // re-rendering the parsed table reproduces the text exactly
    CHECK(render_flat(flat, ReportFormat::Csv) == csv);
}

TEST_CASE("markdown rendering is a pipe table") {
    ReportTable table;
    table.add("s", PolicyKind::MultiPeriod, kMetricProfit, tiny_stats(42.0));
    const std::vector<std::string> metrics{std::string(kMetricProfit)};
    const std::vector<std::string> stats{"mean"};
    const std::string md = render_report(table, ReportFormat::Markdown, metrics, stats);
    CHECK(md.find("| scenario | metric | stat | multi_period |") == 0);
    CHECK(md.find("| s | profit | mean | 42.0000 |") != std::string::npos);
    CHECK_THROWS_AS(parse_report_format("pdf"), std::domain_error);
}

TEST_CASE("report csv parser rejects malformed input") {
    CHECK_THROWS_AS(parse_report_csv(""), std::domain_error);
    CHECK_THROWS_AS(parse_report_csv("bogus,header,row,x\n"), std::domain_error);
    CHECK_THROWS_AS(parse_report_csv("scenario,metric,stat,p1\nrow,with,too,many,fields\n"),
                    std::domain_error);
}
