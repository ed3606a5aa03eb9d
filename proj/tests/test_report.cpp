#include <catch_amalgamated.hpp>

#include <json.hpp>

#include <cmath>
#include <set>

#include "mfx/report.hpp"
#include "dgp.hpp"
#include "mfx/simulate.hpp"
#include "support.hpp"

using namespace mfx;
using mfx::test::error_code;
using Catch::Matchers::ContainsSubstring;

namespace {

const Period kTrainEnd = Period::quarter(1994, 4);
const Period kTestEnd = Period::quarter(2019, 1);

const Dataset& sim() {
    static const Dataset d = simulate_dataset(SimulationConfig{.seed = 3});
    return d;
}

std::vector<ModelSpec> all_specs() {
    std::vector<ModelSpec> specs;
    for (ModelKind k : kAllModels) specs.push_back(ModelSpec{k});
    return specs;
}

const std::vector<BacktestRow>& recursive_rows() {
    static const auto rows = backtest_report(sim(), all_specs(), Scheme::recursive(), kTrainEnd, kTestEnd);
    return rows;
}

double num(const Cell& c) { return std::get<double>(c); }
const std::string& str(const Cell& c) { return std::get<std::string>(c); }
std::string stars(const Cell& c) { return std::holds_alternative<std::monostate>(c) ? "" : str(c); }

}  // namespace

TEST_CASE("format_number round trips", "[report][property]") {
    std::mt19937_64 rng(137);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int rep = 0; rep < 1000; ++rep) {
        const double x = u(rng) * std::pow(10.0, rep % 30 - 15);
        CHECK(std::stod(format_number(x)) == x);
    }
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(2.0) == "2");
}

TEST_CASE("format names", "[report]") {
    for (auto f : {OutputFormat::Text, OutputFormat::Csv, OutputFormat::Json}) CHECK(parse_format(to_string(f)) == f);
    CHECK(error_code([] { (void)parse_format("xml"); }) == ErrorCode::InvalidArgument);
    CHECK(parse_plot_series("returns") == PlotSeries::Returns);
    CHECK(error_code([] { (void)parse_plot_series("volumes"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("CSV rendering round trips", "[report]") {
    const Table t{{"name", "x", "y"},
                  {{std::string("a"), 0.1, Cell{}}, {std::string("b c"), -1e-300, 12345.678901234567}}};
    CHECK(parse_csv_table(render(t, OutputFormat::Csv)) == t);

    const auto json = nlohmann::json::parse(render(t, OutputFormat::Json));
    REQUIRE(json.size() == 2);
    CHECK(json[0]["name"] == "a");
    CHECK(json[0]["x"].get<double>() == 0.1);
    CHECK(json[0]["y"].is_null());

    const auto text = render(t, OutputFormat::Text);
    CHECK_THAT(text, ContainsSubstring("b c"));
    CHECK_THAT(text, ContainsSubstring("12345.7"));
}

TEST_CASE("backtest table", "[report]") {
    const auto& rows = recursive_rows();
    REQUIRE(rows.size() == 13);
    const Table t = backtest_table(rows);
    CHECK(t.columns == std::vector<std::string>{"model", "msfe", "dm", "dm_p", "dm_stars", "cw", "cw_p", "cw_stars"});
    REQUIRE(t.rows.size() == 13);
    CHECK(str(t.rows[0][0]) == "Random Walk");
    for (std::size_t c = 2; c < t.columns.size(); ++c) CHECK(std::holds_alternative<std::monostate>(t.rows[0][c]));

    for (std::size_t r = 1; r < 13; ++r) {
        INFO(str(t.rows[r][0]));
        CHECK(str(t.rows[r][0]) == acronym(kAllModels[r]));
        CHECK(num(t.rows[r][1]) == rows[r].result.msfe);
        const auto& cmp = *rows[r].vs_benchmark;
        CHECK(num(t.rows[r][2]) == cmp.dm.statistic);
        CHECK(stars(t.rows[r][4]) == significance_stars(cmp.dm));
        CHECK(stars(t.rows[r][7]) == significance_stars(cmp.cw));
        CHECK(cmp.dm.statistic == diebold_mariano(rows[0].result.errors, rows[r].result.errors).statistic);
    }
    CHECK(parse_csv_table(render(t, OutputFormat::Csv)) == t);
}

TEST_CASE("stars follow the p-value", "[report]") {
    TestResult r;
    auto stars = [&](double p) {
        r.p_value = p;
        for (std::size_t k = 0; k < 3; ++k) r.reject[k] = p <= kSignificanceLevels[k];
        return std::string(significance_stars(r));
    };
    CHECK(stars(0.001) == "***");
    CHECK(stars(0.03) == "**");
    CHECK(stars(0.07) == "*");
    CHECK(stars(0.5).empty());
}

TEST_CASE("schemes give different tables", "[report]") {
    const auto rolling = backtest_report(sim(), all_specs(), Scheme::rolling(), kTrainEnd, kTestEnd);
    CHECK(backtest_table(rolling) != backtest_table(recursive_rows()));
    CHECK(rolling[0].result.msfe == recursive_rows()[0].result.msfe);
}

TEST_CASE("restricted specs are labelled", "[report]") {
    const std::vector<ModelSpec> specs{ModelSpec{ModelKind::UIRP, true, false}, ModelSpec{ModelKind::MM1, false, true}};
    const Table t = backtest_table(backtest_report(sim(), specs, Scheme::recursive(), kTrainEnd, kTestEnd));
    REQUIRE(t.rows.size() == 2);
    CHECK_THAT(str(t.rows[0][0]), ContainsSubstring("UIRP"));
    CHECK(str(t.rows[0][0]) != "UIRP");
    CHECK(str(t.rows[1][0]) != "MM1");
    CHECK(error_code([] {
              (void)backtest_report(sim(), {ModelSpec{ModelKind::MF_MM1, false, true}}, Scheme::recursive(), kTrainEnd,
                                    kTestEnd);
          }) == ErrorCode::IllegalRestriction);
}

TEST_CASE("plot data", "[report]") {
    const Table returns = plot_data(sim(), {PlotSeries::Returns});
    CHECK(returns.columns == std::vector<std::string>{"period", "series", "value"});
    CHECK(returns.rows.size() == static_cast<std::size_t>(sim().quarters()));
    CHECK(str(returns.rows.front()[0]) == "1985Q1");
    CHECK(num(returns.rows.back()[2]) == sim().ds[sim().ds.size() - 1]);

    const Table both = plot_data(sim(), {PlotSeries::Levels, PlotSeries::Returns});
    CHECK(both.rows.size() == 2 * static_cast<std::size_t>(sim().quarters()));
    std::set<std::string> names;
    for (const auto& row : both.rows) names.insert(str(row[1]));
    CHECK(names == std::set<std::string>{"log_fx", "ds"});

    CHECK(plot_data(sim(), {PlotSeries::Predictors}).rows.size() == 5 * static_cast<std::size_t>(sim().quarters()));
    CHECK(error_code([] { (void)plot_data(sim(), {}); }) == ErrorCode::EmptyInput);
}

TEST_CASE("stationarity report classifies known processes", "[report]") {
    std::mt19937_64 rng(139);
    auto inputs = simulate_inputs(SimulationConfig{.seed = 21});
    // White-noise returns and a random-walk interest differential.
    const auto& fx = inputs.log_fx_quarterly;
    inputs.log_fx_quarterly = TimeSeries(fx.start(), test::random_walk(rng, fx.size(), 0.03));
    const auto& id = inputs.interest_domestic;
    auto walk = test::random_walk(rng, id.size(), 0.003);
    for (std::size_t k = 0; k < walk.size(); ++k) walk[k] += inputs.interest_foreign[k];
    inputs.interest_domestic = TimeSeries(id.start(), walk);
    const Dataset d = build_dataset(inputs, DatasetConfig{}, Period::quarter(1985, 1), Period::quarter(2019, 1));

    const auto rows = stationarity_report(d);
    REQUIRE(rows.size() == 9);
    CHECK(rows[0].order == 0);
    CHECK(rows[1].order == 1);
    for (const auto& r : rows) {
        CHECK(r.adf.lags >= 0);
        CHECK(r.kpss.lags == 4);
    }
    const Table t = stationarity_table(rows);
    CHECK(t.rows.size() == 9);
    CHECK(str(t.rows[0][8]) == "I(0)");
    CHECK(str(t.rows[1][8]) == "I(1)");
    CHECK(parse_csv_table(render(t, OutputFormat::Csv)) == t);
}

TEST_CASE("benchmark-only request", "[report]") {
    const Table t = backtest_table(backtest_report(sim(), {ModelSpec{}}, Scheme::recursive(), kTrainEnd, kTestEnd));
    REQUIRE(t.rows.size() == 1);
    CHECK(str(t.rows[0][0]) == "Random Walk");
    CHECK(num(t.rows[0][1]) > 0.0);
}

TEST_CASE("UIRP-true data gives a near-zero UIRP row", "[report]") {
    const std::vector<double> beta{0.8};
    const Dataset d = test::exact_dgp(sim(), ModelSpec{ModelKind::UIRP}, 0.001, beta, {});
    const Table t = backtest_table(
        backtest_report(d, {ModelSpec{}, ModelSpec{ModelKind::UIRP}}, Scheme::recursive(), kTrainEnd, kTestEnd));
    REQUIRE(t.rows.size() == 2);
    CHECK(num(t.rows[1][1]) < 1e-12);
    CHECK(num(t.rows[1][2]) > 0.0);
}
