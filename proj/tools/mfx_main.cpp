// mfx: ingest FX fundamentals, test stationarity, run out-of-sample backtests.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mfx/backtest.hpp"
#include "mfx/error.hpp"
#include "mfx/ingest.hpp"
#include "mfx/report.hpp"
#include "mfx/simulate.hpp"
#include "mfx/unit_root.hpp"

namespace {

struct Options {
    std::string manifest;
    std::string snapshot;
    std::string out;
    std::string format = "text";
    std::vector<std::string> models;
    std::string scheme = "recursive";
    std::optional<int> window;
    std::string train_end = "1994Q4";
    std::string test_end = "2019Q1";
    std::string timing = "realized";
    bool full_sample_gap = false;
    bool difference_i1 = false;
    bool rw_in_differences = false;
    std::vector<std::string> what{"levels", "returns"};
    std::uint64_t seed = 1;
};

mfx::Dataset load_data(const Options& o) {
    if (!o.snapshot.empty() && !o.manifest.empty()) {
        throw mfx::Error(mfx::ErrorCode::InvalidArgument, "give either --snapshot or --manifest");
    }
    if (o.snapshot.empty() && o.manifest.empty()) {
        throw mfx::Error(mfx::ErrorCode::InvalidArgument, "--snapshot or --manifest is required");
    }
    mfx::Dataset d = o.snapshot.empty() ? mfx::assemble_dataset(mfx::load_manifest(o.manifest))
                                        : mfx::load_snapshot(o.snapshot);
    return o.difference_i1 ? mfx::difference_integrated(d) : d;
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f || !(f << text)) throw mfx::Error(mfx::ErrorCode::IoError, "cannot write " + o.out);
}

std::string span_summary(const mfx::Dataset& d) {
    std::ostringstream s;
    s << "span " << d.first_quarter().to_string() << ".." << d.last_quarter().to_string() << " (" << d.quarters()
      << " quarters, " << d.i_diff_m.size() << " months)\n";
    return s.str();
}

int cmd_ingest(const Options& o) {
    const mfx::Dataset d = mfx::assemble_dataset(mfx::load_manifest(o.manifest));
    mfx::snapshot(d, o.out);
    std::cout << "wrote " << o.out << ": " << span_summary(d);
    return 0;
}

int cmd_simulate(const Options& o) {
    mfx::SimulationConfig sim;
    sim.seed = o.seed;
    const mfx::Dataset d = mfx::simulate_dataset(sim);
    mfx::snapshot(d, o.out);
    std::cout << "wrote " << o.out << ": " << span_summary(d);
    return 0;
}

int cmd_stationarity(const Options& o) {
    const mfx::Dataset d = load_data(o);
    emit(o, mfx::render(mfx::stationarity_table(mfx::stationarity_report(d)), mfx::parse_format(o.format)));
    return 0;
}

int cmd_backtest(const Options& o) {
    const mfx::Dataset d = load_data(o);
    const auto format = mfx::parse_format(o.format);

    std::vector<mfx::ModelSpec> specs;
    if (o.models.empty()) {
        for (auto k : mfx::kAllModels) specs.push_back({k});
    } else {
        for (const auto& m : o.models) specs.push_back({mfx::parse_model(m)});
    }

    const auto train_end = mfx::Period::parse(o.train_end, mfx::Frequency::Quarterly);
    auto test_end = mfx::Period::parse(o.test_end, mfx::Frequency::Quarterly);
    if (test_end > d.last_quarter()) {
        std::cerr << "note: test end " << test_end.to_string() << " is past the data; using "
                  << d.last_quarter().to_string() << "\n";
        test_end = d.last_quarter();
    }

    mfx::Scheme scheme{mfx::parse_scheme(o.scheme), o.window};
    mfx::ForecastOptions fo;
    if (o.timing == "lagged") {
        fo.timing = mfx::FundamentalsTiming::Lagged;
    } else if (o.timing != "realized") {
        throw mfx::Error(mfx::ErrorCode::InvalidArgument, "timing must be realized or lagged");
    }
    fo.full_sample_gap = o.full_sample_gap;
    fo.rw_in_differences = o.rw_in_differences;

    emit(o, mfx::render(mfx::backtest_table(mfx::backtest_report(d, specs, scheme, train_end, test_end, fo)), format));
    return 0;
}

int cmd_plotdata(const Options& o) {
    const mfx::Dataset d = load_data(o);
    std::vector<mfx::PlotSeries> what;
    for (const auto& w : o.what) what.push_back(mfx::parse_plot_series(w));
    emit(o, mfx::render(mfx::plot_data(d, what), mfx::OutputFormat::Csv));
    return 0;
}

void add_data_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--snapshot", o.snapshot, "Dataset snapshot (JSON)");
    cmd->add_option("--manifest", o.manifest, "Ingest manifest (JSON) instead of a snapshot");
    cmd->add_flag("--difference-i1", o.difference_i1, "Difference I(1) differentials before use");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mixed-frequency exchange-rate forecasting"};
    app.require_subcommand(1);
    Options o;

    auto* ingest = app.add_subcommand("ingest", "Read CSV sources and write a snapshot");
    ingest->add_option("--manifest", o.manifest, "Ingest manifest (JSON)")->required();
    ingest->add_option("--out", o.out, "Snapshot path")->required();

    auto* simulate = app.add_subcommand("simulate", "Write a synthetic 1985-2019 snapshot");
    simulate->add_option("--seed", o.seed, "Random seed");
    simulate->add_option("--out", o.out, "Snapshot path")->required();

    auto* stationarity = app.add_subcommand("stationarity", "ADF/KPSS unit-root table");
    add_data_flags(stationarity, o);
    stationarity->add_option("--format", o.format, "text, csv or json");
    stationarity->add_option("--out", o.out, "Write the table here instead of stdout");

    auto* bt = app.add_subcommand("backtest", "One-step out-of-sample comparison against the random walk");
    add_data_flags(bt, o);
    bt->add_option("--models", o.models, "Model acronyms (default: all)")->delimiter(',');
    bt->add_option("--scheme", o.scheme, "recursive or rolling");
    bt->add_option("--window", o.window, "Rolling window in quarters");
    bt->add_option("--train-end", o.train_end, "Last training quarter (YYYYQn)");
    bt->add_option("--test-end", o.test_end, "Last forecast target quarter (YYYYQn)");
    bt->add_option("--timing", o.timing, "realized or lagged fundamentals");
    bt->add_flag("--full-sample-gap", o.full_sample_gap, "Use the full-sample output gap");
    bt->add_flag("--rw-differences", o.rw_in_differences, "Benchmark repeats the last return");
    bt->add_option("--format", o.format, "text, csv or json");
    bt->add_option("--out", o.out, "Write the table here instead of stdout");

    auto* plot = app.add_subcommand("plotdata", "Tidy CSV for plotting");
    add_data_flags(plot, o);
    plot->add_option("--what", o.what, "levels, returns, predictors")->delimiter(',');
    plot->add_option("--out", o.out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*ingest) return cmd_ingest(o);
        if (*simulate) return cmd_simulate(o);
        if (*stationarity) return cmd_stationarity(o);
        if (*bt) return cmd_backtest(o);
        if (*plot) return cmd_plotdata(o);
    } catch (const mfx::Error& e) {
        std::cerr << "mfx: " << e.what() << "\n";
        return mfx::is_numerical(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "mfx: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
