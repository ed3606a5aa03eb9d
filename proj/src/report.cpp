#include "mfx/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

#include <json.hpp>

#include "mfx/error.hpp"
#include "mfx/filters.hpp"
#include "mfx/unit_root.hpp"

namespace mfx {

namespace {

std::string text_number(double x) {
    if (!std::isfinite(x)) return format_number(x);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string cell_text(const Cell& c, bool full_precision) {
    if (std::holds_alternative<std::monostate>(c)) return "-";
    if (const auto* d = std::get_if<double>(&c)) return full_precision ? format_number(*d) : text_number(*d);
    return std::get<std::string>(c);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells(1);
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        const char ch = line[k];
        if (quoted) {
            if (ch == '"' && k + 1 < line.size() && line[k + 1] == '"') {
                cells.back() += '"';
                ++k;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cells.back() += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            cells.emplace_back();
        } else if (ch != '\r') {
            cells.back() += ch;
        }
    }
    return cells;
}

Cell stars_cell(const TestResult& r) {
    const std::string s = significance_stars(r);
    return s.empty() ? Cell{} : Cell{s};
}

StationarityRow stationarity_row(std::string name, const TimeSeries& x) {
    StationarityRow row{std::move(name), adf_test(x, AdfDeterministic::Constant),
                        kpss_test(x, KpssDeterministic::Level), std::nullopt};
    try {
        row.order = integration_order(x, 2);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::OrderNotFound) throw;
    }
    return row;
}

void append_series(Table& t, const std::string& name, const TimeSeries& s) {
    for (std::size_t k = 0; k < s.size(); ++k) t.rows.push_back({s.period_at(k).to_string(), name, s[k]});
}

}  // namespace

std::string_view to_string(OutputFormat f) noexcept {
    switch (f) {
        case OutputFormat::Text: return "text";
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Json: return "json";
    }
    return "?";
}

OutputFormat parse_format(std::string_view text) {
    if (text == "text") return OutputFormat::Text;
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    throw Error(ErrorCode::InvalidArgument, "unknown format '" + std::string(text) + "'");
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

std::string render(const Table& table, OutputFormat format) {
    std::ostringstream out;
    switch (format) {
        case OutputFormat::Csv: {
            for (std::size_t j = 0; j < table.columns.size(); ++j) out << (j ? "," : "") << csv_escape(table.columns[j]);
            out << '\n';
            for (const auto& row : table.rows) {
                for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << csv_escape(cell_text(row[j], true));
                out << '\n';
            }
            break;
        }
        case OutputFormat::Json: {
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& row : table.rows) {
                nlohmann::json obj = nlohmann::json::object();
                for (std::size_t j = 0; j < row.size(); ++j) {
                    const auto& key = table.columns[j];
                    if (const auto* d = std::get_if<double>(&row[j])) {
                        obj[key] = *d;
                    } else if (const auto* s = std::get_if<std::string>(&row[j])) {
                        obj[key] = *s;
                    } else {
                        obj[key] = nullptr;
                    }
                }
                rows.push_back(std::move(obj));
            }
            out << rows.dump(2) << '\n';
            break;
        }
        case OutputFormat::Text: {
            std::vector<std::vector<std::string>> cells;
            std::vector<std::size_t> width(table.columns.size());
            for (std::size_t j = 0; j < width.size(); ++j) width[j] = table.columns[j].size();
            for (const auto& row : table.rows) {
                auto& line = cells.emplace_back();
                for (std::size_t j = 0; j < row.size(); ++j) {
                    line.push_back(cell_text(row[j], false));
                    width[j] = std::max(width[j], line.back().size());
                }
            }
            auto emit = [&](const std::vector<std::string>& line) {
                std::string s;
                for (std::size_t j = 0; j < line.size(); ++j) {
                    if (j) s += "  ";
                    const std::size_t pad = width[j] - line[j].size();
                    // first column left-aligned, the rest right-aligned
                    s += j == 0 ? line[j] + std::string(pad, ' ') : std::string(pad, ' ') + line[j];
                }
                while (!s.empty() && s.back() == ' ') s.pop_back();
                out << s << '\n';
            };
            emit(table.columns);
            std::size_t total = 0;
            for (auto w : width) total += w + 2;
            out << std::string(total > 2 ? total - 2 : 0, '-') << '\n';
            for (const auto& line : cells) emit(line);
            break;
        }
    }
    return out.str();
}

Table parse_csv_table(std::string_view text) {
    Table t;
    std::size_t pos = 0;
    bool header = true;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        const std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (header) {
            t.columns = std::move(fields);
            header = false;
            continue;
        }
        if (fields.size() != t.columns.size()) throw Error(ErrorCode::ParseError, "ragged row '" + std::string(line) + "'");
        auto& row = t.rows.emplace_back();
        for (auto& f : fields) {
            if (f == "-") {
                row.emplace_back();
                continue;
            }
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (!f.empty() && ec == std::errc{} && ptr == f.data() + f.size()) {
                row.emplace_back(v);
            } else {
                row.emplace_back(std::move(f));
            }
        }
    }
    return t;
}

std::vector<StationarityRow> stationarity_report(const Dataset& data) {
    const Period first = data.first_quarter();
    const Period last = data.last_quarter();
    const double lambda = data.config.hp_lambda;
    auto gap = [&](const TimeSeries& log_gdp) { return output_gap(log_gdp.slice(first, last), lambda); };
    auto infl = [&](const TimeSeries& log_cpi) {
        const TimeSeries q = inflation(aggregate_to_quarterly(log_cpi, data.config.aggregation));
        return q.slice(std::max(first, q.start()), std::min(last, q.end()));
    };

    std::vector<StationarityRow> rows;
    rows.push_back(stationarity_row("CAD/US exchange rate", data.ds));
    rows.push_back(stationarity_row("Interest rate differential", data.i_diff_q));
    rows.push_back(stationarity_row("Price level differential", data.p_diff_q));
    rows.push_back(stationarity_row("Money supply differential", data.m_diff_q));
    rows.push_back(stationarity_row("Output differential", data.y_diff_q));
    rows.push_back(stationarity_row("Canada output gap", gap(data.log_gdp_domestic)));
    rows.push_back(stationarity_row("U.S. output gap", gap(data.log_gdp_foreign)));
    rows.push_back(stationarity_row("Canada inflation rate", infl(data.log_cpi_domestic)));
    rows.push_back(stationarity_row("U.S. inflation rate", infl(data.log_cpi_foreign)));
    return rows;
}

Table stationarity_table(const std::vector<StationarityRow>& rows) {
    Table t{{"variable", "adf", "adf_p", "adf_stars", "adf_lags", "kpss", "kpss_p", "kpss_stars", "order"}, {}};
    for (const auto& r : rows) {
        t.rows.push_back({r.variable, r.adf.statistic, r.adf.p_value, stars_cell(r.adf), static_cast<double>(r.adf.lags),
                          r.kpss.statistic, r.kpss.p_value, stars_cell(r.kpss),
                          r.order ? Cell{"I(" + std::to_string(*r.order) + ")"} : Cell{}});
    }
    return t;
}

std::vector<BacktestRow> backtest_report(const Dataset& data, const std::vector<ModelSpec>& specs,
                                         const Scheme& scheme, const Period& train_end, const Period& test_end,
                                         const ForecastOptions& options) {
    for (const auto& s : specs) s.validate();

    auto run = [&](const ModelSpec& spec) {
        try {
            return backtest(spec, data, scheme, train_end, test_end, options);
        } catch (const Error& e) {
            throw Error(e.code(), std::string(acronym(spec.kind)) + ": " + e.detail());
        }
    };

    std::vector<std::future<BacktestResult>> jobs;
    jobs.reserve(specs.size());
    for (const auto& s : specs) jobs.push_back(std::async(std::launch::async, run, std::cref(s)));
    const BacktestResult benchmark = run(ModelSpec{ModelKind::RandomWalk});

    std::vector<BacktestRow> rows;
    std::optional<Error> failure;
    for (std::size_t k = 0; k < specs.size(); ++k) {
        try {
            BacktestRow row{jobs[k].get(), std::nullopt};
            if (specs[k].kind != ModelKind::RandomWalk) {
                try {
                    row.vs_benchmark = compare_to_benchmark(benchmark, row.result);
                } catch (const Error& e) {
                    throw Error(e.code(), std::string(acronym(specs[k].kind)) + ": " + e.detail());
                }
            }
            rows.push_back(std::move(row));
        } catch (const Error& e) {
            if (!failure) failure = e;
        }
    }
    if (failure) throw *failure;
    return rows;
}

Table backtest_table(const std::vector<BacktestRow>& rows) {
    Table t{{"model", "msfe", "dm", "dm_p", "dm_stars", "cw", "cw_p", "cw_stars"}, {}};
    for (const auto& r : rows) {
        const ModelSpec& spec = r.result.spec;
        std::string name(display_name(spec.kind));
        if (spec.restrict_alpha_zero) name += " [a=0]";
        if (spec.restrict_money_unity) name += " [m=1]";
        if (!r.vs_benchmark) {
            t.rows.push_back({name, r.result.msfe, {}, {}, {}, {}, {}, {}});
            continue;
        }
        const auto& dm = r.vs_benchmark->dm;
        const auto& cw = r.vs_benchmark->cw;
        t.rows.push_back({name, r.result.msfe, dm.statistic, dm.p_value, stars_cell(dm), cw.statistic, cw.p_value,
                          stars_cell(cw)});
    }
    return t;
}

PlotSeries parse_plot_series(std::string_view text) {
    if (text == "levels" || text == "Levels") return PlotSeries::Levels;
    if (text == "returns" || text == "Returns") return PlotSeries::Returns;
    if (text == "predictors" || text == "Predictors") return PlotSeries::Predictors;
    throw Error(ErrorCode::InvalidArgument, "unknown plot selection '" + std::string(text) + "'");
}

Table plot_data(const Dataset& data, const std::vector<PlotSeries>& what) {
    if (what.empty()) throw Error(ErrorCode::EmptyInput, "no series selected");
    Table t{{"period", "series", "value"}, {}};
    for (PlotSeries p : what) {
        switch (p) {
            case PlotSeries::Levels:
                append_series(t, "log_fx", data.log_fx.slice(data.first_quarter(), data.last_quarter()));
                break;
            case PlotSeries::Returns: append_series(t, "ds", data.ds); break;
            case PlotSeries::Predictors:
                append_series(t, "i_diff", data.i_diff_q);
                append_series(t, "p_diff", data.p_diff_q);
                append_series(t, "m_diff", data.m_diff_q);
                append_series(t, "y_diff", data.y_diff_q);
                append_series(t, "ygap_diff", data.ygap_diff_q);
                break;
        }
    }
    return t;
}

}  // namespace mfx
