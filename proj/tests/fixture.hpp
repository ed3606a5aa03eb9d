#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mfx/ingest.hpp"

namespace mfx::test {

/// Writes `s` as DATE,VALUE rows with first-of-period ISO dates.
inline void write_series_csv(const std::filesystem::path& path, const TimeSeries& s,
                             const std::function<double(double)>& f = [](double v) { return v; }) {
    std::ofstream out(path);
    out << "DATE,VALUE\n";
    char buf[64];
    for (std::size_t k = 0; k < s.size(); ++k) {
        const Period p = s.period_at(k);
        const Period m = p.freq() == Frequency::Quarterly ? first_month(p) : p;
        std::snprintf(buf, sizeof buf, "%04d-%02d-01,%.17g\n", m.year(), m.index(), f(s[k]));
        out << buf;
    }
}

/// The same inputs as FRED-style level files: the exchange rate is monthly,
/// flat within each quarter; rates in percent; CPI, money and GDP in levels.
/// Returns the manifest path.
inline std::filesystem::path write_fixture(const std::filesystem::path& dir, const DatasetInputs& in,
                                           const Period& first, const Period& last) {
    const auto exp_f = [](double v) { return std::exp(v); };
    const auto pct_f = [](double v) { return 100.0 * v; };

    std::vector<double> fx_m;
    for (double v : in.log_fx_quarterly.values()) fx_m.insert(fx_m.end(), 3, v);
    write_series_csv(dir / "fx.csv", TimeSeries(first_month(in.log_fx_quarterly.start()), fx_m), exp_f);
    write_series_csv(dir / "i_dom.csv", in.interest_domestic, pct_f);
    write_series_csv(dir / "i_for.csv", in.interest_foreign, pct_f);
    write_series_csv(dir / "cpi_dom.csv", in.log_cpi_domestic, exp_f);
    write_series_csv(dir / "cpi_for.csv", in.log_cpi_foreign, exp_f);
    write_series_csv(dir / "m_dom.csv", in.log_money_domestic, exp_f);
    write_series_csv(dir / "m_for.csv", in.log_money_foreign, exp_f);
    write_series_csv(dir / "gdp_dom.csv", in.log_gdp_domestic, exp_f);
    write_series_csv(dir / "gdp_for.csv", in.log_gdp_foreign, exp_f);

    auto entry = [](const char* role, const char* file, const char* transform) {
        return nlohmann::json{{"role", role}, {"path", file}, {"value_column", "VALUE"}, {"transform", transform}};
    };
    const nlohmann::json manifest = {
        {"span", {{"start", first.to_string()}, {"end", last.to_string()}}},
        {"config", {{"aggregation", "last"}, {"hp_lambda", 1600.0}}},
        {"series",
         {entry("ExchangeRate", "fx.csv", "log"), entry("InterestDomestic", "i_dom.csv", "percent_to_decimal"),
          entry("InterestForeign", "i_for.csv", "percent_to_decimal"), entry("CpiDomestic", "cpi_dom.csv", "log"),
          entry("CpiForeign", "cpi_for.csv", "log"), entry("MoneyDomestic", "m_dom.csv", "log"),
          entry("MoneyForeign", "m_for.csv", "log"), entry("GdpDomestic", "gdp_dom.csv", "log"),
          entry("GdpForeign", "gdp_for.csv", "log")}},
    };
    const auto path = dir / "manifest.json";
    std::ofstream(path) << manifest.dump(2) << '\n';
    return path;
}

}  // namespace mfx::test
