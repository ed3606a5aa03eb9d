#include "mfx/simulate.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "mfx/error.hpp"

namespace mfx {

namespace {

struct Country {
    double rate_mean, log_cpi0, cpi_drift, log_money0, money_drift, log_gdp0, gdp_drift;
};

constexpr Country kDomestic{5.5, 4.20, 0.0018, 6.00, 0.0060, 7.30, 0.0055};
constexpr Country kForeign{4.5, 4.25, 0.0021, 8.20, 0.0050, 9.60, 0.0062};

}  // namespace

DatasetInputs simulate_inputs(const SimulationConfig& sim, Aggregation aggregation) {
    if (sim.first_month.freq() != Frequency::Monthly || sim.last_month.freq() != Frequency::Monthly) {
        throw Error(ErrorCode::WrongFrequency, "simulation bounds must be months");
    }
    const Period first = first_month(quarter_of(sim.first_month));
    const Period last = last_month(quarter_of(sim.last_month));
    const auto months = static_cast<std::size_t>(last - first) + 1;
    if (months < 60) throw Error(ErrorCode::SeriesTooShort, "simulation needs at least five years");

    std::mt19937_64 rng(sim.seed);
    std::normal_distribution<double> z(0.0, 1.0);

    auto rates = [&](const Country& c) {
        std::vector<double> r(months);
        double x = c.rate_mean;
        for (auto& v : r) {
            x = c.rate_mean + 0.98 * (x - c.rate_mean) + 0.25 * z(rng);
            v = x;
        }
        return r;
    };
    auto walk = [&](double start, double drift, double sd, std::size_t n) {
        std::vector<double> w(n);
        double x = start;
        for (auto& v : w) {
            x += drift + sd * z(rng);
            v = x;
        }
        return w;
    };

    const auto i_dom = rates(kDomestic);
    const auto i_for = rates(kForeign);
    const auto cpi_dom = walk(kDomestic.log_cpi0, kDomestic.cpi_drift, 0.003, months);
    const auto cpi_for = walk(kForeign.log_cpi0, kForeign.cpi_drift, 0.003, months);
    const auto m_dom = walk(kDomestic.log_money0, kDomestic.money_drift, 0.006, months);
    const auto m_for = walk(kForeign.log_money0, kForeign.money_drift, 0.006, months);

    std::vector<double> fx(months);
    double s = std::log(1.30);
    for (std::size_t t = 0; t < months; ++t) {
        if (t > 0) {
            const double dp = (cpi_dom[t] - cpi_for[t]) - (cpi_dom[t - 1] - cpi_for[t - 1]);
            const double di = (i_dom[t] - i_for[t]) - (i_dom[t - 1] - i_for[t - 1]);
            s += 0.6 * dp + 0.01 * di + sim.fx_monthly_sd * z(rng);
        }
        fx[t] = s;
    }

    const std::size_t quarters = months / 3;
    auto gdp = [&](const Country& c) {
        std::vector<double> g(quarters);
        double cycle = 0.0;
        for (std::size_t q = 0; q < quarters; ++q) {
            cycle = 0.85 * cycle + 0.006 * z(rng);
            g[q] = c.log_gdp0 + c.gdp_drift * static_cast<double>(q) + cycle;
        }
        return g;
    };
    const Period q0 = quarter_of(first);

    return DatasetInputs{
        aggregate_to_quarterly(TimeSeries(first, fx), aggregation),
        TimeSeries(first, i_dom),
        TimeSeries(first, i_for),
        TimeSeries(first, cpi_dom),
        TimeSeries(first, cpi_for),
        TimeSeries(first, m_dom),
        TimeSeries(first, m_for),
        TimeSeries(q0, gdp(kDomestic)),
        TimeSeries(q0, gdp(kForeign)),
    };
}

Dataset simulate_dataset(const SimulationConfig& sim, const DatasetConfig& config, Period first, Period last) {
    Dataset d = build_dataset(simulate_inputs(sim, config.aggregation), config, first, last);
    d.metadata["source"] = "simulated";
    d.metadata["seed"] = std::to_string(sim.seed);
    return d;
}

}  // namespace mfx
