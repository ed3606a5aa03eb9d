#include <catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <regex>

#include "dgp.hpp"
#include "mfx/simulate.hpp"
#include "support.hpp"

using namespace mfx;
using mfx::test::error_code;
using Catch::Matchers::WithinAbs;

namespace {

const Dataset& sim() {
    static const Dataset d = simulate_dataset(SimulationConfig{.seed = 101});
    return d;
}

const ForecastOptions kFullGap{FundamentalsTiming::Realized, true, false};

std::vector<std::string> labels_of(ModelKind k, const ForecastOptions& o = {}) {
    return build_design(ModelSpec{k}, sim(), o).x.labels();
}

// Independent reading of a column label: the series it names and the period
// it is dated at, relative to the target quarter.
struct LabelRef {
    std::string name;
    bool monthly = false;
    int back = 0;
};

LabelRef parse_label(const std::string& label) {
    static const std::regex re(R"(^([a-z_]+)_(3?)t(?:-(\d+))?$)");
    std::smatch m;
    REQUIRE(std::regex_match(label, m, re));
    return {m[1].str(), m[2].matched && m[2].length() == 1, m[3].matched ? std::stoi(m[3].str()) : 0};
}

const TimeSeries& named_series(const Dataset& d, const LabelRef& ref) {
    static const std::map<std::string, const TimeSeries Dataset::*> quarterly = {
        {"i_diff", &Dataset::i_diff_q}, {"p_diff", &Dataset::p_diff_q},   {"m_diff", &Dataset::m_diff_q},
        {"pi_diff", &Dataset::pi_diff_q}, {"y_diff", &Dataset::y_diff_q}, {"ygap_diff", &Dataset::ygap_diff_q},
    };
    static const std::map<std::string, const TimeSeries Dataset::*> monthly = {
        {"i_diff", &Dataset::i_diff_m}, {"p_diff", &Dataset::p_diff_m},
        {"m_diff", &Dataset::m_diff_m}, {"pi_diff", &Dataset::pi_diff_m},
    };
    const auto& table = ref.monthly ? monthly : quarterly;
    const auto it = table.find(ref.name);
    REQUIRE(it != table.end());
    return d.*(it->second);
}

}  // namespace

TEST_CASE("acronyms parse back", "[models]") {
    for (ModelKind k : kAllModels) CHECK(parse_model(acronym(k)) == k);
    CHECK(parse_model("mf_uirp") == ModelKind::MF_UIRP);
    CHECK(parse_model("rw") == ModelKind::RandomWalk);
    CHECK(display_name(ModelKind::RandomWalk) == "Random Walk");
    CHECK(error_code([] { (void)parse_model("ARIMA"); }).has_value());
    CHECK(is_mixed_frequency(ModelKind::MF_TYLR1));
    CHECK_FALSE(is_mixed_frequency(ModelKind::TYLR1));
    CHECK(uses_output_gap(ModelKind::TYLR2));
    CHECK_FALSE(uses_output_gap(ModelKind::MM2));
}

TEST_CASE("design columns per model", "[models]") {
    using V = std::vector<std::string>;
    CHECK(labels_of(ModelKind::UIRP) == V{"i_diff_t"});
    CHECK(labels_of(ModelKind::PPP) == V{"p_diff_t"});
    CHECK(labels_of(ModelKind::MM1) == V{"i_diff_t", "y_diff_t", "m_diff_t"});
    CHECK(labels_of(ModelKind::MM2) == V{"i_diff_t", "y_diff_t", "m_diff_t", "p_diff_t"});
    CHECK(labels_of(ModelKind::TYLR1) == V{"pi_diff_t", "ygap_diff_t"});
    CHECK(labels_of(ModelKind::TYLR2) == V{"pi_diff_t", "ygap_diff_t", "i_diff_t-1"});
    CHECK(labels_of(ModelKind::MF_UIRP) == V{"i_diff_3t", "i_diff_3t-1", "i_diff_3t-2"});
    CHECK(labels_of(ModelKind::MF_PPP) == V{"p_diff_3t", "p_diff_3t-1", "p_diff_3t-2"});
    CHECK(labels_of(ModelKind::MF_MM1) ==
          V{"i_diff_3t", "i_diff_3t-1", "i_diff_3t-2", "y_diff_t", "m_diff_3t", "m_diff_3t-1", "m_diff_3t-2"});
    CHECK(labels_of(ModelKind::MF_MM2).size() == 10);
    CHECK(labels_of(ModelKind::MF_TYLR1) == V{"pi_diff_3t", "pi_diff_3t-1", "pi_diff_3t-2", "ygap_diff_t"});
    CHECK(labels_of(ModelKind::MF_TYLR2) == V{"pi_diff_3t", "pi_diff_3t-1", "pi_diff_3t-2", "ygap_diff_t",
                                              "i_diff_3t", "i_diff_3t-1", "i_diff_3t-2"});
    CHECK(labels_of(ModelKind::UIRP, {FundamentalsTiming::Lagged}) == V{"i_diff_t-1"});
    CHECK(labels_of(ModelKind::MF_UIRP, {FundamentalsTiming::Lagged}) == V{"i_diff_3t-3", "i_diff_3t-4", "i_diff_3t-5"});
    CHECK(labels_of(ModelKind::TYLR2, {FundamentalsTiming::Lagged}) == V{"pi_diff_t-1", "ygap_diff_t-1", "i_diff_t-2"});

    const auto rw = build_design(ModelSpec{ModelKind::RandomWalk}, sim());
    CHECK(rw.x.cols() == 0);
    CHECK(rw.y.empty());
}

TEST_CASE("every design cell is the value its label names", "[models][timing]") {
    for (auto timing : {FundamentalsTiming::Realized, FundamentalsTiming::Lagged}) {
        const ForecastOptions o{timing, true, false};
        for (ModelKind k : kAllModels) {
            if (k == ModelKind::RandomWalk) continue;
            const auto design = build_design(ModelSpec{k}, sim(), o);
            REQUIRE(design.x.rows() > 100);
            for (int c = 0; c < design.x.cols(); ++c) {
                const LabelRef ref = parse_label(design.x.labels()[static_cast<std::size_t>(c)]);
                const TimeSeries& s = named_series(sim(), ref);
                for (int r = 0; r < design.x.rows(); ++r) {
                    const Period target = design.periods[static_cast<std::size_t>(r)];
                    const Period dated = ref.monthly ? last_month(target) - ref.back : target - ref.back;
                    CHECK(design.x(r, c) == s.at(dated));
                    // Nothing later than the information set of the target quarter.
                    const Period info = timing == FundamentalsTiming::Realized ? target : target - 1;
                    CHECK((ref.monthly ? quarter_of(dated) : dated) <= info);
                }
            }
            for (std::size_t r = 0; r < design.y.size(); ++r) CHECK(design.y[r] == sim().ds.at(design.periods[r]));
        }
    }
}

TEST_CASE("restrictions", "[models]") {
    const auto no_alpha = build_design(ModelSpec{ModelKind::UIRP, true, false}, sim());
    CHECK_FALSE(no_alpha.intercept);
    const auto fit = forecast_at_origin(ModelSpec{ModelKind::UIRP, true, false}, sim(), Period::quarter(2000, 1));
    REQUIRE(fit.fit);
    CHECK(fit.fit->labels == std::vector<std::string>{"i_diff_t"});

    const auto unity = build_design(ModelSpec{ModelKind::MM1, false, true}, sim());
    CHECK(unity.x.labels() == std::vector<std::string>{"i_diff_t", "y_diff_t"});
    for (std::size_t r = 0; r < unity.y.size(); ++r) {
        const Period q = unity.periods[r];
        CHECK(unity.offset[r] == sim().m_diff_q.at(q));
        CHECK(unity.y[r] == sim().ds.at(q) - sim().m_diff_q.at(q));
    }

    CHECK(error_code([] { ModelSpec{ModelKind::MF_MM1, false, true}.validate(); }) == ErrorCode::IllegalRestriction);
    CHECK(error_code([] { ModelSpec{ModelKind::UIRP, false, true}.validate(); }) == ErrorCode::IllegalRestriction);
    CHECK(error_code([] { ModelSpec{ModelKind::RandomWalk, true, false}.validate(); }) == ErrorCode::IllegalRestriction);
    CHECK_NOTHROW(ModelSpec{ModelKind::MM2, true, true}.validate());
}

TEST_CASE("money unity forecasts add the money differential back", "[models]") {
    const std::vector<double> beta{0.02, -0.4};
    const ModelSpec spec{ModelKind::MM1, false, true};
    const Dataset d = test::exact_dgp(sim(), spec, 0.001, beta, {});
    const Period origin = Period::quarter(2005, 3);
    const auto f = forecast_at_origin(spec, d, origin);
    CHECK_THAT(f.forecast, WithinAbs(d.ds.at(origin + 1), 1e-10));
}

TEST_CASE("random walk forecasts", "[models]") {
    for (int k = 0; k < 20; ++k) {
        const Period origin = Period::quarter(1995, 1) + k;
        CHECK(forecast_one_step(ModelSpec{}, sim(), origin) == 0.0);
        CHECK(forecast_one_step(ModelSpec{}, sim(), origin, {FundamentalsTiming::Realized, false, true}) ==
              sim().ds.at(origin));
    }
}

TEST_CASE("noiseless UIRP forecast", "[models]") {
    const std::vector<double> beta{0.5};
    const Dataset d = test::exact_dgp(sim(), ModelSpec{ModelKind::UIRP, true, false}, 0.0, beta, {});
    for (int k = 0; k < 40; ++k) {
        const Period origin = Period::quarter(1995, 1) + k;
        CHECK_THAT(forecast_one_step(ModelSpec{ModelKind::UIRP}, d, origin), WithinAbs(0.5 * d.i_diff_q.at(origin + 1), 1e-8));
    }
}

TEST_CASE("MF-UIRP recovers intra-quarter coefficients", "[models]") {
    const std::vector<double> beta{0.3, 0.2, 0.1};
    const Dataset d = test::exact_dgp(sim(), ModelSpec{ModelKind::MF_UIRP}, 0.0, beta, {});
    const auto f = forecast_at_origin(ModelSpec{ModelKind::MF_UIRP}, d, Period::quarter(1994, 4));
    REQUIRE(f.fit);
    CHECK_THAT(f.fit->coefficient("const"), WithinAbs(0.0, 1e-6));
    CHECK_THAT(f.fit->coefficient("i_diff_3t"), WithinAbs(0.3, 1e-6));
    CHECK_THAT(f.fit->coefficient("i_diff_3t-1"), WithinAbs(0.2, 1e-6));
    CHECK_THAT(f.fit->coefficient("i_diff_3t-2"), WithinAbs(0.1, 1e-6));
}

TEST_CASE("constant-within-quarter months reduce MF blocks to the classical column", "[models][property]") {
    Dataset d = sim();
    auto flatten = [](const TimeSeries& m, const TimeSeries& q) {
        std::vector<double> v(m.size());
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = q.at(quarter_of(m.period_at(k)));
        return TimeSeries(m.start(), v);
    };
    d.i_diff_m = flatten(d.i_diff_m, d.i_diff_q);
    d.p_diff_m = flatten(d.p_diff_m, d.p_diff_q);
    d.m_diff_m = flatten(d.m_diff_m, d.m_diff_q);

    const std::vector<std::pair<ModelKind, ModelKind>> pairs = {
        {ModelKind::MF_UIRP, ModelKind::UIRP}, {ModelKind::MF_PPP, ModelKind::PPP}, {ModelKind::MF_MM2, ModelKind::MM2}};
    for (const auto& [mf, classical] : pairs) {
        const auto xm = build_design(ModelSpec{mf}, d);
        const auto xc = build_design(ModelSpec{classical}, d);
        REQUIRE(xm.periods == xc.periods);
        // Map each classical column to its MF block by series name.
        for (int c = 0; c < xc.x.cols(); ++c) {
            const auto cname = parse_label(xc.x.labels()[static_cast<std::size_t>(c)]).name;
            int found = 0;
            for (int r = 0; r < xm.x.rows(); ++r) {
                double block_sum = 0.0;
                int width = 0;
                for (int j = 0; j < xm.x.cols(); ++j) {
                    if (parse_label(xm.x.labels()[static_cast<std::size_t>(j)]).name != cname) continue;
                    block_sum += xm.x(r, j);
                    ++width;
                }
                found = width;
                CHECK_THAT(block_sum / width, WithinAbs(xc.x(r, c), 1e-15));
            }
            CHECK((found == 3 || (cname == "y_diff" && found == 1)));
        }
    }
}

TEST_CASE("forecasts never look past the target quarter", "[models][timing][property]") {
    const Period origin = Period::quarter(2003, 2);
    for (ModelKind k : kAllModels) {
        for (auto timing : {FundamentalsTiming::Realized, FundamentalsTiming::Lagged}) {
            const ForecastOptions o{timing, false, false};
            const double full = forecast_one_step(ModelSpec{k}, sim(), origin, o);
            const double cut = forecast_one_step(ModelSpec{k}, clip_dataset(sim(), sim().first_quarter(), origin + 1), origin, o);
            CHECK_THAT(cut, WithinAbs(full, 1e-12));
        }
    }
}

TEST_CASE("per-origin gap uses GDP only up to the information date", "[models][timing]") {
    const Period target = Period::quarter(2001, 1);
    const auto gap = gap_for_target(sim(), target, {});
    CHECK(gap.end() == target);
    CHECK(gap_for_target(sim(), target, {FundamentalsTiming::Lagged}).end() == target - 1);
    CHECK(gap_for_target(sim(), target, kFullGap) == sim().ygap_diff_q);
}

TEST_CASE("history and span errors", "[models]") {
    CHECK(error_code([] { (void)forecast_at_origin(ModelSpec{ModelKind::MF_MM2}, sim(), sim().first_quarter() + 5); }) ==
          ErrorCode::InsufficientHistory);
    CHECK(error_code([] { (void)forecast_at_origin(ModelSpec{ModelKind::UIRP}, sim(), sim().last_quarter()); }) ==
          ErrorCode::InsufficientSpan);
    CHECK(error_code([] { (void)forecast_at_origin(ModelSpec{ModelKind::UIRP}, sim(), Period::quarter(2000, 1), {}, 0); }) ==
          ErrorCode::InvalidWindow);
    CHECK(error_code([] { (void)forecast_at_origin(ModelSpec{ModelKind::UIRP}, sim(), Period::quarter(2000, 1), {}, 3); }) ==
          ErrorCode::InsufficientHistory);
    CHECK_NOTHROW(forecast_at_origin(ModelSpec{ModelKind::UIRP}, sim(), Period::quarter(2000, 1), {}, 4));
}

TEST_CASE("dataset construction", "[dataset]") {
    const Dataset& d = sim();
    CHECK(d.first_quarter() == Period::quarter(1985, 1));
    CHECK(d.last_quarter() == Period::quarter(2019, 1));
    CHECK(d.quarters() == 137);
    CHECK(d.i_diff_m.size() == 3 * 137);
    CHECK(d.i_diff_m.start() == Period::month(1985, 1));
    CHECK_NOTHROW(d.validate());
    for (int k = 1; k < d.quarters(); ++k) {
        const Period q = d.first_quarter() + k;
        CHECK_THAT(d.ds.at(q), WithinAbs(d.log_fx.at(q) - d.log_fx.at(q - 1), 1e-15));
        CHECK(d.i_diff_q.at(q) == d.i_diff_m.at(last_month(q)));
    }
    for (std::size_t k = 1; k < d.p_diff_m.size(); ++k) {
        CHECK_THAT(d.pi_diff_m[k], WithinAbs(d.p_diff_m[k] - d.p_diff_m[k - 1], 1e-15));
    }
    const Dataset c = clip_dataset(d, Period::quarter(1990, 1), Period::quarter(1999, 4));
    CHECK(c.quarters() == 40);
    CHECK(c.i_diff_m.size() == 120);
    CHECK(c.ds.at(Period::quarter(1995, 2)) == d.ds.at(Period::quarter(1995, 2)));
}

TEST_CASE("identical countries give zero differentials", "[dataset]") {
    const DatasetInputs in = simulate_inputs(SimulationConfig{.seed = 9});
    const DatasetInputs twin{in.log_fx_quarterly,   in.interest_domestic,  in.interest_domestic,
                             in.log_cpi_domestic,   in.log_cpi_domestic,   in.log_money_domestic,
                             in.log_money_domestic, in.log_gdp_domestic,   in.log_gdp_domestic};
    const Dataset d = build_dataset(twin, {});
    for (const TimeSeries* s : {&d.i_diff_m, &d.p_diff_m, &d.m_diff_m, &d.pi_diff_m, &d.i_diff_q, &d.p_diff_q,
                                &d.m_diff_q, &d.pi_diff_q, &d.y_diff_q, &d.ygap_diff_q}) {
        for (double v : s->values()) CHECK(v == 0.0);
    }
}

TEST_CASE("quarter-mean aggregation", "[dataset]") {
    const Dataset d = simulate_dataset(SimulationConfig{.seed = 101}, DatasetConfig{Aggregation::QuarterMean, 1600.0});
    const Period q = Period::quarter(2000, 2);
    const Period m = last_month(q);
    CHECK_THAT(d.i_diff_q.at(q), WithinAbs((d.i_diff_m.at(m) + d.i_diff_m.at(m - 1) + d.i_diff_m.at(m - 2)) / 3, 1e-14));
}
