#include "mfx/models.hpp"

#include <algorithm>

#include "mfx/error.hpp"

namespace mfx {

namespace {

struct KindInfo {
    ModelKind kind;
    std::string_view acronym;
};

constexpr std::array<KindInfo, 13> kKinds = {{
    {ModelKind::RandomWalk, "RW"},   {ModelKind::UIRP, "UIRP"},       {ModelKind::PPP, "PPP"},
    {ModelKind::MM1, "MM1"},         {ModelKind::MM2, "MM2"},         {ModelKind::TYLR1, "TYLR1"},
    {ModelKind::TYLR2, "TYLR2"},     {ModelKind::MF_UIRP, "MF-UIRP"}, {ModelKind::MF_PPP, "MF-PPP"},
    {ModelKind::MF_MM1, "MF-MM1"},   {ModelKind::MF_MM2, "MF-MM2"},   {ModelKind::MF_TYLR1, "MF-TYLR1"},
    {ModelKind::MF_TYLR2, "MF-TYLR2"},
}};

// One regressor column: a series read `back` periods before the target.
// Quarterly columns count quarters back from the target quarter, monthly
// columns count months back from the target quarter's last month.
struct Column {
    const TimeSeries* series;
    bool monthly;
    int back;
    std::string label;
};

std::string quarterly_label(const std::string& name, int back) {
    return back == 0 ? name + "_t" : name + "_t-" + std::to_string(back);
}

std::string monthly_label(const std::string& name, int back) {
    return back == 0 ? name + "_3t" : name + "_3t-" + std::to_string(back);
}

Period column_period(const Column& c, const Period& target) {
    return c.monthly ? last_month(target) - c.back : target - c.back;
}

}  // namespace

std::string_view acronym(ModelKind kind) noexcept {
    for (const auto& k : kKinds) {
        if (k.kind == kind) return k.acronym;
    }
    return "?";
}

std::string_view display_name(ModelKind kind) noexcept {
    return kind == ModelKind::RandomWalk ? "Random Walk" : acronym(kind);
}

ModelKind parse_model(std::string_view text) {
    std::string upper(text);
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) {
        return c == '_' ? '-' : static_cast<char>(std::toupper(c));
    });
    if (upper == "RANDOMWALK" || upper == "RANDOM WALK") return ModelKind::RandomWalk;
    for (const auto& k : kKinds) {
        if (upper == k.acronym) return k.kind;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown model '" + std::string(text) + "'");
}

bool is_mixed_frequency(ModelKind kind) noexcept { return kind >= ModelKind::MF_UIRP; }

bool uses_output_gap(ModelKind kind) noexcept {
    return kind == ModelKind::TYLR1 || kind == ModelKind::TYLR2 || kind == ModelKind::MF_TYLR1 ||
           kind == ModelKind::MF_TYLR2;
}

void ModelSpec::validate() const {
    if (kind == ModelKind::RandomWalk && (restrict_alpha_zero || restrict_money_unity)) {
        throw Error(ErrorCode::IllegalRestriction, "the benchmark has no parameters");
    }
    if (restrict_money_unity && kind != ModelKind::MM1 && kind != ModelKind::MM2) {
        throw Error(ErrorCode::IllegalRestriction,
                    "money unity restriction applies to MM1/MM2, not " + std::string(acronym(kind)));
    }
}

void Dataset::validate() const {
    const Period q0 = ds.start();
    const auto t = ds.size();
    for (const TimeSeries* s : {&log_fx, &i_diff_q, &p_diff_q, &m_diff_q, &pi_diff_q, &y_diff_q, &ygap_diff_q}) {
        if (s->freq() != Frequency::Quarterly || s->start() != q0 || s->size() != t) {
            throw Error(ErrorCode::InvalidArgument, "quarterly series off the common span");
        }
    }
    for (const TimeSeries* s : {&i_diff_m, &p_diff_m, &m_diff_m, &pi_diff_m}) {
        if (s->freq() != Frequency::Monthly || s->start() != first_month(q0) || s->size() != 3 * t) {
            throw Error(ErrorCode::InvalidArgument, "monthly series must cover exactly 3x the quarterly span");
        }
    }
}

Dataset build_dataset(const DatasetInputs& in, const DatasetConfig& config, std::optional<Period> clip_first,
                      std::optional<Period> clip_last) {
    const TimeSeries ds = diff(in.log_fx_quarterly, 1);
    const TimeSeries i_m = differential(in.interest_domestic, in.interest_foreign);
    const TimeSeries p_m = differential(in.log_cpi_domestic, in.log_cpi_foreign);
    const TimeSeries m_m = differential(in.log_money_domestic, in.log_money_foreign);
    const TimeSeries pi_m = inflation(p_m);
    const TimeSeries i_q = aggregate_to_quarterly(i_m, config.aggregation);
    const TimeSeries p_q = aggregate_to_quarterly(p_m, config.aggregation);
    const TimeSeries m_q = aggregate_to_quarterly(m_m, config.aggregation);
    const TimeSeries pi_q = inflation(p_q);
    const TimeSeries y_q = differential(in.log_gdp_domestic, in.log_gdp_foreign);
    // Quarters whose three months of monthly inflation all exist.
    const TimeSeries pi_cover = aggregate_to_quarterly(pi_m, Aggregation::LastOfQuarter);

    Period first = ds.start();
    Period last = ds.end();
    for (const TimeSeries* s : {&in.log_fx_quarterly, &i_q, &p_q, &m_q, &pi_q, &y_q, &pi_cover}) {
        first = std::max(first, s->start());
        last = std::min(last, s->end());
    }
    if (clip_first) first = std::max(first, *clip_first);
    if (clip_last) last = std::min(last, *clip_last);
    if (last < first) throw Error(ErrorCode::EmptyOverlap, "no common quarterly span");

    const TimeSeries y_hist = y_q.slice(y_q.start(), last);
    const TimeSeries gap = output_gap(y_hist, config.hp_lambda);
    const Period m0 = first_month(first);
    const Period m1 = last_month(last);

    Dataset data{
        ds.slice(first, last),
        in.log_fx_quarterly.slice(first, last),
        i_m.slice(m0, m1),
        p_m.slice(m0, m1),
        m_m.slice(m0, m1),
        pi_m.slice(m0, m1),
        i_q.slice(first, last),
        p_q.slice(first, last),
        m_q.slice(first, last),
        pi_q.slice(first, last),
        y_q.slice(first, last),
        gap.slice(first, last),
        in.log_gdp_domestic.slice(in.log_gdp_domestic.start(), std::min(last, in.log_gdp_domestic.end())),
        in.log_gdp_foreign.slice(in.log_gdp_foreign.start(), std::min(last, in.log_gdp_foreign.end())),
        in.log_cpi_domestic.slice(in.log_cpi_domestic.start(), std::min(m1, in.log_cpi_domestic.end())),
        in.log_cpi_foreign.slice(in.log_cpi_foreign.start(), std::min(m1, in.log_cpi_foreign.end())),
        config,
        {},
    };
    data.validate();
    return data;
}

Dataset clip_dataset(const Dataset& d, const Period& first, const Period& last) {
    const Period m0 = first_month(first);
    const Period m1 = last_month(last);
    Dataset out{
        d.ds.slice(first, last),
        d.log_fx.slice(first, last),
        d.i_diff_m.slice(m0, m1),
        d.p_diff_m.slice(m0, m1),
        d.m_diff_m.slice(m0, m1),
        d.pi_diff_m.slice(m0, m1),
        d.i_diff_q.slice(first, last),
        d.p_diff_q.slice(first, last),
        d.m_diff_q.slice(first, last),
        d.pi_diff_q.slice(first, last),
        d.y_diff_q.slice(first, last),
        d.ygap_diff_q.slice(first, last),
        d.log_gdp_domestic.slice(d.log_gdp_domestic.start(), std::min(last, d.log_gdp_domestic.end())),
        d.log_gdp_foreign.slice(d.log_gdp_foreign.start(), std::min(last, d.log_gdp_foreign.end())),
        d.log_cpi_domestic.slice(d.log_cpi_domestic.start(), std::min(m1, d.log_cpi_domestic.end())),
        d.log_cpi_foreign.slice(d.log_cpi_foreign.start(), std::min(m1, d.log_cpi_foreign.end())),
        d.config,
        d.metadata,
    };
    out.validate();
    return out;
}

ModelDesign build_design(const ModelSpec& spec, const Dataset& data, const ForecastOptions& options,
                         const TimeSeries* gap) {
    spec.validate();
    ModelDesign design;
    design.intercept = !spec.restrict_alpha_zero;
    if (spec.kind == ModelKind::RandomWalk) return design;

    const int shift = options.timing == FundamentalsTiming::Lagged ? 1 : 0;
    const TimeSeries& gap_series = gap != nullptr ? *gap : data.ygap_diff_q;

    std::vector<Column> cols;
    auto quarterly = [&](const TimeSeries& s, const std::string& name, int extra = 0) {
        cols.push_back({&s, false, shift + extra, quarterly_label(name, shift + extra)});
    };
    auto monthly = [&](const TimeSeries& s, const std::string& name) {
        for (int j = 0; j < kMonthsPerQuarter; ++j) {
            cols.push_back({&s, true, kMonthsPerQuarter * shift + j, monthly_label(name, kMonthsPerQuarter * shift + j)});
        }
    };

    std::optional<Column> money_offset;
    switch (spec.kind) {
        case ModelKind::UIRP: quarterly(data.i_diff_q, "i_diff"); break;
        case ModelKind::PPP: quarterly(data.p_diff_q, "p_diff"); break;
        case ModelKind::MM1:
        case ModelKind::MM2:
            quarterly(data.i_diff_q, "i_diff");
            quarterly(data.y_diff_q, "y_diff");
            if (spec.restrict_money_unity) {
                money_offset = Column{&data.m_diff_q, false, shift, quarterly_label("m_diff", shift)};
            } else {
                quarterly(data.m_diff_q, "m_diff");
            }
            if (spec.kind == ModelKind::MM2) quarterly(data.p_diff_q, "p_diff");
            break;
        case ModelKind::TYLR1:
            quarterly(data.pi_diff_q, "pi_diff");
            quarterly(gap_series, "ygap_diff");
            break;
        case ModelKind::TYLR2:
            quarterly(data.pi_diff_q, "pi_diff");
            quarterly(gap_series, "ygap_diff");
            quarterly(data.i_diff_q, "i_diff", 1);
            break;
        case ModelKind::MF_UIRP: monthly(data.i_diff_m, "i_diff"); break;
        case ModelKind::MF_PPP: monthly(data.p_diff_m, "p_diff"); break;
        case ModelKind::MF_MM1:
        case ModelKind::MF_MM2:
            monthly(data.i_diff_m, "i_diff");
            quarterly(data.y_diff_q, "y_diff");
            monthly(data.m_diff_m, "m_diff");
            if (spec.kind == ModelKind::MF_MM2) monthly(data.p_diff_m, "p_diff");
            break;
        case ModelKind::MF_TYLR1:
            monthly(data.pi_diff_m, "pi_diff");
            quarterly(gap_series, "ygap_diff");
            break;
        case ModelKind::MF_TYLR2:
            monthly(data.pi_diff_m, "pi_diff");
            quarterly(gap_series, "ygap_diff");
            monthly(data.i_diff_m, "i_diff");
            break;
        case ModelKind::RandomWalk: break;
    }

    auto available = [](const Column& c, const Period& target) {
        return c.series->contains(column_period(c, target));
    };

    std::vector<double> values;
    for (Period q = data.first_quarter(); q <= data.last_quarter(); q = q + 1) {
        const bool complete = std::all_of(cols.begin(), cols.end(), [&](const Column& c) { return available(c, q); }) &&
                              (!money_offset || available(*money_offset, q));
        if (!complete) continue;
        for (const auto& c : cols) values.push_back(c.series->at(column_period(c, q)));
        const double offset = money_offset ? money_offset->series->at(column_period(*money_offset, q)) : 0.0;
        design.periods.push_back(q);
        design.offset.push_back(offset);
        design.y.push_back(data.ds.at(q) - offset);
    }

    std::vector<std::string> labels;
    labels.reserve(cols.size());
    for (const auto& c : cols) labels.push_back(c.label);
    design.x = DesignMatrix(static_cast<int>(design.periods.size()), std::move(labels), std::move(values));
    return design;
}

TimeSeries gap_for_target(const Dataset& data, const Period& target, const ForecastOptions& options) {
    if (options.full_sample_gap) return data.ygap_diff_q;
    const Period info = options.timing == FundamentalsTiming::Lagged ? target - 1 : target;
    const TimeSeries y = differential(data.log_gdp_domestic, data.log_gdp_foreign);
    if (info > y.end() || info < y.start()) {
        throw Error(ErrorCode::InsufficientSpan, "no GDP history up to " + info.to_string());
    }
    return output_gap(y.slice(y.start(), info), data.config.hp_lambda);
}

OriginForecast forecast_at_origin(const ModelSpec& spec, const Dataset& data, const Period& origin,
                                  const ForecastOptions& options, std::optional<int> window) {
    spec.validate();
    const Period target = origin + 1;
    if (target > data.last_quarter() || origin < data.first_quarter()) {
        throw Error(ErrorCode::InsufficientSpan, "origin " + origin.to_string() + " outside " +
                                                     data.first_quarter().to_string() + ".." +
                                                     (data.last_quarter() - 1).to_string());
    }
    if (window && *window < 1) throw Error(ErrorCode::InvalidWindow, "window must be positive");

    OriginForecast out{target, 0.0, std::nullopt};
    if (spec.kind == ModelKind::RandomWalk) {
        if (options.rw_in_differences) out.forecast = data.ds.at(origin);
        return out;
    }

    std::optional<TimeSeries> gap;
    if (uses_output_gap(spec.kind)) gap = gap_for_target(data, target, options);
    const ModelDesign design = build_design(spec, data, options, gap ? &*gap : nullptr);

    const auto& periods = design.periods;
    const auto first_it = window ? std::upper_bound(periods.begin(), periods.end(), origin - *window) : periods.begin();
    const auto last_it = std::upper_bound(periods.begin(), periods.end(), origin);
    const auto target_it = std::lower_bound(periods.begin(), periods.end(), target);
    if (target_it == periods.end() || *target_it != target) {
        throw Error(ErrorCode::InsufficientSpan, "regressors unavailable for " + target.to_string());
    }

    const int first = static_cast<int>(first_it - periods.begin());
    const int count = static_cast<int>(last_it - first_it);
    const int params = design.x.cols() + (design.intercept ? 1 : 0);
    if (count < params + 2) {
        throw Error(ErrorCode::InsufficientHistory, std::string(acronym(spec.kind)) + " at " + origin.to_string() +
                                                        ": " + std::to_string(count) + " rows for " +
                                                        std::to_string(params) + " parameters");
    }

    const std::span<const double> y(design.y.data() + first, static_cast<std::size_t>(count));
    out.fit = ols_fit(design.x.row_slice(first, count), y, design.intercept);
    const auto t = static_cast<int>(target_it - periods.begin());
    out.forecast = predict(*out.fit, design.x.row(t)) + design.offset[static_cast<std::size_t>(t)];
    return out;
}

double forecast_one_step(const ModelSpec& spec, const Dataset& data, const Period& origin,
                         const ForecastOptions& options) {
    return forecast_at_origin(spec, data, origin, options).forecast;
}

}  // namespace mfx
