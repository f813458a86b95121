#include "wepkit/report.hpp"

#include "wepkit/text.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace wepkit {

namespace {

const std::vector<double>& empty_samples() {
    static const std::vector<double> none;
    return none;
}

nlohmann::json opt(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

std::string csv_num(const std::optional<double>& v) { return v ? text::format_double(*v) : std::string(); }

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

const std::vector<double>& DistributionSource::samples(const std::string& wep) const {
    auto it = values.find(wep);
    return it == values.end() ? empty_samples() : it->second;
}

DistributionSource source_from_survey(const std::string& label, const SurveyTable& table) {
    DistributionSource s;
    s.label = label;
    std::set<std::string> present;
    for (const auto& r : table.rows()) present.insert(r.wep);
    for (const auto& w : wep_registry()) {
        if (present.contains(w.canonical_name)) s.values[w.canonical_name] = wep_distribution(table, w.canonical_name);
    }
    return s;
}

DistributionSource source_from_responses(const std::string& label, const std::vector<PromptRecord>& prompts,
                                         const std::vector<ResponseRecord>& responses, const PromptFilter& filter) {
    std::map<std::string, const PromptRecord*> by_id;
    for (const auto& p : prompts) by_id[p.id] = &p;
    DistributionSource s;
    s.label = label;
    for (const auto& r : responses) {
        auto it = by_id.find(r.prompt_id);
        if (it == by_id.end()) throw DataError("response for unknown prompt " + r.prompt_id);
        const auto& p = *it->second;
        if (p.corpus != Corpus::Rq1) throw DataError("response " + r.prompt_id + " is not an estimative prompt");
        if (filter && !filter(p)) continue;
        validate(r, p);
        const auto& wep = p.rq1().wep;
        if (auto v = r.probability()) {
            s.values[wep].push_back(*v * 100.0);
        } else {
            ++s.failures[wep];
        }
    }
    return s;
}

Comparison compare_sources(const DistributionSource& a, const DistributionSource& b, const ComparisonOptions& options) {
    Comparison c{a.label, b.label, {}};
    for (const auto& w : wep_registry()) {
        ComparisonRow row;
        row.wep = w.canonical_name;
        const auto& xa = a.samples(row.wep);
        const auto& xb = b.samples(row.wep);
        row.n_a = xa.size();
        row.n_b = xb.size();
        if (auto f = a.failures.find(row.wep); f != a.failures.end()) row.failures_a = f->second;
        if (auto f = b.failures.find(row.wep); f != b.failures.end()) row.failures_b = f->second;
        if (xa.empty() || xb.empty()) {
            row.flagged = true;
            row.note = "no parsed values for " + (xa.empty() ? a.label : b.label);
            c.rows.push_back(std::move(row));
            continue;
        }
        const auto med = stats::median_and_amd(xa, xb);
        row.median_a = med.median_a;
        row.median_b = med.median_b;
        row.amd = med.amd;
        stats::MannWhitneyOptions mw;
        mw.exact = options.exact_p && xa.size() * xb.size() <= 400;
        const auto test = stats::mann_whitney_u(xa, xb, mw);
        row.u = test.statistic;
        row.p_value = test.p_value;
        row.rbc = test.effect_size;
        row.rbc_signed = test.signed_effect;
        if (options.resamples > 0) {
            const auto [lo, hi] = stats::rank_biserial_ci(xa, xb, 0.95, options.resamples, options.seed);
            row.rbc_ci_low = lo;
            row.rbc_ci_high = hi;
        }
        row.ks = stats::ks_statistic(xa, xb);
        row.kl = stats::kl_divergence(stats::bin_distribution(xa), stats::bin_distribution(xb));
        row.stars = stats::significance_stars(test.p_value);
        c.rows.push_back(std::move(row));
    }
    return c;
}

nlohmann::json to_json(const Comparison& c) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : c.rows) {
        rows.push_back({
            {"wep", r.wep},
            {"n_a", r.n_a},
            {"n_b", r.n_b},
            {"failures_a", r.failures_a},
            {"failures_b", r.failures_b},
            {"flagged", r.flagged},
            {"note", r.note},
            {"median_a", opt(r.median_a)},
            {"median_b", opt(r.median_b)},
            {"amd", opt(r.amd)},
            {"u", opt(r.u)},
            {"p_value", opt(r.p_value)},
            {"rank_biserial", opt(r.rbc)},
            {"rank_biserial_signed", opt(r.rbc_signed)},
            {"rank_biserial_ci", {opt(r.rbc_ci_low), opt(r.rbc_ci_high)}},
            {"ks", opt(r.ks)},
            {"kl", opt(r.kl)},
            {"stars", r.stars},
        });
    }
    return {
        {"a", c.label_a},
        {"b", c.label_b},
        {"units", {{"probability", "percent"}, {"kl", "nats"}, {"bins", "20 x 5 percentage points"}}},
        {"rows", rows},
    };
}

std::string comparison_csv(const Comparison& c) {
    std::ostringstream out;
    out << "a,b,wep,n_a,n_b,failures_a,failures_b,flagged,median_a,median_b,amd,u,p_value,rank_biserial,"
           "rank_biserial_signed,ci_low,ci_high,ks,kl,stars,note\n";
    for (const auto& r : c.rows) {
        out << csv_field(c.label_a) << ',' << csv_field(c.label_b) << ',' << csv_field(r.wep) << ',' << r.n_a << ','
            << r.n_b << ',' << r.failures_a << ',' << r.failures_b << ',' << (r.flagged ? "true" : "false") << ','
            << csv_num(r.median_a) << ',' << csv_num(r.median_b) << ',' << csv_num(r.amd) << ',' << csv_num(r.u) << ','
            << csv_num(r.p_value) << ',' << csv_num(r.rbc) << ',' << csv_num(r.rbc_signed) << ','
            << csv_num(r.rbc_ci_low) << ',' << csv_num(r.rbc_ci_high) << ',' << csv_num(r.ks) << ','
            << csv_num(r.kl) << ',' << r.stars << ',' << csv_field(r.note) << '\n';
    }
    return out.str();
}

svg::HeatMap kl_heat_map(const std::vector<Comparison>& comparisons, const std::string& title) {
    svg::HeatMap map;
    map.title = title;
    for (const auto& w : wep_registry()) map.row_labels.push_back(w.canonical_name);
    for (const auto& c : comparisons) map.column_labels.push_back(c.label_a + " vs " + c.label_b);
    map.values.assign(map.row_labels.size(), std::vector<std::optional<double>>(comparisons.size()));
    map.annotations.assign(map.row_labels.size(), std::vector<std::string>(comparisons.size()));
    for (std::size_t col = 0; col < comparisons.size(); ++col) {
        for (const auto& row : comparisons[col].rows) {
            const auto idx = wep_index(row.wep);
            if (!idx) continue;
            map.values[*idx][col] = row.kl;
            map.annotations[*idx][col] = row.stars;
        }
    }
    return map;
}

std::string distribution_box_plot(const std::vector<DistributionSource>& sources, const std::string& title) {
    std::vector<std::string> categories;
    for (const auto& w : wep_registry()) categories.push_back(w.canonical_name);
    std::vector<svg::BoxSeries> series;
    for (const auto& s : sources) {
        svg::BoxSeries b;
        b.label = s.label;
        for (const auto& wep : categories) b.samples.push_back(s.samples(wep));
        series.push_back(std::move(b));
    }
    return svg::box_plot(categories, series, title);
}

// ---------------------------------------------------------------------------

ScoreReport build_score_report(const std::vector<PromptRecord>& prompts, const std::vector<ResponseRecord>& responses,
                               const ScoreOptions& options) {
    std::vector<PromptRecord> rq2;
    for (const auto& p : prompts) {
        if (p.corpus == Corpus::Rq2) rq2.push_back(p);
    }
    if (rq2.empty()) throw DataError("corpus has no choice-consistency prompts");
    check_corpus_coverage(rq2);

    ScoreReport report;
    std::map<std::string, const ResponseRecord*> by_id;
    for (const auto& r : responses) by_id[r.prompt_id] = &r;
    for (Mode mode : {Mode::Standard, Mode::Cot}) {
        std::vector<PromptRecord> subset;
        for (const auto& p : rq2) {
            if (p.mode == mode) subset.push_back(p);
        }
        if (subset.empty()) continue;
        std::vector<ResponseRecord> matched;
        ModeScores scores;
        scores.mode = mode;
        for (const auto& p : subset) {
            auto it = by_id.find(p.id);
            if (it == by_id.end()) continue;  // ResponseSet reports the full list of gaps
            matched.push_back(*it->second);
            if (!it->second->parse_ok()) ++scores.parse_failures;
        }
        const ResponseSet set(subset, matched);
        for (auto m : kAllMetrics) scores.reports.emplace(m, score_metric(m, set));
        report.modes.push_back(std::move(scores));
    }

    for (auto m : kAllMetrics) {
        report.baselines[m] = random_baseline(m, rq2, BaselineMethod::MonteCarlo, options.baseline_seed,
                                              options.replications);
        report.exact[m] = random_baseline(m, rq2, BaselineMethod::Exact);
    }

    const ResponseSet all(rq2, responses);
    for (auto m : kAllMetrics) report.pooled.emplace(m, score_metric(m, all));

    auto test = [](Metric m, Stratifier compared, std::string axis, std::string stratum, const MetricReport& x,
                   const MetricReport& y) {
        PairedTest t;
        t.metric = m;
        t.compared = compared;
        t.axis = std::move(axis);
        t.stratum = std::move(stratum);
        try {
            t.test = compare_reports(x, y, compared);
        } catch (const DegenerateError& e) {
            t.note = e.what();
        } catch (const DataError& e) {
            t.note = e.what();
        }
        return t;
    };
    if (report.modes.size() == 2) {
        for (auto m : kAllMetrics) {
            const auto& a = report.modes[0].reports.at(m);
            const auto& b = report.modes[1].reports.at(m);
            report.mode_tests.push_back(test(m, Stratifier::Mode, "all", "all", a, b));
            for (const auto& [value, score] : a.stratified(Stratifier::Scenario)) {
                report.mode_tests.push_back(test(m, Stratifier::Mode, "scenario", value,
                                                 a.filtered(Stratifier::Scenario, value),
                                                 b.filtered(Stratifier::Scenario, value)));
            }
        }
    }
    for (auto m : kAllMetrics) {
        const auto& r = report.pooled.at(m);
        const auto sets = r.stratified(Stratifier::ChoiceSet);
        if (sets.size() != 2) continue;
        const auto five = r.filtered(Stratifier::ChoiceSet, to_string(ChoiceSetId::FiveChoices));
        const auto three = r.filtered(Stratifier::ChoiceSet, to_string(ChoiceSetId::ThreeChoices));
        report.choice_set_tests.push_back(test(m, Stratifier::ChoiceSet, "all", "all", five, three));
        for (const auto& [value, score] : r.stratified(Stratifier::Numbers)) {
            report.choice_set_tests.push_back(test(m, Stratifier::ChoiceSet, "numbers", value,
                                                   five.filtered(Stratifier::Numbers, value),
                                                   three.filtered(Stratifier::Numbers, value)));
        }
    }
    return report;
}

nlohmann::json to_json(const MetricReport& r) {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& i : r.items) items.push_back({{"unit_id", i.unit_id}, {"verdict", i.verdict}});
    nlohmann::json strata = nlohmann::json::object();
    for (auto axis : {Stratifier::Scenario, Stratifier::ChoiceSet, Stratifier::Numbers, Stratifier::Mode}) {
        strata[std::string(to_string(axis))] = r.stratified(axis);
    }
    return {
        {"metric", to_string(r.metric)},
        {"score", r.score},
        {"n_units", r.n_units},
        {"baseline", r.baseline},
        {"stratified", strata},
        {"items", items},
    };
}

namespace {

nlohmann::json to_json(const stats::TestResult& t) {
    return {{"t", t.statistic},          {"df", t.df},           {"p_value", t.p_value},
            {"cohens_d", t.effect_size}, {"mean_difference", t.mean_difference}, {"n_pairs", t.n1},
            {"stars", stats::significance_stars(t.p_value)}};
}

nlohmann::json to_json(const BaselineEstimate& b) {
    return {{"score", b.score}, {"standard_error", b.standard_error}, {"replications", b.replications}};
}

}  // namespace

nlohmann::json to_json(const ScoreReport& r) {
    nlohmann::json modes = nlohmann::json::object();
    for (const auto& m : r.modes) {
        nlohmann::json metrics = nlohmann::json::object();
        for (const auto& [metric, report] : m.reports) metrics[std::string(to_string(metric))] = to_json(report);
        modes[std::string(to_string(m.mode))] = {{"parse_failures", m.parse_failures}, {"metrics", metrics}};
    }
    nlohmann::json baselines = nlohmann::json::object();
    for (const auto& [metric, b] : r.baselines) {
        baselines[std::string(to_string(metric))] = {{"monte_carlo", to_json(b)},
                                                     {"exact", to_json(r.exact.at(metric))}};
    }
    auto tests = [](const std::vector<PairedTest>& list) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& t : list) {
            out.push_back({
                {"metric", to_string(t.metric)},
                {"axis", t.axis},
                {"stratum", t.stratum},
                {"test", t.test ? to_json(*t.test) : nlohmann::json(nullptr)},
                {"note", t.note},
            });
        }
        return out;
    };
    nlohmann::json pooled = nlohmann::json::object();
    for (const auto& [metric, report] : r.pooled) {
        pooled[std::string(to_string(metric))] = {{"score", report.score}, {"n_units", report.n_units}};
    }
    return {{"modes", modes},
            {"pooled", pooled},
            {"baselines", baselines},
            {"standard_vs_cot", tests(r.mode_tests)},
            {"five_vs_three_choices", tests(r.choice_set_tests)}};
}

std::string verdict_csv(const ScoreReport& r) {
    std::ostringstream out;
    out << "metric,unit_id,mode,scenario,choice_set,numbers,detail,verdict,prompt_ids\n";
    for (const auto& m : r.modes) {
        for (const auto& [metric, report] : m.reports) {
            for (const auto& i : report.items) {
                out << to_string(metric) << ',' << csv_field(i.unit_id) << ',' << to_string(i.mode) << ','
                    << csv_field(i.scenario) << ',' << to_string(i.choice_set) << ',' << csv_field(i.numbers) << ','
                    << csv_field(i.detail) << ',' << i.verdict << ',' << csv_field(text::join(i.prompt_ids, " "))
                    << '\n';
            }
        }
    }
    return out.str();
}

std::string score_table_csv(const ScoreReport& r) {
    std::ostringstream out;
    out << "metric,mode,axis,stratum,score,n_units,baseline\n";
    for (const auto& m : r.modes) {
        for (const auto& [metric, report] : m.reports) {
            const auto base = text::format_double(r.baselines.at(metric).score);
            out << to_string(metric) << ',' << to_string(m.mode) << ",all,all," << text::format_double(report.score)
                << ',' << report.n_units << ',' << base << '\n';
            for (auto axis : {Stratifier::Scenario, Stratifier::ChoiceSet, Stratifier::Numbers}) {
                for (const auto& [value, score] : report.stratified(axis)) {
                    const auto part = report.filtered(axis, value);
                    out << to_string(metric) << ',' << to_string(m.mode) << ',' << to_string(axis) << ','
                        << csv_field(value) << ',' << text::format_double(score) << ',' << part.n_units << ','
                        << base << '\n';
                }
            }
        }
    }
    return out.str();
}

namespace {

std::string stars_for(const std::vector<PairedTest>& tests, Metric metric, const std::string& stratum) {
    for (const auto& t : tests) {
        if (t.metric == metric && t.stratum == stratum && t.test) return stats::significance_stars(t.test->p_value);
    }
    return {};
}

// Binomial standard error of a percentage score.
double score_se(const MetricReport& r) {
    if (r.n_units == 0) return 0.0;
    const double p = r.score / 100.0;
    return 100.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(r.n_units));
}

}  // namespace

std::vector<svg::BarPanel> scenario_panels(const ScoreReport& r) {
    std::vector<svg::BarPanel> panels;
    for (auto metric : kAllMetrics) {
        svg::BarPanel panel;
        panel.title = std::string(to_string(metric));
        panel.baseline = r.baselines.at(metric).score;
        for (const auto& [scenario, score] : r.pooled.at(metric).stratified(Stratifier::Scenario)) {
            svg::BarGroup group;
            group.label = scenario;
            for (const auto& m : r.modes) {
                const auto part = m.reports.at(metric).filtered(Stratifier::Scenario, scenario);
                group.bars.push_back({std::string(to_string(m.mode)), part.score, score_se(part)});
            }
            group.annotation = stars_for(r.mode_tests, metric, scenario);
            panel.groups.push_back(std::move(group));
        }
        panels.push_back(std::move(panel));
    }
    return panels;
}

std::vector<svg::BarPanel> choice_set_panels(const ScoreReport& r) {
    std::vector<svg::BarPanel> panels;
    for (auto metric : kAllMetrics) {
        const auto& pooled = r.pooled.at(metric);
        svg::BarPanel panel;
        panel.title = std::string(to_string(metric));
        panel.baseline = r.baselines.at(metric).score;
        for (const auto& [numbers, score] : pooled.stratified(Stratifier::Numbers)) {
            svg::BarGroup group;
            group.label = numbers;
            const auto part = pooled.filtered(Stratifier::Numbers, numbers);
            for (const auto& [set, s] : part.stratified(Stratifier::ChoiceSet)) {
                const auto cell = part.filtered(Stratifier::ChoiceSet, set);
                group.bars.push_back({set, cell.score, score_se(cell)});
            }
            group.annotation = stars_for(r.choice_set_tests, metric, numbers);
            panel.groups.push_back(std::move(group));
        }
        panels.push_back(std::move(panel));
    }
    return panels;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << content;
    if (!out) throw DataError("write failed for " + path.string());
}

}  // namespace wepkit

// ---------------------------------------------------------------------------

namespace wepkit {

SplitBy parse_split(std::string_view s) {
    if (text::iequals(s, "none")) return SplitBy::None;
    if (text::iequals(s, "setting")) return SplitBy::Setting;
    if (text::iequals(s, "language")) return SplitBy::Language;
    throw ConfigError("unknown split '" + std::string(s) + "' (valid: none, setting, language)");
}

std::vector<DistributionSource> split_sources(const std::string& label, const std::vector<PromptRecord>& prompts,
                                              const std::vector<ResponseRecord>& responses, SplitBy split) {
    if (split == SplitBy::None) return {source_from_responses(label, prompts, responses)};
    std::set<std::string> keys;
    std::map<std::string, const PromptRecord*> by_id;
    for (const auto& p : prompts) by_id[p.id] = &p;
    auto key_of = [&](const PromptRecord& p) {
        return split == SplitBy::Setting ? std::string(to_string(p.rq1().setting)) : std::string(to_string(p.language));
    };
    for (const auto& r : responses) {
        auto it = by_id.find(r.prompt_id);
        if (it != by_id.end() && it->second->corpus == Corpus::Rq1) keys.insert(key_of(*it->second));
    }
    std::vector<DistributionSource> out;
    for (const auto& key : keys) {
        out.push_back(source_from_responses(label + "/" + key, prompts, responses,
                                            [&](const PromptRecord& p) { return key_of(p) == key; }));
    }
    return out;
}

namespace {

bool has_any(const DistributionSource& s) {
    for (const auto& [wep, v] : s.values) {
        if (!v.empty()) return true;
    }
    return false;
}

struct FigureWriter {
    std::filesystem::path dir;
    nlohmann::json figures = nlohmann::json::array();

    void skipped(const std::string& id, const std::string& title, const std::string& reason) {
        figures.push_back({{"id", id}, {"title", title}, {"status", "skipped"}, {"reason", reason}});
    }

    void comparisons(const std::string& id, const std::string& title, const std::string& svg,
                     const std::vector<Comparison>& list) {
        nlohmann::json rows = nlohmann::json::array();
        std::string csv;
        for (std::size_t i = 0; i < list.size(); ++i) {
            rows.push_back(to_json(list[i]));
            auto part = comparison_csv(list[i]);
            if (i) part.erase(0, part.find('\n') + 1);
            csv += part;
        }
        write_text_file(dir / (id + ".svg"), svg);
        write_text_file(dir / (id + ".csv"), csv);
        write_text_file(dir / (id + ".json"), rows.dump(2) + "\n");
        figures.push_back({{"id", id},
                           {"title", title},
                           {"status", "ok"},
                           {"svg", id + ".svg"},
                           {"tables", {id + ".csv", id + ".json"}}});
    }
};

DistributionSource filtered_source(const std::string& label, const BundleInputs& in, const LabelledResponses& model,
                                   const PromptFilter& filter) {
    return source_from_responses(label, in.rq1_prompts, model.responses, filter);
}

PromptFilter by(Setting setting, std::optional<Language> language) {
    return [=](const PromptRecord& p) { return p.rq1().setting == setting && (!language || p.language == *language); };
}

}  // namespace

nlohmann::json write_report_bundle(const BundleInputs& in, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    FigureWriter w{dir};
    const bool have_rq1 = !in.rq1.empty() && !in.rq1_prompts.empty();
    std::optional<DistributionSource> human;
    if (in.survey) human = source_from_survey(in.survey_label, *in.survey);

    // fig1: models on gender-neutral concise contexts (all languages) against the survey.
    const std::string t1 = "Estimates per WEP: models vs humans";
    if (!have_rq1 || !human) {
        w.skipped("fig1", t1, !human ? "no survey file" : "no estimative responses");
    } else {
        std::vector<DistributionSource> sources{*human};
        std::vector<Comparison> cmp;
        for (const auto& m : in.rq1) {
            auto s = filtered_source(m.label, in, m, by(Setting::CNC, std::nullopt));
            cmp.push_back(compare_sources(s, *human, in.compare));
            sources.push_back(std::move(s));
        }
        w.comparisons("fig1", t1, distribution_box_plot(sources, t1), cmp);
    }

    // fig2: gendered subjects against the neutral concise context.
    const std::string t2 = "Estimates per WEP: female, male and neutral subjects";
    if (!have_rq1) {
        w.skipped("fig2", t2, "no estimative responses");
    } else {
        std::vector<DistributionSource> sources;
        std::vector<Comparison> cmp;
        for (const auto& m : in.rq1) {
            auto f = filtered_source(m.label + "/female", in, m, by(Setting::FCNC, Language::English));
            auto male = filtered_source(m.label + "/male", in, m, by(Setting::MCNC, Language::English));
            auto cnc = filtered_source(m.label + "/CNC", in, m, by(Setting::CNC, Language::English));
            if (!has_any(f) || !has_any(male)) continue;
            cmp.push_back(compare_sources(f, male, in.compare));
            if (has_any(cnc)) {
                cmp.push_back(compare_sources(male, cnc, in.compare));
                cmp.push_back(compare_sources(f, cnc, in.compare));
            }
            sources.push_back(std::move(f));
            sources.push_back(std::move(male));
            if (has_any(cnc)) sources.push_back(std::move(cnc));
        }
        if (cmp.empty()) {
            w.skipped("fig2", t2, "no responses to gendered prompts");
        } else {
            w.comparisons("fig2", t2, distribution_box_plot(sources, t2), cmp);
        }
    }

    // fig3: narrative against concise contexts (English).
    const std::string t3 = "Estimates per WEP: narrative vs concise contexts";
    if (!have_rq1) {
        w.skipped("fig3", t3, "no estimative responses");
    } else {
        std::vector<DistributionSource> sources;
        std::vector<Comparison> cmp;
        for (const auto& m : in.rq1) {
            auto enc = filtered_source(m.label + "/ENC", in, m, by(Setting::ENC, Language::English));
            auto cnc = filtered_source(m.label + "/CNC", in, m, by(Setting::CNC, Language::English));
            if (!has_any(enc) || !has_any(cnc)) continue;
            cmp.push_back(compare_sources(enc, cnc, in.compare));
            sources.push_back(std::move(enc));
            sources.push_back(std::move(cnc));
        }
        if (cmp.empty()) {
            w.skipped("fig3", t3, "no responses to both narrative and concise prompts");
        } else {
            w.comparisons("fig3", t3, distribution_box_plot(sources, t3), cmp);
        }
    }

    // fig4: KL heat map. Chinese responses against humans, English against
    // Chinese per model, and model pairs in Chinese; English against humans
    // when no Chinese responses exist.
    const std::string t4 = "KL divergence per WEP";
    if (!have_rq1) {
        w.skipped("fig4", t4, "no estimative responses");
    } else {
        std::vector<Comparison> cmp;
        std::vector<DistributionSource> chinese;
        for (const auto& m : in.rq1) {
            auto zh = filtered_source(m.label + "/Chinese", in, m, by(Setting::CNC, Language::Chinese));
            auto en = filtered_source(m.label + "/English", in, m, by(Setting::CNC, Language::English));
            if (has_any(zh)) {
                if (human) cmp.push_back(compare_sources(zh, *human, in.compare));
                if (has_any(en)) cmp.push_back(compare_sources(en, zh, in.compare));
                chinese.push_back(std::move(zh));
            } else if (human && has_any(en)) {
                cmp.push_back(compare_sources(en, *human, in.compare));
            }
        }
        for (std::size_t i = 0; i < chinese.size(); ++i) {
            for (std::size_t j = i + 1; j < chinese.size(); ++j) {
                cmp.push_back(compare_sources(chinese[i], chinese[j], in.compare));
            }
        }
        if (cmp.empty()) {
            w.skipped("fig4", t4, "no comparison pairs available");
        } else {
            w.comparisons("fig4", t4, svg::heat_map(kl_heat_map(cmp, t4)), cmp);
        }
    }

    // fig5 and fig6: choice consistency.
    const std::string t5 = "Choice consistency by scenario and prompting mode";
    const std::string t6 = "Choice consistency by choice set and numbers range";
    if (in.rq2_prompts.empty()) {
        w.skipped("fig5", t5, "no choice-consistency corpus");
        w.skipped("fig6", t6, "no choice-consistency corpus");
    } else {
        const auto report = build_score_report(in.rq2_prompts, in.rq2_responses, in.score);
        write_text_file(dir / "scores.json", to_json(report).dump(2) + "\n");
        write_text_file(dir / "scores.csv", score_table_csv(report));
        write_text_file(dir / "verdicts.csv", verdict_csv(report));
        write_text_file(dir / "fig5.svg", svg::bar_chart(scenario_panels(report), t5));
        write_text_file(dir / "fig6.svg", svg::bar_chart(choice_set_panels(report), t6));
        const nlohmann::json tables = {"scores.csv", "scores.json", "verdicts.csv"};
        w.figures.push_back({{"id", "fig5"}, {"title", t5}, {"status", "ok"}, {"svg", "fig5.svg"}, {"tables", tables}});
        w.figures.push_back({{"id", "fig6"}, {"title", t6}, {"status", "ok"}, {"svg", "fig6.svg"}, {"tables", tables}});
    }

    nlohmann::json manifest = {
        {"figures", w.figures},
        {"units", {{"probability", "percent"}, {"kl", "nats"}, {"consistency", "percent"}}},
        {"stars", {{"*", "p < 0.10"}, {"**", "p < 0.05"}, {"***", "p < 0.01"}}},
    };
    write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
    return manifest;
}

}  // namespace wepkit
