// wepkit: generate prompt corpora, collect responses, score and compare them.

#include "wepkit/gateway.hpp"
#include "wepkit/metrics.hpp"
#include "wepkit/report.hpp"
#include "wepkit/rq1.hpp"
#include "wepkit/rq2.hpp"
#include "wepkit/survey.hpp"
#include "wepkit/text.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

namespace {

using namespace wepkit;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitBackend = 3;

struct UsageError : ConfigError {
    using ConfigError::ConfigError;
};

// key = value lines; '#' starts a comment. Keys are long flag names without
// dashes. Values on the command line win.
void apply_config(CLI::App& sub, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto body = text::trim(line);
        if (body.empty()) continue;
        const auto where = path.string() + ":" + std::to_string(line_no);
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) throw UsageError(where + ": expected key = value");
        const std::string key(text::trim(body.substr(0, eq)));
        std::string value(text::trim(body.substr(eq + 1)));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (key == "config") throw UsageError(where + ": config files cannot include other config files");
        auto* opt = sub.get_option_no_throw("--" + key);
        if (!opt) throw UsageError(where + ": '" + key + "' is not an option of '" + sub.get_name() + "'");
        if (opt->count() > 0) continue;
        if (opt->get_items_expected_max() > 1) {
            for (const auto& part : text::split(value, ',')) opt->add_result(std::string(text::trim(part)));
        } else {
            opt->add_result(value);
        }
        opt->run_callback();
    }
}

void require(const CLI::App& sub, const std::string& flag, bool present) {
    if (!present) throw UsageError(sub.get_name() + ": " + flag + " is required");
}

std::vector<PromptRecord> load_corpora(const std::vector<std::string>& paths) {
    std::vector<PromptRecord> all;
    for (const auto& p : paths) {
        auto part = read_prompts(std::filesystem::path(p));
        all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return all;
}

std::vector<ResponseRecord> load_responses(const std::vector<std::string>& paths) {
    std::vector<ResponseRecord> all;
    for (const auto& p : paths) {
        auto part = read_responses(std::filesystem::path(p));
        all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return all;
}

std::pair<std::string, std::string> split_labelled(const std::string& spec, const std::string& flag) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
        throw UsageError(flag + " expects label=path, got '" + spec + "'");
    }
    return {spec.substr(0, eq), spec.substr(eq + 1)};
}

void write_corpus(const std::string& out, const std::vector<PromptRecord>& corpus) {
    if (out == "-") {
        write_prompts(std::cout, corpus);
    } else {
        write_prompts(std::filesystem::path(out), corpus);
    }
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
    std::string corpus;
    std::vector<std::string> settings{"cnc", "enc", "fcnc", "mcnc"};
    std::vector<std::string> languages{"english"};
    std::vector<std::string> exclude;
    std::string gender;
    std::string mode = "standard";
    std::int64_t numbers_seed = -1;
    std::string out;
};

int cmd_generate(const GenerateArgs& a, const CLI::App& sub) {
    require(sub, "--out", !a.out.empty());
    std::vector<PromptRecord> corpus;
    if (text::iequals(a.corpus, "rq1")) {
        Rq1Config config;
        config.settings.clear();
        config.languages.clear();
        for (const auto& s : a.settings) config.settings.insert(parse_setting(s));
        for (const auto& l : a.languages) config.languages.insert(parse_language(l));
        for (const auto& e : a.exclude) {
            const auto colon = e.find(':');
            if (colon == std::string::npos) throw UsageError("--exclude expects template_id:wep, got '" + e + "'");
            const auto wep = e.substr(colon + 1);
            find_wep(wep);
            config.excluded_pairs.emplace(e.substr(0, colon), wep);
        }
        if (!a.gender.empty()) {
            if (text::iequals(a.gender, "female")) {
                config.gender_subject = Subject::Female;
            } else if (text::iequals(a.gender, "male")) {
                config.gender_subject = Subject::Male;
            } else {
                throw UsageError("--gender must be female or male");
            }
        }
        validate(config);
        corpus = generate_rq1_corpus(config);
    } else if (text::iequals(a.corpus, "rq2")) {
        std::vector<Mode> modes;
        if (text::iequals(a.mode, "both")) {
            modes = {Mode::Standard, Mode::Cot};
        } else {
            modes = {parse_mode(a.mode)};
        }
        for (auto mode : modes) {
            auto part = a.numbers_seed >= 0
                            ? generate_rq2_corpus(mode, sample_numbers(NumbersId::Narrow, a.numbers_seed),
                                                  sample_numbers(NumbersId::Wide, a.numbers_seed))
                            : generate_rq2_corpus(mode);
            corpus.insert(corpus.end(), part.begin(), part.end());
        }
    } else {
        throw UsageError("corpus must be rq1 or rq2");
    }
    write_corpus(a.out, corpus);
    std::cout << corpus.size() << " records\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct RunArgs {
    std::string corpus;
    std::string out;
    std::string mock;
    std::string choice = "is maybe";
    std::uint64_t seed = 0;
    std::string survey;
    std::string backend_name = "openai";
    std::string endpoint = BackendConfig{}.endpoint;
    std::string model = BackendConfig{}.model;
    std::string api_key_env = BackendConfig{}.api_key_env;
    int max_retries = BackendConfig{}.max_retries;
    long timeout_ms = 60000;
    std::size_t parallel = 0;
    std::string cache;
    std::string transcript;
};

int cmd_run(const RunArgs& a, const CLI::App& sub) {
    require(sub, "--corpus", !a.corpus.empty());
    require(sub, "--out", !a.out.empty());
    const auto corpus = read_prompts(std::filesystem::path(a.corpus));

    std::unique_ptr<Respondent> respondent;
    if (!a.mock.empty()) {
        MockSpec spec;
        try {
            spec.kind = parse_mock_kind(a.mock);
        } catch (const ConfigError& e) {
            throw UsageError(e.what());
        }
        spec.choice = a.choice;
        spec.seed = a.seed;
        if (!a.survey.empty()) spec.survey = std::make_shared<const SurveyTable>(load_survey(a.survey));
        respondent = std::make_unique<MockRespondent>(spec);
    } else {
        BackendConfig config;
        config.name = a.backend_name;
        config.endpoint = a.endpoint;
        config.model = a.model;
        config.api_key_env = a.api_key_env;
        config.max_retries = a.max_retries;
        config.request_timeout = std::chrono::milliseconds(a.timeout_ms);
        if (a.parallel) config.parallelism = a.parallel;
        respondent = std::make_unique<HttpChatBackend>(config);
    }

    std::unique_ptr<ResponseCache> cache =
        a.cache.empty() ? std::make_unique<ResponseCache>() : std::make_unique<ResponseCache>(a.cache);
    std::unique_ptr<TranscriptLog> transcript =
        a.transcript.empty() ? std::make_unique<TranscriptLog>() : std::make_unique<TranscriptLog>(a.transcript);
    Gateway gateway(*respondent, *cache, *transcript);
    const auto result = gateway.run_batch(corpus);
    write_responses(std::filesystem::path(a.out), result.responses);

    std::cerr << result.responses.size() << " responses from " << respondent->name() << ": "
              << result.transport_failures << " transport failures, " << result.parse_failures
              << " parse failures, " << result.requests_issued << " requests issued, " << result.cache_hits
              << " cache hits\n";
    return result.transport_failures > 0 ? kExitBackend : kExitOk;
}

// ---------------------------------------------------------------------------

struct ScoreArgs {
    std::vector<std::string> corpus;
    std::vector<std::string> responses;
    std::string out_dir = "score_report";
    std::uint64_t seed = kDefaultBaselineSeed;
    std::size_t replications = kBaselineReplications;
};

int cmd_score(const ScoreArgs& a, const CLI::App& sub) {
    require(sub, "--corpus", !a.corpus.empty());
    require(sub, "--responses", !a.responses.empty());
    const auto prompts = load_corpora(a.corpus);
    const auto responses = load_responses(a.responses);
    const auto report = build_score_report(prompts, responses, {a.seed, a.replications});
    const std::filesystem::path dir(a.out_dir);
    write_text_file(dir / "scores.json", to_json(report).dump(2) + "\n");
    write_text_file(dir / "scores.csv", score_table_csv(report));
    write_text_file(dir / "verdicts.csv", verdict_csv(report));
    write_text_file(dir / "consistency_by_scenario.svg",
                    svg::bar_chart(scenario_panels(report), "Choice consistency by scenario and prompting mode"));
    write_text_file(dir / "consistency_by_choice_set.svg",
                    svg::bar_chart(choice_set_panels(report), "Choice consistency by choice set and numbers range"));

    std::cout << "metric                  mode      score  units  baseline\n";
    for (const auto& m : report.modes) {
        for (const auto& [metric, r] : m.reports) {
            std::printf("%-23s %-8s %6.2f %6zu %9.3f\n", std::string(to_string(metric)).c_str(),
                        std::string(to_string(m.mode)).c_str(), r.score, r.n_units,
                        report.baselines.at(metric).score);
        }
    }
    std::cout << "reports written to " << dir.string() << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct CompareArgs {
    std::string survey;
    std::vector<std::string> corpus;
    std::vector<std::string> responses;  // label=path
    std::vector<std::string> pairs;      // a:b
    std::string split = "none";
    std::string out_dir = "compare_report";
    std::size_t resamples = stats::kDefaultBootstrapResamples;
    std::uint64_t seed = stats::kDefaultBootstrapSeed;
    bool exact = false;
};

int cmd_compare(const CompareArgs& a, const CLI::App&) {
    std::map<std::string, DistributionSource> sources;
    std::vector<std::string> order;
    auto add = [&](DistributionSource s) {
        if (sources.contains(s.label)) throw UsageError("duplicate source label '" + s.label + "'");
        order.push_back(s.label);
        sources.emplace(s.label, std::move(s));
    };
    if (!a.survey.empty()) add(source_from_survey("survey", load_survey(a.survey)));
    if (!a.responses.empty()) {
        if (a.corpus.empty()) throw UsageError("compare: --responses needs --corpus");
        const auto prompts = load_corpora(a.corpus);
        const auto split = parse_split(a.split);
        for (const auto& spec : a.responses) {
            const auto [label, path] = split_labelled(spec, "--responses");
            for (auto& s : split_sources(label, prompts, read_responses(std::filesystem::path(path)), split)) {
                add(std::move(s));
            }
        }
    }
    if (sources.empty()) throw UsageError("compare: give --survey and/or --responses");

    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& p : a.pairs) {
        const auto colon = p.find(':');
        if (colon == std::string::npos) throw UsageError("--pair expects a:b, got '" + p + "'");
        pairs.emplace_back(p.substr(0, colon), p.substr(colon + 1));
    }
    if (pairs.empty()) {
        if (!sources.contains("survey")) throw UsageError("compare: without --survey, name comparisons with --pair");
        for (const auto& label : order) {
            if (label != "survey") pairs.emplace_back(label, "survey");
        }
    }
    std::vector<Comparison> results;
    for (const auto& [x, y] : pairs) {
        for (const auto& l : {x, y}) {
            if (!sources.contains(l)) {
                throw UsageError("unknown source '" + l + "' (available: " + text::join(order, ", ") + ")");
            }
        }
        results.push_back(compare_sources(sources.at(x), sources.at(y), {a.resamples, a.seed, a.exact}));
    }
    if (results.empty()) throw UsageError("compare: nothing to compare");

    const std::filesystem::path dir(a.out_dir);
    nlohmann::json all = nlohmann::json::array();
    std::string csv;
    for (std::size_t i = 0; i < results.size(); ++i) {
        all.push_back(to_json(results[i]));
        auto part = comparison_csv(results[i]);
        if (i) part.erase(0, part.find('\n') + 1);
        csv += part;
    }
    write_text_file(dir / "comparison.json", all.dump(2) + "\n");
    write_text_file(dir / "comparison.csv", csv);
    write_text_file(dir / "kl_heatmap.svg", svg::heat_map(kl_heat_map(results, "KL divergence per WEP")));
    std::vector<DistributionSource> plotted;
    for (const auto& label : order) plotted.push_back(sources.at(label));
    write_text_file(dir / "distributions.svg", distribution_box_plot(plotted, "Estimates per WEP"));

    for (const auto& c : results) {
        std::cout << c.label_a << " vs " << c.label_b << "\n";
        std::cout << "  wep                  med_a  med_b   AMD        U        p    RBC    KS     KL\n";
        for (const auto& r : c.rows) {
            if (r.flagged) {
                std::printf("  %-18s  flagged: %s\n", r.wep.c_str(), r.note.c_str());
                continue;
            }
            std::printf("  %-18s %6.1f %6.1f %5.1f %8.1f %8.4f %6.3f %5.3f %6.3f %s\n", r.wep.c_str(), *r.median_a,
                        *r.median_b, *r.amd, *r.u, *r.p_value, *r.rbc, *r.ks, *r.kl, r.stars.c_str());
        }
    }
    std::cout << "reports written to " << dir.string() << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct BaselineArgs {
    std::vector<std::string> corpus;
    std::string method = "both";
    std::uint64_t seed = kDefaultBaselineSeed;
    std::size_t replications = kBaselineReplications;
    std::string out;
};

int cmd_baseline(const BaselineArgs& a, const CLI::App&) {
    std::vector<PromptRecord> prompts;
    if (a.corpus.empty()) {
        prompts = generate_rq2_corpus(Mode::Standard);
    } else {
        prompts = load_corpora(a.corpus);
    }
    const bool exact = a.method == "exact" || a.method == "both";
    const bool mc = a.method == "mc" || a.method == "both";
    if (!exact && !mc) throw UsageError("--method must be exact, mc or both");

    nlohmann::json out = nlohmann::json::object();
    std::cout << "metric                  five  three     exact   monte-carlo (se)\n";
    for (auto metric : kAllMetrics) {
        nlohmann::json j;
        std::string five = "-", three = "-";
        if (metric != Metric::EmpiricalMonotonicity) {
            j["closed_form"] = {{"five_choices", exact_baseline(metric, 5)}, {"three_choices", exact_baseline(metric, 3)}};
            five = text::format_fixed(exact_baseline(metric, 5), 3);
            three = text::format_fixed(exact_baseline(metric, 3), 3);
        }
        std::string e = "-", m = "-";
        if (exact) {
            const auto est = random_baseline(metric, prompts, BaselineMethod::Exact);
            j["exact"] = est.score;
            e = text::format_fixed(est.score, 3);
        }
        if (mc) {
            const auto est = random_baseline(metric, prompts, BaselineMethod::MonteCarlo, a.seed, a.replications);
            j["monte_carlo"] = {{"score", est.score}, {"standard_error", est.standard_error},
                                {"replications", est.replications}, {"seed", a.seed}};
            m = text::format_fixed(est.score, 3) + " (" + text::format_fixed(est.standard_error, 3) + ")";
        }
        out[std::string(to_string(metric))] = j;
        std::printf("%-23s %6s %6s %9s   %s\n", std::string(to_string(metric)).c_str(), five.c_str(), three.c_str(),
                    e.c_str(), m.c_str());
    }
    if (!a.out.empty()) write_text_file(a.out, out.dump(2) + "\n");
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct ReportArgs {
    std::string survey;
    std::vector<std::string> rq1_corpus;
    std::vector<std::string> rq1_responses;  // label=path
    std::vector<std::string> rq2_corpus;
    std::vector<std::string> rq2_responses;
    std::string out_dir = "report";
    std::size_t resamples = stats::kDefaultBootstrapResamples;
    std::uint64_t seed = stats::kDefaultBootstrapSeed;
};

int cmd_report(const ReportArgs& a, const CLI::App&) {
    BundleInputs in;
    if (!a.survey.empty()) in.survey = load_survey(a.survey);
    if (!a.rq1_responses.empty() && a.rq1_corpus.empty()) throw UsageError("report: --rq1-responses needs --rq1-corpus");
    if (!a.rq2_responses.empty() && a.rq2_corpus.empty()) throw UsageError("report: --rq2-responses needs --rq2-corpus");
    in.rq1_prompts = load_corpora(a.rq1_corpus);
    for (const auto& spec : a.rq1_responses) {
        const auto [label, path] = split_labelled(spec, "--rq1-responses");
        in.rq1.push_back({label, read_responses(std::filesystem::path(path))});
    }
    if (!a.rq2_corpus.empty()) {
        if (a.rq2_responses.empty()) throw UsageError("report: --rq2-corpus needs --rq2-responses");
        in.rq2_prompts = load_corpora(a.rq2_corpus);
        in.rq2_responses = load_responses(a.rq2_responses);
    }
    in.compare.resamples = a.resamples;
    in.compare.seed = a.seed;
    const auto manifest = write_report_bundle(in, a.out_dir);
    for (const auto& f : manifest["figures"]) {
        std::cout << f["id"].get<std::string>() << ": " << f["status"].get<std::string>();
        if (f.contains("reason")) std::cout << " (" << f["reason"].get<std::string>() << ")";
        std::cout << "\n";
    }
    std::cout << "report written to " << a.out_dir << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Estimative-probability evaluation toolkit"};
    app.require_subcommand(1);
    std::map<CLI::App*, std::string> config_paths;
    auto with_config = [&](CLI::App* sub) {
        sub->add_option("--config", config_paths[sub], "key = value file mirroring the long flags");
    };

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write a prompt corpus (JSONL)");
    generate->add_option("corpus", gen.corpus, "rq1 or rq2")->required();
    generate->add_option("--settings", gen.settings, "rq1 settings: cnc,enc,fcnc,mcnc")->delimiter(',');
    generate->add_option("--language", gen.languages, "rq1 languages: english,chinese")->delimiter(',');
    generate->add_option("--exclude", gen.exclude, "rq1 template_id:wep combinations to omit");
    generate->add_option("--gender", gen.gender, "rq1 pronoun for gendered templates: female or male");
    generate->add_option("--mode", gen.mode, "rq2 mode: standard, cot or both");
    generate->add_option("--numbers-seed", gen.numbers_seed, "rq2: draw fresh NUMBERS with this seed");
    generate->add_option("--out", gen.out, "output file, or - for stdout");
    with_config(generate);

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Collect responses for a corpus");
    run_cmd->add_option("--corpus", run.corpus, "prompt corpus (JSONL)");
    run_cmd->add_option("--out", run.out, "responses file (JSONL)");
    run_cmd->add_option("--mock", run.mock, "mock respondent: " + mock_names());
    run_cmd->add_option("--choice", run.choice, "constant_choice: phrase to answer");
    run_cmd->add_option("--seed", run.seed, "uniform_random: seed");
    run_cmd->add_option("--survey", run.survey, "survey_median: survey CSV");
    run_cmd->add_option("--backend-name", run.backend_name, "label recorded with each response");
    run_cmd->add_option("--endpoint", run.endpoint, "chat-completion URL");
    run_cmd->add_option("--model", run.model, "model name");
    run_cmd->add_option("--api-key-env", run.api_key_env, "environment variable holding the API key (empty: none)");
    run_cmd->add_option("--max-retries", run.max_retries, "retries per prompt");
    run_cmd->add_option("--timeout-ms", run.timeout_ms, "request timeout");
    run_cmd->add_option("--parallel", run.parallel, "concurrent requests");
    run_cmd->add_option("--cache", run.cache, "response cache (JSONL), reused across runs");
    run_cmd->add_option("--transcript", run.transcript, "append-only exchange log (JSONL)");
    with_config(run_cmd);

    ScoreArgs score;
    auto* score_cmd = app.add_subcommand("score", "Score choice-consistency responses");
    score_cmd->add_option("--corpus", score.corpus, "prompt corpus file(s)");
    score_cmd->add_option("--responses", score.responses, "responses file(s)");
    score_cmd->add_option("--out-dir", score.out_dir, "output directory");
    score_cmd->add_option("--seed", score.seed, "Monte-Carlo baseline seed");
    score_cmd->add_option("--replications", score.replications, "Monte-Carlo baseline replications");
    with_config(score_cmd);

    CompareArgs cmp;
    auto* compare = app.add_subcommand("compare", "Compare per-WEP probability distributions");
    compare->add_option("--survey", cmp.survey, "survey CSV (source label: survey)");
    compare->add_option("--corpus", cmp.corpus, "estimative prompt corpus file(s)");
    compare->add_option("--responses", cmp.responses, "label=responses.jsonl");
    compare->add_option("--pair", cmp.pairs, "a:b source labels to compare (default: each model vs survey)");
    compare->add_option("--split", cmp.split, "split model sources by none, setting or language");
    compare->add_option("--out-dir", cmp.out_dir, "output directory");
    compare->add_option("--resamples", cmp.resamples, "bootstrap resamples for the rank-biserial CI (0: none)");
    compare->add_option("--seed", cmp.seed, "bootstrap seed");
    compare->add_flag("--exact", cmp.exact, "exact Mann-Whitney p where n1*n2 <= 400");
    with_config(compare);

    BaselineArgs base;
    auto* baseline = app.add_subcommand("baseline", "Random-respondent baselines");
    baseline->add_option("--corpus", base.corpus, "rq2 corpus file(s); default: the standard corpus");
    baseline->add_option("--method", base.method, "exact, mc or both");
    baseline->add_option("--seed", base.seed, "Monte-Carlo seed");
    baseline->add_option("--replications", base.replications, "Monte-Carlo replications");
    baseline->add_option("--out", base.out, "JSON output file");
    with_config(baseline);

    ReportArgs rep;
    auto* report = app.add_subcommand("report", "Write the full figure and table bundle");
    report->add_option("--survey", rep.survey, "survey CSV");
    report->add_option("--rq1-corpus", rep.rq1_corpus, "estimative prompt corpus file(s)");
    report->add_option("--rq1-responses", rep.rq1_responses, "label=responses.jsonl, one per model");
    report->add_option("--rq2-corpus", rep.rq2_corpus, "choice prompt corpus file(s)");
    report->add_option("--rq2-responses", rep.rq2_responses, "choice responses file(s)");
    report->add_option("--out-dir", rep.out_dir, "output directory");
    report->add_option("--resamples", rep.resamples, "bootstrap resamples");
    report->add_option("--seed", rep.seed, "bootstrap seed");
    with_config(report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        if (const auto& path = config_paths[sub]; !path.empty()) apply_config(*sub, path);
        if (sub == generate) return cmd_generate(gen, *sub);
        if (sub == run_cmd) return cmd_run(run, *sub);
        if (sub == score_cmd) return cmd_score(score, *sub);
        if (sub == compare) return cmd_compare(cmp, *sub);
        if (sub == baseline) return cmd_baseline(base, *sub);
        if (sub == report) return cmd_report(rep, *sub);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
