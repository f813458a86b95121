#include "wepkit/rq1.hpp"

#include "wepkit/text.hpp"

#include <algorithm>
#include <fstream>

namespace wepkit {

GrammarOverrides GrammarOverrides::parse(std::istream& in, const std::string& source_name) {
    GrammarOverrides out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (text::trim(line).empty() || line.front() == '#') continue;
        const auto where = source_name + ":" + std::to_string(line_no);
        auto f = text::split(line, '\t');
        if (f.size() != 5) throw DataError(where + ": expected 5 tab-separated fields");
        try {
            find_wep(f[3]);
            out.add(parse_setting(f[0]), parse_language(f[1]), f[2], f[3], f[4]);
        } catch (const ConfigError& e) {
            throw DataError(where + ": " + e.what());
        }
        if (f[4].find(kPlaceholder) != std::string::npos) throw DataError(where + ": override keeps a placeholder");
    }
    return out;
}

GrammarOverrides GrammarOverrides::load(const std::filesystem::path& data_dir) {
    GrammarOverrides out;
    const auto dir = data_dir / "overrides";
    if (!std::filesystem::is_directory(dir)) return out;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ".tsv") files.push_back(e.path());
    }
    std::ranges::sort(files);
    for (const auto& f : files) {
        std::ifstream in(f);
        if (!in) throw DataError("cannot open " + f.string());
        auto part = parse(in, f.filename().string());
        out.table_.merge(part.table_);
    }
    return out;
}

const GrammarOverrides& GrammarOverrides::builtin() {
    static const GrammarOverrides overrides = load(default_data_dir());
    return overrides;
}

void GrammarOverrides::add(Setting setting, Language language, std::string template_id, std::string wep,
                           std::string statement) {
    table_[{setting, language, std::move(template_id), std::move(wep)}] = std::move(statement);
}

std::optional<std::string> GrammarOverrides::find(Setting setting, Language language, std::string_view template_id,
                                                  std::string_view wep) const {
    auto it = table_.find({setting, language, std::string(template_id), std::string(wep)});
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

void validate(const Rq1Config& config) {
    if (config.settings.empty()) throw ConfigError("no context settings selected");
    if (config.languages.empty()) throw ConfigError("no languages selected");
    if (config.languages.contains(Language::Chinese)) {
        for (auto s : config.settings) {
            if (s != Setting::CNC) {
                throw ConfigError("Chinese templates exist only for CNC; cannot combine with " +
                                  std::string(to_string(s)));
            }
        }
    }
    for (const auto& [tid, wep] : config.excluded_pairs) find_wep(wep);
}

namespace {

std::string pair_name(const ContextTemplate& t, const Wep& wep, Language language) {
    return "(" + t.id + ", " + wep.canonical_name + ", " + std::string(to_string(language)) + ")";
}

bool is_word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '\'';
}

std::string swap_pronoun(std::string_view s, Subject subject) {
    const std::string_view upper = subject == Subject::Female ? "She" : "He";
    const std::string_view lower = subject == Subject::Female ? "she" : "he";
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (!is_word_char(s[i])) {
            out += s[i++];
            continue;
        }
        std::size_t j = i;
        while (j < s.size() && is_word_char(s[j])) ++j;
        const auto word = s.substr(i, j - i);
        if (word == "She" || word == "He") {
            out += upper;
        } else if (word == "she" || word == "he") {
            out += lower;
        } else {
            out += word;
        }
        i = j;
    }
    return out;
}

bool gendered(Setting s) { return s == Setting::FCNC || s == Setting::MCNC; }

}  // namespace

std::string instantiate_statement(const ContextTemplate& t, const Wep& wep, Language language) {
    if (t.language != language) {
        throw GenerationError("template " + t.id + " is " + std::string(to_string(t.language)) + ", requested " +
                              std::string(to_string(language)));
    }
    const auto form = surface_form(wep, language);
    if (!form) throw GenerationError("no surface form for " + pair_name(t, wep, language));
    std::string out = t.statement_form;
    const auto pos = out.find(kPlaceholder);
    if (pos == std::string::npos) throw GenerationError("template " + t.id + " has no placeholder");
    out.replace(pos, kPlaceholder.size(), *form);
    return out;
}

Statement instantiate_statement(const ContextTemplate& t, const Wep& wep, Language language,
                                const GrammarOverrides& overrides) {
    auto plain = instantiate_statement(t, wep, language);
    if (auto o = overrides.find(t.setting, language, t.id, wep.canonical_name)) {
        // A template rewritten by with_subject() carries the new pronoun; keep overrides in step.
        if (gendered(t.setting)) {
            const auto subject = t.statement_form.starts_with("He ") ? Subject::Male : Subject::Female;
            return {swap_pronoun(*o, subject), true};
        }
        return {*o, true};
    }
    return {std::move(plain), false};
}

std::string quoted_statement(std::string_view statement, Language language) {
    std::string s(text::trim(statement));
    if (language == Language::Chinese) {
        constexpr std::string_view full_stop = "。";
        if (s.ends_with(full_stop)) s.erase(s.size() - full_stop.size());
        return s;
    }
    if (s.ends_with('.')) {
        // Keep the period of a trailing abbreviation such as "a.m."
        const auto last_space = s.rfind(' ');
        const auto last_word = std::string_view(s).substr(last_space == std::string::npos ? 0 : last_space + 1);
        if (text::count_occurrences(last_word, ".") == 1) s.pop_back();
    }
    return s;
}

PromptRecord build_rq1_prompt(const ContextTemplate& t, const Wep& wep, Language language,
                              const GrammarOverrides& overrides) {
    const auto statement = instantiate_statement(t, wep, language, overrides);
    const auto quoted = quoted_statement(statement.text, language);
    std::string body;
    if (language == Language::English) {
        body = std::string(kRq1InstructionEnglish) + " Given the statement \"" + quoted +
               "\", with what probability do you think " + t.question_form + "?";
    } else {
        body = std::string(kRq1InstructionChinese) + "根据陈述“" + quoted + "”，您认为" + t.question_form +
               "的概率是多少？";
    }
    std::string wep_slug = wep.canonical_name;
    std::ranges::replace(wep_slug, ' ', '_');
    PromptRecord p;
    p.id = "rq1/" + text::to_lower(to_string(t.setting)) + "/" + text::to_lower(to_string(language)) + "/" + t.id +
           "/" + wep_slug;
    p.corpus = Corpus::Rq1;
    p.body = std::move(body);
    p.language = language;
    p.mode = Mode::Standard;
    p.provenance = Rq1Provenance{t.id, t.setting, wep.canonical_name, statement.overridden};
    return p;
}

ContextTemplate with_subject(const ContextTemplate& t, Subject subject) {
    if (!gendered(t.setting)) return t;
    ContextTemplate out = t;
    out.statement_form = swap_pronoun(t.statement_form, subject);
    out.question_form = swap_pronoun(t.question_form, subject);
    return out;
}

std::vector<PromptRecord> generate_rq1_corpus(const Rq1Config& config, const TemplateRegistry& registry,
                                              const GrammarOverrides& overrides) {
    validate(config);
    std::vector<PromptRecord> out;
    for (auto setting : kAllSettings) {
        if (!config.settings.contains(setting)) continue;
        for (auto language : {Language::English, Language::Chinese}) {
            if (!config.languages.contains(language)) continue;
            for (auto t : registry.select(setting, language)) {
                if (config.gender_subject) t = with_subject(t, *config.gender_subject);
                for (const auto& wep : wep_registry()) {
                    if (config.excluded_pairs.contains({t.id, wep.canonical_name})) continue;
                    out.push_back(build_rq1_prompt(t, wep, language, overrides));
                }
            }
        }
    }
    return out;
}

}  // namespace wepkit
