#include "wepkit/templates.hpp"

#include "wepkit/text.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>

#ifndef WEPKIT_DATA_DIR
#define WEPKIT_DATA_DIR "data"
#endif

namespace wepkit {

std::filesystem::path default_data_dir() {
    if (const char* env = std::getenv("WEPKIT_DATA_DIR"); env && *env) return env;
    return WEPKIT_DATA_DIR;
}

std::vector<ContextTemplate> parse_template_table(std::istream& in, const std::string& source_name) {
    std::vector<ContextTemplate> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (text::trim(line).empty() || line.front() == '#') continue;
        const auto where = source_name + ":" + std::to_string(line_no);
        auto fields = text::split(line, '\t');
        if (fields.size() != 5) {
            throw DataError(where + ": expected 5 tab-separated fields, got " + std::to_string(fields.size()));
        }
        ContextTemplate t;
        t.id = fields[0];
        try {
            t.setting = parse_setting(fields[1]);
            t.language = parse_language(fields[2]);
        } catch (const ConfigError& e) {
            throw DataError(where + ": " + e.what());
        }
        t.statement_form = fields[3];
        t.question_form = fields[4];
        if (t.id.empty()) throw DataError(where + ": empty template id");
        if (text::count_occurrences(t.statement_form, kPlaceholder) != 1) {
            throw DataError(where + ": statement_form must contain exactly one placeholder");
        }
        if (t.question_form.find(kPlaceholder) != std::string::npos) {
            throw DataError(where + ": question_form must not contain a placeholder");
        }
        if (text::trim(t.question_form).empty()) throw DataError(where + ": empty question_form");
        out.push_back(std::move(t));
    }
    return out;
}

TemplateRegistry::TemplateRegistry(std::vector<ContextTemplate> templates) : templates_(std::move(templates)) {
    std::set<std::tuple<Setting, Language, std::string>> seen;
    for (const auto& t : templates_) {
        if (t.language == Language::Chinese && t.setting != Setting::CNC) {
            throw DataError("template " + t.id + ": Chinese templates exist only for CNC");
        }
        if (!seen.emplace(t.setting, t.language, t.id).second) {
            throw DataError("duplicate template id " + t.id + " in " + std::string(to_string(t.setting)) + "/" +
                            std::string(to_string(t.language)));
        }
    }
    std::ranges::sort(templates_, [](const ContextTemplate& a, const ContextTemplate& b) {
        return std::tie(a.setting, a.language, a.id) < std::tie(b.setting, b.language, b.id);
    });
}

TemplateRegistry TemplateRegistry::load(const std::filesystem::path& data_dir) {
    const auto dir = data_dir / "templates";
    if (!std::filesystem::is_directory(dir)) throw DataError("template directory not found: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".tsv") files.push_back(entry.path());
    }
    std::ranges::sort(files);
    std::vector<ContextTemplate> all;
    for (const auto& f : files) {
        std::ifstream in(f);
        if (!in) throw DataError("cannot open " + f.string());
        auto part = parse_template_table(in, f.filename().string());
        all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return TemplateRegistry(std::move(all));
}

const TemplateRegistry& TemplateRegistry::builtin() {
    static const TemplateRegistry registry = load(default_data_dir());
    return registry;
}

std::vector<ContextTemplate> TemplateRegistry::select(Setting setting, Language language) const {
    std::vector<ContextTemplate> out;
    for (const auto& t : templates_) {
        if (t.setting == setting && t.language == language) out.push_back(t);
    }
    return out;
}

const ContextTemplate& TemplateRegistry::find(Setting setting, Language language, std::string_view id) const {
    for (const auto& t : templates_) {
        if (t.setting == setting && t.language == language && t.id == id) return t;
    }
    throw ConfigError("no template " + std::string(id) + " for " + std::string(to_string(setting)) + "/" +
                      std::string(to_string(language)));
}

std::size_t template_word_length(const ContextTemplate& t) {
    std::string form = t.statement_form;
    if (t.setting == Setting::FCNC || t.setting == Setting::MCNC) {
        for (std::string_view subject : {"She ", "He "}) {
            if (form.starts_with(subject)) {
                form = "She / He " + form.substr(subject.size());
                break;
            }
        }
    }
    const auto pos = form.find(kPlaceholder);
    form.erase(pos, kPlaceholder.size());
    return text::word_count(form);
}

}  // namespace wepkit
