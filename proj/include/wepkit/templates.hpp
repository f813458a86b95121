#pragma once

#include "wepkit/core.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace wepkit {

inline constexpr std::string_view kPlaceholder = "{}";

struct ContextTemplate {
    std::string id;
    Setting setting;
    Language language;
    std::string statement_form;  // exactly one placeholder
    std::string question_form;   // de-instantiated, grammar already fixed
};

/// Directory holding templates/, overrides/ and numbers/. Resolution order:
/// WEPKIT_DATA_DIR environment variable, then the directory baked in at build time.
std::filesystem::path default_data_dir();

/// Parses one tab-separated template table. Lines starting with '#' and blank
/// lines are skipped. Throws DataError naming file and line on any violation.
std::vector<ContextTemplate> parse_template_table(std::istream& in, const std::string& source_name);

class TemplateRegistry {
public:
    /// Loads every *.tsv under `data_dir/templates`.
    static TemplateRegistry load(const std::filesystem::path& data_dir);
    static const TemplateRegistry& builtin();

    explicit TemplateRegistry(std::vector<ContextTemplate> templates);

    [[nodiscard]] const std::vector<ContextTemplate>& all() const { return templates_; }
    /// Templates of one setting and language, sorted by id.
    [[nodiscard]] std::vector<ContextTemplate> select(Setting setting, Language language) const;
    [[nodiscard]] const ContextTemplate& find(Setting setting, Language language, std::string_view id) const;

private:
    std::vector<ContextTemplate> templates_;
};

/// Word length of a template with the placeholder removed. Gendered templates
/// are measured in their shared "She / He" table form.
std::size_t template_word_length(const ContextTemplate& t);

}  // namespace wepkit
