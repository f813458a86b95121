#pragma once

#include "wepkit/records.hpp"
#include "wepkit/templates.hpp"

#include <map>
#include <optional>
#include <set>

namespace wepkit {

inline constexpr std::string_view kRq1InstructionEnglish =
    "Format your answer as a float value between 0 and 1, and make your answer short.";
inline constexpr std::string_view kRq1InstructionChinese =
    "你的输出只有0到1之间的带有两位小数的浮点值。回答问题时直接给出最终答案，不要加入中间思考过程，不要重复问题。";

/// Per-(setting, language, template, WEP) replacement statements for WEPs that
/// do not fit a template slot verbatim.
class GrammarOverrides {
public:
    GrammarOverrides() = default;
    static GrammarOverrides load(const std::filesystem::path& data_dir);
    static const GrammarOverrides& builtin();
    static GrammarOverrides parse(std::istream& in, const std::string& source_name);

    void add(Setting setting, Language language, std::string template_id, std::string wep, std::string statement);
    [[nodiscard]] std::optional<std::string> find(Setting setting, Language language, std::string_view template_id,
                                                  std::string_view wep) const;
    [[nodiscard]] std::size_t size() const { return table_.size(); }

private:
    std::map<std::tuple<Setting, Language, std::string, std::string>, std::string> table_;
};

enum class Subject { Female, Male };

struct Rq1Config {
    std::set<Setting> settings{Setting::CNC, Setting::ENC, Setting::FCNC, Setting::MCNC};
    std::set<Language> languages{Language::English};
    std::set<std::pair<std::string, std::string>> excluded_pairs;  // (template id, canonical WEP)
    std::optional<Subject> gender_subject;  // forces the pronoun of gendered templates
};

/// Throws ConfigError for combinations that have no templates (Chinese outside CNC, empty selections).
void validate(const Rq1Config& config);

struct Statement {
    std::string text;
    bool overridden = false;
};

/// Plain placeholder substitution.
std::string instantiate_statement(const ContextTemplate& t, const Wep& wep, Language language);
/// Substitution honouring the grammar-adjustment table.
Statement instantiate_statement(const ContextTemplate& t, const Wep& wep, Language language,
                                const GrammarOverrides& overrides);

/// The statement as it appears inside the quotation marks of the elicitation frame.
std::string quoted_statement(std::string_view statement, Language language);

PromptRecord build_rq1_prompt(const ContextTemplate& t, const Wep& wep, Language language,
                              const GrammarOverrides& overrides = GrammarOverrides::builtin());

/// Rewrites the subject pronoun of an FCNC/MCNC template.
ContextTemplate with_subject(const ContextTemplate& t, Subject subject);

std::vector<PromptRecord> generate_rq1_corpus(const Rq1Config& config,
                                              const TemplateRegistry& registry = TemplateRegistry::builtin(),
                                              const GrammarOverrides& overrides = GrammarOverrides::builtin());

}  // namespace wepkit
