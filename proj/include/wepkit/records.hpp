#pragma once

#include "wepkit/core.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace wepkit {

struct Rq1Provenance {
    std::string template_id;
    Setting setting = Setting::CNC;
    std::string wep;  // canonical name
    bool overridden = false;  // statement came from the grammar-adjustment table
};

struct Rq2Provenance {
    std::string scenario;  // height | score | sound
    ChoiceSetId choice_set = ChoiceSetId::FiveChoices;
    std::string numbers;   // narrow | wide (or a seeded variant id)
    IntervalKind interval = IntervalKind::BelowLow;
    double level = 0.05;
    int low = 0;
    int high = 0;
    std::vector<int> observations;
};

struct PromptRecord {
    std::string id;
    Corpus corpus = Corpus::Rq1;
    std::string body;
    Language language = Language::English;
    Mode mode = Mode::Standard;
    std::variant<Rq1Provenance, Rq2Provenance> provenance;

    [[nodiscard]] const Rq1Provenance& rq1() const { return std::get<Rq1Provenance>(provenance); }
    [[nodiscard]] const Rq2Provenance& rq2() const { return std::get<Rq2Provenance>(provenance); }
};

struct ParseFailure {
    std::string reason;
    bool ambiguous = false;
    bool operator==(const ParseFailure&) const = default;
};

/// A choice answer, identified by its label within the prompt's choice set.
struct ChoiceAnswer {
    char label = 'A';
    std::size_t rank = 0;
    bool operator==(const ChoiceAnswer&) const = default;
};

using ParsedValue = std::variant<ParseFailure, double, ChoiceAnswer>;

enum class ExchangeStatus { Ok, TransportFailure, HttpError, RateLimited };
std::string_view to_string(ExchangeStatus s);
ExchangeStatus parse_exchange_status(std::string_view s);

struct ResponseRecord {
    std::string prompt_id;
    std::string raw;
    ParsedValue parsed = ParseFailure{"not parsed"};
    bool ambiguous = false;  // first of several conflicting candidates was taken
    std::string backend;
    std::string timestamp;  // ISO-8601 UTC
    ExchangeStatus status = ExchangeStatus::Ok;
    std::string error;

    [[nodiscard]] bool parse_ok() const { return !std::holds_alternative<ParseFailure>(parsed); }
    [[nodiscard]] std::optional<double> probability() const;
    [[nodiscard]] std::optional<std::size_t> choice_rank() const;
};

void validate(const PromptRecord& p);
/// Throws DataError when `r` violates the invariants relative to its prompt.
void validate(const ResponseRecord& r, const PromptRecord& p);

nlohmann::json to_json(const PromptRecord& p);
PromptRecord prompt_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ResponseRecord& r);
ResponseRecord response_from_json(const nlohmann::json& j);

// Line-delimited JSON files.
void write_prompts(std::ostream& out, const std::vector<PromptRecord>& prompts);
void write_prompts(const std::filesystem::path& path, const std::vector<PromptRecord>& prompts);
std::vector<PromptRecord> read_prompts(std::istream& in, const std::string& source_name = "<stream>");
std::vector<PromptRecord> read_prompts(const std::filesystem::path& path);

void write_responses(std::ostream& out, const std::vector<ResponseRecord>& responses);
void write_responses(const std::filesystem::path& path, const std::vector<ResponseRecord>& responses);
std::vector<ResponseRecord> read_responses(std::istream& in, const std::string& source_name = "<stream>");
std::vector<ResponseRecord> read_responses(const std::filesystem::path& path);

}  // namespace wepkit
