#pragma once

#include "wepkit/core.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace wepkit {

inline constexpr std::string_view kSurveyHeader = "respondent_id,wep,probability";
inline constexpr std::size_t kExpectedRespondents = 123;

struct SurveyRow {
    std::string respondent_id;
    std::string wep;     // canonical name
    double probability;  // percent
};

class SurveyTable {
public:
    SurveyTable() = default;
    explicit SurveyTable(std::vector<SurveyRow> rows);

    [[nodiscard]] const std::vector<SurveyRow>& rows() const { return rows_; }
    [[nodiscard]] std::size_t respondent_count(std::string_view wep) const;

private:
    std::vector<SurveyRow> rows_;
};

/// Header must be exactly "respondent_id,wep,probability". Rejects unknown
/// WEPs and probabilities outside [0, 100] with the offending line number.
SurveyTable parse_survey(std::istream& in, const std::string& source_name = "<stream>");
SurveyTable load_survey(const std::filesystem::path& path);

void write_survey(std::ostream& out, const SurveyTable& table);

/// Values for one WEP ordered by respondent_id. Throws DataError when the WEP
/// has no rows.
std::vector<double> wep_distribution(const SurveyTable& table, std::string_view wep);

}  // namespace wepkit
