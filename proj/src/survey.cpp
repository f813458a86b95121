#include "wepkit/survey.hpp"

#include "wepkit/text.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>

namespace wepkit {

namespace {

// Minimal RFC 4180 field splitter: WEP names never contain commas, but quoted
// fields are accepted for files exported by spreadsheet tools.
std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

SurveyTable::SurveyTable(std::vector<SurveyRow> rows) : rows_(std::move(rows)) {}

std::size_t SurveyTable::respondent_count(std::string_view wep) const {
    return static_cast<std::size_t>(std::ranges::count_if(rows_, [&](const SurveyRow& r) { return r.wep == wep; }));
}

SurveyTable parse_survey(std::istream& in, const std::string& source_name) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<SurveyRow> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        if (text::trim(line).empty()) continue;
        const auto where = source_name + ":" + std::to_string(line_no);
        if (!have_header) {
            if (text::trim(line) != kSurveyHeader) {
                throw DataError(where + ": expected header '" + std::string(kSurveyHeader) + "'");
            }
            have_header = true;
            continue;
        }
        auto f = split_csv(line);
        if (f.size() != 3) throw DataError(where + ": expected 3 fields, got " + std::to_string(f.size()));
        SurveyRow row;
        row.respondent_id = std::string(text::trim(f[0]));
        row.wep = std::string(text::trim(f[1]));
        if (row.respondent_id.empty()) throw DataError(where + ": empty respondent_id");
        if (!wep_index(row.wep)) {
            try {
                find_wep(row.wep);
            } catch (const ConfigError& e) {
                throw DataError(where + ": " + e.what());
            }
        }
        const auto num = text::trim(f[2]);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
        if (ec != std::errc{} || ptr != num.data() + num.size()) {
            throw DataError(where + ": probability '" + std::string(num) + "' is not a number");
        }
        if (!(v >= 0.0 && v <= 100.0)) {
            throw DataError(where + ": probability " + std::string(num) + " is outside [0, 100]");
        }
        row.probability = v;
        rows.push_back(std::move(row));
    }
    if (!have_header) throw DataError(source_name + ": empty survey file");
    if (rows.empty()) throw DataError(source_name + ": survey has a header but no rows");
    return SurveyTable(std::move(rows));
}

SurveyTable load_survey(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open survey file " + path.string());
    return parse_survey(in, path.string());
}

void write_survey(std::ostream& out, const SurveyTable& table) {
    out << kSurveyHeader << '\n';
    for (const auto& r : table.rows()) {
        out << csv_field(r.respondent_id) << ',' << csv_field(r.wep) << ',' << text::format_double(r.probability)
            << '\n';
    }
}

std::vector<double> wep_distribution(const SurveyTable& table, std::string_view wep) {
    find_wep(wep);
    std::vector<const SurveyRow*> rows;
    for (const auto& r : table.rows()) {
        if (r.wep == wep) rows.push_back(&r);
    }
    if (rows.empty()) throw DataError("survey has no responses for '" + std::string(wep) + "'");
    std::ranges::stable_sort(rows, [](const SurveyRow* a, const SurveyRow* b) { return a->respondent_id < b->respondent_id; });
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto* r : rows) out.push_back(r->probability);
    return out;
}

}  // namespace wepkit
