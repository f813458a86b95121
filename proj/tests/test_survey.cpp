#include "wepkit/core.hpp"
#include "wepkit/survey.hpp"

#include <doctest.h>

#include <set>
#include <sstream>

using namespace wepkit;

namespace {

SurveyTable parse(const std::string& s) {
    std::istringstream in(s);
    return parse_survey(in, "s.csv");
}

std::string error_of(const std::string& s) {
    try {
        parse(s);
    } catch (const DataError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_SUITE("survey") {

TEST_CASE("round trip") {
    const auto t = parse("respondent_id,wep,probability\nr2,likely,70\nr1,likely,65.5\nr1,\"about even\",50\n");
    REQUIRE(t.rows().size() == 3);
    CHECK(t.respondent_count("likely") == 2);
    std::ostringstream out;
    write_survey(out, t);
    const auto again = parse(out.str());
    REQUIRE(again.rows().size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(again.rows()[i].respondent_id == t.rows()[i].respondent_id);
        CHECK(again.rows()[i].wep == t.rows()[i].wep);
        CHECK(again.rows()[i].probability == t.rows()[i].probability);
    }
}

TEST_CASE("distribution is ordered by respondent") {
    const auto t = parse("respondent_id,wep,probability\nr3,likely,10\nr1,likely,30\nr2,likely,20\n");
    CHECK(wep_distribution(t, "likely") == std::vector<double>{30, 20, 10});
    CHECK_THROWS_AS(wep_distribution(t, "unlikely"), DataError);
    CHECK_THROWS_AS(wep_distribution(t, "nonsense"), ConfigError);
}

TEST_CASE("errors carry the line number") {
    const std::string head = "respondent_id,wep,probability\n";
    CHECK(error_of(head + "r1,likely,70\nr2,likely,170\n").find("s.csv:3") != std::string::npos);
    CHECK(error_of(head + "r1,likely,abc\n").find("s.csv:2") != std::string::npos);
    CHECK(error_of(head + "r1,likely\n").find("expected 3 fields") != std::string::npos);
    CHECK(error_of(head + "r1,likely,-1\n").find("outside") != std::string::npos);
    CHECK(error_of("id,wep,p\nr1,likely,5\n").find("s.csv:1") != std::string::npos);
}

TEST_CASE("unknown WEP lists the valid names") {
    const auto msg = error_of("respondent_id,wep,probability\nr1,maybe so,70\n");
    CHECK(msg.find("s.csv:2") != std::string::npos);
    CHECK(msg.find("chances are slight") != std::string::npos);
}

TEST_CASE("empty input") {
    CHECK(error_of("").find("empty") != std::string::npos);
    CHECK(error_of("respondent_id,wep,probability\n").find("no rows") != std::string::npos);
}

TEST_CASE("CRLF and BOM are tolerated") {
    const auto t = parse("\xEF\xBB\xBFrespondent_id,wep,probability\r\nr1,likely,70\r\n");
    CHECK(t.rows().size() == 1);
}

TEST_CASE("synthetic fixture loads") {
    const auto t = load_survey(std::filesystem::path(WEPKIT_TEST_DATA) / "synthetic_survey.csv");
    CHECK(t.rows().size() == kExpectedRespondents * wep_registry().size());
    for (const auto& w : wep_registry()) CHECK(t.respondent_count(w.canonical_name) == kExpectedRespondents);
    std::set<std::string> ids;
    for (const auto& r : t.rows()) ids.insert(r.respondent_id);
    CHECK(ids.size() == kExpectedRespondents);
}

}
