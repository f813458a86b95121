#include "wepkit/parser.hpp"
#include "wepkit/rq1.hpp"
#include "wepkit/rq2.hpp"

#include <doctest.h>

using namespace wepkit;

namespace {

std::optional<double> prob(std::string_view raw) {
    const auto r = parse_probability(raw);
    if (const auto* v = std::get_if<double>(&r.value)) return *v;
    return std::nullopt;
}

std::optional<char> label(std::string_view raw, ChoiceSetId id = ChoiceSetId::FiveChoices, Mode mode = Mode::Standard) {
    const auto r = parse_choice(raw, choice_set(id), mode);
    if (const auto* c = std::get_if<ChoiceAnswer>(&r.value)) return c->label;
    return std::nullopt;
}

}  // namespace

TEST_SUITE("parser") {

TEST_CASE("plain probabilities") {
    CHECK(*prob("0.7") == doctest::Approx(0.7));
    CHECK(*prob("0.70\n") == doctest::Approx(0.7));
    CHECK(*prob("The probability is 0.85.") == doctest::Approx(0.85));
    CHECK(*prob(".25") == doctest::Approx(0.25));
    CHECK(*prob("1") == doctest::Approx(1.0));
    CHECK(*prob("0") == doctest::Approx(0.0));
}

TEST_CASE("percentages are normalised") {
    CHECK(*prob("70%") == doctest::Approx(0.7));
    CHECK(*prob("about 75 percent") == doctest::Approx(0.75));
    CHECK(*prob("5 %") == doctest::Approx(0.05));
}

TEST_CASE("unusable answers fail") {
    CHECK_FALSE(prob("I cannot answer this question."));
    CHECK_FALSE(prob(""));
    CHECK_FALSE(prob("1.2"));
    CHECK_FALSE(prob("-0.3"));
    CHECK_FALSE(prob("150%"));
}

TEST_CASE("conflicting numbers keep the first and flag ambiguity") {
    const auto r = parse_probability("0.6 or maybe 0.7");
    REQUIRE(r.ok());
    CHECK(std::get<double>(r.value) == doctest::Approx(0.6));
    CHECK(r.ambiguous);
    CHECK_FALSE(parse_probability("0.6, i.e. 0.6").ambiguous);
}

TEST_CASE("choice by label") {
    CHECK(*label("C") == 'C');
    CHECK(*label("C.is maybe") == 'C');
    CHECK(*label("c) is maybe") == 'C');
    CHECK(*label("E.") == 'E');
    CHECK(*label("B", ChoiceSetId::ThreeChoices) == 'B');
}

TEST_CASE("choice by phrase uses the longest match") {
    CHECK(*label("is almost certainly not") == 'E');
    CHECK(*label("The specimen's height is almost certainly below 99.") == 'A');
    CHECK(*label("is likely to be") == 'B');
    CHECK(*label("is likely to be", ChoiceSetId::ThreeChoices) == 'A');
    CHECK(*label("is unlikely to be", ChoiceSetId::ThreeChoices) == 'C');
}

TEST_CASE("choices that do not belong to the set or conflict fail") {
    CHECK_FALSE(label("is almost certainly", ChoiceSetId::ThreeChoices));
    CHECK_FALSE(label("D", ChoiceSetId::ThreeChoices));
    CHECK_FALSE(label("A.is maybe"));
    CHECK_FALSE(label("is maybe or is likely to be"));
    CHECK_FALSE(label("I have no idea."));
}

TEST_CASE("chain-of-thought answers are read after the final marker") {
    CHECK(*label("A looks tempting, but 12 of 20 are below. I choose: C.is maybe", ChoiceSetId::FiveChoices, Mode::Cot) ==
          'C');
    CHECK(*label("First I choose: A. On reflection, I choose: D", ChoiceSetId::FiveChoices, Mode::Cot) == 'D');
    CHECK_FALSE(label("The share is 0.6, so C.is maybe", ChoiceSetId::FiveChoices, Mode::Cot));
}

TEST_CASE("dispatch on the prompt") {
    const auto rq2 = generate_rq2_corpus(Mode::Standard).front();
    CHECK(std::holds_alternative<ChoiceAnswer>(parse_response("B.is likely to be", rq2).value));
    const auto& t = TemplateRegistry::builtin().find(Setting::CNC, Language::English, "cnc-02");
    const auto rq1 = build_rq1_prompt(t, find_wep("likely"), Language::English);
    CHECK(std::get<double>(parse_response("0.7", rq1).value) == doctest::Approx(0.7));
}

}
