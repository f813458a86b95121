#include "wepkit/rq1.hpp"
#include "wepkit/text.hpp"

#include <doctest.h>

#include <numeric>
#include <set>
#include <sstream>

using namespace wepkit;

namespace {

double mean_length(Setting s) {
    const auto ts = TemplateRegistry::builtin().select(s, Language::English);
    double total = 0.0;
    for (const auto& t : ts) total += static_cast<double>(template_word_length(t));
    return total / static_cast<double>(ts.size());
}

std::string thrown_message(const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_SUITE("templates") {

TEST_CASE("template counts per setting and language") {
    const auto& reg = TemplateRegistry::builtin();
    CHECK(reg.select(Setting::CNC, Language::English).size() == 15);
    CHECK(reg.select(Setting::ENC, Language::English).size() == 11);
    CHECK(reg.select(Setting::FCNC, Language::English).size() == 10);
    CHECK(reg.select(Setting::MCNC, Language::English).size() == 10);
    CHECK(reg.select(Setting::CNC, Language::Chinese).size() == 15);
    CHECK(reg.select(Setting::ENC, Language::Chinese).empty());
    CHECK(reg.all().size() == 61);
}

TEST_CASE("mean word lengths by setting") {
    CHECK(mean_length(Setting::CNC) == doctest::Approx(7.1).epsilon(0.5 / 7.1));
    CHECK(mean_length(Setting::ENC) == doctest::Approx(24.3).epsilon(0.5 / 24.3));
    CHECK(mean_length(Setting::FCNC) == doctest::Approx(8.6).epsilon(0.5 / 8.6));
    CHECK(mean_length(Setting::MCNC) == doctest::Approx(8.6).epsilon(0.5 / 8.6));
}

TEST_CASE("gendered templates share ids and differ only in the subject") {
    const auto& reg = TemplateRegistry::builtin();
    const auto f = reg.select(Setting::FCNC, Language::English);
    const auto m = reg.select(Setting::MCNC, Language::English);
    REQUIRE(f.size() == m.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(f[i].id == m[i].id);
        CHECK(f[i].statement_form.starts_with("She "));
        CHECK(m[i].statement_form.starts_with("He "));
        CHECK(f[i].statement_form.substr(4) == m[i].statement_form.substr(3));
        CHECK(template_word_length(f[i]) == template_word_length(m[i]));
    }
}

TEST_CASE("every template has one placeholder and an uninstantiated question") {
    for (const auto& t : TemplateRegistry::builtin().all()) {
        CHECK(text::count_occurrences(t.statement_form, kPlaceholder) == 1);
        CHECK(t.question_form.find(kPlaceholder) == std::string::npos);
    }
}

TEST_CASE("malformed template rows name file and line") {
    auto parse = [](const std::string& body) {
        std::istringstream in(body);
        return parse_template_table(in, "t.tsv");
    };
    CHECK(thrown_message([&] { parse("# header\nx\tCNC\tEnglish\tA {} b.\n"); }).starts_with("t.tsv:2"));
    CHECK(thrown_message([&] { parse("x\tCNC\tEnglish\tA {} {} b.\ta b\n"); }).find("exactly one") !=
          std::string::npos);
    CHECK(thrown_message([&] { parse("x\tCNC\tEnglish\tA b.\ta b\n"); }).find("exactly one") != std::string::npos);
    CHECK(thrown_message([&] { parse("x\tCNC\tEnglish\tA {} b.\ta {} b\n"); }).find("question_form") !=
          std::string::npos);
    CHECK(thrown_message([&] { parse("x\tXNC\tEnglish\tA {} b.\ta b\n"); }).starts_with("t.tsv:1"));
}

TEST_CASE("registry rejects Chinese outside CNC and duplicate ids") {
    ContextTemplate zh{"enc-x", Setting::ENC, Language::Chinese, "他{}来", "他来"};
    CHECK_THROWS_AS(TemplateRegistry({zh}), DataError);
    ContextTemplate a{"cnc-x", Setting::CNC, Language::English, "A {} b.", "a b"};
    CHECK_THROWS_AS(TemplateRegistry({a, a}), DataError);
    CHECK_NOTHROW(TemplateRegistry({a}));
}

}

TEST_SUITE("rq1") {

TEST_CASE("English example prompt") {
    const auto& t = TemplateRegistry::builtin().find(Setting::CNC, Language::English, "cnc-02");
    const auto p = build_rq1_prompt(t, find_wep("probably"), Language::English);
    CHECK(p.body ==
          "Format your answer as a float value between 0 and 1, and make your answer short. Given the statement "
          "\"They will probably launch before us\", with what probability do you think they will launch before us?");
    CHECK(p.id == "rq1/cnc/english/cnc-02/probably");
    CHECK(p.rq1().wep == "probably");
    CHECK_FALSE(p.rq1().overridden);
}

TEST_CASE("Chinese example uses the frame's polite pronoun") {
    const auto& t = TemplateRegistry::builtin().find(Setting::CNC, Language::Chinese, "cnc-02");
    const auto p = build_rq1_prompt(t, find_wep("probably"), Language::Chinese);
    CHECK(p.body == std::string(kRq1InstructionChinese) +
                        "根据陈述“他们很可能会在我们之前发布”，您认为他们在我们之前发布的概率是多少？");
    CHECK(p.language == Language::Chinese);
}

TEST_CASE("grammar overrides are applied and flagged") {
    const auto& t = TemplateRegistry::builtin().find(Setting::CNC, Language::English, "cnc-01");
    const auto s = instantiate_statement(t, find_wep("almost certain"), Language::English, GrammarOverrides::builtin());
    CHECK(s.overridden);
    CHECK(s.text == "It is almost certain that the film festival attracts a large audience.");
    CHECK(instantiate_statement(t, find_wep("almost certain"), Language::English) ==
          "The film festival almost certain attracts a large audience.");
    const auto plain = instantiate_statement(t, find_wep("probably"), Language::English, GrammarOverrides::builtin());
    CHECK_FALSE(plain.overridden);
    CHECK(plain.text == "The film festival probably attracts a large audience.");
}

TEST_CASE("override table parse errors") {
    std::istringstream bad("CNC\tEnglish\tcnc-01\tperhaps\tX.\n");
    CHECK_THROWS_AS(GrammarOverrides::parse(bad, "o.tsv"), DataError);
    std::istringstream ok("# c\nCNC\tEnglish\tcnc-01\tprobably\tThey surely do.\n");
    const auto table = GrammarOverrides::parse(ok, "o.tsv");
    CHECK(table.size() == 1);
    CHECK(*table.find(Setting::CNC, Language::English, "cnc-01", "probably") == "They surely do.");
}

TEST_CASE("quoted statements keep abbreviations") {
    CHECK(quoted_statement("They will probably launch before us.", Language::English) ==
          "They will probably launch before us");
    CHECK(quoted_statement("She probably wakes up at 6 a.m.", Language::English) == "She probably wakes up at 6 a.m.");
    CHECK(quoted_statement("他们很可能会在我们之前发布。", Language::Chinese) == "他们很可能会在我们之前发布");
}

TEST_CASE("corpus sizes") {
    Rq1Config all;
    CHECK(generate_rq1_corpus(all).size() == 782);

    Rq1Config zh;
    zh.settings = {Setting::CNC};
    zh.languages = {Language::Chinese};
    CHECK(generate_rq1_corpus(zh).size() == 255);

    Rq1Config two;
    two.settings = {Setting::ENC, Setting::FCNC};
    CHECK(generate_rq1_corpus(two).size() == 357);
}

TEST_CASE("exclusion list removes exactly the named combinations") {
    Rq1Config c;
    c.settings = {Setting::CNC};
    for (int i = 1; i <= 6; ++i) c.excluded_pairs.emplace("cnc-0" + std::to_string(i), "about even");
    const auto corpus = generate_rq1_corpus(c);
    CHECK(corpus.size() == 255 - 6);
    for (const auto& p : corpus) {
        CHECK_FALSE((p.rq1().wep == "about even" && c.excluded_pairs.contains({p.rq1().template_id, "about even"})));
    }
}

TEST_CASE("corpus is deterministic, unique and well formed") {
    Rq1Config c;
    c.languages = {Language::English};
    const auto a = generate_rq1_corpus(c);
    const auto b = generate_rq1_corpus(c);
    REQUIRE(a.size() == b.size());
    std::set<std::string> ids;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == b[i].id);
        CHECK(a[i].body == b[i].body);
        ids.insert(a[i].id);
        CHECK(a[i].body.starts_with(kRq1InstructionEnglish));
        CHECK(a[i].body.find(kPlaceholder) == std::string::npos);
        CHECK(a[i].body.ends_with("?"));
        if (!a[i].rq1().overridden) CHECK(a[i].body.find(a[i].rq1().wep) != std::string::npos);
        CHECK_NOTHROW(validate(a[i]));
    }
    CHECK(ids.size() == a.size());
}

TEST_CASE("invalid configurations") {
    Rq1Config c;
    c.settings = {Setting::ENC};
    c.languages = {Language::Chinese};
    CHECK_THROWS_AS(validate(c), ConfigError);
    CHECK_THROWS_AS(generate_rq1_corpus(c), ConfigError);
    Rq1Config empty;
    empty.settings.clear();
    CHECK_THROWS_AS(validate(empty), ConfigError);
}

TEST_CASE("subject override rewrites the pronoun") {
    const auto& t = TemplateRegistry::builtin().find(Setting::MCNC, Language::English, "gen-01");
    const auto f = with_subject(t, Subject::Female);
    CHECK(f.statement_form.starts_with("She "));
    CHECK(f.question_form.starts_with("she "));
    Rq1Config c;
    c.settings = {Setting::MCNC};
    c.gender_subject = Subject::Female;
    for (const auto& p : generate_rq1_corpus(c)) CHECK(p.body.find("\"He ") == std::string::npos);
}

}
