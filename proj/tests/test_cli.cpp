#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = -1;
    std::string output;  // stdout and stderr together
};

Outcome run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + "\"" + WEPKIT_CLI + "\" " + args + " 2>&1";
    Outcome o;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    while (const auto n = std::fread(buf.data(), 1, buf.size(), pipe)) o.output.append(buf.data(), n);
    const int status = ::pclose(pipe);
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return o;
}

fs::path workdir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "wepkit-cli-tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

std::size_t count_lines(const fs::path& p) {
    std::ifstream in(p);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);) n += line.empty() ? 0 : 1;
    return n;
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("generate") {
    const auto dir = workdir();
    auto o = run("generate rq2 --out " + q(dir / "rq2.jsonl"));
    CHECK(o.code == 0);
    CHECK(contains(o.output, "360 records"));
    CHECK(count_lines(dir / "rq2.jsonl") == 360);
    o = run("generate rq2 --mode both --out " + q(dir / "rq2-both.jsonl"));
    CHECK(contains(o.output, "720 records"));
    o = run("generate rq1 --settings cnc --language chinese --out -");
    CHECK(o.code == 0);
    CHECK(contains(o.output, "255 records"));
    o = run("generate rq1 --settings enc --language chinese --out " + q(dir / "bad.jsonl"));
    CHECK(o.code == 1);
    o = run("generate rq3 --out -");
    CHECK(o.code == 1);
    o = run("generate rq1 --exclude cnc-02:not-a-wep --out -");
    CHECK(o.code == 1);
    o = run("frobnicate");
    CHECK(o.code == 1);
}

TEST_CASE("run with mocks and a warm cache") {
    const auto dir = workdir();
    REQUIRE(run("generate rq2 --out " + q(dir / "c.jsonl")).code == 0);
    const auto base = "run --corpus " + q(dir / "c.jsonl") + " --out " + q(dir / "r.jsonl") +
                      " --mock sample_calibrated --cache " + q(dir / "cache.jsonl");
    auto o = run(base);
    CHECK(o.code == 0);
    CHECK(contains(o.output, "360 requests issued"));
    o = run(base);
    CHECK(o.code == 0);
    CHECK(contains(o.output, "0 requests issued, 360 cache hits"));
    o = run("run --corpus " + q(dir / "c.jsonl") + " --out " + q(dir / "x.jsonl") + " --mock psychic");
    CHECK(o.code == 1);
    CHECK(contains(o.output, "sample_calibrated"));
}

TEST_CASE("score and incomplete coverage") {
    const auto dir = workdir();
    REQUIRE(run("generate rq2 --mode both --out " + q(dir / "s.jsonl")).code == 0);
    REQUIRE(run("run --corpus " + q(dir / "s.jsonl") + " --out " + q(dir / "sr.jsonl") + " --mock constant_choice").code == 0);
    auto o = run("score --corpus " + q(dir / "s.jsonl") + " --responses " + q(dir / "sr.jsonl") + " --out-dir " +
                 q(dir / "score"));
    CHECK(o.code == 0);
    for (const char* f : {"scores.json", "scores.csv", "verdicts.csv", "consistency_by_scenario.svg",
                          "consistency_by_choice_set.svg"}) {
        CHECK(fs::exists(dir / "score" / f));
    }
    const auto j = nlohmann::json::parse(std::ifstream(dir / "score" / "scores.json"));
    CHECK(j["modes"].size() == 2);

    // Drop one response: scoring must refuse.
    {
        std::ifstream in(dir / "sr.jsonl");
        std::ofstream out(dir / "partial.jsonl");
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) out << line << '\n';
    }
    o = run("score --corpus " + q(dir / "s.jsonl") + " --responses " + q(dir / "partial.jsonl") + " --out-dir " +
            q(dir / "score2"));
    CHECK(o.code == 2);
    o = run("score --corpus " + q(dir / "missing.jsonl") + " --responses " + q(dir / "sr.jsonl"));
    CHECK(o.code == 2);
}

TEST_CASE("config files") {
    const auto dir = workdir();
    {
        std::ofstream cfg(dir / "gen.conf");
        cfg << "# comment\nmode = both\nout = " << (dir / "from-config.jsonl").string() << "\n";
    }
    auto o = run("generate rq2 --config " + q(dir / "gen.conf"));
    CHECK(o.code == 0);
    CHECK(contains(o.output, "720 records"));
    // The command line wins over the file.
    o = run("generate rq2 --mode cot --config " + q(dir / "gen.conf"));
    CHECK(contains(o.output, "360 records"));
    {
        std::ofstream cfg(dir / "bad.conf");
        cfg << "colour = blue\n";
    }
    o = run("generate rq2 --out - --config " + q(dir / "bad.conf"));
    CHECK(o.code == 1);
    CHECK(contains(o.output, "colour"));
}

TEST_CASE("unreachable backend exits 3 and keeps the transcript") {
    const auto dir = workdir();
    REQUIRE(run("generate rq1 --settings cnc --out " + q(dir / "one.jsonl")).code == 0);
    // Keep a single prompt.
    {
        std::ifstream in(dir / "one.jsonl");
        std::string line;
        std::getline(in, line);
        std::ofstream(dir / "single.jsonl") << line << '\n';
    }
    const auto o = run("run --corpus " + q(dir / "single.jsonl") + " --out " + q(dir / "fail.jsonl") +
                       " --endpoint http://127.0.0.1:9/v1/chat/completions --api-key-env \"\" --max-retries 0"
                       " --timeout-ms 500 --transcript " + q(dir / "transcript.jsonl"));
    CHECK(o.code == 3);
    CHECK(contains(o.output, "1 transport failures"));
    CHECK(count_lines(dir / "transcript.jsonl") == 1);
    CHECK(count_lines(dir / "fail.jsonl") == 1);
}

TEST_CASE("missing API key is a usage error") {
    const auto dir = workdir();
    REQUIRE(run("generate rq2 --out " + q(dir / "k.jsonl")).code == 0);
    const auto o = run("run --corpus " + q(dir / "k.jsonl") + " --out " + q(dir / "k-out.jsonl") +
                       " --api-key-env WEPKIT_DEFINITELY_UNSET", "env -u WEPKIT_DEFINITELY_UNSET");
    CHECK(o.code == 1);
    CHECK(contains(o.output, "WEPKIT_DEFINITELY_UNSET"));
}

TEST_CASE("baseline and compare") {
    const auto dir = workdir();
    auto o = run("baseline --method exact --out " + q(dir / "baseline.json"));
    CHECK(o.code == 0);
    const auto j = nlohmann::json::parse(std::ifstream(dir / "baseline.json"));
    CHECK(j["monotonicity"]["closed_form"]["five_choices"].get<double>() == doctest::Approx(4.032));
    CHECK(j["pairwise"]["closed_form"]["three_choices"].get<double>() == doctest::Approx(100.0 / 3));

    const auto survey = fs::path(WEPKIT_TEST_DATA) / "synthetic_survey.csv";
    REQUIRE(run("generate rq1 --settings cnc --out " + q(dir / "cnc.jsonl")).code == 0);
    REQUIRE(run("run --corpus " + q(dir / "cnc.jsonl") + " --out " + q(dir / "med.jsonl") +
                " --mock survey_median --survey " + q(survey))
                .code == 0);
    o = run("compare --survey " + q(survey) + " --corpus " + q(dir / "cnc.jsonl") + " --responses m=" +
            q(dir / "med.jsonl") + " --resamples 100 --out-dir " + q(dir / "cmp"));
    CHECK(o.code == 0);
    for (const char* f : {"comparison.json", "comparison.csv", "kl_heatmap.svg", "distributions.svg"}) {
        CHECK(fs::exists(dir / "cmp" / f));
    }
    o = run("compare --survey " + q(survey) + " --pair survey:nobody --out-dir " + q(dir / "cmp2"));
    CHECK(o.code == 1);
}

}
