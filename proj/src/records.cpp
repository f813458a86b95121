#include "wepkit/records.hpp"

#include <fstream>
#include <sstream>

namespace wepkit {

using nlohmann::json;

std::string_view to_string(ExchangeStatus s) {
    switch (s) {
        case ExchangeStatus::Ok: return "ok";
        case ExchangeStatus::TransportFailure: return "transport_failure";
        case ExchangeStatus::HttpError: return "http_error";
        case ExchangeStatus::RateLimited: return "rate_limited";
    }
    return "ok";
}

ExchangeStatus parse_exchange_status(std::string_view s) {
    for (auto v : {ExchangeStatus::Ok, ExchangeStatus::TransportFailure, ExchangeStatus::HttpError,
                   ExchangeStatus::RateLimited}) {
        if (to_string(v) == s) return v;
    }
    throw DataError("unknown exchange status '" + std::string(s) + "'");
}

std::optional<double> ResponseRecord::probability() const {
    if (const auto* p = std::get_if<double>(&parsed)) return *p;
    return std::nullopt;
}

std::optional<std::size_t> ResponseRecord::choice_rank() const {
    if (const auto* c = std::get_if<ChoiceAnswer>(&parsed)) return c->rank;
    return std::nullopt;
}

void validate(const PromptRecord& p) {
    if (p.id.empty()) throw DataError("prompt record with empty id");
    if (p.body.empty()) throw DataError("prompt " + p.id + ": empty body");
    const bool rq1 = std::holds_alternative<Rq1Provenance>(p.provenance);
    if (rq1 != (p.corpus == Corpus::Rq1)) {
        throw DataError("prompt " + p.id + ": provenance does not match corpus tag");
    }
    if (rq1) {
        if (!wep_index(p.rq1().wep)) throw DataError("prompt " + p.id + ": unknown WEP " + p.rq1().wep);
    } else {
        const auto& r = p.rq2();
        if (r.observations.empty()) throw DataError("prompt " + p.id + ": no observations");
        if (r.low >= r.high) throw DataError("prompt " + p.id + ": low cut point must be below high");
    }
}

void validate(const ResponseRecord& r, const PromptRecord& p) {
    if (r.prompt_id != p.id) throw DataError("response " + r.prompt_id + " does not belong to prompt " + p.id);
    if (auto v = r.probability()) {
        if (!(*v >= 0.0 && *v <= 1.0)) throw DataError("response " + r.prompt_id + ": probability outside [0,1]");
        if (p.corpus != Corpus::Rq1) throw DataError("response " + r.prompt_id + ": probability answer to an RQ2 prompt");
    }
    if (const auto* c = std::get_if<ChoiceAnswer>(&r.parsed)) {
        if (p.corpus != Corpus::Rq2) throw DataError("response " + r.prompt_id + ": choice answer to an RQ1 prompt");
        const auto& set = choice_set(p.rq2().choice_set);
        auto rank = set.rank_of_label(c->label);
        if (!rank || *rank != c->rank) {
            throw DataError("response " + r.prompt_id + ": label " + std::string(1, c->label) + " not in " +
                            std::string(to_string(set.id)));
        }
    }
}

json to_json(const PromptRecord& p) {
    json j;
    j["id"] = p.id;
    j["corpus"] = to_string(p.corpus);
    j["language"] = to_string(p.language);
    j["mode"] = to_string(p.mode);
    j["body"] = p.body;
    json prov;
    if (const auto* a = std::get_if<Rq1Provenance>(&p.provenance)) {
        prov["setting"] = to_string(a->setting);
        prov["template_id"] = a->template_id;
        prov["wep"] = a->wep;
        prov["overridden"] = a->overridden;
    } else {
        const auto& b = std::get<Rq2Provenance>(p.provenance);
        prov["scenario"] = b.scenario;
        prov["choice_set"] = to_string(b.choice_set);
        prov["numbers"] = b.numbers;
        prov["interval"] = to_string(b.interval);
        prov["level"] = b.level;
        prov["low"] = b.low;
        prov["high"] = b.high;
        prov["observations"] = b.observations;
    }
    j["provenance"] = std::move(prov);
    return j;
}

PromptRecord prompt_from_json(const json& j) {
    PromptRecord p;
    try {
        p.id = j.at("id").get<std::string>();
        p.corpus = parse_corpus(j.at("corpus").get<std::string>());
        p.language = parse_language(j.at("language").get<std::string>());
        p.mode = parse_mode(j.at("mode").get<std::string>());
        p.body = j.at("body").get<std::string>();
        const auto& prov = j.at("provenance");
        if (p.corpus == Corpus::Rq1) {
            Rq1Provenance a;
            a.setting = parse_setting(prov.at("setting").get<std::string>());
            a.template_id = prov.at("template_id").get<std::string>();
            a.wep = prov.at("wep").get<std::string>();
            a.overridden = prov.value("overridden", false);
            p.provenance = std::move(a);
        } else {
            Rq2Provenance b;
            b.scenario = prov.at("scenario").get<std::string>();
            b.choice_set = parse_choice_set_id(prov.at("choice_set").get<std::string>());
            b.numbers = prov.at("numbers").get<std::string>();
            b.interval = parse_interval_kind(prov.at("interval").get<std::string>());
            b.level = prov.at("level").get<double>();
            b.low = prov.at("low").get<int>();
            b.high = prov.at("high").get<int>();
            b.observations = prov.at("observations").get<std::vector<int>>();
            p.provenance = std::move(b);
        }
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed prompt record: ") + e.what());
    } catch (const ConfigError& e) {
        throw DataError(std::string("malformed prompt record: ") + e.what());
    }
    validate(p);
    return p;
}

json to_json(const ResponseRecord& r) {
    json j;
    j["prompt_id"] = r.prompt_id;
    j["raw"] = r.raw;
    json parsed;
    if (const auto* f = std::get_if<ParseFailure>(&r.parsed)) {
        parsed["kind"] = "failure";
        parsed["reason"] = f->reason;
        parsed["ambiguous"] = f->ambiguous;
    } else if (const auto* v = std::get_if<double>(&r.parsed)) {
        parsed["kind"] = "probability";
        parsed["value"] = *v;
    } else {
        const auto& c = std::get<ChoiceAnswer>(r.parsed);
        parsed["kind"] = "choice";
        parsed["label"] = std::string(1, c.label);
        parsed["rank"] = c.rank;
    }
    j["parsed"] = std::move(parsed);
    j["ambiguous"] = r.ambiguous;
    j["backend"] = r.backend;
    j["timestamp"] = r.timestamp;
    j["status"] = to_string(r.status);
    j["error"] = r.error;
    return j;
}

ResponseRecord response_from_json(const json& j) {
    ResponseRecord r;
    try {
        r.prompt_id = j.at("prompt_id").get<std::string>();
        r.raw = j.at("raw").get<std::string>();
        const auto& parsed = j.at("parsed");
        const auto kind = parsed.at("kind").get<std::string>();
        if (kind == "failure") {
            r.parsed = ParseFailure{parsed.value("reason", std::string{}), parsed.value("ambiguous", false)};
        } else if (kind == "probability") {
            r.parsed = parsed.at("value").get<double>();
        } else if (kind == "choice") {
            const auto label = parsed.at("label").get<std::string>();
            if (label.size() != 1) throw DataError("choice label must be one character");
            r.parsed = ChoiceAnswer{label[0], parsed.at("rank").get<std::size_t>()};
        } else {
            throw DataError("unknown parsed kind '" + kind + "'");
        }
        r.ambiguous = j.value("ambiguous", false);
        r.backend = j.value("backend", std::string{});
        r.timestamp = j.value("timestamp", std::string{});
        r.status = parse_exchange_status(j.value("status", std::string{"ok"}));
        r.error = j.value("error", std::string{});
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed response record: ") + e.what());
    }
    return r;
}

namespace {

template <typename Record, typename Fn>
std::vector<Record> read_lines(std::istream& in, const std::string& source, Fn&& decode) {
    std::vector<Record> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        try {
            out.push_back(decode(json::parse(line)));
        } catch (const json::exception& e) {
            throw DataError(source + ":" + std::to_string(line_no) + ": " + e.what());
        } catch (const DataError& e) {
            throw DataError(source + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

}  // namespace

void write_prompts(std::ostream& out, const std::vector<PromptRecord>& prompts) {
    for (const auto& p : prompts) out << to_json(p).dump() << '\n';
}

void write_prompts(const std::filesystem::path& path, const std::vector<PromptRecord>& prompts) {
    auto out = open_out(path);
    write_prompts(out, prompts);
}

std::vector<PromptRecord> read_prompts(std::istream& in, const std::string& source_name) {
    return read_lines<PromptRecord>(in, source_name, [](const json& j) { return prompt_from_json(j); });
}

std::vector<PromptRecord> read_prompts(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_prompts(in, path.string());
}

void write_responses(std::ostream& out, const std::vector<ResponseRecord>& responses) {
    for (const auto& r : responses) out << to_json(r).dump() << '\n';
}

void write_responses(const std::filesystem::path& path, const std::vector<ResponseRecord>& responses) {
    auto out = open_out(path);
    write_responses(out, responses);
}

std::vector<ResponseRecord> read_responses(std::istream& in, const std::string& source_name) {
    return read_lines<ResponseRecord>(in, source_name, [](const json& j) { return response_from_json(j); });
}

std::vector<ResponseRecord> read_responses(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_responses(in, path.string());
}

}  // namespace wepkit
