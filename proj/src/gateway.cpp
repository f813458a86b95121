#include "wepkit/gateway.hpp"

#include "wepkit/parser.hpp"
#include "wepkit/rq2.hpp"
#include "wepkit/stats.hpp"
#include "wepkit/text.hpp"

#include <algorithm>
#include <ctime>
#include <thread>

namespace wepkit {

using nlohmann::json;

std::string utc_timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json chat_request(std::string_view model, std::string_view content) {
    return json{
        {"model", model},
        {"messages", json::array({json{{"role", "user"}, {"content", content}}})},
        {"temperature", BackendConfig::temperature},
    };
}

std::optional<std::string> chat_reply_content(std::string_view reply_body) {
    const auto j = json::parse(reply_body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    const auto choices = j.find("choices");
    if (choices == j.end() || !choices->is_array() || choices->empty()) return std::nullopt;
    const auto& first = (*choices)[0];
    if (!first.is_object() || !first.contains("message")) return std::nullopt;
    const auto& message = first["message"];
    if (!message.is_object() || !message.contains("content") || !message["content"].is_string()) return std::nullopt;
    return message["content"].get<std::string>();
}

// ---------------------------------------------------------------------------
// Mocks

namespace {

constexpr std::string_view kEpoch = "1970-01-01T00:00:00Z";

constexpr std::array<std::pair<MockKind, std::string_view>, 5> kMockNames{{
    {MockKind::ConstantChoice, "constant_choice"},
    {MockKind::SampleCalibrated, "sample_calibrated"},
    {MockKind::GaussianCalibrated, "gaussian_calibrated"},
    {MockKind::UniformRandom, "uniform_random"},
    {MockKind::SurveyMedian, "survey_median"},
}};

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double unit_interval(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

NumbersId numbers_kind(std::string_view numbers_id) {
    const auto at = numbers_id.find('@');
    return parse_numbers_id(numbers_id.substr(0, at));
}

}  // namespace

std::string_view to_string(MockKind k) {
    for (const auto& [kind, name] : kMockNames) {
        if (kind == k) return name;
    }
    return "?";
}

std::string mock_names() {
    std::vector<std::string> names;
    for (const auto& [kind, name] : kMockNames) names.emplace_back(name);
    return text::join(names, ", ");
}

MockKind parse_mock_kind(std::string_view s) {
    std::string normalised = text::to_lower(s);
    std::ranges::replace(normalised, '-', '_');
    for (const auto& [kind, name] : kMockNames) {
        if (normalised == name) return kind;
    }
    throw ConfigError("unknown mock '" + std::string(s) + "' (valid: " + mock_names() + ")");
}

MockRespondent::MockRespondent(MockSpec spec) : spec_(std::move(spec)) {
    if (spec_.kind == MockKind::SurveyMedian) {
        if (!spec_.survey) throw ConfigError("survey_median mock needs a survey table");
        for (const auto& wep : wep_registry()) {
            if (spec_.survey->respondent_count(wep.canonical_name) == 0) continue;
            survey_medians_[wep.canonical_name] = stats::median(wep_distribution(*spec_.survey, wep.canonical_name));
        }
    }
}

std::string MockRespondent::name() const {
    std::string n = "mock:" + std::string(to_string(spec_.kind));
    if (spec_.kind == MockKind::ConstantChoice) n += "(" + spec_.choice + ")";
    if (spec_.kind == MockKind::UniformRandom) n += "(seed=" + std::to_string(spec_.seed) + ")";
    return n;
}

std::string MockRespondent::answer(const PromptRecord& prompt) const {
    if (prompt.corpus == Corpus::Rq2) {
        auto choice = choice_answer(prompt);
        if (prompt.mode == Mode::Cot) {
            const auto& r = prompt.rq2();
            const double p = empirical_proportion(r.interval, r.low, r.high, r.observations);
            choice = "The observed share is " + text::format_double(p) + ". I choose: " + choice;
        }
        return choice;
    }
    return estimate(prompt);
}

std::string MockRespondent::choice_answer(const PromptRecord& prompt) const {
    const auto& r = prompt.rq2();
    const auto& set = choice_set(r.choice_set);
    switch (spec_.kind) {
        case MockKind::ConstantChoice: {
            if (auto rank = set.rank_of_phrase(spec_.choice)) return set.by_rank(*rank).lettered();
            return spec_.choice;
        }
        case MockKind::SampleCalibrated:
            return set.by_rank(empirical_ground_truth(prompt)).lettered();
        case MockKind::GaussianCalibrated: {
            const double p = gaussian_interval_probability(r.interval, r.low, r.high, kNumbersMean,
                                                           std_dev_of(numbers_kind(r.numbers)));
            return set.by_rank(set.rank_for_probability(std::clamp(p, 0.0, 1.0))).lettered();
        }
        case MockKind::UniformRandom: {
            const double u = unit_interval(mix(spec_.seed ^ fnv1a(prompt.id)));
            const auto rank = std::min(static_cast<std::size_t>(u * static_cast<double>(set.size())), set.size() - 1);
            return set.by_rank(rank).lettered();
        }
        case MockKind::SurveyMedian:
            break;
    }
    return "I cannot answer this question.";
}

std::string MockRespondent::estimate(const PromptRecord& prompt) const {
    switch (spec_.kind) {
        case MockKind::UniformRandom: {
            const double u = unit_interval(mix(spec_.seed ^ fnv1a(prompt.id)));
            return text::format_fixed(std::floor(u * 101.0) / 100.0, 2);
        }
        case MockKind::SurveyMedian: {
            auto it = survey_medians_.find(prompt.rq1().wep);
            if (it == survey_medians_.end()) return "No estimate available.";
            return text::format_double(it->second / 100.0);
        }
        case MockKind::ConstantChoice:
            return spec_.choice;
        default:
            return "I cannot answer this question.";
    }
}

Exchange MockRespondent::exchange(const PromptRecord& prompt) {
    Exchange ex;
    ex.request_body = chat_request(model(), prompt.body).dump();
    ex.raw = answer(prompt);
    ex.attempts = 1;
    ex.timestamp = std::string(kEpoch);
    return ex;
}

// ---------------------------------------------------------------------------
// Cache and transcript

namespace {

json cache_line(const CacheKey& key, const Exchange& ex) {
    return json{{"backend", key.backend}, {"model", key.model},         {"body", key.body},
                {"temperature", key.temperature}, {"raw", ex.raw}, {"timestamp", ex.timestamp}};
}

}  // namespace

ResponseCache::ResponseCache(std::filesystem::path path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto j = json::parse(line, nullptr, false);
        if (j.is_discarded()) throw DataError(path_.string() + ":" + std::to_string(line_no) + ": malformed cache line");
        CacheKey key{j.value("backend", ""), j.value("model", ""), j.value("body", ""), j.value("temperature", 0.0)};
        Exchange ex;
        ex.raw = j.value("raw", "");
        ex.timestamp = j.value("timestamp", "");
        ex.attempts = 0;
        entries_[std::move(key)] = std::move(ex);
    }
}

std::optional<Exchange> ResponseCache::find(const CacheKey& key) const {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void ResponseCache::store(const CacheKey& key, const Exchange& exchange) {
    std::unique_lock lock(mutex_);
    if (!entries_.emplace(key, exchange).second) return;
    if (path_.empty()) return;
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    std::ofstream out(path_, std::ios::app | std::ios::binary);
    if (!out) throw DataError("cannot append to cache " + path_.string());
    out << cache_line(key, exchange).dump() << '\n';
}

std::size_t ResponseCache::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

TranscriptLog::TranscriptLog(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    out_.open(path, std::ios::app | std::ios::binary);
    if (!out_) throw DataError("cannot open transcript " + path.string());
}

void TranscriptLog::append(const PromptRecord& prompt, const std::string& backend, const std::string& model,
                           const Exchange& ex) {
    std::lock_guard lock(mutex_);
    ++entries_;
    if (!out_.is_open()) return;
    const json line{
        {"prompt_id", prompt.id},
        {"backend", backend},
        {"model", model},
        {"request", json::parse(ex.request_body, nullptr, false)},
        {"raw", ex.raw},
        {"status", to_string(ex.status)},
        {"http_status", ex.http_status},
        {"attempts", ex.attempts},
        {"latency_ms", ex.latency_ms},
        {"timestamp", ex.timestamp},
        {"error", ex.error},
    };
    out_ << line.dump() << '\n';
    out_.flush();
}

// ---------------------------------------------------------------------------

Gateway::Gateway(Respondent& respondent, ResponseCache& cache, TranscriptLog& transcript)
    : respondent_(respondent), cache_(cache), transcript_(transcript) {}

ResponseRecord Gateway::to_record(const PromptRecord& prompt, const Exchange& ex) const {
    ResponseRecord r;
    r.prompt_id = prompt.id;
    r.raw = ex.raw;
    r.backend = respondent_.name();
    r.timestamp = ex.timestamp;
    r.status = ex.status;
    r.error = ex.error;
    if (ex.status == ExchangeStatus::Ok) {
        const auto parsed = parse_response(ex.raw, prompt);
        r.parsed = parsed.value;
        r.ambiguous = parsed.ambiguous;
    } else {
        r.parsed = ParseFailure{"no reply: " + std::string(to_string(ex.status))};
    }
    return r;
}

ResponseRecord Gateway::complete(const PromptRecord& prompt) {
    const CacheKey key{respondent_.name(), respondent_.model(), prompt.body, BackendConfig::temperature};
    if (auto cached = cache_.find(key)) {
        ++hits_;
        return to_record(prompt, *cached);
    }
    ++requests_;
    const auto ex = respondent_.exchange(prompt);
    transcript_.append(prompt, respondent_.name(), respondent_.model(), ex);
    if (ex.status == ExchangeStatus::Ok) cache_.store(key, ex);
    return to_record(prompt, ex);
}

BatchResult Gateway::run_batch(const std::vector<PromptRecord>& corpus) {
    BatchResult result;
    result.responses.resize(corpus.size());
    const auto before_requests = requests_.load();
    const auto before_hits = hits_.load();

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            const auto i = next.fetch_add(1);
            if (i >= corpus.size()) return;
            try {
                result.responses[i] = complete(corpus[i]);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = corpus.size();
                return;
            }
        }
    };
    const std::size_t threads = std::clamp<std::size_t>(respondent_.parallelism(), 1, std::max<std::size_t>(corpus.size(), 1));
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    if (error) std::rethrow_exception(error);

    for (const auto& r : result.responses) {
        if (r.status != ExchangeStatus::Ok) {
            ++result.transport_failures;
        } else if (!r.parse_ok()) {
            ++result.parse_failures;
        }
    }
    result.requests_issued = requests_.load() - before_requests;
    result.cache_hits = hits_.load() - before_hits;
    return result;
}

}  // namespace wepkit
