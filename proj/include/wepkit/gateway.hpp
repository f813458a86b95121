#pragma once

#include "wepkit/records.hpp"
#include "wepkit/survey.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>

namespace wepkit {

// ---------------------------------------------------------------------------
// Backends

struct BackendConfig {
    std::string name = "openai";
    std::string endpoint = "https://api.openai.com/v1/chat/completions";
    std::string model = "gpt-4-0613";
    std::string api_key_env = "OPENAI_API_KEY";  // empty: no Authorization header
    int max_retries = 5;
    std::chrono::milliseconds request_timeout{60000};
    std::chrono::milliseconds initial_backoff{1000};
    std::chrono::milliseconds max_backoff{60000};
    std::size_t parallelism = 4;

    /// Sampling temperature is pinned; it is part of the cache key and the request body.
    static constexpr double temperature = 0.0;
};

/// One round trip with a backend, before any parsing.
struct Exchange {
    std::string request_body;
    std::string raw;
    ExchangeStatus status = ExchangeStatus::Ok;
    std::string error;
    int http_status = 0;
    int attempts = 0;
    double latency_ms = 0.0;
    std::string timestamp;
};

class Respondent {
public:
    virtual ~Respondent() = default;
    [[nodiscard]] virtual std::string name() const = 0;
    [[nodiscard]] virtual std::string model() const = 0;
    [[nodiscard]] virtual std::size_t parallelism() const { return 1; }
    virtual Exchange exchange(const PromptRecord& prompt) = 0;
};

/// {model, messages: [{role: "user", content}], temperature} with no system message.
nlohmann::json chat_request(std::string_view model, std::string_view content);
/// choices[0].message.content, or nullopt when the reply does not have that shape.
std::optional<std::string> chat_reply_content(std::string_view reply_body);

struct Url {
    std::string scheme;
    std::string host;
    int port = 0;
    std::string path;
};
Url parse_url(std::string_view url);

/// Chat-completion client over HTTP(S). Retries transport failures, 429 and
/// 5xx replies with capped exponential backoff (Retry-After honoured).
class HttpChatBackend final : public Respondent {
public:
    explicit HttpChatBackend(BackendConfig config);
    [[nodiscard]] std::string name() const override { return config_.name; }
    [[nodiscard]] std::string model() const override { return config_.model; }
    [[nodiscard]] std::size_t parallelism() const override { return config_.parallelism; }
    Exchange exchange(const PromptRecord& prompt) override;

    /// Replaceable for tests; defaults to std::this_thread::sleep_for.
    std::function<void(std::chrono::milliseconds)> sleeper;

private:
    BackendConfig config_;
    Url url_;
    std::string api_key_;
};

enum class MockKind { ConstantChoice, SampleCalibrated, GaussianCalibrated, UniformRandom, SurveyMedian };
std::string_view to_string(MockKind k);
/// Accepts "sample-calibrated" and "sample_calibrated"; unknown names raise
/// ConfigError listing the valid mocks.
MockKind parse_mock_kind(std::string_view s);
std::string mock_names();

struct MockSpec {
    MockKind kind = MockKind::SampleCalibrated;
    std::string choice = "is maybe";  // constant_choice
    std::uint64_t seed = 0;           // uniform_random
    std::shared_ptr<const SurveyTable> survey;  // survey_median
};

/// Deterministic stand-ins for a language model. Timestamps are fixed at the
/// epoch so a batch is a pure function of (corpus, spec).
class MockRespondent final : public Respondent {
public:
    explicit MockRespondent(MockSpec spec);
    [[nodiscard]] std::string name() const override;
    [[nodiscard]] std::string model() const override { return "mock"; }
    Exchange exchange(const PromptRecord& prompt) override;

    /// The raw answer text without the exchange envelope.
    [[nodiscard]] std::string answer(const PromptRecord& prompt) const;

private:
    std::string choice_answer(const PromptRecord& prompt) const;
    std::string estimate(const PromptRecord& prompt) const;

    MockSpec spec_;
    std::map<std::string, double> survey_medians_;
};

// ---------------------------------------------------------------------------
// Persistence

struct CacheKey {
    std::string backend;
    std::string model;
    std::string body;
    double temperature = 0.0;
    auto operator<=>(const CacheKey&) const = default;
};

/// Successful exchanges, persisted as line-delimited JSON and reloaded on
/// construction. Concurrent readers, serialised writers.
class ResponseCache {
public:
    ResponseCache() = default;  // in-memory only
    explicit ResponseCache(std::filesystem::path path);

    [[nodiscard]] std::optional<Exchange> find(const CacheKey& key) const;
    void store(const CacheKey& key, const Exchange& exchange);
    [[nodiscard]] std::size_t size() const;

private:
    std::filesystem::path path_;
    mutable std::shared_mutex mutex_;
    std::map<CacheKey, Exchange> entries_;
};

/// Append-only record of every backend exchange.
class TranscriptLog {
public:
    TranscriptLog() = default;  // discards
    explicit TranscriptLog(const std::filesystem::path& path);
    void append(const PromptRecord& prompt, const std::string& backend, const std::string& model,
                const Exchange& exchange);
    [[nodiscard]] std::size_t entries() const { return entries_; }

private:
    std::mutex mutex_;
    std::ofstream out_;
    std::size_t entries_ = 0;
};

// ---------------------------------------------------------------------------

struct BatchResult {
    std::vector<ResponseRecord> responses;  // corpus order
    std::size_t transport_failures = 0;
    std::size_t parse_failures = 0;
    std::size_t requests_issued = 0;
    std::size_t cache_hits = 0;
};

class Gateway {
public:
    Gateway(Respondent& respondent, ResponseCache& cache, TranscriptLog& transcript);

    ResponseRecord complete(const PromptRecord& prompt);
    /// Bounded-concurrency batch; output order equals corpus order.
    BatchResult run_batch(const std::vector<PromptRecord>& corpus);

    [[nodiscard]] std::size_t requests_issued() const { return requests_.load(); }
    [[nodiscard]] std::size_t cache_hits() const { return hits_.load(); }

private:
    ResponseRecord to_record(const PromptRecord& prompt, const Exchange& ex) const;

    Respondent& respondent_;
    ResponseCache& cache_;
    TranscriptLog& transcript_;
    std::atomic<std::size_t> requests_{0};
    std::atomic<std::size_t> hits_{0};
};

std::string utc_timestamp_now();

}  // namespace wepkit
