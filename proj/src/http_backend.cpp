#include "wepkit/gateway.hpp"

#include "wepkit/text.hpp"

#include <httplib.h>

#include <cstdlib>
#include <thread>

namespace wepkit {

Url parse_url(std::string_view url) {
    Url u;
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos) throw ConfigError("endpoint '" + std::string(url) + "' has no scheme");
    u.scheme = text::to_lower(url.substr(0, scheme_end));
    if (u.scheme != "http" && u.scheme != "https") throw ConfigError("unsupported scheme '" + u.scheme + "'");
    auto rest = url.substr(scheme_end + 3);
    const auto slash = rest.find('/');
    auto authority = rest.substr(0, slash);
    u.path = slash == std::string_view::npos ? "/" : std::string(rest.substr(slash));
    const auto colon = authority.find(':');
    if (colon != std::string_view::npos) {
        u.host = std::string(authority.substr(0, colon));
        try {
            u.port = std::stoi(std::string(authority.substr(colon + 1)));
        } catch (const std::exception&) {
            throw ConfigError("invalid port in endpoint '" + std::string(url) + "'");
        }
    } else {
        u.host = std::string(authority);
        u.port = u.scheme == "https" ? 443 : 80;
    }
    if (u.host.empty()) throw ConfigError("endpoint '" + std::string(url) + "' has no host");
    return u;
}

HttpChatBackend::HttpChatBackend(BackendConfig config) : config_(std::move(config)), url_(parse_url(config_.endpoint)) {
    sleeper = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (url_.scheme == "https") throw ConfigError("this build has no TLS support; use an http:// endpoint");
#endif
    if (!config_.api_key_env.empty()) {
        const char* key = std::getenv(config_.api_key_env.c_str());
        if (!key || !*key) throw ConfigError("environment variable " + config_.api_key_env + " is not set");
        api_key_ = key;
    }
    if (config_.max_retries < 0) throw ConfigError("max_retries must be non-negative");
}

namespace {

std::chrono::milliseconds backoff_delay(const BackendConfig& config, int attempt, const httplib::Result* res) {
    if (res && *res && (*res)->has_header("Retry-After")) {
        try {
            const auto seconds = std::stod((*res)->get_header_value("Retry-After"));
            return std::min(config.max_backoff, std::chrono::milliseconds(static_cast<long>(seconds * 1000.0)));
        } catch (const std::exception&) {
        }
    }
    auto delay = config.initial_backoff;
    for (int i = 0; i < attempt && delay < config.max_backoff; ++i) delay *= 2;
    return std::min(delay, config.max_backoff);
}

}  // namespace

Exchange HttpChatBackend::exchange(const PromptRecord& prompt) {
    Exchange ex;
    ex.request_body = chat_request(config_.model, prompt.body).dump();
    ex.timestamp = utc_timestamp_now();

    const auto base = url_.scheme + "://" + url_.host + ":" + std::to_string(url_.port);
    httplib::Client client(base);
    const auto timeout_s = config_.request_timeout.count() / 1000;
    const auto timeout_us = (config_.request_timeout.count() % 1000) * 1000;
    client.set_connection_timeout(timeout_s, timeout_us);
    client.set_read_timeout(timeout_s, timeout_us);
    client.set_write_timeout(timeout_s, timeout_us);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

    const auto started = std::chrono::steady_clock::now();
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        ex.attempts = attempt + 1;
        auto res = client.Post(url_.path, headers, ex.request_body, "application/json");
        bool retry = false;
        if (!res) {
            ex.status = ExchangeStatus::TransportFailure;
            ex.error = httplib::to_string(res.error());
            ex.http_status = 0;
            retry = true;
        } else {
            ex.http_status = res->status;
            if (res->status == 200) {
                ex.status = ExchangeStatus::Ok;
                ex.error.clear();
                // A reply without the expected shape is kept verbatim and fails parsing downstream.
                ex.raw = chat_reply_content(res->body).value_or(res->body);
                if (!chat_reply_content(res->body)) ex.error = "malformed chat-completion reply";
                break;
            }
            ex.raw = res->body;
            ex.error = "HTTP " + std::to_string(res->status);
            if (res->status == 429) {
                ex.status = ExchangeStatus::RateLimited;
                retry = true;
            } else if (res->status >= 500) {
                ex.status = ExchangeStatus::HttpError;
                retry = true;
            } else {
                ex.status = ExchangeStatus::HttpError;
            }
        }
        if (!retry || attempt == config_.max_retries) break;
        sleeper(backoff_delay(config_, attempt, &res));
    }
    ex.latency_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return ex;
}

}  // namespace wepkit
