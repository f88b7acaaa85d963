#include "pmas/http_backend.hpp"

#include <chrono>
#include <thread>

#include "httplib.h"
#include "json.hpp"

using json = nlohmann::json;

namespace pmas {

namespace {

bool retriable_status(int status) {
    return status == 429 || (status >= 500 && status < 600);
}

} // namespace

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
    // Split "scheme://host[:port]/prefix" into client target and path prefix.
    const std::string& url = config_.base_url;
    size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("base_url must include a scheme: " + url);
    size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        host_part_ = url;
        path_prefix_.clear();
    } else {
        host_part_ = url.substr(0, path_start);
        path_prefix_ = url.substr(path_start);
        while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
    }
}

std::string HttpBackend::post_json(const std::string& path, const std::string& body) {
    std::string last_error;
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(
                std::chrono::milliseconds(config_.retry_base_ms * (1 << (attempt - 1))));
        }
        httplib::Client client(host_part_);
        client.set_connection_timeout(config_.timeout_seconds, 0);
        client.set_read_timeout(config_.timeout_seconds, 0);
        httplib::Headers headers;
        if (!config_.api_key.empty()) {
            headers.emplace("Authorization", "Bearer " + config_.api_key);
        }
        auto res = client.Post(path_prefix_ + path, headers, body, "application/json");
        if (!res) {
            last_error = "transport failure: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status >= 200 && res->status < 300) return res->body;
        last_error = "HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200);
        if (!retriable_status(res->status)) break;
    }
    throw BackendError("request to " + path + " failed: " + last_error);
}

std::string HttpBackend::complete(const ChatRequest& request) {
    json messages = json::array();
    for (const auto& m : request.messages) {
        messages.push_back({{"role", m.role}, {"content", m.content}});
    }
    auto kind = request.metadata.find("model_kind");
    const std::string model = (kind != request.metadata.end() && kind->second == "judge")
                                  ? config_.model_judge
                                  : config_.model_generation;
    json body = {
        {"model", model},
        {"messages", messages},
        {"temperature", request.temperature},
        {"max_tokens", request.max_output_tokens},
    };
    if (request.response_format == "json_object") {
        body["response_format"] = {{"type", "json_object"}};
    }
    const std::string reply = post_json("/chat/completions", body.dump());
    try {
        json doc = json::parse(reply);
        return doc.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
        throw BackendError(std::string("malformed chat-completions response: ") + e.what());
    }
}

Embedding HttpBackend::embed(const std::string& text) {
    if (text.empty()) throw Error("cannot embed empty text");
    json body = {{"model", config_.model_embedding}, {"input", text}};
    const std::string reply = post_json("/embeddings", body.dump());
    try {
        json doc = json::parse(reply);
        auto vec = doc.at("data").at(0).at("embedding").get<std::vector<double>>();
        return Embedding(std::move(vec));
    } catch (const json::exception& e) {
        throw BackendError(std::string("malformed embeddings response: ") + e.what());
    }
}

} // namespace pmas
