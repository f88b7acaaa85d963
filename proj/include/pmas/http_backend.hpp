#pragma once

#include <cstdint>
#include <string>

#include "pmas/gateway.hpp"

namespace pmas {

struct HttpBackendConfig {
    std::string base_url;       // e.g. "https://api.openai.com/v1" or "http://127.0.0.1:8080/v1"
    std::string api_key;        // sent as "Authorization: Bearer <key>" when non-empty
    std::string model_generation = "gpt-4o-mini";
    std::string model_judge = "gpt-4o-mini";
    std::string model_embedding = "text-embedding-3-small";
    int max_retries = 3;        // retriable statuses: 429 and 5xx
    int retry_base_ms = 500;    // exponential backoff base
    int timeout_seconds = 120;
};

// OpenAI-compatible chat-completions and embeddings client. Requests pick the
// judge model when metadata["model_kind"] == "judge". Thread-safe: every call
// opens its own connection.
class HttpBackend : public Backend {
public:
    explicit HttpBackend(HttpBackendConfig config);

    std::string complete(const ChatRequest& request) override;
    Embedding embed(const std::string& text) override;

    const HttpBackendConfig& config() const { return config_; }

private:
    std::string post_json(const std::string& path, const std::string& body);

    HttpBackendConfig config_;
    std::string host_part_;  // scheme://host[:port]
    std::string path_prefix_; // e.g. "/v1"
};

} // namespace pmas
