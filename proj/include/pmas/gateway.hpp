#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pmas/common.hpp"

namespace pmas {

struct ChatMessage {
    std::string role; // "system" | "user" | "assistant"
    std::string content;
};

// Default temperature policy: 0.7 for generation, 0.0 for evaluation.
inline constexpr double kGenerationTemperature = 0.7;
inline constexpr double kEvaluationTemperature = 0.0;

struct ChatRequest {
    std::vector<ChatMessage> messages;
    double temperature = kGenerationTemperature;
    int max_output_tokens = 1024;
    std::string response_format = "text"; // "text" | "json_object"
    // Request routing metadata. The live backend ignores it; the scripted
    // backend dispatches on metadata["stage"] plus the content hash.
    std::map<std::string, std::string> metadata;

    std::string concatenated_content() const;
};

class Embedding {
public:
    Embedding() = default;
    explicit Embedding(std::vector<double> values);

    const std::vector<double>& values() const { return values_; }
    size_t dimension() const { return values_.size(); }
    double norm() const;

private:
    std::vector<double> values_;
};

double cosine_similarity(const Embedding& a, const Embedding& b);

// Uniform access to text generation and embeddings. Implementations must
// support concurrent in-flight requests.
class Backend {
public:
    virtual ~Backend() = default;
    virtual std::string complete(const ChatRequest& request) = 0;
    virtual Embedding embed(const std::string& text) = 0;
};

} // namespace pmas
