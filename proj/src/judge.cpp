#include "pmas/judge.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

using json = nlohmann::json;

namespace pmas {

std::string Judge::build_prompt(const JudgeRequest& request) {
    std::ostringstream out;
    out << "Assess how well the output below satisfies each criterion.\n";
    out << "Reply with JSON only: {\"scores\": [{\"criterion\": str, \"score\": number in [0,1], "
           "\"justification\": one sentence}]} with exactly one entry per criterion, in order.\n";
    out << "CRITERIA:\n";
    for (size_t i = 0; i < request.criteria.size(); ++i) {
        out << i + 1 << ". " << request.criteria[i] << "\n";
    }
    out << "OUTPUT:\n" << request.output_text << "\n";
    out << "CONTEXT:\n" << request.upstream_context << "\n";
    return out.str();
}

namespace {

JudgeAssessment parse_reply(const std::vector<std::string>& criteria, const std::string& reply) {
    json doc;
    try {
        doc = json::parse(reply);
    } catch (const json::exception& e) {
        throw JudgeError(std::string("judge reply is not valid JSON: ") + e.what());
    }
    if (!doc.contains("scores") || !doc["scores"].is_array()) {
        throw JudgeError("judge reply missing scores array");
    }
    const auto& arr = doc["scores"];
    if (arr.size() != criteria.size()) {
        throw JudgeError("judge returned " + std::to_string(arr.size()) + " scores for " +
                         std::to_string(criteria.size()) + " criteria");
    }
    JudgeAssessment assessment;
    assessment.criteria = criteria;
    double sum = 0.0;
    for (size_t i = 0; i < arr.size(); ++i) {
        const auto& item = arr[i];
        if (!item.contains("score") || !item["score"].is_number()) {
            throw JudgeError("judge entry " + std::to_string(i + 1) + " missing numeric score");
        }
        const double v = item["score"].get<double>();
        if (!(v >= 0.0 && v <= 1.0) || !std::isfinite(v)) {
            throw JudgeError("judge score out of [0,1]: " + std::to_string(v));
        }
        assessment.scores.push_back(Score::unit(v));
        assessment.justifications.push_back(item.value("justification", ""));
        sum += v;
    }
    assessment.aggregate = Score::unit(sum / static_cast<double>(criteria.size()));
    return assessment;
}

} // namespace

JudgeAssessment Judge::assess(const JudgeRequest& request) const {
    if (request.criteria.empty()) throw JudgeError("judging request has no criteria");
    ChatRequest chat;
    chat.messages = {{"system", "You are an impartial evaluation judge for multi-agent outputs."},
                     {"user", build_prompt(request)}};
    chat.temperature = kEvaluationTemperature;
    chat.response_format = "json_object";
    chat.metadata["stage"] = "judge";
    chat.metadata["model_kind"] = "judge";
    std::string first_error;
    for (int attempt = 0; attempt < 2; ++attempt) {
        const std::string reply = backend_->complete(chat);
        try {
            return parse_reply(request.criteria, reply);
        } catch (const JudgeError& e) {
            if (attempt == 0) {
                first_error = e.what();
                continue;
            }
            throw JudgeError("judging failed after retry: " + std::string(e.what()) +
                             " (first attempt: " + first_error + ")");
        }
    }
    throw JudgeError("unreachable");
}

} // namespace pmas
