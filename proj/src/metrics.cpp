#include "pmas/metrics.hpp"

#include <cmath>

namespace pmas {

NormativeResult normative_score(const std::string& output_text, const std::string& upstream_context,
                                const PersonaSpec& persona, AgentRole output_role,
                                const Judge& judge) {
    if (persona.role != output_role) {
        throw Error("normative_score: persona " + persona.persona_id + " does not match role " +
                    role_name(output_role));
    }
    JudgeRequest request;
    request.criteria = persona.normative_criteria;
    request.output_text = output_text;
    request.upstream_context = upstream_context;
    NormativeResult result;
    result.assessment = judge.assess(request);
    result.score = result.assessment.aggregate.value();
    return result;
}

double prescriptive_overall(double pi_l, double pi_c, double pi_e,
                            const PrescriptiveWeights& weights) {
    if (weights.linguistic < 0 || weights.consistency < 0 || weights.ethical < 0) {
        throw Error("prescriptive weights must be nonnegative");
    }
    const double sum = weights.linguistic + weights.consistency + weights.ethical;
    if (std::abs(sum - 1.0) > 1e-9) {
        throw Error("prescriptive weights must sum to 1, got " + std::to_string(sum));
    }
    return weights.linguistic * pi_l + weights.consistency * pi_c + weights.ethical * pi_e;
}

PrescriptiveBundle prescriptive_score(const std::string& output_text,
                                      const std::string& upstream_context,
                                      const PersonaSpec& persona, const Judge& judge,
                                      const PrescriptiveWeights& weights) {
    auto dimension_mean = [&](const std::vector<std::string>& prescriptions) {
        JudgeRequest request;
        request.criteria = prescriptions;
        request.output_text = output_text;
        request.upstream_context = upstream_context;
        return judge.assess(request).aggregate.value();
    };
    PrescriptiveBundle bundle;
    bundle.weights = weights;
    bundle.pi_linguistic = dimension_mean(persona.linguistic_habits);
    bundle.pi_consistency = dimension_mean(persona.consistency_prescriptions);
    bundle.pi_ethical = dimension_mean(persona.ethical_prescriptions);
    bundle.overall = prescriptive_overall(bundle.pi_linguistic, bundle.pi_consistency,
                                          bundle.pi_ethical, weights);
    return bundle;
}

double semantic_distance(const Embedding& e1, const Embedding& e2) {
    if (e1.norm() <= 0.0 || e2.norm() <= 0.0) throw Error("zero-norm embedding in semantic_distance");
    return 1.0 - cosine_similarity(e1, e2);
}

ExpansionResult knowledge_expansion(const std::set<std::string>& user_vocab,
                                    const std::set<std::string>& agent_vocab,
                                    const DomainTaxonomy& taxonomy) {
    ExpansionResult result;
    for (const auto& term : agent_vocab) {
        if (!user_vocab.count(term)) result.novel.insert(term);
    }
    for (const auto& term : result.novel) {
        (taxonomy.contains(term) ? result.expansion : result.drift).insert(term);
    }
    if (!result.novel.empty()) {
        result.defined = true;
        result.r_exp =
            static_cast<double>(result.expansion.size()) / static_cast<double>(result.novel.size());
        result.r_drift = 1.0 - result.r_exp;
    }
    return result;
}

CodeQualityReport code_quality(double structure, double runtime, double policy, double formal,
                               int run_index) {
    for (double v : {structure, runtime, policy, formal}) {
        if (!(v >= 0.0 && v <= 100.0)) {
            throw Error("code quality component out of [0,100]: " + std::to_string(v));
        }
    }
    CodeQualityReport report;
    report.structure = structure;
    report.runtime = runtime;
    report.policy = policy;
    report.formal = formal;
    report.overall = (structure + runtime + policy + formal) / 4.0;
    report.run_index = run_index;
    return report;
}

double quality_delta(double q_t, double q_t_plus_1) {
    return q_t_plus_1 - q_t;
}

double relative_improvement_percent(double q_from, double q_to) {
    if (q_from == 0.0) throw Error("relative improvement undefined for zero base");
    return (q_to - q_from) / q_from * 100.0;
}

} // namespace pmas
