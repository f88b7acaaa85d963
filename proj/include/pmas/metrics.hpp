#pragma once

#include <set>
#include <string>
#include <vector>

#include "pmas/gateway.hpp"
#include "pmas/judge.hpp"
#include "pmas/persona.hpp"
#include "pmas/taxonomy.hpp"
#include "pmas/types.hpp"

namespace pmas {

// --- Normative branch -------------------------------------------------------

struct NormativeResult {
    double score = 0.0; // mean of per-criterion scores
    JudgeAssessment assessment;
};

// N(o, p) = mean of s(o, c) over the persona's normative criteria.
NormativeResult normative_score(const std::string& output_text, const std::string& upstream_context,
                                const PersonaSpec& persona, AgentRole output_role,
                                const Judge& judge);

// --- Prescriptive branch ----------------------------------------------------

struct PrescriptiveWeights {
    double linguistic = 1.0 / 3.0;
    double consistency = 1.0 / 3.0;
    double ethical = 1.0 / 3.0;
};

struct PrescriptiveBundle {
    double pi_linguistic = 0.0;
    double pi_consistency = 0.0;
    double pi_ethical = 0.0;
    double overall = 0.0;
    PrescriptiveWeights weights;
};

// Weighted aggregate of the three five-prescription dimension means.
double prescriptive_overall(double pi_l, double pi_c, double pi_e,
                            const PrescriptiveWeights& weights);

PrescriptiveBundle prescriptive_score(const std::string& output_text,
                                      const std::string& upstream_context,
                                      const PersonaSpec& persona, const Judge& judge,
                                      const PrescriptiveWeights& weights = {});

// --- Behavioral branch ------------------------------------------------------

// 1 - cos(e1, e2); range [0,2], and [0,1] on nonnegative vectors.
double semantic_distance(const Embedding& e1, const Embedding& e2);

struct ExpansionResult {
    std::set<std::string> novel;
    std::set<std::string> expansion;
    std::set<std::string> drift;
    double r_exp = 0.0;
    double r_drift = 0.0;
    bool defined = false; // false iff the novel set is empty
};

ExpansionResult knowledge_expansion(const std::set<std::string>& user_vocab,
                                    const std::set<std::string>& agent_vocab,
                                    const DomainTaxonomy& taxonomy);

struct CodeQualityReport {
    double structure = 0.0;
    double runtime = 0.0;
    double policy = 0.0;
    double formal = 0.0;
    double overall = 0.0; // mean of the four
    int run_index = 0;
};

CodeQualityReport code_quality(double structure, double runtime, double policy, double formal,
                               int run_index = 0);

// Q^(t+1) - Q^(t).
double quality_delta(double q_t, double q_t_plus_1);

// (to - from) / from, in percent.
double relative_improvement_percent(double q_from, double q_to);

} // namespace pmas
