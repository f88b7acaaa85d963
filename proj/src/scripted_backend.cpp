#include "pmas/scripted_backend.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "json.hpp"

using ojson = nlohmann::ordered_json;

namespace pmas {

namespace {

// Terms inside the shipped nine-domain taxonomy.
const char* kDomainTerms[] = {
    "throughput", "latency",   "handover",     "interference", "scheduler",
    "utilization", "beamforming", "prb",        "rsrp",         "sinr",
    "backhaul",   "fronthaul", "spectral",     "admission",    "congestion",
    "fairness",   "energy",    "sleep",        "convexity",    "heuristic",
    "gradient",   "telemetry", "slicing",      "xapp",         "ric",
    "qos",        "jitter",    "demand",       "forecast",     "payload",
};
constexpr size_t kDomainTermCount = sizeof(kDomainTerms) / sizeof(kDomainTerms[0]);

// Off-domain filler, outside every taxonomy domain.
const char* kDriftTerms[] = {
    "orchard",  "violin",   "driftwood", "lantern",  "meadow",
    "tapestry", "harbor",   "sparrow",   "ceramic",  "voyage",
    "garnet",   "willow",   "saffron",   "glacier",  "mosaic",
};
constexpr size_t kDriftTermCount = sizeof(kDriftTerms) / sizeof(kDriftTerms[0]);

const char* kVerbs[] = {"estimate", "rank", "partition", "bound", "smooth", "gate", "stage"};
constexpr size_t kVerbCount = sizeof(kVerbs) / sizeof(kVerbs[0]);

std::string pick_domain(std::uint64_t h, int salt) {
    return kDomainTerms[fnv1a_mix(h, 0x5D0 + salt) % kDomainTermCount];
}

std::string pick_drift(std::uint64_t h, int salt) {
    return kDriftTerms[fnv1a_mix(h, 0xD51F7 + salt) % kDriftTermCount];
}

std::string pick_verb(std::uint64_t h, int salt) {
    return kVerbs[fnv1a_mix(h, 0xBE5B + salt) % kVerbCount];
}

std::string meta(const ChatRequest& r, const std::string& key, const std::string& fallback = "") {
    auto it = r.metadata.find(key);
    return it == r.metadata.end() ? fallback : it->second;
}

int meta_int(const ChatRequest& r, const std::string& key, int fallback) {
    auto it = r.metadata.find(key);
    if (it == r.metadata.end()) return fallback;
    return std::stoi(it->second);
}

double quantized_unit(std::uint64_t h) {
    return static_cast<double>(h % 101) / 100.0;
}

// A short clause mixing in-taxonomy and off-topic terms so the knowledge
// expansion metrics see both kinds of novel vocabulary.
std::string theme_clause(std::uint64_t h, int salt) {
    std::ostringstream out;
    out << pick_verb(h, salt) << " " << pick_domain(h, salt) << " against "
        << pick_domain(h, salt + 1);
    if (fnv1a_mix(h, salt + 77) % 3 == 0) {
        out << " beyond the " << pick_drift(h, salt + 2);
    }
    return out.str();
}

// "name=value;name=value"
std::vector<std::pair<std::string, std::string>> parse_constraints(const std::string& encoded) {
    std::vector<std::pair<std::string, std::string>> out;
    size_t pos = 0;
    while (pos < encoded.size()) {
        size_t end = encoded.find(';', pos);
        if (end == std::string::npos) end = encoded.size();
        std::string item = encoded.substr(pos, end - pos);
        size_t eq = item.find('=');
        if (eq != std::string::npos) {
            out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
        }
        pos = end + 1;
    }
    return out;
}

std::string gen_plan(const ChatRequest& req, std::uint64_t h) {
    const int count = meta_int(req, "count", 3);
    const std::string persona = meta(req, "persona", "default");
    ojson paths = ojson::array();
    for (int i = 1; i <= count; ++i) {
        std::uint64_t hp = fnv1a_mix(h, static_cast<std::uint64_t>(i));
        ojson steps = ojson::array();
        const int nsteps = 3 + static_cast<int>(fnv1a_mix(hp, 11) % 2);
        for (int s = 1; s <= nsteps; ++s) {
            std::ostringstream step;
            step << "Step " << s << ": " << theme_clause(hp, s * 13);
            steps.push_back(step.str());
        }
        std::ostringstream summary;
        summary << "Strategy " << i << ": " << pick_domain(hp, 3) << "-aware "
                << pick_domain(hp, 4) << " shaping (" << persona << ")";
        ojson path = ojson::object();
        path["id"] = i;
        path["summary"] = summary.str();
        path["steps"] = steps;
        // Quantized to 0.01 in [0.50, 0.99]; collisions create selection ties.
        path["self_eval"] = 0.50 + static_cast<double>(fnv1a_mix(hp, 29) % 50) / 100.0;
        paths.push_back(path);
    }
    ojson doc = ojson::object();
    doc["reasoning"] = "Explored " + std::to_string(count) + " directions, weighing " +
                       pick_domain(h, 41) + " risk against " + pick_domain(h, 42) + " gain.";
    doc["paths"] = paths;
    return doc.dump();
}

std::string gen_coordinator_turn(const ChatRequest& req, std::uint64_t seed, std::uint64_t h) {
    const int round = meta_int(req, "round", 1);
    const int count = meta_int(req, "path_count", 3);
    const std::string scores = meta(req, "path_scores");
    // The negotiation fate hash depends only on (seed, negotiation_key), so one
    // negotiation keeps a consistent accept round across its turns; the sweep
    // then covers first-round concurrence, late concurrence, and exhaustion.
    std::uint64_t hn = fnv1a(meta(req, "negotiation_key"), fnv1a("negotiation", seed));
    const int accept_round = static_cast<int>(hn % 4); // 0 => never concurs
    int selected = 1;
    if (fnv1a_mix(hn, 5) % 10 < 7 && !scores.empty()) {
        // Prefer the best self-evaluated path (ties to the lowest id).
        double best = -1.0;
        int idx = 1;
        std::istringstream ss(scores);
        std::string item;
        while (std::getline(ss, item, ',')) {
            double v = std::stod(item);
            if (v > best) {
                best = v;
                selected = idx;
            }
            ++idx;
        }
    } else {
        selected = 1 + static_cast<int>(fnv1a_mix(hn, 9) % static_cast<unsigned>(count));
    }
    std::ostringstream out;
    if (round == accept_round) {
        out << "ACCEPT path-" << selected << "\n";
        out << "Rationale: alignment reached on " << pick_domain(hn, round) << " handling; plan to "
            << theme_clause(hn, round * 7) << ".";
    } else {
        out << "SELECT path-" << selected << "\n";
        out << "Concern: round " << round << " review flags " << pick_domain(hn, round + 20)
            << " coverage; please " << pick_verb(hn, round) << " the "
            << pick_domain(hn, round + 21) << " step before we commit.";
    }
    (void)h;
    return out.str();
}

std::string gen_planner_revision(const ChatRequest& req, std::uint64_t h) {
    const int round = meta_int(req, "round", 1);
    std::ostringstream out;
    out << "Revision " << round << ": refreshed the contested step to " << theme_clause(h, round)
        << ", keeping the candidate set stable and restating the "
        << pick_domain(h, round + 3) << " assumptions.";
    return out.str();
}

std::string gen_decompose(const ChatRequest& req, std::uint64_t h) {
    const int selected = meta_int(req, "selected_path", 1);
    ojson steps = ojson::array();
    const int nsteps = 4 + static_cast<int>(fnv1a_mix(h, 17) % 3);
    for (int s = 1; s <= nsteps; ++s) {
        std::ostringstream step;
        step << "Execute " << s << ": " << theme_clause(h, 100 + s);
        steps.push_back(step.str());
    }
    ojson doc = ojson::object();
    doc["reasoning"] = "Decomposed path-" + std::to_string(selected) + " into " +
                       std::to_string(nsteps) + " auditable steps.";
    doc["selected_path"] = selected;
    doc["steps"] = steps;
    return doc.dump();
}

std::string gen_pseudocode(const ChatRequest& req, std::uint64_t h) {
    const int run = meta_int(req, "run", 1);
    const int round = meta_int(req, "round", 0);
    const std::string persona = meta(req, "persona", "default");
    const std::string task = meta(req, "task", "Q1");
    auto constraints = parse_constraints(meta(req, "constraints"));
    // First-pass drafts occasionally omit constraint parameters; the
    // structural checker flags those as algorithmic findings and the
    // refinement loop routes them back here.
    size_t omit_from = constraints.size();
    if (run == 1 && round == 0 && fnv1a_mix(h, 71) % 5 == 0 && constraints.size() > 3) {
        omit_from = constraints.size() - 3;
    }
    std::ostringstream out;
    out << "VARIABLES:\n";
    out << "- network_state: per-cell load, attached users, and forecast demand\n";
    out << "- decision_vector: "
        << (task == "Q1" ? "active prb count per base station" : "user to cell reassignment list")
        << "\n";
    for (size_t i = 0; i < omit_from; ++i) {
        out << "- " << constraints[i].first << " = " << constraints[i].second << "\n";
    }
    out << "CONTROL FLOW:\n";
    out << "1. validate network_state and reject stale snapshots\n";
    out << "2. " << theme_clause(h, 201) << "\n";
    out << "3. " << theme_clause(h, 202) << "\n";
    if (task == "Q1") {
        out << "4. clamp allocations into the utilization window, never above the hard cap\n";
        out << "5. keep the minimum active block floor whenever users are attached\n";
    } else {
        out << "4. shortlist users below the rsrp preference gain for reassignment\n";
        out << "5. charge the per-handover block overhead before accepting a move\n";
    }
    out << "RATIONALE:\n";
    out << "Revision " << run << "." << round << " (" << persona << "): " << theme_clause(h, 203)
        << "; margins stay explicit so the validator can audit them.\n";
    return out.str();
}

std::string q1_code_body(int level, std::uint64_t h) {
    std::ostringstream c;
    c << "import json\n";
    c << "import sys\n\n";
    if (level >= 3) c << "# Load and sanity-check the radio state snapshot.\n";
    c << "def load_state():\n";
    c << "    data = json.load(sys.stdin)\n";
    c << "    if \"base_stations\" not in data:\n";
    c << "        raise ValueError(\"missing base_stations\")\n";
    c << "    return data\n\n";
    c << "def plan_allocation(state):\n";
    if (level >= 3) c << "    # Size each cell for forecast demand plus the safety margin.\n";
    c << "    result = {}\n";
    c << "    for bs in state[\"base_stations\"]:\n";
    c << "        demand = bs[\"predicted_demand_mbps\"] * 1.2\n";
    c << "        prbs = int(demand / bs[\"per_prb_mbps\"]) + 1\n";
    c << "        if prbs < 10:\n";
    c << "            prbs = 10\n";
    if (level >= 3) {
        c << "        elif prbs > 90:\n";
        c << "            prbs = 90\n";
        c << "        else:\n";
        c << "            prbs = min(prbs, 80)\n";
    } else {
        c << "        if prbs > 90:\n";
        c << "            prbs = 90\n";
    }
    c << "        result[bs[\"id\"]] = prbs\n";
    c << "    return result\n\n";
    c << "def main():\n";
    if (level >= 2) {
        c << "    try:\n";
        c << "        state = load_state()\n";
        c << "        allocation = plan_allocation(state)\n";
        c << "    except (ValueError, KeyError) as exc:\n";
        c << "        print(json.dumps({\"error\": str(exc)}))\n";
        c << "        return\n";
    } else {
        c << "    state = load_state()\n";
        c << "    allocation = plan_allocation(state)\n";
    }
    c << "    print(json.dumps({\"allocation\": allocation, \"tag\": \"" << pick_domain(h, 301)
      << "\"}))\n\n";
    c << "main()\n";
    return c.str();
}

std::string q2_code_body(int level, std::uint64_t h) {
    std::ostringstream c;
    c << "import json\n";
    c << "import sys\n\n";
    if (level >= 3) c << "# Rank handover candidates by signal gain under load caps.\n";
    c << "def load_state():\n";
    c << "    data = json.load(sys.stdin)\n";
    c << "    if \"users\" not in data:\n";
    c << "        raise ValueError(\"missing users\")\n";
    c << "    return data\n\n";
    c << "def plan_handovers(state):\n";
    c << "    moves = []\n";
    c << "    loads = {bs[\"id\"]: bs[\"load\"] for bs in state[\"base_stations\"]}\n";
    c << "    for user in state[\"users\"]:\n";
    c << "        serving = user[\"serving\"]\n";
    c << "        current = user[\"rsrp\"][serving]\n";
    c << "        for target, rsrp in sorted(user[\"rsrp\"].items()):\n";
    c << "            if target == serving:\n";
    c << "                continue\n";
    c << "            if rsrp >= -110 and rsrp - current >= 5 and loads[target] < 0.8:\n";
    if (level >= 3) {
        c << "                moves.append({\"user\": user[\"id\"], \"target\": target, \"gain_db\": rsrp - current})\n";
        c << "                loads[target] += 0.02\n";
        c << "                break\n";
        c << "            else:\n";
        c << "                continue\n";
    } else {
        c << "                moves.append({\"user\": user[\"id\"], \"target\": target})\n";
        c << "                break\n";
    }
    c << "    return moves\n\n";
    c << "def main():\n";
    if (level >= 2) {
        c << "    try:\n";
        c << "        state = load_state()\n";
        c << "        moves = plan_handovers(state)\n";
        c << "    except (ValueError, KeyError) as exc:\n";
        c << "        print(json.dumps({\"error\": str(exc)}))\n";
        c << "        return\n";
    } else {
        c << "    state = load_state()\n";
        c << "    moves = plan_handovers(state)\n";
    }
    c << "    print(json.dumps({\"handovers\": moves, \"tag\": \"" << pick_domain(h, 302)
      << "\"}))\n\n";
    c << "main()\n";
    return c.str();
}

std::string gen_code(const ChatRequest& req, std::uint64_t h) {
    const int run = meta_int(req, "run", 1);
    const int round = meta_int(req, "round", 0);
    const std::string persona = meta(req, "persona", "default");
    const std::string task = meta(req, "task", "Q1");
    const int level = std::min(3, run + round);
    // Body text is a function of (task, level, persona) only, so the sandbox
    // memo cache stays small across the sweep.
    const std::uint64_t hb = fnv1a(task, fnv1a(persona));
    std::ostringstream out;
    out << "Rationale: revision " << run << "." << round << " favors " << pick_domain(h, 310)
        << " clarity (" << persona << ").\n";
    out << "```python\n";
    out << "# revision r" << run << "." << round << " [" << persona << "] "
        << pick_drift(fnv1a(persona), 311) << " profile\n";
    // A first-draft slip that the policy scanner catches; refinement drops it.
    const bool policy_slip = (run == 1 && round == 0 && fnv1a_mix(h, 91) % 7 == 0);
    if (policy_slip) out << "import os\n";
    out << (task == "Q1" ? q1_code_body(level, hb) : q2_code_body(level, hb));
    if (policy_slip) out << "os.system(\"sync\")\n";
    out << "```\n";
    return out.str();
}

std::string gen_analysis(const ChatRequest& req, std::uint64_t h) {
    const std::string persona = meta(req, "persona", "default");
    const std::string scores = meta(req, "scores", "0,0,0,0");
    const std::string verdict = meta(req, "verdict", "refine");
    std::ostringstream out;
    out << "Assessment (" << persona << "): component scores [" << scores << "], verdict "
        << verdict << ". ";
    out << "Review emphasis: " << theme_clause(h, 401) << ". ";
    if (verdict == "pass") {
        out << "The artifact satisfies every dimension threshold and is deployable.";
    } else {
        out << "Weakest dimension drives the routing decision recorded alongside this report.";
    }
    return out.str();
}

std::string gen_judge(const ChatRequest& req, std::uint64_t h) {
    // Criteria are the numbered lines between the CRITERIA: and OUTPUT:
    // markers of the judging prompt; the score is a pure hash of
    // (criterion, judged payload) so upstream changes cascade.
    std::string prompt;
    for (const auto& m : req.messages) {
        prompt += m.content;
        prompt += '\n';
    }
    std::vector<std::string> criteria;
    std::string payload;
    size_t cpos = prompt.find("CRITERIA:");
    size_t opos = prompt.find("OUTPUT:");
    if (cpos != std::string::npos && opos != std::string::npos && opos > cpos) {
        for (const auto& line : split_lines(prompt.substr(cpos, opos - cpos))) {
            std::string t = trim(line);
            size_t dot = t.find(". ");
            if (!t.empty() && std::isdigit(static_cast<unsigned char>(t[0])) &&
                dot != std::string::npos) {
                criteria.push_back(t.substr(dot + 2));
            }
        }
        payload = prompt.substr(opos);
    }
    ojson scores = ojson::array();
    for (const auto& criterion : criteria) {
        std::uint64_t hc = fnv1a(criterion, fnv1a(payload, h));
        ojson item = ojson::object();
        item["criterion"] = criterion;
        item["score"] = quantized_unit(hc);
        item["justification"] = "Deterministic rubric check " + std::to_string(hc % 0xFFFF) +
                                " against the cited output.";
        scores.push_back(item);
    }
    ojson doc = ojson::object();
    doc["scores"] = scores;
    return doc.dump();
}

} // namespace

Embedding hashed_bow_embedding(const std::string& text, size_t dim) {
    if (text.empty()) throw Error("cannot embed empty text");
    auto tokens = alnum_tokens(text);
    if (tokens.empty()) throw Error("cannot embed text with no tokens");
    std::vector<double> values(dim, 0.0);
    for (const auto& tok : tokens) {
        values[fnv1a(tok) % dim] += 1.0;
    }
    double norm = 0.0;
    for (double v : values) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : values) v /= norm;
    return Embedding(std::move(values));
}

std::string ScriptedBackend::complete(const ChatRequest& request) {
    const std::string stage = meta(request, "stage", "generic");
    std::uint64_t h = fnv1a(request.concatenated_content(), seed_);
    h = fnv1a(stage, h);
    if (stage == "plan") return gen_plan(request, h);
    if (stage == "negotiate-coordinator") return gen_coordinator_turn(request, seed_, h);
    if (stage == "negotiate-planner") return gen_planner_revision(request, h);
    if (stage == "decompose") return gen_decompose(request, h);
    if (stage == "allocate") return gen_pseudocode(request, h);
    if (stage == "code") return gen_code(request, h);
    if (stage == "analyse") return gen_analysis(request, h);
    if (stage == "judge") return gen_judge(request, h);
    return "Deterministic reply " + std::to_string(h % 0xFFFFFF) + ": " + theme_clause(h, 1) + ".";
}

Embedding ScriptedBackend::embed(const std::string& text) {
    return hashed_bow_embedding(text, kEmbeddingDim);
}

} // namespace pmas
