#include "pmas/persona.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace pmas {

ValidationResult validate_persona(const PersonaSpec& spec) {
    ValidationResult result;
    if (spec.persona_id.empty()) result.violations.push_back("empty persona_id");
    if (spec.normative_criteria.empty()) {
        result.violations.push_back(spec.persona_id + ": normative_criteria must be non-empty");
    }
    auto check5 = [&](const std::vector<std::string>& v, const char* name) {
        if (v.size() != 5) {
            result.violations.push_back(spec.persona_id + ": prescription count: " + name +
                                        " has " + std::to_string(v.size()) + " entries, expected 5");
        }
    };
    check5(spec.linguistic_habits, "linguistic_habits");
    check5(spec.consistency_prescriptions, "consistency_prescriptions");
    check5(spec.ethical_prescriptions, "ethical_prescriptions");
    return result;
}

const std::string& PersonaAssignment::persona_for(AgentRole role) const {
    auto it = by_role.find(role);
    if (it == by_role.end()) throw Error("assignment missing role " + role_name(role));
    return it->second;
}

std::map<std::string, std::string> PersonaAssignment::to_name_map() const {
    std::map<std::string, std::string> out;
    for (const auto& [role, id] : by_role) out[role_name(role)] = id;
    return out;
}

PersonaSpec PersonaRegistry::parse_persona(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("persona document is not valid JSON: ") + e.what());
    }
    PersonaSpec spec;
    try {
        spec.persona_id = doc.at("persona_id").get<std::string>();
        spec.role = role_from_name(doc.at("role").get<std::string>());
        spec.description = doc.at("description").get<std::string>();
        spec.normative_criteria = doc.at("normative_criteria").get<std::vector<std::string>>();
        spec.linguistic_habits = doc.at("linguistic_habits").get<std::vector<std::string>>();
        spec.consistency_prescriptions =
            doc.at("consistency_prescriptions").get<std::vector<std::string>>();
        spec.ethical_prescriptions = doc.at("ethical_prescriptions").get<std::vector<std::string>>();
        spec.is_default = doc.value("is_default", false);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("persona schema violation: ") + e.what());
    }
    auto v = validate_persona(spec);
    if (!v.ok()) {
        std::ostringstream msg;
        msg << "persona schema violation:";
        for (const auto& s : v.violations) msg << " " << s << ";";
        throw ConfigError(msg.str());
    }
    return spec;
}

PersonaRegistry PersonaRegistry::load_library(const std::string& dir) {
    std::vector<PersonaSpec> specs;
    std::vector<std::string> files;
    if (!fs::is_directory(dir)) throw ConfigError("persona library directory not found: " + dir);
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".json") files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) specs.push_back(parse_persona(read_file(f)));
    return from_specs(std::move(specs), /*require_full_library=*/true);
}

PersonaRegistry PersonaRegistry::from_specs(std::vector<PersonaSpec> specs,
                                            bool require_full_library) {
    PersonaRegistry registry;
    for (auto& spec : specs) {
        auto v = validate_persona(spec);
        if (!v.ok()) throw ConfigError("persona schema violation: " + v.violations.front());
        if (registry.specs_.count(spec.persona_id)) {
            throw ConfigError("duplicate persona id: " + spec.persona_id);
        }
        registry.order_.push_back(spec.persona_id);
        registry.specs_.emplace(spec.persona_id, std::move(spec));
    }
    if (require_full_library) {
        for (AgentRole role : kAllRoles) {
            auto ids = registry.personas_for_role(role);
            if (ids.size() != 3) {
                throw ConfigError("wrong per-role count: role " + role_name(role) + " has " +
                                  std::to_string(ids.size()) + " personas, expected 3");
            }
            int defaults = 0;
            for (const auto& id : ids) {
                if (registry.get(id).is_default) ++defaults;
            }
            if (defaults != 1) {
                throw ConfigError("role " + role_name(role) + " must have exactly 1 default persona");
            }
        }
    }
    return registry;
}

const PersonaSpec& PersonaRegistry::get(const std::string& persona_id) const {
    auto it = specs_.find(persona_id);
    if (it == specs_.end()) throw ConfigError("unknown persona id: " + persona_id);
    return it->second;
}

bool PersonaRegistry::contains(const std::string& persona_id) const {
    return specs_.count(persona_id) > 0;
}

std::vector<std::string> PersonaRegistry::personas_for_role(AgentRole role) const {
    std::vector<std::string> defaults;
    std::vector<std::string> others;
    for (const auto& [id, spec] : specs_) {
        if (spec.role != role) continue;
        (spec.is_default ? defaults : others).push_back(id);
    }
    std::sort(defaults.begin(), defaults.end());
    std::sort(others.begin(), others.end());
    defaults.insert(defaults.end(), others.begin(), others.end());
    return defaults;
}

std::vector<PersonaAssignment> PersonaRegistry::enumerate_configurations() const {
    std::vector<std::vector<std::string>> choices;
    for (AgentRole role : kAllRoles) {
        auto ids = personas_for_role(role);
        if (ids.empty()) {
            throw ConfigError("no personas for role " + role_name(role));
        }
        choices.push_back(std::move(ids));
    }
    std::vector<PersonaAssignment> out;
    std::vector<size_t> idx(kAllRoles.size(), 0);
    while (true) {
        PersonaAssignment a;
        for (size_t r = 0; r < kAllRoles.size(); ++r) {
            a.by_role[kAllRoles[r]] = choices[r][idx[r]];
        }
        out.push_back(std::move(a));
        // Lexicographic increment, last role varies fastest.
        size_t r = kAllRoles.size();
        while (r > 0) {
            --r;
            if (++idx[r] < choices[r].size()) break;
            idx[r] = 0;
            if (r == 0) return out;
        }
    }
}

std::string render_system_prompt(const PersonaSpec& persona, AgentRole role) {
    if (persona.role != role) {
        throw ConfigError("role mismatch: persona " + persona.persona_id + " is bound to " +
                          role_name(persona.role) + ", not " + role_name(role));
    }
    std::ostringstream out;
    out << "You are the " << role_name(role) << " agent in a multi-agent O-RAN optimization system.\n";
    out << "Persona: " << persona.persona_id << "\n";
    out << persona.description << "\n\n";
    out << "Optimality criteria your outputs are measured against:\n";
    for (size_t i = 0; i < persona.normative_criteria.size(); ++i) {
        out << i + 1 << ". " << persona.normative_criteria[i] << "\n";
    }
    auto section = [&](const char* title, const std::vector<std::string>& items) {
        out << "\n" << title << ":\n";
        for (size_t i = 0; i < items.size(); ++i) {
            out << i + 1 << ". " << items[i] << "\n";
        }
    };
    section("Linguistic habits", persona.linguistic_habits);
    section("Consistency prescriptions", persona.consistency_prescriptions);
    section("Ethical prescriptions", persona.ethical_prescriptions);
    return out.str();
}

} // namespace pmas
