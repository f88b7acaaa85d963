#pragma once

#include <map>
#include <string>
#include <vector>

#include "pmas/types.hpp"

namespace pmas {

// A role-bound behavioral specification. The three prescriptive dimensions
// carry exactly five entries each; the normative criteria count is free.
struct PersonaSpec {
    std::string persona_id;
    AgentRole role = AgentRole::Planner;
    std::string description;
    std::vector<std::string> normative_criteria;
    std::vector<std::string> linguistic_habits;
    std::vector<std::string> consistency_prescriptions;
    std::vector<std::string> ethical_prescriptions;
    bool is_default = false;
};

ValidationResult validate_persona(const PersonaSpec& spec);

// Total mapping from every role to a persona whose role field matches.
struct PersonaAssignment {
    std::map<AgentRole, std::string> by_role;

    const std::string& persona_for(AgentRole role) const;
    std::map<std::string, std::string> to_name_map() const;
};

class PersonaRegistry {
public:
    // Parses one persona document (JSON object, schema in docs/formats.md).
    static PersonaSpec parse_persona(const std::string& json_text);

    // Loads every *.json file in `dir`. Requires exactly 3 personas per role
    // (1 default + 2 specialized) and unique ids.
    static PersonaRegistry load_library(const std::string& dir);

    // Builds a registry from in-memory specs, validating each. When
    // `require_full_library` is set, enforces the 3-per-role shape.
    static PersonaRegistry from_specs(std::vector<PersonaSpec> specs,
                                      bool require_full_library = false);

    const PersonaSpec& get(const std::string& persona_id) const;
    bool contains(const std::string& persona_id) const;
    size_t size() const { return order_.size(); }

    // Personas for a role: default first, then alphabetical by id.
    std::vector<std::string> personas_for_role(AgentRole role) const;

    // Full Cartesian product over roles in kAllRoles order, personas in
    // default-then-alphabetical order. The all-default assignment is first.
    std::vector<PersonaAssignment> enumerate_configurations() const;

private:
    std::map<std::string, PersonaSpec> specs_;
    std::vector<std::string> order_; // load order, for diagnostics
};

// Deterministic system prompt embedding the description, the normative
// criteria, and all three prescriptive dimensions verbatim.
std::string render_system_prompt(const PersonaSpec& persona, AgentRole role);

} // namespace pmas
