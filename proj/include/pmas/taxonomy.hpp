#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pmas {

// The nine technical domains of the concept taxonomy, in canonical order.
inline constexpr std::array<const char*, 9> kTaxonomyDomains = {
    "networking", "resource", "qos", "ml", "opt", "oran", "traffic", "energy", "prog"};

class DomainTaxonomy {
public:
    // Loads {domain: [terms]} JSON; requires exactly the nine canonical
    // domains. Terms are lowercase-normalized on load.
    static DomainTaxonomy load(const std::string& path);
    static DomainTaxonomy from_terms(const std::map<std::string, std::vector<std::string>>& terms);

    bool contains(const std::string& term) const;
    std::optional<std::string> domain_of(const std::string& term) const;
    const std::set<std::string>& terms(const std::string& domain) const;
    size_t total_terms() const;

private:
    std::map<std::string, std::set<std::string>> domains_;
};

} // namespace pmas
