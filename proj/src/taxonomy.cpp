#include "pmas/taxonomy.hpp"

#include <algorithm>

#include "json.hpp"
#include "pmas/common.hpp"

using json = nlohmann::json;

namespace pmas {

DomainTaxonomy DomainTaxonomy::load(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ConfigError("taxonomy " + path + " is not valid JSON: " + e.what());
    }
    std::map<std::string, std::vector<std::string>> terms;
    for (const auto& [domain, list] : doc.items()) {
        terms[domain] = list.get<std::vector<std::string>>();
    }
    return from_terms(terms);
}

DomainTaxonomy DomainTaxonomy::from_terms(
    const std::map<std::string, std::vector<std::string>>& terms) {
    DomainTaxonomy t;
    if (terms.size() != kTaxonomyDomains.size()) {
        throw ConfigError("taxonomy must define exactly 9 domains, got " +
                          std::to_string(terms.size()));
    }
    for (const char* domain : kTaxonomyDomains) {
        auto it = terms.find(domain);
        if (it == terms.end()) throw ConfigError(std::string("taxonomy missing domain: ") + domain);
        auto& bucket = t.domains_[domain];
        for (const auto& term : it->second) bucket.insert(to_lower(term));
    }
    return t;
}

bool DomainTaxonomy::contains(const std::string& term) const {
    return domain_of(term).has_value();
}

std::optional<std::string> DomainTaxonomy::domain_of(const std::string& term) const {
    const std::string needle = to_lower(term);
    for (const char* domain : kTaxonomyDomains) {
        const auto& bucket = domains_.at(domain);
        if (bucket.count(needle)) return std::string(domain);
    }
    return std::nullopt;
}

const std::set<std::string>& DomainTaxonomy::terms(const std::string& domain) const {
    auto it = domains_.find(domain);
    if (it == domains_.end()) throw Error("unknown taxonomy domain: " + domain);
    return it->second;
}

size_t DomainTaxonomy::total_terms() const {
    size_t n = 0;
    for (const auto& [d, s] : domains_) {
        (void)d;
        n += s.size();
    }
    return n;
}

} // namespace pmas
