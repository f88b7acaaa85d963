#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pmas/gateway.hpp"
#include "pmas/types.hpp"

namespace pmas {

struct GraphNode {
    std::string id;
    std::string label;
    std::string kind; // "problem" | "solution" | "spec-clause"
    Embedding embedding;
};

struct GraphEdge {
    std::string from;
    std::string to;
    std::string relation;
};

using EmbedFn = std::function<Embedding(const std::string&)>;

class KnowledgeGraph {
public:
    // Loads nodes/edges from a JSON document (schema in docs/formats.md) and
    // embeds every node label with `embed`.
    static KnowledgeGraph load(const std::string& path, const EmbedFn& embed);
    static KnowledgeGraph from_parts(std::vector<GraphNode> nodes, std::vector<GraphEdge> edges);

    bool empty() const { return nodes_.empty(); }
    size_t node_count() const { return nodes_.size(); }
    const std::vector<GraphNode>& nodes() const { return nodes_; }
    const GraphNode& node(const std::string& id) const;
    // Outgoing edges sorted by (relation, target id).
    const std::vector<GraphEdge>& edges_from(const std::string& id) const;

private:
    std::vector<GraphNode> nodes_;              // sorted by id
    std::map<std::string, size_t> by_id_;
    std::map<std::string, std::vector<GraphEdge>> adjacency_;
    static const std::vector<GraphEdge> kNoEdges;
};

struct Document {
    std::string doc_id;
    std::string title;
    std::string body;
    Embedding embedding;
};

class DocumentCorpus {
public:
    // One document per file: first line is the title, the rest is the body.
    static DocumentCorpus load(const std::string& dir, const EmbedFn& embed);
    static DocumentCorpus from_documents(std::vector<Document> docs);

    bool empty() const { return docs_.empty(); }
    size_t size() const { return docs_.size(); }
    const std::vector<Document>& documents() const { return docs_; }

private:
    std::vector<Document> docs_; // sorted by doc_id
};

// Up to k paths starting at the node nearest the query embedding, each
// following at most max_hops edges; serialized as "A —rel→ B —rel→ C".
std::vector<ContextBlock> retrieve_graph_paths(const KnowledgeGraph& graph,
                                               const std::string& query, size_t k,
                                               const EmbedFn& embed, size_t max_hops = 3);

// The k nodes most cosine-similar to the query embedding, ties broken by
// ascending node id.
std::vector<ContextBlock> retrieve_graph_embedding(const KnowledgeGraph& graph,
                                                   const std::string& query, size_t k,
                                                   const EmbedFn& embed);

std::vector<ContextBlock> retrieve_documents(const DocumentCorpus& corpus,
                                             const std::string& query, size_t k,
                                             const EmbedFn& embed);

// Deterministic concatenation with source/provenance headers; empty in, empty out.
std::string format_context(const std::vector<ContextBlock>& blocks);

} // namespace pmas
