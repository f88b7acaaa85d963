#include "pmas/knowledge.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace pmas {

const std::vector<GraphEdge> KnowledgeGraph::kNoEdges = {};

KnowledgeGraph KnowledgeGraph::load(const std::string& path, const EmbedFn& embed) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ConfigError("knowledge graph " + path + " is not valid JSON: " + e.what());
    }
    std::vector<GraphNode> nodes;
    std::vector<GraphEdge> edges;
    for (const auto& n : doc.at("nodes")) {
        GraphNode node;
        node.id = n.at("id").get<std::string>();
        node.label = n.at("label").get<std::string>();
        node.kind = n.at("kind").get<std::string>();
        node.embedding = embed(node.label);
        nodes.push_back(std::move(node));
    }
    for (const auto& e : doc.at("edges")) {
        edges.push_back({e.at("from").get<std::string>(), e.at("to").get<std::string>(),
                         e.at("relation").get<std::string>()});
    }
    return from_parts(std::move(nodes), std::move(edges));
}

KnowledgeGraph KnowledgeGraph::from_parts(std::vector<GraphNode> nodes,
                                          std::vector<GraphEdge> edges) {
    KnowledgeGraph g;
    std::sort(nodes.begin(), nodes.end(),
              [](const GraphNode& a, const GraphNode& b) { return a.id < b.id; });
    g.nodes_ = std::move(nodes);
    for (size_t i = 0; i < g.nodes_.size(); ++i) {
        if (!g.by_id_.emplace(g.nodes_[i].id, i).second) {
            throw ConfigError("duplicate graph node id: " + g.nodes_[i].id);
        }
    }
    for (const auto& e : edges) {
        if (!g.by_id_.count(e.from) || !g.by_id_.count(e.to)) {
            throw ConfigError("graph edge references unknown node: " + e.from + " -> " + e.to);
        }
        g.adjacency_[e.from].push_back(e);
    }
    for (auto& [id, out] : g.adjacency_) {
        (void)id;
        std::sort(out.begin(), out.end(), [](const GraphEdge& a, const GraphEdge& b) {
            return std::tie(a.relation, a.to) < std::tie(b.relation, b.to);
        });
    }
    return g;
}

const GraphNode& KnowledgeGraph::node(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) throw Error("unknown graph node: " + id);
    return nodes_[it->second];
}

const std::vector<GraphEdge>& KnowledgeGraph::edges_from(const std::string& id) const {
    auto it = adjacency_.find(id);
    return it == adjacency_.end() ? kNoEdges : it->second;
}

DocumentCorpus DocumentCorpus::load(const std::string& dir, const EmbedFn& embed) {
    if (!fs::is_directory(dir)) throw ConfigError("corpus directory not found: " + dir);
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
    std::vector<Document> docs;
    for (const auto& f : files) {
        const std::string content = read_file(f);
        Document d;
        d.doc_id = fs::path(f).stem().string();
        size_t nl = content.find('\n');
        d.title = trim(content.substr(0, nl == std::string::npos ? content.size() : nl));
        d.body = nl == std::string::npos ? "" : content.substr(nl + 1);
        d.embedding = embed(d.title + "\n" + d.body);
        docs.push_back(std::move(d));
    }
    return from_documents(std::move(docs));
}

DocumentCorpus DocumentCorpus::from_documents(std::vector<Document> docs) {
    DocumentCorpus corpus;
    std::sort(docs.begin(), docs.end(),
              [](const Document& a, const Document& b) { return a.doc_id < b.doc_id; });
    for (size_t i = 1; i < docs.size(); ++i) {
        if (docs[i].doc_id == docs[i - 1].doc_id) {
            throw ConfigError("duplicate document id: " + docs[i].doc_id);
        }
    }
    corpus.docs_ = std::move(docs);
    return corpus;
}

namespace {

// (similarity desc, id asc) ranking over anything exposing id + embedding.
template <typename T>
std::vector<const T*> rank_by_similarity(const std::vector<T>& items, const Embedding& query,
                                         const std::function<const std::string&(const T&)>& id_of) {
    std::vector<std::pair<double, const T*>> scored;
    scored.reserve(items.size());
    for (const auto& item : items) {
        scored.emplace_back(cosine_similarity(query, item.embedding), &item);
    }
    std::sort(scored.begin(), scored.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return id_of(*a.second) < id_of(*b.second);
    });
    std::vector<const T*> out;
    out.reserve(scored.size());
    for (const auto& [sim, ptr] : scored) {
        (void)sim;
        out.push_back(ptr);
    }
    return out;
}

// All maximal simple paths from `start` with at most max_hops edges, ordered
// by descending length then lexicographic (relation, node) sequence.
void enumerate_paths(const KnowledgeGraph& graph, const std::string& start, size_t max_hops,
                     std::vector<std::vector<const GraphEdge*>>& out) {
    std::vector<const GraphEdge*> current;
    std::set<std::string> visited{start};
    std::function<void(const std::string&)> dfs = [&](const std::string& at) {
        bool extended = false;
        if (current.size() < max_hops) {
            for (const auto& e : graph.edges_from(at)) {
                if (visited.count(e.to)) continue;
                extended = true;
                visited.insert(e.to);
                current.push_back(&e);
                dfs(e.to);
                current.pop_back();
                visited.erase(e.to);
            }
        }
        if (!extended && !current.empty()) out.push_back(current);
    };
    dfs(start);
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.size() > b.size();
    });
}

} // namespace

std::vector<ContextBlock> retrieve_graph_paths(const KnowledgeGraph& graph,
                                               const std::string& query, size_t k,
                                               const EmbedFn& embed, size_t max_hops) {
    if (k < 1) throw Error("retrieval k must be >= 1");
    if (graph.empty()) throw Error("cannot retrieve from an empty graph");
    const Embedding q = embed(query);
    auto ranked = rank_by_similarity<GraphNode>(
        graph.nodes(), q, [](const GraphNode& n) -> const std::string& { return n.id; });
    const GraphNode& start = *ranked.front();
    std::vector<std::vector<const GraphEdge*>> paths;
    enumerate_paths(graph, start.id, max_hops, paths);
    std::vector<ContextBlock> blocks;
    if (paths.empty()) {
        // Isolated start node: the path is the node itself.
        blocks.push_back({"graph-path", {start.id}, start.label});
        return blocks;
    }
    for (size_t i = 0; i < paths.size() && i < k; ++i) {
        ContextBlock block;
        block.source = "graph-path";
        std::ostringstream text;
        block.provenance.push_back(start.id);
        text << start.label;
        std::string at = start.id;
        for (const GraphEdge* e : paths[i]) {
            text << " —" << e->relation << "→ " << graph.node(e->to).label;
            block.provenance.push_back(e->to);
            at = e->to;
        }
        block.text = text.str();
        blocks.push_back(std::move(block));
    }
    return blocks;
}

std::vector<ContextBlock> retrieve_graph_embedding(const KnowledgeGraph& graph,
                                                   const std::string& query, size_t k,
                                                   const EmbedFn& embed) {
    if (k < 1) throw Error("retrieval k must be >= 1");
    if (graph.empty()) throw Error("cannot retrieve from an empty graph");
    const Embedding q = embed(query);
    auto ranked = rank_by_similarity<GraphNode>(
        graph.nodes(), q, [](const GraphNode& n) -> const std::string& { return n.id; });
    std::vector<ContextBlock> blocks;
    for (size_t i = 0; i < ranked.size() && i < k; ++i) {
        blocks.push_back({"graph-embedding", {ranked[i]->id},
                          ranked[i]->kind + ": " + ranked[i]->label});
    }
    return blocks;
}

std::vector<ContextBlock> retrieve_documents(const DocumentCorpus& corpus,
                                             const std::string& query, size_t k,
                                             const EmbedFn& embed) {
    if (k < 1) throw Error("retrieval k must be >= 1");
    if (corpus.empty()) throw Error("cannot retrieve from an empty corpus");
    const Embedding q = embed(query);
    auto ranked = rank_by_similarity<Document>(
        corpus.documents(), q, [](const Document& d) -> const std::string& { return d.doc_id; });
    std::vector<ContextBlock> blocks;
    for (size_t i = 0; i < ranked.size() && i < k; ++i) {
        blocks.push_back({"document", {ranked[i]->doc_id},
                          ranked[i]->title + "\n" + ranked[i]->body});
    }
    return blocks;
}

std::string format_context(const std::vector<ContextBlock>& blocks) {
    std::ostringstream out;
    for (size_t i = 0; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        out << "[" << i + 1 << "] source=" << b.source << " ids=";
        for (size_t j = 0; j < b.provenance.size(); ++j) {
            if (j) out << ",";
            out << b.provenance[j];
        }
        out << "\n" << b.text << "\n";
    }
    return out.str();
}

} // namespace pmas
