#pragma once

#include <cstdint>

#include "pmas/gateway.hpp"

namespace pmas {

// Hashed bag-of-words embedding: lowercase alphanumeric tokens, counts hashed
// into `dim` buckets with FNV-1a, L2-normalized. Seed-independent so retrieval
// fixtures stay valid across run configurations.
Embedding hashed_bow_embedding(const std::string& text, size_t dim = 256);

// Deterministic offline backend for desk-scale runs and golden tests.
//
// complete() is a pure function of (seed, request): it dispatches on
// request.metadata["stage"] and derives all content from FNV hashes of the
// request, so repeated sweeps are byte-identical. Replies follow the same
// structured shapes the orchestrator expects from a live model.
class ScriptedBackend : public Backend {
public:
    explicit ScriptedBackend(std::uint64_t seed = 42) : seed_(seed) {}

    std::string complete(const ChatRequest& request) override;
    Embedding embed(const std::string& text) override;

    static constexpr size_t kEmbeddingDim = 256;

private:
    std::uint64_t seed_;
};

} // namespace pmas
