#include "pmas/gateway.hpp"

#include <cmath>

namespace pmas {

std::string ChatRequest::concatenated_content() const {
    std::string all;
    for (const auto& m : messages) {
        all += m.role;
        all += '\x1e';
        all += m.content;
        all += '\x1e';
    }
    return all;
}

Embedding::Embedding(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 8) throw Error("embedding dimension must be >= 8");
    if (norm() <= 0.0) throw Error("zero-norm embedding rejected");
}

double Embedding::norm() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return std::sqrt(s);
}

double cosine_similarity(const Embedding& a, const Embedding& b) {
    if (a.dimension() != b.dimension()) throw Error("embedding dimension mismatch");
    double dot = 0.0;
    for (size_t i = 0; i < a.dimension(); ++i) dot += a.values()[i] * b.values()[i];
    const double na = a.norm();
    const double nb = b.norm();
    if (na <= 0.0 || nb <= 0.0) throw Error("zero-norm embedding in cosine similarity");
    return dot / (na * nb);
}

} // namespace pmas
