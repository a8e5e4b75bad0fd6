#pragma once
// Word-vector store, cosine similarity over (possibly multiword) phrases,
// top-k equivalent ranking and the precomputed equivalence map.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace foon {

struct SimilarityConfig {
    double tau = 0.90;  // similarity threshold, (0, 1]
    int top_k = 5;      // candidates surfaced per unseen ingredient

    bool valid() const { return tau > 0.0 && tau <= 1.0 && top_k >= 1; }
};

class VectorFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class VectorStore {
public:
    VectorStore() = default;
    VectorStore(int dims, std::unordered_map<std::string, std::vector<double>> vecs)
        : dims_(dims), vectors_(std::move(vecs)) {}

    // Plain-text format: header "<count> <dims>", then one token plus dims
    // space-separated reals per line.
    static VectorStore load(const std::string& path);
    static VectorStore parse(const std::string& text);

    int dims() const { return dims_; }
    std::size_t size() const { return vectors_.size(); }
    bool has(const std::string& token) const { return vectors_.count(token) > 0; }

    const std::vector<double>* token_vector(const std::string& token) const;

    // Single token: its vector. Multiword: mean of in-vocabulary token
    // vectors. nullopt when no token is known.
    std::optional<std::vector<double>> phrase_vector(const std::string& phrase) const;

    // Cosine of phrase vectors, clamped to [0, 1]; nullopt when either
    // phrase has no vector.
    std::optional<double> similarity(const std::string& a, const std::string& b) const;

private:
    int dims_ = 0;
    std::unordered_map<std::string, std::vector<double>> vectors_;
};

using ScoredName = std::pair<std::string, double>;

// The k best-scoring vocab members for word, excluding word itself, sorted
// by score descending then name ascending. Members without vectors are
// skipped, so the list may be shorter than k.
std::vector<ScoredName> top_k_equivalents(const VectorStore& store,
                                          const std::string& word,
                                          const std::set<std::string>& vocab,
                                          int k);

class EquivalenceMap {
public:
    const std::vector<ScoredName>* lookup(const std::string& unseen) const {
        auto it = entries_.find(unseen);
        return it == entries_.end() ? nullptr : &it->second;
    }
    std::size_t size() const { return entries_.size(); }
    const std::map<std::string, std::vector<ScoredName>>& entries() const {
        return entries_;
    }

    friend EquivalenceMap build_equivalence_map(const VectorStore& store,
                                                const std::set<std::string>& unseen,
                                                const std::set<std::string>& vocab,
                                                const SimilarityConfig& cfg);

private:
    std::map<std::string, std::vector<ScoredName>> entries_;
};

EquivalenceMap build_equivalence_map(const VectorStore& store,
                                     const std::set<std::string>& unseen,
                                     const std::set<std::string>& vocab,
                                     const SimilarityConfig& cfg);

}  // namespace foon
