#include "foon/vectors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace foon {

VectorStore VectorStore::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw VectorFormatError("cannot open vector file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

VectorStore VectorStore::parse(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header))
        throw VectorFormatError("empty vector file");
    std::istringstream hs(header);
    long count = 0;
    int dims = 0;
    if (!(hs >> count >> dims) || count < 1 || dims < 1)
        throw VectorFormatError("malformed vector header: '" + header + "'");

    std::unordered_map<std::string, std::vector<double>> vecs;
    vecs.reserve(static_cast<std::size_t>(count));
    std::string line;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string token;
        ls >> token;
        std::vector<double> v;
        v.reserve(dims);
        double x;
        while (ls >> x) v.push_back(x);
        if (static_cast<int>(v.size()) != dims)
            throw VectorFormatError("line " + std::to_string(line_no) +
                                    ": expected " + std::to_string(dims) +
                                    " values, got " + std::to_string(v.size()));
        if (!vecs.emplace(token, std::move(v)).second)
            throw VectorFormatError("line " + std::to_string(line_no) +
                                    ": duplicate token '" + token + "'");
    }
    if (static_cast<long>(vecs.size()) != count)
        throw VectorFormatError("header count " + std::to_string(count) +
                                " does not match " + std::to_string(vecs.size()) +
                                " entries");
    return VectorStore(dims, std::move(vecs));
}

const std::vector<double>* VectorStore::token_vector(const std::string& token) const {
    auto it = vectors_.find(token);
    return it == vectors_.end() ? nullptr : &it->second;
}

std::optional<std::vector<double>> VectorStore::phrase_vector(
    const std::string& phrase) const {
    std::istringstream in(phrase);
    std::string token;
    std::vector<double> sum(static_cast<std::size_t>(dims_), 0.0);
    int hits = 0;
    while (in >> token) {
        if (const auto* v = token_vector(token)) {
            for (std::size_t i = 0; i < v->size(); ++i) sum[i] += (*v)[i];
            ++hits;
        }
    }
    if (hits == 0) return std::nullopt;
    for (auto& x : sum) x /= hits;
    return sum;
}

std::optional<double> VectorStore::similarity(const std::string& a,
                                              const std::string& b) const {
    auto va = phrase_vector(a);
    auto vb = phrase_vector(b);
    if (!va || !vb) return std::nullopt;
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < va->size(); ++i) {
        dot += (*va)[i] * (*vb)[i];
        na += (*va)[i] * (*va)[i];
        nb += (*vb)[i] * (*vb)[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    double cos = dot / (std::sqrt(na) * std::sqrt(nb));
    return std::clamp(cos, 0.0, 1.0);
}

std::vector<ScoredName> top_k_equivalents(const VectorStore& store,
                                          const std::string& word,
                                          const std::set<std::string>& vocab,
                                          int k) {
    std::vector<ScoredName> scored;
    for (const auto& cand : vocab) {
        if (cand == word) continue;
        if (auto s = store.similarity(word, cand)) scored.push_back({cand, *s});
    }
    std::sort(scored.begin(), scored.end(), [](const ScoredName& a, const ScoredName& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (static_cast<int>(scored.size()) > k) scored.resize(static_cast<std::size_t>(k));
    return scored;
}

EquivalenceMap build_equivalence_map(const VectorStore& store,
                                     const std::set<std::string>& unseen,
                                     const std::set<std::string>& vocab,
                                     const SimilarityConfig& cfg) {
    EquivalenceMap map;
    for (const auto& name : unseen)
        map.entries_[name] = top_k_equivalents(store, name, vocab, cfg.top_k);
    return map;
}

}  // namespace foon
