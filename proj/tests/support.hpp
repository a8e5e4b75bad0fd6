#pragma once
// Shared test fixtures: bundled-asset loading and a random acyclic network
// generator for differential testing against the exhaustive oracle.

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "foon/foon.hpp"
#include "foon/lexicon.hpp"
#include "foon/retrieval.hpp"
#include "foon/text.hpp"
#include "foon/vectors.hpp"

namespace foon::test {

inline std::string data_dir() { return FOON_DATA_DIR; }
inline std::string corpus_dir() { return data_dir() + "/corpus"; }

inline std::vector<Subgraph> load_corpus_subgraphs() {
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(corpus_dir()))
        if (entry.path().extension() == ".foon") files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    std::vector<Subgraph> out;
    for (const auto& f : files) out.push_back(load_subgraph(f));
    return out;
}

struct Fixture {
    UniversalFoon net;
    VectorStore store;
    MotionLexicon lex;
    StateTaxonomy tax;
    DishAttachmentRules rules;
    SimilarityConfig cfg;
};

// Loaded once per binary; the bundled corpus is immutable during a run.
inline const Fixture& fixture() {
    static const Fixture f = [] {
        Fixture x;
        x.net = merge(load_corpus_subgraphs());
        x.store = VectorStore::load(data_dir() + "/vectors.txt");
        x.lex = MotionLexicon::load(data_dir() + "/motions.txt");
        x.lex.count_corpus(x.net);
        x.tax = StateTaxonomy::load(data_dir() + "/taxonomy.txt");
        x.rules = DishAttachmentRules::load(data_dir() + "/dish_rules.txt");
        return x;
    }();
    return f;
}

struct RandomNetwork {
    UniversalFoon net;
    Kitchen kitchen;
    ObjectNode goal;
    std::set<std::string> required;
};

// Acyclic by construction: a unit's inputs predate its outputs; extra
// producers for an existing node only use nodes available before its first
// production. Names avoid the word-vector vocabulary so matching is exact.
inline RandomNetwork random_network(std::mt19937& rng, int max_units = 55) {
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    auto name_of = [](int i) { return "item" + std::to_string(i); };
    auto state_of = [](int i) { return "st" + std::to_string(i); };

    struct Avail {
        ObjectNode node;
        int level;  // -1 for kitchen items
    };
    std::vector<Avail> avail;
    std::set<std::string> seen_keys;
    Kitchen kitchen;
    const int n_start = 3 + pick(4);
    while (static_cast<int>(avail.size()) < n_start) {
        ObjectNode n(name_of(pick(40)), {state_of(pick(6))});
        if (!seen_keys.insert(n.key()).second) continue;
        avail.push_back({n, -1});
        kitchen.add(n);
    }

    std::vector<FunctionalUnit> units;
    std::map<std::string, int> first_produced;  // node key -> unit level
    const int n_units = 3 + pick(max_units - 2);
    for (int u = 0; u < n_units; ++u) {
        int max_level = u;  // inputs must exist before this unit
        std::vector<ObjectNode> outputs;
        if (!first_produced.empty() && pick(4) == 0) {
            // Second producer for an existing node.
            auto it = first_produced.begin();
            std::advance(it, pick(static_cast<int>(first_produced.size())));
            for (const auto& a : avail)
                if (a.node.key() == it->first) outputs.push_back(a.node);
            max_level = it->second;
        }
        std::vector<ObjectNode> inputs;
        std::vector<const Avail*> usable;
        for (const auto& a : avail)
            if (a.level < max_level) usable.push_back(&a);
        if (usable.empty()) continue;
        const int n_in = 1 + pick(std::min<int>(3, static_cast<int>(usable.size())));
        std::set<std::string> in_keys;
        for (int i = 0; i < n_in; ++i) {
            const auto& cand = usable[pick(static_cast<int>(usable.size()))]->node;
            if (in_keys.insert(cand.key()).second) inputs.push_back(cand);
        }
        if (outputs.empty()) {
            const int n_out = 1 + pick(2);
            for (int i = 0; i < n_out && static_cast<int>(outputs.size()) < n_out;) {
                std::vector<std::string> ings;
                if (pick(3) == 0)
                    for (const auto& in : inputs)
                        if (pick(2) == 0) ings.push_back(in.name);
                ObjectNode n(name_of(pick(40)), {state_of(pick(6))}, ings);
                ++i;
                if (!seen_keys.insert(n.key()).second) continue;
                outputs.push_back(n);
                avail.push_back({n, u + 1});
                first_produced.emplace(n.key(), u + 1);
            }
            if (outputs.empty()) continue;
        }
        units.push_back(FunctionalUnit(inputs, {"v" + std::to_string(pick(5))}, outputs,
                                       "rand" + std::to_string(pick(3))));
    }
    if (units.empty())
        units.push_back(FunctionalUnit({avail.front().node}, {"v0"},
                                       {ObjectNode("item99", {"st0"})}, "rand0"));

    Subgraph g;
    g.recipe_id = "random";
    g.dish_type = "salad";
    g.units = units;
    g.goal = units.back().outputs.front();

    RandomNetwork out;
    out.net = merge({g});
    out.kitchen = kitchen;
    out.goal = g.goal;
    for (const auto& ing : g.goal.ingredients)
        if (std::uniform_int_distribution<int>(0, 1)(rng)) out.required.insert(ing);
    out.required.insert(g.goal.name);
    return out;
}

// Canonical multiset signature of a tree, for comparing plans that may
// legitimately order independent branches differently.
inline std::set<std::string> unit_key_set(const TaskTree& tree) {
    std::set<std::string> keys;
    for (const auto& tu : tree.units) keys.insert(tu.unit.canonical_key());
    return keys;
}

}  // namespace foon::test
