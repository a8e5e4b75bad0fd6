#pragma once
// Core domain types for the bipartite cooking network: object nodes,
// motion nodes, functional units and per-recipe subgraphs.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace foon {

// Names of objects that act as containers regardless of contents.
const std::set<std::string>& container_lexicon();

// Non-ingredient tools (includes the container lexicon). Used to tell
// utensils apart from food when pruning and substituting.
const std::set<std::string>& utensil_lexicon();

namespace detail {
// Sorts and deduplicates in place; the "ordered set" representation.
inline void make_set(std::vector<std::string>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}
}  // namespace detail

struct ObjectNode {
    std::string name;                      // lowercase token string
    std::vector<std::string> states;       // sorted, unique
    std::vector<std::string> ingredients;  // sorted, unique; empty for simple objects

    ObjectNode() = default;
    ObjectNode(std::string n, std::vector<std::string> st,
               std::vector<std::string> ing = {})
        : name(std::move(n)), states(std::move(st)), ingredients(std::move(ing)) {
        detail::make_set(states);
        detail::make_set(ingredients);
    }

    bool is_container() const {
        return !ingredients.empty() ||
               container_lexicon().count(name) > 0;
    }

    bool has_state(const std::string& s) const {
        return std::binary_search(states.begin(), states.end(), s);
    }

    bool contains_ingredient(const std::string& n) const {
        return std::binary_search(ingredients.begin(), ingredients.end(), n);
    }

    // Canonical identity: (name, states-as-set, ingredients-as-set).
    std::string key() const;

    friend bool operator==(const ObjectNode& a, const ObjectNode& b) {
        return a.name == b.name && a.states == b.states &&
               a.ingredients == b.ingredients;
    }
    friend bool operator!=(const ObjectNode& a, const ObjectNode& b) {
        return !(a == b);
    }
    friend bool operator<(const ObjectNode& a, const ObjectNode& b) {
        if (a.name != b.name) return a.name < b.name;
        if (a.states != b.states) return a.states < b.states;
        return a.ingredients < b.ingredients;
    }
};

struct MotionNode {
    std::string verb;  // lowercase token string

    friend bool operator==(const MotionNode& a, const MotionNode& b) {
        return a.verb == b.verb;
    }
};

// Where a task-tree unit came from.
enum class UnitOrigin { Retrieved, Copied, Synthesized };

struct FunctionalUnit {
    std::vector<ObjectNode> inputs;   // non-empty, kept canonically sorted
    MotionNode motion;
    std::vector<ObjectNode> outputs;  // non-empty, kept canonically sorted
    std::string source_recipe;

    FunctionalUnit() = default;
    FunctionalUnit(std::vector<ObjectNode> in, MotionNode m,
                   std::vector<ObjectNode> out, std::string src = {})
        : inputs(std::move(in)), motion(std::move(m)),
          outputs(std::move(out)), source_recipe(std::move(src)) {
        normalize();
    }

    // Input/output ordering is not significant; sort so equal units compare equal.
    void normalize() {
        std::sort(inputs.begin(), inputs.end());
        std::sort(outputs.begin(), outputs.end());
    }

    // Deduplication identity; ignores source_recipe.
    std::string canonical_key() const;

    const ObjectNode* find_output(const ObjectNode& node) const {
        for (const auto& o : outputs)
            if (o == node) return &o;
        return nullptr;
    }

    // Equality for dedup: same canonical inputs/motion/outputs.
    friend bool operator==(const FunctionalUnit& a, const FunctionalUnit& b) {
        return a.motion == b.motion && a.inputs == b.inputs &&
               a.outputs == b.outputs;
    }
    friend bool operator!=(const FunctionalUnit& a, const FunctionalUnit& b) {
        return !(a == b);
    }
};

struct Subgraph {
    std::string recipe_id;
    std::string dish_type;
    std::vector<FunctionalUnit> units;  // ordered as authored
    ObjectNode goal;                    // an output of the final unit

    // units non-empty, goal produced by the last unit, dish_type non-empty.
    bool well_formed() const {
        if (recipe_id.empty() || dish_type.empty() || units.empty()) return false;
        return units.back().find_output(goal) != nullptr;
    }
};

}  // namespace foon
