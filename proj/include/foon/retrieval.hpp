#pragma once
// Reference goal selection and best-first task-tree retrieval driven by the
// ingredient-overlap heuristic.

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "foon/foon.hpp"
#include "foon/node.hpp"
#include "foon/vectors.hpp"

namespace foon {

struct RequestedIngredient {
    std::string name;
    std::string state;  // empty = caller leaves the state to the planner

    friend bool operator<(const RequestedIngredient& a, const RequestedIngredient& b) {
        if (a.name != b.name) return a.name < b.name;
        return a.state < b.state;
    }
    friend bool operator==(const RequestedIngredient& a, const RequestedIngredient& b) {
        return a.name == b.name && a.state == b.state;
    }
};

struct PlanRequest {
    std::vector<RequestedIngredient> ingredients;  // non-empty
    std::string dish_type;

    std::set<std::string> ingredient_names() const {
        std::set<std::string> out;
        for (const auto& i : ingredients) out.insert(i.name);
        return out;
    }
};

class Kitchen {
public:
    Kitchen() = default;
    explicit Kitchen(const std::vector<ObjectNode>& items) {
        for (const auto& n : items) add(n);
    }

    void add(const ObjectNode& node) { keys_.insert(node.key()); items_.push_back(node); }
    bool contains(const ObjectNode& node) const { return keys_.count(node.key()) > 0; }
    const std::vector<ObjectNode>& items() const { return items_; }

private:
    std::set<std::string> keys_;
    std::vector<ObjectNode> items_;
};

struct TreeUnit {
    FunctionalUnit unit;
    UnitOrigin origin = UnitOrigin::Retrieved;
};

struct TaskTree {
    std::vector<TreeUnit> units;  // executable order
    ObjectNode goal;

    bool empty() const { return units.empty(); }
    std::size_t size() const { return units.size(); }

    // Every input of unit i is in the kitchen or an output of some unit j < i.
    bool executable_order(const Kitchen& kitchen) const;

    // Leaves: input nodes of the tree produced by no tree unit.
    std::vector<ObjectNode> leaves() const;
};

class UnknownDishClassError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnreachableItemError : public std::runtime_error {
public:
    UnreachableItemError(std::string item_key, const std::string& what)
        : std::runtime_error(what), item(std::move(item_key)) {}
    std::string item;
};

// Count of required ingredients matched in the candidate set, exactly or by
// embedding similarity at cfg.tau.
int score_goal_candidate(const std::set<std::string>& required,
                         const std::set<std::string>& candidate,
                         const VectorStore& store, const SimilarityConfig& cfg);

// The goal node of the dish-type candidate with maximum score; ties broken
// by fewer extra ingredients, then lexicographic recipe_id.
std::pair<ObjectNode, std::string> find_reference_goal(const PlanRequest& req,
                                                       const UniversalFoon& foon,
                                                       const VectorStore& store,
                                                       const SimilarityConfig& cfg);

// |A_n matched against I|, where A_n is the node's contained-ingredient set,
// or its own name for a simple node.
int heuristic_g(const ObjectNode& node, const std::set<std::string>& required,
                const VectorStore& store, const SimilarityConfig& cfg);

// Best-first retrieval from the goal backwards: each dequeued item not in
// the kitchen picks the producing unit whose matching output scores highest.
TaskTree retrieve_task_tree(const ObjectNode& goal, const std::set<std::string>& required,
                            const Kitchen& kitchen, const UniversalFoon& foon,
                            const VectorStore& store, const SimilarityConfig& cfg);

// Candidate choice shared with the brute-force oracle: highest heuristic on
// the output matching item, then fewer inputs, then source_recipe.
const FunctionalUnit* pick_candidate(const std::vector<const FunctionalUnit*>& candidates,
                                     const ObjectNode& item,
                                     const std::set<std::string>& required,
                                     const VectorStore& store,
                                     const SimilarityConfig& cfg);

// A kitchen stocked with every starting node of the network; the standing
// assumption that raw items and utensils are on hand.
Kitchen default_kitchen(const UniversalFoon& foon);

}  // namespace foon
