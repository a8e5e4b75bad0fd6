#include "foon/retrieval.hpp"

#include <algorithm>
#include <deque>

namespace foon {

namespace {

bool matches_any(const std::string& name, const std::set<std::string>& names,
                 const VectorStore& store, const SimilarityConfig& cfg) {
    if (names.count(name)) return true;
    for (const auto& other : names) {
        if (auto s = store.similarity(name, other); s && *s >= cfg.tau) return true;
    }
    return false;
}

}  // namespace

bool TaskTree::executable_order(const Kitchen& kitchen) const {
    std::set<std::string> available;
    for (const auto& tu : units) {
        for (const auto& in : tu.unit.inputs) {
            if (!kitchen.contains(in) && !available.count(in.key())) return false;
        }
        for (const auto& out : tu.unit.outputs) available.insert(out.key());
    }
    return true;
}

std::vector<ObjectNode> TaskTree::leaves() const {
    std::set<std::string> produced;
    for (const auto& tu : units)
        for (const auto& out : tu.unit.outputs) produced.insert(out.key());
    std::map<std::string, ObjectNode> by_key;
    for (const auto& tu : units)
        for (const auto& in : tu.unit.inputs)
            if (!produced.count(in.key())) by_key.emplace(in.key(), in);
    std::vector<ObjectNode> out;
    for (auto& [k, n] : by_key) out.push_back(n);
    return out;
}

int score_goal_candidate(const std::set<std::string>& required,
                         const std::set<std::string>& candidate,
                         const VectorStore& store, const SimilarityConfig& cfg) {
    int score = 0;
    for (const auto& name : required)
        if (matches_any(name, candidate, store, cfg)) ++score;
    return score;
}

std::pair<ObjectNode, std::string> find_reference_goal(const PlanRequest& req,
                                                       const UniversalFoon& foon,
                                                       const VectorStore& store,
                                                       const SimilarityConfig& cfg) {
    auto it = foon.recipe_index().find(req.dish_type);
    if (it == foon.recipe_index().end() || it->second.empty())
        throw UnknownDishClassError("no recipes of dish type '" + req.dish_type + "'");

    const std::set<std::string> required = req.ingredient_names();
    const GoalEntry* best = nullptr;
    int best_score = -1;
    int best_extras = 0;
    for (const auto& entry : it->second) {
        std::set<std::string> candidate(entry.goal.ingredients.begin(),
                                        entry.goal.ingredients.end());
        int score = score_goal_candidate(required, candidate, store, cfg);
        int extras = 0;
        for (const auto& s : candidate)
            if (!matches_any(s, required, store, cfg)) ++extras;
        bool better = score > best_score ||
                      (score == best_score && extras < best_extras) ||
                      (score == best_score && extras == best_extras && best &&
                       entry.recipe_id < best->recipe_id);
        if (!best || better) {
            best = &entry;
            best_score = score;
            best_extras = extras;
        }
    }
    return {best->goal, best->recipe_id};
}

int heuristic_g(const ObjectNode& node, const std::set<std::string>& required,
                const VectorStore& store, const SimilarityConfig& cfg) {
    int score = 0;
    if (node.ingredients.empty()) {
        return matches_any(node.name, required, store, cfg) ? 1 : 0;
    }
    for (const auto& a : node.ingredients)
        if (matches_any(a, required, store, cfg)) ++score;
    return score;
}

const FunctionalUnit* pick_candidate(const std::vector<const FunctionalUnit*>& candidates,
                                     const ObjectNode& item,
                                     const std::set<std::string>& required,
                                     const VectorStore& store,
                                     const SimilarityConfig& cfg) {
    const FunctionalUnit* best = nullptr;
    int best_score = -1;
    for (const FunctionalUnit* cand : candidates) {
        const ObjectNode* out = cand->find_output(item);
        if (!out) continue;
        int score = heuristic_g(*out, required, store, cfg);
        bool better =
            !best || score > best_score ||
            (score == best_score &&
             (cand->inputs.size() < best->inputs.size() ||
              (cand->inputs.size() == best->inputs.size() &&
               cand->source_recipe < best->source_recipe)));
        if (better) {
            best = cand;
            best_score = score;
        }
    }
    return best;
}

namespace {

// Reversed visit order is not always executable when branches share an
// input, so re-emit units in dependency order, keeping the incoming order
// among ready units.
std::vector<FunctionalUnit> dependency_order(std::vector<FunctionalUnit> pending,
                                             const Kitchen& kitchen) {
    std::vector<FunctionalUnit> ordered;
    std::set<std::string> produced;
    bool progress = true;
    while (!pending.empty() && progress) {
        progress = false;
        std::vector<FunctionalUnit> still_pending;
        for (auto& u : pending) {
            bool ready = true;
            for (const auto& in : u.inputs) {
                if (!kitchen.contains(in) && !produced.count(in.key())) {
                    ready = false;
                    break;
                }
            }
            if (ready) {
                for (const auto& out : u.outputs) produced.insert(out.key());
                ordered.push_back(std::move(u));
                progress = true;
            } else {
                still_pending.push_back(std::move(u));
            }
        }
        pending = std::move(still_pending);
    }
    if (!pending.empty())
        throw UnreachableItemError(pending.front().outputs.front().key(),
                                   "cyclic dependency while ordering task tree at '" +
                                       pending.front().outputs.front().name + "'");
    return ordered;
}

}  // namespace

TaskTree retrieve_task_tree(const ObjectNode& goal, const std::set<std::string>& required,
                            const Kitchen& kitchen, const UniversalFoon& foon,
                            const VectorStore& store, const SimilarityConfig& cfg) {
    TaskTree tree;
    tree.goal = goal;

    std::deque<ObjectNode> queue;
    std::set<std::string> visited;
    queue.push_back(goal);
    visited.insert(goal.key());

    std::vector<FunctionalUnit> chosen;
    std::set<std::string> chosen_keys;
    while (!queue.empty()) {
        ObjectNode item = std::move(queue.front());
        queue.pop_front();
        if (kitchen.contains(item)) continue;
        auto candidates = foon.units_producing(item);
        const FunctionalUnit* best = pick_candidate(candidates, item, required, store, cfg);
        if (!best)
            throw UnreachableItemError(item.key(), "'" + item.name +
                                                       "' is neither in the kitchen nor "
                                                       "producible by any functional unit");
        if (chosen_keys.insert(best->canonical_key()).second) chosen.push_back(*best);
        for (const auto& in : best->inputs) {
            if (visited.insert(in.key()).second) queue.push_back(in);
        }
    }

    std::reverse(chosen.begin(), chosen.end());
    for (auto& u : dependency_order(std::move(chosen), kitchen))
        tree.units.push_back({std::move(u), UnitOrigin::Retrieved});
    return tree;
}

Kitchen default_kitchen(const UniversalFoon& foon) {
    return Kitchen(foon.starting_nodes());
}

}  // namespace foon
