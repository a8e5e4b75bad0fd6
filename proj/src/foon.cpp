#include "foon/foon.hpp"

#include <algorithm>

namespace foon {

std::vector<const FunctionalUnit*> UniversalFoon::units_producing(
    const ObjectNode& node) const {
    std::vector<const FunctionalUnit*> out;
    auto it = producers_.find(node.key());
    if (it == producers_.end()) return out;
    out.reserve(it->second.size());
    for (std::size_t idx : it->second) out.push_back(&units_[idx]);
    return out;
}

std::vector<ObjectNode> UniversalFoon::starting_nodes() const {
    std::map<std::string, ObjectNode> by_key;
    for (const auto& u : units_) {
        for (const auto& n : u.inputs) {
            if (producers_.find(n.key()) == producers_.end())
                by_key.emplace(n.key(), n);
        }
    }
    std::vector<ObjectNode> out;
    out.reserve(by_key.size());
    for (auto& [k, n] : by_key) out.push_back(n);
    return out;
}

void UniversalFoon::index_unit(std::size_t idx) {
    const FunctionalUnit& u = units_[idx];
    for (const auto& o : u.outputs) {
        auto& lst = producers_[o.key()];
        if (std::find(lst.begin(), lst.end(), idx) == lst.end()) lst.push_back(idx);
    }
    for (const auto* nodes : {&u.inputs, &u.outputs}) {
        for (const auto& n : *nodes) {
            ingredient_vocab_.insert(n.name);
            for (const auto& ing : n.ingredients) ingredient_vocab_.insert(ing);
        }
    }
}

UniversalFoon merge(const std::vector<Subgraph>& subgraphs) {
    UniversalFoon foon;
    std::set<std::string> seen_ids;
    for (const auto& g : subgraphs) {
        if (!seen_ids.insert(g.recipe_id).second)
            throw MergeError("duplicate recipe_id: " + g.recipe_id);
        for (const auto& u : g.units) {
            const std::string key = u.canonical_key();
            if (foon.unit_by_key_.count(key)) continue;
            foon.unit_by_key_.emplace(key, foon.units_.size());
            foon.units_.push_back(u);
            foon.index_unit(foon.units_.size() - 1);
        }
        foon.recipe_index_[g.dish_type].push_back({g.goal, g.recipe_id});
        for (const auto& ing : g.goal.ingredients) foon.food_vocab_.insert(ing);
        foon.sources_.push_back(g);
    }
    // Deterministic recipe ordering within each dish class.
    for (auto& [dish, goals] : foon.recipe_index_) {
        std::sort(goals.begin(), goals.end(),
                  [](const GoalEntry& a, const GoalEntry& b) {
                      return a.recipe_id < b.recipe_id;
                  });
    }
    return foon;
}

std::vector<Diagnostic> validate(const UniversalFoon& foon,
                                 const std::set<std::string>& motion_verbs,
                                 const std::set<std::string>& dish_classes) {
    std::vector<Diagnostic> diags;
    for (const auto& u : foon.units_) {
        if (u.inputs.empty())
            diags.push_back({Diagnostic::Kind::EmptyInputs,
                             "unit with motion '" + u.motion.verb + "' has no inputs"});
        if (u.outputs.empty())
            diags.push_back({Diagnostic::Kind::EmptyOutputs,
                             "unit with motion '" + u.motion.verb + "' has no outputs"});
        if (!motion_verbs.empty() && !motion_verbs.count(u.motion.verb))
            diags.push_back({Diagnostic::Kind::UnknownMotion,
                             "unknown motion verb '" + u.motion.verb + "'"});
    }
    if (!dish_classes.empty()) {
        for (const auto& [dish, goals] : foon.recipe_index_) {
            if (!dish_classes.count(dish))
                diags.push_back({Diagnostic::Kind::UnknownDishType,
                                 "unknown dish type '" + dish + "'"});
        }
    }
    // Producer-index consistency: every output of every unit resolves
    // through the index back to that unit.
    for (std::size_t i = 0; i < foon.units_.size(); ++i) {
        for (const auto& o : foon.units_[i].outputs) {
            auto it = foon.producers_.find(o.key());
            bool hit = false;
            if (it != foon.producers_.end())
                hit = std::find(it->second.begin(), it->second.end(), i) !=
                      it->second.end();
            if (!hit) {
                diags.push_back({Diagnostic::Kind::IndexInconsistency,
                                 "producers index missing output '" + o.name +
                                     "' of unit " + std::to_string(i)});
            }
        }
    }
    for (const auto& [key, idxs] : foon.producers_) {
        for (std::size_t idx : idxs) {
            if (idx >= foon.units_.size())
                diags.push_back({Diagnostic::Kind::IndexInconsistency,
                                 "producers index references missing unit " +
                                     std::to_string(idx)});
        }
    }
    return diags;
}

}  // namespace foon
