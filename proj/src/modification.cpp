#include "foon/modification.hpp"

#include <algorithm>
#include <cassert>

namespace foon {

const char* case_name(CaseLabel label) {
    switch (label) {
        case CaseLabel::Case1: return "case1";
        case CaseLabel::Case2: return "case2";
        case CaseLabel::Case3: return "case3";
        case CaseLabel::Case4: return "case4";
        case CaseLabel::NotInTree: return "not-in-tree";
    }
    return "?";
}

namespace {

bool is_utensil(const std::string& name) { return utensil_lexicon().count(name) > 0; }

void add_sorted(std::vector<std::string>& set, const std::string& value) {
    auto it = std::lower_bound(set.begin(), set.end(), value);
    if (it == set.end() || *it != value) set.insert(it, value);
}

void remove_sorted(std::vector<std::string>& set, const std::string& value) {
    auto it = std::lower_bound(set.begin(), set.end(), value);
    if (it != set.end() && *it == value) set.erase(it);
}

// Global rename: node names and composite list members.
void rename_ingredient(TaskTree& tree, const std::string& old_name,
                       const std::string& new_name) {
    auto fix = [&](ObjectNode& n) {
        if (n.name == old_name && n.ingredients.empty()) n.name = new_name;
        if (n.contains_ingredient(old_name)) {
            remove_sorted(n.ingredients, old_name);
            add_sorted(n.ingredients, new_name);
        }
    };
    for (auto& tu : tree.units) {
        for (auto& n : tu.unit.inputs) fix(n);
        for (auto& n : tu.unit.outputs) fix(n);
        tu.unit.normalize();
    }
    fix(tree.goal);
}

// Adds new_name alongside old_name in every composite list; node names and
// the original's own line are left alone.
void extend_composites(TaskTree& tree, const std::string& old_name,
                       const std::string& new_name) {
    auto fix = [&](ObjectNode& n) {
        if (n.contains_ingredient(old_name)) add_sorted(n.ingredients, new_name);
    };
    for (auto& tu : tree.units) {
        for (auto& n : tu.unit.inputs) fix(n);
        for (auto& n : tu.unit.outputs) fix(n);
        tu.unit.normalize();
    }
    fix(tree.goal);
}

// Kitchen for a state-conversion sub-query: the item in its start state plus
// every other raw item and utensil.
Kitchen sub_kitchen(const UniversalFoon& foon, const ObjectNode& start,
                    const std::string& exclude_name) {
    Kitchen k;
    k.add(start);
    for (const auto& n : foon.starting_nodes())
        if (n.name != exclude_name) k.add(n);
    return k;
}

// True when the corpus demonstrates some object moving from a state of
// start's category to a state of target's category; the category blueprint
// that licenses synthesizing the same conversion for another object.
bool category_blueprint_exists(const UniversalFoon& foon, const StateTaxonomy& tax,
                               const std::string& start_state,
                               const std::string& target_state) {
    auto start_cat = tax.category(start_state);
    auto target_cat = tax.category(target_state);
    if (!start_cat || !target_cat) return false;
    for (const auto& u : foon.units()) {
        for (const auto& in : u.inputs) {
            if (!in.ingredients.empty()) continue;
            bool in_hit = false;
            for (const auto& s : in.states)
                if (tax.category(s) == start_cat) { in_hit = true; break; }
            if (!in_hit) continue;
            for (const auto& out : u.outputs) {
                if (out.name != in.name || !out.ingredients.empty()) continue;
                for (const auto& s : out.states)
                    if (tax.category(s) == target_cat) return true;
            }
        }
    }
    return false;
}

// Conversion units taking (name, start_state) to the exact target node,
// via sub-retrieval or a synthesized taxonomy-blueprint unit.
std::vector<TreeUnit> conversion_chain(const ObjectNode& target,
                                       const std::string& start_state,
                                       const ModificationContext& ctx) {
    const ObjectNode start(target.name, {start_state});
    try {
        TaskTree sub = retrieve_task_tree(target, {target.name},
                                          sub_kitchen(ctx.foon, start, target.name),
                                          ctx.foon, ctx.store, ctx.cfg);
        std::vector<TreeUnit> chain;
        for (auto& tu : sub.units) chain.push_back({std::move(tu.unit), UnitOrigin::Copied});
        return chain;
    } catch (const UnreachableItemError&) {
        // fall through to the blueprint route
    }
    std::string target_state;
    for (const auto& s : target.states) {
        if (s != start_state && ctx.tax.category(s).has_value()) {
            target_state = s;
            break;
        }
    }
    if (target_state.empty() ||
        !category_blueprint_exists(ctx.foon, ctx.tax, start_state, target_state))
        throw UnconvertibleStateError("no way to prepare '" + target.name +
                                      "' from state '" + start_state + "'");
    std::string verb;
    try {
        verb = ctx.lex.verb_for_state(target_state, ctx.tax);
    } catch (const NoVerbError&) {
        throw UnconvertibleStateError("no motion verb reaches state '" + target_state +
                                      "' for '" + target.name + "'");
    }
    FunctionalUnit unit({start}, {verb}, {target});
    return {TreeUnit{std::move(unit), UnitOrigin::Synthesized}};
}

}  // namespace

Classification classify_case(const RequestedIngredient& given, const TaskTree& tree,
                             const VectorStore& store, const SimilarityConfig& cfg) {
    std::vector<ObjectNode> leaves;
    for (auto& leaf : tree.leaves()) {
        if (is_utensil(leaf.name) || !leaf.ingredients.empty()) continue;
        leaves.push_back(std::move(leaf));
    }
    auto state_matched = [&](const ObjectNode& leaf) {
        return given.state.empty() || leaf.has_state(given.state);
    };

    // Exact object first, preferring a state match (cases 1 and 3).
    const ObjectNode* exact_any = nullptr;
    for (const auto& leaf : leaves) {
        if (leaf.name != given.name) continue;
        if (state_matched(leaf)) return {CaseLabel::Case1, leaf};
        if (!exact_any) exact_any = &leaf;
    }

    // Best embedding-equivalent leaf (cases 2 and 4).
    const ObjectNode* equiv_state = nullptr;
    const ObjectNode* equiv_any = nullptr;
    double best_state = -1.0, best_any = -1.0;
    for (const auto& leaf : leaves) {
        if (leaf.name == given.name) continue;
        auto sim = store.similarity(given.name, leaf.name);
        if (!sim || *sim < cfg.tau) continue;
        if (state_matched(leaf)) {
            if (*sim > best_state) { best_state = *sim; equiv_state = &leaf; }
        } else if (*sim > best_any) {
            best_any = *sim;
            equiv_any = &leaf;
        }
    }
    if (equiv_state) return {CaseLabel::Case2, *equiv_state};
    if (exact_any) return {CaseLabel::Case3, *exact_any};
    if (equiv_any) return {CaseLabel::Case4, *equiv_any};
    return {CaseLabel::NotInTree, std::nullopt};
}

TaskTree substitute_object(const TaskTree& tree, const ObjectNode& leaf,
                           const std::string& new_name, bool preserve_original) {
    bool found = false;
    for (const auto& l : tree.leaves())
        if (l == leaf) { found = true; break; }
    if (!found)
        throw LeafNotFoundError("leaf '" + leaf.name + "' not found in tree");

    const std::string old_name = leaf.name;
    TaskTree out = tree;
    if (!preserve_original) {
        rename_ingredient(out, old_name, new_name);
        return out;
    }

    // Walk the progress line from the leaf: standalone hops are the chain to
    // duplicate; the unit folding the ingredient into a composite is where
    // the duplicate line re-joins.
    std::vector<std::size_t> chain;
    std::size_t merge_index = tree.units.size();
    ObjectNode current = leaf;
    for (;;) {
        std::size_t consumer = tree.units.size();
        for (std::size_t i = 0; i < tree.units.size(); ++i) {
            bool consumes = false;
            for (const auto& in : tree.units[i].unit.inputs)
                if (in == current) { consumes = true; break; }
            if (consumes && std::find(chain.begin(), chain.end(), i) == chain.end()) {
                consumer = i;
                break;
            }
        }
        if (consumer == tree.units.size()) break;
        const ObjectNode* standalone_out = nullptr;
        for (const auto& o : tree.units[consumer].unit.outputs)
            if (o.name == old_name && o.ingredients.empty()) { standalone_out = &o; break; }
        if (standalone_out) {
            chain.push_back(consumer);
            current = *standalone_out;
        } else {
            merge_index = consumer;
            break;
        }
    }

    auto renamed = [&](ObjectNode n) {
        if (n.name == old_name && n.ingredients.empty()) n.name = new_name;
        return n;
    };

    TaskTree out2;
    out2.goal = tree.goal;
    for (std::size_t i = 0; i < tree.units.size(); ++i) {
        out2.units.push_back(tree.units[i]);
        if (std::find(chain.begin(), chain.end(), i) != chain.end()) {
            FunctionalUnit copy = tree.units[i].unit;
            for (auto& n : copy.inputs) n = renamed(std::move(n));
            for (auto& n : copy.outputs) n = renamed(std::move(n));
            copy.normalize();
            out2.units.push_back({std::move(copy), UnitOrigin::Copied});
        }
        if (i == merge_index) {
            auto& merge = out2.units.back().unit;
            merge.inputs.push_back(renamed(current));
            merge.normalize();
        }
    }
    // The duplicate line is now part of every downstream composite.
    extend_composites(out2, old_name, new_name);
    return out2;
}

TaskTree graft_state_branch(const TaskTree& tree, const ObjectNode& leaf,
                            const std::string& start_state,
                            const ModificationContext& ctx) {
    if (leaf.has_state(start_state)) return tree;
    auto chain = conversion_chain(leaf, start_state, ctx);
    TaskTree out;
    out.goal = tree.goal;
    out.units = std::move(chain);
    for (const auto& tu : tree.units) out.units.push_back(tu);
    return out;
}

std::string select_state_for_new_ingredient(const std::string& name,
                                            const std::string& dish_type,
                                            const UniversalFoon& foon,
                                            const StateTaxonomy& tax) {
    std::map<std::string, int> dish_counts, global_counts;
    std::set<std::string> dish_categories;
    for (const auto& g : foon.sources()) {
        const bool in_dish = g.dish_type == dish_type;
        for (const auto& u : g.units) {
            for (const auto* side : {&u.inputs, &u.outputs}) {
                for (const auto& n : *side) {
                    for (const auto& s : n.states) {
                        auto cat = tax.category(s);
                        if (!cat) continue;
                        if (in_dish) dish_categories.insert(*cat);
                        if (n.name != name || !n.ingredients.empty()) continue;
                        ++global_counts[s];
                        if (in_dish) ++dish_counts[s];
                    }
                }
            }
        }
    }
    auto pick = [](const std::map<std::string, int>& counts) -> std::string {
        std::string best;
        int best_count = 0;
        for (const auto& [state, count] : counts) {
            if (count > best_count) { best = state; best_count = count; }
        }
        return best;  // std::map iteration makes ties lexicographic
    };
    if (auto s = pick(dish_counts); !s.empty()) return s;
    std::map<std::string, int> filtered;
    for (const auto& [state, count] : global_counts)
        if (auto cat = tax.category(state); cat && dish_categories.count(*cat))
            filtered[state] = count;
    if (auto s = pick(filtered); !s.empty()) return s;
    if (auto s = pick(global_counts); !s.empty()) return s;
    return "whole";
}

TaskTree integrate_missing_ingredient(const TaskTree& tree, const RequestedIngredient& given,
                                      const std::string& dish_type,
                                      const ModificationContext& ctx,
                                      const EquivalenceMap& equivalents,
                                      const std::optional<std::string>& override_choice) {
    // Exact corpus ingredient needs no embedding hop.
    std::string equivalent;
    if (ctx.foon.food_vocab().count(given.name)) {
        equivalent = given.name;
    } else {
        const auto* candidates = equivalents.lookup(given.name);
        if (override_choice) {
            bool listed = false;
            if (candidates)
                for (const auto& [cand, score] : *candidates)
                    if (cand == *override_choice) { listed = true; break; }
            if (!listed)
                throw UnplaceableIngredientError("override '" + *override_choice +
                                                "' is not a candidate for '" +
                                                given.name + "'");
            equivalent = *override_choice;
        } else {
            if (!candidates || candidates->empty() ||
                candidates->front().second < ctx.cfg.tau)
                throw UnplaceableIngredientError(
                    "no corpus equivalent of '" + given.name + "' reaches threshold " +
                    std::to_string(ctx.cfg.tau));
            equivalent = candidates->front().first;
        }
    }

    const std::string target_state =
        select_state_for_new_ingredient(equivalent, dish_type, ctx.foon, ctx.tax);
    const std::string start_state = given.state.empty() ? target_state : given.state;
    const ObjectNode terminal(given.name, {target_state});

    std::vector<TreeUnit> chain;
    if (start_state != target_state) {
        const ObjectNode equiv_target(equivalent, {target_state});
        try {
            chain = [&] {
                auto c = conversion_chain(equiv_target, start_state, ctx);
                return c;
            }();
        } catch (const UnconvertibleStateError& e) {
            throw UnplaceableIngredientError(std::string(e.what()) + " (while integrating '" +
                                             given.name + "')");
        }
        if (equivalent != given.name) {
            for (auto& tu : chain) {
                for (auto* side : {&tu.unit.inputs, &tu.unit.outputs})
                    for (auto& n : *side)
                        if (n.name == equivalent && n.ingredients.empty()) n.name = given.name;
                tu.unit.normalize();
                if (tu.origin == UnitOrigin::Retrieved) tu.origin = UnitOrigin::Copied;
            }
        }
    }

    const auto& verbs = ctx.rules.verbs_for(dish_type);
    std::size_t attach = tree.units.size();
    for (std::size_t i = 0; i < tree.units.size(); ++i) {
        if (verbs.count(tree.units[i].unit.motion.verb)) { attach = i; break; }
    }
    if (attach == tree.units.size())
        throw NoAttachmentPointError("no unit of dish type '" + dish_type +
                                     "' accepts a new ingredient branch for '" +
                                     given.name + "'");

    TaskTree out;
    out.goal = tree.goal;
    for (std::size_t i = 0; i < attach; ++i) out.units.push_back(tree.units[i]);
    for (auto& tu : chain) out.units.push_back(std::move(tu));
    for (std::size_t i = attach; i < tree.units.size(); ++i) out.units.push_back(tree.units[i]);

    // Attach and ripple the new member through downstream composites,
    // rewriting node keys consistently as lists change.
    const std::size_t attach_pos = attach + chain.size();
    std::map<std::string, ObjectNode> replaced;
    std::set<std::string> tainted = {terminal.key()};
    for (std::size_t i = attach_pos; i < out.units.size(); ++i) {
        auto& unit = out.units[i].unit;
        bool consumes = (i == attach_pos);
        for (auto& in : unit.inputs) {
            auto it = replaced.find(in.key());
            if (it != replaced.end()) in = it->second;
            if (tainted.count(in.key())) consumes = true;
        }
        if (i == attach_pos) unit.inputs.push_back(terminal);
        unit.normalize();
        if (!consumes) continue;
        for (auto& outn : unit.outputs) {
            if (!outn.ingredients.empty()) {
                if (!outn.contains_ingredient(given.name)) {
                    std::string old_key = outn.key();
                    add_sorted(outn.ingredients, given.name);
                    replaced.emplace(old_key, outn);
                }
                tainted.insert(outn.key());
            } else if (outn.name == given.name) {
                tainted.insert(outn.key());
            }
        }
        unit.normalize();
    }
    if (auto it = replaced.find(out.goal.key()); it != replaced.end()) out.goal = it->second;
    return out;
}

PruneResult prune_extra_ingredients(const TaskTree& tree,
                                    const std::set<std::string>& required) {
    auto touched_foods = [&](const FunctionalUnit& u) {
        std::set<std::string> names;
        for (const auto* side : {&u.inputs, &u.outputs}) {
            for (const auto& n : *side) {
                if (n.ingredients.empty()) {
                    if (!is_utensil(n.name)) names.insert(n.name);
                } else {
                    for (const auto& ing : n.ingredients)
                        if (!is_utensil(ing)) names.insert(ing);
                }
            }
        }
        return names;
    };

    std::set<std::string> extras;
    for (const auto& tu : tree.units)
        for (const auto& name : touched_foods(tu.unit))
            if (!required.count(name)) extras.insert(name);
    // The dish itself and intermediate composites carry names of their own
    // (e.g. the goal dish); composite node names never count as extras.
    for (const auto& tu : tree.units)
        for (const auto* side : {&tu.unit.inputs, &tu.unit.outputs})
            for (const auto& n : *side)
                if (!n.ingredients.empty()) extras.erase(n.name);
    extras.erase(tree.goal.name);

    PruneResult result;
    if (extras.empty()) {
        result.tree = tree;
        return result;
    }

    const std::size_t n = tree.units.size();
    std::vector<bool> keep(n, true);
    for (std::size_t i = 0; i < n; ++i) {
        auto names = touched_foods(tree.units[i].unit);
        bool exclusive = !names.empty();
        for (const auto& name : names)
            if (!extras.count(name)) { exclusive = false; break; }
        if (exclusive) keep[i] = false;
    }

    // Leaf inputs of the original tree are available from the kitchen.
    std::set<std::string> leaf_keys;
    for (const auto& l : tree.leaves()) leaf_keys.insert(l.key());

    // Restore producers a kept unit still depends on.
    bool changed = true;
    while (changed) {
        changed = false;
        std::set<std::string> kept_outputs;
        for (std::size_t i = 0; i < n; ++i)
            if (keep[i])
                for (const auto& o : tree.units[i].unit.outputs)
                    kept_outputs.insert(o.key());
        for (std::size_t i = 0; i < n; ++i) {
            if (!keep[i]) continue;
            for (const auto& in : tree.units[i].unit.inputs) {
                // Extra standalone inputs get detached below, not resupplied.
                if (in.ingredients.empty() && extras.count(in.name)) continue;
                if (leaf_keys.count(in.key()) || kept_outputs.count(in.key())) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (keep[j] || !tree.units[j].unit.find_output(in)) continue;
                    keep[j] = true;
                    changed = true;
                    result.warnings.push_back(
                        {PlanIssue::Kind::PruneConflict, in.name,
                         "unit producing '" + in.name +
                             "' retained; removing it would disconnect the goal",
                         true});
                    break;
                }
            }
        }
    }

    auto scrub = [&](ObjectNode n) {
        if (!n.ingredients.empty()) {
            std::vector<std::string> kept_ings;
            for (const auto& ing : n.ingredients)
                if (!extras.count(ing)) kept_ings.push_back(ing);
            n.ingredients = std::move(kept_ings);
        }
        return n;
    };

    result.tree.goal = scrub(tree.goal);
    for (std::size_t i = 0; i < n; ++i) {
        if (!keep[i]) continue;
        TreeUnit tu = tree.units[i];
        std::vector<ObjectNode> inputs;
        for (auto& in : tu.unit.inputs) {
            if (in.ingredients.empty() && extras.count(in.name)) continue;
            inputs.push_back(scrub(std::move(in)));
        }
        if (inputs.empty()) inputs.push_back(tu.unit.inputs.front());  // never drop all
        tu.unit.inputs = std::move(inputs);
        for (auto& out : tu.unit.outputs) out = scrub(std::move(out));
        tu.unit.normalize();
        result.tree.units.push_back(std::move(tu));
    }
    return result;
}

ModifyResult modify_task_tree(const TaskTree& reference, const PlanRequest& req,
                              const ModificationContext& ctx,
                              const std::map<std::string, std::string>& overrides) {
    ModifyResult result;
    result.tree = reference;

    std::vector<RequestedIngredient> given = req.ingredients;
    std::sort(given.begin(), given.end());
    given.erase(std::unique(given.begin(), given.end()), given.end());

    std::set<std::string> unseen;
    for (const auto& g : given)
        if (!ctx.foon.food_vocab().count(g.name)) unseen.insert(g.name);
    const EquivalenceMap equivalents =
        build_equivalence_map(ctx.store, unseen, ctx.foon.food_vocab(), ctx.cfg);

    const std::set<std::string> required = req.ingredient_names();
    for (const auto& g : given) {
        Classification c = classify_case(g, result.tree, ctx.store, ctx.cfg);
        try {
            switch (c.label) {
                case CaseLabel::Case1:
                    break;
                case CaseLabel::Case2: {
                    bool preserve = required.count(c.leaf->name) > 0;
                    result.tree = substitute_object(result.tree, *c.leaf, g.name, preserve);
                    break;
                }
                case CaseLabel::Case3: {
                    try {
                        result.tree = graft_state_branch(result.tree, *c.leaf, g.state, ctx);
                    } catch (const UnconvertibleStateError& e) {
                        // Non-reversible kitchen state: keep the leaf as-is.
                        result.issues.push_back({PlanIssue::Kind::UnconvertibleState,
                                                 g.name, e.what(), true});
                    }
                    break;
                }
                case CaseLabel::Case4: {
                    bool preserve = required.count(c.leaf->name) > 0;
                    result.tree = substitute_object(result.tree, *c.leaf, g.name, preserve);
                    ObjectNode new_leaf(g.name, c.leaf->states);
                    try {
                        result.tree = graft_state_branch(result.tree, new_leaf, g.state, ctx);
                    } catch (const UnconvertibleStateError& e) {
                        result.issues.push_back({PlanIssue::Kind::UnconvertibleState,
                                                 g.name, e.what(), true});
                    }
                    break;
                }
                case CaseLabel::NotInTree: {
                    std::optional<std::string> choice;
                    if (auto it = overrides.find(g.name); it != overrides.end())
                        choice = it->second;
                    result.tree = integrate_missing_ingredient(result.tree, g, req.dish_type,
                                                               ctx, equivalents, choice);
                    break;
                }
            }
        } catch (const UnplaceableIngredientError& e) {
            result.issues.push_back(
                {PlanIssue::Kind::UnplaceableIngredient, g.name, e.what(), false});
        } catch (const NoAttachmentPointError& e) {
            result.issues.push_back(
                {PlanIssue::Kind::NoAttachmentPoint, g.name, e.what(), false});
        }
    }

    PruneResult pruned = prune_extra_ingredients(result.tree, required);
    result.tree = std::move(pruned.tree);
    for (auto& w : pruned.warnings) result.issues.push_back(std::move(w));
    return result;
}

}  // namespace foon
