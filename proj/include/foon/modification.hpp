#pragma once
// Task-tree modification: case classification per requested ingredient,
// object substitution, state-conversion grafting, missing-ingredient
// integration and pruning of extras.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "foon/lexicon.hpp"
#include "foon/retrieval.hpp"
#include "foon/vectors.hpp"

namespace foon {

enum class CaseLabel { Case1, Case2, Case3, Case4, NotInTree };

const char* case_name(CaseLabel label);

struct Classification {
    CaseLabel label = CaseLabel::NotInTree;
    std::optional<ObjectNode> leaf;  // matched leaf for cases 1-4
};

struct PlanIssue {
    enum class Kind {
        UnconvertibleState,
        UnplaceableIngredient,
        NoAttachmentPoint,
        PruneConflict,
    };
    Kind kind;
    std::string ingredient;
    std::string message;
    bool warning = false;  // warnings leave the tree usable
};

class LeafNotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class UnconvertibleStateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class UnplaceableIngredientError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class NoAttachmentPointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Everything the modification pipeline consults besides the tree itself.
struct ModificationContext {
    const UniversalFoon& foon;
    const VectorStore& store;
    const MotionLexicon& lex;
    const StateTaxonomy& tax;
    const DishAttachmentRules& rules;
    SimilarityConfig cfg;
};

// Searches tree leaves for the given (name, state). An empty given state
// matches any leaf state.
Classification classify_case(const RequestedIngredient& given, const TaskTree& tree,
                             const VectorStore& store, const SimilarityConfig& cfg);

// Renames the object rooted at leaf to new_name along its progress line.
// With preserve_original, the processing chain is duplicated first so the
// original ingredient survives in the tree.
TaskTree substitute_object(const TaskTree& tree, const ObjectNode& leaf,
                           const std::string& new_name, bool preserve_original);

// Prepends the units converting (leaf.name, start_state) into the leaf,
// found by a sub-retrieval or, failing that, synthesized from a taxonomy
// blueprint. Throws UnconvertibleStateError when neither exists.
TaskTree graft_state_branch(const TaskTree& tree, const ObjectNode& leaf,
                            const std::string& start_state,
                            const ModificationContext& ctx);

// Most frequent corpus state for the ingredient, preferring usage within
// the dish type, then states whose category is seen in the dish type.
std::string select_state_for_new_ingredient(const std::string& name,
                                            const std::string& dish_type,
                                            const UniversalFoon& foon,
                                            const StateTaxonomy& tax);

// Adds an ingredient with no in-tree equivalent: picks a corpus equivalent,
// copies and renames its preparation chain, and attaches it at the earliest
// unit whose verb the dish type accepts new inputs at.
TaskTree integrate_missing_ingredient(const TaskTree& tree, const RequestedIngredient& given,
                                      const std::string& dish_type,
                                      const ModificationContext& ctx,
                                      const EquivalenceMap& equivalents,
                                      const std::optional<std::string>& override_choice);

struct PruneResult {
    TaskTree tree;
    std::vector<PlanIssue> warnings;
};

// Removes units serving only non-required ingredients and scrubs those
// names from composite ingredient lists. Utensils and containers survive.
PruneResult prune_extra_ingredients(const TaskTree& tree,
                                    const std::set<std::string>& required);

struct ModifyResult {
    TaskTree tree;
    std::vector<PlanIssue> issues;

    bool fatal() const {
        for (const auto& i : issues)
            if (!i.warning) return true;
        return false;
    }
};

// Full pipeline: classify every requested ingredient, dispatch to the case
// handlers or integration, then prune extras. Per-ingredient failures are
// collected; the remaining tree is still returned.
ModifyResult modify_task_tree(const TaskTree& reference, const PlanRequest& req,
                              const ModificationContext& ctx,
                              const std::map<std::string, std::string>& overrides = {});

}  // namespace foon
