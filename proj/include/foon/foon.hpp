#pragma once
// Universal network: deduplicated union of subgraphs plus the adjacency
// index mapping object keys to the units that produce them.

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "foon/node.hpp"

namespace foon {

struct GoalEntry {
    ObjectNode goal;
    std::string recipe_id;
};

struct Diagnostic {
    enum class Kind {
        EmptyInputs,
        EmptyOutputs,
        UnknownMotion,
        UnknownDishType,
        IndexInconsistency,
    };
    Kind kind;
    std::string detail;
};

class MergeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UniversalFoon {
public:
    UniversalFoon() = default;

    const std::vector<FunctionalUnit>& units() const { return units_; }

    // Units with an output canonically equal to node. Index hit, not a scan.
    std::vector<const FunctionalUnit*> units_producing(const ObjectNode& node) const;

    // dish_type -> goal nodes with their recipe ids.
    const std::map<std::string, std::vector<GoalEntry>>& recipe_index() const {
        return recipe_index_;
    }

    // Union of all node names and contained ingredient names.
    const std::set<std::string>& ingredient_vocab() const { return ingredient_vocab_; }

    // Names appearing in some goal node's ingredient list; the substitution
    // vocabulary (excludes utensils by construction).
    const std::set<std::string>& food_vocab() const { return food_vocab_; }

    // Nodes that appear as an input of some unit but are produced by none:
    // the raw items a kitchen is assumed to start with.
    std::vector<ObjectNode> starting_nodes() const;

    const std::vector<Subgraph>& sources() const { return sources_; }

    bool empty() const { return units_.empty(); }
    std::size_t unit_count() const { return units_.size(); }

    // Test hook: corrupt the producers index to exercise validate().
    void corrupt_producers_for_test() { producers_.clear(); }

    friend UniversalFoon merge(const std::vector<Subgraph>& subgraphs);
    friend std::vector<Diagnostic> validate(const UniversalFoon& foon,
                                            const std::set<std::string>& motion_verbs,
                                            const std::set<std::string>& dish_classes);

private:
    void index_unit(std::size_t idx);

    std::vector<FunctionalUnit> units_;
    std::unordered_map<std::string, std::vector<std::size_t>> producers_;
    std::unordered_map<std::string, std::size_t> unit_by_key_;
    std::map<std::string, std::vector<GoalEntry>> recipe_index_;
    std::set<std::string> ingredient_vocab_;
    std::set<std::string> food_vocab_;
    std::vector<Subgraph> sources_;
};

// Union of all functional units under canonical equality. Throws MergeError
// on a duplicate recipe_id.
UniversalFoon merge(const std::vector<Subgraph>& subgraphs);

// Structural diagnostics; empty result means valid.
std::vector<Diagnostic> validate(const UniversalFoon& foon,
                                 const std::set<std::string>& motion_verbs,
                                 const std::set<std::string>& dish_classes);

}  // namespace foon
