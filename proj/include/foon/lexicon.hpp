#pragma once
// State taxonomy, motion lexicon and dish-class attachment rules.
// Category membership and accepts-new-inputs flags come from editable
// config files; verb/state usage counts come from the corpus itself.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "foon/foon.hpp"
#include "foon/node.hpp"

namespace foon {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class StateTaxonomy {
public:
    // Config format, one category per line: "<category>\t<state>,<state>,...".
    static StateTaxonomy load(const std::string& path);
    static StateTaxonomy parse(const std::string& text);

    // The unique owning category, or nullopt for an uncategorized state.
    std::optional<std::string> category(const std::string& state) const;

    const std::map<std::string, std::set<std::string>>& categories() const {
        return categories_;
    }

private:
    std::map<std::string, std::set<std::string>> categories_;
    std::map<std::string, std::string> owner_;  // state -> category
};

struct MotionInfo {
    bool accepts_new_inputs = false;
    // state -> number of units where this verb yields the state.
    std::map<std::string, int> state_counts;
};

class NoVerbError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MotionLexicon {
public:
    // Config format, one verb per line: "<verb>\t<0|1>" (accepts_new_inputs).
    static MotionLexicon load(const std::string& path);
    static MotionLexicon parse(const std::string& text);

    // Counts how often each verb produced each state. A state counts for a
    // unit when it appears on an output node but on no input node.
    void count_corpus(const UniversalFoon& foon);

    bool known(const std::string& verb) const { return entries_.count(verb) > 0; }
    bool accepts_new_inputs(const std::string& verb) const;
    std::set<std::string> verbs() const;
    const std::map<std::string, MotionInfo>& entries() const { return entries_; }

    // Most frequently used verb for the state, ties broken lexicographically.
    // Falls back to aggregated counts over the state's taxonomy category;
    // throws NoVerbError when neither yields a verb.
    std::string verb_for_state(const std::string& state,
                               const StateTaxonomy& tax) const;

private:
    std::map<std::string, MotionInfo> entries_;
};

class DishAttachmentRules {
public:
    // Config format: "<dish_type>\t<verb>,<verb>,...". The keys double as
    // the configured dish-class list.
    static DishAttachmentRules load(const std::string& path);
    static DishAttachmentRules parse(const std::string& text);

    const std::set<std::string>& verbs_for(const std::string& dish_type) const;
    std::set<std::string> dish_classes() const;
    bool knows_dish(const std::string& dish_type) const {
        return rules_.count(dish_type) > 0;
    }

private:
    std::map<std::string, std::set<std::string>> rules_;
};

}  // namespace foon
