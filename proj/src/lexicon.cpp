#include "foon/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace foon {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// key<TAB>value lines, '#' comments, blank lines ignored.
void for_each_kv(const std::string& text,
                 const std::function<void(const std::string&, const std::string&)>& fn) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected '<key>\\t<value>'");
        fn(trim(line.substr(0, tab)), trim(line.substr(tab + 1)));
    }
}

}  // namespace

StateTaxonomy StateTaxonomy::load(const std::string& path) {
    return parse(slurp(path));
}

StateTaxonomy StateTaxonomy::parse(const std::string& text) {
    StateTaxonomy tax;
    for_each_kv(text, [&](const std::string& category, const std::string& value) {
        auto& states = tax.categories_[category];
        for (const auto& state : split_commas(value)) {
            auto [it, fresh] = tax.owner_.emplace(state, category);
            if (!fresh && it->second != category)
                throw ConfigError("state '" + state + "' appears in categories '" +
                                  it->second + "' and '" + category + "'");
            states.insert(state);
        }
    });
    return tax;
}

std::optional<std::string> StateTaxonomy::category(const std::string& state) const {
    auto it = owner_.find(state);
    if (it == owner_.end()) return std::nullopt;
    return it->second;
}

MotionLexicon MotionLexicon::load(const std::string& path) {
    return parse(slurp(path));
}

MotionLexicon MotionLexicon::parse(const std::string& text) {
    MotionLexicon lex;
    for_each_kv(text, [&](const std::string& verb, const std::string& value) {
        if (value != "0" && value != "1")
            throw ConfigError("verb '" + verb + "': accepts_new_inputs must be 0 or 1");
        lex.entries_[verb].accepts_new_inputs = (value == "1");
    });
    return lex;
}

void MotionLexicon::count_corpus(const UniversalFoon& foon) {
    for (const auto& u : foon.units()) {
        std::set<std::string> input_states;
        for (const auto& n : u.inputs)
            input_states.insert(n.states.begin(), n.states.end());
        std::set<std::string> produced;
        for (const auto& n : u.outputs)
            for (const auto& s : n.states)
                if (!input_states.count(s)) produced.insert(s);
        auto it = entries_.find(u.motion.verb);
        if (it == entries_.end()) continue;  // unknown verbs surface via validate()
        for (const auto& s : produced) ++it->second.state_counts[s];
    }
}

bool MotionLexicon::accepts_new_inputs(const std::string& verb) const {
    auto it = entries_.find(verb);
    return it != entries_.end() && it->second.accepts_new_inputs;
}

std::set<std::string> MotionLexicon::verbs() const {
    std::set<std::string> out;
    for (const auto& [verb, info] : entries_) out.insert(verb);
    return out;
}

std::string MotionLexicon::verb_for_state(const std::string& state,
                                          const StateTaxonomy& tax) const {
    auto best_for = [&](const std::set<std::string>& states) -> std::optional<std::string> {
        std::string best;
        int best_count = 0;
        for (const auto& [verb, info] : entries_) {
            int count = 0;
            for (const auto& s : states) {
                auto it = info.state_counts.find(s);
                if (it != info.state_counts.end()) count += it->second;
            }
            if (count > best_count || (count == best_count && count > 0 && verb < best)) {
                best = verb;
                best_count = count;
            }
        }
        if (best_count == 0) return std::nullopt;
        return best;
    };

    if (auto v = best_for({state})) return *v;
    if (auto cat = tax.category(state)) {
        if (auto v = best_for(tax.categories().at(*cat))) return *v;
    }
    throw NoVerbError("no motion verb known for state '" + state + "'");
}

DishAttachmentRules DishAttachmentRules::load(const std::string& path) {
    return parse(slurp(path));
}

DishAttachmentRules DishAttachmentRules::parse(const std::string& text) {
    DishAttachmentRules rules;
    for_each_kv(text, [&](const std::string& dish, const std::string& value) {
        auto& verbs = rules.rules_[dish];
        for (const auto& v : split_commas(value)) verbs.insert(v);
    });
    return rules;
}

const std::set<std::string>& DishAttachmentRules::verbs_for(
    const std::string& dish_type) const {
    static const std::set<std::string> empty;
    auto it = rules_.find(dish_type);
    return it == rules_.end() ? empty : it->second;
}

std::set<std::string> DishAttachmentRules::dish_classes() const {
    std::set<std::string> out;
    for (const auto& [dish, verbs] : rules_) out.insert(dish);
    return out;
}

}  // namespace foon
