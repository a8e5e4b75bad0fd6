#include "foon/evalkit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "foon/progress.hpp"

namespace foon {

namespace {

// The oracle carries its own similarity path: token split, mean vector and
// cosine computed from raw store vectors, independent of VectorStore's
// phrase machinery beyond token lookup.
std::optional<std::vector<double>> bf_phrase_vector(const VectorStore& store,
                                                    const std::string& phrase) {
    std::istringstream in(phrase);
    std::string tok;
    std::vector<double> acc;
    int hits = 0;
    while (in >> tok) {
        const auto* v = store.token_vector(tok);
        if (!v) continue;
        if (acc.empty()) acc.assign(v->size(), 0.0);
        for (std::size_t i = 0; i < v->size(); ++i) acc[i] += (*v)[i];
        ++hits;
    }
    if (hits == 0) return std::nullopt;
    for (auto& x : acc) x /= hits;
    return acc;
}

std::optional<double> bf_similarity(const VectorStore& store, const std::string& a,
                                    const std::string& b) {
    auto va = bf_phrase_vector(store, a);
    auto vb = bf_phrase_vector(store, b);
    if (!va || !vb) return std::nullopt;
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < va->size(); ++i) {
        dot += (*va)[i] * (*vb)[i];
        na += (*va)[i] * (*va)[i];
        nb += (*vb)[i] * (*vb)[i];
    }
    if (na == 0 || nb == 0) return 0.0;
    double c = dot / (std::sqrt(na) * std::sqrt(nb));
    if (c < 0) c = 0;
    if (c > 1) c = 1;
    return c;
}

bool bf_matches(const VectorStore& store, const SimilarityConfig& cfg,
                const std::string& name, const std::set<std::string>& names) {
    if (names.count(name)) return true;
    for (const auto& other : names) {
        auto s = bf_similarity(store, name, other);
        if (s && *s >= cfg.tau) return true;
    }
    return false;
}

int bf_heuristic(const VectorStore& store, const SimilarityConfig& cfg,
                 const ObjectNode& node, const std::set<std::string>& required) {
    if (node.ingredients.empty())
        return bf_matches(store, cfg, node.name, required) ? 1 : 0;
    int score = 0;
    for (const auto& a : node.ingredients)
        if (bf_matches(store, cfg, a, required)) ++score;
    return score;
}

// Linear scan over all units; deliberately ignores the producers index.
std::vector<const FunctionalUnit*> bf_candidates(const UniversalFoon& foon,
                                                 const ObjectNode& item) {
    std::vector<const FunctionalUnit*> out;
    for (const auto& u : foon.units())
        if (u.find_output(item)) out.push_back(&u);
    return out;
}

const FunctionalUnit* bf_best(const std::vector<const FunctionalUnit*>& candidates,
                              const ObjectNode& item, const VectorStore& store,
                              const SimilarityConfig& cfg,
                              const std::set<std::string>& required) {
    const FunctionalUnit* best = nullptr;
    int best_score = -1;
    for (const auto* cand : candidates) {
        int score = bf_heuristic(store, cfg, *cand->find_output(item), required);
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

// All complete producer assignments, counted to confirm the greedy one is
// realizable; capped to keep the oracle honest about its own limits.
void enumerate_assignments(const UniversalFoon& foon, const Kitchen& kitchen,
                           std::map<std::string, const FunctionalUnit*>& chosen,
                           std::vector<ObjectNode> pending, long& complete,
                           long cap) {
    while (!pending.empty()) {
        ObjectNode item = std::move(pending.back());
        pending.pop_back();
        if (kitchen.contains(item) || chosen.count(item.key())) continue;
        auto candidates = bf_candidates(foon, item);
        if (candidates.empty()) return;  // dead assignment
        for (const auto* cand : candidates) {
            chosen[item.key()] = cand;
            auto next = pending;
            for (const auto& in : cand->inputs) next.push_back(in);
            enumerate_assignments(foon, kitchen, chosen, std::move(next), complete, cap);
            chosen.erase(item.key());
            if (complete > cap)
                throw OracleTooLargeError("assignment count exceeds oracle cap");
        }
        return;
    }
    ++complete;
}

}  // namespace

TaskTree brute_force_retrieve(const ObjectNode& goal, const std::set<std::string>& required,
                              const Kitchen& kitchen, const UniversalFoon& foon,
                              const VectorStore& store, const SimilarityConfig& cfg,
                              std::size_t max_units) {
    if (foon.unit_count() > max_units)
        throw OracleTooLargeError("graph has " + std::to_string(foon.unit_count()) +
                                  " units, oracle bound is " + std::to_string(max_units));

    {
        std::map<std::string, const FunctionalUnit*> chosen;
        long complete = 0;
        enumerate_assignments(foon, kitchen, chosen, {goal}, complete, 100000);
        if (complete == 0 && !kitchen.contains(goal))
            throw UnreachableItemError(goal.key(),
                                       "no complete producer assignment reaches '" +
                                           goal.name + "'");
    }

    // Greedy-optimal assignment: every item takes its per-item best unit.
    std::map<std::string, const FunctionalUnit*> choice;
    std::vector<ObjectNode> pending = {goal};
    while (!pending.empty()) {
        ObjectNode item = std::move(pending.back());
        pending.pop_back();
        if (kitchen.contains(item) || choice.count(item.key())) continue;
        auto candidates = bf_candidates(foon, item);
        const FunctionalUnit* best = bf_best(candidates, item, store, cfg, required);
        if (!best)
            throw UnreachableItemError(item.key(), "'" + item.name +
                                                       "' has no producer and is not "
                                                       "in the kitchen");
        choice[item.key()] = best;
        for (const auto& in : best->inputs) pending.push_back(in);
    }

    // Distinct chosen units in an independently derived dependency order.
    std::vector<const FunctionalUnit*> units;
    std::set<std::string> seen;
    for (const auto& [key, unit] : choice)
        if (seen.insert(unit->canonical_key()).second) units.push_back(unit);

    TaskTree tree;
    tree.goal = goal;
    std::set<std::string> produced;
    while (!units.empty()) {
        // Ready units, smallest canonical key first.
        std::size_t pick = units.size();
        std::string pick_key;
        for (std::size_t i = 0; i < units.size(); ++i) {
            bool ready = true;
            for (const auto& in : units[i]->inputs) {
                if (!kitchen.contains(in) && !produced.count(in.key())) {
                    ready = false;
                    break;
                }
            }
            if (!ready) continue;
            std::string key = units[i]->canonical_key();
            if (pick == units.size() || key < pick_key) {
                pick = i;
                pick_key = key;
            }
        }
        if (pick == units.size())
            throw UnreachableItemError(units.front()->outputs.front().key(),
                                       "cyclic producer assignment");
        for (const auto& out : units[pick]->outputs) produced.insert(out.key());
        tree.units.push_back({*units[pick], UnitOrigin::Retrieved});
        units.erase(units.begin() + static_cast<long>(pick));
    }
    return tree;
}

RecipeVerdict score_tree(const TaskTree& tree, const std::map<std::string, int>& labels) {
    std::set<std::string> composite_names;
    std::set<std::string> ingredients;
    for (const auto& tu : tree.units) {
        for (const auto* side : {&tu.unit.inputs, &tu.unit.outputs}) {
            for (const auto& n : *side) {
                if (!n.ingredients.empty()) {
                    composite_names.insert(n.name);
                    for (const auto& ing : n.ingredients)
                        if (!utensil_lexicon().count(ing)) ingredients.insert(ing);
                } else if (!utensil_lexicon().count(n.name)) {
                    ingredients.insert(n.name);
                }
            }
        }
    }
    for (const auto& c : composite_names) ingredients.erase(c);

    RecipeVerdict verdict;
    int correct = 0;
    for (const auto& name : ingredients) {
        auto it = labels.find(name);
        if (it == labels.end())
            throw IncompleteLabelsError("no label for ingredient '" + name + "'");
        if (it->second < 0 || it->second > 2)
            throw IncompleteLabelsError("label for '" + name + "' outside {0,1,2}");
        verdict.scores.push_back({name, it->second, {}});
        if (it->second == 2) ++correct;
    }
    verdict.correct_fraction =
        ingredients.empty() ? 1.0
                            : static_cast<double>(correct) /
                                  static_cast<double>(ingredients.size());
    return verdict;
}

std::map<std::string, int> auto_structural_checks(const TaskTree& tree,
                                                  const PlanRequest& req,
                                                  const MotionLexicon& lex,
                                                  const StateTaxonomy& tax) {
    auto lines = compute_progress_lines(tree);
    std::map<std::string, int> scores;
    for (const auto& given : req.ingredients) {
        auto it = lines.find(given.name);
        if (it == lines.end() || it->second.steps.empty()) {
            scores[given.name] = 0;
            continue;
        }
        int score = 2;
        for (const auto& step : it->second.steps) {
            std::set<std::string> before(step.states_before.begin(),
                                         step.states_before.end());
            for (const auto& s : step.states_after) {
                if (before.count(s)) continue;
                auto entry = lex.entries().find(step.motion);
                bool compatible = false;
                if (entry != lex.entries().end()) {
                    if (entry->second.state_counts.count(s)) {
                        compatible = true;
                    } else if (auto cat = tax.category(s)) {
                        for (const auto& peer : tax.categories().at(*cat))
                            if (entry->second.state_counts.count(peer)) {
                                compatible = true;
                                break;
                            }
                    }
                }
                if (!compatible) score = std::min(score, 1);
            }
        }
        scores[given.name] = score;
    }
    return scores;
}

std::vector<CurvePoint> threshold_curve(const std::vector<RecipeVerdict>& verdicts) {
    std::vector<CurvePoint> curve;
    for (int t = 5; t <= 10; ++t) {
        double threshold = t / 10.0;
        int passing = 0;
        for (const auto& v : verdicts)
            if (v.passes(threshold)) ++passing;
        curve.push_back({threshold, verdicts.empty()
                                        ? 0.0
                                        : static_cast<double>(passing) /
                                              static_cast<double>(verdicts.size())});
    }
    return curve;
}

std::string curve_to_csv(const std::vector<CurvePoint>& curve) {
    std::ostringstream out;
    out << "threshold,fraction_passing\n";
    for (const auto& p : curve) {
        out << p.threshold << "," << p.fraction_passing << "\n";
    }
    return out.str();
}

std::map<std::string, std::map<std::string, IngredientScore>> parse_labels(
    const std::string& text) {
    std::map<std::string, std::map<std::string, IngredientScore>> out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, '\t')) fields.push_back(field);
        if (fields.size() < 3 || fields.size() > 4)
            throw IncompleteLabelsError("labels line " + std::to_string(line_no) +
                                        ": expected recipe<TAB>ingredient<TAB>score"
                                        "[<TAB>category]");
        int score;
        try {
            score = std::stoi(fields[2]);
        } catch (const std::exception&) {
            throw IncompleteLabelsError("labels line " + std::to_string(line_no) +
                                        ": score is not a number");
        }
        if (score < 0 || score > 2)
            throw IncompleteLabelsError("labels line " + std::to_string(line_no) +
                                        ": score outside {0,1,2}");
        IngredientScore is{fields[1], score, fields.size() == 4 ? fields[3] : ""};
        out[fields[0]][fields[1]] = is;
    }
    return out;
}

}  // namespace foon
