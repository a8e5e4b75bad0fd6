#pragma once
// Evaluation scaffolding: exhaustive retrieval oracle, 3-point ingredient
// scoring, threshold curves and mechanical progress-line checks.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "foon/lexicon.hpp"
#include "foon/retrieval.hpp"

namespace foon {

class OracleTooLargeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class IncompleteLabelsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exhaustive counterpart of retrieve_task_tree: scans all units for
// candidates, evaluates the heuristic by brute-force pairwise similarity,
// enumerates every complete producer assignment, and returns the one whose
// every per-item choice is maximal under the retrieval tie-break.
// Refuses graphs above max_units.
TaskTree brute_force_retrieve(const ObjectNode& goal, const std::set<std::string>& required,
                              const Kitchen& kitchen, const UniversalFoon& foon,
                              const VectorStore& store, const SimilarityConfig& cfg,
                              std::size_t max_units = 60);

// 0 = incorrect, 1 = partially incorrect, 2 = correct.
struct IngredientScore {
    std::string ingredient;
    int score = 0;
    std::string error_category;  // optional reviewer annotation
};

struct RecipeVerdict {
    std::vector<IngredientScore> scores;
    double correct_fraction = 0.0;

    bool passes(double threshold) const { return correct_fraction >= threshold; }
};

// labels must cover every food ingredient on the tree's progress lines.
RecipeVerdict score_tree(const TaskTree& tree, const std::map<std::string, int>& labels);

// Mechanical lower bound on the human judgment: 0 when the ingredient is
// absent, 1 when some step pairs a state with a verb never seen yielding
// it, else 2.
std::map<std::string, int> auto_structural_checks(const TaskTree& tree,
                                                  const PlanRequest& req,
                                                  const MotionLexicon& lex,
                                                  const StateTaxonomy& tax);

struct CurvePoint {
    double threshold;
    double fraction_passing;
};

// Fraction of verdicts passing at thresholds 0.5..1.0 step 0.1.
std::vector<CurvePoint> threshold_curve(const std::vector<RecipeVerdict>& verdicts);
std::string curve_to_csv(const std::vector<CurvePoint>& curve);

// Labels file: "recipe_id<TAB>ingredient<TAB>score[<TAB>error_category]".
std::map<std::string, std::map<std::string, IngredientScore>> parse_labels(
    const std::string& text);

}  // namespace foon
