#pragma once
// Per-ingredient progress lines: the ordered state changes an ingredient
// goes through in a task tree, plus text / DOT / JSON renderings.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "foon/retrieval.hpp"

namespace foon {

struct ProgressStep {
    std::vector<std::string> states_before;
    std::string motion;
    std::vector<std::string> states_after;
    std::size_t unit_index = 0;
};

struct ProgressLine {
    std::string ingredient;
    std::vector<ProgressStep> steps;  // ordered by unit index
};

// One line per ingredient name appearing in the tree, as a node name or a
// composite member. Composite membership counts as being touched.
std::map<std::string, ProgressLine> compute_progress_lines(const TaskTree& tree);

enum class RenderFormat { Text, Dot, Json };

class UnknownFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

RenderFormat parse_format(const std::string& flag);

std::string render(const std::map<std::string, ProgressLine>& lines, RenderFormat format);
std::string render(const TaskTree& tree, RenderFormat format);

}  // namespace foon
