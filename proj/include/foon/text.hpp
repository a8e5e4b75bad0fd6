#pragma once
// Plain-text subgraph format (.foon) and JSON export.
//
// Document grammar:
//   @recipe_id: <id>
//   @dish_type: <label>
//   <blank line>
//   unit blocks, each:
//     one or more object blocks (inputs)
//     M<TAB><verb>
//     one or more object blocks (outputs)
//     //
//   object block:
//     O<TAB><name>
//     S<TAB><state>          (one or more)
//     I<TAB><a>,<b>,...      (optional, at most one)
// Lines beginning '#' are comments. Separators are tabs; space-separated
// variants are rejected. CRLF is normalized on read.

#include <stdexcept>
#include <string>

#include "foon/foon.hpp"
#include "foon/node.hpp"
#include "foon/retrieval.hpp"

namespace foon {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + message),
          line(line), column(column) {}
    int line;
    int column;
};

Subgraph parse_subgraph(const std::string& text);
Subgraph load_subgraph(const std::string& path);

// Deterministic canonical form; parse(serialize(s)) == s under canonical
// equality, and serializing twice is a fixpoint.
std::string serialize_subgraph(const Subgraph& s);

// Schema-stable JSON with an explicit version field.
std::string export_json(const UniversalFoon& foon);
std::string export_json(const TaskTree& tree);

// Re-import of exported network JSON; exists so round trips are testable
// and so external producers of the schema can be consumed.
std::vector<FunctionalUnit> import_foon_json(const std::string& json_text);
TaskTree import_task_tree_json(const std::string& json_text);

}  // namespace foon
