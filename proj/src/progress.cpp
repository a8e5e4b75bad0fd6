#include "foon/progress.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "foon/text.hpp"

namespace foon {

namespace {

// The node standing in for `name` on one side of a unit: the standalone
// node first, else a composite carrying it, else a composite named it.
const ObjectNode* representative(const std::vector<ObjectNode>& side,
                                 const std::string& name) {
    for (const auto& n : side)
        if (n.name == name && n.ingredients.empty()) return &n;
    for (const auto& n : side)
        if (n.contains_ingredient(name)) return &n;
    for (const auto& n : side)
        if (n.name == name) return &n;
    return nullptr;
}

std::string join_states(const std::vector<std::string>& states) {
    std::string out;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (i) out += ", ";
        out += states[i];
    }
    return out;
}

}  // namespace

std::map<std::string, ProgressLine> compute_progress_lines(const TaskTree& tree) {
    std::map<std::string, ProgressLine> lines;
    for (std::size_t i = 0; i < tree.units.size(); ++i) {
        const auto& unit = tree.units[i].unit;
        std::set<std::string> names;
        for (const auto* side : {&unit.inputs, &unit.outputs}) {
            for (const auto& n : *side) {
                names.insert(n.name);
                for (const auto& ing : n.ingredients) names.insert(ing);
            }
        }
        for (const auto& name : names) {
            ProgressStep step;
            step.motion = unit.motion.verb;
            step.unit_index = i;
            if (const auto* n = representative(unit.inputs, name))
                step.states_before = n->states;
            if (const auto* n = representative(unit.outputs, name))
                step.states_after = n->states;
            auto& line = lines[name];
            line.ingredient = name;
            line.steps.push_back(std::move(step));
        }
    }
    return lines;
}

RenderFormat parse_format(const std::string& flag) {
    if (flag == "text") return RenderFormat::Text;
    if (flag == "dot") return RenderFormat::Dot;
    if (flag == "json") return RenderFormat::Json;
    throw UnknownFormatError("unknown format '" + flag + "' (expected text|dot|json)");
}

namespace {

std::string lines_to_text(const std::map<std::string, ProgressLine>& lines) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [name, line] : lines) {
        if (!first) out << "\n";
        first = false;
        out << name << "\n";
        for (const auto& s : line.steps) {
            out << "  " << join_states(s.states_before) << " | " << s.motion << " | "
                << join_states(s.states_after) << "\n";
        }
    }
    return out.str();
}

// Coloring convention: objects black, states green, motions red.
std::string lines_to_dot(const std::map<std::string, ProgressLine>& lines) {
    std::ostringstream out;
    out << "digraph progress {\n  rankdir=LR;\n"
        << "  node [shape=box, color=black, fontcolor=black];\n";
    int idx = 0;
    for (const auto& [name, line] : lines) {
        out << "  subgraph cluster_" << idx << " {\n"
            << "    label=\"" << name << "\";\n";
        for (std::size_t i = 0; i <= line.steps.size(); ++i) {
            const auto& states = i == 0 ? line.steps.front().states_before
                                        : line.steps[i - 1].states_after;
            out << "    n" << idx << "_" << i << " [label=\"" << join_states(states)
                << "\", fontcolor=darkgreen, color=darkgreen];\n";
        }
        for (std::size_t i = 0; i < line.steps.size(); ++i) {
            out << "    n" << idx << "_" << i << " -> n" << idx << "_" << (i + 1)
                << " [label=\"" << line.steps[i].motion
                << "\", fontcolor=red, color=red];\n";
        }
        out << "  }\n";
        ++idx;
    }
    out << "}\n";
    return out.str();
}

std::string lines_to_json(const std::map<std::string, ProgressLine>& lines) {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["lines"] = nlohmann::ordered_json::array();
    for (const auto& [name, line] : lines) {
        nlohmann::ordered_json jl;
        jl["ingredient"] = name;
        jl["steps"] = nlohmann::ordered_json::array();
        for (const auto& s : line.steps) {
            nlohmann::ordered_json js;
            js["states_before"] = s.states_before;
            js["motion"] = s.motion;
            js["states_after"] = s.states_after;
            js["unit_index"] = s.unit_index;
            jl["steps"].push_back(std::move(js));
        }
        j["lines"].push_back(std::move(jl));
    }
    return j.dump();
}

std::string node_label(const ObjectNode& n) {
    std::string label = n.name;
    if (!n.states.empty()) label += "\\n" + join_states(n.states);
    return label;
}

std::string tree_to_dot(const TaskTree& tree) {
    std::ostringstream out;
    out << "digraph task_tree {\n  rankdir=TB;\n";
    std::map<std::string, std::string> node_ids;
    auto id_for = [&](const ObjectNode& n) {
        auto it = node_ids.find(n.key());
        if (it != node_ids.end()) return it->second;
        std::string id = "o" + std::to_string(node_ids.size());
        node_ids.emplace(n.key(), id);
        out << "  " << id << " [shape=ellipse, color=darkgreen, fontcolor=black, label=\""
            << node_label(n) << "\"];\n";
        return id;
    };
    for (std::size_t i = 0; i < tree.units.size(); ++i) {
        const auto& u = tree.units[i].unit;
        std::string mid = "m" + std::to_string(i);
        std::vector<std::string> in_ids, out_ids;
        for (const auto& n : u.inputs) in_ids.push_back(id_for(n));
        for (const auto& n : u.outputs) out_ids.push_back(id_for(n));
        out << "  " << mid << " [shape=box, color=red, fontcolor=red, label=\""
            << u.motion.verb << "\"];\n";
        for (const auto& id : in_ids) out << "  " << id << " -> " << mid << ";\n";
        for (const auto& id : out_ids) out << "  " << mid << " -> " << id << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string tree_to_text(const TaskTree& tree) {
    std::ostringstream out;
    for (std::size_t i = 0; i < tree.units.size(); ++i) {
        const auto& u = tree.units[i].unit;
        out << i + 1 << ". " << u.motion.verb << ":";
        for (const auto& n : u.inputs) out << " [" << n.name
                                           << (n.states.empty() ? "" : " {" + join_states(n.states) + "}")
                                           << "]";
        out << " ->";
        for (const auto& n : u.outputs) out << " [" << n.name
                                            << (n.states.empty() ? "" : " {" + join_states(n.states) + "}")
                                            << "]";
        out << "\n";
    }
    return out.str();
}

}  // namespace

std::string render(const std::map<std::string, ProgressLine>& lines, RenderFormat format) {
    switch (format) {
        case RenderFormat::Text: return lines_to_text(lines);
        case RenderFormat::Dot: return lines_to_dot(lines);
        case RenderFormat::Json: return lines_to_json(lines);
    }
    return {};
}

std::string render(const TaskTree& tree, RenderFormat format) {
    switch (format) {
        case RenderFormat::Text: return tree_to_text(tree);
        case RenderFormat::Dot: return tree_to_dot(tree);
        case RenderFormat::Json: return export_json(tree);
    }
    return {};
}

}  // namespace foon
