#include "foon/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace foon {

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            if (!current.empty() && current.back() == '\r') current.pop_back();
            lines.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty() && current.back() == '\r') current.pop_back();
    lines.push_back(std::move(current));
    return lines;
}

struct PendingObject {
    std::string name;
    std::vector<std::string> states;
    std::vector<std::string> ingredients;
    bool has_ingredient_line = false;
    int line = 0;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lines_(split_lines(text)) {}

    Subgraph run() {
        parse_header();
        while (!at_end()) {
            skip_blank_and_comments();
            if (at_end()) break;
            parse_unit();
        }
        if (graph_.units.empty()) fail(line_no(), 1, "document contains no functional unit");
        graph_.goal = pick_goal(graph_.units.back());
        return graph_;
    }

private:
    [[noreturn]] void fail(int line, int col, const std::string& msg) {
        throw ParseError(line, col, msg);
    }

    bool at_end() const { return pos_ >= lines_.size(); }
    int line_no() const { return static_cast<int>(pos_) + 1; }
    const std::string& line() const { return lines_[pos_]; }

    bool blank_or_comment() const {
        const std::string t = trim(line());
        return t.empty() || t[0] == '#';
    }

    void skip_blank_and_comments() {
        while (!at_end() && blank_or_comment()) ++pos_;
    }

    std::string header_value(const std::string& key) {
        skip_blank_and_comments();
        if (at_end()) fail(line_no(), 1, "missing header line '" + key + "'");
        const std::string& l = line();
        const std::string prefix = key + ":";
        if (l.rfind(prefix, 0) != 0)
            fail(line_no(), 1, "expected header '" + key + ": <value>'");
        std::string value = trim(l.substr(prefix.size()));
        if (value.empty())
            fail(line_no(), static_cast<int>(prefix.size()) + 1,
                 "empty value for header '" + key + "'");
        ++pos_;
        return value;
    }

    void parse_header() {
        graph_.recipe_id = header_value("@recipe_id");
        graph_.dish_type = to_lower(header_value("@dish_type"));
    }

    // Tag line "X<TAB>payload"; rejects space-separated variants.
    std::string tagged_payload(char tag) {
        const std::string& l = line();
        if (l.size() < 2 || l[1] != '\t')
            fail(line_no(), 2, std::string("expected a tab after '") + tag + "'");
        std::string payload = to_lower(trim(l.substr(2)));
        if (payload.empty()) fail(line_no(), 3, std::string("empty payload on '") + tag + "' line");
        return payload;
    }

    char tag() const { return line().empty() ? '\0' : line()[0]; }

    void flush_object(std::vector<ObjectNode>& into, PendingObject& obj) {
        if (obj.name.empty()) return;
        if (obj.states.empty())
            fail(obj.line, 1, "object '" + obj.name + "' has no state line");
        into.push_back(ObjectNode(obj.name, obj.states, obj.ingredients));
        obj = {};
    }

    void parse_unit() {
        std::vector<ObjectNode> inputs, outputs;
        std::string verb;
        PendingObject obj;
        bool seen_motion = false;
        bool closed = false;

        while (!at_end() && !closed) {
            if (blank_or_comment()) {
                ++pos_;
                continue;
            }
            switch (tag()) {
                case 'O': {
                    auto& side = seen_motion ? outputs : inputs;
                    flush_object(side, obj);
                    obj.name = tagged_payload('O');
                    obj.line = line_no();
                    ++pos_;
                    break;
                }
                case 'S': {
                    if (obj.name.empty())
                        fail(line_no(), 1, "state line outside an object block");
                    obj.states.push_back(tagged_payload('S'));
                    ++pos_;
                    break;
                }
                case 'I': {
                    if (obj.name.empty())
                        fail(line_no(), 1, "ingredient line outside an object block");
                    if (obj.has_ingredient_line)
                        fail(line_no(), 1, "object '" + obj.name +
                                               "' has more than one ingredient line");
                    obj.has_ingredient_line = true;
                    std::istringstream in(tagged_payload('I'));
                    std::string item;
                    while (std::getline(in, item, ',')) {
                        item = trim(item);
                        if (item.empty())
                            fail(line_no(), 1, "empty name in ingredient list");
                        obj.ingredients.push_back(item);
                    }
                    ++pos_;
                    break;
                }
                case 'M': {
                    flush_object(inputs, obj);
                    if (inputs.empty())
                        fail(line_no(), 1, "motion line before any object line");
                    if (seen_motion)
                        fail(line_no(), 1, "second motion line in one unit");
                    verb = tagged_payload('M');
                    seen_motion = true;
                    ++pos_;
                    break;
                }
                case '/': {
                    if (trim(line()) != "//")
                        fail(line_no(), 1, "unrecognized line");
                    if (!seen_motion) fail(line_no(), 1, "unit closed without a motion line");
                    flush_object(outputs, obj);
                    if (outputs.empty()) fail(line_no(), 1, "unit closed without outputs");
                    closed = true;
                    ++pos_;
                    break;
                }
                default:
                    fail(line_no(), 1, "unrecognized line");
            }
        }
        if (!closed) fail(line_no(), 1, "unit not terminated by '//'");
        graph_.units.push_back(
            FunctionalUnit(std::move(inputs), {verb}, std::move(outputs), graph_.recipe_id));
    }

    static ObjectNode pick_goal(const FunctionalUnit& last) {
        const ObjectNode* best = &last.outputs.front();
        for (const auto& o : last.outputs) {
            if (o.ingredients.size() > best->ingredients.size()) best = &o;
        }
        return *best;
    }

    std::vector<std::string> lines_;
    std::size_t pos_ = 0;
    Subgraph graph_;
};

}  // namespace

Subgraph parse_subgraph(const std::string& text) { return Parser(text).run(); }

Subgraph load_subgraph(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open subgraph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_subgraph(buf.str());
}

std::string serialize_subgraph(const Subgraph& s) {
    std::ostringstream out;
    out << "@recipe_id: " << s.recipe_id << "\n";
    out << "@dish_type: " << s.dish_type << "\n\n";
    auto emit_object = [&](const ObjectNode& n) {
        out << "O\t" << n.name << "\n";
        for (const auto& st : n.states) out << "S\t" << st << "\n";
        if (!n.ingredients.empty()) {
            out << "I\t";
            for (std::size_t i = 0; i < n.ingredients.size(); ++i) {
                if (i) out << ",";
                out << n.ingredients[i];
            }
            out << "\n";
        }
    };
    for (const auto& u : s.units) {
        for (const auto& n : u.inputs) emit_object(n);
        out << "M\t" << u.motion.verb << "\n";
        for (const auto& n : u.outputs) emit_object(n);
        out << "//\n";
    }
    return out.str();
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json node_to_json(const ObjectNode& n) {
    ordered_json j;
    j["name"] = n.name;
    j["states"] = n.states;
    j["ingredients"] = n.ingredients;
    return j;
}

ObjectNode node_from_json(const nlohmann::json& j) {
    return ObjectNode(j.at("name").get<std::string>(),
                      j.at("states").get<std::vector<std::string>>(),
                      j.value("ingredients", std::vector<std::string>{}));
}

ordered_json unit_to_json(const FunctionalUnit& u) {
    ordered_json j;
    j["inputs"] = ordered_json::array();
    for (const auto& n : u.inputs) j["inputs"].push_back(node_to_json(n));
    j["motion"] = u.motion.verb;
    j["outputs"] = ordered_json::array();
    for (const auto& n : u.outputs) j["outputs"].push_back(node_to_json(n));
    j["source_recipe"] = u.source_recipe;
    return j;
}

FunctionalUnit unit_from_json(const nlohmann::json& j) {
    std::vector<ObjectNode> inputs, outputs;
    for (const auto& n : j.at("inputs")) inputs.push_back(node_from_json(n));
    for (const auto& n : j.at("outputs")) outputs.push_back(node_from_json(n));
    return FunctionalUnit(std::move(inputs), {j.at("motion").get<std::string>()},
                          std::move(outputs), j.value("source_recipe", std::string{}));
}

const char* origin_name(UnitOrigin o) {
    switch (o) {
        case UnitOrigin::Retrieved: return "retrieved";
        case UnitOrigin::Copied: return "copied";
        case UnitOrigin::Synthesized: return "synthesized";
    }
    return "retrieved";
}

UnitOrigin origin_from_name(const std::string& s) {
    if (s == "copied") return UnitOrigin::Copied;
    if (s == "synthesized") return UnitOrigin::Synthesized;
    return UnitOrigin::Retrieved;
}

}  // namespace

std::string export_json(const UniversalFoon& foon) {
    ordered_json j;
    j["version"] = 1;
    j["units"] = ordered_json::array();
    for (const auto& u : foon.units()) j["units"].push_back(unit_to_json(u));
    return j.dump();
}

std::string export_json(const TaskTree& tree) {
    ordered_json j;
    j["version"] = 1;
    j["goal"] = node_to_json(tree.goal);
    j["units"] = ordered_json::array();
    for (const auto& tu : tree.units) {
        ordered_json ju = unit_to_json(tu.unit);
        ju["origin"] = origin_name(tu.origin);
        j["units"].push_back(std::move(ju));
    }
    return j.dump();
}

std::vector<FunctionalUnit> import_foon_json(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    std::vector<FunctionalUnit> out;
    for (const auto& ju : j.at("units")) out.push_back(unit_from_json(ju));
    return out;
}

TaskTree import_task_tree_json(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    TaskTree tree;
    tree.goal = node_from_json(j.at("goal"));
    for (const auto& ju : j.at("units"))
        tree.units.push_back({unit_from_json(ju),
                              origin_from_name(ju.value("origin", "retrieved"))});
    return tree;
}

}  // namespace foon
