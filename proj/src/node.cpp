#include "foon/node.hpp"

#include <sstream>

namespace foon {

const std::set<std::string>& container_lexicon() {
    static const std::set<std::string> lex = {
        "bowl", "pan", "cup", "blender", "pot", "plate", "glass", "cutting board",
    };
    return lex;
}

const std::set<std::string>& utensil_lexicon() {
    static const std::set<std::string> lex = [] {
        std::set<std::string> s = container_lexicon();
        s.insert({"knife", "whisk", "spoon", "fork", "oven", "grater", "peeler",
                  "squeezer", "spatula", "ladle"});
        return s;
    }();
    return lex;
}

namespace {
// Unit separator / record separator keep joined keys unambiguous.
constexpr char kFieldSep = '\x1f';
constexpr char kItemSep = '\x1e';

void join(std::ostringstream& out, const std::vector<std::string>& items) {
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out << kItemSep;
        out << items[i];
    }
}
}  // namespace

std::string ObjectNode::key() const {
    std::ostringstream out;
    out << name << kFieldSep;
    join(out, states);
    out << kFieldSep;
    join(out, ingredients);
    return out.str();
}

std::string FunctionalUnit::canonical_key() const {
    std::ostringstream out;
    for (const auto& n : inputs) out << n.key() << kItemSep;
    out << kFieldSep << motion.verb << kFieldSep;
    for (const auto& n : outputs) out << n.key() << kItemSep;
    return out.str();
}

}  // namespace foon
