#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "foon/retrieval.hpp"
#include "foon/text.hpp"
#include "support.hpp"

using namespace foon;

namespace {

UniversalFoon tiny_net(std::vector<FunctionalUnit> units, ObjectNode goal) {
    Subgraph g;
    g.recipe_id = "tiny";
    g.dish_type = "salad";
    g.units = std::move(units);
    g.goal = std::move(goal);
    return merge({g});
}

}  // namespace

TEST_CASE("goal-candidate scoring counts exact and near-synonym matches") {
    const auto& f = test::fixture();
    std::set<std::string> required = {"tomato", "cucumber", "salt"};
    std::set<std::string> candidate = {"tomato", "zucchini", "oil"};
    CHECK(score_goal_candidate(required, candidate, f.store, f.cfg) == 2);
    // with an exact-only threshold the zucchini match disappears
    CHECK(score_goal_candidate(required, candidate, f.store, {0.9999, 5}) == 1);
    CHECK(score_goal_candidate({}, candidate, f.store, f.cfg) == 0);
    CHECK(score_goal_candidate(required, {}, f.store, f.cfg) == 0);
    // names without vectors only match exactly
    CHECK(score_goal_candidate({"mysteryfruit"}, {"mysteryfruit"}, f.store, f.cfg) == 1);
    CHECK(score_goal_candidate({"mysteryfruit"}, {"otherfruit"}, f.store, f.cfg) == 0);
}

TEST_CASE("reference goal is the best-overlapping recipe of the dish type") {
    const auto& f = test::fixture();
    PlanRequest req;
    req.dish_type = "soup";
    for (const auto* n : {"potato", "onion", "water", "salt"})
        req.ingredients.push_back({n, ""});
    auto [goal, recipe] = find_reference_goal(req, f.net, f.store, f.cfg);
    CHECK(recipe == "potato_soup");
    CHECK(goal.name == "potato soup");

    req.ingredients[0] = {"tomato", ""};
    CHECK(find_reference_goal(req, f.net, f.store, f.cfg).second == "tomato_soup");
}

TEST_CASE("reference goal ties break on fewer extras, then recipe id") {
    const auto& f = test::fixture();
    // {water, salt} scores 2 for every soup; chicken soup has only one extra.
    PlanRequest req;
    req.dish_type = "soup";
    req.ingredients = {{"water", ""}, {"salt", ""}};
    CHECK(find_reference_goal(req, f.net, f.store, f.cfg).second == "chicken_soup");

    // {onion, water, salt}: potato and tomato soup tie at score 3 with one
    // extra each; lexicographic recipe id decides.
    req.ingredients = {{"onion", ""}, {"water", ""}, {"salt", ""}};
    CHECK(find_reference_goal(req, f.net, f.store, f.cfg).second == "potato_soup");
}

TEST_CASE("near-synonym requests still find the right recipe") {
    const auto& f = test::fixture();
    PlanRequest req;
    req.dish_type = "soup";
    for (const auto* n : {"turkey", "water", "salt"}) req.ingredients.push_back({n, ""});
    CHECK(find_reference_goal(req, f.net, f.store, f.cfg).second == "chicken_soup");
}

TEST_CASE("unknown dish classes are rejected") {
    const auto& f = test::fixture();
    PlanRequest req;
    req.dish_type = "dessert";
    req.ingredients = {{"sugar", ""}};
    CHECK_THROWS_AS(find_reference_goal(req, f.net, f.store, f.cfg),
                    UnknownDishClassError);
}

TEST_CASE("heuristic counts the node's ingredient overlap with the request") {
    const auto& f = test::fixture();
    std::set<std::string> required = {"cucumber", "water"};
    // simple nodes score on their own name
    CHECK(heuristic_g(ObjectNode("zucchini", {"whole"}), required, f.store, f.cfg) == 1);
    CHECK(heuristic_g(ObjectNode("salt", {"granulated"}), required, f.store, f.cfg) == 0);
    // composite nodes score on their contained set
    ObjectNode base("soup base", {"in pot"}, {"tomato", "onion", "water", "salt"});
    CHECK(heuristic_g(base, {"tomato", "water"}, f.store, f.cfg) == 2);
    CHECK(heuristic_g(base, {"tomato", "onion", "water", "salt"}, f.store, f.cfg) == 4);
    CHECK(heuristic_g(base, {"flour"}, f.store, f.cfg) == 0);
}

TEST_CASE("retrieval assembles the full preparation chain for a corpus goal") {
    const auto& f = test::fixture();
    ObjectNode goal("tomato soup", {"cooked"}, {"tomato", "onion", "water", "salt"});
    auto kitchen = default_kitchen(f.net);
    auto tree = retrieve_task_tree(goal, {"tomato", "onion", "water", "salt"}, kitchen,
                                   f.net, f.store, f.cfg);
    REQUIRE(tree.size() == 4);
    CHECK(tree.goal == goal);
    CHECK(tree.executable_order(kitchen));
    std::vector<std::string> verbs;
    for (const auto& tu : tree.units) verbs.push_back(tu.unit.motion.verb);
    // two dicing steps in either order, then pour, then simmer
    CHECK(verbs[0] == "dice");
    CHECK(verbs[1] == "dice");
    CHECK(verbs[2] == "pour");
    CHECK(verbs[3] == "simmer");
    for (const auto& tu : tree.units) CHECK(tu.origin == UnitOrigin::Retrieved);
    // leaves are all stocked
    for (const auto& leaf : tree.leaves()) CHECK(kitchen.contains(leaf));
}

TEST_CASE("retrieval is deterministic") {
    const auto& f = test::fixture();
    ObjectNode goal("greek salad", {"mixed"},
                    {"tomato", "cucumber", "onion", "feta cheese", "olive oil", "salt"});
    auto kitchen = default_kitchen(f.net);
    std::set<std::string> req = {"tomato", "cucumber"};
    auto a = retrieve_task_tree(goal, req, kitchen, f.net, f.store, f.cfg);
    auto b = retrieve_task_tree(goal, req, kitchen, f.net, f.store, f.cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.units[i].unit == b.units[i].unit);
}

TEST_CASE("competing producers: ties break on input count, then source recipe") {
    const auto& f = test::fixture();
    ObjectNode batter("cake batter", {"mixed"}, {"butter", "egg", "flour", "sugar"});
    auto candidates = f.net.units_producing(batter);
    REQUIRE(candidates.size() == 2);
    const auto* best = pick_candidate(candidates, batter,
                                      {"flour", "sugar", "egg", "butter"}, f.store, f.cfg);
    REQUIRE(best);
    // both producers score and size equally; chocolate_cake sorts first
    CHECK(best->source_recipe == "chocolate_cake");

    auto kitchen = default_kitchen(f.net);
    auto tree = retrieve_task_tree(batter, {"flour", "sugar", "egg", "butter"}, kitchen,
                                   f.net, f.store, f.cfg);
    REQUIRE(tree.size() == 2);
    CHECK(tree.units[0].unit.motion.verb == "crack");
    CHECK(tree.units[1].unit.source_recipe == "chocolate_cake");
}

TEST_CASE("fewer-inputs tie-break applies before source recipe") {
    ObjectNode a("a", {"s"}), b("b", {"s"}), g("g", {"s"});
    FunctionalUnit big({a, b}, {"v"}, {g}, "aaa");
    FunctionalUnit small({a}, {"v"}, {g}, "zzz");
    auto net = tiny_net({big, small}, g);
    const auto& f = test::fixture();
    auto candidates = net.units_producing(g);
    REQUIRE(candidates.size() == 2);
    const auto* best = pick_candidate(candidates, g, {}, f.store, f.cfg);
    CHECK(best->source_recipe == "zzz");
}

TEST_CASE("a goal already in the kitchen needs no units") {
    const auto& f = test::fixture();
    ObjectNode goal("tomato", {"whole"});
    auto tree = retrieve_task_tree(goal, {"tomato"}, default_kitchen(f.net), f.net,
                                   f.store, f.cfg);
    CHECK(tree.empty());
    CHECK(tree.goal == goal);
}

TEST_CASE("an unreachable goal raises with the item attached") {
    const auto& f = test::fixture();
    ObjectNode goal("ambrosia", {"divine"});
    try {
        retrieve_task_tree(goal, {"ambrosia"}, default_kitchen(f.net), f.net, f.store,
                           f.cfg);
        FAIL("expected UnreachableItemError");
    } catch (const UnreachableItemError& e) {
        CHECK(e.item == goal.key());
        CHECK(std::string(e.what()).find("ambrosia") != std::string::npos);
    }
}

TEST_CASE("retrieval terminates on cyclic producer graphs") {
    ObjectNode x("x", {"s"}), y("y", {"s"}), z("z", {"s"});
    auto net = tiny_net({FunctionalUnit({x}, {"v"}, {y}),
                         FunctionalUnit({y}, {"v"}, {x}),
                         FunctionalUnit({y}, {"v"}, {z})},
                        z);
    const auto& f = test::fixture();
    CHECK_THROWS_AS(retrieve_task_tree(z, {"z"}, Kitchen{}, net, f.store, f.cfg),
                    UnreachableItemError);
}

TEST_CASE("branches sharing an input still come out in executable order") {
    // g needs both a and b; b is made from a. A naive reversed visit order
    // would schedule the b-step before a exists.
    ObjectNode r("r", {"s"}), a("a", {"s"}), b("b", {"s"}), g("g", {"s"});
    auto net = tiny_net({FunctionalUnit({r}, {"v"}, {a}),
                         FunctionalUnit({a}, {"v"}, {b}),
                         FunctionalUnit({a, b}, {"v"}, {g})},
                        g);
    const auto& f = test::fixture();
    Kitchen kitchen({r});
    auto tree = retrieve_task_tree(g, {"g"}, kitchen, net, f.store, f.cfg);
    REQUIRE(tree.size() == 3);
    CHECK(tree.executable_order(kitchen));
    CHECK(tree.units[0].unit.outputs[0] == a);
    CHECK(tree.units[1].unit.outputs[0] == b);
    CHECK(tree.units[2].unit.outputs[0] == g);
}

TEST_CASE("executable_order detects out-of-order trees") {
    ObjectNode r("r", {"s"}), a("a", {"s"}), b("b", {"s"});
    FunctionalUnit first({r}, {"v"}, {a});
    FunctionalUnit second({a}, {"v"}, {b});
    Kitchen kitchen({r});
    TaskTree good;
    good.units = {{first, UnitOrigin::Retrieved}, {second, UnitOrigin::Retrieved}};
    CHECK(good.executable_order(kitchen));
    TaskTree bad;
    bad.units = {{second, UnitOrigin::Retrieved}, {first, UnitOrigin::Retrieved}};
    CHECK_FALSE(bad.executable_order(kitchen));
    CHECK_FALSE(good.executable_order(Kitchen{}));
}

TEST_CASE("tree leaves are the unproduced inputs") {
    ObjectNode r("r", {"s"}), a("a", {"s"}), b("b", {"s"});
    TaskTree tree;
    tree.units = {{FunctionalUnit({r}, {"v"}, {a}), UnitOrigin::Retrieved},
                  {FunctionalUnit({a, b}, {"v"}, {ObjectNode("g", {"s"})}),
                   UnitOrigin::Retrieved}};
    auto leaves = tree.leaves();
    REQUIRE(leaves.size() == 2);
    CHECK(leaves[0] == b);
    CHECK(leaves[1] == r);
}

TEST_CASE("the default kitchen stocks every starting node") {
    const auto& f = test::fixture();
    auto kitchen = default_kitchen(f.net);
    auto starts = f.net.starting_nodes();
    CHECK(kitchen.items().size() == starts.size());
    for (const auto& n : starts) CHECK(kitchen.contains(n));
    CHECK(kitchen.contains(ObjectNode("knife", {"clean"})));
    CHECK_FALSE(kitchen.contains(ObjectNode("tomato", {"sliced"})));
}

TEST_CASE("requests track names and deduplicate on demand") {
    PlanRequest req;
    req.ingredients = {{"tomato", "whole"}, {"tomato", "diced"}, {"salt", ""}};
    CHECK(req.ingredient_names() == std::set<std::string>{"salt", "tomato"});
}
