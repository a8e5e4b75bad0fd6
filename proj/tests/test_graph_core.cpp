#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "foon/foon.hpp"
#include "foon/node.hpp"
#include "support.hpp"

using namespace foon;

TEST_CASE("object node normalizes states and ingredients to sorted sets") {
    ObjectNode n("tomato", {"whole", "ripe", "whole"}, {"b", "a", "b"});
    CHECK(n.states == std::vector<std::string>{"ripe", "whole"});
    CHECK(n.ingredients == std::vector<std::string>{"a", "b"});
    CHECK(n.has_state("ripe"));
    CHECK_FALSE(n.has_state("diced"));
    CHECK(n.contains_ingredient("a"));
    CHECK_FALSE(n.contains_ingredient("c"));
}

TEST_CASE("node keys separate name, states and ingredients unambiguously") {
    ObjectNode a("x", {"s1", "s2"});
    ObjectNode b("x", {"s1"}, {"s2"});
    ObjectNode c("x s1", {"s2"});
    CHECK(a.key() != b.key());
    CHECK(a.key() != c.key());
    CHECK(b.key() != c.key());
    CHECK(a.key() == ObjectNode("x", {"s2", "s1"}).key());
}

TEST_CASE("container and utensil classification") {
    CHECK(ObjectNode("bowl", {"empty"}).is_container());
    CHECK(ObjectNode("salad", {"mixed"}, {"tomato"}).is_container());
    CHECK_FALSE(ObjectNode("tomato", {"whole"}).is_container());
    CHECK(utensil_lexicon().count("knife") == 1);
    CHECK(utensil_lexicon().count("bowl") == 1);  // containers are utensils too
    CHECK(utensil_lexicon().count("tomato") == 0);
}

TEST_CASE("functional unit equality ignores source recipe and node order") {
    ObjectNode in1("a", {"s"}), in2("b", {"s"}), out("c", {"s"});
    FunctionalUnit u1({in1, in2}, {"mix"}, {out}, "r1");
    FunctionalUnit u2({in2, in1}, {"mix"}, {out}, "r2");
    CHECK(u1 == u2);
    CHECK(u1.canonical_key() == u2.canonical_key());
    FunctionalUnit u3({in1}, {"mix"}, {out}, "r1");
    CHECK(u1 != u3);
    CHECK(u1.canonical_key() != u3.canonical_key());
}

TEST_CASE("subgraph well-formedness") {
    Subgraph g;
    CHECK_FALSE(g.well_formed());
    g.recipe_id = "r";
    g.dish_type = "salad";
    g.units = {FunctionalUnit({ObjectNode("a", {"s"})}, {"mix"}, {ObjectNode("b", {"s"})})};
    g.goal = ObjectNode("b", {"s"});
    CHECK(g.well_formed());
    g.goal = ObjectNode("zz", {"s"});
    CHECK_FALSE(g.well_formed());
}

TEST_CASE("merging no subgraphs yields the empty network") {
    auto net = merge({});
    CHECK(net.empty());
    CHECK(net.unit_count() == 0);
    CHECK(net.recipe_index().empty());
    CHECK(net.starting_nodes().empty());
}

TEST_CASE("merge deduplicates shared units across recipes") {
    const auto subgraphs = test::load_corpus_subgraphs();
    // Independent count: distinct canonical unit keys over the raw files.
    std::set<std::string> distinct;
    std::size_t total = 0;
    for (const auto& g : subgraphs) {
        total += g.units.size();
        for (const auto& u : g.units) distinct.insert(u.canonical_key());
    }
    const auto& net = test::fixture().net;
    CHECK(net.unit_count() == distinct.size());
    CHECK(net.unit_count() < total);  // the corpus really shares prep steps
    CHECK(net.unit_count() == 51);
    CHECK(net.sources().size() == 13);
}

TEST_CASE("merging the same subgraph list twice is deterministic") {
    const auto subgraphs = test::load_corpus_subgraphs();
    auto a = merge(subgraphs);
    auto b = merge(subgraphs);
    REQUIRE(a.unit_count() == b.unit_count());
    for (std::size_t i = 0; i < a.unit_count(); ++i)
        CHECK(a.units()[i] == b.units()[i]);
}

TEST_CASE("two recipes sharing prep units merge to the sum minus shared") {
    const auto subgraphs = test::load_corpus_subgraphs();
    const Subgraph* greek = nullptr;
    const Subgraph* garden = nullptr;
    for (const auto& g : subgraphs) {
        if (g.recipe_id == "greek_salad") greek = &g;
        if (g.recipe_id == "garden_salad") garden = &g;
    }
    REQUIRE(greek);
    REQUIRE(garden);
    auto net = merge({*greek, *garden});
    // greek has 5 units, garden 4; they share the tomato and cucumber slicing.
    CHECK(greek->units.size() == 5);
    CHECK(garden->units.size() == 4);
    CHECK(net.unit_count() == 7);
}

TEST_CASE("duplicate recipe ids are rejected") {
    Subgraph g;
    g.recipe_id = "dup";
    g.dish_type = "salad";
    g.units = {FunctionalUnit({ObjectNode("a", {"s"})}, {"mix"}, {ObjectNode("b", {"s"})})};
    g.goal = ObjectNode("b", {"s"});
    CHECK_THROWS_AS(merge({g, g}), MergeError);
}

TEST_CASE("units_producing agrees with a linear scan for every corpus node") {
    const auto& net = test::fixture().net;
    for (const auto& u : net.units()) {
        for (const auto& out : u.outputs) {
            auto indexed = net.units_producing(out);
            std::vector<const FunctionalUnit*> scanned;
            for (const auto& cand : net.units())
                if (cand.find_output(out)) scanned.push_back(&cand);
            REQUIRE(indexed.size() == scanned.size());
            for (std::size_t i = 0; i < indexed.size(); ++i)
                CHECK(indexed[i] == scanned[i]);
        }
    }
}

TEST_CASE("a node produced by two recipes lists both producers") {
    const auto& net = test::fixture().net;
    ObjectNode batter("cake batter", {"mixed"}, {"butter", "egg", "flour", "sugar"});
    auto producers = net.units_producing(batter);
    REQUIRE(producers.size() == 2);
    std::set<std::string> recipes;
    for (const auto* u : producers) recipes.insert(u->source_recipe);
    CHECK(recipes == std::set<std::string>{"chocolate_cake", "vanilla_cake"});
}

TEST_CASE("units_producing an unknown node is empty") {
    const auto& net = test::fixture().net;
    CHECK(net.units_producing(ObjectNode("unobtainium", {"whole"})).empty());
}

TEST_CASE("starting nodes are exactly the never-produced inputs") {
    const auto& net = test::fixture().net;
    std::set<std::string> produced;
    for (const auto& u : net.units())
        for (const auto& o : u.outputs) produced.insert(o.key());
    auto starts = net.starting_nodes();
    std::set<std::string> start_keys;
    for (const auto& n : starts) {
        CHECK(produced.count(n.key()) == 0);
        start_keys.insert(n.key());
    }
    CHECK(start_keys.size() == starts.size());  // no duplicates
    CHECK(start_keys.count(ObjectNode("tomato", {"whole"}).key()) == 1);
    CHECK(start_keys.count(ObjectNode("tomato", {"sliced"}).key()) == 0);
    CHECK(start_keys.count(ObjectNode("knife", {"clean"}).key()) == 1);
}

TEST_CASE("recipe index groups goals by dish type in recipe order") {
    const auto& idx = test::fixture().net.recipe_index();
    REQUIRE(idx.count("soup") == 1);
    const auto& soups = idx.at("soup");
    REQUIRE(soups.size() == 4);
    for (std::size_t i = 1; i < soups.size(); ++i)
        CHECK(soups[i - 1].recipe_id < soups[i].recipe_id);
    CHECK(soups.front().recipe_id == "chicken_soup");
    CHECK(soups.front().goal.name == "chicken soup");
}

TEST_CASE("food vocabulary contains goal ingredients and no utensils") {
    const auto& vocab = test::fixture().net.food_vocab();
    CHECK(vocab.count("tomato") == 1);
    CHECK(vocab.count("feta cheese") == 1);
    CHECK(vocab.count("knife") == 0);
    CHECK(vocab.count("bowl") == 0);
    CHECK(vocab.count("greek salad") == 0);  // dish names are not ingredients
    CHECK(vocab.size() == 27);
    const auto& all = test::fixture().net.ingredient_vocab();
    for (const auto& v : vocab) CHECK(all.count(v) == 1);
}

TEST_CASE("validate passes the bundled corpus") {
    const auto& f = test::fixture();
    CHECK(validate(f.net, f.lex.verbs(), f.rules.dish_classes()).empty());
}

TEST_CASE("validate reports unknown motions and dish types") {
    Subgraph g;
    g.recipe_id = "weird";
    g.dish_type = "sorcery";
    g.units = {FunctionalUnit({ObjectNode("a", {"s"})}, {"transmute"},
                              {ObjectNode("b", {"s"})})};
    g.goal = ObjectNode("b", {"s"});
    auto net = merge({g});
    auto diags = validate(net, test::fixture().lex.verbs(),
                          test::fixture().rules.dish_classes());
    bool saw_motion = false, saw_dish = false;
    for (const auto& d : diags) {
        if (d.kind == Diagnostic::Kind::UnknownMotion) saw_motion = true;
        if (d.kind == Diagnostic::Kind::UnknownDishType) saw_dish = true;
    }
    CHECK(saw_motion);
    CHECK(saw_dish);
}

TEST_CASE("validate reports empty unit sides") {
    Subgraph g;
    g.recipe_id = "broken";
    g.dish_type = "salad";
    FunctionalUnit no_inputs;
    no_inputs.motion = {"mix"};
    no_inputs.outputs = {ObjectNode("b", {"s"})};
    FunctionalUnit no_outputs;
    no_outputs.motion = {"mix"};
    no_outputs.inputs = {ObjectNode("b", {"s"})};
    g.units = {no_inputs, no_outputs};
    g.goal = ObjectNode("b", {"s"});
    auto net = merge({g});
    auto diags = validate(net, {"mix"}, {"salad"});
    bool saw_in = false, saw_out = false;
    for (const auto& d : diags) {
        if (d.kind == Diagnostic::Kind::EmptyInputs) saw_in = true;
        if (d.kind == Diagnostic::Kind::EmptyOutputs) saw_out = true;
    }
    CHECK(saw_in);
    CHECK(saw_out);
}

TEST_CASE("validate detects a corrupted producers index") {
    const auto& f = test::fixture();
    auto net = merge(test::load_corpus_subgraphs());
    net.corrupt_producers_for_test();
    auto diags = validate(net, f.lex.verbs(), f.rules.dish_classes());
    bool saw = false;
    for (const auto& d : diags)
        if (d.kind == Diagnostic::Kind::IndexInconsistency) saw = true;
    CHECK(saw);
}
