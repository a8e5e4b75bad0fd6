// Command-line planner: plan / validate / stats / bench / merge over a
// corpus of .foon recipe files.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "foon/evalkit.hpp"
#include "foon/foon.hpp"
#include "foon/lexicon.hpp"
#include "foon/modification.hpp"
#include "foon/progress.hpp"
#include "foon/retrieval.hpp"
#include "foon/text.hpp"
#include "foon/vectors.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;    // bad usage, unreadable input
constexpr int kExitNoPlan = 2;   // planning failed or validation found problems

std::string env_or(const char* var, const std::string& fallback) {
    const char* v = std::getenv(var);
    return v && *v ? v : fallback;
}

struct Assets {
    foon::UniversalFoon net;
    foon::VectorStore store;
    foon::MotionLexicon lex;
    foon::StateTaxonomy tax;
    foon::DishAttachmentRules rules;
};

std::vector<std::string> corpus_files(const std::string& dir) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".foon") files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    return files;
}

Assets load_assets(const std::string& corpus_dir, const std::string& vectors_path,
                   const std::string& data_dir) {
    Assets a;
    std::vector<foon::Subgraph> subgraphs;
    for (const auto& f : corpus_files(corpus_dir))
        subgraphs.push_back(foon::load_subgraph(f));
    a.net = foon::merge(subgraphs);
    a.store = foon::VectorStore::load(vectors_path);
    a.lex = foon::MotionLexicon::load(data_dir + "/motions.txt");
    a.lex.count_corpus(a.net);
    a.tax = foon::StateTaxonomy::load(data_dir + "/taxonomy.txt");
    a.rules = foon::DishAttachmentRules::load(data_dir + "/dish_rules.txt");
    return a;
}

foon::RequestedIngredient parse_ingredient(const std::string& arg) {
    auto pos = arg.find(':');
    if (pos == std::string::npos) return {arg, ""};
    return {arg.substr(0, pos), arg.substr(pos + 1)};
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write output file: " + out_path);
    out << text;
}

// Candidate prompts for requested ingredients outside the corpus vocabulary.
void interactive_overrides(const std::vector<foon::RequestedIngredient>& ingredients,
                           const Assets& a, const foon::SimilarityConfig& cfg,
                           std::map<std::string, std::string>& overrides) {
    for (const auto& ing : ingredients) {
        if (a.net.food_vocab().count(ing.name) || overrides.count(ing.name)) continue;
        auto candidates =
            foon::top_k_equivalents(a.store, ing.name, a.net.food_vocab(), cfg.top_k);
        if (candidates.empty()) continue;
        std::cout << "'" << ing.name << "' is not in the corpus; closest matches:\n";
        for (std::size_t i = 0; i < candidates.size(); ++i)
            std::cout << "  " << i + 1 << ") " << candidates[i].first << " ("
                      << candidates[i].second << ")\n";
        std::cout << "choose 1-" << candidates.size() << " or 0 to skip: " << std::flush;
        std::string line;
        if (!std::getline(std::cin, line)) return;
        int choice = 0;
        try {
            choice = std::stoi(line);
        } catch (const std::exception&) {
            choice = 0;
        }
        if (choice >= 1 && choice <= static_cast<int>(candidates.size()))
            overrides[ing.name] = candidates[choice - 1].first;
    }
}

const char* issue_kind_name(foon::PlanIssue::Kind kind) {
    switch (kind) {
        case foon::PlanIssue::Kind::UnconvertibleState: return "unconvertible-state";
        case foon::PlanIssue::Kind::UnplaceableIngredient: return "unplaceable-ingredient";
        case foon::PlanIssue::Kind::NoAttachmentPoint: return "no-attachment-point";
        case foon::PlanIssue::Kind::PruneConflict: return "prune-conflict";
    }
    return "unknown";
}

int run_plan(const Assets& a, const std::vector<std::string>& ingredient_args,
             const std::string& dish, const std::vector<std::string>& override_args,
             const foon::SimilarityConfig& cfg, const std::string& format,
             const std::string& out_path, bool progress, bool interactive) {
    foon::PlanRequest req;
    req.dish_type = dish;
    for (const auto& arg : ingredient_args)
        req.ingredients.push_back(parse_ingredient(arg));
    if (req.ingredients.empty()) {
        std::cerr << "error: at least one --ingredient is required\n";
        return kExitError;
    }

    std::map<std::string, std::string> overrides;
    for (const auto& arg : override_args) {
        auto pos = arg.find('=');
        if (pos == std::string::npos) {
            std::cerr << "error: --override expects name=candidate, got '" << arg << "'\n";
            return kExitError;
        }
        overrides[arg.substr(0, pos)] = arg.substr(pos + 1);
    }
    if (interactive) interactive_overrides(req.ingredients, a, cfg, overrides);

    auto [goal, recipe_id] = foon::find_reference_goal(req, a.net, a.store, cfg);
    std::cerr << "reference recipe: " << recipe_id << "\n";

    auto kitchen = foon::default_kitchen(a.net);
    auto tree = foon::retrieve_task_tree(goal, req.ingredient_names(), kitchen, a.net,
                                         a.store, cfg);
    foon::ModificationContext ctx{a.net, a.store, a.lex, a.tax, a.rules, cfg};
    auto result = foon::modify_task_tree(tree, req, ctx, overrides);

    for (const auto& issue : result.issues)
        std::cerr << (issue.warning ? "warning" : "error") << " ["
                  << issue_kind_name(issue.kind) << "] " << issue.ingredient << ": "
                  << issue.message << "\n";
    if (result.fatal()) return kExitNoPlan;

    auto fmt = foon::parse_format(format);
    std::string rendered = progress
                               ? foon::render(foon::compute_progress_lines(result.tree), fmt)
                               : foon::render(result.tree, fmt);
    write_output(rendered, out_path);
    return kExitOk;
}

int run_validate(const Assets& a) {
    auto diagnostics = foon::validate(a.net, a.lex.verbs(), a.rules.dish_classes());
    for (const auto& d : diagnostics) std::cout << d.detail << "\n";
    if (diagnostics.empty()) {
        std::cout << "ok: " << a.net.unit_count() << " units, no problems found\n";
        return kExitOk;
    }
    return kExitNoPlan;
}

int run_stats(const Assets& a, const std::string& format) {
    nlohmann::ordered_json j;
    j["units"] = a.net.unit_count();
    j["recipes"] = a.net.sources().size();
    j["ingredient_vocab"] = a.net.ingredient_vocab().size();
    j["food_vocab"] = a.net.food_vocab().size();
    j["starting_nodes"] = a.net.starting_nodes().size();
    nlohmann::ordered_json dishes;
    for (const auto& [dish, goals] : a.net.recipe_index()) dishes[dish] = goals.size();
    j["recipes_per_dish"] = dishes;
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "units: " << j["units"] << "\nrecipes: " << j["recipes"]
                  << "\ningredient vocab: " << j["ingredient_vocab"]
                  << "\nfood vocab: " << j["food_vocab"]
                  << "\nstarting nodes: " << j["starting_nodes"] << "\n";
        for (const auto& [dish, count] : dishes.items())
            std::cout << "  " << dish << ": " << count.get<int>() << " recipe(s)\n";
    }
    return kExitOk;
}

int run_bench(const Assets& a, const std::vector<std::string>& ingredient_args,
              const std::string& dish, int trials, const foon::SimilarityConfig& cfg) {
    foon::PlanRequest req;
    req.dish_type = dish;
    for (const auto& arg : ingredient_args)
        req.ingredients.push_back(parse_ingredient(arg));
    if (req.ingredients.empty()) {
        std::cerr << "error: at least one --ingredient is required\n";
        return kExitError;
    }

    auto kitchen = foon::default_kitchen(a.net);
    foon::ModificationContext ctx{a.net, a.store, a.lex, a.tax, a.rules, cfg};
    std::vector<double> ms;
    std::size_t tree_size = 0;
    for (int i = 0; i < trials; ++i) {
        auto start = std::chrono::steady_clock::now();
        auto [goal, recipe_id] = foon::find_reference_goal(req, a.net, a.store, cfg);
        auto tree = foon::retrieve_task_tree(goal, req.ingredient_names(), kitchen,
                                             a.net, a.store, cfg);
        auto result = foon::modify_task_tree(tree, req, ctx);
        auto stop = std::chrono::steady_clock::now();
        tree_size = result.tree.size();
        ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
    }
    std::sort(ms.begin(), ms.end());
    double mean = 0;
    for (double m : ms) mean += m;
    mean /= static_cast<double>(ms.size());
    double p95 = ms[static_cast<std::size_t>(std::ceil(0.95 * ms.size())) - 1];
    std::cout << "trials: " << trials << "\ntree units (n): " << tree_size
              << "\nmean ms: " << mean << "\np95 ms: " << p95 << "\n";
    return kExitOk;
}

int run_merge(const std::vector<std::string>& files, const std::string& out_path) {
    std::vector<foon::Subgraph> subgraphs;
    for (const auto& f : files) subgraphs.push_back(foon::load_subgraph(f));
    auto net = foon::merge(subgraphs);
    write_output(foon::export_json(net), out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"task-tree planner over a cooking knowledge network"};
    app.require_subcommand(1);

    std::string data_dir = FOON_DATA_DIR;
    std::string corpus_dir = env_or("FOON_CORPUS", data_dir + "/corpus");
    std::string vectors_path = env_or("FOON_VECTORS", data_dir + "/vectors.txt");
    app.add_option("--corpus", corpus_dir, "directory of .foon recipe files");
    app.add_option("--vectors", vectors_path, "word-vector file");

    foon::SimilarityConfig cfg;
    std::vector<std::string> ingredient_args, override_args, merge_files;
    std::string dish, format = "text", out_path;
    bool progress = false, interactive = false, dump_config = false;
    int trials = 20;

    auto* plan = app.add_subcommand("plan", "retrieve and adapt a task tree");
    plan->add_option("-i,--ingredient", ingredient_args,
                     "requested ingredient, name or name:state");
    plan->add_option("-d,--dish", dish, "dish class of the request");
    plan->add_option("--override", override_args,
                     "substitution override, name=candidate");
    plan->add_option("--tau", cfg.tau, "similarity threshold")->check(CLI::Range(0.0, 1.0));
    plan->add_option("--top-k", cfg.top_k, "candidates per unseen ingredient")
        ->check(CLI::PositiveNumber);
    plan->add_option("-f,--format", format, "output format: text|dot|json");
    plan->add_option("-o,--out", out_path, "output file (default stdout)");
    plan->add_flag("--progress", progress, "render per-ingredient progress lines");
    plan->add_flag("--interactive", interactive,
                   "prompt for candidates of unseen ingredients");
    plan->add_flag("--dump-config", dump_config, "print effective settings and exit");

    auto* validate_cmd = app.add_subcommand("validate", "check corpus structure");
    auto* stats = app.add_subcommand("stats", "corpus summary");
    stats->add_option("-f,--format", format, "output format: text|json");

    auto* bench = app.add_subcommand("bench", "time the planning pipeline");
    bench->add_option("-i,--ingredient", ingredient_args,
                      "requested ingredient, name or name:state");
    bench->add_option("-d,--dish", dish, "dish class of the request");
    bench->add_option("--trials", trials, "number of timed runs")
        ->check(CLI::PositiveNumber);

    auto* merge_cmd = app.add_subcommand("merge", "merge .foon files into network JSON");
    merge_cmd->add_option("files", merge_files, "recipe files")->required();
    merge_cmd->add_option("-o,--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (dump_config) {
            nlohmann::ordered_json j;
            j["tau"] = cfg.tau;
            j["top_k"] = cfg.top_k;
            j["corpus"] = corpus_dir;
            j["vectors"] = vectors_path;
            std::cout << j.dump(2) << "\n";
            return kExitOk;
        }
        if (merge_cmd->parsed()) return run_merge(merge_files, out_path);

        Assets assets = load_assets(corpus_dir, vectors_path, data_dir);
        if (plan->parsed())
            return run_plan(assets, ingredient_args, dish, override_args, cfg, format,
                            out_path, progress, interactive);
        if (validate_cmd->parsed()) return run_validate(assets);
        if (stats->parsed()) return run_stats(assets, format);
        if (bench->parsed())
            return run_bench(assets, ingredient_args, dish, trials, cfg);
    } catch (const foon::UnknownDishClassError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoPlan;
    } catch (const foon::UnreachableItemError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoPlan;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
