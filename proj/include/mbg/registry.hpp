#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mbg/pipelines.hpp"
#include "mbg/strategies.hpp"

namespace mbg {

inline std::vector<std::string> roster() {
    return {
        "breaker_lexicographic", "breaker_random", "breaker_min_degree_attack",
        "maker_lexicographic",   "maker_random",   "maker_pairing",
        "maker_expander",        "maker_kconn",    "maker_pm",
        "maker_ham",
    };
}

namespace detail {

inline PipelineOptions pipeline_options_from_json(const Json& p, Seed seed) {
    PipelineOptions opt;
    opt.seed = seed;
    if (p.contains("small_threshold"))
        opt.small_threshold = p["small_threshold"].get<double>();
    if (p.contains("eps")) opt.eps = p["eps"].get<double>();
    if (p.contains("r")) opt.r = p["r"].get<int>();
    if (p.contains("pairing_k")) opt.pairing_k = p["pairing_k"].get<int>();
    if (p.contains("split_check_q2"))
        opt.split_check_q2 = p["split_check_q2"].get<bool>();
    if (p.contains("split_q2_K")) opt.split_q2_K = p["split_q2_K"].get<double>();
    if (p.contains("split_retries"))
        opt.split_retries = p["split_retries"].get<int>();
    if (p.contains("verify_inputs"))
        opt.verify_inputs = p["verify_inputs"].get<bool>();
    if (p.contains("l_cap")) opt.l_cap = p["l_cap"].get<std::size_t>();
    if (p.contains("gamma")) opt.gamma = p["gamma"].get<double>();
    if (p.contains("thin")) opt.thin = p["thin"].get<bool>();
    if (p.contains("thin_edge_budget"))
        opt.thin_edge_budget = p["thin_edge_budget"].get<std::size_t>();
    if (p.contains("thin_check_q1"))
        opt.thin_check_q1 = p["thin_check_q1"].get<bool>();
    if (p.contains("thin_check_q2"))
        opt.thin_check_q2 = p["thin_check_q2"].get<bool>();
    if (p.contains("thin_retries"))
        opt.thin_retries = p["thin_retries"].get<int>();
    if (p.contains("exact_cap")) opt.exact_cap = p["exact_cap"].get<int>();
    return opt;
}

} // namespace detail

// Build a strategy by id. `params` follows the schema in strategy_registry();
// `board` is the graph the game will be played on.
inline std::unique_ptr<Strategy> make_strategy(const std::string& id,
                                               const Json& params,
                                               const Graph& board, Seed seed) {
    const Json p = params.is_null() ? Json::object() : params;
    if (id == "breaker_lexicographic" || id == "maker_lexicographic")
        return std::make_unique<LexicographicStrategy>(id);
    if (id == "breaker_random" || id == "maker_random")
        return std::make_unique<RandomStrategy>(id, seed);
    if (id == "breaker_min_degree_attack")
        return std::make_unique<BreakerMinDegreeAttack>();
    if (id == "maker_pairing") {
        int k = p.value("k", 1);
        bool allow_degenerate = p.value("allow_degenerate", false);
        return std::make_unique<PairingMaker>(board, k, allow_degenerate);
    }
    if (id == "maker_expander") {
        ExpanderGameOptions opt;
        opt.eps = p.value("eps", 0.25);
        opt.c = p.value("c", 1.0);
        opt.r = p.value("r", 2);
        opt.split_retries = p.value("split_retries", 50);
        opt.split_criteria.check_q2 = p.value("split_check_q2", true);
        opt.split_criteria.q2_K = p.value("split_q2_K", 3.0);
        opt.verify_input_q1 = p.value("verify_inputs", false);
        opt.verify_input_q2 = p.value("verify_inputs", false);
        if (p.contains("l_cap")) opt.l_cap = p["l_cap"].get<std::size_t>();
        opt.seed = seed;
        return std::make_unique<ExpanderMaker>(board, opt);
    }
    if (id == "maker_kconn") {
        int k = p.value("k", 1);
        return std::make_unique<KConnMaker>(
            board, k, detail::pipeline_options_from_json(p, seed));
    }
    if (id == "maker_pm")
        return std::make_unique<PmMaker>(
            board, detail::pipeline_options_from_json(p, seed));
    if (id == "maker_ham")
        return std::make_unique<HamMaker>(
            board, detail::pipeline_options_from_json(p, seed));
    throw invalid_input("unknown strategy id: " + id);
}

// Machine-readable registry of the strategy ids and their parameters.
inline Json strategy_registry() {
    Json reg;
    reg["schema"] = "strategy-registry.v1";
    Json list = Json::array();
    auto add = [&](const char* id, const char* role, const char* about,
                   Json params) {
        Json s;
        s["id"] = id;
        s["role"] = role;
        s["about"] = about;
        s["params"] = std::move(params);
        list.push_back(std::move(s));
    };
    Json none = Json::object();
    add("breaker_lexicographic", "breaker", "smallest free edge", none);
    add("breaker_random", "breaker", "uniform free edge (seeded)", none);
    add("breaker_min_degree_attack", "breaker",
        "exhausts the free edges at a minimum-degree vertex, then retargets",
        none);
    add("maker_lexicographic", "maker", "smallest free edge", none);
    add("maker_random", "maker", "uniform free edge (seeded)", none);
    add("maker_pairing", "maker",
        "minimum-degree-k game via disjoint per-vertex pools from an Eulerian "
        "orientation",
        Json{{"k", "int >= 1 (default 1)"},
             {"allow_degenerate", "bool: build even if min degree < 5k"}});
    Json expander_params{
        {"eps", "double in (1/(2 delta), 1/2)"},
        {"c", "double > 0"},
        {"r", "int >= 1"},
        {"split_retries", "int (default 50)"},
        {"split_check_q2", "bool: verify Q2 on the dual half (default true)"},
        {"split_q2_K", "double (default 3)"},
        {"verify_inputs", "bool: verify Q1/Q2 on the board first"},
        {"l_cap", "max dual-family size (default 1e6)"}};
    add("maker_expander", "maker",
        "edge split + pairing + dual potential game toward an "
        "((n'-r)/(c+1), c)-expander",
        expander_params);
    Json pipeline_params = expander_params;
    pipeline_params["k"] = "int (maker_kconn only)";
    pipeline_params["small_threshold"] =
        "degree threshold for the low-degree pairing board";
    add("maker_kconn", "maker",
        "expander game with c=k+2 plus pairing at low-degree vertices",
        pipeline_params);
    add("maker_pm", "maker",
        "expander game with c=8 plus pairing at low-degree vertices",
        pipeline_params);
    Json ham_params = pipeline_params;
    ham_params["gamma"] = "edge-keeping probability of the thinning step";
    ham_params["thin"] = "bool: thin the core before the expander game";
    ham_params["thin_edge_budget"] = "max edges of the thinned core";
    ham_params["exact_cap"] =
        "largest n for exact longest-path searches (default 20)";
    add("maker_ham", "maker",
        "two phases: expander game on a thinned core, then claims that "
        "lengthen a maintained path certificate until a spanning cycle",
        ham_params);
    reg["strategies"] = std::move(list);
    return reg;
}

} // namespace mbg
