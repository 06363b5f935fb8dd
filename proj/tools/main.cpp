// Command-line front end: sampling, property verification, single games,
// and batch experiments.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "mbg/experiments.hpp"

using namespace mbg;

namespace {

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open " + path);
    return read_edge_list(in);
}

void save_graph(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot open " + path);
    write_edge_list(g, out);
}

Json parse_params(const std::string& text) {
    if (text.empty()) return Json::object();
    return Json::parse(text);
}

int cmd_sample(int n, const std::string& model, std::int64_t M, double p,
               std::uint64_t seed, std::uint64_t stream,
               const std::string& out) {
    Seed s{seed, stream};
    if (model == "process") {
        PairOrdering po = sample_process(n, s);
        std::size_t take = M >= 0 ? static_cast<std::size_t>(M)
                                  : po.order.size();
        save_graph(prefix_graph(po, take), out);
        std::ofstream pi(out + ".pi");
        pi << n << ' ' << po.order.size() << '\n';
        for (const Edge& e : po.order) pi << pair_index(n, e) << '\n';
        std::cout << "wrote " << out << " (prefix at " << take << ") and "
                  << out << ".pi\n";
        return 0;
    }
    if (model == "gnm") {
        if (M < 0) throw invalid_input("gnm needs --M");
        save_graph(sample_gnm(n, static_cast<std::size_t>(M), s), out);
    } else if (model == "gnp") {
        if (p < 0) throw invalid_input("gnp needs --p");
        save_graph(sample_gnp(n, p, s), out);
    } else {
        throw invalid_input("unknown model " + model);
    }
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_verify(const std::string& in, const std::string& property, int k,
               double R, double c, int r, double eps, double K) {
    Graph g = load_graph(in);
    Json out;
    out["property"] = property;
    if (property == "mindeg") {
        out["result"] = has_min_degree(g, k);
    } else if (property == "kconn") {
        out["result"] = is_k_vertex_connected(g, k);
    } else if (property == "kedge") {
        out["result"] = is_k_edge_connected(g, k);
    } else if (property == "pm") {
        bool ok = has_perfect_matching(g);
        out["result"] = ok;
        if (!ok && g.n() <= kDeficiencyCap) {
            auto bt = berge_tutte_value(g);
            Json cert;
            cert["saturated"] = bt.value;
            cert["blocking_set"] = bt.s.to_vector();
            cert["odd_components"] = bt.odd_components;
            out["certificate"] = cert;
        }
    } else if (property == "ham") {
        auto cyc = hamiltonian_cycle(g);
        out["result"] = cyc.has_value();
        if (cyc) out["certificate"] = *cyc;
    } else if (property == "expander") {
        auto res = is_rc_expander(g, R, c);
        out["result"] = res.ok;
        if (res.witness) out["certificate"] = res.witness->to_vector();
    } else if (property == "m1m2") {
        out["result"] = check_m1_m2(g, r, c);
    } else if (property == "q1") {
        out["result"] = check_q1(g, eps, c, r);
    } else if (property == "q2") {
        out["result"] = check_q2(g, r, K);
    } else if (property == "boosters") {
        auto bg = boosters(g);
        out["result"] = bg.size();
        Json list = Json::array();
        for (const Edge& e : bg) list.push_back(Json::array({e.u, e.v}));
        out["certificate"] = list;
    } else {
        throw invalid_input("unknown property " + property);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_play(const std::string& board_path, const std::string& maker_id,
             const std::string& breaker_id, const std::string& stop_id,
             int stop_k, std::uint64_t seed, const std::string& maker_params,
             const std::string& breaker_params) {
    Graph board = load_graph(board_path);
    auto breaker = make_strategy(breaker_id, parse_params(breaker_params),
                                 board, Seed{seed, 1});
    auto maker = make_strategy(maker_id, parse_params(maker_params), board,
                               Seed{seed, 2});
    std::function<bool(const Graph&)> stop;
    bool has_stop = true;
    if (stop_id == "none" || stop_id.empty()) has_stop = false;
    else if (stop_id == "mindeg") stop = min_degree_property(stop_k);
    else if (stop_id == "pm")
        stop = [](const Graph& g) { return has_perfect_matching(g); };
    else if (stop_id == "ham")
        stop = [](const Graph& g) { return is_hamiltonian(g); };
    else if (stop_id == "kconn")
        stop = [stop_k](const Graph& g) {
            return g.n() > stop_k && is_k_vertex_connected(g, stop_k);
        };
    else
        throw invalid_input("unknown stop property " + stop_id);
    Transcript tr = play(board, *breaker, *maker, has_stop ? &stop : nullptr);
    std::cout << transcript_to_json(tr).dump(2) << "\n";
    return 0;
}

int cmd_experiment(const std::string& config_path, int jobs,
                   const std::string& out_dir) {
    std::ifstream in(config_path);
    if (!in) throw invalid_input("cannot open " + config_path);
    Json j = Json::parse(in);
    ExperimentConfig cfg = ExperimentConfig::from_json(j);
    if (jobs > 0) cfg.jobs = jobs;
    ExperimentReport rep = run_experiment(cfg);
    write_report(rep, out_dir);
    std::cout << rep.summary.dump(2) << "\n";
    return rep.summary["deterministic_ok"].get<bool>() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maker-Breaker games on random graph processes"};
    app.require_subcommand(1);

    // sample
    auto* sample = app.add_subcommand("sample", "sample a random graph");
    int n = 16;
    std::string model = "process";
    std::int64_t M = -1;
    double p = -1;
    std::uint64_t seed = 0, stream = 0;
    std::string out = "graph.txt";
    sample->add_option("--n", n, "vertex count")->required();
    sample->add_option("--model", model, "process | gnm | gnp");
    sample->add_option("--M", M, "edge count (gnm, or process prefix)");
    sample->add_option("--p", p, "edge probability (gnp)");
    sample->add_option("--seed", seed, "master seed");
    sample->add_option("--stream", stream, "stream index");
    sample->add_option("--out", out, "output edge-list file")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "verify a graph property");
    std::string in_path, property;
    int k = 1, r = 1;
    double R = 1, c = 1, eps = 0.25, K = 3;
    verify->add_option("--in", in_path, "edge-list file")->required();
    verify
        ->add_option("--property", property,
                     "mindeg|kconn|kedge|pm|ham|expander|m1m2|q1|q2|boosters")
        ->required();
    verify->add_option("--k", k, "degree / connectivity parameter");
    verify->add_option("--R", R, "expander set-size bound");
    verify->add_option("--c", c, "expansion factor");
    verify->add_option("--r", r, "pair-condition set size");
    verify->add_option("--eps", eps, "density parameter");
    verify->add_option("--K", K, "pair-condition factor");

    // play
    auto* playc = app.add_subcommand("play", "play one game");
    std::string board_path, maker_id = "maker_random",
                            breaker_id = "breaker_random", stop_id = "none";
    int stop_k = 1;
    std::uint64_t play_seed = 0;
    std::string maker_params, breaker_params;
    playc->add_option("--board", board_path, "edge-list file")->required();
    playc->add_option("--maker", maker_id, "maker strategy id");
    playc->add_option("--breaker", breaker_id, "breaker strategy id");
    playc->add_option("--stop", stop_id, "none|mindeg|pm|ham|kconn");
    playc->add_option("--stop-k", stop_k, "parameter for the stop property");
    playc->add_option("--seed", play_seed, "master seed");
    playc->add_option("--maker-params", maker_params, "JSON parameters");
    playc->add_option("--breaker-params", breaker_params, "JSON parameters");

    // experiment
    auto* exp = app.add_subcommand("experiment", "run a batch experiment");
    std::string config_path, out_dir = ".";
    int jobs = 0;
    exp->add_option("--config", config_path, "JSON config file")->required();
    exp->add_option("--jobs", jobs, "worker threads");
    exp->add_option("--out-dir", out_dir, "output directory");

    // registry
    auto* reg = app.add_subcommand("registry", "print the strategy registry");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample->parsed())
            return cmd_sample(n, model, M, p, seed, stream, out);
        if (verify->parsed())
            return cmd_verify(in_path, property, k, R, c, r, eps, K);
        if (playc->parsed())
            return cmd_play(board_path, maker_id, breaker_id, stop_id, stop_k,
                            play_seed, maker_params, breaker_params);
        if (exp->parsed()) return cmd_experiment(config_path, jobs, out_dir);
        if (reg->parsed()) {
            std::cout << strategy_registry().dump(2) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
