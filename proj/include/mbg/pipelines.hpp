#pragma once

#include <cmath>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mbg/posa.hpp"
#include "mbg/strategies.hpp"

namespace mbg {

// --- vertex relabeling between a board and a sub-board ------------------------

struct VertexMap {
    std::vector<int> to_local; // board id -> local id, -1 if absent
    std::vector<int> to_orig;  // local id -> board id

    static VertexMap identity(int n) {
        VertexMap vm;
        vm.to_local.resize(static_cast<std::size_t>(n));
        vm.to_orig.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) vm.to_local[i] = vm.to_orig[i] = i;
        return vm;
    }

    static VertexMap from_subset(int n, const VertexSet& keep) {
        VertexMap vm;
        vm.to_local.assign(static_cast<std::size_t>(n), -1);
        keep.for_each([&](std::size_t v) {
            vm.to_local[v] = static_cast<int>(vm.to_orig.size());
            vm.to_orig.push_back(static_cast<int>(v));
        });
        return vm;
    }

    bool maps(const Edge& orig) const {
        return to_local[static_cast<std::size_t>(orig.u)] >= 0 &&
               to_local[static_cast<std::size_t>(orig.v)] >= 0;
    }
    Edge local_edge(const Edge& orig) const {
        return make_edge(to_local[static_cast<std::size_t>(orig.u)],
                         to_local[static_cast<std::size_t>(orig.v)]);
    }
    Edge orig_edge(const Edge& local) const {
        return make_edge(to_orig[static_cast<std::size_t>(local.u)],
                         to_orig[static_cast<std::size_t>(local.v)]);
    }
};

// --- sub-boards of a parallel game --------------------------------------------

// One of the boards Maker plays in parallel. respond() returns a goal-directed
// free edge of this sub-board (a filler inside the sub-board once the goal is
// met), or nullopt when the sub-board has no free edge left.
class SubGame {
public:
    virtual ~SubGame() = default;
    virtual std::string name() const = 0;
    virtual bool owns(const Edge& board_edge) const = 0;
    virtual bool done(const GameState& st) const = 0;
    virtual std::optional<Edge> respond(const GameState& st) = 0;
    virtual void observe(const GameState&, const Move&) {}
    virtual Json report() const { return Json::object(); }
};

namespace detail {

inline bool edge_set_contains(const std::vector<Edge>& sorted, const Edge& e) {
    return std::binary_search(sorted.begin(), sorted.end(), e);
}

inline std::optional<Edge> first_free_of(const GameState& st,
                                         const std::vector<Edge>& sorted) {
    for (const Edge& e : sorted)
        if (st.is_free(e)) return e;
    return std::nullopt;
}

} // namespace detail

// Pairing sub-game on edge set E1 (minimum-degree goal on the local graph).
class PairingSubGame final : public SubGame {
public:
    PairingSubGame(std::vector<Edge> owned, const VertexMap& vm,
                   const Graph& local_board, int k, bool degenerate)
        : owned_(std::move(owned)), vm_(vm), local_(local_board), k_(k),
          degenerate_(degenerate),
          maker_deg_(static_cast<std::size_t>(local_board.n()), 0) {
        std::sort(owned_.begin(), owned_.end());
        plan_ = build_pairing_plan(local_);
    }

    std::string name() const override { return "pairing"; }

    bool owns(const Edge& e) const override {
        return detail::edge_set_contains(owned_, e);
    }

    // Decided: goal met, or no unsaturated vertex has a free pool edge left
    // (no further move can serve the goal).
    bool done(const GameState& st) const override {
        if (goal_met()) return true;
        for (int v = 0; v < local_.n(); ++v) {
            if (maker_deg_[static_cast<std::size_t>(v)] >= k_) continue;
            if (free_pool_edge(st, v)) return false;
        }
        return true;
    }

    bool goal_met() const {
        for (int d : maker_deg_)
            if (d < k_) return false;
        return true;
    }

    std::optional<Edge> respond(const GameState& st) override {
        while (!pending_.empty()) {
            Edge b = pending_.front();
            pending_.pop_front();
            int v = plan_.tail(local_, b);
            if (v < 0) continue;
            if (maker_deg_[static_cast<std::size_t>(v)] < k_) {
                auto e = free_pool_edge(st, v);
                if (e) return e;
            }
        }
        for (int v = 0; v < local_.n(); ++v) {
            if (maker_deg_[static_cast<std::size_t>(v)] >= k_) continue;
            auto e = free_pool_edge(st, v);
            if (e) return e;
        }
        return detail::first_free_of(st, owned_);
    }

    void observe(const GameState&, const Move& mv) override {
        if (!owns(mv.e)) return;
        Edge le = vm_.local_edge(mv.e);
        if (mv.by == Role::breaker) {
            pending_.push_back(le);
        } else {
            ++maker_deg_[static_cast<std::size_t>(le.u)];
            ++maker_deg_[static_cast<std::size_t>(le.v)];
        }
    }

    Json report() const override {
        Json j;
        j["subgame"] = name();
        j["k_target"] = k_;
        j["degenerate"] = degenerate_;
        j["goal_met"] = goal_met();
        return j;
    }

private:
    std::optional<Edge> free_pool_edge(const GameState& st, int v) const {
        for (const Edge& le : plan_.pool[static_cast<std::size_t>(v)]) {
            Edge oe = vm_.orig_edge(le);
            if (st.is_free(oe)) return oe;
        }
        return std::nullopt;
    }

    std::vector<Edge> owned_; // board ids, sorted
    VertexMap vm_;
    Graph local_;
    int k_;
    bool degenerate_;
    PairingPlan plan_;
    std::vector<int> maker_deg_;
    std::deque<Edge> pending_;
};

// Dual-game sub-board: Maker spoils the family of bipartite edge sets of G2
// between disjoint r-subsets, so each of them keeps a Maker edge.
class SpoilerSubGame final : public SubGame {
public:
    SpoilerSubGame(std::vector<Edge> owned, Hypergraph hg, bool force,
                   std::size_t skipped_empty_sets)
        : owned_(std::move(owned)),
          core_(hg, EsSpoiler::Options{force}),
          empty_pairs_(skipped_empty_sets) {
        std::sort(owned_.begin(), owned_.end());
    }

    std::string name() const override { return "spoiler"; }

    bool owns(const Edge& e) const override {
        return detail::edge_set_contains(owned_, e);
    }

    bool done(const GameState& st) const override {
        if (core_.alive_sets() == 0) return true;
        return !detail::first_free_of(st, owned_).has_value();
    }

    std::optional<Edge> respond(const GameState& st) override {
        Bitset free(owned_.size());
        for (std::size_t i = 0; i < owned_.size(); ++i)
            if (st.is_free(owned_[i])) free.set(i);
        if (free.none()) return std::nullopt;
        auto pick = core_.pick(free);
        return owned_[static_cast<std::size_t>(*pick)];
    }

    void observe(const GameState&, const Move& mv) override {
        if (!owns(mv.e)) return;
        std::size_t idx = static_cast<std::size_t>(
            std::lower_bound(owned_.begin(), owned_.end(), mv.e) -
            owned_.begin());
        core_.on_move(mv.by == Role::maker ? SetRole::spoiler
                                           : SetRole::claimer,
                      static_cast<int>(idx));
    }

    Json report() const override {
        Json j;
        j["subgame"] = name();
        j["criterion_ok"] = core_.criterion_ok();
        j["initial_weight"] = core_.initial_weight();
        j["alive_sets"] = core_.alive_sets();
        j["claimer_completed_set"] = core_.claimer_completed();
        j["unprotectable_pairs"] = empty_pairs_;
        return j;
    }

    bool opponent_completed_set() const { return core_.claimer_completed(); }
    std::size_t alive_sets() const { return core_.alive_sets(); }
    bool criterion_ok() const {
        return core_.criterion_ok() && empty_pairs_ == 0;
    }

private:
    std::vector<Edge> owned_;
    EsSpoiler core_;
    std::size_t empty_pairs_ = 0;
};

// Pairing on the edges at low-degree vertices: whenever Breaker claims an
// edge at such a vertex, claim another free edge there until the per-vertex
// target is met.
class SmallPairingSubGame final : public SubGame {
public:
    SmallPairingSubGame(std::vector<Edge> owned, VertexSet small,
                        std::vector<int> target)
        : owned_(std::move(owned)), small_(std::move(small)),
          target_(std::move(target)) {
        std::sort(owned_.begin(), owned_.end());
    }

    std::string name() const override { return "small_pairing"; }

    bool owns(const Edge& e) const override {
        return detail::edge_set_contains(owned_, e);
    }

    bool done(const GameState& st) const override {
        if (goal_met(st)) return true;
        bool can_progress = false;
        small_.for_each([&](std::size_t v) {
            if (can_progress) return;
            if (st.maker_graph().degree(static_cast<int>(v)) >= target_[v])
                return;
            if (free_edge_at(st, static_cast<int>(v))) can_progress = true;
        });
        return !can_progress;
    }

    bool goal_met(const GameState& st) const {
        bool ok = true;
        small_.for_each([&](std::size_t v) {
            if (st.maker_graph().degree(static_cast<int>(v)) <
                target_[v])
                ok = false;
        });
        return ok;
    }

    std::optional<Edge> respond(const GameState& st) override {
        while (!pending_.empty()) {
            Edge b = pending_.front();
            pending_.pop_front();
            for (int v : {b.u, b.v}) {
                if (!small_.test(static_cast<std::size_t>(v))) continue;
                if (st.maker_graph().degree(v) >=
                    target_[static_cast<std::size_t>(v)])
                    continue;
                auto e = free_edge_at(st, v);
                if (e) return e;
            }
        }
        std::optional<Edge> serve;
        small_.for_each([&](std::size_t v) {
            if (serve) return;
            if (st.maker_graph().degree(static_cast<int>(v)) >= target_[v])
                return;
            serve = free_edge_at(st, static_cast<int>(v));
        });
        if (serve) return serve;
        return detail::first_free_of(st, owned_);
    }

    void observe(const GameState&, const Move& mv) override {
        if (mv.by == Role::breaker && owns(mv.e)) pending_.push_back(mv.e);
    }

    Json report() const override {
        Json j;
        j["subgame"] = name();
        j["small_vertices"] = small_.to_vector();
        return j;
    }

private:
    std::optional<Edge> free_edge_at(const GameState& st, int v) const {
        std::optional<Edge> best;
        for (const Edge& e : owned_) {
            if (e.u != v && e.v != v) continue;
            if (st.is_free(e) && (!best || e < *best)) best = e;
        }
        return best;
    }

    std::vector<Edge> owned_;
    VertexSet small_;
    std::vector<int> target_;
    std::deque<Edge> pending_;
};

// --- parallel-play composition --------------------------------------------------

// Answer in the sub-board Breaker just played in; when that board is out of
// free edges (or Breaker played an unowned edge), serve the first unfinished
// sub-board in priority order, then fillers.
class CompositeCore {
public:
    std::vector<std::unique_ptr<SubGame>>& subs() { return subs_; }
    const std::vector<std::unique_ptr<SubGame>>& subs() const { return subs_; }

    bool all_done(const GameState& st) const {
        for (const auto& s : subs_)
            if (!s->done(st)) return false;
        return true;
    }

    Edge choose(const GameState& st) {
        auto last = st.last_move();
        if (last && last->by == Role::breaker) {
            for (auto& s : subs_)
                if (s->owns(last->e)) {
                    auto e = s->respond(st);
                    if (e) return *e;
                    break; // sub-board exhausted: slack move below
                }
        }
        for (auto& s : subs_) {
            if (s->done(st)) continue;
            auto e = s->respond(st);
            if (e) return *e;
        }
        for (auto& s : subs_) {
            auto e = s->respond(st);
            if (e) return *e;
        }
        auto e = st.first_free();
        if (!e) throw error("composite strategy: no free edge");
        return *e;
    }

    void observe(const GameState& st, const Move& mv) {
        for (auto& s : subs_) s->observe(st, mv);
    }

    Json report() const {
        Json arr = Json::array();
        for (const auto& s : subs_) arr.push_back(s->report());
        return arr;
    }

private:
    std::vector<std::unique_ptr<SubGame>> subs_;
};

// --- expander game ---------------------------------------------------------------

struct ExpanderGameOptions {
    double eps = 0.25;
    double c = 1;
    int r = 2;
    int split_retries = 50;
    SplitCriteria split_criteria;      // strict acceptance by default
    bool verify_input_q1 = false;
    bool verify_input_q2 = false;
    std::optional<int> pairing_k;      // override of the derived target degree
    std::size_t l_cap = 1'000'000;
    std::size_t enum_cap = kEnumCap;
    Seed seed;
};

// The two sub-games of the expander game on a (local) graph plus everything
// worth reporting about their construction.
struct ExpanderParts {
    std::vector<std::unique_ptr<SubGame>> subs;
    double R = 0;       // (n'-r)/(c+1)
    double c = 0;
    int r = 0;
    int k_target = 1;
    bool degenerate = false;
    SplitResult split;
    Json build_report;
};

inline ExpanderParts build_expander_parts(const Graph& local,
                                          const VertexMap& vm,
                                          const ExpanderGameOptions& opt) {
    const int np = local.n();
    if (opt.r < 1 || opt.r >= np)
        throw invalid_input("expander game: r out of range");
    if (opt.verify_input_q1 &&
        !check_q1(local, opt.eps, opt.c, opt.r, opt.enum_cap))
        throw precondition_failed("expander game: board fails Q1");
    if (opt.verify_input_q2) {
        double K = np / (opt.r * (1.0 - 2.0 * opt.eps));
        if (!check_q2(local, opt.r, K, opt.enum_cap))
            throw precondition_failed("expander game: board fails Q2");
    }

    ExpanderParts parts;
    parts.c = opt.c;
    parts.r = opt.r;
    parts.R = (np - opt.r) / (opt.c + 1.0);

    parts.split = split_edges(local, opt.eps, opt.r, opt.split_retries,
                              opt.seed, opt.split_criteria, false,
                              opt.enum_cap);

    Graph g1 = Graph::from_edges(np, parts.split.e1);
    Graph g2 = Graph::from_edges(np, parts.split.e2);

    int derived = g1.min_degree() / 5;
    parts.k_target = opt.pairing_k.value_or(std::max(1, derived));
    parts.degenerate = derived < 1 || opt.pairing_k.has_value();

    // Dual-game family: for every pair of disjoint r-subsets, the E2 edges
    // between them. Pairs spanning no E2 edge cannot be protected and are
    // only counted.
    if (disjoint_pair_count(np, opt.r) > opt.l_cap)
        throw cap_exceeded("expander game: dual hypergraph exceeds cap");
    std::vector<Edge> e2_sorted = parts.split.e2;
    std::sort(e2_sorted.begin(), e2_sorted.end());
    Hypergraph hg;
    hg.universe = static_cast<int>(e2_sorted.size());
    std::size_t empty_pairs = 0;
    if (2 * opt.r <= np) {
        detail::all_disjoint_pairs(
            g2, opt.r, opt.l_cap,
            [&](const VertexSet& us, const VertexSet& ws, std::size_t e) {
                if (e == 0) {
                    ++empty_pairs;
                    return true;
                }
                std::vector<int> elems;
                us.for_each([&](std::size_t a) {
                    VertexSet row = g2.neighbors(static_cast<int>(a)) & ws;
                    row.for_each([&](std::size_t b) {
                        Edge le = make_edge(static_cast<int>(a),
                                            static_cast<int>(b));
                        auto it = std::lower_bound(e2_sorted.begin(),
                                                   e2_sorted.end(), le);
                        elems.push_back(
                            static_cast<int>(it - e2_sorted.begin()));
                    });
                });
                std::sort(elems.begin(), elems.end());
                hg.sets.push_back(std::move(elems));
                return true;
            });
    }

    std::vector<Edge> e1_orig, e2_orig;
    for (const Edge& e : parts.split.e1) e1_orig.push_back(vm.orig_edge(e));
    for (const Edge& e : parts.split.e2) e2_orig.push_back(vm.orig_edge(e));

    bool pairing_degenerate = g1.min_degree() < 5 * parts.k_target;
    parts.degenerate = parts.degenerate || pairing_degenerate;
    parts.subs.push_back(std::make_unique<PairingSubGame>(
        std::move(e1_orig), vm, g1, parts.k_target, pairing_degenerate));
    parts.subs.push_back(std::make_unique<SpoilerSubGame>(
        std::move(e2_orig), std::move(hg), /*force=*/true, empty_pairs));

    Json rep;
    rep["n_prime"] = np;
    rep["eps"] = opt.eps;
    rep["c"] = opt.c;
    rep["r"] = opt.r;
    rep["R"] = parts.R;
    rep["k_target"] = parts.k_target;
    rep["degenerate"] = parts.degenerate;
    rep["split_retries_used"] = parts.split.retries_used;
    rep["split_q2_checked"] = parts.split.q2_checked;
    rep["dual_sets"] = hg.sets.size();
    rep["dual_unprotectable_pairs"] = empty_pairs;
    parts.build_report = std::move(rep);
    return parts;
}

// Maker's strategy for the expander game played on the whole board.
class ExpanderMaker final : public Strategy {
public:
    ExpanderMaker(const Graph& board, const ExpanderGameOptions& opt)
        : board_(board) {
        VertexMap vm = VertexMap::identity(board.n());
        ExpanderParts parts = build_expander_parts(board, vm, opt);
        for (auto& s : parts.subs) core_.subs().push_back(std::move(s));
        build_report_ = parts.build_report;
        R_ = parts.R;
        c_ = parts.c;
    }

    std::string name() const override { return "maker_expander"; }
    Edge choose(const GameState& st) override { return core_.choose(st); }
    void observe(const GameState& st, const Move& mv) override {
        core_.observe(st, mv);
    }
    Json report() const override {
        Json j;
        j["strategy"] = name();
        j["build"] = build_report_;
        j["subgames"] = core_.report();
        return j;
    }

    double target_R() const { return R_; }
    double target_c() const { return c_; }

private:
    Graph board_;
    CompositeCore core_;
    Json build_report_;
    double R_ = 0, c_ = 0;
};

// --- goal pipelines -------------------------------------------------------------

struct PipelineOptions {
    std::optional<double> small_threshold; // default (ln n)^0.9
    std::optional<double> eps;             // default clamp((ln n)^-0.03, .., 0.49)
    std::optional<int> r;                  // default per goal
    std::optional<int> pairing_k;          // override of the derived target
    bool split_check_q2 = true;
    double split_q2_K = 3.0;
    int split_retries = 50;
    bool verify_inputs = false;
    std::size_t l_cap = 1'000'000;
    std::size_t enum_cap = kEnumCap;
    // Hamiltonicity only:
    std::optional<double> gamma;           // default (ln n)^-0.03
    bool thin = true;
    std::optional<std::size_t> thin_edge_budget; // default 2 n' (ln n')^0.97
    bool thin_check_q1 = false;
    bool thin_check_q2 = false;
    int thin_retries = 50;
    int exact_cap = kExactCap;
    Seed seed;
};

namespace detail {

inline int degree_threshold_int(double t) {
    double f = std::floor(t);
    return f == t ? static_cast<int>(t) : static_cast<int>(f) + 1;
}

inline double default_small_threshold(int n) {
    return std::pow(std::log(static_cast<double>(n)), 0.9);
}

inline double default_eps(int n) {
    double derived = std::pow(std::log(static_cast<double>(n)), -0.03);
    return std::min(derived, 0.49);
}

struct PipelinePrep {
    VertexSet small;
    VertexMap vm;
    Graph g_prime; // local
    std::vector<Edge> f2; // board edges incident to a small vertex
};

inline PipelinePrep prepare_pipeline(const Graph& board, double threshold) {
    PipelinePrep prep;
    prep.small = low_degree_set(board, degree_threshold_int(threshold));
    VertexSet keep = board.all_vertices() - prep.small;
    prep.vm = VertexMap::from_subset(board.n(), keep);
    prep.g_prime = induced_subgraph(board, keep);
    for (const Edge& e : board.edges())
        if (prep.small.test(static_cast<std::size_t>(e.u)) ||
            prep.small.test(static_cast<std::size_t>(e.v)))
            prep.f2.push_back(e);
    return prep;
}

inline ExpanderGameOptions expander_options_from(const PipelineOptions& opt,
                                                 int np, double c,
                                                 int default_r,
                                                 std::uint64_t stream_base) {
    ExpanderGameOptions eo;
    eo.eps = opt.eps.value_or(default_eps(np));
    eo.c = c;
    eo.r = opt.r.value_or(std::max(1, std::min(default_r, np - 1)));
    eo.split_retries = opt.split_retries;
    eo.split_criteria.check_q2 = opt.split_check_q2;
    eo.split_criteria.q2_K = opt.split_q2_K;
    eo.verify_input_q1 = opt.verify_inputs;
    eo.verify_input_q2 = opt.verify_inputs;
    eo.pairing_k = opt.pairing_k;
    eo.l_cap = opt.l_cap;
    eo.enum_cap = opt.enum_cap;
    eo.seed = opt.seed.with_stream(opt.seed.stream + stream_base);
    return eo;
}

} // namespace detail

// Shared shape of the connectivity and perfect-matching pipelines: pairing on
// the edges at low-degree vertices, the expander game on the rest.
class TwoPhaselessPipeline : public Strategy {
public:
    TwoPhaselessPipeline(std::string id, const Graph& board, double c,
                         int default_r,
                         const std::function<int(int)>& f2_target,
                         const PipelineOptions& opt)
        : id_(std::move(id)) {
        double t = opt.small_threshold.value_or(
            detail::default_small_threshold(board.n()));
        prep_ = detail::prepare_pipeline(board, t);
        if (prep_.g_prime.n() < 3)
            throw precondition_failed(id_ + ": board too small after "
                                            "removing low-degree vertices");
        ExpanderGameOptions eo =
            detail::expander_options_from(opt, prep_.g_prime.n(), c,
                                          default_r, 0);
        ExpanderParts parts = build_expander_parts(prep_.g_prime, prep_.vm, eo);
        build_report_ = parts.build_report;
        R_ = parts.R;
        c_ = parts.c;
        for (auto& s : parts.subs) core_.subs().push_back(std::move(s));
        if (prep_.small.any()) {
            std::vector<int> target(static_cast<std::size_t>(board.n()), 0);
            prep_.small.for_each([&](std::size_t v) {
                target[v] = f2_target(static_cast<int>(v));
            });
            core_.subs().push_back(std::make_unique<SmallPairingSubGame>(
                prep_.f2, prep_.small, std::move(target)));
        }
    }

    std::string name() const override { return id_; }
    Edge choose(const GameState& st) override { return core_.choose(st); }
    void observe(const GameState& st, const Move& mv) override {
        core_.observe(st, mv);
    }
    Json report() const override {
        Json j;
        j["strategy"] = id_;
        j["small"] = prep_.small.to_vector();
        j["n_prime"] = prep_.g_prime.n();
        j["R"] = R_;
        j["c"] = c_;
        j["build"] = build_report_;
        j["subgames"] = core_.report();
        return j;
    }

    const VertexSet& small() const { return prep_.small; }
    const VertexMap& vertex_map() const { return prep_.vm; }
    double target_R() const { return R_; }
    double target_c() const { return c_; }

private:
    std::string id_;
    detail::PipelinePrep prep_;
    CompositeCore core_;
    Json build_report_;
    double R_ = 0, c_ = 0;
};

// k-vertex-connectivity pipeline: c = k+2, R = n'/(k+4), per-vertex pairing
// target floor(d(v)/2) at low-degree vertices.
class KConnMaker final : public TwoPhaselessPipeline {
public:
    KConnMaker(const Graph& board, int k, const PipelineOptions& opt)
        : TwoPhaselessPipeline(
              "maker_kconn", board, k + 2.0,
              default_r_for(board, opt, k),
              [&board](int v) { return board.degree(v) / 2; }, opt) {}

private:
    static int default_r_for(const Graph& board, const PipelineOptions& opt,
                             int k) {
        if (opt.r) return *opt.r;
        double t = opt.small_threshold.value_or(
            detail::default_small_threshold(board.n()));
        int np = board.n() -
                 static_cast<int>(low_degree_set(
                                      board, detail::degree_threshold_int(t))
                                      .count());
        return static_cast<int>(std::lround(np / (k + 4.0)));
    }
};

// Perfect-matching pipeline: c = 8, R = n'/10.
class PmMaker final : public TwoPhaselessPipeline {
public:
    PmMaker(const Graph& board, const PipelineOptions& opt)
        : TwoPhaselessPipeline(
              "maker_pm", board, 8.0, default_r_for(board, opt),
              [&board](int v) { return board.degree(v) / 2; }, opt) {}

private:
    static int default_r_for(const Graph& board, const PipelineOptions& opt) {
        if (opt.r) return *opt.r;
        double t = opt.small_threshold.value_or(
            detail::default_small_threshold(board.n()));
        int np = board.n() -
                 static_cast<int>(low_degree_set(
                                      board, detail::degree_threshold_int(t))
                                      .count());
        return static_cast<int>(std::lround(np / 10.0));
    }
};

// Hamiltonicity pipeline. Phase 1 plays the expander game on a thinned core
// plus pairing at low-degree vertices; phase 2 claims edges that provably
// lengthen a maintained path certificate until a spanning cycle closes (or
// no such edge is free: a stall, which is an outcome rather than an error).
class HamMaker final : public Strategy {
public:
    HamMaker(const Graph& board, const PipelineOptions& opt)
        : board_(board), exact_cap_(opt.exact_cap) {
        const int n = board.n();
        double t = opt.small_threshold.value_or(
            detail::default_small_threshold(n));
        prep_ = detail::prepare_pipeline(board, t);
        if (prep_.g_prime.n() < 3)
            throw precondition_failed("maker_ham: board too small after "
                                      "removing low-degree vertices");
        const int np = prep_.g_prime.n();

        Graph core_graph = prep_.g_prime;
        if (opt.thin) {
            double gamma = opt.gamma.value_or(
                std::pow(std::log(static_cast<double>(n)), -0.03));
            ThinTargets targets;
            targets.max_edges = opt.thin_edge_budget.value_or(
                static_cast<std::size_t>(std::ceil(
                    2.0 * np *
                    std::pow(std::log(static_cast<double>(np)), 0.97))));
            int r_for_targets = opt.r.value_or(
                std::max(1, static_cast<int>(std::lround(np / 10.0))));
            double eps_for_targets =
                opt.eps.value_or(detail::default_eps(np));
            if (opt.thin_check_q1)
                targets.q1 = ThinTargets::Q1{eps_for_targets, 3.0,
                                             r_for_targets};
            if (opt.thin_check_q2)
                targets.q2 = ThinTargets::Q2{
                    r_for_targets,
                    np / (r_for_targets * (1.0 - 2.0 * eps_for_targets))};
            core_graph =
                thin_subgraph(prep_.g_prime, gamma, targets, opt.thin_retries,
                              opt.seed.with_stream(opt.seed.stream + 7),
                              opt.enum_cap);
        }
        thinned_edges_ = core_graph.edge_count();

        ExpanderGameOptions eo = detail::expander_options_from(
            opt, np, 3.0,
            static_cast<int>(std::lround(np / 10.0)), 0);
        ExpanderParts parts = build_expander_parts(core_graph, prep_.vm, eo);
        build_report_ = parts.build_report;
        R_ = parts.R;
        for (auto& s : parts.subs) core_.subs().push_back(std::move(s));
        if (prep_.small.any()) {
            std::vector<int> target(static_cast<std::size_t>(n), 0);
            prep_.small.for_each([&](std::size_t v) { target[v] = 2; });
            core_.subs().push_back(std::make_unique<SmallPairingSubGame>(
                prep_.f2, prep_.small, std::move(target)));
        }
    }

    std::string name() const override { return "maker_ham"; }

    Edge choose(const GameState& st) override {
        if (phase_ == 1 && core_.all_done(st)) enter_phase2(st);
        if (phase_ == 1) return core_.choose(st);
        if (!hamiltonian_ && !stalled_) {
            auto mv = booster_move(st);
            if (mv) {
                planned_claim_ = *mv;
                return mv->e;
            }
            stalled_ = true;
        }
        auto e = st.first_free();
        if (!e) throw error("maker_ham: no free edge");
        return *e;
    }

    void observe(const GameState& st, const Move& mv) override {
        core_.observe(st, mv);
        if (phase_ != 2 || mv.by != Role::maker) return;
        if (planned_claim_ && planned_claim_->e == mv.e) {
            ++t2_;
            const Graph& h = st.maker_graph();
            if (planned_claim_->closes_spanning_cycle) {
                set_cycle(planned_claim_->result);
            } else {
                path_ = planned_claim_->result;
                auto cyc = posa::improve(h, path_);
                if (cyc) set_cycle(*cyc);
            }
            if (st.n() <= exact_cap_) {
                // Exact scale: the recorded lengths are true longest-path
                // lengths, which a booster strictly increases.
                if (!hamiltonian_) {
                    auto cyc = hamiltonian_cycle(h, exact_cap_);
                    if (cyc) set_cycle(*cyc);
                }
                cert_lengths_.push_back(hamiltonian_
                                            ? st.n()
                                            : longest_path_length(h,
                                                                  exact_cap_));
            } else {
                cert_lengths_.push_back(
                    hamiltonian_ ? st.n()
                                 : static_cast<int>(path_.size()) - 1);
            }
            planned_claim_.reset();
        }
    }

    Json report() const override {
        Json j;
        j["strategy"] = name();
        j["small"] = prep_.small.to_vector();
        j["n_prime"] = prep_.g_prime.n();
        j["core_edges"] = thinned_edges_;
        j["R"] = R_;
        j["c"] = 3.0;
        j["build"] = build_report_;
        j["subgames"] = core_.report();
        j["phase"] = phase_;
        j["t1"] = t1_;
        j["t2"] = t2_;
        j["stalled"] = stalled_;
        j["hamiltonian"] = hamiltonian_;
        if (hamiltonian_) j["cycle"] = cycle_;
        j["cert_lengths"] = cert_lengths_;
        return j;
    }

    bool hamiltonian() const { return hamiltonian_; }
    bool stalled() const { return stalled_; }
    const std::vector<int>& cycle() const { return cycle_; }
    int phase() const { return phase_; }
    const Graph& phase1_graph() const { return phase1_graph_; }

private:
    void enter_phase2(const GameState& st) {
        phase_ = 2;
        t1_ = 0;
        for (const Move& mv : st.history())
            if (mv.by == Role::maker) ++t1_;
        phase1_graph_ = st.maker_graph();
        path_ = posa::initial_path(st.maker_graph());
        if (!path_.empty()) {
            auto cyc = posa::improve(st.maker_graph(), path_);
            if (cyc) set_cycle(*cyc);
        }
        if (!hamiltonian_ && st.n() <= exact_cap_) {
            auto cyc = hamiltonian_cycle(st.maker_graph(), exact_cap_);
            if (cyc) set_cycle(*cyc);
        }
        // Baseline certificate length; per-move entries must exceed it.
        if (hamiltonian_)
            cert_lengths_.push_back(st.n());
        else if (st.n() <= exact_cap_)
            cert_lengths_.push_back(
                longest_path_length(st.maker_graph(), exact_cap_));
        else
            cert_lengths_.push_back(static_cast<int>(path_.size()) - 1);
    }

    void set_cycle(const std::vector<int>& cyc) {
        hamiltonian_ = true;
        cycle_ = cyc;
    }

    std::optional<posa::Candidate> booster_move(const GameState& st) {
        const Graph& h = st.maker_graph();
        auto is_free = [&](const Edge& e) { return st.is_free(e); };
        if (st.n() <= exact_cap_) {
            // Exact mode: smallest free true booster.
            for (const Edge& e : boosters(h, exact_cap_)) {
                if (!st.is_free(e)) continue;
                Graph h2 = h;
                h2.add_edge(e);
                posa::Candidate c;
                c.e = e;
                auto cyc = hamiltonian_cycle(h2, exact_cap_);
                if (cyc) {
                    c.result = *cyc;
                    c.closes_spanning_cycle = true;
                } else {
                    // Refresh the certificate from the new graph.
                    std::vector<int> p = path_.empty()
                                             ? posa::initial_path(h2)
                                             : path_;
                    posa::improve(h2, p);
                    c.result = std::move(p);
                }
                return c;
            }
            return std::nullopt;
        }
        if (path_.empty()) path_ = posa::initial_path(h);
        auto cands = posa::candidates(h, path_, is_free);
        if (cands.empty()) return std::nullopt;
        const posa::Candidate* best = nullptr;
        for (const auto& c : cands)
            if (!best || c.e < best->e) best = &c;
        return *best;
    }

    Graph board_;
    detail::PipelinePrep prep_;
    CompositeCore core_;
    Json build_report_;
    double R_ = 0;
    std::size_t thinned_edges_ = 0;
    int exact_cap_;
    int phase_ = 1;
    int t1_ = 0, t2_ = 0;
    bool stalled_ = false, hamiltonian_ = false;
    std::vector<int> path_, cycle_;
    std::vector<int> cert_lengths_;
    std::optional<posa::Candidate> planned_claim_;
    Graph phase1_graph_;
};

} // namespace mbg
