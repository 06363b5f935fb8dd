#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "mbg/game.hpp"
#include "mbg/process.hpp"
#include "mbg/rng.hpp"
#include "mbg/verifiers.hpp"

namespace mbg {

// --- baselines ----------------------------------------------------------------

class LexicographicStrategy final : public Strategy {
public:
    explicit LexicographicStrategy(std::string name) : name_(std::move(name)) {}
    std::string name() const override { return name_; }
    Edge choose(const GameState& st) override {
        auto e = st.first_free();
        if (!e) throw error(name_ + ": no free edge to choose");
        return *e;
    }

private:
    std::string name_;
};

class RandomStrategy final : public Strategy {
public:
    RandomStrategy(std::string name, Seed seed)
        : name_(std::move(name)), rng_(seed.rng()) {}
    std::string name() const override { return name_; }
    Edge choose(const GameState& st) override {
        std::vector<Edge> free = st.free_edges();
        if (free.empty()) throw error(name_ + ": no free edge to choose");
        return free[rng_.below(free.size())];
    }

private:
    std::string name_;
    Rng rng_;
};

// Breaker's degree attack: pick a vertex of minimum degree in the free-edge
// graph and keep claiming free edges there until none remain, then retarget.
// On a board of minimum degree d this leaves Maker at most floor(d/2) edges
// at the first target.
class BreakerMinDegreeAttack final : public Strategy {
public:
    std::string name() const override { return "breaker_min_degree_attack"; }

    Edge choose(const GameState& st) override {
        if (target_ >= 0) {
            auto e = smallest_free_at(st, target_);
            if (e) return *e;
            target_ = -1;
        }
        // New target: minimum free-degree among vertices with a free edge.
        int best = -1, best_deg = 0;
        for (int v = 0; v < st.n(); ++v) {
            int fd = free_degree(st, v);
            if (fd > 0 && (best == -1 || fd < best_deg)) {
                best = v;
                best_deg = fd;
            }
        }
        if (best == -1) {
            auto e = st.first_free();
            if (!e) throw error("breaker_min_degree_attack: no free edge");
            return *e;
        }
        target_ = best;
        return *smallest_free_at(st, best);
    }

private:
    static int free_degree(const GameState& st, int v) {
        int d = 0;
        const Bitset& nb = st.board().neighbors(v);
        for (std::size_t u = nb.next(0); u < nb.size(); u = nb.next(u + 1))
            if (st.claim(make_edge(v, static_cast<int>(u))) ==
                GameState::Claim::free)
                ++d;
        return d;
    }

    static std::optional<Edge> smallest_free_at(const GameState& st, int v) {
        std::optional<Edge> best;
        const Bitset& nb = st.board().neighbors(v);
        for (std::size_t u = nb.next(0); u < nb.size(); u = nb.next(u + 1)) {
            Edge e = make_edge(v, static_cast<int>(u));
            if (st.claim(e) == GameState::Claim::free && (!best || e < *best))
                best = e;
        }
        return best;
    }

    int target_ = -1;
};

// --- pairing strategy (minimum-degree game) -----------------------------------

// Disjoint per-vertex edge pools built from an Eulerian orientation. If the
// host graph has odd-degree vertices, an auxiliary vertex joined to them
// evens everything out; pool edges never touch it.
struct PairingPlan {
    int n = 0;
    bool has_aux = false;
    std::vector<std::vector<Edge>> pool; // pool[v], sorted lexicographically
    std::vector<int> tail_of;            // per host edge index: pool owner

    int tail(const Graph& host, const Edge& e) const {
        return tail_of[host_index(host, e)];
    }

    static std::size_t host_index(const Graph& host, const Edge& e) {
        return pair_index(host.n(), e);
    }
};

inline PairingPlan build_pairing_plan(const Graph& h) {
    const int n = h.n();
    std::vector<int> odd;
    for (int v = 0; v < n; ++v)
        if (h.degree(v) % 2 == 1) odd.push_back(v);

    // Adjacency of H*: host edges first, then auxiliary ones.
    struct Arc {
        int to;
        int edge_id;
    };
    const int aux = n;
    const bool has_aux = !odd.empty();
    int nodes = n + (has_aux ? 1 : 0);
    std::vector<std::vector<Arc>> adj(nodes);
    std::vector<Edge> host_edges = h.edges();
    int edge_id = 0;
    for (const Edge& e : host_edges) {
        adj[e.u].push_back({e.v, edge_id});
        adj[e.v].push_back({e.u, edge_id});
        ++edge_id;
    }
    for (int v : odd) {
        adj[v].push_back({aux, edge_id});
        adj[aux].push_back({v, edge_id});
        ++edge_id;
    }

    PairingPlan plan;
    plan.n = n;
    plan.has_aux = has_aux;
    plan.pool.resize(static_cast<std::size_t>(n));
    plan.tail_of.assign(pair_count(n), -1);

    // Hierholzer per component; all degrees in H* are even.
    std::vector<bool> used(static_cast<std::size_t>(edge_id), false);
    std::vector<std::size_t> cursor(static_cast<std::size_t>(nodes), 0);
    for (int start = 0; start < nodes; ++start) {
        if (cursor[start] >= adj[start].size()) continue;
        std::vector<int> stack{start};
        std::vector<int> walk;
        while (!stack.empty()) {
            int v = stack.back();
            while (cursor[v] < adj[v].size() && used[adj[v][cursor[v]].edge_id])
                ++cursor[v];
            if (cursor[v] == adj[v].size()) {
                walk.push_back(v);
                stack.pop_back();
            } else {
                Arc a = adj[v][cursor[v]];
                used[a.edge_id] = true;
                stack.push_back(a.to);
            }
        }
        // walk is the circuit reversed; direction within a closed walk is
        // immaterial, orient along consecutive positions.
        for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
            int from = walk[i], to = walk[i + 1];
            if (from == aux || to == aux) continue;
            Edge e = make_edge(from, to);
            plan.pool[static_cast<std::size_t>(from)].push_back(e);
            plan.tail_of[PairingPlan::host_index(h, e)] = from;
        }
    }
    for (auto& p : plan.pool) std::sort(p.begin(), p.end());
    return plan;
}

// Maker's strategy for the minimum-degree-k game on a board of minimum
// degree >= 5k: answer a claim from pool E(v) inside E(v) until v has k Maker
// edges, otherwise serve the smallest vertex still below target.
class PairingMaker final : public Strategy {
public:
    PairingMaker(const Graph& board, int k, bool allow_degenerate = false)
        : board_(board), k_(k), degenerate_(board.min_degree() < 5 * k) {
        if (k < 1) throw invalid_input("maker_pairing: need k >= 1");
        if (degenerate_ && !allow_degenerate)
            throw precondition_failed(
                "maker_pairing: minimum degree below 5k");
        plan_ = build_pairing_plan(board);
    }

    std::string name() const override { return "maker_pairing"; }

    Edge choose(const GameState& st) override {
        while (!pending_.empty()) {
            Edge b = pending_.front();
            pending_.pop_front();
            int v = plan_.tail(board_, b);
            if (v < 0) continue;
            if (maker_pool_degree(st, v) < k_) {
                auto e = free_pool_edge(st, v);
                if (e) return *e;
            }
        }
        // Serve: smallest vertex still below target with a free pool edge.
        for (int v = 0; v < board_.n(); ++v) {
            if (maker_pool_degree(st, v) >= k_) continue;
            if (st.maker_graph().degree(v) >= k_) continue;
            auto e = free_pool_edge(st, v);
            if (e) return *e;
        }
        auto e = st.first_free();
        if (!e) throw error("maker_pairing: no free edge");
        return *e;
    }

    void observe(const GameState& st, const Move& mv) override {
        if (mv.by == Role::breaker && st.on_board(mv.e) &&
            board_.has_edge(mv.e.u, mv.e.v))
            pending_.push_back(mv.e);
    }

    Json report() const override {
        Json j;
        j["strategy"] = name();
        j["k"] = k_;
        j["degenerate"] = degenerate_;
        return j;
    }

    bool degenerate() const { return degenerate_; }
    const PairingPlan& plan() const { return plan_; }

private:
    int maker_pool_degree(const GameState& st, int v) const {
        // Degree of v in Maker's graph; pools cover all board edges at v.
        return st.maker_graph().degree(v);
    }

    std::optional<Edge> free_pool_edge(const GameState& st, int v) const {
        for (const Edge& e : plan_.pool[static_cast<std::size_t>(v)])
            if (st.is_free(e)) return e;
        return std::nullopt;
    }

    Graph board_;
    int k_;
    bool degenerate_;
    PairingPlan plan_;
    std::deque<Edge> pending_;
};

// --- potential-function spoiler -----------------------------------------------

enum class SetRole { claimer, spoiler };

// Derandomized potential play for hypergraph games: the spoiler keeps the
// total weight sum(2^-(unclaimed-by-claimer elements)) over sets it has not
// yet hit from ever growing, by always deleting the heaviest element. When
// the initial sum is below 1/2 the claimer never completes a set.
class EsSpoiler {
public:
    struct Options {
        bool force = false; // construct even when the weight criterion fails
    };

    explicit EsSpoiler(const Hypergraph& hg) : EsSpoiler(hg, Options{}) {}

    EsSpoiler(const Hypergraph& hg, Options opt)
        : universe_(hg.universe), contrib_(hg.universe, 0) {
        long double sum = 0;
        for (const auto& s : hg.sets) {
            if (s.empty()) {
                ++empty_sets_;
                sum += 1.0L;
                continue;
            }
            SetState ss;
            ss.elems = s;
            ss.exponent = static_cast<int>(s.size());
            sets_.push_back(std::move(ss));
            sum += std::ldexp(1.0L, -static_cast<int>(s.size()));
        }
        initial_weight_ = static_cast<double>(sum);
        criterion_ok_ = empty_sets_ == 0 && sum < 0.5L;
        if (!criterion_ok_ && !opt.force)
            throw precondition_failed(
                "erdos_selfridge_spoiler: weight criterion "
                "sum 2^-|A| < 1/2 fails");
        incidence_.resize(static_cast<std::size_t>(universe_));
        for (std::size_t i = 0; i < sets_.size(); ++i)
            for (int e : sets_[i].elems)
                incidence_[static_cast<std::size_t>(e)].push_back(i);
        for (std::size_t i = 0; i < sets_.size(); ++i)
            add_weight(i, +1);
        alive_ = sets_.size();
    }

    bool criterion_ok() const { return criterion_ok_; }
    double initial_weight() const { return initial_weight_; }
    std::size_t empty_sets() const { return empty_sets_; }
    std::size_t alive_sets() const { return alive_; }
    bool claimer_completed() const { return claimer_completed_; }

    void on_move(SetRole who, int elem) {
        for (std::size_t si : incidence_[static_cast<std::size_t>(elem)]) {
            SetState& s = sets_[si];
            if (s.dead) continue;
            if (who == SetRole::spoiler) {
                add_weight(si, -1);
                s.dead = true;
                --alive_;
            } else {
                // Weight doubles: add one more copy of the old weight.
                add_weight(si, +1);
                s.exponent -= 1;
                if (s.exponent == 0) {
                    // Fully claimed: decided (and lost), nothing to protect.
                    claimer_completed_ = true;
                    add_weight(si, -1);
                    s.dead = true;
                    --alive_;
                }
            }
        }
    }

    // Free element with the largest summed weight of alive sets through it;
    // ties break to the smallest index. All-zero contributions fall back to
    // the smallest free element.
    std::optional<int> pick(const Bitset& free) const {
        std::optional<int> best;
        unsigned __int128 best_w = 0;
        free.for_each([&](std::size_t e) {
            unsigned __int128 w = contrib_[e];
            if (!best || w > best_w) {
                best = static_cast<int>(e);
                best_w = w;
            }
        });
        return best;
    }

private:
    struct SetState {
        std::vector<int> elems;
        int exponent = 0; // |A| - claimer claims in A
        bool dead = false;
    };

    // Weight of set si, scaled by 2^kShift, clamped for huge sets.
    static constexpr int kShift = 100;
    unsigned __int128 scaled_weight(std::size_t si) const {
        int e = sets_[si].exponent;
        if (e > kShift) return 0; // below resolution; such sets are harmless
        return static_cast<unsigned __int128>(1) << (kShift - e);
    }

    void add_weight(std::size_t si, int sign) {
        unsigned __int128 w = scaled_weight(si);
        for (int e : sets_[si].elems) {
            if (sign > 0)
                contrib_[static_cast<std::size_t>(e)] += w;
            else
                contrib_[static_cast<std::size_t>(e)] -= w;
        }
    }

    int universe_;
    std::vector<SetState> sets_;
    std::vector<std::vector<std::size_t>> incidence_;
    std::vector<unsigned __int128> contrib_;
    std::size_t alive_ = 0;
    std::size_t empty_sets_ = 0;
    double initial_weight_ = 0;
    bool criterion_ok_ = false;
    bool claimer_completed_ = false;
};

inline EsSpoiler erdos_selfridge_spoiler(const Hypergraph& hg,
                                         EsSpoiler::Options opt = EsSpoiler::Options{}) {
    return EsSpoiler(hg, opt);
}

// --- randomized constructions -------------------------------------------------

struct SplitCriteria {
    bool check_min_degree = true; // delta(G1) >= eps * delta(G')
    bool check_q2 = true;         // Q2 on G2 with the K below
    double q2_K = 3.0;
};

struct SplitResult {
    std::vector<Edge> e1, e2;
    int retries_used = 0;
    bool min_degree_ok = false;
    bool q2_checked = false;
    bool q2_ok = false;
    int g1_min_degree = 0;
};

// Randomly routes each edge to E1 with probability 2*eps and retries until
// the verified acceptance criteria hold.
inline SplitResult split_edges(const Graph& gp, double eps, int r,
                               int max_retries, Seed seed,
                               SplitCriteria crit = {},
                               bool verify_input = false,
                               std::size_t enum_cap = kEnumCap) {
    int delta = gp.min_degree();
    if (delta <= 0)
        throw precondition_failed("split_edges: minimum degree must be positive");
    if (!(1.0 / (2.0 * delta) < eps && eps < 0.5))
        throw precondition_failed("split_edges: eps outside (1/(2 delta), 1/2)");
    if (r < 1 || r >= gp.n()) throw invalid_input("split_edges: bad r");
    if (verify_input) {
        double K = gp.n() / (r * (1.0 - 2.0 * eps));
        if (!check_q2(gp, r, K, enum_cap))
            throw precondition_failed("split_edges: input fails Q2");
    }
    std::vector<Edge> edges = gp.edges();
    Rng rng = seed.rng();
    SplitResult res;
    for (int attempt = 1; attempt <= max_retries; ++attempt) {
        res = SplitResult{};
        res.retries_used = attempt;
        Graph g1(gp.n()), g2(gp.n());
        for (const Edge& e : edges) {
            if (rng.bernoulli(2.0 * eps)) {
                res.e1.push_back(e);
                g1.add_edge(e);
            } else {
                res.e2.push_back(e);
                g2.add_edge(e);
            }
        }
        res.g1_min_degree = g1.min_degree();
        res.min_degree_ok =
            !crit.check_min_degree ||
            static_cast<double>(res.g1_min_degree) >= eps * delta;
        if (!res.min_degree_ok) continue;
        if (crit.check_q2) {
            res.q2_checked = true;
            res.q2_ok = check_q2(g2, r, crit.q2_K, enum_cap);
            if (!res.q2_ok) continue;
        }
        return res;
    }
    throw retries_exhausted("split-failed: no accepted split within retries");
}

struct ThinTargets {
    std::optional<std::size_t> max_edges;
    struct Q1 {
        double eps;
        double c;
        int r;
    };
    struct Q2 {
        int r;
        double K;
    };
    std::optional<Q1> q1;
    std::optional<Q2> q2;
};

// Retries thin_edges until the sample meets every requested target. Retries
// consume the seed's stream sequentially, so the whole loop replays from the
// same (master, stream).
inline Graph thin_subgraph(const Graph& gp, double gamma,
                           const ThinTargets& targets, int max_retries,
                           Seed seed, std::size_t enum_cap = kEnumCap) {
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw invalid_input("thin_subgraph: gamma outside (0,1]");
    Rng rng = seed.rng();
    for (int attempt = 1; attempt <= max_retries; ++attempt) {
        Graph cand(gp.n());
        for (const Edge& e : gp.edges())
            if (rng.bernoulli(gamma)) cand.add_edge(e);
        if (targets.max_edges && cand.edge_count() > *targets.max_edges)
            continue;
        if (targets.q1 &&
            !check_q1(cand, targets.q1->eps, targets.q1->c, targets.q1->r,
                      enum_cap))
            continue;
        if (targets.q2 && !check_q2(cand, targets.q2->r, targets.q2->K, enum_cap))
            continue;
        return cand;
    }
    throw retries_exhausted("thinning-failed: no accepted subgraph within retries");
}

} // namespace mbg
