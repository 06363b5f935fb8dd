#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "mbg/graph.hpp"

namespace mbg {

using Json = nlohmann::ordered_json;

enum class Role { breaker, maker };

inline const char* role_name(Role r) {
    return r == Role::breaker ? "breaker" : "maker";
}

inline Role other(Role r) {
    return r == Role::breaker ? Role::maker : Role::breaker;
}

struct Move {
    Role by;
    Edge e;
    friend bool operator==(const Move&, const Move&) = default;
};

// Board state of an edge game: every board edge is free, Maker's, or
// Breaker's. Breaker always moves first.
class GameState {
public:
    enum class Claim : unsigned char { free, maker, breaker };

    explicit GameState(const Graph& board)
        : board_(board), edges_(board.edges()),
          idx_(static_cast<std::size_t>(board.n()) * board.n(), -1),
          claim_(edges_.size(), Claim::free), maker_(board.n()),
          breaker_(board.n()), free_(edges_.size()) {
        for (std::size_t i = 0; i < edges_.size(); ++i)
            idx_[flat(edges_[i])] = static_cast<int>(i);
    }

    const Graph& board() const { return board_; }
    int n() const { return board_.n(); }
    const std::vector<Edge>& board_edges() const { return edges_; }
    Role to_move() const { return to_move_; }
    std::size_t free_count() const { return free_; }
    const std::vector<Move>& history() const { return history_; }
    const Graph& maker_graph() const { return maker_; }
    const Graph& breaker_graph() const { return breaker_; }

    bool on_board(const Edge& e) const {
        return e.u >= 0 && e.v < board_.n() && e.u < e.v &&
               idx_[flat(e)] >= 0;
    }

    Claim claim(const Edge& e) const {
        if (!on_board(e)) throw invalid_input("claim: edge not on board");
        return claim_[static_cast<std::size_t>(idx_[flat(e)])];
    }

    bool is_free(const Edge& e) const {
        return on_board(e) && claim(e) == Claim::free;
    }

    int edge_index(const Edge& e) const {
        if (!on_board(e)) throw invalid_input("edge_index: edge not on board");
        return idx_[flat(e)];
    }

    const Edge& edge_at(std::size_t i) const { return edges_[i]; }
    const std::vector<Claim>& claims() const { return claim_; }

    std::optional<Move> last_move() const {
        if (history_.empty()) return std::nullopt;
        return history_.back();
    }

    void apply(Role by, const Edge& e) {
        if (by != to_move_)
            throw illegal_move(std::string(role_name(by)) +
                               " moved out of turn");
        if (!is_free(e))
            throw illegal_move(std::string(role_name(by)) +
                               " claimed a non-free edge (" +
                               std::to_string(e.u) + "," + std::to_string(e.v) +
                               ")");
        claim_[static_cast<std::size_t>(idx_[flat(e)])] =
            by == Role::maker ? Claim::maker : Claim::breaker;
        (by == Role::maker ? maker_ : breaker_).add_edge(e);
        --free_;
        history_.push_back(Move{by, e});
        to_move_ = other(to_move_);
    }

    // Claim-set disjointness and Breaker-first alternation.
    bool invariants_hold() const {
        std::size_t mk = 0, bk = 0, fr = 0;
        for (Claim c : claim_) {
            if (c == Claim::maker) ++mk;
            else if (c == Claim::breaker) ++bk;
            else ++fr;
        }
        if (mk != maker_.edge_count() || bk != breaker_.edge_count()) return false;
        if (fr != free_) return false;
        if (bk != mk && bk != mk + 1) return false;
        for (std::size_t i = 0; i < history_.size(); ++i)
            if (history_[i].by !=
                (i % 2 == 0 ? Role::breaker : Role::maker))
                return false;
        return true;
    }

    // Lexicographically smallest free edge, if any.
    std::optional<Edge> first_free() const {
        for (std::size_t i = 0; i < edges_.size(); ++i)
            if (claim_[i] == Claim::free) return edges_[i];
        return std::nullopt;
    }

    std::vector<Edge> free_edges() const {
        std::vector<Edge> out;
        out.reserve(free_);
        for (std::size_t i = 0; i < edges_.size(); ++i)
            if (claim_[i] == Claim::free) out.push_back(edges_[i]);
        return out;
    }

private:
    std::size_t flat(const Edge& e) const {
        return static_cast<std::size_t>(e.u) * board_.n() + e.v;
    }

    Graph board_;
    std::vector<Edge> edges_;
    std::vector<int> idx_;
    std::vector<Claim> claim_;
    Graph maker_, breaker_;
    Role to_move_ = Role::breaker;
    std::vector<Move> history_;
    std::size_t free_ = 0;
};

// A player. The engine passes the full state on every query and reports every
// move to both players; whatever a strategy wants to remember is its own.
class Strategy {
public:
    virtual ~Strategy() = default;
    virtual std::string name() const = 0;
    virtual Edge choose(const GameState& st) = 0;
    virtual void observe(const GameState&, const Move&) {}
    virtual Json report() const { return Json::object(); }
};

struct Transcript {
    int n = 0;
    std::vector<Edge> board;
    std::vector<Move> moves;
    bool stopped_early = false;   // stop predicate fired
    std::size_t moves_played = 0; // == moves.size()
    Json maker_report, breaker_report;
};

// Alternating play, Breaker first. Ends when the board is exhausted or the
// stop predicate holds on Maker's graph (evaluated after Maker moves only).
inline Transcript play(const Graph& board, Strategy& breaker, Strategy& maker,
                       const std::function<bool(const Graph&)>* stop = nullptr) {
    if (board.edge_count() == 0) throw invalid_input("play: empty board");
    GameState st(board);
    while (st.free_count() > 0) {
        Role role = st.to_move();
        Strategy& s = role == Role::breaker ? breaker : maker;
        Edge e = s.choose(st);
        if (!st.is_free(e))
            throw illegal_move(s.name() + " returned a non-free edge (" +
                               std::to_string(e.u) + "," + std::to_string(e.v) +
                               ")");
        st.apply(role, e);
        if (!st.invariants_hold())
            throw error("play: game-state invariants violated");
        Move mv = st.history().back();
        breaker.observe(st, mv);
        maker.observe(st, mv);
        if (role == Role::maker && stop && (*stop)(st.maker_graph())) {
            Transcript tr{st.n(), st.board_edges(), st.history(), true,
                          st.history().size(), maker.report(),
                          breaker.report()};
            return tr;
        }
    }
    return Transcript{st.n(),           st.board_edges(), st.history(), false,
                      st.history().size(), maker.report(), breaker.report()};
}

// Re-applies a transcript move by move; throws if anything is inconsistent.
inline GameState replay(const Transcript& tr) {
    Graph board(tr.n);
    for (const Edge& e : tr.board) board.add_edge(e);
    GameState st(board);
    for (const Move& mv : tr.moves) st.apply(mv.by, mv.e);
    if (!st.invariants_hold()) throw error("replay: invariants violated");
    return st;
}

inline Json transcript_to_json(const Transcript& tr) {
    Json j;
    j["schema"] = "transcript.v1";
    j["n"] = tr.n;
    Json board = Json::array();
    for (const Edge& e : tr.board) board.push_back(Json::array({e.u, e.v}));
    j["board"] = std::move(board);
    Json moves = Json::array();
    for (const Move& mv : tr.moves) {
        Json m;
        m["by"] = role_name(mv.by);
        m["edge"] = Json::array({mv.e.u, mv.e.v});
        moves.push_back(std::move(m));
    }
    j["moves"] = std::move(moves);
    j["stopped_early"] = tr.stopped_early;
    j["moves_played"] = tr.moves_played;
    GameState st = replay(tr);
    Json mk = Json::array();
    for (const Edge& e : st.maker_graph().edges())
        mk.push_back(Json::array({e.u, e.v}));
    j["maker_edges"] = std::move(mk);
    Json bk = Json::array();
    for (const Edge& e : st.breaker_graph().edges())
        bk.push_back(Json::array({e.u, e.v}));
    j["breaker_edges"] = std::move(bk);
    j["maker_report"] = tr.maker_report;
    j["breaker_report"] = tr.breaker_report;
    return j;
}

// --- exhaustive hypergraph game solver ---------------------------------------

// Winning-set family over an abstract element universe. In graph games the
// elements are board-edge indices.
struct Hypergraph {
    int universe = 0;
    std::vector<std::vector<int>> sets;
};

enum class Winner { maker, breaker };

inline const char* winner_name(Winner w) {
    return w == Winner::maker ? "maker" : "breaker";
}

inline constexpr int kSolveCap = 16;

// Memoized perfect-play solver. Maker wins iff he fully claims some winning
// set; the board running out without that is a Breaker win.
class HypergraphSolver {
public:
    explicit HypergraphSolver(const Hypergraph& hg) : universe_(hg.universe) {
        if (hg.universe > kSolveCap)
            throw cap_exceeded("HypergraphSolver: universe exceeds cap");
        full_ = hg.universe == 0
                    ? 0
                    : (std::uint32_t{1} << hg.universe) - 1;
        for (const auto& s : hg.sets) {
            std::uint32_t m = 0;
            for (int e : s) {
                if (e < 0 || e >= hg.universe)
                    throw invalid_input("HypergraphSolver: element out of range");
                m |= std::uint32_t{1} << e;
            }
            set_masks_.push_back(m);
        }
    }

    bool maker_wins(std::uint32_t maker, std::uint32_t breaker, Role to_move) {
        for (std::uint32_t s : set_masks_)
            if ((s & ~maker) == 0) return true;
        std::uint32_t alive_union = 0;
        bool any_alive = false;
        for (std::uint32_t s : set_masks_)
            if ((s & breaker) == 0) {
                any_alive = true;
                alive_union |= s;
            }
        if (!any_alive) return false;
        std::uint32_t free = full_ & ~(maker | breaker);
        if (!free) return false;
        std::uint64_t key = (std::uint64_t(maker) << 17) |
                            (std::uint64_t(breaker) << 34) |
                            (to_move == Role::maker ? 1 : 0);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        bool result;
        if (to_move == Role::maker) {
            // Useful moves only: claiming outside every alive set never helps.
            std::uint32_t cand = free & alive_union;
            result = false;
            while (cand && !result) {
                int e = std::countr_zero(cand);
                cand &= cand - 1;
                result = maker_wins(maker | (std::uint32_t{1} << e), breaker,
                                    Role::breaker);
            }
        } else {
            // Try set-hitting moves first; fall back to the rest.
            result = true;
            for (std::uint32_t pool : {free & alive_union, free & ~alive_union}) {
                std::uint32_t cand = pool;
                while (cand && result) {
                    int e = std::countr_zero(cand);
                    cand &= cand - 1;
                    if (!maker_wins(maker, breaker | (std::uint32_t{1} << e),
                                    Role::maker))
                        result = false;
                }
                if (!result) break;
            }
        }
        memo_.emplace(key, result);
        return result;
    }

    // A move that preserves the mover's win, if one exists. Lexicographic in
    // element index, so deterministic.
    std::optional<int> winning_move(std::uint32_t maker, std::uint32_t breaker,
                                    Role to_move) {
        std::uint32_t free = full_ & ~(maker | breaker);
        for (std::uint32_t cand = free; cand;) {
            int e = std::countr_zero(cand);
            cand &= cand - 1;
            std::uint32_t bit = std::uint32_t{1} << e;
            bool mw = to_move == Role::maker
                          ? maker_wins(maker | bit, breaker, Role::breaker)
                          : maker_wins(maker, breaker | bit, Role::maker);
            if ((to_move == Role::maker) == mw) return e;
        }
        return std::nullopt;
    }

private:
    int universe_;
    std::uint32_t full_ = 0;
    std::vector<std::uint32_t> set_masks_;
    std::unordered_map<std::uint64_t, bool> memo_;
};

inline Winner exhaustive_solve(const Hypergraph& hg, Role first_mover) {
    HypergraphSolver solver(hg);
    return solver.maker_wins(0, 0, first_mover) ? Winner::maker
                                                : Winner::breaker;
}

// Perfect-play winner of the edge game on G where Maker tries to make his
// spanning subgraph satisfy `prop` (monotone increasing). The winning sets
// are the minimal edge subsets achieving prop.
inline Winner graph_game_winner(const Graph& g,
                                const std::function<bool(const Graph&)>& prop,
                                int min_edges_hint = 0) {
    const std::vector<Edge> edges = g.edges();
    const int m = static_cast<int>(edges.size());
    if (m > kSolveCap)
        throw cap_exceeded("graph_game_winner: board exceeds cap");
    const std::uint32_t total = std::uint32_t{1} << m;
    std::vector<char> holds(total, 0);
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        if (std::popcount(mask) < min_edges_hint) continue;
        Graph sub(g.n());
        for (int i = 0; i < m; ++i)
            if ((mask >> i) & 1) sub.add_edge(edges[i]);
        holds[mask] = prop(sub) ? 1 : 0;
    }
    Hypergraph hg{m, {}};
    for (std::uint32_t mask = 1; mask < total; ++mask) {
        if (!holds[mask]) continue;
        bool minimal = true;
        for (int i = 0; i < m && minimal; ++i)
            if ((mask >> i) & 1)
                minimal = !holds[mask & ~(std::uint32_t{1} << i)];
        if (!minimal) continue;
        std::vector<int> set;
        for (int i = 0; i < m; ++i)
            if ((mask >> i) & 1) set.push_back(i);
        hg.sets.push_back(std::move(set));
    }
    return exhaustive_solve(hg, Role::breaker);
}

} // namespace mbg
