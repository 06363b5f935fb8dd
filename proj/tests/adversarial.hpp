#pragma once

// Exhaustive adversaries for guarantee checks: fix one side to the strategy
// under test and branch over every legal move of the other side.

#include <functional>

#include "mbg/game.hpp"
#include "mbg/strategies.hpp"

namespace adversarial {

using namespace mbg;

// True if some claimer line completes a winning set against the fixed
// potential-function spoiler.
inline bool claimer_beats_spoiler(const Hypergraph& hg, bool spoiler_first) {
    EsSpoiler spoiler(hg, EsSpoiler::Options{true});
    Bitset free(static_cast<std::size_t>(hg.universe));
    for (int e = 0; e < hg.universe; ++e) free.set(static_cast<std::size_t>(e));

    std::function<bool(EsSpoiler&, Bitset&, bool)> run =
        [&](EsSpoiler& sp, Bitset& fr, bool spoiler_to_move) -> bool {
        if (sp.claimer_completed()) return true;
        if (fr.none()) return false;
        if (spoiler_to_move) {
            auto pick = sp.pick(fr);
            sp.on_move(SetRole::spoiler, *pick);
            fr.reset(static_cast<std::size_t>(*pick));
            return run(sp, fr, false);
        }
        bool beaten = false;
        fr.for_each([&](std::size_t e) {
            if (beaten) return;
            EsSpoiler sp2 = sp;
            Bitset fr2 = fr;
            sp2.on_move(SetRole::claimer, static_cast<int>(e));
            fr2.reset(e);
            if (sp2.claimer_completed() || run(sp2, fr2, true)) beaten = true;
        });
        return beaten;
    };
    return run(spoiler, free, spoiler_first);
}

// True if EVERY Breaker line lets the fixed (copyable) Maker strategy reach
// minimum degree k within max_maker_moves.
template <typename MakerStrategy>
bool maker_min_degree_guarantee(const Graph& board, int k, int max_maker_moves,
                                const MakerStrategy& maker_proto) {
    std::function<bool(const GameState&, const MakerStrategy&)> run =
        [&](const GameState& st, const MakerStrategy& maker) -> bool {
        if (st.maker_graph().min_degree() >= k) return true;
        std::size_t maker_moves = st.history().size() / 2;
        if (maker_moves >= static_cast<std::size_t>(max_maker_moves))
            return false;
        if (st.free_count() == 0) return false;
        for (const Edge& be : st.free_edges()) {
            GameState st2 = st;
            MakerStrategy maker2 = maker;
            st2.apply(Role::breaker, be);
            maker2.observe(st2, st2.history().back());
            if (st2.free_count() > 0) {
                Edge me = maker2.choose(st2);
                st2.apply(Role::maker, me);
                maker2.observe(st2, st2.history().back());
            }
            if (!run(st2, maker2)) return false;
        }
        return true;
    };
    GameState st(board);
    return run(st, maker_proto);
}

} // namespace adversarial
