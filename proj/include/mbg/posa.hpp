#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "mbg/graph.hpp"

namespace mbg::posa {

// Rotation-extension machinery on a concrete path. All paths here live inside
// a fixed graph h (in play: Maker's graph); path lengths are certificates,
// i.e. lower bounds on the longest-path length of h.

// Greedily extend both ends while an endpoint has a neighbor off the path.
inline void extend_ends(const Graph& h, std::vector<int>& path) {
    auto on_path = [&](int v) {
        return std::find(path.begin(), path.end(), v) != path.end();
    };
    bool grew = true;
    while (grew) {
        grew = false;
        for (bool front : {false, true}) {
            int end = front ? path.front() : path.back();
            const Bitset& nb = h.neighbors(end);
            for (std::size_t u = nb.next(0); u < nb.size(); u = nb.next(u + 1)) {
                if (on_path(static_cast<int>(u))) continue;
                if (front)
                    path.insert(path.begin(), static_cast<int>(u));
                else
                    path.push_back(static_cast<int>(u));
                grew = true;
                break;
            }
            if (grew) break;
        }
    }
}

// All paths obtainable from `path` by rotations that keep the first vertex
// fixed. The input path itself is first; order is deterministic (BFS, edges
// scanned in vertex order).
inline std::vector<std::vector<int>> rotations(const Graph& h,
                                               const std::vector<int>& path) {
    const int n = h.n();
    std::vector<std::vector<int>> out;
    std::vector<bool> seen_end(static_cast<std::size_t>(n), false);
    out.push_back(path);
    seen_end[static_cast<std::size_t>(path.back())] = true;
    for (std::size_t head = 0; head < out.size(); ++head) {
        std::vector<int> cur = out[head]; // copy: out may reallocate
        std::vector<int> pos(static_cast<std::size_t>(n), -1);
        for (std::size_t i = 0; i < cur.size(); ++i)
            pos[static_cast<std::size_t>(cur[i])] = static_cast<int>(i);
        int z = cur.back();
        const Bitset& nb = h.neighbors(z);
        for (std::size_t w = nb.next(0); w < nb.size(); w = nb.next(w + 1)) {
            int i = pos[w];
            if (i < 0 || i + 2 >= static_cast<int>(cur.size())) continue;
            int new_end = cur[static_cast<std::size_t>(i) + 1];
            if (seen_end[static_cast<std::size_t>(new_end)]) continue;
            seen_end[static_cast<std::size_t>(new_end)] = true;
            std::vector<int> rotated(cur.begin(),
                                     cur.begin() + i + 1);
            rotated.insert(rotated.end(), cur.rbegin(),
                           cur.rend() - (i + 1));
            out.push_back(std::move(rotated));
        }
    }
    return out;
}

// One improvement step using edges of h only: extend an endpoint of some
// rotated variant, or close a rotated variant into a cycle and unroll it
// through an edge leaving the cycle. Returns true if the path got longer.
// If a rotated variant closes into a spanning cycle, *spanning_cycle is set.
inline bool improve_once(const Graph& h, std::vector<int>& path,
                         std::optional<std::vector<int>>* spanning_cycle) {
    std::vector<bool> on(static_cast<std::size_t>(h.n()), false);
    for (int v : path) on[static_cast<std::size_t>(v)] = true;

    auto try_variants = [&](const std::vector<int>& base) -> bool {
        for (const auto& var : rotations(h, base)) {
            int end = var.back();
            const Bitset& nb = h.neighbors(end);
            for (std::size_t u = nb.next(0); u < nb.size(); u = nb.next(u + 1))
                if (!on[u]) {
                    path = var;
                    path.push_back(static_cast<int>(u));
                    return true;
                }
            // Cycle closing: endpoints adjacent in h.
            if (var.size() >= 3 && h.has_edge(var.front(), var.back())) {
                if (static_cast<int>(var.size()) == h.n()) {
                    if (spanning_cycle) *spanning_cycle = var;
                    continue;
                }
                // Any h-edge from the cycle to the outside lengthens the path.
                for (std::size_t i = 0; i < var.size(); ++i) {
                    const Bitset& cn = h.neighbors(var[i]);
                    for (std::size_t u = cn.next(0); u < cn.size();
                         u = cn.next(u + 1)) {
                        if (on[u]) continue;
                        // Path: u, var[i], then around the cycle.
                        std::vector<int> next;
                        next.push_back(static_cast<int>(u));
                        for (std::size_t j = 0; j < var.size(); ++j)
                            next.push_back(
                                var[(i + var.size() - j) % var.size()]);
                        path = std::move(next);
                        return true;
                    }
                }
            }
        }
        return false;
    };

    if (try_variants(path)) return true;
    std::vector<int> rev(path.rbegin(), path.rend());
    if (try_variants(rev)) return true;
    return false;
}

// Iterate improve_once to a fixpoint; reports a spanning cycle if one shows
// up along the way.
inline std::optional<std::vector<int>> improve(const Graph& h,
                                               std::vector<int>& path) {
    std::optional<std::vector<int>> cycle;
    extend_ends(h, path);
    while (!cycle && improve_once(h, path, &cycle)) extend_ends(h, path);
    return cycle;
}

// Deterministic starting path: the smallest vertex of a largest component.
inline std::vector<int> initial_path(const Graph& h) {
    auto stats = component_stats(h);
    const VertexSet* best = nullptr;
    for (const auto& comp : stats.components)
        if (!best || comp.count() > best->count()) best = &comp;
    if (!best) return {};
    return {static_cast<int>(best->next(0))};
}

// A free pair worth claiming: adds one endpoint extension or closes a cycle
// that provably lengthens the certificate (or completes a spanning cycle).
struct Candidate {
    Edge e;
    std::vector<int> result; // the improved path, or the spanning cycle
    bool closes_spanning_cycle = false;
};

// All productive free pairs reachable by one or two levels of rotations.
// `is_free` decides whether a vertex pair may be claimed.
inline std::vector<Candidate> candidates(
    const Graph& h, const std::vector<int>& path,
    const std::function<bool(const Edge&)>& is_free) {
    std::vector<Candidate> out;
    std::vector<bool> on(static_cast<std::size_t>(h.n()), false);
    for (int v : path) on[static_cast<std::size_t>(v)] = true;
    const int n = h.n();

    auto consider_extension = [&](const std::vector<int>& var) {
        int end = var.back();
        for (int u = 0; u < n; ++u) {
            if (on[static_cast<std::size_t>(u)] || u == end) continue;
            Edge e = make_edge(end, u);
            if (!is_free(e)) continue;
            Candidate c;
            c.e = e;
            c.result = var;
            c.result.push_back(u);
            out.push_back(std::move(c));
        }
    };

    auto consider_closing = [&](const std::vector<int>& var) {
        if (var.size() < 3) return;
        Edge e = make_edge(var.front(), var.back());
        if (h.has_edge(e.u, e.v) || !is_free(e)) return;
        if (static_cast<int>(var.size()) == n) {
            Candidate c;
            c.e = e;
            c.result = var;
            c.closes_spanning_cycle = true;
            out.push_back(std::move(c));
            return;
        }
        // Productive only if some h-edge leaves the would-be cycle.
        for (std::size_t i = 0; i < var.size(); ++i) {
            const Bitset& cn = h.neighbors(var[i]);
            for (std::size_t u = cn.next(0); u < cn.size(); u = cn.next(u + 1)) {
                if (on[u]) continue;
                Candidate c;
                c.e = e;
                c.result.push_back(static_cast<int>(u));
                for (std::size_t j = 0; j < var.size(); ++j)
                    c.result.push_back(
                        var[(i + var.size() - j) % var.size()]);
                out.push_back(std::move(c));
                return;
            }
        }
    };

    for (const auto& var : rotations(h, path)) {
        consider_extension(var);
        consider_closing(var);
        // Second level: rotate the other end of this variant.
        std::vector<int> rev(var.rbegin(), var.rend());
        for (const auto& var2 : rotations(h, rev)) {
            consider_extension(var2);
            consider_closing(var2);
        }
    }
    return out;
}

} // namespace mbg::posa
