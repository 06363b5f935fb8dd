#pragma once

#include <queue>
#include <vector>

#include "mbg/graph.hpp"

namespace mbg {

namespace detail {

// Classic O(V^3) blossom algorithm for maximum matching in a general graph.
class BlossomMatcher {
public:
    explicit BlossomMatcher(const Graph& g)
        : g_(g), n_(g.n()), match_(n_, -1), parent_(n_, -1), base_(n_, 0),
          used_(n_, false), blossom_(n_, false) {}

    std::vector<int> run() {
        // Greedy seed, then augment from every exposed vertex.
        for (int v = 0; v < n_; ++v) {
            if (match_[v] != -1) continue;
            for (std::size_t u = g_.neighbors(v).next(0);
                 u < g_.neighbors(v).size(); u = g_.neighbors(v).next(u + 1)) {
                if (match_[u] == -1) {
                    match_[v] = static_cast<int>(u);
                    match_[u] = v;
                    break;
                }
            }
        }
        for (int v = 0; v < n_; ++v)
            if (match_[v] == -1) find_augmenting_path(v);
        return match_;
    }

private:
    int lca(int a, int b) {
        std::vector<bool> seen(n_, false);
        while (true) {
            a = base_[a];
            seen[a] = true;
            if (match_[a] == -1) break;
            a = parent_[match_[a]];
        }
        while (true) {
            b = base_[b];
            if (seen[b]) return b;
            b = parent_[match_[b]];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base_[v] != b) {
            blossom_[base_[v]] = true;
            blossom_[base_[match_[v]]] = true;
            parent_[v] = child;
            child = match_[v];
            v = parent_[match_[v]];
        }
    }

    void find_augmenting_path(int root) {
        std::fill(used_.begin(), used_.end(), false);
        std::fill(parent_.begin(), parent_.end(), -1);
        for (int i = 0; i < n_; ++i) base_[i] = i;
        used_[root] = true;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            const Bitset& nb = g_.neighbors(v);
            for (std::size_t tu = nb.next(0); tu < nb.size();
                 tu = nb.next(tu + 1)) {
                int to = static_cast<int>(tu);
                if (base_[v] == base_[to] || match_[v] == to) continue;
                if (to == root ||
                    (match_[to] != -1 && parent_[match_[to]] != -1)) {
                    // Odd cycle: contract the blossom.
                    int curbase = lca(v, to);
                    std::fill(blossom_.begin(), blossom_.end(), false);
                    mark_path(v, curbase, to);
                    mark_path(to, curbase, v);
                    for (int i = 0; i < n_; ++i) {
                        if (blossom_[base_[i]]) {
                            base_[i] = curbase;
                            if (!used_[i]) {
                                used_[i] = true;
                                q.push(i);
                            }
                        }
                    }
                } else if (parent_[to] == -1) {
                    parent_[to] = v;
                    if (match_[to] == -1) {
                        augment(to);
                        return;
                    }
                    used_[match_[to]] = true;
                    q.push(match_[to]);
                }
            }
        }
    }

    void augment(int v) {
        while (v != -1) {
            int pv = parent_[v], next = match_[pv];
            match_[v] = pv;
            match_[pv] = v;
            v = next;
        }
    }

    const Graph& g_;
    int n_;
    std::vector<int> match_, parent_, base_;
    std::vector<bool> used_, blossom_;
};

} // namespace detail

inline std::vector<Edge> max_matching(const Graph& g) {
    auto match = detail::BlossomMatcher(g).run();
    std::vector<Edge> out;
    for (int v = 0; v < g.n(); ++v)
        if (match[v] > v) out.push_back(Edge{v, match[v]});
    return out;
}

inline std::size_t max_matching_size(const Graph& g) {
    return max_matching(g).size();
}

// A matching of size floor(n/2) counts as perfect on either parity.
inline bool has_perfect_matching(const Graph& g) {
    return max_matching_size(g) >= static_cast<std::size_t>(g.n()) / 2;
}

// Deficiency form of the maximum-matching count: the number of vertices
// saturated by a maximum matching equals min over S of |V| + |S| - o(G - S).
struct DeficiencyCertificate {
    int value = 0;  // saturated vertex count
    VertexSet s;    // a minimizing S
    int odd_components = 0; // o(G - s)
};

inline constexpr int kDeficiencyCap = 14;

// Exhaustive minimization over all S; n <= kDeficiencyCap.
inline DeficiencyCertificate berge_tutte_value(const Graph& g,
                                               int cap = kDeficiencyCap) {
    const int n = g.n();
    if (n > cap)
        throw cap_exceeded("berge_tutte_value: n exceeds subset-enumeration cap");
    DeficiencyCertificate best;
    best.value = n + n; // above any achievable value
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        VertexSet s(static_cast<std::size_t>(n));
        VertexSet alive(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) {
            if ((mask >> v) & 1)
                s.set(static_cast<std::size_t>(v));
            else
                alive.set(static_cast<std::size_t>(v));
        }
        int odd = component_stats(g, alive).odd_count;
        int value = n + static_cast<int>(s.count()) - odd;
        if (value < best.value) {
            best.value = value;
            best.s = s;
            best.odd_components = odd;
        }
    }
    return best;
}

} // namespace mbg
