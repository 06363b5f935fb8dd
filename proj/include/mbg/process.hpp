#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "mbg/graph.hpp"
#include "mbg/rng.hpp"

namespace mbg {

inline std::size_t pair_count(int n) {
    return static_cast<std::size_t>(n) * (n - 1) / 2;
}

// All canonical pairs of 0..n-1 in lexicographic order.
inline std::vector<Edge> all_pairs(int n) {
    std::vector<Edge> out;
    out.reserve(pair_count(n));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) out.push_back(Edge{u, v});
    return out;
}

// Lexicographic rank of a canonical pair among all_pairs(n).
inline std::size_t pair_index(int n, const Edge& e) {
    std::size_t before_u = static_cast<std::size_t>(e.u) * n -
                           static_cast<std::size_t>(e.u) * (e.u + 1) / 2;
    return before_u + static_cast<std::size_t>(e.v - e.u - 1);
}

// A permutation of all C(n,2) vertex pairs; its prefixes are the graph
// process G_0 c G_1 c ... c G_{C(n,2)}.
struct PairOrdering {
    int n = 0;
    std::vector<Edge> order; // order[t-1] is the pair added at step t

    bool is_permutation() const {
        if (order.size() != pair_count(n)) return false;
        std::vector<bool> seen(order.size(), false);
        for (const Edge& e : order) {
            if (e.u < 0 || e.v >= n || e.u >= e.v) return false;
            std::size_t i = pair_index(n, e);
            if (seen[i]) return false;
            seen[i] = true;
        }
        return true;
    }
};

// Uniformly random pair ordering (Fisher-Yates over the lexicographic list).
inline PairOrdering sample_process(int n, Seed seed) {
    if (n < 2) throw invalid_input("sample_process: need n >= 2");
    PairOrdering po{n, all_pairs(n)};
    Rng rng = seed.rng();
    for (std::size_t i = po.order.size(); i > 1; --i) {
        std::size_t j = rng.below(i);
        std::swap(po.order[i - 1], po.order[j]);
    }
    return po;
}

// Graph formed by the first t pairs of the ordering.
inline Graph prefix_graph(const PairOrdering& po, std::size_t t) {
    if (t > po.order.size())
        throw invalid_input("prefix_graph: step out of range");
    Graph g(po.n);
    for (std::size_t i = 0; i < t; ++i) g.add_edge(po.order[i]);
    return g;
}

// First step t at which prop(G_t) holds. With monotone=true the property is
// assumed increasing and located by binary search; otherwise a linear scan
// evaluates the property on every prefix.
inline std::size_t hitting_time(const PairOrdering& po,
                                const std::function<bool(const Graph&)>& prop,
                                bool monotone) {
    const std::size_t total = po.order.size();
    if (monotone) {
        if (!prop(prefix_graph(po, total)))
            throw no_hitting_time("hitting_time: property fails on K_n");
        if (prop(prefix_graph(po, 0))) return 0;
        std::size_t lo = 0, hi = total; // prop false at lo, true at hi
        while (hi - lo > 1) {
            std::size_t mid = lo + (hi - lo) / 2;
            if (prop(prefix_graph(po, mid)))
                hi = mid;
            else
                lo = mid;
        }
        return hi;
    }
    Graph g(po.n);
    if (prop(g)) return 0;
    for (std::size_t t = 1; t <= total; ++t) {
        g.add_edge(po.order[t - 1]);
        if (prop(g)) return t;
    }
    throw no_hitting_time("hitting_time: property never holds");
}

// Incremental fast path for the minimum-degree property. Must agree with
// hitting_time(po, delta_k, *) everywhere; the test suite checks that.
inline std::size_t hitting_time_min_degree(const PairOrdering& po, int k) {
    if (k > po.n - 1)
        throw no_hitting_time("hitting_time_min_degree: k exceeds n-1");
    if (k <= 0) return 0;
    std::vector<int> deg(static_cast<std::size_t>(po.n), 0);
    std::size_t below = static_cast<std::size_t>(po.n);
    for (std::size_t t = 1; t <= po.order.size(); ++t) {
        const Edge& e = po.order[t - 1];
        if (++deg[e.u] == k) --below;
        if (++deg[e.v] == k) --below;
        if (below == 0) return t;
    }
    throw no_hitting_time("hitting_time_min_degree: never reached");
}

// Edge-count window inside which the minimum-degree-k hitting time typically
// falls: C(n,2)*(ln n + (k-1)ln ln n -/+ ln ln ln n)/n. Needs n >= 16 so the
// triple log is positive.
struct DegreeWindow {
    double lower = 0; // m_k
    double upper = 0; // M_k
    int n = 0;
    int k = 0;
};

inline DegreeWindow min_degree_window(int n, int k) {
    if (n < 16) throw invalid_input("min_degree_window: need n >= 16");
    if (k < 1) throw invalid_input("min_degree_window: need k >= 1");
    double ln = std::log(static_cast<double>(n));
    double lln = std::log(ln);
    double llln = std::log(lln);
    double pairs = static_cast<double>(pair_count(n));
    double base = ln + (k - 1) * lln;
    return DegreeWindow{pairs * (base - llln) / n, pairs * (base + llln) / n,
                        n, k};
}

// Uniform graph with exactly M edges (partial Fisher-Yates on the pair list).
inline Graph sample_gnm(int n, std::size_t M, Seed seed) {
    if (n < 0 || M > pair_count(n))
        throw invalid_input("sample_gnm: M out of range");
    std::vector<Edge> pool = all_pairs(n);
    Rng rng = seed.rng();
    Graph g(n);
    for (std::size_t i = 0; i < M; ++i) {
        std::size_t j = i + rng.below(pool.size() - i);
        std::swap(pool[i], pool[j]);
        g.add_edge(pool[i]);
    }
    return g;
}

// Each pair becomes an edge independently with probability p, skipping any
// pair in the forbidden set F.
inline Graph sample_gnp_minus(int n, double p, const std::vector<Edge>& F,
                              Seed seed) {
    if (p < 0.0 || p > 1.0) throw invalid_input("sample_gnp: p out of [0,1]");
    Bitset forbidden(pair_count(n));
    for (const Edge& e : F) {
        if (e.u < 0 || e.v >= n || e.u >= e.v)
            throw invalid_input("sample_gnp_minus: malformed forbidden pair");
        forbidden.set(pair_index(n, e));
    }
    Rng rng = seed.rng();
    Graph g(n);
    std::size_t idx = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++idx)
            if (!forbidden.test(idx) && rng.bernoulli(p)) g.add_edge(u, v);
    return g;
}

inline Graph sample_gnp(int n, double p, Seed seed) {
    return sample_gnp_minus(n, p, {}, seed);
}

// Spanning subgraph keeping each edge independently with probability gamma.
inline Graph thin_edges(const Graph& g, double gamma, Seed seed) {
    if (gamma < 0.0 || gamma > 1.0)
        throw invalid_input("thin_edges: gamma out of [0,1]");
    Rng rng = seed.rng();
    Graph out(g.n());
    for (const Edge& e : g.edges())
        if (rng.bernoulli(gamma)) out.add_edge(e);
    return out;
}

} // namespace mbg
