#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mbg/bitset.hpp"
#include "mbg/errors.hpp"

namespace mbg {

// Unordered vertex pair in canonical form u < v. Lexicographic (u,v) order is
// the single global tie-break everywhere a choice would otherwise be
// arbitrary, so runs are replayable.
struct Edge {
    int u = 0;
    int v = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(int u, int v) {
    if (u == v) throw invalid_input("self-loop");
    if (u > v) std::swap(u, v);
    return Edge{u, v};
}

// Simple undirected graph on vertices 0..n-1, adjacency stored as one bitset
// row per vertex. Treated as a value: cheap to copy at the sizes this project
// works at, and all operations on it are pure.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n) : n_(n), deg_(n, 0), adj_(n, Bitset(n)) {
        if (n < 0) throw invalid_input("negative vertex count");
    }

    template <typename EdgeRange>
    static Graph from_edges(int n, const EdgeRange& edges) {
        Graph g(n);
        for (const Edge& e : edges) g.add_edge(e.u, e.v);
        return g;
    }

    int n() const { return n_; }
    std::size_t edge_count() const { return m_; }

    bool has_edge(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        return u != v && adj_[u].test(static_cast<std::size_t>(v));
    }

    // Returns false if the edge was already present.
    bool add_edge(int u, int v) {
        if (u == v) throw invalid_input("self-loop");
        check_vertex(u);
        check_vertex(v);
        if (adj_[u].test(static_cast<std::size_t>(v))) return false;
        adj_[u].set(static_cast<std::size_t>(v));
        adj_[v].set(static_cast<std::size_t>(u));
        ++deg_[u];
        ++deg_[v];
        ++m_;
        return true;
    }

    bool add_edge(const Edge& e) { return add_edge(e.u, e.v); }

    bool remove_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v || !adj_[u].test(static_cast<std::size_t>(v))) return false;
        adj_[u].reset(static_cast<std::size_t>(v));
        adj_[v].reset(static_cast<std::size_t>(u));
        --deg_[u];
        --deg_[v];
        --m_;
        return true;
    }

    const Bitset& neighbors(int v) const {
        check_vertex(v);
        return adj_[v];
    }

    int degree(int v) const {
        check_vertex(v);
        return deg_[v];
    }

    int min_degree() const {
        int d = n_ == 0 ? 0 : deg_[0];
        for (int v = 1; v < n_; ++v) d = std::min(d, deg_[v]);
        return d;
    }

    // Edges in lexicographic (u,v) order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(m_);
        for (int u = 0; u < n_; ++u)
            adj_[u].for_each([&](std::size_t v) {
                if (static_cast<int>(v) > u) out.push_back(Edge{u, static_cast<int>(v)});
            });
        return out;
    }

    std::vector<Edge> non_edges() const {
        std::vector<Edge> out;
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                if (!adj_[u].test(static_cast<std::size_t>(v)))
                    out.push_back(Edge{u, v});
        return out;
    }

    bool operator==(const Graph& o) const {
        return n_ == o.n_ && adj_ == o.adj_;
    }

    // Degree-sum bookkeeping must always match the stored adjacency.
    bool invariants_hold() const {
        std::size_t degsum = 0, bits = 0;
        for (int v = 0; v < n_; ++v) {
            if (adj_[v].test(static_cast<std::size_t>(v))) return false;
            if (static_cast<std::size_t>(deg_[v]) != adj_[v].count()) return false;
            degsum += static_cast<std::size_t>(deg_[v]);
            bits += adj_[v].count();
            for (std::size_t u = adj_[v].next(0); u < adj_[v].size();
                 u = adj_[v].next(u + 1))
                if (!adj_[u].test(static_cast<std::size_t>(v))) return false;
        }
        return degsum == 2 * m_ && bits == 2 * m_;
    }

    VertexSet all_vertices() const {
        VertexSet s(static_cast<std::size_t>(n_));
        for (int v = 0; v < n_; ++v) s.set(static_cast<std::size_t>(v));
        return s;
    }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw invalid_input("vertex id out of range");
    }

    int n_ = 0;
    std::size_t m_ = 0;
    std::vector<int> deg_;
    std::vector<Bitset> adj_;
};

namespace detail {
inline void check_vertex_set(const Graph& g, const VertexSet& s,
                             const char* what) {
    if (s.size() > static_cast<std::size_t>(g.n())) {
        // Bits at positions >= n are invalid vertex ids.
        for (std::size_t i = s.next(static_cast<std::size_t>(g.n()));
             i < s.size(); i = s.next(i + 1))
            throw invalid_input(std::string(what) + ": vertex id out of range");
    }
}
} // namespace detail

// External neighborhood: vertices outside S adjacent to something in S.
inline VertexSet neighborhood(const Graph& g, const VertexSet& s) {
    detail::check_vertex_set(g, s, "neighborhood");
    VertexSet out(static_cast<std::size_t>(g.n()));
    s.for_each([&](std::size_t v) { out |= g.neighbors(static_cast<int>(v)); });
    out -= s;
    return out;
}

// Number of edges with both endpoints in U.
inline std::size_t edges_within(const Graph& g, const VertexSet& u) {
    detail::check_vertex_set(g, u, "edges_within");
    std::size_t twice = 0;
    u.for_each([&](std::size_t v) {
        twice += g.neighbors(static_cast<int>(v)).count_and(u);
    });
    return twice / 2;
}

// Number of edges with one endpoint in U and the other in W. U, W disjoint.
inline std::size_t edges_between(const Graph& g, const VertexSet& u,
                                 const VertexSet& w) {
    detail::check_vertex_set(g, u, "edges_between");
    detail::check_vertex_set(g, w, "edges_between");
    if (u.intersects(w)) throw invalid_input("edges_between: sets overlap");
    std::size_t c = 0;
    u.for_each([&](std::size_t v) {
        c += g.neighbors(static_cast<int>(v)).count_and(w);
    });
    return c;
}

// Vertices of degree strictly below t.
inline VertexSet low_degree_set(const Graph& g, int t) {
    if (t < 0) throw invalid_input("low_degree_set: negative threshold");
    VertexSet out(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) < t) out.set(static_cast<std::size_t>(v));
    return out;
}

struct ComponentStats {
    std::vector<VertexSet> components; // partition of the alive vertices
    int count = 0;
    int odd_count = 0;
};

// Connected components restricted to `alive`; vertices outside it are treated
// as removed. Pass all_vertices() for the whole graph.
inline ComponentStats component_stats(const Graph& g, const VertexSet& alive) {
    detail::check_vertex_set(g, alive, "component_stats");
    ComponentStats st;
    VertexSet seen(static_cast<std::size_t>(g.n()));
    std::vector<int> stack;
    alive.for_each([&](std::size_t start) {
        if (seen.test(start)) return;
        VertexSet comp(static_cast<std::size_t>(g.n()));
        stack.push_back(static_cast<int>(start));
        seen.set(start);
        comp.set(start);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            VertexSet nb = g.neighbors(v) & alive;
            nb -= seen;
            nb.for_each([&](std::size_t w) {
                seen.set(w);
                comp.set(w);
                stack.push_back(static_cast<int>(w));
            });
        }
        ++st.count;
        if (comp.count() % 2 == 1) ++st.odd_count;
        st.components.push_back(std::move(comp));
    });
    return st;
}

inline ComponentStats component_stats(const Graph& g) {
    return component_stats(g, g.all_vertices());
}

inline bool is_connected(const Graph& g) {
    if (g.n() <= 1) return true;
    return component_stats(g).count == 1;
}

// Exact searches below run a DP over vertex subsets; 2^n states make this a
// hard cap, not a suggestion.
inline constexpr int kExactCap = 20;

namespace detail {

// reach[mask] = bitmask of vertices v such that some simple path covers
// exactly `mask` and ends at v.
inline std::vector<std::uint32_t> path_dp(const Graph& g) {
    const int n = g.n();
    std::vector<std::uint32_t> nbr(n, 0);
    for (int v = 0; v < n; ++v)
        g.neighbors(v).for_each([&](std::size_t u) {
            nbr[v] |= std::uint32_t{1} << u;
        });
    std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);
    for (int v = 0; v < n; ++v)
        reach[std::uint32_t{1} << v] = std::uint32_t{1} << v;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
        std::uint32_t ends = reach[mask];
        while (ends) {
            int v = std::countr_zero(ends);
            ends &= ends - 1;
            std::uint32_t ext = nbr[v] & ~mask;
            while (ext) {
                int u = std::countr_zero(ext);
                ext &= ext - 1;
                reach[mask | (std::uint32_t{1} << u)] |= std::uint32_t{1} << u;
            }
        }
    }
    return reach;
}

} // namespace detail

// Length (in edges) of a longest simple path; 0 for edgeless graphs.
// Disconnected graphs take the max over components.
inline int longest_path_length(const Graph& g, int cap = kExactCap) {
    if (g.n() > cap)
        throw cap_exceeded("longest_path_length: n exceeds exact-search cap");
    if (g.n() == 0) return 0;
    auto reach = detail::path_dp(g);
    int best = 0;
    for (std::uint32_t mask = 1; mask < reach.size(); ++mask)
        if (reach[mask])
            best = std::max(best, std::popcount(mask) - 1);
    return best;
}

// Some Hamilton cycle of g, as a vertex sequence of length n, or nullopt.
inline std::optional<std::vector<int>> hamiltonian_cycle(const Graph& g,
                                                         int cap = kExactCap) {
    if (g.n() > cap)
        throw cap_exceeded("hamiltonian_cycle: n exceeds exact-search cap");
    const int n = g.n();
    if (n < 3) return std::nullopt;
    std::vector<std::uint32_t> nbr(n, 0);
    for (int v = 0; v < n; ++v)
        g.neighbors(v).for_each([&](std::size_t u) {
            nbr[v] |= std::uint32_t{1} << u;
        });
    // Paths anchored at vertex 0.
    const std::uint32_t full = (n == 32) ? ~std::uint32_t{0}
                                         : (std::uint32_t{1} << n) - 1;
    std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);
    reach[1] = 1;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
        if (!(mask & 1)) continue;
        std::uint32_t ends = reach[mask];
        while (ends) {
            int v = std::countr_zero(ends);
            ends &= ends - 1;
            std::uint32_t ext = nbr[v] & ~mask;
            while (ext) {
                int u = std::countr_zero(ext);
                ext &= ext - 1;
                reach[mask | (std::uint32_t{1} << u)] |= std::uint32_t{1} << u;
            }
        }
    }
    std::uint32_t closers = reach[full] & nbr[0];
    if (!closers) return std::nullopt;
    // Walk the table backwards to recover one cycle.
    std::vector<int> cycle;
    int v = std::countr_zero(closers);
    std::uint32_t mask = full;
    while (true) {
        cycle.push_back(v);
        if (v == 0) break;
        std::uint32_t prev_mask = mask & ~(std::uint32_t{1} << v);
        std::uint32_t cand = reach[prev_mask] & nbr[v];
        v = std::countr_zero(cand);
        mask = prev_mask;
    }
    std::reverse(cycle.begin(), cycle.end());
    return cycle;
}

// Linear-time check that `cycle` is a spanning cycle of g.
inline bool verify_hamiltonian_cycle(const Graph& g,
                                     const std::vector<int>& cycle) {
    const int n = g.n();
    if (n < 3 || static_cast<int>(cycle.size()) != n) return false;
    std::vector<bool> seen(n, false);
    for (int v : cycle) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = true;
    }
    for (int i = 0; i < n; ++i)
        if (!g.has_edge(cycle[i], cycle[(i + 1) % n])) return false;
    return true;
}

inline bool is_hamiltonian(const Graph& g, int cap = kExactCap) {
    return hamiltonian_cycle(g, cap).has_value();
}

// --- edge-list serialization ------------------------------------------------
//
// Plain text: first line "n m", then m lines "u v" with u < v, sorted
// lexicographically.

inline void write_edge_list(const Graph& g, std::ostream& os) {
    os << g.n() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

inline std::string to_edge_list(const Graph& g) {
    std::ostringstream os;
    write_edge_list(g, os);
    return os.str();
}

inline Graph read_edge_list(std::istream& is) {
    long long n = -1, m = -1;
    if (!(is >> n >> m) || n < 0 || m < 0)
        throw invalid_input("edge list: bad header");
    Graph g(static_cast<int>(n));
    Edge prev{-1, -1};
    for (long long i = 0; i < m; ++i) {
        int u, v;
        if (!(is >> u >> v)) throw invalid_input("edge list: truncated");
        if (u >= v) throw invalid_input("edge list: edges must satisfy u < v");
        Edge e{u, v};
        if (!(prev < e))
            throw invalid_input("edge list: edges must be sorted and unique");
        prev = e;
        g.add_edge(u, v);
    }
    return g;
}

inline Graph graph_from_edge_list(const std::string& text) {
    std::istringstream is(text);
    return read_edge_list(is);
}

// Induced subgraph on `keep`, relabeled to 0..|keep|-1 preserving order.
inline Graph induced_subgraph(const Graph& g, const VertexSet& keep) {
    detail::check_vertex_set(g, keep, "induced_subgraph");
    std::vector<int> map(static_cast<std::size_t>(g.n()), -1);
    int next_id = 0;
    keep.for_each([&](std::size_t v) { map[v] = next_id++; });
    Graph out(next_id);
    keep.for_each([&](std::size_t v) {
        VertexSet nb = g.neighbors(static_cast<int>(v)) & keep;
        nb.for_each([&](std::size_t w) {
            if (w > v) out.add_edge(map[v], map[w]);
        });
    });
    return out;
}

} // namespace mbg
