#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "mbg/graph.hpp"
#include "mbg/matching.hpp"

namespace mbg {

inline bool has_min_degree(const Graph& g, int k) {
    if (k < 0) throw invalid_input("has_min_degree: negative k");
    if (k == 0) return true;
    return g.min_degree() >= k;
}

inline std::function<bool(const Graph&)> min_degree_property(int k) {
    return [k](const Graph& g) { return has_min_degree(g, k); };
}

// --- max flow (for connectivity checks) --------------------------------------

namespace detail {

// Small BFS-augmentation max flow; capacities are tiny here and augmentation
// stops once `enough` is reached.
class FlowNetwork {
public:
    explicit FlowNetwork(int nodes) : head_(nodes, -1) {}

    void add_arc(int from, int to, int cap) {
        arcs_.push_back({to, head_[from], cap});
        head_[from] = static_cast<int>(arcs_.size()) - 1;
        arcs_.push_back({from, head_[to], 0});
        head_[to] = static_cast<int>(arcs_.size()) - 1;
    }

    int max_flow(int s, int t, int enough) {
        int flow = 0;
        while (flow < enough) {
            std::vector<int> via(head_.size(), -1);
            std::queue<int> q;
            q.push(s);
            via[s] = -2;
            while (!q.empty() && via[t] == -1) {
                int v = q.front();
                q.pop();
                for (int a = head_[v]; a != -1; a = arcs_[a].next) {
                    if (arcs_[a].cap > 0 && via[arcs_[a].to] == -1) {
                        via[arcs_[a].to] = a;
                        q.push(arcs_[a].to);
                    }
                }
            }
            if (via[t] == -1) break;
            for (int v = t; v != s;) {
                int a = via[v];
                arcs_[a].cap -= 1;
                arcs_[a ^ 1].cap += 1;
                v = arcs_[a ^ 1].to;
            }
            ++flow;
        }
        return flow;
    }

private:
    struct Arc {
        int to, next, cap;
    };
    std::vector<int> head_;
    std::vector<Arc> arcs_;
};

// Number of internally vertex-disjoint u-v paths, capped at `enough`.
inline int vertex_disjoint_paths(const Graph& g, int s, int t, int enough) {
    const int n = g.n();
    FlowNetwork net(2 * n);
    const int big = n + 1;
    for (int v = 0; v < n; ++v)
        net.add_arc(2 * v, 2 * v + 1, (v == s || v == t) ? big : 1);
    for (const Edge& e : g.edges()) {
        net.add_arc(2 * e.u + 1, 2 * e.v, big);
        net.add_arc(2 * e.v + 1, 2 * e.u, big);
    }
    return net.max_flow(2 * s + 1, 2 * t, enough);
}

inline int edge_disjoint_paths(const Graph& g, int s, int t, int enough) {
    FlowNetwork net(g.n());
    for (const Edge& e : g.edges()) {
        net.add_arc(e.u, e.v, 1);
        net.add_arc(e.v, e.u, 1);
    }
    return net.max_flow(s, t, enough);
}

} // namespace detail

// Menger route: n >= k+1 and k internally disjoint paths between every
// non-adjacent pair.
inline bool is_k_vertex_connected(const Graph& g, int k) {
    const int n = g.n();
    if (k < 1 || k > n - 1)
        throw invalid_input("is_k_vertex_connected: k out of range");
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.has_edge(u, v) &&
                detail::vertex_disjoint_paths(g, u, v, k) < k)
                return false;
    return true;
}

inline constexpr int kSeparatorCap = 12;

// Independent route for small n: no vertex set of size < k disconnects g.
inline bool is_k_vertex_connected_separator(const Graph& g, int k,
                                            int cap = kSeparatorCap) {
    const int n = g.n();
    if (k < 1 || k > n - 1)
        throw invalid_input("is_k_vertex_connected_separator: k out of range");
    if (n > cap)
        throw cap_exceeded("is_k_vertex_connected_separator: n exceeds cap");
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        if (std::popcount(mask) >= k) continue;
        VertexSet alive(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v)
            if (!((mask >> v) & 1)) alive.set(static_cast<std::size_t>(v));
        if (component_stats(g, alive).count > 1) return false;
    }
    return true;
}

inline bool is_k_edge_connected(const Graph& g, int k) {
    const int n = g.n();
    if (k < 1 || k > n - 1)
        throw invalid_input("is_k_edge_connected: k out of range");
    // Global edge connectivity is min over t of lambda(0, t).
    for (int t = 1; t < n; ++t)
        if (detail::edge_disjoint_paths(g, 0, t, k) < k) return false;
    return true;
}

// --- expander-side conditions -------------------------------------------------

inline constexpr std::size_t kEnumCap = 10'000'000;

// Number of subsets of size 1..max_size of an n-element set, clamped.
inline std::size_t subset_count(int n, int max_size) {
    long double total = 0, binom = 1;
    for (int i = 1; i <= max_size && i <= n; ++i) {
        binom = binom * (n - i + 1) / i;
        total += binom;
        if (total > 1e18L) return std::numeric_limits<std::size_t>::max();
    }
    return static_cast<std::size_t>(total);
}

// Number of unordered pairs of disjoint r-subsets, clamped.
inline std::size_t disjoint_pair_count(int n, int r) {
    if (r < 1 || 2 * r > n) return 0;
    long double a = 1, b = 1;
    for (int i = 1; i <= r; ++i) {
        a = a * (n - i + 1) / i;
        b = b * (n - r - i + 1) / i;
        if (a * b / 2 > 1e18L) return std::numeric_limits<std::size_t>::max();
    }
    return static_cast<std::size_t>(a * b / 2);
}

struct ExpanderParams {
    double R = 1; // vertex-set size bound, >= 1
    double c = 1; // expansion factor, > 0
};

struct ExpanderResult {
    bool ok = false;
    std::optional<VertexSet> witness; // violating U when !ok
    explicit operator bool() const { return ok; }
};

namespace detail {

// Depth-first lexicographic enumeration of subsets up to max_size, keeping an
// incremental union of neighborhoods. visit(U, closed_nbhd) must return true
// to continue.
template <typename Visit>
bool enumerate_subsets(const Graph& g, int max_size, Visit&& visit) {
    const int n = g.n();
    VertexSet members(static_cast<std::size_t>(n));
    VertexSet closed(static_cast<std::size_t>(n)); // union of N(v), may hit U
    std::vector<VertexSet> saved;
    saved.reserve(static_cast<std::size_t>(max_size));

    struct Frame {
        int next_vertex;
    };
    std::vector<int> chosen;
    // Recursive lambda via explicit stack keeps this allocation-light.
    std::function<bool(int)> rec = [&](int first) -> bool {
        if (static_cast<int>(chosen.size()) == max_size) return true;
        for (int v = first; v < n; ++v) {
            chosen.push_back(v);
            saved.push_back(closed);
            members.set(static_cast<std::size_t>(v));
            closed |= g.neighbors(v);
            if (!visit(members, closed)) return false;
            if (!rec(v + 1)) return false;
            closed = saved.back();
            saved.pop_back();
            members.reset(static_cast<std::size_t>(v));
            chosen.pop_back();
        }
        return true;
    };
    return rec(0);
}

} // namespace detail

// Exhaustive check that every U with 1 <= |U| <= R has |N(U)| >= c|U|.
inline ExpanderResult is_rc_expander(const Graph& g, ExpanderParams params,
                                     std::size_t enum_cap = kEnumCap) {
    if (params.R < 1 || params.c <= 0)
        throw invalid_input("is_rc_expander: need R >= 1, c > 0");
    const int max_size =
        static_cast<int>(std::min<double>(std::floor(params.R), g.n()));
    if (subset_count(g.n(), max_size) > enum_cap)
        throw cap_exceeded("is_rc_expander: subset enumeration exceeds cap");
    ExpanderResult res;
    res.ok = detail::enumerate_subsets(
        g, max_size, [&](const VertexSet& u, const VertexSet& closed) {
            std::size_t nbhd = (closed - u).count();
            if (static_cast<double>(nbhd) <
                params.c * static_cast<double>(u.count())) {
                res.witness = u;
                return false;
            }
            return true;
        });
    return res;
}

inline ExpanderResult is_rc_expander(const Graph& g, double R, double c,
                                     std::size_t enum_cap = kEnumCap) {
    return is_rc_expander(g, ExpanderParams{R, c}, enum_cap);
}

namespace detail {

// Every subset U with 1 <= |U| < limit satisfies e(U) <= bound_per_vertex*|U|.
inline bool sparse_small_sets(const Graph& g, double limit,
                              double bound_per_vertex, std::size_t enum_cap) {
    int max_size = static_cast<int>(std::ceil(limit)) - 1;
    if (std::floor(limit) == limit) max_size = static_cast<int>(limit) - 1;
    max_size = std::min(max_size, g.n());
    if (max_size < 1) return true;
    if (subset_count(g.n(), max_size) > enum_cap)
        throw cap_exceeded("small-set check: subset enumeration exceeds cap");
    return enumerate_subsets(
        g, max_size, [&](const VertexSet& u, const VertexSet&) {
            return static_cast<double>(edges_within(g, u)) <=
                   bound_per_vertex * static_cast<double>(u.count());
        });
}

// Every unordered pair of disjoint r-subsets satisfies
// pred(e(U,W)). Enumerates with min(U) < min(W).
template <typename Pred>
bool all_disjoint_pairs(const Graph& g, int r, std::size_t enum_cap,
                        Pred&& pred) {
    const int n = g.n();
    if (2 * r > n) return true; // no pairs exist
    if (disjoint_pair_count(n, r) > enum_cap)
        throw cap_exceeded("pair check: enumeration exceeds cap");
    std::vector<int> u(r), w(r);
    std::function<bool(int, int)> pick_w = [&](int depth, int first) -> bool {
        if (depth == r) {
            VertexSet us(static_cast<std::size_t>(n)),
                ws(static_cast<std::size_t>(n));
            for (int x : u) us.set(static_cast<std::size_t>(x));
            for (int x : w) ws.set(static_cast<std::size_t>(x));
            return pred(us, ws, edges_between(g, us, ws));
        }
        for (int v = first; v < n; ++v) {
            bool in_u = false;
            for (int x : u) in_u |= (x == v);
            if (in_u) continue;
            w[depth] = v;
            if (!pick_w(depth + 1, v + 1)) return false;
        }
        return true;
    };
    std::function<bool(int, int)> pick_u = [&](int depth, int first) -> bool {
        if (depth == r) return pick_w(0, u[0] + 1); // min(W) > min(U)
        for (int v = first; v < n; ++v) {
            u[depth] = v;
            if (!pick_u(depth + 1, v + 1)) return false;
        }
        return true;
    };
    return pick_u(0, 0);
}

} // namespace detail

// Sufficient conditions for expansion: small sets span few edges (relative to
// the minimum degree) and every two disjoint r-sets are joined by an edge.
// When both hold with r <= n/(c+2), the graph is a ((n-r)/(c+1), c)-expander.
inline bool check_m1_m2(const Graph& g, int r, double c,
                        std::size_t enum_cap = kEnumCap) {
    if (r < 1) throw invalid_input("check_m1_m2: need r >= 1");
    if (static_cast<double>(r) > g.n() / (c + 2))
        throw precondition_failed("check_m1_m2: r > n/(c+2)");
    double m1_bound = g.min_degree() / (2.0 * (c + 1.0));
    if (!detail::sparse_small_sets(g, (c + 1.0) * r, m1_bound, enum_cap))
        return false;
    return detail::all_disjoint_pairs(
        g, r, enum_cap,
        [](const VertexSet&, const VertexSet&, std::size_t e) { return e > 0; });
}

// Q1: every U with 1 <= |U| < (c+1)r spans at most eps*delta*|U|/(10(c+1)).
inline bool check_q1(const Graph& g, double eps, double c, int r,
                     std::size_t enum_cap = kEnumCap) {
    if (r < 1) throw invalid_input("check_q1: need r >= 1");
    double bound = eps * g.min_degree() / (10.0 * (c + 1.0));
    return detail::sparse_small_sets(g, (c + 1.0) * r, bound, enum_cap);
}

// Q2: every two disjoint r-sets are joined by at least K*r*ln(n/r) edges.
inline bool check_q2(const Graph& g, int r, double K,
                     std::size_t enum_cap = kEnumCap) {
    if (r < 1) throw invalid_input("check_q2: need r >= 1");
    if (r >= g.n()) throw invalid_input("check_q2: need r < n");
    double bound = K * r * std::log(static_cast<double>(g.n()) / r);
    return detail::all_disjoint_pairs(
        g, r, enum_cap,
        [bound](const VertexSet&, const VertexSet&, std::size_t e) {
            return static_cast<double>(e) >= bound;
        });
}

// Non-edges whose addition creates a Hamilton cycle or strictly lengthens a
// longest path. For a Hamiltonian graph every non-edge qualifies.
inline std::vector<Edge> boosters(const Graph& g, int cap = kExactCap) {
    if (g.n() > cap) throw cap_exceeded("boosters: n exceeds exact-search cap");
    std::vector<Edge> nes = g.non_edges();
    if (is_hamiltonian(g, cap)) return nes;
    int base_len = longest_path_length(g, cap);
    std::vector<Edge> out;
    for (const Edge& e : nes) {
        Graph h = g;
        h.add_edge(e);
        if (is_hamiltonian(h, cap) || longest_path_length(h, cap) > base_len)
            out.push_back(e);
    }
    return out;
}

} // namespace mbg
