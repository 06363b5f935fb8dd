#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <queue>

#include "mbg/verifiers.hpp"
#include "oracles.hpp"

using namespace mbg;
using oracle::complete_bipartite;
using oracle::complete_graph;
using oracle::cycle_graph;
using oracle::path_graph;
using oracle::star_graph;

namespace {

VertexSet vs(int n, std::initializer_list<int> bits) {
    return VertexSet(static_cast<std::size_t>(n), bits);
}

int bfs_distance(const Graph& g, int s, int t) {
    std::vector<int> dist(static_cast<std::size_t>(g.n()), -1);
    std::queue<int> q;
    q.push(s);
    dist[static_cast<std::size_t>(s)] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (v == t) return dist[static_cast<std::size_t>(v)];
        g.neighbors(v).for_each([&](std::size_t u) {
            if (dist[u] == -1) {
                dist[u] = dist[static_cast<std::size_t>(v)] + 1;
                q.push(static_cast<int>(u));
            }
        });
    }
    return -1;
}

} // namespace

TEST_CASE("minimum degree") {
    CHECK(has_min_degree(cycle_graph(5), 2));
    CHECK(!has_min_degree(cycle_graph(5), 3));
    CHECK(has_min_degree(Graph(4), 0));
    CHECK_THROWS_AS(has_min_degree(Graph(4), -1), invalid_input);
}

TEST_CASE("vertex and edge connectivity on named graphs") {
    Graph c5 = cycle_graph(5);
    CHECK(is_k_vertex_connected(c5, 2));
    CHECK(is_k_edge_connected(c5, 2));
    CHECK(!is_k_vertex_connected(c5, 3));

    Graph p4 = path_graph(4);
    CHECK(is_k_vertex_connected(p4, 1));
    CHECK(!is_k_vertex_connected(p4, 2));
    CHECK(!is_k_edge_connected(p4, 2));

    // K_5 minus two disjoint edges is still 2-vertex-connected.
    Graph g = complete_graph(5);
    g.remove_edge(0, 1);
    g.remove_edge(2, 3);
    CHECK(is_k_vertex_connected(g, 2));
    CHECK(is_k_vertex_connected_separator(g, 2));

    CHECK(is_k_vertex_connected(complete_graph(5), 4));
    CHECK(is_k_edge_connected(complete_graph(4), 3));
    CHECK_THROWS_AS(is_k_vertex_connected(c5, 5), invalid_input);
    CHECK_THROWS_AS(is_k_vertex_connected(c5, 0), invalid_input);
}

TEST_CASE("flow route and separator route agree") {
    Rng rng(0xBEEF, 1);
    for (int trial = 0; trial < 150; ++trial) {
        int n = 4 + static_cast<int>(rng.below(5)); // 4..8
        Graph g = oracle::random_graph(n, 0.3 + 0.5 * rng.unit(), rng);
        for (int k = 1; k < n && k <= 4; ++k) {
            CAPTURE(trial);
            CAPTURE(k);
            CHECK(is_k_vertex_connected(g, k) ==
                  is_k_vertex_connected_separator(g, k));
        }
    }
}

TEST_CASE("matching on named graphs") {
    CHECK(max_matching_size(star_graph(3)) == 1);
    CHECK(max_matching_size(complete_graph(4)) == 2);
    CHECK(max_matching_size(cycle_graph(5)) == 2);
    CHECK(has_perfect_matching(cycle_graph(4)));
    CHECK(!has_perfect_matching(star_graph(3)));
    CHECK(has_perfect_matching(cycle_graph(5))); // floor(5/2)=2 suffices

    auto bt_star = berge_tutte_value(star_graph(3));
    CHECK(bt_star.value == 2);
    CHECK(bt_star.s == vs(4, {0})); // removing the center leaves 3 odd bits

    auto bt_k4 = berge_tutte_value(complete_graph(4));
    CHECK(bt_k4.value == 4);
    CHECK(bt_k4.s.none());
    CHECK_THROWS_AS(berge_tutte_value(complete_graph(15)), cap_exceeded);
}

TEST_CASE("matching routes agree: blossom, deficiency form, enumeration") {
    Rng rng(0xBEEF, 2);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng.below(9)); // 2..10
        Graph g = oracle::random_graph(n, rng.unit(), rng);
        std::size_t blossom = max_matching_size(g);
        CHECK(blossom == oracle::enumerate_max_matching(g));
        if (n <= 9) {
            auto bt = berge_tutte_value(g);
            CHECK(static_cast<std::size_t>(bt.value) == 2 * blossom);
            CHECK(bt.value % 2 == 0);
        }
    }
    // A blossom-heavy instance: two triangles joined by a bridge.
    Graph g(6);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    g.add_edge(4, 5);
    g.add_edge(3, 5);
    CHECK(max_matching_size(g) == 3);
}

TEST_CASE("expander verifier on named graphs") {
    CHECK(is_rc_expander(cycle_graph(5), 1, 2).ok);
    auto bad = is_rc_expander(cycle_graph(5), 2, 2);
    CHECK(!bad.ok);
    REQUIRE(bad.witness.has_value());
    CHECK(*bad.witness == vs(5, {0, 1}));
    CHECK(is_rc_expander(complete_bipartite(3, 3), 2, 1).ok);
    CHECK_THROWS_AS(is_rc_expander(cycle_graph(5), 0.5, 1), invalid_input);
}

TEST_CASE("M1+M2 imply expansion") {
    Graph k8 = complete_graph(8);
    CHECK(check_m1_m2(k8, 2, 1.0));
    CHECK(is_rc_expander(k8, (8 - 2) / 2.0, 1.0).ok);

    // C_5 with r=1, c=1: non-adjacent singleton pairs break M2.
    CHECK(!check_m1_m2(cycle_graph(5), 1, 1.0));
    CHECK(!check_m1_m2(Graph(6), 1, 1.0));
    CHECK_THROWS_AS(check_m1_m2(cycle_graph(5), 2, 1.0), precondition_failed);

    // The implication, on random instances that happen to satisfy M1+M2.
    Rng rng(0xBEEF, 3);
    int verified = 0;
    for (int trial = 0; trial < 400; ++trial) {
        int n = 6 + static_cast<int>(rng.below(7)); // 6..12
        Graph g = oracle::random_graph(n, 0.5 + 0.5 * rng.unit(), rng);
        int r = 1 + static_cast<int>(rng.below(2));
        double c = 1.0 + static_cast<int>(rng.below(2));
        if (static_cast<double>(r) > n / (c + 2)) continue;
        if (!check_m1_m2(g, r, c)) continue;
        ++verified;
        CHECK(is_rc_expander(g, (n - r) / (c + 1), c).ok);
    }
    CHECK(verified > 20);
}

TEST_CASE("Q1 and Q2") {
    Graph empty(6);
    CHECK(check_q1(empty, 0.4, 1.0, 2));  // delta=0 forces bound 0 = e(U)
    CHECK(!check_q2(empty, 2, 0.5));      // positive demand, no edges
    CHECK_THROWS_AS(check_q2(empty, 6, 0.5), invalid_input);

    Graph k8 = complete_graph(8);
    // bound = 0.1 * 2 * ln(4) ~ 0.277; disjoint pairs of 2-sets span 4 edges
    CHECK(check_q2(k8, 2, 0.1));
    CHECK(!check_q2(k8, 2, 10.0));

    // C_5: only singletons are below (c+1)r = 2, and they span nothing.
    CHECK(check_q1(cycle_graph(5), 0.4, 1.0, 1));
    // K_8 with a larger range: pairs span an edge, bound is tiny.
    CHECK(!check_q1(k8, 0.4, 1.0, 2));
}

TEST_CASE("boosters on named graphs") {
    auto b_p4 = boosters(path_graph(4));
    REQUIRE(b_p4.size() == 1);
    CHECK(b_p4[0] == Edge{0, 3});

    Graph two_edges(4);
    two_edges.add_edge(0, 1);
    two_edges.add_edge(2, 3);
    auto b2 = boosters(two_edges);
    CHECK(std::find(b2.begin(), b2.end(), Edge{1, 2}) != b2.end());

    auto b_c4 = boosters(cycle_graph(4)); // Hamiltonian: every non-edge
    CHECK(b_c4.size() == 2);
    CHECK(b_c4[0] == Edge{0, 2});
    CHECK(b_c4[1] == Edge{1, 3});

    CHECK_THROWS_AS(boosters(Graph(21)), cap_exceeded);
}

TEST_CASE("booster count bound on verified non-Hamiltonian expanders") {
    // K_{3,4} is connected, non-Hamiltonian, and a (1,2)-expander.
    Graph g = complete_bipartite(3, 4);
    CHECK(is_connected(g));
    CHECK(!is_hamiltonian(g));
    CHECK(is_rc_expander(g, 1, 2).ok);
    CHECK(static_cast<double>(boosters(g).size()) >= 1.0 * 1.0 / 2);

    // Monitored over random sparse graphs: whenever a connected
    // non-Hamiltonian graph verifies as an (R,2)-expander, check the bound
    // at the largest integer R that verifies.
    Rng rng(0xBEEF, 4);
    int applicable = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int n = 6 + static_cast<int>(rng.below(5)); // 6..10
        Graph h = oracle::random_graph(n, 0.25 + 0.3 * rng.unit(), rng);
        if (!is_connected(h) || is_hamiltonian(h)) continue;
        int best_r = 0;
        for (int R = 1; R <= n; ++R) {
            if (!is_rc_expander(h, R, 2).ok) break;
            best_r = R;
        }
        if (best_r == 0) continue;
        ++applicable;
        CHECK(static_cast<double>(boosters(h).size()) >=
              best_r * best_r / 2.0);
    }
    CHECK(applicable > 0);
}

TEST_CASE("removing a spread-out set keeps expansion (one unit lower)") {
    Rng rng(0xBEEF, 5);
    int applicable = 0;
    for (int trial = 0; trial < 400; ++trial) {
        int n = 7 + static_cast<int>(rng.below(5)); // 7..11
        Graph g = oracle::random_graph(n, 0.45 + 0.35 * rng.unit(), rng);
        double c = 2.0;
        double R = 2.0 + static_cast<int>(rng.below(2));
        if (!is_rc_expander(g, R, c).ok) continue;
        // Greedy independent U with pairwise-disjoint neighborhoods.
        VertexSet u(static_cast<std::size_t>(n));
        VertexSet blocked(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) {
            if (blocked.test(static_cast<std::size_t>(v))) continue;
            if (g.neighbors(v).intersects(u)) continue;
            bool shares = false;
            u.for_each([&](std::size_t w) {
                if (g.neighbors(static_cast<int>(w))
                        .intersects(g.neighbors(v)))
                    shares = true;
            });
            if (shares) continue;
            u.set(static_cast<std::size_t>(v));
            blocked |= g.neighbors(v);
        }
        if (u.none() || u.count() == static_cast<std::size_t>(n)) continue;
        ++applicable;
        Graph rest = induced_subgraph(g, g.all_vertices() - u);
        CHECK(is_rc_expander(rest, std::min<double>(R, rest.n()), c - 1).ok);
    }
    CHECK(applicable > 30);
}

TEST_CASE("attaching far-apart low-degree vertices costs one unit") {
    Rng rng(0xBEEF, 6);
    int applicable = 0;
    for (int trial = 0; trial < 500 && applicable < 40; ++trial) {
        int n0 = 8 + static_cast<int>(rng.below(4)); // 8..11
        Graph h = oracle::random_graph(n0, 0.5 + 0.3 * rng.unit(), rng);
        double c = 2.0 + static_cast<int>(rng.below(2)); // 2 or 3
        double R = 2.0;
        if (!is_rc_expander(h, R, c).ok) continue;
        // New vertex with ceil(c-1) attachments pairwise at distance >= 3.
        int want = static_cast<int>(std::ceil(c - 1.0));
        std::vector<int> attach;
        for (int v = 0; v < n0 && static_cast<int>(attach.size()) < want; ++v) {
            bool far = true;
            for (int a : attach) {
                int d = bfs_distance(h, a, v);
                if (d >= 0 && d < 3) far = false;
            }
            if (far) attach.push_back(v);
        }
        if (static_cast<int>(attach.size()) < want) continue;
        Graph g(n0 + 1);
        for (const Edge& e : h.edges()) g.add_edge(e);
        for (int a : attach) g.add_edge(a, n0);
        ++applicable;
        CHECK(is_rc_expander(g, R, c - 1).ok);
    }
    CHECK(applicable > 0);
}

TEST_CASE("strong enough expansion forces k-connectivity") {
    Rng rng(0xBEEF, 7);
    int applicable = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int n = 7 + static_cast<int>(rng.below(5)); // 7..11
        Graph g = oracle::random_graph(n, 0.5 + 0.4 * rng.unit(), rng);
        for (int k : {1, 2}) {
            double c = static_cast<double>(k) + static_cast<int>(rng.below(2));
            double R = std::ceil((n + k) / (2.0 * c));
            if (R < 1 || subset_count(n, static_cast<int>(R)) > 2'000'000)
                continue;
            if (!is_rc_expander(g, R, c).ok) continue;
            ++applicable;
            CHECK(is_k_vertex_connected(g, k));
        }
    }
    CHECK(applicable > 20);
}
