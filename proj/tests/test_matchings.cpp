#include <catch2/catch_amalgamated.hpp>
#include <map>
#include <random>
#include <set>

#include "flipgraphs/matchings.hpp"
#include "flipgraphs/signed_perms.hpp"

using namespace flipgraphs;

namespace {

// Worked fixtures with the vertex encoding i+ -> 2i, i- -> 2i+1.
// The hexagon matching {0+1+},{1-2-},{0-2+} has type (3) and label (1-2+).
PerfectMatching hexagon_matching() {
    PerfectMatching m;
    m.partner = {2, 4, 0, 5, 1, 3};
    return m;
}

// {0+0-},{1+2-},{1-2+}: one shared edge with M0, type (2,1), label ()(2+).
PerfectMatching shared_edge_matching() {
    PerfectMatching m;
    m.partner = {1, 0, 5, 4, 3, 2};
    return m;
}

int count_common_neighbors(const Graph& g, int u, int v) {
    int c = 0;
    for (int w : g.neighbors(u))
        if (g.has_edge(v, w)) ++c;
    return c;
}

std::multiset<int> multiset_of(const std::vector<int>& v) { return {v.begin(), v.end()}; }

// Prop 3.3: neighbor types agree, merge two parts, or split one part.
bool is_type_transition(const std::vector<int>& a, const std::vector<int>& b) {
    if (a == b) return true;
    auto check_merge = [](const std::vector<int>& from, const std::vector<int>& to) {
        if (from.size() != to.size() + 1) return false;
        auto mf = multiset_of(from), mt = multiset_of(to);
        std::vector<int> only_from, only_to;
        for (int x : mf)
            if (mt.count(x)) mt.erase(mt.find(x));
            else only_from.push_back(x);
        auto mf2 = multiset_of(from);
        for (int x : multiset_of(to))
            if (mf2.count(x)) mf2.erase(mf2.find(x));
            else only_to.push_back(x);
        return only_from.size() == 2 && only_to.size() == 1 &&
               only_from[0] + only_from[1] == only_to[0];
    };
    return check_merge(a, b) || check_merge(b, a);
}

}  // namespace

TEST_CASE("enumeration counts and order") {
    REQUIRE(enumerate_perfect_matchings(1).size() == 1);
    REQUIRE(enumerate_perfect_matchings(2).size() == 3);
    REQUIRE(enumerate_perfect_matchings(3).size() == 15);
    REQUIRE(enumerate_perfect_matchings(4).size() == 105);
    REQUIRE(enumerate_perfect_matchings(5).size() == 945);

    for (int n : {2, 3, 4}) {
        auto all = enumerate_perfect_matchings(n);
        REQUIRE(all[0] == identity_matching(n));
        for (int i = 0; i < static_cast<int>(all.size()); ++i) {
            validate_matching(all[i]);
            REQUIRE(matching_rank(all[i]) == i);
            REQUIRE(matching_unrank(n, i) == all[i]);
        }
    }
    REQUIRE_THROWS_AS(enumerate_perfect_matchings(9), std::invalid_argument);
    REQUIRE_THROWS_AS(enumerate_perfect_matchings(0), std::invalid_argument);
}

TEST_CASE("flip neighbors") {
    auto all2 = enumerate_perfect_matchings(2);
    auto nb = flip_neighbors(all2[0]);
    REQUIRE(nb.size() == 2);
    std::set<std::string> got{matching_to_string(nb[0]), matching_to_string(nb[1])};
    REQUIRE(got == std::set<std::string>{"0-2,1-3", "0-3,1-2"});

    std::mt19937 rng(7);
    for (int n : {3, 4, 5}) {
        std::uniform_int_distribution<long long> pick(0, (n == 3 ? 14 : n == 4 ? 104 : 944));
        PerfectMatching m = matching_unrank(n, pick(rng));
        auto xs = flip_neighbors(m);
        REQUIRE(static_cast<int>(xs.size()) == n * (n - 1));
        std::set<std::string> distinct;
        for (const auto& x : xs) {
            validate_matching(x);
            REQUIRE_FALSE(x == m);
            distinct.insert(matching_to_string(x));
        }
        REQUIRE(distinct.size() == xs.size());
    }

    auto nb3 = flip_neighbors(identity_matching(3));
    REQUIRE(nb3.size() == 6);
    for (const auto& x : nb3) REQUIRE(type_of(x).parts == std::vector<int>{2, 1});
}

TEST_CASE("flip graph construction") {
    FlipGraph f2 = build_flip_graph(2);
    REQUIRE(f2.graph.num_vertices() == 3);
    REQUIRE(f2.graph.num_edges() == 3);  // K_3

    FlipGraph f3 = build_flip_graph(3);
    REQUIRE(f3.graph.num_vertices() == 15);
    REQUIRE(f3.graph.is_regular());
    REQUIRE(f3.graph.degree(0) == 6);
    REQUIRE(connected_components(f3.graph).size() == 1);
    // strongly regular (15, 6, 1, 3)
    for (int u = 0; u < 15; ++u)
        for (int v = u + 1; v < 15; ++v)
            REQUIRE(count_common_neighbors(f3.graph, u, v) == (f3.graph.has_edge(u, v) ? 1 : 3));

    FlipGraph f4 = build_flip_graph(4);
    REQUIRE(f4.graph.num_vertices() == 105);
    REQUIRE(f4.graph.is_regular());
    REQUIRE(f4.graph.degree(0) == 12);

    // threaded build must match the single-threaded adjacency exactly
    FlipGraph f4t = build_flip_graph(4, 2);
    REQUIRE(f4t.graph.edges() == f4.graph.edges());
}

TEST_CASE("types and labels from the worked examples") {
    REQUIRE(type_of(identity_matching(4)).parts == std::vector<int>{1, 1, 1, 1});
    REQUIRE(label_of(identity_matching(4)).to_string() == "()()()()");

    REQUIRE(type_of(hexagon_matching()).parts == std::vector<int>{3});
    REQUIRE(label_of(hexagon_matching()).to_string() == "(1-2+)");

    REQUIRE(type_of(shared_edge_matching()).parts == std::vector<int>{2, 1});
    REQUIRE(label_of(shared_edge_matching()).to_string() == "()(2+)");
}

TEST_CASE("type equals segment lengths plus one") {
    for (const auto& m : enumerate_perfect_matchings(4)) {
        auto label = label_of(m);
        std::vector<int> parts;
        for (const auto& seg : label.segments) parts.push_back(static_cast<int>(seg.size()) + 1);
        std::sort(parts.rbegin(), parts.rend());
        REQUIRE(parts == type_of(m).parts);
    }
}

TEST_CASE("matching distance is the BFS distance") {
    auto m = matching_unrank(4, 17);
    REQUIRE(matching_distance(m, m) == 0);

    for (int n : {3, 4}) {
        FlipGraph fg = build_flip_graph(n);
        for (int i = 0; i < fg.graph.num_vertices(); ++i)
            if (type_of(fg.matchings[i]).parts == std::vector<int>{n})
                REQUIRE(matching_distance(fg.matchings[0], fg.matchings[i]) == n - 1);

        std::mt19937 rng(n);
        std::uniform_int_distribution<int> pick(0, fg.graph.num_vertices() - 1);
        for (int trial = 0; trial < 60; ++trial) {
            int a = pick(rng), b = pick(rng);
            auto layers = bfs_layers(fg.graph, a);
            REQUIRE(matching_distance(fg.matchings[a], fg.matchings[b]) == layers.dist[b]);
        }
    }
    REQUIRE_THROWS_AS(matching_distance(identity_matching(2), identity_matching(3)),
                      std::invalid_argument);
}

TEST_CASE("diameter and geodesic counts") {
    for (int n : {2, 3, 4}) REQUIRE(diameter(build_flip_graph(n).graph) == n - 1);
    REQUIRE(eccentricity(build_flip_graph(5).graph, 0) == 4);

    // Jennings: geodesics between vertices at distance n-1 number n^{n-2}
    for (int n : {3, 4}) {
        FlipGraph fg = build_flip_graph(n);
        const BigInt expected = n == 3 ? 3 : 16;
        long long far_pairs = 0;
        for (int s = 0; s < fg.graph.num_vertices(); ++s) {
            auto layers = bfs_layers(fg.graph, s);
            for (int v = 0; v < fg.graph.num_vertices(); ++v) {
                if (layers.dist[v] == n - 1) {
                    ++far_pairs;
                    REQUIRE(layers.geodesics[v] == expected);
                }
            }
        }
        REQUIRE(far_pairs > 0);
    }
}

TEST_CASE("type partition") {
    FlipGraph f2 = build_flip_graph(2);
    TypePartition tp2 = type_partition(f2);
    REQUIRE(tp2.cell_types.size() == 2);
    REQUIRE(tp2.cell_types[0].parts == std::vector<int>{2});
    REQUIRE(tp2.cell_types[1].parts == std::vector<int>{1, 1});
    REQUIRE(tp2.partition.cells[0].size() == 2);
    REQUIRE(tp2.partition.cells[1] == std::vector<int>{0});

    FlipGraph f5 = build_flip_graph(5);
    TypePartition tp5 = type_partition(f5);
    std::map<std::vector<int>, std::size_t> sizes;
    for (std::size_t i = 0; i < tp5.cell_types.size(); ++i)
        sizes[tp5.cell_types[i].parts] = tp5.partition.cells[i].size();
    REQUIRE(sizes == std::map<std::vector<int>, std::size_t>{
                         {{1, 1, 1, 1, 1}, 1},
                         {{2, 1, 1, 1}, 20},
                         {{2, 2, 1}, 60},
                         {{3, 1, 1}, 80},
                         {{4, 1}, 240},
                         {{3, 2}, 160},
                         {{5}, 384},
                     });
    // the identity cell is always {M0}
    REQUIRE(tp5.partition.cells.back() == std::vector<int>{0});

    // the partition is equitable (Prop 3.2)
    for (int n : {2, 3, 4}) {
        FlipGraph fg = build_flip_graph(n);
        REQUIRE_NOTHROW(check_equitable(fg.graph, type_partition(fg).partition));
    }
}

TEST_CASE("neighbor types merge, split or stay") {
    for (int n : {2, 3, 4, 5}) {
        FlipGraph fg = build_flip_graph(n);
        std::vector<std::vector<int>> types;
        types.reserve(fg.matchings.size());
        for (const auto& m : fg.matchings) types.push_back(type_of(m).parts);
        for (auto [u, v] : fg.graph.edges()) REQUIRE(is_type_transition(types[u], types[v]));
    }
}

TEST_CASE("type-(n) cell is SR_{n-1} via labels") {
    for (int n : {2, 3, 4}) {
        FlipGraph fg = build_flip_graph(n);
        SrLabelIsomorphism iso = label_isomorphism_to_sr(fg);
        REQUIRE(static_cast<long long>(iso.flip_vertices.size()) == sr_vertex_count(n - 1));
        auto sub = induced_subgraph(fg.graph, iso.flip_vertices);
        REQUIRE(sub.graph.is_regular());
        if (n >= 3) REQUIRE(sub.graph.degree(0) == n * (n - 1) / 2);
    }
}

TEST_CASE("type-(3) cell of M(K_6) is an 8-vertex cubic graph") {
    FlipGraph fg = build_flip_graph(3);
    std::vector<int> cell;
    for (int i = 0; i < fg.graph.num_vertices(); ++i)
        if (type_of(fg.matchings[i]).parts == std::vector<int>{3}) cell.push_back(i);
    REQUIRE(cell.size() == 8);  // 2^2 * 2!
    auto sub = induced_subgraph(fg.graph, cell);
    REQUIRE(sub.graph.is_regular());
    REQUIRE(sub.graph.degree(0) == 3);
}

TEST_CASE("components of type cells are box products of SR factors") {
    for (int n : {3, 4, 5}) {
        FlipGraph fg = build_flip_graph(n);
        TypePartition tp = type_partition(fg);
        for (std::size_t c = 0; c < tp.cell_types.size(); ++c) {
            const auto& parts = tp.cell_types[c].parts;
            long long comp_size = 1;
            long long degree = 0;
            for (int part : parts) {
                comp_size *= sr_vertex_count(part - 1);
                degree += static_cast<long long>(part) * (part - 1) / 2;
            }
            auto sub = induced_subgraph(fg.graph, tp.partition.cells[c]);
            for (int v = 0; v < sub.graph.num_vertices(); ++v)
                REQUIRE(sub.graph.degree(v) == degree);
            auto comps = connected_components(sub.graph);
            REQUIRE(static_cast<long long>(tp.partition.cells[c].size()) ==
                    comp_size * static_cast<long long>(comps.size()));
            for (const auto& comp : comps)
                REQUIRE(static_cast<long long>(comp.size()) == comp_size);

            const bool small_parts =
                std::all_of(parts.begin(), parts.end(), [](int p) { return p <= 3; });
            if (!small_parts) continue;

            // explicit isomorphism of each component onto the box product,
            // cycles ordered by their smallest symbol
            for (const auto& comp : comps) {
                const auto first_coords =
                    matching_coordinates(fg.matchings[tp.partition.cells[c][comp[0]]]);
                Graph box = build_signed_reversal_graph(
                                static_cast<int>(first_coords.cycle_symbols[0].size()) - 1)
                                .graph;
                for (std::size_t i = 1; i < first_coords.cycle_symbols.size(); ++i)
                    box = box_product(
                        box, build_signed_reversal_graph(
                                 static_cast<int>(first_coords.cycle_symbols[i].size()) - 1)
                                 .graph);

                std::map<long long, int> box_index_of;  // box vertex -> comp position
                std::vector<long long> image(comp.size());
                for (std::size_t i = 0; i < comp.size(); ++i) {
                    const auto mc = matching_coordinates(
                        fg.matchings[tp.partition.cells[c][comp[i]]]);
                    REQUIRE(mc.cycle_symbols == first_coords.cycle_symbols);
                    long long idx = 0;
                    for (std::size_t cyc = 0; cyc < mc.cycle_perms.size(); ++cyc) {
                        const int k = static_cast<int>(mc.cycle_symbols[cyc].size()) - 1;
                        idx = idx * sr_vertex_count(k) + sr_index(mc.cycle_perms[cyc]);
                    }
                    image[i] = idx;
                    REQUIRE(box_index_of.emplace(idx, static_cast<int>(i)).second);
                }
                // edges correspond both ways
                auto sub_comp = induced_subgraph(sub.graph, comp);
                REQUIRE(sub_comp.graph.num_edges() == box.num_edges());
                for (auto [u, v] : sub_comp.graph.edges())
                    REQUIRE(box.has_edge(static_cast<int>(image[u]), static_cast<int>(image[v])));
            }
        }
    }
}

TEST_CASE("type (3,2) cell of M(K_10) splits into ten 16-vertex components") {
    FlipGraph fg = build_flip_graph(5);
    std::vector<int> cell;
    for (int i = 0; i < fg.graph.num_vertices(); ++i)
        if (type_of(fg.matchings[i]).parts == std::vector<int>{3, 2}) cell.push_back(i);
    REQUIRE(cell.size() == 160);
    auto sub = induced_subgraph(fg.graph, cell);
    auto comps = connected_components(sub.graph);
    REQUIRE(comps.size() == 10);
    for (const auto& comp : comps) REQUIRE(comp.size() == 16);
}

TEST_CASE("matching serialization") {
    REQUIRE(matching_to_string(identity_matching(3)) == "0-1,2-3,4-5");
    REQUIRE(parse_matching("0-1,2-3,4-5") == identity_matching(3));
    REQUIRE(parse_matching("2-3,1-0,4-5") == identity_matching(3));
    for (const auto& m : enumerate_perfect_matchings(3))
        REQUIRE(parse_matching(matching_to_string(m)) == m);
    REQUIRE_THROWS_AS(parse_matching("0-1,1-2"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_matching("0-0"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_matching("0-1,3-4"), std::invalid_argument);
}
