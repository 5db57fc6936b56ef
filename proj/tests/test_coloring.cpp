#include <catch2/catch_amalgamated.hpp>
#include <random>
#include <set>
#include <sstream>

#include "flipgraphs/coloring.hpp"
#include "flipgraphs/flip_colorings.hpp"
#include "flipgraphs/gf.hpp"
#include "flipgraphs/matchings.hpp"
#include "flipgraphs/signed_perms.hpp"
#include "flipgraphs/spectra.hpp"

using namespace flipgraphs;

namespace {

Graph k3() { return build_graph(3, {{0, 1}, {1, 2}, {2, 0}}); }
Graph c5() { return build_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}); }

bool is_independent(const Graph& g, const std::vector<int>& vs) {
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (g.has_edge(vs[i], vs[j])) return false;
    return true;
}

}  // namespace

TEST_CASE("verify_coloring") {
    Coloring good{{0, 1, 2}, 3};
    REQUIRE(verify_coloring(k3(), good).proper);

    Coloring bad{{0, 1, 0}, 2};
    auto check = verify_coloring(k3(), bad);
    REQUIRE_FALSE(check.proper);
    REQUIRE(check.witness == Edge{0, 2});

    REQUIRE_THROWS_AS(verify_coloring(k3(), Coloring{{0, 1}, 2}), std::invalid_argument);
    REQUIRE_THROWS_AS(verify_coloring(k3(), Coloring{{0, 1, 5}, 3}), std::invalid_argument);
}

TEST_CASE("coloring file round trip") {
    Coloring c{{2, 0, 1, 1}, 3};
    std::ostringstream os;
    write_coloring(c, os);
    std::istringstream is(os.str());
    Coloring back = read_coloring(is);
    REQUIRE(back.colors == c.colors);
    REQUIRE(back.num_colors == c.num_colors);

    std::istringstream bad_header("0 1\n");
    REQUIRE_THROWS_AS(read_coloring(bad_header), std::invalid_argument);
    std::istringstream missing("c 2\n0 0\n2 1\n");
    REQUIRE_THROWS_AS(read_coloring(missing), std::invalid_argument);
}

TEST_CASE("box product coloring") {
    Graph k2 = build_graph(2, {{0, 1}});
    Coloring two{{0, 1}, 2};
    Coloring c4 = box_product_coloring(two, two);
    REQUIRE(c4.num_colors == 2);
    REQUIRE(verify_coloring(box_product(k2, k2), c4).proper);

    SignedReversalGraph sr2 = build_signed_reversal_graph(2);
    SignedReversalGraph sr1 = build_signed_reversal_graph(1);
    Coloring csr2 = dsatur_coloring(sr2.graph);
    Coloring csr1 = dsatur_coloring(sr1.graph);
    Coloring prod = box_product_coloring(csr2, csr1);
    REQUIRE(prod.num_colors == 2);
    REQUIRE(verify_coloring(box_product(sr2.graph, sr1.graph), prod).proper);

    SignedReversalGraph sr3 = build_signed_reversal_graph(3);
    Coloring csr3 = expand_parity_coloring(3, sr3_cell_scheme());
    Coloring prod31 = box_product_coloring(csr3, csr1);
    REQUIRE(prod31.num_colors == 3);  // max rule
    REQUIRE(verify_coloring(box_product(sr3.graph, sr1.graph), prod31).proper);
}

TEST_CASE("dsatur") {
    // exact on bipartite graphs
    for (const Graph& g : {build_reversal_graph(3), build_signed_reversal_graph(2).graph}) {
        Coloring c = dsatur_coloring(g);
        REQUIRE(c.num_colors == 2);
        REQUIRE(verify_coloring(g, c).proper);
    }

    Coloring ck3 = dsatur_coloring(k3());
    REQUIRE(ck3.num_colors == 3);

    FlipGraph f3 = build_flip_graph(3);
    Coloring cf3 = dsatur_coloring(f3.graph, 123);
    REQUIRE(verify_coloring(f3.graph, cf3).proper);
    REQUIRE(cf3.num_colors <= 6);

    // reproducible for a fixed seed
    REQUIRE(dsatur_coloring(f3.graph, 9).colors == dsatur_coloring(f3.graph, 9).colors);
}

TEST_CASE("exact chromatic number on small graphs") {
    auto chi = [](const Graph& g) {
        auto res = exact_chromatic_number(g);
        REQUIRE(res.exact());
        REQUIRE(verify_coloring(g, res.coloring).proper);
        REQUIRE(res.coloring.num_colors == res.upper_bound);
        return res.lower_bound;
    };
    REQUIRE(chi(k3()) == 3);
    REQUIRE(chi(c5()) == 3);
    REQUIRE(chi(build_reversal_graph(3)) == 2);
    REQUIRE(chi(build_flip_graph(2).graph) == 3);
    REQUIRE(chi(build_flip_graph(3).graph) == 4);
    REQUIRE(chi(build_signed_reversal_graph(3).graph) == 3);

    // chromatic number respects the Hoffman lower bound
    HoffmanBounds hb = hoffman_bounds(6, -3, 15);
    REQUIRE(chi(build_flip_graph(3).graph) >= hb.chromatic_lower);
}

TEST_CASE("exact chromatic number returns a bracket when the budget dies") {
    SearchBudget tiny;
    tiny.max_nodes = 1;
    auto res = exact_chromatic_number(build_flip_graph(4).graph, tiny);
    REQUIRE_FALSE(res.exact());
    REQUIRE(res.lower_bound >= 2);
    REQUIRE(res.lower_bound <= res.upper_bound);
    REQUIRE(verify_coloring(build_flip_graph(4).graph, res.coloring).proper);
    REQUIRE(res.coloring.num_colors == res.upper_bound);
}

TEST_CASE("max independent set") {
    auto alpha = [](const Graph& g) {
        auto res = max_independent_set(g);
        REQUIRE(res.exact());
        REQUIRE(static_cast<int>(res.certificate.size()) == res.lower_bound);
        REQUIRE(is_independent(g, res.certificate));
        return res.lower_bound;
    };
    REQUIRE(alpha(k3()) == 1);
    REQUIRE(alpha(c5()) == 2);
    REQUIRE(alpha(build_flip_graph(3).graph) == 5);
    REQUIRE(alpha(build_reversal_graph(3)) == 3);

    SearchBudget tiny;
    tiny.max_nodes = 1;
    auto res = max_independent_set(build_flip_graph(4).graph, tiny);
    REQUIRE(res.lower_bound <= res.upper_bound);
    REQUIRE(is_independent(build_flip_graph(4).graph, res.certificate));
}

TEST_CASE("max clique") {
    auto res = max_clique(build_flip_graph(3).graph);
    REQUIRE(res.exact());
    REQUIRE(res.lower_bound == 3);  // neighborhoods are perfect matchings
    for (std::size_t i = 0; i < res.certificate.size(); ++i)
        for (std::size_t j = i + 1; j < res.certificate.size(); ++j)
            REQUIRE(build_flip_graph(3).graph.has_edge(res.certificate[i], res.certificate[j]));
}

TEST_CASE("gf coloring") {
    FlipGraph f2 = build_flip_graph(2);
    GfColoringResult r2 = gf_coloring(f2);
    REQUIRE(r2.field.q == 5);
    // sigma(i) = i: f(M0)=0*1+2*3=1, f(02,13)=3, f(03,12)=2
    REQUIRE(r2.raw_values == std::vector<long long>{1, 3, 2});
    REQUIRE(r2.coloring.num_colors == 3);
    REQUIRE(verify_coloring(f2.graph, r2.coloring).proper);

    for (int n : {3, 4}) {
        FlipGraph fg = build_flip_graph(n);
        GfColoringResult res = gf_coloring(fg);
        REQUIRE(res.field.q == (n == 3 ? 7 : 9));
        REQUIRE(res.coloring.num_colors <= res.field.q);
        REQUIRE(verify_coloring(fg.graph, res.coloring).proper);
    }
}

TEST_CASE("gf coloring proof identities on random edges") {
    std::mt19937 rng(31337);
    for (int n : {3, 4, 5, 6}) {
        FlipGraph fg = build_flip_graph(n);
        GfColoringResult res = gf_coloring(fg);
        GaloisField field(res.field);
        auto sigma = [&](int v) { return field.element(v); };
        auto edges = fg.graph.edges();
        std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
        for (int trial = 0; trial < 1000; ++trial) {
            auto [xi, yi] = edges[pick(rng)];
            const PerfectMatching& x = fg.matchings[xi];
            const PerfectMatching& y = fg.matchings[yi];
            // the two X-edges rewired by the flip
            std::vector<int> exchanged;
            for (int v = 0; v < 2 * n; ++v)
                if (v < x.partner[v] && y.partner[v] != x.partner[v]) exchanged.push_back(v);
            REQUIRE(exchanged.size() == 2);
            const int x1 = exchanged[0], x2 = x.partner[x1];
            const int x3 = exchanged[1], x4 = x.partner[x3];
            FieldElement delta;
            if (y.partner[x1] == x3) {
                delta = field.mul(field.sub(sigma(x1), sigma(x4)),
                                  field.sub(sigma(x3), sigma(x2)));
            } else {
                REQUIRE(y.partner[x1] == x4);
                delta = field.mul(field.sub(sigma(x1), sigma(x3)),
                                  field.sub(sigma(x4), sigma(x2)));
            }
            REQUIRE_FALSE(field.is_zero(delta));
            const FieldElement fy = field.element(res.raw_values[yi]);
            const FieldElement fx = field.element(res.raw_values[xi]);
            REQUIRE(field.sub(fy, fx) == delta);
        }
    }
}

TEST_CASE("layered coloring") {
    for (int n : {3, 4, 5}) {
        FlipGraph fg = build_flip_graph(n);
        Coloring c = layered_coloring(fg, standard_factor_colorings(n - 1));
        REQUIRE(verify_coloring(fg.graph, c).proper);
        const int expected_bound = n == 3 ? 4 : n == 4 ? 5 : 7;
        REQUIRE(c.num_colors <= expected_bound);
    }

    FlipGraph f4 = build_flip_graph(4);
    auto factors = standard_factor_colorings(2);  // missing SR_3
    REQUIRE_THROWS_AS(layered_coloring(f4, factors), std::invalid_argument);
}

TEST_CASE("layered coloring keeps adjacent layers on disjoint palettes") {
    FlipGraph fg = build_flip_graph(4);
    auto factors = standard_factor_colorings(3);
    Coloring c = layered_coloring(fg, factors);
    const int palette_a = factors.at(3).num_colors;  // odd layers live below this
    for (int v = 0; v < fg.graph.num_vertices(); ++v) {
        const int layer = static_cast<int>(type_of(fg.matchings[v]).parts.size());
        if (layer % 2 == 1)
            REQUIRE(c.colors[v] < palette_a);
        else
            REQUIRE(c.colors[v] >= palette_a);
    }
}
