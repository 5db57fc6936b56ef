#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flipgraphs/graph.hpp"

namespace flipgraphs {

struct Coloring {
    std::vector<int> colors;  // one per vertex, in [0, num_colors)
    int num_colors = 0;
};

struct ColoringCheck {
    bool proper = false;
    Edge witness{-1, -1};  // first monochromatic edge when !proper
};

inline ColoringCheck verify_coloring(const Graph& g, const Coloring& c) {
    if (static_cast<int>(c.colors.size()) != g.num_vertices())
        throw std::invalid_argument("verify_coloring: coloring does not cover the vertex set");
    for (int v = 0; v < g.num_vertices(); ++v)
        if (c.colors[v] < 0 || c.colors[v] >= c.num_colors)
            throw std::invalid_argument("verify_coloring: color out of range at vertex " +
                                        std::to_string(v));
    for (int u = 0; u < g.num_vertices(); ++u)
        for (int w : g.neighbors(u))
            if (u < w && c.colors[u] == c.colors[w]) return {false, {u, w}};
    return {true, {-1, -1}};
}

// Coloring file format: "c <num_colors>" then "<vertex_index> <color>" lines.
inline void write_coloring(const Coloring& c, std::ostream& os) {
    os << "c " << c.num_colors << "\n";
    for (int v = 0; v < static_cast<int>(c.colors.size()); ++v)
        os << v << " " << c.colors[v] << "\n";
}

inline Coloring read_coloring(std::istream& is) {
    Coloring c;
    std::string line;
    bool have_header = false;
    std::vector<std::pair<int, int>> rows;
    int max_vertex = -1;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        if (!have_header) {
            std::string tag;
            if (!(ls >> tag >> c.num_colors) || tag != "c" || c.num_colors < 0)
                throw std::invalid_argument("coloring file: bad header");
            have_header = true;
            continue;
        }
        int v, col;
        if (!(ls >> v >> col)) throw std::invalid_argument("coloring file: bad row");
        rows.emplace_back(v, col);
        max_vertex = std::max(max_vertex, v);
    }
    if (!have_header) throw std::invalid_argument("coloring file: missing header");
    c.colors.assign(max_vertex + 1, -1);
    for (auto [v, col] : rows) {
        if (v < 0 || col < 0 || col >= c.num_colors)
            throw std::invalid_argument("coloring file: value out of range");
        if (c.colors[v] != -1) throw std::invalid_argument("coloring file: duplicate vertex");
        c.colors[v] = col;
    }
    for (int v = 0; v <= max_vertex; ++v)
        if (c.colors[v] == -1)
            throw std::invalid_argument("coloring file: missing vertex " + std::to_string(v));
    return c;
}

// color(a,b) = (cG(a) + cH(b)) mod max of the two palette sizes; proper on
// G box H whenever the factors are proper.
inline Coloring box_product_coloring(const Coloring& cg, const Coloring& ch) {
    const int nh = static_cast<int>(ch.colors.size());
    const int m = std::max(cg.num_colors, ch.num_colors);
    Coloring res;
    res.num_colors = m;
    res.colors.resize(cg.colors.size() * ch.colors.size());
    for (std::size_t a = 0; a < cg.colors.size(); ++a)
        for (int b = 0; b < nh; ++b)
            res.colors[a * nh + b] = (cg.colors[a] + ch.colors[b]) % m;
    return res;
}

// Greedy by saturation degree; ties broken by degree, then by a seeded draw,
// so runs are reproducible for a fixed seed.
inline Coloring dsatur_coloring(const Graph& g, unsigned long long seed = 0) {
    const int n = g.num_vertices();
    Coloring res;
    res.colors.assign(n, -1);
    if (n == 0) return res;
    std::mt19937_64 rng(seed);
    int cap = 1;
    for (int v = 0; v < n; ++v) cap = std::max(cap, g.degree(v) + 1);
    std::vector<std::vector<char>> nb_color(n, std::vector<char>(cap, 0));
    std::vector<int> sat(n, 0);
    std::vector<int> ties;
    for (int step = 0; step < n; ++step) {
        int best_sat = -1, best_deg = -1;
        ties.clear();
        for (int v = 0; v < n; ++v) {
            if (res.colors[v] != -1) continue;
            if (sat[v] > best_sat || (sat[v] == best_sat && g.degree(v) > best_deg)) {
                best_sat = sat[v];
                best_deg = g.degree(v);
                ties.clear();
                ties.push_back(v);
            } else if (sat[v] == best_sat && g.degree(v) == best_deg) {
                ties.push_back(v);
            }
        }
        int v = ties.size() == 1
                    ? ties[0]
                    : ties[std::uniform_int_distribution<std::size_t>(0, ties.size() - 1)(rng)];
        int c = 0;
        while (nb_color[v][c]) ++c;
        res.colors[v] = c;
        res.num_colors = std::max(res.num_colors, c + 1);
        for (int w : g.neighbors(v)) {
            if (res.colors[w] == -1 && !nb_color[w][c]) {
                nb_color[w][c] = 1;
                ++sat[w];
            } else {
                nb_color[w][c] = 1;
            }
        }
    }
    return res;
}

struct SearchBudget {
    double seconds = std::numeric_limits<double>::infinity();
    long long max_nodes = -1;  // negative = unlimited
};

// Size bounds with a witness for the lower one; exact when the bounds meet.
struct ExactSearchResult {
    int lower_bound = 0;
    int upper_bound = 0;
    std::vector<int> certificate;
    long long nodes = 0;
    bool exact() const { return lower_bound == upper_bound; }
};

namespace detail {

using Words = std::vector<std::uint64_t>;

inline bool bs_test(const Words& w, int i) { return (w[i >> 6] >> (i & 63)) & 1u; }
inline void bs_set(Words& w, int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
inline void bs_reset(Words& w, int i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

inline bool bs_empty(const Words& w) {
    for (auto x : w)
        if (x) return false;
    return true;
}

inline int bs_first(const Words& w) {
    for (std::size_t k = 0; k < w.size(); ++k)
        if (w[k]) return static_cast<int>(k * 64 + std::countr_zero(w[k]));
    return -1;
}

inline int bs_count(const Words& w) {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
}

struct BudgetClock {
    std::chrono::steady_clock::time_point deadline;
    long long max_nodes = -1;
    long long nodes = 0;
    bool exhausted = false;

    explicit BudgetClock(const SearchBudget& b) {
        if (b.seconds == std::numeric_limits<double>::infinity()) {
            deadline = std::chrono::steady_clock::time_point::max();
        } else {
            deadline = std::chrono::steady_clock::now() +
                       std::chrono::microseconds(static_cast<long long>(b.seconds * 1e6));
        }
        max_nodes = b.max_nodes;
    }

    bool tick() {
        ++nodes;
        if (max_nodes >= 0 && nodes > max_nodes) exhausted = true;
        if ((nodes & 1023) == 0 && std::chrono::steady_clock::now() > deadline) exhausted = true;
        return !exhausted;
    }
};

// Branch and bound max clique with greedy-coloring pruning. Works on bitset
// rows so it doubles as the independence-number solver via the complement.
struct CliqueEngine {
    int n = 0, words = 0;
    std::vector<Words> nbr;
    BudgetClock clock;
    std::vector<int> best, cur;
    int root_bound = 0;

    explicit CliqueEngine(const SearchBudget& b) : clock(b) {}

    void seed_greedy() {
        Words cand(words, ~std::uint64_t{0});
        for (int v = n; v < words * 64; ++v) bs_reset(cand, v);
        std::vector<int> got;
        for (int v = 0; v < n; ++v) {
            if (!bs_test(cand, v)) continue;
            got.push_back(v);
            for (int k = 0; k < words; ++k) cand[k] &= nbr[v][k];
        }
        if (got.size() > best.size()) best = got;
    }

    void color_sort(const Words& P, std::vector<int>& order, std::vector<int>& bound) {
        order.clear();
        bound.clear();
        Words Q = P;
        int color = 0;
        Words Qc(words);
        while (!bs_empty(Q)) {
            ++color;
            Qc = Q;
            int v;
            while ((v = bs_first(Qc)) != -1) {
                bs_reset(Qc, v);
                bs_reset(Q, v);
                for (int k = 0; k < words; ++k) Qc[k] &= ~nbr[v][k];
                order.push_back(v);
                bound.push_back(color);
            }
        }
    }

    void expand(Words& P) {
        if (!clock.tick()) return;
        std::vector<int> order, bound;
        color_sort(P, order, bound);
        if (cur.empty()) root_bound = order.empty() ? 0 : bound.back();
        for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
            if (clock.exhausted) return;
            if (static_cast<int>(cur.size()) + bound[i] <= static_cast<int>(best.size())) return;
            const int v = order[i];
            Words P2(words);
            for (int k = 0; k < words; ++k) P2[k] = P[k] & nbr[v][k];
            cur.push_back(v);
            if (cur.size() > best.size()) best = cur;
            if (!bs_empty(P2)) expand(P2);
            cur.pop_back();
            bs_reset(P, v);
        }
    }
};

// Runs the clique engine on the given rows (vertices already relabeled by
// descending degree); maps the certificate back through order_to_orig.
inline ExactSearchResult run_clique(int n, std::vector<Words> rows,
                                    const std::vector<int>& order_to_orig,
                                    const SearchBudget& budget) {
    CliqueEngine eng(budget);
    eng.n = n;
    eng.words = n == 0 ? 1 : (n + 63) / 64;
    eng.nbr = std::move(rows);
    ExactSearchResult res;
    if (n == 0) return res;
    eng.seed_greedy();
    Words P(eng.words, 0);
    for (int v = 0; v < n; ++v) bs_set(P, v);
    eng.expand(P);
    res.nodes = eng.clock.nodes;
    res.lower_bound = static_cast<int>(eng.best.size());
    if (eng.clock.exhausted) {
        // root_bound == 0 means the budget ran out before the root node was colored
        const int ub = eng.root_bound > 0 ? eng.root_bound : n;
        res.upper_bound = std::max(ub, res.lower_bound);
    } else {
        res.upper_bound = res.lower_bound;
    }
    res.certificate.reserve(eng.best.size());
    for (int v : eng.best) res.certificate.push_back(order_to_orig[v]);
    std::sort(res.certificate.begin(), res.certificate.end());
    return res;
}

inline std::vector<int> degree_descending_order(const Graph& g, bool complement) {
    std::vector<int> order(g.num_vertices());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        int da = g.degree(a), db = g.degree(b);
        if (complement) {
            da = g.num_vertices() - 1 - da;
            db = g.num_vertices() - 1 - db;
        }
        return da > db;
    });
    return order;
}

inline std::vector<Words> relabeled_rows(const Graph& g, const std::vector<int>& order,
                                         bool complement) {
    const int n = g.num_vertices();
    const int words = n == 0 ? 1 : (n + 63) / 64;
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    std::vector<Words> rows(n, Words(words, 0));
    for (int v = 0; v < n; ++v)
        for (int w : g.neighbors(v)) rows[pos[v]][pos[w] >> 6] |= std::uint64_t{1}
                                                                  << (pos[w] & 63);
    if (complement) {
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < words; ++k) rows[i][k] = ~rows[i][k];
            bs_reset(rows[i], i);
            for (int v = n; v < words * 64; ++v) bs_reset(rows[i], v);
        }
    }
    return rows;
}

}  // namespace detail

inline ExactSearchResult max_clique(const Graph& g, SearchBudget budget = {}) {
    auto order = detail::degree_descending_order(g, false);
    return detail::run_clique(g.num_vertices(), detail::relabeled_rows(g, order, false), order,
                              budget);
}

inline ExactSearchResult max_independent_set(const Graph& g, SearchBudget budget = {}) {
    auto order = detail::degree_descending_order(g, true);
    return detail::run_clique(g.num_vertices(), detail::relabeled_rows(g, order, true), order,
                              budget);
}

namespace detail {

enum class KColorOutcome { kSat, kUnsat, kExhausted };

// Forward-checking DFS for k-colorability. Vertex choice is fewest remaining
// colors, then most uncolored neighbors; color choice is restricted to at
// most one fresh color beyond those already used.
struct KColorEngine {
    const Graph& g;
    int k, n;
    std::vector<int> color;
    std::vector<std::uint32_t> domain;
    std::vector<int> uncolored_deg;
    BudgetClock clock;
    int colored = 0;
    int max_used = -1;

    KColorEngine(const Graph& graph, int num_colors, const SearchBudget& b)
        : g(graph), k(num_colors), n(graph.num_vertices()), clock(b) {
        color.assign(n, -1);
        domain.assign(n, k >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << k) - 1);
        uncolored_deg.assign(n, 0);
        for (int v = 0; v < n; ++v) uncolored_deg[v] = g.degree(v);
    }

    bool assign(int v, int c, std::vector<int>& touched) {
        color[v] = c;
        ++colored;
        bool ok = true;
        for (int w : g.neighbors(v)) {
            --uncolored_deg[w];
            if (color[w] != -1) continue;
            if (domain[w] & (std::uint32_t{1} << c)) {
                domain[w] &= ~(std::uint32_t{1} << c);
                touched.push_back(w);
                if (domain[w] == 0) ok = false;
            }
        }
        return ok;
    }

    void undo(int v, int c, const std::vector<int>& touched) {
        for (int w : touched) domain[w] |= std::uint32_t{1} << c;
        for (int w : g.neighbors(v)) ++uncolored_deg[w];
        color[v] = -1;
        --colored;
    }

    KColorOutcome dfs() {
        if (!clock.tick()) return KColorOutcome::kExhausted;
        if (colored == n) return KColorOutcome::kSat;
        int v = -1, best_dom = std::numeric_limits<int>::max(), best_deg = -1;
        for (int u = 0; u < n; ++u) {
            if (color[u] != -1) continue;
            const int d = std::popcount(domain[u]);
            if (d == 0) return KColorOutcome::kUnsat;
            if (d < best_dom || (d == best_dom && uncolored_deg[u] > best_deg)) {
                best_dom = d;
                best_deg = uncolored_deg[u];
                v = u;
            }
        }
        const int color_cap = std::min(k - 1, max_used + 1);
        std::vector<int> touched;
        for (int c = 0; c <= color_cap; ++c) {
            if (!(domain[v] & (std::uint32_t{1} << c))) continue;
            touched.clear();
            const int old_max = max_used;
            max_used = std::max(max_used, c);
            if (assign(v, c, touched)) {
                KColorOutcome sub = dfs();
                if (sub == KColorOutcome::kSat) return sub;  // color[] holds the certificate
                if (sub == KColorOutcome::kExhausted) {
                    undo(v, c, touched);
                    max_used = old_max;
                    return sub;
                }
            }
            undo(v, c, touched);
            max_used = old_max;
            if (clock.exhausted) return KColorOutcome::kExhausted;
        }
        return KColorOutcome::kUnsat;
    }
};

}  // namespace detail

struct ChromaticResult {
    int lower_bound = 0;
    int upper_bound = 0;
    Coloring coloring;  // proper with upper_bound colors
    long long nodes = 0;
    bool exact() const { return lower_bound == upper_bound; }
};

inline ChromaticResult exact_chromatic_number(const Graph& g, SearchBudget budget = {},
                                              unsigned long long seed = 0) {
    ChromaticResult res;
    const int n = g.num_vertices();
    if (n == 0) return res;

    const auto start = std::chrono::steady_clock::now();
    auto seconds_left = [&]() {
        if (budget.seconds == std::numeric_limits<double>::infinity()) return budget.seconds;
        double used = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return std::max(0.0, budget.seconds - used);
    };

    Coloring ub_col = dsatur_coloring(g, seed);
    int ub = ub_col.num_colors;

    SearchBudget clique_budget;
    clique_budget.seconds = std::min(seconds_left() * 0.1, 5.0);
    clique_budget.max_nodes = budget.max_nodes < 0 ? -1 : std::max<long long>(budget.max_nodes / 10, 1);
    ExactSearchResult cq = max_clique(g, clique_budget);
    res.nodes += cq.nodes;
    int lb = std::max<int>(cq.lower_bound, g.num_edges() > 0 ? 2 : 1);

    for (int k = lb; k < ub; ++k) {
        if (k > 31) {  // the domain masks stop at 32 colors
            res.lower_bound = k;
            res.upper_bound = ub;
            res.coloring = std::move(ub_col);
            return res;
        }
        SearchBudget rest;
        rest.seconds = seconds_left();
        rest.max_nodes = budget.max_nodes < 0 ? -1 : std::max<long long>(budget.max_nodes - res.nodes, 0);
        detail::KColorEngine eng(g, k, rest);
        bool precolor_ok = true;
        std::vector<int> dummy;
        for (std::size_t i = 0; i < cq.certificate.size() && i < static_cast<std::size_t>(k); ++i) {
            eng.max_used = std::max<int>(eng.max_used, static_cast<int>(i));
            if (!eng.assign(cq.certificate[i], static_cast<int>(i), dummy)) precolor_ok = false;
        }
        detail::KColorOutcome out =
            precolor_ok ? eng.dfs() : detail::KColorOutcome::kUnsat;
        res.nodes += eng.clock.nodes;
        if (out == detail::KColorOutcome::kSat) {
            res.lower_bound = res.upper_bound = k;
            res.coloring.colors = eng.color;
            res.coloring.num_colors = k;
            if (!verify_coloring(g, res.coloring).proper)
                throw std::logic_error("exact_chromatic_number: certificate failed verification");
            return res;
        }
        if (out == detail::KColorOutcome::kExhausted) {
            res.lower_bound = k;
            res.upper_bound = ub;
            res.coloring = std::move(ub_col);
            return res;
        }
        // refuted: chi > k
    }
    res.lower_bound = res.upper_bound = ub;
    res.coloring = std::move(ub_col);
    return res;
}

}  // namespace flipgraphs
