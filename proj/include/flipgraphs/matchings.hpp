#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flipgraphs/graph.hpp"
#include "flipgraphs/parallel.hpp"
#include "flipgraphs/signed_perms.hpp"

namespace flipgraphs {

// Perfect matching of K_{2n} as a fixed-point-free involution. Vertex 2i is
// the + vertex of symbol i and 2i+1 its - vertex, so the identity matching
// pairs 2i with 2i+1 and sign flips are cheap (v XOR 1).
struct PerfectMatching {
    std::vector<int> partner;

    int n() const { return static_cast<int>(partner.size()) / 2; }
    bool operator==(const PerfectMatching&) const = default;
};

inline void validate_matching(const PerfectMatching& m) {
    const int nv = static_cast<int>(m.partner.size());
    if (nv == 0 || nv % 2 != 0) throw std::invalid_argument("matching: odd or empty vertex set");
    for (int v = 0; v < nv; ++v) {
        const int u = m.partner[v];
        if (u < 0 || u >= nv || u == v || m.partner[u] != v)
            throw std::invalid_argument("matching: not a fixed-point-free involution");
    }
}

inline PerfectMatching identity_matching(int n) {
    PerfectMatching m;
    m.partner.resize(2 * n);
    for (int i = 0; i < n; ++i) {
        m.partner[2 * i] = 2 * i + 1;
        m.partner[2 * i + 1] = 2 * i;
    }
    return m;
}

// "a-b,c-d,..." with a < b and pairs sorted by first endpoint.
inline std::string matching_to_string(const PerfectMatching& m) {
    std::string s;
    for (int v = 0; v < static_cast<int>(m.partner.size()); ++v) {
        if (v > m.partner[v]) continue;
        if (!s.empty()) s += ',';
        s += std::to_string(v);
        s += '-';
        s += std::to_string(m.partner[v]);
    }
    return s;
}

inline PerfectMatching parse_matching(const std::string& text) {
    std::vector<std::pair<int, int>> pairs;
    std::istringstream ss(text);
    std::string item;
    int max_vertex = -1;
    while (std::getline(ss, item, ',')) {
        auto dash = item.find('-');
        if (dash == std::string::npos) throw std::invalid_argument("matching: bad pair '" + item + "'");
        const int a = std::stoi(item.substr(0, dash));
        const int b = std::stoi(item.substr(dash + 1));
        pairs.emplace_back(a, b);
        max_vertex = std::max({max_vertex, a, b});
    }
    PerfectMatching m;
    m.partner.assign(max_vertex + 1, -1);
    for (auto [a, b] : pairs) {
        if (a < 0 || b < 0 || a == b || m.partner[a] != -1 || m.partner[b] != -1)
            throw std::invalid_argument("matching: overlapping or invalid pairs");
        m.partner[a] = b;
        m.partner[b] = a;
    }
    validate_matching(m);
    return m;
}

namespace detail {

// D[k] = number of perfect matchings on k labeled vertices = (k-1)!!.
inline const std::vector<long long>& matching_counts() {
    static const std::vector<long long> d = [] {
        std::vector<long long> v(18, 0);
        v[0] = 1;
        for (int k = 2; k < 18; k += 2) v[k] = (k - 1) * v[k - 2];
        return v;
    }();
    return d;
}

constexpr int kMaxMatchingN = 8;  // K_16: ~2e6 vertices of degree 56

inline void check_matching_n(int n) {
    if (n < 1) throw std::invalid_argument("perfect matchings: n must be >= 1");
    if (n > kMaxMatchingN)
        throw std::invalid_argument("perfect matchings: n > " + std::to_string(kMaxMatchingN) +
                                    " exceeds the configured memory budget");
}

}  // namespace detail

// Rank in the order generated by "pair the smallest unmatched vertex with
// each larger unmatched vertex, in increasing order". Rank 0 is M0.
inline long long matching_rank(const PerfectMatching& m) {
    const int nv = static_cast<int>(m.partner.size());
    std::vector<int> remaining;
    remaining.reserve(nv);
    for (int v = 0; v < nv; ++v) remaining.push_back(v);
    long long rank = 0;
    while (!remaining.empty()) {
        const int v0 = remaining.front();
        const int u = m.partner[v0];
        long long t = 0;
        for (std::size_t i = 1; i < remaining.size(); ++i) {
            if (remaining[i] == u) {
                t = static_cast<long long>(i) - 1;
                break;
            }
        }
        rank += t * detail::matching_counts()[remaining.size() - 2];
        std::vector<int> next;
        next.reserve(remaining.size() - 2);
        for (int w : remaining)
            if (w != v0 && w != u) next.push_back(w);
        remaining = std::move(next);
    }
    return rank;
}

inline PerfectMatching matching_unrank(int n, long long rank) {
    detail::check_matching_n(n);
    PerfectMatching m;
    m.partner.assign(2 * n, -1);
    std::vector<int> remaining(2 * n);
    for (int v = 0; v < 2 * n; ++v) remaining[v] = v;
    while (!remaining.empty()) {
        const long long block = detail::matching_counts()[remaining.size() - 2];
        const long long t = rank / block;
        rank %= block;
        const int v0 = remaining.front();
        const int u = remaining[t + 1];
        m.partner[v0] = u;
        m.partner[u] = v0;
        std::vector<int> next;
        next.reserve(remaining.size() - 2);
        for (int w : remaining)
            if (w != v0 && w != u) next.push_back(w);
        remaining = std::move(next);
    }
    return m;
}

inline std::vector<PerfectMatching> enumerate_perfect_matchings(int n) {
    detail::check_matching_n(n);
    std::vector<PerfectMatching> out;
    out.reserve(static_cast<std::size_t>(detail::matching_counts()[2 * n]));
    std::vector<int> partner(2 * n, -1);
    auto rec = [&](auto&& self) -> void {
        int v0 = -1;
        for (int v = 0; v < 2 * n; ++v) {
            if (partner[v] == -1) {
                v0 = v;
                break;
            }
        }
        if (v0 == -1) {
            out.push_back(PerfectMatching{partner});
            return;
        }
        for (int u = v0 + 1; u < 2 * n; ++u) {
            if (partner[u] != -1) continue;
            partner[v0] = u;
            partner[u] = v0;
            self(self);
            partner[v0] = -1;
            partner[u] = -1;
        }
    };
    rec(rec);
    return out;
}

// Both rewirings of every independent pair of matching edges: n(n-1)
// distinct neighbors.
inline std::vector<PerfectMatching> flip_neighbors(const PerfectMatching& m) {
    std::vector<int> firsts;
    for (int v = 0; v < static_cast<int>(m.partner.size()); ++v)
        if (v < m.partner[v]) firsts.push_back(v);
    std::vector<PerfectMatching> out;
    out.reserve(firsts.size() * (firsts.size() - 1));
    for (std::size_t i = 0; i < firsts.size(); ++i) {
        for (std::size_t j = i + 1; j < firsts.size(); ++j) {
            const int a = firsts[i], b = m.partner[firsts[i]];
            const int c = firsts[j], d = m.partner[firsts[j]];
            PerfectMatching x = m;
            x.partner[a] = c;
            x.partner[c] = a;
            x.partner[b] = d;
            x.partner[d] = b;
            out.push_back(std::move(x));
            PerfectMatching y = m;
            y.partner[a] = d;
            y.partner[d] = a;
            y.partner[b] = c;
            y.partner[c] = b;
            out.push_back(std::move(y));
        }
    }
    return out;
}

struct FlipGraph {
    int n = 0;
    Graph graph;
    std::vector<PerfectMatching> matchings;  // index == matching_rank

    long long rank_of(const PerfectMatching& m) const { return matching_rank(m); }
};

inline FlipGraph build_flip_graph(int n, unsigned threads = 1) {
    detail::check_matching_n(n);
    FlipGraph fg;
    fg.n = n;
    fg.matchings = enumerate_perfect_matchings(n);
    const long long nv = static_cast<long long>(fg.matchings.size());
    std::vector<std::vector<int>> adj(nv);
    parallel_chunks(nv, threads, [&](long long begin, long long end, unsigned) {
        for (long long i = begin; i < end; ++i) {
            auto& out = adj[i];
            out.reserve(static_cast<std::size_t>(n) * (n - 1));
            for (const auto& nb : flip_neighbors(fg.matchings[i]))
                out.push_back(static_cast<int>(matching_rank(nb)));
            std::sort(out.begin(), out.end());
        }
    });
    fg.graph = graph_from_sorted_adjacency(std::move(adj));
    return fg;
}

// Partition of n given by half the cycle lengths of M0 union M.
struct MatchingType {
    std::vector<int> parts;  // weakly decreasing
    bool operator==(const MatchingType&) const = default;

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < parts.size(); ++i)
            s += (i ? "," : "") + std::to_string(parts[i]);
        return s + ")";
    }
};

// Per-cycle signed-symbol sequences read off the alternating blue/red walk.
struct MatchingLabel {
    std::vector<std::vector<int>> segments;  // vertex codes, one list per cycle

    std::string to_string() const {
        std::string s;
        for (const auto& seg : segments) {
            s += '(';
            for (int v : seg) {
                s += std::to_string(v / 2);
                s += (v & 1) ? '-' : '+';
            }
            s += ')';
        }
        return s;
    }
};

namespace detail {

struct CycleWalk {
    std::vector<std::vector<int>> segments;       // label segment per cycle
    std::vector<std::vector<int>> cycle_symbols;  // ascending symbols per cycle
};

// Walks each cycle of M0 union M starting at the + vertex of the smallest
// unused symbol: take the M edge, then the M0 edge (sign flip), recording the
// vertex that starts every M edge except the first.
inline CycleWalk cycle_walk(const PerfectMatching& m) {
    const int n = m.n();
    CycleWalk w;
    std::vector<char> used(n, 0);
    for (int s = 0; s < n; ++s) {
        if (used[s]) continue;
        std::vector<int> segment, symbols;
        const int start = 2 * s;
        int v = start;
        bool first = true;
        do {
            used[v / 2] = 1;
            symbols.push_back(v / 2);
            if (!first) segment.push_back(v);
            first = false;
            v = m.partner[v];  // blue edge
            v ^= 1;            // red edge back through M0
        } while (v != start);
        std::sort(symbols.begin(), symbols.end());
        symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
        w.segments.push_back(std::move(segment));
        w.cycle_symbols.push_back(std::move(symbols));
    }
    return w;
}

}  // namespace detail

inline MatchingType type_of(const PerfectMatching& m) {
    MatchingType t;
    for (const auto& symbols : detail::cycle_walk(m).cycle_symbols)
        t.parts.push_back(static_cast<int>(symbols.size()));
    std::sort(t.parts.rbegin(), t.parts.rend());
    return t;
}

inline MatchingLabel label_of(const PerfectMatching& m) {
    return {detail::cycle_walk(m).segments};
}

// Jennings: d(M1, M2) = n - number of components of the multigraph M1 u M2.
inline int matching_distance(const PerfectMatching& m1, const PerfectMatching& m2) {
    if (m1.partner.size() != m2.partner.size())
        throw std::invalid_argument("matching_distance: size mismatch");
    const int nv = static_cast<int>(m1.partner.size());
    std::vector<char> seen(nv, 0);
    int components = 0;
    for (int s = 0; s < nv; ++s) {
        if (seen[s]) continue;
        ++components;
        int v = s;
        do {
            seen[v] = 1;
            v = m1.partner[v];
            seen[v] = 1;
            v = m2.partner[v];
        } while (v != s);
    }
    return m1.n() - components;
}

struct TypePartition {
    CellPartition partition;
    std::vector<MatchingType> cell_types;  // descending lexicographic on parts
};

inline TypePartition type_partition(const FlipGraph& fg) {
    std::map<std::vector<int>, std::vector<int>, std::greater<std::vector<int>>> by_type;
    for (int i = 0; i < static_cast<int>(fg.matchings.size()); ++i)
        by_type[type_of(fg.matchings[i]).parts].push_back(i);
    TypePartition tp;
    std::vector<std::vector<int>> cells;
    for (auto& [parts, members] : by_type) {
        tp.cell_types.push_back(MatchingType{parts});
        cells.push_back(std::move(members));
    }
    tp.partition = CellPartition::from_cells(std::move(cells), fg.graph.num_vertices());
    return tp;
}

class not_isomorphism : public std::runtime_error {
public:
    not_isomorphism(int u, int v, const std::string& what)
        : std::runtime_error("not an isomorphism: " + what + " (witness edge " +
                             std::to_string(u) + "," + std::to_string(v) + ")"),
          u(u), v(v) {}

    int u, v;
};

// Per-cycle coordinates of a matching: each label segment read as a signed
// permutation after relabeling the cycle's symbols (excluding the walk start)
// by their rank within the cycle. Cycles are listed by smallest symbol.
struct MatchingCoordinates {
    std::vector<std::vector<int>> cycle_symbols;
    std::vector<SignedPermutation> cycle_perms;  // degree = cycle size - 1
};

inline MatchingCoordinates matching_coordinates(const PerfectMatching& m) {
    auto walk = detail::cycle_walk(m);
    MatchingCoordinates mc;
    mc.cycle_symbols = std::move(walk.cycle_symbols);
    for (std::size_t c = 0; c < walk.segments.size(); ++c) {
        const auto& symbols = mc.cycle_symbols[c];
        SignedPermutation perm;
        for (int v : walk.segments[c]) {
            const int sym = v / 2;
            const auto it = std::lower_bound(symbols.begin(), symbols.end(), sym);
            const int value = static_cast<int>(it - symbols.begin());  // rank, start excluded
            perm.entries.push_back((v & 1) ? -value : value);
        }
        mc.cycle_perms.push_back(std::move(perm));
    }
    return mc;
}

struct SrLabelIsomorphism {
    std::vector<int> flip_vertices;   // type-(n) cell, ascending flip-graph indices
    std::vector<long long> sr_index;  // parallel images in SR_{n-1}
};

// Prop-3.4 style bijection: the single-segment label of a type-(n) matching,
// read as a signed permutation of degree n-1, maps the cell onto SR_{n-1}.
// Every flip edge must map to a signed-reversal edge and conversely.
inline SrLabelIsomorphism label_isomorphism_to_sr(const FlipGraph& fg) {
    const int n = fg.n;
    if (n < 2) throw std::invalid_argument("label_isomorphism_to_sr: need n >= 2");
    SrLabelIsomorphism iso;
    for (int i = 0; i < static_cast<int>(fg.matchings.size()); ++i)
        if (type_of(fg.matchings[i]).parts == std::vector<int>{n}) iso.flip_vertices.push_back(i);

    const long long expected = sr_vertex_count(n - 1);
    if (static_cast<long long>(iso.flip_vertices.size()) != expected)
        throw std::logic_error("label_isomorphism_to_sr: unexpected cell size");

    std::vector<char> hit(expected, 0);
    std::vector<long long> image_of(fg.graph.num_vertices(), -1);
    for (int v : iso.flip_vertices) {
        auto mc = matching_coordinates(fg.matchings[v]);
        const long long img = sr_index(mc.cycle_perms[0]);
        if (hit[img]) throw std::logic_error("label_isomorphism_to_sr: label map not injective");
        hit[img] = 1;
        iso.sr_index.push_back(img);
        image_of[v] = img;
    }

    const SignedReversalGraph sr = build_signed_reversal_graph(n - 1);
    long long cell_edges = 0;
    for (int v : iso.flip_vertices) {
        for (int w : fg.graph.neighbors(v)) {
            if (image_of[w] < 0 || w < v) continue;  // outside the cell or counted already
            ++cell_edges;
            if (!sr.graph.has_edge(static_cast<int>(image_of[v]), static_cast<int>(image_of[w])))
                throw not_isomorphism(v, w, "flip edge maps to a non-edge of SR_{n-1}");
        }
    }
    if (cell_edges != sr.graph.num_edges())
        throw not_isomorphism(-1, -1, "edge counts differ, some SR edge has no preimage");
    return iso;
}

}  // namespace flipgraphs
