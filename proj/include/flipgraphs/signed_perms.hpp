#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flipgraphs/coloring.hpp"
#include "flipgraphs/graph.hpp"

namespace flipgraphs {

// k-tuple of nonzero signed symbols whose absolute values permute 1..k.
struct SignedPermutation {
    std::vector<int> entries;

    int degree() const { return static_cast<int>(entries.size()); }
    bool operator==(const SignedPermutation&) const = default;

    std::string to_string() const {
        std::string s;
        for (int e : entries) {
            s += std::to_string(e < 0 ? -e : e);
            s += e < 0 ? '-' : '+';
        }
        return s;
    }
};

inline void validate_signed_permutation(const SignedPermutation& s) {
    const int k = s.degree();
    std::vector<char> seen(k + 1, 0);
    for (int e : s.entries) {
        const int a = e < 0 ? -e : e;
        if (a < 1 || a > k || seen[a])
            throw std::invalid_argument("invalid signed permutation: " + s.to_string());
        seen[a] = 1;
    }
}

// Reverse positions i..j (1-based) and negate every entry in the block.
inline SignedPermutation apply_signed_reversal(const SignedPermutation& s, int i, int j) {
    if (i < 1 || j > s.degree() || i > j)
        throw std::out_of_range("apply_signed_reversal: bad block [" + std::to_string(i) + "," +
                                std::to_string(j) + "]");
    SignedPermutation r = s;
    std::reverse(r.entries.begin() + (i - 1), r.entries.begin() + j);
    for (int t = i - 1; t < j; ++t) r.entries[t] = -r.entries[t];
    return r;
}

namespace detail {

inline const std::array<long long, 13>& factorials() {
    static const std::array<long long, 13> f = [] {
        std::array<long long, 13> a{};
        a[0] = 1;
        for (int i = 1; i < 13; ++i) a[i] = a[i - 1] * i;
        return a;
    }();
    return f;
}

}  // namespace detail

// Lexicographic rank of a permutation of 1..k.
inline long long permutation_rank(const std::vector<int>& perm) {
    const int k = static_cast<int>(perm.size());
    long long r = 0;
    for (int i = 0; i < k; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < k; ++j)
            if (perm[j] < perm[i]) ++smaller;
        r += smaller * detail::factorials()[k - 1 - i];
    }
    return r;
}

inline std::vector<int> permutation_unrank(int k, long long rank) {
    std::vector<int> pool(k);
    for (int i = 0; i < k; ++i) pool[i] = i + 1;
    std::vector<int> perm;
    perm.reserve(k);
    for (int i = k - 1; i >= 0; --i) {
        const long long f = detail::factorials()[i];
        const long long d = rank / f;
        rank %= f;
        perm.push_back(pool[d]);
        pool.erase(pool.begin() + d);
    }
    return perm;
}

// Vertex index of SR_k: permutation rank * 2^k + sign mask, where bit t of
// the mask is 1 when position t holds a negative entry (+ = 0, so the
// all-plus vertex of each cell carries mask 0).
inline long long sr_vertex_count(int k) { return detail::factorials()[k] << k; }

inline long long sr_index(const SignedPermutation& s) {
    const int k = s.degree();
    std::vector<int> base(k);
    long long mask = 0;
    for (int t = 0; t < k; ++t) {
        base[t] = s.entries[t] < 0 ? -s.entries[t] : s.entries[t];
        if (s.entries[t] < 0) mask |= 1ll << t;
    }
    return (permutation_rank(base) << k) | mask;
}

inline SignedPermutation sr_vertex(int k, long long index) {
    const long long mask = index & ((1ll << k) - 1);
    SignedPermutation s{permutation_unrank(k, index >> k)};
    for (int t = 0; t < k; ++t)
        if (mask & (1ll << t)) s.entries[t] = -s.entries[t];
    return s;
}

struct SignedReversalGraph {
    int k = 0;
    Graph graph;

    SignedPermutation vertex(long long index) const { return sr_vertex(k, index); }
    long long index_of(const SignedPermutation& s) const { return sr_index(s); }
};

inline SignedReversalGraph build_signed_reversal_graph(int k) {
    if (k < 0) throw std::invalid_argument("build_signed_reversal_graph: k must be >= 0");
    if (k > 6)
        throw std::invalid_argument("build_signed_reversal_graph: k > 6 exceeds the memory budget");
    const long long nv = sr_vertex_count(k);
    std::vector<std::vector<int>> adj(nv);
    for (long long v = 0; v < nv; ++v) {
        SignedPermutation s = sr_vertex(k, v);
        auto& out = adj[v];
        out.reserve(k * (k + 1) / 2);
        for (int i = 1; i <= k; ++i)
            for (int j = i; j <= k; ++j)
                out.push_back(static_cast<int>(sr_index(apply_signed_reversal(s, i, j))));
        std::sort(out.begin(), out.end());
    }
    SignedReversalGraph res;
    res.k = k;
    res.graph = graph_from_sorted_adjacency(std::move(adj));
    return res;
}

// Unsigned reversal graph on S_k, vertices in lexicographic rank order.
// Edges are substring reversals of length >= 2; regular of degree C(k,2).
inline Graph build_reversal_graph(int k) {
    if (k < 1 || k > 7) throw std::invalid_argument("build_reversal_graph: need 1 <= k <= 7");
    const long long nv = detail::factorials()[k];
    std::vector<std::vector<int>> adj(nv);
    for (long long v = 0; v < nv; ++v) {
        std::vector<int> perm = permutation_unrank(k, v);
        auto& out = adj[v];
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                std::vector<int> q = perm;
                std::reverse(q.begin() + i, q.begin() + j + 1);
                out.push_back(static_cast<int>(permutation_rank(q)));
            }
        }
        std::sort(out.begin(), out.end());
    }
    return graph_from_sorted_adjacency(std::move(adj));
}

// Cells V_pi of 2^k vertices each, one per underlying permutation, in
// permutation-rank order. The quotient is kI + A(R_k).
inline CellPartition sr_cell_partition(int k) {
    if (k < 1) throw std::invalid_argument("sr_cell_partition: k must be >= 1");
    const long long nv = sr_vertex_count(k);
    std::vector<int> cell_of(nv);
    for (long long v = 0; v < nv; ++v) cell_of[v] = static_cast<int>(v >> k);
    return CellPartition::from_cell_of(cell_of, static_cast<int>(detail::factorials()[k]));
}

// One side of the parity split of a cell V_pi: the signed permutations over
// base pi whose number of + signs is even (parity 0) or odd (parity 1).
struct ParityClassToken {
    std::vector<int> base;
    int parity = 0;

    bool operator==(const ParityClassToken&) const = default;

    std::string to_string() const {
        std::string s;
        for (int d : base) s += std::to_string(d);
        s += '^';
        s += std::to_string(parity);
        return s;
    }
};

inline ParityClassToken parse_parity_token(const std::string& text) {
    auto caret = text.find('^');
    if (caret == std::string::npos || caret == 0 || caret + 2 != text.size())
        throw std::invalid_argument("bad parity token '" + text + "'");
    ParityClassToken tok;
    for (std::size_t i = 0; i < caret; ++i) {
        if (text[i] < '1' || text[i] > '9')
            throw std::invalid_argument("bad parity token '" + text + "'");
        tok.base.push_back(text[i] - '0');
    }
    if (text[caret + 1] != '0' && text[caret + 1] != '1')
        throw std::invalid_argument("bad parity token '" + text + "'");
    tok.parity = text[caret + 1] - '0';
    return tok;
}

// Number of + signs of the vertex with this sign mask, mod 2.
inline int plus_parity(int k, long long mask) {
    int minus = 0;
    for (int t = 0; t < k; ++t)
        if (mask & (1ll << t)) ++minus;
    return (k - minus) & 1;
}

// Expands per-(cell, parity-class) colors to a full coloring of SR_k.
// Every (pi, parity) pair must be covered exactly once.
inline Coloring expand_parity_coloring(int k,
                                       const std::vector<std::pair<ParityClassToken, int>>& classes) {
    const long long nv = sr_vertex_count(k);
    const long long kfact = detail::factorials()[k];
    // color of (perm rank, parity)
    std::vector<std::array<int, 2>> table(kfact, {-1, -1});
    int max_color = -1;
    for (const auto& [tok, color] : classes) {
        if (static_cast<int>(tok.base.size()) != k)
            throw std::invalid_argument("parity token degree mismatch: " + tok.to_string());
        validate_signed_permutation(SignedPermutation{tok.base});
        if (color < 0) throw std::invalid_argument("negative color for " + tok.to_string());
        const long long r = permutation_rank(tok.base);
        if (table[r][tok.parity] != -1)
            throw std::invalid_argument("duplicated parity token " + tok.to_string());
        table[r][tok.parity] = color;
        max_color = std::max(max_color, color);
    }
    for (long long r = 0; r < kfact; ++r)
        for (int par = 0; par < 2; ++par)
            if (table[r][par] == -1) {
                ParityClassToken missing{permutation_unrank(k, r), par};
                throw std::invalid_argument("missing parity token " + missing.to_string());
            }
    Coloring c;
    c.num_colors = max_color + 1;
    c.colors.resize(nv);
    const long long mask_bits = (1ll << k) - 1;
    for (long long v = 0; v < nv; ++v)
        c.colors[v] = table[v >> k][plus_parity(k, v & mask_bits)];
    return c;
}

// Fixture format: sections "color <c>:" followed by whitespace-separated
// tokens like 52143^0. Brackets, commas and stray math markup are ignored.
inline std::vector<std::pair<ParityClassToken, int>> read_parity_coloring(std::istream& is) {
    std::string cleaned((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    for (char& ch : cleaned)
        if (ch == '[' || ch == ']' || ch == ',' || ch == '$' || ch == '{' || ch == '}')
            ch = ' ';
    std::istringstream ss(cleaned);
    std::vector<std::pair<ParityClassToken, int>> classes;
    int current_color = -1;
    std::string word;
    while (ss >> word) {
        if (word == "color" || word == "Color") {
            if (!(ss >> word)) throw std::invalid_argument("parity fixture: dangling 'color'");
            if (!word.empty() && word.back() == ':') word.pop_back();
            current_color = std::stoi(word);
            if (current_color < 0) throw std::invalid_argument("parity fixture: negative color");
            continue;
        }
        if (!word.empty() && word.back() == ':') continue;  // "0:" after "color"
        if (current_color < 0)
            throw std::invalid_argument("parity fixture: token before any color section");
        classes.emplace_back(parse_parity_token(word), current_color);
    }
    return classes;
}

namespace detail {

// Cell schemes list (permutation digits, first color, second color), colors
// 1-based as printed; the first color goes on the parity class of the
// all-plus vertex, which has k plus signs.
inline std::vector<std::pair<ParityClassToken, int>> cell_scheme(
    int k, const std::vector<std::pair<std::string, std::pair<int, int>>>& cells) {
    std::vector<std::pair<ParityClassToken, int>> classes;
    const int all_plus_parity = k & 1;
    for (const auto& [digits, colors] : cells) {
        ParityClassToken tok;
        for (char ch : digits) tok.base.push_back(ch - '0');
        tok.parity = all_plus_parity;
        classes.emplace_back(tok, colors.first - 1);
        tok.parity = 1 - all_plus_parity;
        classes.emplace_back(tok, colors.second - 1);
    }
    return classes;
}

}  // namespace detail

// The hexagon cell scheme that 3-colors SR_3: opposite cells share colors,
// consecutive cells rotate through {12, 23, 31}.
inline std::vector<std::pair<ParityClassToken, int>> sr3_cell_scheme() {
    return detail::cell_scheme(3, {
                                      {"123", {1, 2}},
                                      {"213", {2, 3}},
                                      {"231", {3, 1}},
                                      {"321", {1, 2}},
                                      {"312", {2, 3}},
                                      {"132", {3, 1}},
                                  });
}

// Layered cell scheme that 4-colors SR_4; odd layers use {1,2}, even {3,4},
// with per-cell swaps so the full-reversal matchings stay proper.
inline std::vector<std::pair<ParityClassToken, int>> sr4_cell_scheme() {
    return detail::cell_scheme(4, {
                                      {"1234", {1, 2}},
                                      {"2134", {3, 4}},
                                      {"1243", {3, 4}},
                                      {"1324", {3, 4}},
                                      {"1342", {2, 1}},
                                      {"2143", {2, 1}},
                                      {"3124", {2, 1}},
                                      {"1423", {2, 1}},
                                      {"2314", {2, 1}},
                                      {"2341", {4, 3}},
                                      {"4123", {3, 4}},
                                      {"3214", {4, 3}},
                                      {"1432", {3, 4}},
                                      {"3142", {3, 4}},
                                      {"2413", {4, 3}},
                                      {"3241", {1, 2}},
                                      {"4132", {1, 2}},
                                      {"2431", {1, 2}},
                                      {"3412", {1, 2}},
                                      {"4213", {1, 2}},
                                      {"4312", {4, 3}},
                                      {"3421", {4, 3}},
                                      {"4231", {4, 3}},
                                      {"4321", {2, 1}},
                                  });
}

}  // namespace flipgraphs
