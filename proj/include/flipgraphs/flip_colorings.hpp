#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flipgraphs/coloring.hpp"
#include "flipgraphs/gf.hpp"
#include "flipgraphs/matchings.hpp"
#include "flipgraphs/signed_perms.hpp"

namespace flipgraphs {

struct GfColoringResult {
    FieldSpec field;
    std::vector<long long> raw_values;  // field-element index per matching
    Coloring coloring;                  // raw values reindexed densely
};

// f(M) = sum over matching edges of sigma(u) sigma(v) in GF(q), q the
// smallest prime power >= 2n+1, sigma(i) = i-th field element. Adjacent
// matchings always differ because f(Y)-f(X) factors into two nonzero terms.
inline GfColoringResult gf_coloring(const FlipGraph& fg) {
    if (fg.n < 2) throw std::invalid_argument("gf_coloring: need n >= 2");
    GfColoringResult res;
    res.field = smallest_prime_power_at_least(2ll * fg.n + 1);
    const GaloisField field(res.field);

    std::vector<FieldElement> sigma;
    sigma.reserve(2 * fg.n);
    for (int i = 0; i < 2 * fg.n; ++i) sigma.push_back(field.element(i));

    res.raw_values.reserve(fg.matchings.size());
    for (const auto& m : fg.matchings) {
        FieldElement acc = field.zero();
        for (int v = 0; v < 2 * fg.n; ++v)
            if (v < m.partner[v]) acc = field.add(acc, field.mul(sigma[v], sigma[m.partner[v]]));
        res.raw_values.push_back(field.index_of(acc));
    }

    std::vector<long long> used = res.raw_values;
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    res.coloring.num_colors = static_cast<int>(used.size());
    res.coloring.colors.reserve(res.raw_values.size());
    for (long long raw : res.raw_values)
        res.coloring.colors.push_back(static_cast<int>(
            std::lower_bound(used.begin(), used.end(), raw) - used.begin()));

    if (!verify_coloring(fg.graph, res.coloring).proper)
        throw std::logic_error("gf_coloring: construction produced an improper coloring");
    return res;
}

// Layered coloring behind chi(M(K_2n)) <= chi(SR_{n-1}) + chi(SR_{n-2}):
// layer ell holds the matchings whose union with M0 has ell cycles; flips
// move between adjacent layers only, so odd layers draw from one palette and
// even layers from a disjoint one. Within a layer every component is a box
// product of signed reversal graphs and is colored by folding the supplied
// factor colorings with the box-product rule.
inline Coloring layered_coloring(const FlipGraph& fg,
                                 const std::map<int, Coloring>& factor_colorings) {
    for (int k = 0; k <= fg.n - 1; ++k) {
        auto it = factor_colorings.find(k);
        if (it == factor_colorings.end())
            throw std::invalid_argument("layered_coloring: missing factor coloring for SR_" +
                                        std::to_string(k));
        if (static_cast<long long>(it->second.colors.size()) != sr_vertex_count(k))
            throw std::invalid_argument("layered_coloring: factor coloring for SR_" +
                                        std::to_string(k) + " has the wrong vertex count");
    }

    const long long nv = fg.graph.num_vertices();
    std::vector<int> folded(nv, 0);
    std::vector<int> layer(nv, 0);
    int palette_odd = 1, palette_even = 1;
    for (long long v = 0; v < nv; ++v) {
        const MatchingCoordinates mc = matching_coordinates(fg.matchings[v]);
        const int ell = static_cast<int>(mc.cycle_perms.size());
        layer[v] = ell;
        int color = 0, palette = 1;
        for (std::size_t c = 0; c < mc.cycle_perms.size(); ++c) {
            const int k = static_cast<int>(mc.cycle_symbols[c].size()) - 1;
            const Coloring& fc = factor_colorings.at(k);
            const int fc_color = fc.colors[sr_index(mc.cycle_perms[c])];
            palette = std::max(palette, std::max(fc.num_colors, 1));
            color = (color + fc_color) % palette;
        }
        folded[v] = color;
        if (ell % 2 == 1)
            palette_odd = std::max(palette_odd, palette);
        else
            palette_even = std::max(palette_even, palette);
    }

    Coloring res;
    res.num_colors = palette_odd + palette_even;
    res.colors.resize(nv);
    for (long long v = 0; v < nv; ++v)
        res.colors[v] = layer[v] % 2 == 1 ? folded[v] : palette_odd + folded[v];

    if (!verify_coloring(fg.graph, res).proper)
        throw std::logic_error("layered_coloring: construction produced an improper coloring");
    return res;
}

// Proper colorings of SR_0..SR_max_k for the layered construction: the cell
// schemes for SR_3 and SR_4, DSATUR elsewhere (exact on the bipartite SR_1,
// SR_2). An explicit SR_5 coloring (e.g. the 4-color fixture) can override
// the DSATUR fallback.
inline std::map<int, Coloring> standard_factor_colorings(int max_k,
                                                         const Coloring* sr5 = nullptr) {
    std::map<int, Coloring> out;
    for (int k = 0; k <= max_k; ++k) {
        if (k == 0) {
            out[0] = Coloring{{0}, 1};
        } else if (k == 3) {
            out[3] = expand_parity_coloring(3, sr3_cell_scheme());
        } else if (k == 4) {
            out[4] = expand_parity_coloring(4, sr4_cell_scheme());
        } else if (k == 5 && sr5 != nullptr) {
            out[5] = *sr5;
        } else {
            out[k] = dsatur_coloring(build_signed_reversal_graph(k).graph);
        }
    }
    return out;
}

}  // namespace flipgraphs
