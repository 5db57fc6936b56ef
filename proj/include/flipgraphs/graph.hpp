#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flipgraphs/bigint.hpp"

namespace flipgraphs {

using Edge = std::pair<int, int>;

// Immutable undirected simple graph: sorted adjacency lists, no self-loops,
// no parallel edges. Safe for concurrent reads once built.
class Graph {
public:
    Graph() = default;

    int num_vertices() const { return static_cast<int>(adj_.size()); }
    long long num_edges() const { return num_edges_; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }

    bool has_edge(int u, int v) const {
        const auto& a = adj_[u];
        return std::binary_search(a.begin(), a.end(), v);
    }

    bool is_regular() const {
        for (int v = 1; v < num_vertices(); ++v)
            if (degree(v) != degree(0)) return false;
        return true;
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(static_cast<std::size_t>(num_edges_));
        for (int u = 0; u < num_vertices(); ++u)
            for (int v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

private:
    friend Graph build_graph(int, const std::vector<Edge>&);
    friend Graph graph_from_sorted_adjacency(std::vector<std::vector<int>>);

    std::vector<std::vector<int>> adj_;
    long long num_edges_ = 0;
};

inline Graph build_graph(int num_vertices, const std::vector<Edge>& edges) {
    if (num_vertices < 0) throw std::invalid_argument("build_graph: negative vertex count");
    Graph g;
    g.adj_.assign(num_vertices, {});
    for (auto [u, v] : edges) {
        if (u < 0 || u >= num_vertices || v < 0 || v >= num_vertices)
            throw std::out_of_range("build_graph: edge endpoint out of range");
        if (u == v) throw std::invalid_argument("build_graph: self-loop");
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    long long m = 0;
    for (auto& a : g.adj_) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        m += static_cast<long long>(a.size());
    }
    g.num_edges_ = m / 2;
    return g;
}

// Adjacency lists must already be symmetric, sorted, loop- and duplicate-free.
// Used by the generators that construct neighbor lists directly.
inline Graph graph_from_sorted_adjacency(std::vector<std::vector<int>> adj) {
    Graph g;
    long long m = 0;
    for (auto& a : adj) m += static_cast<long long>(a.size());
    g.adj_ = std::move(adj);
    g.num_edges_ = m / 2;
    return g;
}

struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_parent;    // sub index -> original vertex
    std::vector<int> from_parent;  // original vertex -> sub index, -1 outside
};

inline InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& vs) {
    InducedSubgraph res;
    res.from_parent.assign(g.num_vertices(), -1);
    res.to_parent = vs;
    std::sort(res.to_parent.begin(), res.to_parent.end());
    res.to_parent.erase(std::unique(res.to_parent.begin(), res.to_parent.end()),
                        res.to_parent.end());
    for (int i = 0; i < static_cast<int>(res.to_parent.size()); ++i) {
        int v = res.to_parent[i];
        if (v < 0 || v >= g.num_vertices())
            throw std::out_of_range("induced_subgraph: vertex out of range");
        res.from_parent[v] = i;
    }
    std::vector<std::vector<int>> adj(res.to_parent.size());
    for (int i = 0; i < static_cast<int>(res.to_parent.size()); ++i) {
        for (int w : g.neighbors(res.to_parent[i])) {
            int j = res.from_parent[w];
            if (j >= 0) adj[i].push_back(j);
        }
    }
    res.graph = graph_from_sorted_adjacency(std::move(adj));
    return res;
}

// Components listed in order of their smallest vertex; each sorted ascending.
inline std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(g.num_vertices(), 0);
    for (int s = 0; s < g.num_vertices(); ++s) {
        if (seen[s]) continue;
        std::vector<int> comp;
        std::queue<int> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            comp.push_back(u);
            for (int w : g.neighbors(u))
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

// Cartesian (box) product; vertex (a,b) gets index a*|V(h)| + b.
inline Graph box_product(const Graph& g, const Graph& h) {
    const int nh = h.num_vertices();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.num_vertices()) * nh);
    for (int a = 0; a < g.num_vertices(); ++a) {
        for (int b = 0; b < nh; ++b) {
            auto& out = adj[static_cast<std::size_t>(a) * nh + b];
            for (int a2 : g.neighbors(a)) out.push_back(a2 * nh + b);
            for (int b2 : h.neighbors(b)) out.push_back(a * nh + b2);
            std::sort(out.begin(), out.end());
        }
    }
    return graph_from_sorted_adjacency(std::move(adj));
}

struct BfsLayers {
    static constexpr int kUnreachable = -1;
    std::vector<int> dist;           // kUnreachable where no path exists
    std::vector<BigInt> geodesics;   // number of shortest paths from the source
    int eccentricity = 0;            // max finite distance
};

inline BfsLayers bfs_layers(const Graph& g, int source) {
    if (source < 0 || source >= g.num_vertices())
        throw std::out_of_range("bfs_layers: source out of range");
    BfsLayers r;
    r.dist.assign(g.num_vertices(), BfsLayers::kUnreachable);
    r.geodesics.assign(g.num_vertices(), 0);
    r.dist[source] = 0;
    r.geodesics[source] = 1;
    std::queue<int> q;
    q.push(source);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        r.eccentricity = r.dist[u];
        for (int w : g.neighbors(u)) {
            if (r.dist[w] == BfsLayers::kUnreachable) {
                r.dist[w] = r.dist[u] + 1;
                q.push(w);
            }
            if (r.dist[w] == r.dist[u] + 1) r.geodesics[w] += r.geodesics[u];
        }
    }
    return r;
}

inline int eccentricity(const Graph& g, int v) { return bfs_layers(g, v).eccentricity; }

// Max eccentricity over all vertices; requires a connected graph.
inline int diameter(const Graph& g) {
    int d = 0;
    for (int v = 0; v < g.num_vertices(); ++v) {
        BfsLayers b = bfs_layers(g, v);
        for (int u = 0; u < g.num_vertices(); ++u)
            if (b.dist[u] == BfsLayers::kUnreachable)
                throw std::invalid_argument("diameter: graph is disconnected");
        d = std::max(d, b.eccentricity);
    }
    return d;
}

// Two-colors the graph if bipartite; empty result otherwise.
inline bool is_bipartite(const Graph& g, std::vector<int>* side_out = nullptr) {
    std::vector<int> side(g.num_vertices(), -1);
    for (int s = 0; s < g.num_vertices(); ++s) {
        if (side[s] != -1) continue;
        side[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : g.neighbors(u)) {
                if (side[w] == -1) {
                    side[w] = 1 - side[u];
                    q.push(w);
                } else if (side[w] == side[u]) {
                    return false;
                }
            }
        }
    }
    if (side_out) *side_out = std::move(side);
    return true;
}

// Partition of the vertex set into nonempty disjoint covering cells.
struct CellPartition {
    std::vector<std::vector<int>> cells;
    std::vector<int> cell_of;

    int num_cells() const { return static_cast<int>(cells.size()); }

    static CellPartition from_cells(std::vector<std::vector<int>> cells, int num_vertices) {
        CellPartition p;
        p.cell_of.assign(num_vertices, -1);
        for (int c = 0; c < static_cast<int>(cells.size()); ++c) {
            if (cells[c].empty()) throw std::invalid_argument("CellPartition: empty cell");
            std::sort(cells[c].begin(), cells[c].end());
            for (int v : cells[c]) {
                if (v < 0 || v >= num_vertices)
                    throw std::out_of_range("CellPartition: vertex out of range");
                if (p.cell_of[v] != -1)
                    throw std::invalid_argument("CellPartition: cells not disjoint");
                p.cell_of[v] = c;
            }
        }
        for (int v = 0; v < num_vertices; ++v)
            if (p.cell_of[v] == -1)
                throw std::invalid_argument("CellPartition: cells do not cover all vertices");
        p.cells = std::move(cells);
        return p;
    }

    static CellPartition from_cell_of(const std::vector<int>& cell_of, int num_cells) {
        std::vector<std::vector<int>> cells(num_cells);
        for (int v = 0; v < static_cast<int>(cell_of.size()); ++v) {
            if (cell_of[v] < 0 || cell_of[v] >= num_cells)
                throw std::out_of_range("CellPartition: cell index out of range");
            cells[cell_of[v]].push_back(v);
        }
        return from_cells(std::move(cells), static_cast<int>(cell_of.size()));
    }
};

// entries[i][j] = number of neighbors in cell j of every vertex of cell i.
struct QuotientMatrix {
    std::vector<std::vector<int>> entries;
    int size() const { return static_cast<int>(entries.size()); }
};

// Witness: u and v share a cell but have different neighbor counts into target_cell.
class not_equitable : public std::runtime_error {
public:
    not_equitable(int u, int v, int cell, int target_cell, int count_u, int count_v)
        : std::runtime_error("partition is not equitable: vertices " + std::to_string(u) +
                             " and " + std::to_string(v) + " in cell " + std::to_string(cell) +
                             " have " + std::to_string(count_u) + " vs " +
                             std::to_string(count_v) + " neighbors in cell " +
                             std::to_string(target_cell)),
          u(u), v(v), cell(cell), target_cell(target_cell), count_u(count_u), count_v(count_v) {}

    int u, v, cell, target_cell, count_u, count_v;
};

inline QuotientMatrix check_equitable(const Graph& g, const CellPartition& p) {
    if (static_cast<int>(p.cell_of.size()) != g.num_vertices())
        throw std::invalid_argument("check_equitable: partition does not match graph");
    const int t = p.num_cells();
    QuotientMatrix q;
    q.entries.assign(t, std::vector<int>(t, 0));
    std::vector<int> counts(t);
    for (int c = 0; c < t; ++c) {
        bool first = true;
        for (int v : p.cells[c]) {
            std::fill(counts.begin(), counts.end(), 0);
            for (int w : g.neighbors(v)) ++counts[p.cell_of[w]];
            if (first) {
                q.entries[c] = counts;
                first = false;
            } else {
                for (int d = 0; d < t; ++d)
                    if (counts[d] != q.entries[c][d])
                        throw not_equitable(p.cells[c][0], v, c, d, q.entries[c][d], counts[d]);
            }
        }
    }
    return q;
}

// Coarsest equitable partition refining p: repeatedly split cells by the
// signature of neighbor counts into every current cell, until stable.
inline CellPartition refine_partition(const Graph& g, const CellPartition& p) {
    std::vector<int> cell_of = p.cell_of;
    int num_cells = p.num_cells();
    for (;;) {
        std::vector<int> counts(num_cells);
        std::map<std::pair<int, std::vector<int>>, int> sig_to_new;
        std::vector<int> next(g.num_vertices());
        for (int v = 0; v < g.num_vertices(); ++v) {
            std::fill(counts.begin(), counts.end(), 0);
            for (int w : g.neighbors(v)) ++counts[cell_of[w]];
            auto key = std::make_pair(cell_of[v], counts);
            auto [it, inserted] = sig_to_new.try_emplace(key, static_cast<int>(sig_to_new.size()));
            next[v] = it->second;
        }
        int new_num = static_cast<int>(sig_to_new.size());
        if (new_num == num_cells) break;
        cell_of = std::move(next);
        num_cells = new_num;
    }
    return CellPartition::from_cell_of(cell_of, num_cells);
}

// Edge-list text format: "p <num_vertices> <num_edges>" then "e <u> <v>" per
// edge with u < v, 0-indexed, LF line endings.
inline void write_edge_list(const Graph& g, std::ostream& os) {
    os << "p " << g.num_vertices() << " " << g.num_edges() << "\n";
    for (auto [u, v] : g.edges()) os << "e " << u << " " << v << "\n";
}

inline Graph read_edge_list(std::istream& is) {
    std::string line;
    int n = -1;
    long long m = -1;
    std::vector<Edge> edges;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "p") {
            if (!(ls >> n >> m) || n < 0) throw std::invalid_argument("edge list: bad p line");
            edges.reserve(static_cast<std::size_t>(m));
        } else if (tag == "e") {
            int u, v;
            if (!(ls >> u >> v)) throw std::invalid_argument("edge list: bad e line");
            edges.emplace_back(u, v);
        } else {
            throw std::invalid_argument("edge list: unknown line tag '" + tag + "'");
        }
    }
    if (n < 0) throw std::invalid_argument("edge list: missing p line");
    if (m >= 0 && m != static_cast<long long>(edges.size()))
        throw std::invalid_argument("edge list: edge count mismatch");
    return build_graph(n, edges);
}

}  // namespace flipgraphs
