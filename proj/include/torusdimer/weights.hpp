#pragma once

#include "torusdimer/graph_io.hpp"

#include <deque>
#include <numeric>

namespace td {

// Edge weights of a bipartite graph, indexed by edge id.
template <class S>
struct WeightCochain {
    std::vector<S> w;

    WeightCochain() = default;
    explicit WeightCochain(std::size_t edges) : w(edges, ScalarTraits<S>::from_int(1)) {}
    explicit WeightCochain(std::vector<S> v) : w(std::move(v)) {}

    std::size_t size() const { return w.size(); }
    S& operator[](EdgeId e) { return w.at(e); }
    const S& operator[](EdgeId e) const { return w.at(e); }
    bool positive() const
    {
        return std::all_of(w.begin(), w.end(), [](const S& x) { return ScalarTraits<S>::is_positive(x); });
    }
    friend bool operator==(const WeightCochain& a, const WeightCochain& b) { return a.w == b.w; }
};

// All edges need a weight line, or none do (then every weight is 1).
template <class S>
WeightCochain<S> weights_from_file(const GraphFile& f)
{
    WeightCochain<S> wt(f.graph.num_edges());
    if (f.weights.empty()) return wt;
    for (EdgeId e = 0; e < f.graph.num_edges(); ++e) {
        auto it = f.weights.find(e);
        if (it == f.weights.end()) throw GraphError("edge '" + f.graph.edge_name(e) + "' has no weight");
        wt[e] = parse_scalar<S>(it->second);
        if (ScalarTraits<S>::is_zero(wt[e])) throw GraphError("edge '" + f.graph.edge_name(e) + "' has weight zero");
    }
    return wt;
}

template <class S>
void store_weights(GraphFile& f, const WeightCochain<S>& wt)
{
    f.weights.clear();
    for (EdgeId e = 0; e < static_cast<EdgeId>(wt.size()); ++e) f.weights[e] = ScalarTraits<S>::format(wt[e]);
}

// +1 when the edge's "+" dart runs black to white.
inline int bw_orientation(const TorusGraph& g, EdgeId e)
{
    DartId d = TorusGraph::dart_of(e);
    if (g.color(g.tail(d)) == Color::black && g.color(g.head(d)) == Color::white) return 1;
    if (g.color(g.tail(d)) == Color::white && g.color(g.head(d)) == Color::black) return -1;
    throw GraphError("edge '" + g.edge_name(e) + "' does not join black to white");
}

// Alternating product: black-to-white traversals multiply, white-to-black divide.
template <class S>
S x_of_cycle(const TorusGraph& g, const WeightCochain<S>& wt, const CycleZ& c)
{
    if (!is_cycle(g, c)) throw std::invalid_argument("X-coordinate of a non-cycle");
    S x = ScalarTraits<S>::from_int(1);
    for (EdgeId e = 0; e < g.num_edges(); ++e)
        if (c.flow[e] != 0) x *= ipow(wt[e], c.flow[e] * bw_orientation(g, e));
    return x;
}

// f(b)^-1 wt(e) f(w) for a vertex function f.
template <class S>
WeightCochain<S> gauge_transform(const TorusGraph& g, const WeightCochain<S>& wt, const std::vector<S>& f)
{
    WeightCochain<S> out = wt;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        DartId d = TorusGraph::dart_of(e, bw_orientation(g, e) > 0);
        out[e] = wt[e] * f[g.head(d)] / f[g.tail(d)];
    }
    return out;
}

// Spanning tree grown from the lowest edge ids (Kruskal order).
inline std::vector<char> canonical_spanning_tree(const TorusGraph& g)
{
    std::vector<int> parent(g.num_vertices());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    std::vector<char> tree(g.num_edges(), 0);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        DartId d = TorusGraph::dart_of(e);
        int a = find(g.tail(d)), b = find(g.head(d));
        if (a == b) continue;
        parent[a] = b;
        tree[e] = 1;
    }
    return tree;
}

// Gauge so that every tree edge has weight 1.
template <class S>
WeightCochain<S> gauge_canonicalize(const TorusGraph& g, const WeightCochain<S>& wt)
{
    auto tree = canonical_spanning_tree(g);
    std::vector<S> f(g.num_vertices(), ScalarTraits<S>::from_int(1));
    std::vector<char> seen(g.num_vertices(), 0);
    std::deque<VertexId> q;
    for (VertexId root = 0; root < g.num_vertices(); ++root) {
        if (seen[root]) continue;
        seen[root] = 1;
        q.push_back(root);
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop_front();
            for (DartId d : g.darts_at(v)) {
                EdgeId e = g.edge_of(d);
                VertexId h = g.head(d);
                if (!tree[e] || seen[h]) continue;
                seen[h] = 1;
                // want wt(e) f(white) / f(black) = 1
                if (g.color(v) == Color::black)
                    f[h] = f[v] / wt[e];
                else
                    f[h] = f[v] * wt[e];
                q.push_back(h);
            }
        }
    }
    return gauge_transform(g, wt, f);
}

}  // namespace td
