#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <vector>

#include "flexigraph/graph.hpp"

namespace flexigraph {

struct AutResult {
    std::uint64_t order = 0;
    int vertex_orbits = 0;
    int edge_orbits = 0;
    std::vector<int> vertex_orbit_of; // orbit id per vertex
    std::vector<int> edge_orbit_of;   // orbit id per edge
};

namespace detail {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
    int classes(std::vector<int>& id_of) {
        id_of.assign(p.size(), -1);
        int next = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            int r = find(static_cast<int>(i));
            if (id_of[r] == -1) id_of[r] = next++;
        }
        for (std::size_t i = 0; i < p.size(); ++i) id_of[i] = id_of[find(static_cast<int>(i))];
        return next;
    }
};

} // namespace detail

// Exact automorphism group order and orbit data by backtracking over vertex
// images in BFS order, with full adjacency-iff consistency at each step.
// Intended for small instances; refuses graphs beyond max_n.
inline AutResult small_aut(const LabeledGraph& g, int max_n = 2000) {
    if (g.n() > max_n) throw Error::resource("small_aut: graph too large (TooLarge)");
    const int n = g.n();
    AutResult res;
    if (n == 0) {
        res.order = 1;
        return res;
    }

    // BFS vertex order over components keeps candidate sets small: any later
    // vertex has a mapped neighbor.
    std::vector<int> order;
    std::vector<int> anchor(n, -1); // earlier mapped neighbor in order
    {
        std::vector<bool> seen(n, false);
        for (int s = 0; s < n; ++s) {
            if (seen[s]) continue;
            seen[s] = true;
            std::deque<int> q{s};
            while (!q.empty()) {
                int v = q.front();
                q.pop_front();
                order.push_back(v);
                for (int w : g.neighbors(v))
                    if (!seen[w]) {
                        seen[w] = true;
                        anchor[w] = v;
                        q.push_back(w);
                    }
            }
        }
    }

    std::vector<int> img(n, -1), used(n, 0);
    detail::UnionFind vuf(n), euf(static_cast<int>(g.edge_count()));
    std::uint64_t count = 0;

    auto record = [&]() {
        ++count;
        for (int v = 0; v < n; ++v) vuf.unite(v, img[v]);
        for (std::size_t ei = 0; ei < g.edge_count(); ++ei) {
            auto [u, v] = g.edges()[ei];
            euf.unite(static_cast<int>(ei), g.edge_index(img[u], img[v]));
        }
    };

    auto consistent = [&](int v, int w) {
        if (g.degree(v) != g.degree(w)) return false;
        for (int u : order) {
            if (img[u] == -1) continue;
            if (g.adjacent(v, u) != g.adjacent(w, img[u])) return false;
        }
        return true;
    };

    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == order.size()) {
            record();
            return;
        }
        int v = order[i];
        if (anchor[v] == -1) {
            for (int w = 0; w < n; ++w) {
                if (used[w] || !consistent(v, w)) continue;
                img[v] = w;
                used[w] = 1;
                self(self, i + 1);
                img[v] = -1;
                used[w] = 0;
            }
        } else {
            for (int w : g.neighbors(img[anchor[v]])) {
                if (used[w] || !consistent(v, w)) continue;
                img[v] = w;
                used[w] = 1;
                self(self, i + 1);
                img[v] = -1;
                used[w] = 0;
            }
        }
    };
    rec(rec, 0);

    res.order = count;
    res.vertex_orbits = vuf.classes(res.vertex_orbit_of);
    res.edge_orbits = euf.classes(res.edge_orbit_of);
    return res;
}

} // namespace flexigraph
