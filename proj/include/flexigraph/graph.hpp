#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "flexigraph/error.hpp"

namespace flexigraph {

using Edge = std::pair<int, int>; // u < v

// Simple undirected graph with a sorted edge list and optional unique labels.
class LabeledGraph {
public:
    LabeledGraph() = default;

    LabeledGraph(int n, std::vector<Edge> edges, std::vector<std::string> labels = {})
        : n_(n), edges_(std::move(edges)), labels_(std::move(labels)) {
        for (Edge& e : edges_) {
            if (e.first > e.second) std::swap(e.first, e.second);
            if (e.first < 0 || e.second >= n_)
                throw Error::domain("LabeledGraph: vertex out of range");
            if (e.first == e.second) throw Error::domain("LabeledGraph: loop edge");
        }
        std::sort(edges_.begin(), edges_.end());
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
            throw Error::domain("LabeledGraph: multi-edge");
        if (!labels_.empty()) {
            if (static_cast<int>(labels_.size()) != n_)
                throw Error::domain("LabeledGraph: one label per vertex");
            std::vector<std::string> s = labels_;
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end())
                throw Error::domain("LabeledGraph: labels must be unique");
        }
        adj_.assign(n_, {});
        for (const Edge& e : edges_) {
            adj_[e.first].push_back(e.second);
            adj_[e.second].push_back(e.first);
        }
    }

    int n() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    const std::vector<std::string>& labels() const { return labels_; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    bool adjacent(int u, int v) const {
        const auto& nb = adj_[u];
        return std::find(nb.begin(), nb.end(), v) != nb.end();
    }

    int edge_index(int u, int v) const {
        if (u > v) std::swap(u, v);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
        if (it == edges_.end() || *it != Edge{u, v})
            throw Error::domain("LabeledGraph: no such edge");
        return static_cast<int>(it - edges_.begin());
    }

    bool regular(int k) const {
        for (int v = 0; v < n_; ++v)
            if (degree(v) != k) return false;
        return true;
    }

    bool connected() const {
        if (n_ == 0) return true;
        std::vector<bool> seen(n_, false);
        std::deque<int> q{0};
        seen[0] = true;
        int cnt = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int w : adj_[v])
                if (!seen[w]) {
                    seen[w] = true;
                    ++cnt;
                    q.push_back(w);
                }
        }
        return cnt == n_;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> adj_;
};

// Length of a shortest cycle, by per-vertex truncated BFS: a non-tree edge
// met at depths (d(u), d(w)) witnesses a cycle of length d(u)+d(w)+1, and the
// minimum over all roots is exact.
inline int girth(const LabeledGraph& g) {
    int best = INT32_MAX;
    std::vector<int> dist(g.n()), parent(g.n());
    for (int root = 0; root < g.n(); ++root) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        std::deque<int> q{root};
        dist[root] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            if (2 * dist[u] + 1 >= best) break; // no shorter cycle reachable
            for (int w : g.neighbors(u)) {
                if (w == parent[u]) continue;
                if (dist[w] == -1) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    q.push_back(w);
                } else {
                    best = std::min(best, dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if (best == INT32_MAX) throw Error::domain("girth: graph is acyclic");
    return best;
}

// Number of girth cycles through each edge, by depth-bounded path search:
// a g-cycle through (u,v) is a simple u-v path of length g-1 avoiding the
// edge itself.
inline std::vector<int> edge_girth_profile(const LabeledGraph& g, int girth_len) {
    std::vector<int> counts(g.edge_count(), 0);
    std::vector<bool> used(g.n(), false);
    for (std::size_t ei = 0; ei < g.edge_count(); ++ei) {
        const int u = g.edges()[ei].first;
        const int v = g.edges()[ei].second;
        int found = 0;
        // DFS from u, target v, exactly girth_len - 1 steps
        auto rec = [&](auto&& self, int at, int depth) -> void {
            if (depth == girth_len - 1) {
                if (at == v) ++found;
                return;
            }
            for (int w : g.neighbors(at)) {
                if (used[w] || (at == u && w == v)) continue;
                if (w == v && depth != girth_len - 2) continue;
                used[w] = true;
                self(self, w, depth + 1);
                used[w] = false;
            }
        };
        used[u] = true;
        rec(rec, u, 0);
        used[u] = false;
        counts[ei] = found;
    }
    return counts;
}

} // namespace flexigraph
