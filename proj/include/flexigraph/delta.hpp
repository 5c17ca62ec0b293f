#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "flexigraph/aut.hpp"
#include "flexigraph/graph.hpp"
#include "flexigraph/machine.hpp"

namespace flexigraph {

// The 4-valent quotient graph: vertices are right cosets D4\G/M, labelled by
// their lexicographically least machine element; the neighbours of [u] are
// [z a^e u] for e in 0..3.
struct DeltaData {
    LabeledGraph graph;
    std::vector<QuotientMachine::Elem> vertex_rep;       // canonical coset reps
    std::unordered_map<std::uint64_t, int> coset_of_key; // machine elem key -> vertex

    int coset_of(const QuotientMachine& m, const QuotientMachine::Elem& e) const {
        return coset_of_key.at(m.elem_key(e));
    }
};

inline DeltaData build_delta(const QuotientMachine& m) {
    DeltaData d;
    const auto& d4 = m.d4_elements();

    // group all machine elements into left D4-cosets
    std::vector<std::uint64_t> rep_keys;
    d.coset_of_key.reserve(m.order() * 2);
    for (std::uint64_t k = 0; k < m.order(); ++k) {
        QuotientMachine::Elem u = m.elem_of_key(k);
        if (d.coset_of_key.count(k)) continue;
        std::vector<std::uint64_t> orbit;
        std::uint64_t best = UINT64_MAX;
        for (const auto& g : d4) {
            std::uint64_t ok = m.elem_key(m.mul(g, u));
            orbit.push_back(ok);
            best = std::min(best, ok);
        }
        std::sort(orbit.begin(), orbit.end());
        orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
        if (orbit.size() != 8)
            throw Error::domain("build_delta: D4 image does not act freely on cosets");
        int id = static_cast<int>(rep_keys.size());
        rep_keys.push_back(best);
        for (std::uint64_t ok : orbit) d.coset_of_key.emplace(ok, id);
    }
    // ids by sorted canonical representative, deterministic
    std::vector<int> perm(rep_keys.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(),
              [&](int a, int b) { return rep_keys[a] < rep_keys[b]; });
    std::vector<int> newid(rep_keys.size());
    for (std::size_t i = 0; i < perm.size(); ++i) newid[perm[i]] = static_cast<int>(i);
    for (auto& [k, v] : d.coset_of_key) v = newid[v];
    d.vertex_rep.resize(rep_keys.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        d.vertex_rep[i] = m.elem_of_key(rep_keys[perm[i]]);

    // adjacency: [u] ~ [z a^e u]
    int n = static_cast<int>(d.vertex_rep.size());
    std::vector<Edge> edges;
    std::vector<std::string> labels(n);
    QuotientMachine::Elem mz = m.image_of_letter('z');
    QuotientMachine::Elem ma = m.image_of_letter('a');
    for (int v = 0; v < n; ++v) {
        labels[v] = m.elem_str(d.vertex_rep[v]);
        QuotientMachine::Elem mult = mz; // z a^e for e = 0..3
        std::vector<int> nb;
        for (int e = 0; e < 4; ++e) {
            nb.push_back(d.coset_of(m, m.mul(mult, d.vertex_rep[v])));
            mult = m.mul(mult, ma);
        }
        std::sort(nb.begin(), nb.end());
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end() ||
            std::find(nb.begin(), nb.end(), v) != nb.end())
            throw Error::domain("build_delta: coincident neighbours (MultiEdge)");
        for (int w : nb)
            if (v < w) edges.push_back({v, w});
    }
    d.graph = LabeledGraph(n, std::move(edges), std::move(labels));
    if (!d.graph.regular(4)) throw Error::domain("build_delta: graph is not 4-valent");
    if (!d.graph.connected()) throw Error::domain("build_delta: graph is not connected");
    return d;
}

// Edge partition into the (za^2)-orbit cycles: the cycle through [u] is
// {[(za^2)^j u]}, and the second cycle through [u] is the one through a*u.
struct CycleDecomp {
    std::vector<std::vector<int>> cycles;            // canonical cyclic vertex sequences
    std::vector<std::array<int, 2>> cycles_at;       // per vertex, the two incident cycles
    std::vector<int> cycle_of_edge;                  // per delta edge
};

namespace detail {

inline std::vector<int> canonical_cycle(std::vector<int> cyc) {
    auto it = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), it, cyc.end());
    if (cyc.size() > 2 && cyc[cyc.size() - 1] < cyc[1]) {
        std::reverse(cyc.begin() + 1, cyc.end());
    }
    return cyc;
}

} // namespace detail

inline CycleDecomp two_factor(const QuotientMachine& m, const DeltaData& d) {
    const LabeledGraph& g = d.graph;
    CycleDecomp c;
    c.cycles_at.assign(g.n(), {-1, -1});
    c.cycle_of_edge.assign(g.edge_count(), -1);
    QuotientMachine::Elem za2 =
        m.mul(m.image_of_letter('z'), m.pow(m.image_of_letter('a'), 2));
    QuotientMachine::Elem ma = m.image_of_letter('a');

    std::map<std::vector<int>, int> seen;
    auto trace = [&](QuotientMachine::Elem start) {
        std::vector<int> cyc;
        QuotientMachine::Elem cur = start;
        int first = d.coset_of(m, cur);
        do {
            cyc.push_back(d.coset_of(m, cur));
            cur = m.mul(za2, cur);
        } while (d.coset_of(m, cur) != first);
        std::vector<int> key = detail::canonical_cycle(cyc);
        auto [it, fresh] = seen.emplace(key, static_cast<int>(c.cycles.size()));
        if (fresh) c.cycles.push_back(key);
        return it->second;
    };

    for (int v = 0; v < g.n(); ++v) {
        int c1 = trace(d.vertex_rep[v]);
        int c2 = trace(m.mul(ma, d.vertex_rep[v]));
        if (c1 == c2)
            throw Error::domain("two_factor: the two cycles at a vertex coincide "
                                "(NotAPartition)");
        c.cycles_at[v] = {std::min(c1, c2), std::max(c1, c2)};
    }

    // the cycle edges must partition the edge set
    for (std::size_t ci = 0; ci < c.cycles.size(); ++ci) {
        const std::vector<int>& cyc = c.cycles[ci];
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            int u = cyc[i], v = cyc[(i + 1) % cyc.size()];
            int ei = g.edge_index(u, v);
            if (c.cycle_of_edge[ei] != -1 && c.cycle_of_edge[ei] != static_cast<int>(ci))
                throw Error::domain("two_factor: edge on two cycles (NotAPartition)");
            c.cycle_of_edge[ei] = static_cast<int>(ci);
        }
    }
    for (int e : c.cycle_of_edge)
        if (e == -1) throw Error::domain("two_factor: uncovered edge (NotAPartition)");
    return c;
}

// Construction: replace each vertex of a 4-valent graph by a matched pair of
// degree-3 vertices, one per incident cycle of the decomposition.
struct SplitResult {
    LabeledGraph graph;
    std::vector<std::pair<int, int>> vertex_label; // (delta vertex, cycle id)
    std::vector<int> edge_class;                   // 0 = matching, 1 = cycle
    std::size_t matching_edges = 0, cycle_edges = 0;
};

inline SplitResult split_graph(const LabeledGraph& delta, const CycleDecomp& c) {
    if (!delta.regular(4)) throw Error::domain("split: input not 4-valent (NotFourValent)");
    for (int v = 0; v < delta.n(); ++v)
        if (c.cycles_at[v][0] < 0 || c.cycles_at[v][0] == c.cycles_at[v][1])
            throw Error::domain("split: vertex not on two cycles (NotACycleCover)");

    SplitResult s;
    // vertex (v, cycles_at[v][k]) -> 2v + k
    auto vid = [&](int v, int cycle) {
        if (c.cycles_at[v][0] == cycle) return 2 * v;
        if (c.cycles_at[v][1] == cycle) return 2 * v + 1;
        throw Error::domain("split: vertex not on claimed cycle (NotACycleCover)");
    };
    std::vector<Edge> edges;
    std::vector<int> cls;
    std::vector<std::string> labels;
    for (int v = 0; v < delta.n(); ++v) {
        for (int k = 0; k < 2; ++k) {
            s.vertex_label.push_back({v, c.cycles_at[v][k]});
            labels.push_back("(v" + std::to_string(v) + ",c" +
                             std::to_string(c.cycles_at[v][k]) + ")");
        }
        edges.push_back({2 * v, 2 * v + 1});
        cls.push_back(0);
    }
    for (std::size_t ci = 0; ci < c.cycles.size(); ++ci) {
        const std::vector<int>& cyc = c.cycles[ci];
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            int u = cyc[i], v = cyc[(i + 1) % cyc.size()];
            int a = vid(u, static_cast<int>(ci)), b = vid(v, static_cast<int>(ci));
            edges.push_back({std::min(a, b), std::max(a, b)});
            cls.push_back(1);
        }
    }
    // sort edges together with their classes
    std::vector<std::size_t> perm(edges.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return edges[a] < edges[b];
    });
    std::vector<Edge> se;
    std::vector<int> sc;
    for (std::size_t i : perm) {
        se.push_back(edges[i]);
        sc.push_back(cls[i]);
    }
    s.graph = LabeledGraph(2 * delta.n(), se, std::move(labels));
    s.edge_class = std::move(sc);
    for (int x : s.edge_class)
        (x == 0 ? s.matching_edges : s.cycle_edges) += 1;
    return s;
}

} // namespace flexigraph
