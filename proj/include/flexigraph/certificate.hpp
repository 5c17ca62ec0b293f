#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flexigraph/aut.hpp"
#include "flexigraph/delta.hpp"
#include "flexigraph/graph.hpp"
#include "flexigraph/machine.hpp"

namespace flexigraph {

// Orbit data for the right machine action on the split graph and its parent.
struct ActionData {
    int delta_vertex_orbits = 0;
    int delta_edge_orbits = 0;
    bool delta_arc_transitive = false;
    bool preserves_two_factor = false;
    int gamma_vertex_orbits = 0;
    int gamma_edge_orbits = 0;
    std::uint64_t gamma_stabilizer_order = 0;
    std::vector<int> gamma_edge_orbit_of;
};

namespace detail {

// vertex map of the right action [u] -> [u h]
inline std::vector<int> delta_vertex_map(const QuotientMachine& m, const DeltaData& d,
                                         const QuotientMachine::Elem& h) {
    std::vector<int> map(d.graph.n());
    for (int v = 0; v < d.graph.n(); ++v)
        map[v] = d.coset_of(m, m.mul(d.vertex_rep[v], h));
    return map;
}

// induced map on the cycles of the 2-factor; every image must be a cycle
inline std::vector<int> cycle_map(const CycleDecomp& c, const std::vector<int>& vmap) {
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < c.cycles.size(); ++i)
        index.emplace(c.cycles[i], static_cast<int>(i));
    std::vector<int> out(c.cycles.size());
    for (std::size_t i = 0; i < c.cycles.size(); ++i) {
        std::vector<int> img = c.cycles[i];
        for (int& v : img) v = vmap[v];
        auto it = index.find(canonical_cycle(std::move(img)));
        if (it == index.end())
            throw Error::domain("machine action does not preserve the 2-factor "
                                "(ActionNotByAutomorphisms)");
        out[i] = it->second;
    }
    return out;
}

inline std::vector<int> gamma_vertex_map(const CycleDecomp& c, const std::vector<int>& vmap,
                                         const std::vector<int>& cmap) {
    std::vector<int> out(2 * vmap.size());
    for (std::size_t v = 0; v < vmap.size(); ++v) {
        for (int k = 0; k < 2; ++k) {
            int tv = vmap[v];
            int tc = cmap[c.cycles_at[v][k]];
            int tk;
            if (c.cycles_at[tv][0] == tc)
                tk = 0;
            else if (c.cycles_at[tv][1] == tc)
                tk = 1;
            else
                throw Error::domain("machine action breaks vertex-cycle incidence "
                                    "(ActionNotByAutomorphisms)");
            out[2 * v + k] = 2 * tv + tk;
        }
    }
    return out;
}

inline void check_graph_map(const LabeledGraph& g, const std::vector<int>& vmap) {
    for (const Edge& e : g.edges())
        if (!g.adjacent(vmap[e.first], vmap[e.second]))
            throw Error::domain("machine action is not by automorphisms "
                                "(ActionNotByAutomorphisms)");
}

} // namespace detail

inline ActionData action_orbits(const QuotientMachine& m, const DeltaData& d,
                                const CycleDecomp& c, const SplitResult& s) {
    ActionData out;
    const LabeledGraph& delta = d.graph;
    const LabeledGraph& gamma = s.graph;

    detail::UnionFind dv(delta.n()), de(static_cast<int>(delta.edge_count()));
    detail::UnionFind gv(gamma.n()), ge(static_cast<int>(gamma.edge_count()));
    out.preserves_two_factor = true;

    for (char gen : {'a', 'b', 'z'}) {
        QuotientMachine::Elem h = m.image_of_letter(gen);
        std::vector<int> vmap = detail::delta_vertex_map(m, d, h);
        detail::check_graph_map(delta, vmap);
        std::vector<int> cmap = detail::cycle_map(c, vmap);
        std::vector<int> gmap = detail::gamma_vertex_map(c, vmap, cmap);
        detail::check_graph_map(gamma, gmap);
        for (int v = 0; v < delta.n(); ++v) dv.unite(v, vmap[v]);
        for (std::size_t ei = 0; ei < delta.edge_count(); ++ei) {
            auto [u, v] = delta.edges()[ei];
            de.unite(static_cast<int>(ei), delta.edge_index(vmap[u], vmap[v]));
        }
        for (int v = 0; v < gamma.n(); ++v) gv.unite(v, gmap[v]);
        for (std::size_t ei = 0; ei < gamma.edge_count(); ++ei) {
            auto [u, v] = gamma.edges()[ei];
            ge.unite(static_cast<int>(ei), gamma.edge_index(gmap[u], gmap[v]));
        }
    }
    std::vector<int> tmp;
    out.delta_vertex_orbits = dv.classes(tmp);
    out.delta_edge_orbits = de.classes(tmp);
    out.gamma_vertex_orbits = gv.classes(tmp);
    out.gamma_edge_orbits = ge.classes(out.gamma_edge_orbit_of);

    // base vertex: the coset of the identity; D4 is its stabilizer in the
    // machine action
    int base = d.coset_of(m, m.identity());
    std::vector<std::vector<int>> d4_vmaps, d4_cmaps;
    for (const auto& dd : m.d4_elements()) {
        d4_vmaps.push_back(detail::delta_vertex_map(m, d, dd));
        d4_cmaps.push_back(detail::cycle_map(c, d4_vmaps.back()));
        if (d4_vmaps.back()[base] != base)
            throw Error::domain("action_orbits: D4 image moves the base vertex");
    }

    // arc-transitivity: the stabilizer reaches all 4 neighbours of the base
    {
        std::vector<int> nb = delta.neighbors(base);
        std::vector<bool> hit(delta.n(), false);
        std::vector<int> frontier = {nb[0]};
        hit[nb[0]] = true;
        while (!frontier.empty()) {
            int v = frontier.back();
            frontier.pop_back();
            for (const auto& vmap : d4_vmaps) {
                int w = vmap[v];
                if (!hit[w]) {
                    hit[w] = true;
                    frontier.push_back(w);
                }
            }
        }
        out.delta_arc_transitive = true;
        for (int w : nb) out.delta_arc_transitive &= hit[w];
    }

    // stabilizer of the split vertex (base, first incident cycle): D4-image
    // elements whose induced cycle map fixes that cycle
    {
        int cyc = c.cycles_at[base][0];
        std::uint64_t stab = 0;
        for (std::size_t k = 0; k < d4_vmaps.size(); ++k)
            if (d4_cmaps[k][cyc] == cyc) ++stab;
        out.gamma_stabilizer_order = stab;
    }
    return out;
}

// Structured verification report for the split graph.
struct FlexCertificate {
    int ell = 0; // 0 for the checker-only entry point
    int n = 0;
    int girth = 0;
    bool is_cubic = false;
    bool is_connected = false;
    bool vertex_transitive = false;
    std::vector<int> cycle_lengths;               // distinct 2-factor cycle lengths
    std::array<std::size_t, 2> edge_class_counts{0, 0}; // matching, cycle
    std::array<int, 2> girth_cycles_per_edge{-1, -1};   // per class, -1 = not constant
    bool profiles_separate = false;
    bool two_factor_preserved = false;
    int machine_edge_orbits = 0;
    std::uint64_t stabilizer_order = 0;
    std::optional<std::uint64_t> full_aut_order;
    std::optional<int> full_aut_edge_orbits;
    std::uint64_t machine_order = 0, p_order = 0, mbar_order = 0, q_order = 0;
    std::string verdict = "FAIL";
    std::string failure_stage; // empty on PASS

    bool pass() const { return verdict == "PASS"; }
};

// Everything the pipeline produces, for callers that also want the graphs.
struct BuildArtifacts {
    FlexCertificate cert;
    DeltaData delta;
    CycleDecomp cycles;
    SplitResult split;

    // the 2-factor of the split graph induced by the cycle class
    std::vector<std::vector<int>> gamma_two_factor() const {
        std::vector<std::vector<int>> out;
        for (std::size_t ci = 0; ci < cycles.cycles.size(); ++ci) {
            std::vector<int> cyc;
            for (int v : cycles.cycles[ci]) {
                int k = cycles.cycles_at[v][0] == static_cast<int>(ci) ? 0 : 1;
                cyc.push_back(2 * v + k);
            }
            out.push_back(std::move(cyc));
        }
        return out;
    }
};

// Full pipeline: machine -> Delta -> 2-factor -> split -> checks.  PASS iff
// girth == 2 ell, cubic, connected, vertex-transitive, two separated edge
// classes, and stabilizer order >= 4.
inline BuildArtifacts build_certified(int ell, int aut_max_n = 2000) {
    BuildArtifacts out;
    FlexCertificate& cert = out.cert;
    cert.ell = ell;
    std::string stage = "machine";
    try {
        QuotientMachine m(ell);
        cert.machine_order = m.order();
        cert.p_order = m.P_order();
        cert.mbar_order = m.Mbar_order();
        cert.q_order = m.Q_order();

        stage = "delta";
        out.delta = build_delta(m);

        stage = "two_factor";
        out.cycles = two_factor(m, out.delta);
        for (const auto& cyc : out.cycles.cycles) {
            int len = static_cast<int>(cyc.size());
            if (std::find(cert.cycle_lengths.begin(), cert.cycle_lengths.end(), len) ==
                cert.cycle_lengths.end())
                cert.cycle_lengths.push_back(len);
        }

        stage = "split";
        out.split = split_graph(out.delta.graph, out.cycles);
        const SplitResult& s = out.split;
        cert.n = s.graph.n();
        cert.is_cubic = s.graph.regular(3);
        cert.is_connected = s.graph.connected();
        cert.edge_class_counts = {s.matching_edges, s.cycle_edges};

        stage = "girth";
        cert.girth = girth(s.graph);

        stage = "edge_profile";
        std::vector<int> prof = edge_girth_profile(s.graph, cert.girth);
        std::array<int, 2> classProf{-2, -2};
        for (std::size_t ei = 0; ei < prof.size(); ++ei) {
            int cls = s.edge_class[ei];
            if (classProf[cls] == -2)
                classProf[cls] = prof[ei];
            else if (classProf[cls] != prof[ei])
                classProf[cls] = -1; // not constant within the class
        }
        cert.girth_cycles_per_edge = classProf;
        cert.profiles_separate =
            classProf[0] >= 0 && classProf[1] >= 0 && classProf[0] != classProf[1];

        stage = "action";
        ActionData act = action_orbits(m, out.delta, out.cycles, s);
        cert.vertex_transitive = act.gamma_vertex_orbits == 1;
        cert.machine_edge_orbits = act.gamma_edge_orbits;
        cert.stabilizer_order = act.gamma_stabilizer_order;
        cert.two_factor_preserved = act.preserves_two_factor;

        stage = "full_aut";
        if (s.graph.n() <= aut_max_n) {
            AutResult aut = small_aut(s.graph, aut_max_n);
            cert.full_aut_order = aut.order;
            cert.full_aut_edge_orbits = aut.edge_orbits;
        }

        bool ok = cert.girth == 2 * ell && cert.is_cubic && cert.is_connected &&
                  cert.vertex_transitive && cert.machine_edge_orbits == 2 &&
                  cert.profiles_separate && cert.stabilizer_order >= 4;
        if (cert.full_aut_edge_orbits) ok = ok && *cert.full_aut_edge_orbits == 2;
        cert.verdict = ok ? "PASS" : "FAIL";
        if (!ok) cert.failure_stage = "checks";
    } catch (const Error& e) {
        throw Error(e.kind(), "stage " + stage + ": " + e.what());
    }
    return out;
}

inline FlexCertificate certify_flexible(int ell, int aut_max_n = 2000) {
    return build_certified(ell, aut_max_n).cert;
}

// Checker-only entry point: evaluates the flexibility conditions for an
// arbitrary graph from its full automorphism group (no machine, no girth
// requirement).
inline FlexCertificate check_flexible_graph(const LabeledGraph& g, int aut_max_n = 2000) {
    FlexCertificate cert;
    cert.n = g.n();
    cert.is_cubic = g.regular(3);
    cert.is_connected = g.connected();
    cert.girth = girth(g);
    AutResult aut = small_aut(g, aut_max_n);
    cert.full_aut_order = aut.order;
    cert.full_aut_edge_orbits = aut.edge_orbits;
    cert.vertex_transitive = aut.vertex_orbits == 1;
    cert.stabilizer_order = cert.vertex_transitive && g.n() > 0 ? aut.order / g.n() : 0;
    bool ok = cert.is_cubic && cert.is_connected && cert.vertex_transitive &&
              aut.edge_orbits == 2 && cert.stabilizer_order >= 4;
    cert.verdict = ok ? "PASS" : "FAIL";
    if (!ok) cert.failure_stage = "checks";
    return cert;
}

} // namespace flexigraph
