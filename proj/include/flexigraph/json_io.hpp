#pragma once

#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"

#include "flexigraph/certificate.hpp"
#include "flexigraph/delta.hpp"
#include "flexigraph/graph.hpp"
#include "flexigraph/machine.hpp"
#include "flexigraph/oracles.hpp"

namespace flexigraph {

using ordered_json = nlohmann::ordered_json;

inline ordered_json graph_json(const LabeledGraph& g,
                               const std::vector<std::vector<int>>* two_factor = nullptr) {
    ordered_json j;
    j["n"] = g.n();
    ordered_json edges = ordered_json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.first, e.second});
    j["edges"] = std::move(edges);
    if (!g.labels().empty()) j["labels"] = g.labels();
    if (two_factor) j["two_factor"] = *two_factor;
    return j;
}

inline ordered_json machine_summary_json(const QuotientMachine& m) {
    ordered_json j;
    j["ell"] = m.ell();
    j["P_order"] = m.P_order();
    j["Mbar_order"] = m.Mbar_order();
    j["Q_order"] = m.Q_order();
    j["machine_order"] = m.order();
    return j;
}

inline ordered_json certificate_json(const FlexCertificate& c) {
    ordered_json j;
    j["ell"] = c.ell;
    j["n"] = c.n;
    j["girth"] = c.girth;
    j["is_cubic"] = c.is_cubic;
    j["is_connected"] = c.is_connected;
    j["vertex_transitive"] = c.vertex_transitive;
    j["cycle_lengths"] = c.cycle_lengths;
    j["edge_class_counts"] = {{"matching", c.edge_class_counts[0]},
                              {"cycle", c.edge_class_counts[1]}};
    j["girth_cycles_per_edge"] = {{"matching", c.girth_cycles_per_edge[0]},
                                  {"cycle", c.girth_cycles_per_edge[1]}};
    j["profiles_separate"] = c.profiles_separate;
    j["two_factor_preserved"] = c.two_factor_preserved;
    j["machine_edge_orbits"] = c.machine_edge_orbits;
    j["stabilizer_order"] = c.stabilizer_order;
    if (c.full_aut_order) j["full_aut_order"] = *c.full_aut_order;
    if (c.full_aut_edge_orbits) j["full_aut_edge_orbits"] = *c.full_aut_edge_orbits;
    if (c.machine_order) {
        j["machine"] = {{"ell", c.ell},
                        {"P_order", c.p_order},
                        {"Mbar_order", c.mbar_order},
                        {"Q_order", c.q_order},
                        {"machine_order", c.machine_order}};
        // both vertex-count readings, plus the instance bound
        j["vertex_counts"] = {{"split_graph", c.n},
                              {"quotient_graph", c.n / 2},
                              {"machine_order", c.machine_order},
                              {"bound_16_P", 16 * c.p_order}};
    }
    j["verdict"] = c.verdict;
    if (!c.failure_stage.empty()) j["failure_stage"] = c.failure_stage;
    return j;
}

inline ordered_json theoremB_json(const TheoremBReport& r) {
    ordered_json j;
    j["theorem"] = "B";
    j["rank"] = r.rank;
    j["ell"] = r.ell;
    j["ball_checked"] = r.ball_checked;
    j["trivial_image"] = r.trivial_image;
    j["short_words_certified_out"] = r.short_words_certified_out;
    j["trivial_set_exact"] = r.trivial_set_exact;
    j["claim"] = r.claim;
    j["verdict"] = r.pass ? "PASS" : "FAIL";
    return j;
}

inline ordered_json lemma43_json(const Lemma43Report& r) {
    ordered_json j;
    j["theorem"] = "4.3";
    j["ell"] = r.ell;
    j["ball_checked"] = r.ball_checked;
    j["members"] = r.members;
    j["members_exact"] = r.members_exact;
    j["long_witnesses_in"] = r.long_witnesses_in;
    j["claim"] = r.claim;
    j["verdict"] = r.pass ? "PASS" : "FAIL";
    return j;
}

inline ordered_json balls_json(const BallsReport& r,
                               const QuotientMachine* machine = nullptr) {
    ordered_json j;
    j["oracle"] = "balls";
    j["ell"] = r.ell;
    j["radius"] = r.radius;
    if (machine) j["machine"] = machine_summary_json(*machine);
    j["ball_checked"] = r.ball_checked;
    j["members"] = r.members;
    j["expected"] = r.expected;
    j["claim"] = r.claim;
    j["verdict"] = r.pass ? (*r.pass ? "PASS" : "FAIL") : "REPORT";
    return j;
}

inline ordered_json fox_json(const FoxReport& r) {
    ordered_json j;
    j["oracle"] = "fox";
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    j["matches"] = r.matches;
    j["claim"] = r.claim;
    j["verdict"] = r.pass ? "PASS" : "FAIL";
    return j;
}

// temp file + rename, so partial output never lands at the target path
inline void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error::domain("cannot open output file: " + tmp);
        out << content;
        if (!out) throw Error::domain("failed writing output file: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error::domain("failed to move output into place: " + path);
}

} // namespace flexigraph
