#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "krfree/extraction.hpp"
#include "krfree/graph.hpp"
#include "krfree/homomorphism.hpp"

namespace krf {

// JSON forms of the extraction artifacts.  Vertex sets are emitted as sorted
// arrays and objects carry alphabetically ordered keys (nlohmann's default),
// so serialization is byte-deterministic: identical runs produce identical
// files on every platform.

inline nlohmann::json set_to_json(const VertexSet& s) {
    nlohmann::json arr = nlohmann::json::array();
    s.for_each([&](int v) { arr.push_back(v); });
    return arr;
}

inline nlohmann::json edges_to_json(const Graph& g) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto [u, v] : g.edges())
        arr.push_back({u, v});
    return arr;
}

inline nlohmann::json hom_to_json(const HomMap& hm) {
    return {{"image", edges_to_json(hm.image)}, {"map", hm.map}};
}

inline nlohmann::json validation_to_json(const ValidationReport& report) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& item : report.items) {
        nlohmann::json j;
        j["equation"] = item.equation;
        j["classes"] = item.classes;
        j["status"] = item.pass ? "pass" : "fail";
        if (item.pass) {
            j["witness"] = nullptr;
        } else {
            nlohmann::json w;
            if (item.witness_edge)
                w["edge"] = {item.witness_edge->first, item.witness_edge->second};
            if (item.witness_nonedge)
                w["nonedge"] = {item.witness_nonedge->first, item.witness_nonedge->second};
            if (!item.witness_clique.empty())
                w["clique"] = item.witness_clique;
            if (item.edge_count >= 0) {
                w["edge_count"] = item.edge_count;
                w["expected"] = {0, item.expected_full};
            }
            j["witness"] = w;
        }
        arr.push_back(std::move(j));
    }
    return arr;
}

inline nlohmann::json report_to_json(const ExtractionReport& rep) {
    nlohmann::json j;
    j["n"] = rep.n;
    j["params"] = {{"r", rep.params.r},
                   {"eps", rep.params.eps.str()},
                   {"m", rep.m_effective},
                   {"m_source", rep.m_overridden ? "override" : "computed"},
                   {"seed", rep.params.seed},
                   {"max_retries", rep.params.max_retries},
                   {"auto_complete", rep.params.auto_complete},
                   {"minimize", rep.params.minimize}};
    nlohmann::json comp;
    comp["applied"] = rep.completion_applied;
    comp["added_edges"] = nlohmann::json::array();
    for (auto [u, v] : rep.completion_added)
        comp["added_edges"].push_back({u, v});
    j["completion"] = std::move(comp);

    j["sample_x"] = set_to_json(rep.sample_x);
    j["u_x"] = set_to_json(rep.u_x);
    j["y"] = set_to_json(rep.y);
    j["u_y"] = set_to_json(rep.u_y);

    j["base_class_count"] = rep.base_class_count;
    nlohmann::json classes = nlohmann::json::array();
    for (const VertexSet& c : rep.classes.classes())
        classes.push_back(set_to_json(c));
    j["classes"] = std::move(classes);

    // Per final class: its pre-merge signature (neighborhood inside Y for
    // base classes, the list of fully seen base classes for remainder
    // classes), or the member list when minimization merged several.
    nlohmann::json sigs = nlohmann::json::array();
    for (const auto& origin : rep.class_origins) {
        if (origin.size() == 1) {
            int i = origin[0];
            if (i < rep.base_class_count)
                sigs.push_back({{"kind", "base"},
                                {"y_neighborhood", set_to_json(rep.base_signatures[i])}});
            else
                sigs.push_back({{"kind", "remainder"},
                                {"sees", rep.remainder_sees[i - rep.base_class_count]}});
        } else {
            sigs.push_back({{"kind", "merged"}, {"members", origin}});
        }
    }
    j["class_signatures"] = std::move(sigs);

    j["minimize"] = {{"requested", rep.params.minimize}, {"groups", rep.class_origins}};
    j["quotient"] = {{"n", rep.quotient.vertex_count()}, {"edges", edges_to_json(rep.quotient)}};
    j["hom"] = hom_to_json(HomMap{rep.quotient, rep.hom_map});
    j["validations"] = validation_to_json(rep.validations);
    j["size_bound"] = {{"t", rep.base_class_count},
                       {"class_count", rep.premerge_class_count},
                       {"holds", rep.size_bound_holds}};
    j["quotient_kr_free"] = rep.quotient_kr_free;
    j["retries_used"] = rep.retries_used;
    return j;
}

inline std::string report_to_string(const ExtractionReport& rep) {
    return report_to_json(rep).dump(2) + "\n";
}

inline nlohmann::json attempt_failure_to_json(const AttemptFailure& f) {
    nlohmann::json j;
    j["attempt"] = f.attempt;
    j["stage"] = f.stage;
    j["detail"] = f.detail;
    j["sample_x"] = set_to_json(f.x);
    j["u_x"] = set_to_json(f.u_x);
    j["y"] = set_to_json(f.y);
    j["u_y"] = set_to_json(f.u_y);
    if (f.violation)
        j["violation"] = {{"vertex", f.violation->vertex},
                          {"class", f.violation->class_index},
                          {"neighbor", f.violation->seen},
                          {"non_neighbor", f.violation->unseen}};
    if (f.validations)
        j["validations"] = validation_to_json(*f.validations);
    if (f.classes) {
        nlohmann::json classes = nlohmann::json::array();
        for (const VertexSet& c : f.classes->classes())
            classes.push_back(set_to_json(c));
        j["classes"] = std::move(classes);
        j["base_class_count"] = f.base_class_count;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Trust-nothing re-validation of an emitted report against the input graph.
// Every claim is recomputed from the graph: the map, the partition, the
// blow-up structure, the quotient edge rule, and K_r-freeness of the image.

struct VerifyCheck {
    std::string check;
    bool pass;
    nlohmann::json detail;
};

struct VerifyResult {
    bool ok = true;
    std::vector<VerifyCheck> checks;

    void add(const std::string& name, bool pass, nlohmann::json detail = nullptr) {
        ok = ok && pass;
        checks.push_back({name, pass, std::move(detail)});
    }

    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : checks) {
            nlohmann::json j;
            j["check"] = c.check;
            j["status"] = c.pass ? "pass" : "fail";
            j["detail"] = c.detail;
            arr.push_back(std::move(j));
        }
        return {{"ok", ok}, {"checks", arr}};
    }
};

inline VerifyResult verify_report(const Graph& input, const nlohmann::json& rep) {
    VerifyResult res;
    const int n = rep.at("n").get<int>();
    const int r = rep.at("params").at("r").get<int>();
    if (n != input.vertex_count()) {
        res.add("graph-size", false,
                {{"report_n", n}, {"input_n", input.vertex_count()}});
        return res;
    }

    // Rebuild the graph the report describes (input plus completion edges).
    std::vector<std::pair<int, int>> edges = input.edges();
    for (const auto& e : rep.at("completion").at("added_edges"))
        edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    Graph g;
    try {
        g = Graph(n, edges);
    } catch (const std::exception& ex) {
        res.add("completion-edges", false, {{"error", ex.what()}});
        return res;
    }

    std::vector<std::pair<int, int>> h_edges;
    for (const auto& e : rep.at("quotient").at("edges"))
        h_edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    const int h_n = rep.at("quotient").at("n").get<int>();
    Graph h;
    try {
        h = Graph(h_n, h_edges);
    } catch (const std::exception& ex) {
        res.add("quotient-edges", false, {{"error", ex.what()}});
        return res;
    }

    std::vector<int> map = rep.at("hom").at("map").get<std::vector<int>>();
    bool total = (int)map.size() == n;
    for (int img : map)
        total = total && img >= 0 && img < h_n;
    res.add("map-total", total, {{"map_size", map.size()}, {"image_n", h_n}});
    if (!total)
        return res;

    // Homomorphism first, so a tampered map is reported as the edge it
    // breaks.
    bool hom_ok = true;
    nlohmann::json hom_detail = nullptr;
    for (auto [u, v] : g.edges()) {
        int a = map[u], b = map[v];
        if (a == b || !h.adjacent(a, b)) {
            hom_ok = false;
            hom_detail = {{"edge", {u, v}}, {"mapped", {a, b}}};
            break;
        }
    }
    res.add("homomorphism", hom_ok, hom_detail);

    std::vector<VertexSet> classes;
    bool classes_ok = true;
    nlohmann::json class_detail = nullptr;
    VertexSet ground(n);
    for (const auto& cj : rep.at("classes")) {
        VertexSet c(n);
        for (const auto& vj : cj) {
            int v = vj.get<int>();
            if (v < 0 || v >= n || ground.contains(v) || c.contains(v)) {
                classes_ok = false;
                class_detail = {{"vertex", v}};
                break;
            }
            c.insert(v);
            ground.insert(v);
        }
        if (!classes_ok)
            break;
        if (c.empty()) {
            classes_ok = false;
            class_detail = "empty class";
            break;
        }
        classes.push_back(std::move(c));
    }
    classes_ok = classes_ok && ground == g.vertices() && (int)classes.size() == h_n;
    res.add("classes-partition", classes_ok, class_detail);
    if (!classes_ok)
        return res;

    bool consistent = true;
    nlohmann::json cons_detail = nullptr;
    for (int i = 0; i < (int)classes.size() && consistent; ++i)
        classes[i].for_each([&](int v) {
            if (consistent && map[v] != i) {
                consistent = false;
                cons_detail = {{"vertex", v}, {"class", i}, {"mapped", map[v]}};
            }
        });
    res.add("map-matches-classes", consistent, cons_detail);

    bool indep = true;
    nlohmann::json indep_detail = nullptr;
    for (int i = 0; i < (int)classes.size() && indep; ++i)
        if (!is_independent(g, classes[i])) {
            indep = false;
            indep_detail = {{"class", i}};
        }
    res.add("classes-independent", indep, indep_detail);

    bool blowup_ok = true;
    nlohmann::json blow_detail = nullptr;
    for (int i = 0; i < (int)classes.size() && blowup_ok; ++i)
        for (int j = i + 1; j < (int)classes.size() && blowup_ok; ++j) {
            long long e = edges_between(g, classes[i], classes[j]);
            long long full = (long long)classes[i].count() * classes[j].count();
            bool adjacent = h.adjacent(i, j);
            if ((adjacent && e != full) || (!adjacent && e != 0)) {
                blowup_ok = false;
                blow_detail = {{"classes", {i, j}},
                               {"edge_count", e},
                               {"expected", adjacent ? full : 0}};
            }
        }
    res.add("blowup-structure", blowup_ok, blow_detail);

    bool kr_free = is_kr_free(h, r);
    res.add("image-clique-free", kr_free,
            kr_free ? nlohmann::json(nullptr)
                    : nlohmann::json({{"clique", find_clique(h, r)->to_vector()}}));
    return res;
}

} // namespace krf
