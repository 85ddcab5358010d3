// Command-line front end: graph generation, maximal K_r-free completion,
// quotient extraction, trust-nothing report verification, the brute-force
// minimum-image oracle, the proposition sweep, and CSV parameter sweeps.
//
// Exit codes: 0 success, 2 precondition/hypothesis failure (JSON diagnosis
// on stdout), 3 parse error, 4 extraction retries exhausted.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "krfree/edgelist.hpp"
#include "krfree/extraction.hpp"
#include "krfree/generators.hpp"
#include "krfree/report_json.hpp"
#include "krfree/structure.hpp"

using nlohmann::json;

namespace {

krf::Rational parse_eps(const std::string& s) {
    try {
        krf::Rational eps = krf::Rational::parse(s);
        return eps;
    } catch (const std::exception& e) {
        throw krf::ParseError(0, std::string("bad rational \"") + s + "\": " + e.what() +
                                     " (use the exact form p/q, e.g. 1/15)");
    }
}

std::vector<int> parse_int_list(const std::string& s, const char* what) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw krf::ParseError(0, std::string("bad ") + what + " entry \"" + tok + "\"");
        }
    }
    if (out.empty())
        throw krf::ParseError(0, std::string("empty ") + what + " list");
    return out;
}

krf::Graph parse_pattern(const std::string& spec) {
    auto num = [&](size_t off) {
        try {
            return std::stoi(spec.substr(off));
        } catch (const std::exception&) {
            throw krf::ParseError(0, "bad pattern \"" + spec + "\"");
        }
    };
    if (spec.rfind("cycle:", 0) == 0)
        return krf::cycle(num(6));
    if (spec.rfind("complete:", 0) == 0)
        return krf::complete(num(9));
    return krf::read_edge_list_file(spec).graph;
}

void write_graph(const std::string& out, const krf::Graph& g) {
    if (out.empty() || out == "-")
        krf::write_edge_list(std::cout, g);
    else
        krf::write_edge_list_file(out, g);
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        std::ofstream f(out);
        if (!f)
            throw std::runtime_error("cannot write \"" + out + "\"");
        f << text;
    }
}

struct ExtractOptions {
    std::string in;
    int r = 3;
    std::string eps;
    std::uint64_t seed = 0;
    long long m_override = -1;
    int max_retries = 5;
    bool minimize = false;
    bool auto_complete = false;
    std::string report_out;
};

krf::ExtractionParams to_params(const ExtractOptions& o) {
    krf::ExtractionParams p;
    p.r = o.r;
    p.eps = parse_eps(o.eps);
    if (o.m_override >= 0)
        p.m_override = o.m_override;
    p.max_retries = o.max_retries;
    p.seed = o.seed;
    p.minimize = o.minimize;
    p.auto_complete = o.auto_complete;
    return p;
}

int cmd_extract(const ExtractOptions& o) {
    krf::Graph g = krf::read_edge_list_file(o.in).graph;
    krf::ExtractionReport rep = krf::extract(g, to_params(o));
    std::string text = krf::report_to_string(rep);
    if (o.report_out.empty() || o.report_out == "-") {
        std::cout << text;
    } else {
        emit(o.report_out, text);
        json summary = {{"ok", true},
                        {"classes", rep.classes.size()},
                        {"quotient_n", rep.quotient.vertex_count()},
                        {"retries_used", rep.retries_used},
                        {"report", o.report_out}};
        std::cout << summary.dump() << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& in, const std::string& report_path) {
    krf::Graph g = krf::read_edge_list_file(in).graph;
    std::ifstream f(report_path);
    if (!f)
        throw krf::ParseError(0, "cannot open report \"" + report_path + "\"");
    json rep = json::parse(f);
    krf::VerifyResult res = krf::verify_report(g, rep);
    std::cout << res.to_json().dump(2) << "\n";
    return res.ok ? 0 : 2;
}

int cmd_oracle(const std::string& in, int r, int k_max, const std::string& json_out) {
    krf::Graph g = krf::read_edge_list_file(in).graph;
    auto res = krf::min_hom_image_bruteforce(g, r, k_max);
    if (!res) {
        std::cout << "k=none (no K_" << r << "-free image within k_max=" << k_max << ")\n";
    } else {
        std::cout << "k=" << res->k << "\n";
    }
    if (!json_out.empty()) {
        json j;
        if (res) {
            j = {{"k", res->k},
                 {"image", krf::edges_to_json(res->image)},
                 {"map", res->map}};
        } else {
            j = {{"k", nullptr}, {"k_max", k_max}};
        }
        emit(json_out, j.dump(2) + "\n");
    }
    return 0;
}

int cmd_props(const std::string& in, int r, const std::string& eps_str, int avoid_count) {
    krf::Graph g = krf::read_edge_list_file(in).graph;
    krf::ThresholdParams params(r, parse_eps(eps_str));
    krf::VertexSet avoid(g.vertex_count());
    for (int v = 0; v < avoid_count && v < g.vertex_count(); ++v)
        avoid.insert(v);
    krf::PropSuiteResult res = krf::run_prop_suite(g, params, avoid);
    std::cout << "non-adjacent pairs checked:   " << res.pairs_checked << "\n"
              << "common-nbhd bound violations: " << res.bound_violations << "\n"
              << "pair witnesses verified:      " << res.pair_witnesses - res.pair_witness_failures
              << " of " << res.pair_witnesses << " (exact fallbacks: " << res.pair_greedy_fallbacks
              << ")\n"
              << "large sets checked:           " << res.sets_checked
              << " (exact fallbacks: " << res.set_greedy_fallbacks << ")\n"
              << "set witness failures:         " << res.set_witness_failures << "\n";
    if (res.first_bound_violation) {
        auto& v = *res.first_bound_violation;
        std::cout << "first bound violation: pair (" << v.u << "," << v.v << ") common "
                  << v.common << " < bound " << v.bound << "\n";
    }
    if (res.first_pair_failure)
        std::cout << "first pair witness failure: (" << res.first_pair_failure->first << ","
                  << res.first_pair_failure->second << ")\n";
    if (res.first_set_failure)
        std::cout << "first set witness failure: "
                  << (*res.first_set_failure < 0 ? std::string("Z = V")
                                                 : "Z = N(" + std::to_string(*res.first_set_failure) +
                                                       ")")
                  << "\n";
    std::cout << "result: " << (res.ok() ? "OK" : "HYPOTHESIS FAILURE") << "\n";
    return res.ok() ? 0 : 2;
}

struct SweepOptions {
    std::string family;
    int part_size = 2; // c5-blowup, goddard-lyle pattern scale
    int n = 12;        // turan
    int parts = 3;     // turan
    int k = 3;         // andrasfai
    int r = 3;
    std::string eps;
    std::string eps_list;
    std::string m_list;
    int seeds = 10;
    int max_retries = 5;
    bool minimize = false;
    std::string csv;
};

int cmd_sweep(const SweepOptions& o) {
    std::vector<krf::Rational> eps_values;
    if (!o.eps_list.empty()) {
        std::stringstream ss(o.eps_list);
        std::string tok;
        while (std::getline(ss, tok, ','))
            eps_values.push_back(parse_eps(tok));
    } else {
        eps_values.push_back(parse_eps(o.eps));
    }
    std::vector<int> m_values = parse_int_list(o.m_list, "m");

    std::ostringstream csv;
    csv << "family,n,r,eps,m,seed,success,retries,quotient_size\n";
    for (const krf::Rational& eps : eps_values) {
        krf::Graph g;
        if (o.family == "c5-blowup") {
            g = krf::blow_up(krf::cycle(5), std::vector<int>(5, o.part_size)).graph;
        } else if (o.family == "turan") {
            g = krf::turan(o.n, o.parts);
        } else if (o.family == "andrasfai") {
            g = krf::andrasfai(o.k);
        } else if (o.family == "goddard-lyle") {
            auto sizes = krf::goddard_lyle_sizes(o.r, krf::cycle(5), eps);
            if (!sizes)
                throw std::invalid_argument("sweep: no goddard-lyle sizes for eps " + eps.str());
            for (int& s : *sizes)
                s *= o.part_size;
            g = krf::goddard_lyle(o.r, krf::cycle(5), *sizes).graph;
        } else {
            throw krf::ParseError(0, "unknown family \"" + o.family + "\"");
        }
        for (int m : m_values)
            for (int seed = 0; seed < o.seeds; ++seed) {
                krf::ExtractionParams p;
                p.r = o.r;
                p.eps = eps;
                p.m_override = m;
                p.seed = (std::uint64_t)seed;
                p.max_retries = o.max_retries;
                p.minimize = o.minimize;
                int success = 0, retries = 0, quotient_size = 0;
                try {
                    krf::ExtractionReport rep = krf::extract(g, p);
                    success = 1;
                    retries = rep.retries_used;
                    quotient_size = rep.quotient.vertex_count();
                } catch (const krf::ExtractionError& e) {
                    retries = e.attempts;
                } catch (const std::invalid_argument&) {
                    // precondition failure for this row (e.g. m > n)
                }
                csv << o.family << "," << g.vertex_count() << "," << o.r << "," << eps.str()
                    << "," << m << "," << seed << "," << success << "," << retries << ","
                    << quotient_size << "\n";
            }
    }
    emit(o.csv, csv.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounded K_r-free homomorphic images of dense graphs"};
    app.require_subcommand(1);

    // ---- generate ----
    auto* gen = app.add_subcommand("generate", "emit a generator graph as an edge list");
    gen->require_subcommand(1);
    std::string gen_out;
    int gn = 5, gk = 2, ga = 3, gb = 3, gparts = 3, gr = 4, gmax_n = 512, gscale = 1;
    std::string gpattern = "cycle:5", gsizes, geps;
    bool gsolve = false;

    auto add_out = [&](CLI::App* c) { c->add_option("-o,--out", gen_out, "output file (default stdout)"); };

    auto* g_cycle = gen->add_subcommand("cycle", "cycle C_n");
    g_cycle->add_option("--n", gn, "number of vertices")->required();
    add_out(g_cycle);
    auto* g_complete = gen->add_subcommand("complete", "complete graph K_n");
    g_complete->add_option("--n", gn)->required();
    add_out(g_complete);
    auto* g_kab = gen->add_subcommand("complete-bipartite", "complete bipartite K_{a,b}");
    g_kab->add_option("--a", ga)->required();
    g_kab->add_option("--b", gb)->required();
    add_out(g_kab);
    auto* g_blowup = gen->add_subcommand("blowup", "blow-up of a pattern graph");
    g_blowup->add_option("--pattern", gpattern, "cycle:K, complete:K, or an edge-list file")->required();
    g_blowup->add_option("--sizes", gsizes, "comma-separated part sizes")->required();
    add_out(g_blowup);
    std::string gjoin_a = "complete:1", gjoin_b = "cycle:5";
    auto* g_join = gen->add_subcommand("join", "join of two graphs (all cross edges added)");
    g_join->add_option("--a", gjoin_a, "first graph: cycle:K, complete:K, or a file")->required();
    g_join->add_option("--b", gjoin_b, "second graph")->required();
    add_out(g_join);
    auto* g_turan = gen->add_subcommand("turan", "balanced complete multipartite graph");
    g_turan->add_option("--n", gn)->required();
    g_turan->add_option("--parts", gparts)->required();
    add_out(g_turan);
    auto* g_andrasfai = gen->add_subcommand("andrasfai", "Cayley graph on Z_{3k-1}, connectors {k..2k-1}");
    g_andrasfai->add_option("--k", gk)->required();
    add_out(g_andrasfai);
    auto* g_kneser = gen->add_subcommand("kneser", "k-subsets of {0..n-1}, adjacent when disjoint");
    g_kneser->add_option("--n", gn)->required();
    g_kneser->add_option("--k", gk)->required();
    add_out(g_kneser);
    auto* g_gl = gen->add_subcommand("goddard-lyle", "blow-up of K_{r-3} joined with a pattern");
    g_gl->add_option("--r", gr)->required();
    g_gl->add_option("--pattern", gpattern, "cycle:K, complete:K, or an edge-list file");
    g_gl->add_option("--sizes", gsizes, "clique-side sizes then pattern sizes");
    g_gl->add_option("--eps", geps, "solve for sizes placing the graph in F(r, eps)");
    g_gl->add_flag("--solve", gsolve, "use the balanced-size solver (requires --eps)");
    g_gl->add_option("--max-n", gmax_n, "solver search cap");
    g_gl->add_option("--scale", gscale, "multiply solved sizes by this factor");
    add_out(g_gl);

    // ---- complete ----
    auto* comp = app.add_subcommand("complete", "saturate to a maximal K_r-free graph");
    std::string c_in, c_out, c_order = "lex";
    int c_r = 3;
    std::uint64_t c_seed = 0;
    comp->add_option("--in", c_in, "input edge list")->required();
    comp->add_option("--r", c_r, "clique order")->required();
    comp->add_option("--order", c_order, "edge order: lex | random");
    comp->add_option("--seed", c_seed, "seed for random order");
    comp->add_option("-o,--out", c_out, "output file")->required();

    // ---- extract ----
    auto* ext = app.add_subcommand("extract", "compute a bounded K_r-free homomorphic image");
    ExtractOptions eo;
    ext->add_option("--in", eo.in, "input edge list")->required();
    ext->add_option("--r", eo.r, "clique order")->required();
    ext->add_option("--eps", eo.eps, "degree margin as a rational p/q")->required();
    ext->add_option("--seed", eo.seed, "RNG seed");
    ext->add_option("--m-override", eo.m_override, "sample size override (n = deterministic X=V)");
    ext->add_option("--max-retries", eo.max_retries, "sampling attempts before giving up");
    ext->add_flag("--minimize", eo.minimize, "merge quotient twins before output");
    ext->add_flag("--auto-complete", eo.auto_complete, "saturate a non-maximal input first");
    ext->add_option("--report", eo.report_out, "report JSON output file (default stdout)");

    // ---- verify ----
    auto* ver = app.add_subcommand("verify", "re-validate a report against its input graph");
    std::string v_in, v_report;
    ver->add_option("--in", v_in, "input edge list")->required();
    ver->add_option("--report", v_report, "report JSON")->required();

    // ---- oracle ----
    auto* ora = app.add_subcommand("oracle", "brute-force minimum homomorphic image (n <= 14)");
    std::string o_in, o_json;
    int o_r = 3, o_kmax = 8;
    ora->add_option("--in", o_in)->required();
    ora->add_option("--r", o_r)->required();
    ora->add_option("--k-max", o_kmax)->required();
    ora->add_option("--json", o_json, "also write the witness image/map as JSON");

    // ---- props ----
    auto* pr = app.add_subcommand("props", "run all structural proposition checks");
    std::string p_in, p_eps;
    int p_r = 3, p_avoid = 0;
    pr->add_option("--in", p_in)->required();
    pr->add_option("--r", p_r)->required();
    pr->add_option("--eps", p_eps)->required();
    pr->add_option("--avoid", p_avoid, "avoid the first K vertices in witness searches");

    // ---- sweep ----
    auto* sw = app.add_subcommand("sweep", "success-rate / quotient-size measurements as CSV");
    SweepOptions so;
    sw->add_option("--family", so.family, "c5-blowup | turan | andrasfai | goddard-lyle")->required();
    sw->add_option("--part-size", so.part_size, "part size (c5-blowup) or size scale (goddard-lyle)");
    sw->add_option("--n", so.n, "vertices (turan)");
    sw->add_option("--parts", so.parts, "parts (turan)");
    sw->add_option("--k", so.k, "parameter (andrasfai)");
    sw->add_option("--r", so.r)->required();
    sw->add_option("--eps", so.eps, "single eps p/q");
    sw->add_option("--eps-list", so.eps_list, "comma-separated eps values");
    sw->add_option("--m-list", so.m_list, "comma-separated sample sizes")->required();
    sw->add_option("--seeds", so.seeds, "seeds 0..K-1");
    sw->add_option("--max-retries", so.max_retries);
    sw->add_flag("--minimize", so.minimize);
    sw->add_option("--csv", so.csv, "CSV output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    try {
        if (gen->parsed()) {
            krf::Graph out;
            if (g_cycle->parsed()) {
                out = krf::cycle(gn);
            } else if (g_complete->parsed()) {
                out = krf::complete(gn);
            } else if (g_kab->parsed()) {
                out = krf::complete_bipartite(ga, gb);
            } else if (g_blowup->parsed()) {
                out = krf::blow_up(parse_pattern(gpattern), parse_int_list(gsizes, "sizes")).graph;
            } else if (g_join->parsed()) {
                out = krf::join(parse_pattern(gjoin_a), parse_pattern(gjoin_b));
            } else if (g_turan->parsed()) {
                out = krf::turan(gn, gparts);
            } else if (g_andrasfai->parsed()) {
                out = krf::andrasfai(gk);
            } else if (g_kneser->parsed()) {
                out = krf::kneser(gn, gk);
            } else if (g_gl->parsed()) {
                krf::Graph pattern = parse_pattern(gpattern);
                std::vector<int> sizes;
                if (gsolve || gsizes.empty()) {
                    if (geps.empty())
                        throw krf::ParseError(0, "goddard-lyle: --solve requires --eps");
                    auto solved = krf::goddard_lyle_sizes(gr, pattern, parse_eps(geps), gmax_n);
                    if (!solved)
                        throw std::invalid_argument(
                            "goddard-lyle: no feasible sizes up to max-n for eps " + geps);
                    sizes = *solved;
                    for (int& s : sizes)
                        s *= gscale;
                } else {
                    sizes = parse_int_list(gsizes, "sizes");
                }
                out = krf::goddard_lyle(gr, pattern, sizes).graph;
            }
            write_graph(gen_out, out);
            return 0;
        }
        if (comp->parsed()) {
            krf::Graph g = krf::read_edge_list_file(c_in).graph;
            krf::EdgeOrder order;
            if (c_order == "lex")
                order = krf::EdgeOrder::lexicographic;
            else if (c_order == "random")
                order = krf::EdgeOrder::random_seeded;
            else
                throw krf::ParseError(0, "bad --order \"" + c_order + "\" (lex | random)");
            auto res = krf::maximal_krfree_completion(g, c_r, order, c_seed);
            write_graph(c_out, res.graph);
            json summary = {{"added", res.added.size()},
                            {"edges_before", g.edge_count()},
                            {"edges_after", res.graph.edge_count()}};
            std::cout << summary.dump() << "\n";
            return 0;
        }
        if (ext->parsed())
            return cmd_extract(eo);
        if (ver->parsed())
            return cmd_verify(v_in, v_report);
        if (ora->parsed())
            return cmd_oracle(o_in, o_r, o_kmax, o_json);
        if (pr->parsed())
            return cmd_props(p_in, p_r, p_eps, p_avoid);
        if (sw->parsed())
            return cmd_sweep(so);
    } catch (const krf::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const krf::ExtractionError& e) {
        json diag = {{"error", e.what()}, {"attempts", e.attempts}};
        if (e.best)
            diag["best_failure"] = krf::attempt_failure_to_json(*e.best);
        std::cout << diag.dump(2) << "\n";
        return 4;
    } catch (const krf::StructureViolationError& e) {
        json diag = {{"error", e.what()},
                     {"violation",
                      {{"vertex", e.info.vertex},
                       {"class", e.info.class_index},
                       {"neighbor", e.info.seen},
                       {"non_neighbor", e.info.unseen}}}};
        std::cout << diag.dump(2) << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        json diag = {{"error", e.what()}};
        std::cout << diag.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
