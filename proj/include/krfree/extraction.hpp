#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "krfree/cliques.hpp"
#include "krfree/graph.hpp"
#include "krfree/homomorphism.hpp"
#include "krfree/rng.hpp"

namespace krf {

// Sample-based partitioning of a maximal K_r-free graph with minimum degree
// at least ((2r-5)/(2r-3) + eps) n into independent classes whose quotient
// is a bounded K_r-free homomorphic image.  One run:
//
//   1. draw X, an m-element uniform random vertex subset;
//   2. U_X  = vertices with degree below (theta + eps/2) m into X; the
//      sample is good when |U_X| <= eps n / 4 and |X cap U_X| < eps m / 4;
//   3. Y    = X \ U_X,  U_Y = vertices with degree below (theta + eps/4)|Y|
//      into Y;
//   4. partition V \ U_Y by exact neighborhood equality in Y (base classes),
//      then partition U_Y by which base classes its vertices see in full
//      (remainder classes) -- a vertex seeing a base class partially is a
//      structural violation and aborts the attempt;
//   5. validate that every class is independent and every class pair spans a
//      complete or empty bipartite graph, then quotient.
//
// The theoretical sample size m blows up far beyond any graph this library
// can hold, so computed m >= n is rejected with a pointer to m_override;
// m_override = n selects the deterministic X = V path, where both low-degree
// sets are empty and the run degenerates to exact neighborhood-equivalence
// quotienting.  Bad attempts are retried with seeds derived from (seed,
// attempt); runs are bit-reproducible for identical inputs.

struct SampleParams {
    long long m;        // ceil(4 ln(8/eps) / eps^2) + 1, conservatively rounded
    long long t_log2;   // T = 2^m, reported as log2
    std::string l_expr; // L = 2^T + T, far beyond any integer type
};

inline SampleParams compute_params(int r, const Rational& eps) {
    if (r < 3)
        throw std::invalid_argument("compute_params: r must be >= 3");
    if (!eps.positive())
        throw std::invalid_argument("compute_params: eps must be positive");
    long double q = (long double)eps.den(), p = (long double)eps.num();
    long double arg = 4.0L * std::log(8.0L * q / p) * (q / p) * (q / p);
    if (arg > 4.0e18L)
        throw std::overflow_error("compute_params: eps too small, m overflows");
    long long m0;
    if (arg <= 0.0L) {
        m0 = 0;
    } else {
        // If the value sits within 2 ulps of an integer the true ceiling is
        // ambiguous; round up so m never undershoots.
        long double nearest = std::round(arg);
        long double ulp = std::nextafter(arg, std::numeric_limits<long double>::infinity()) - arg;
        if (std::fabs(arg - nearest) <= 2.0L * ulp)
            m0 = (long long)nearest + 1;
        else
            m0 = (long long)std::ceil(arg);
    }
    long long m = std::max(m0 + 1, 1LL);
    return {m, m, "2^(2^" + std::to_string(m) + ")+2^" + std::to_string(m)};
}

// Vertices whose degree into x falls below frac * |x|, by exact comparison.
inline VertexSet low_degree_set(const Graph& g, const VertexSet& x, const Rational& frac) {
    if (x.universe() != g.vertex_count())
        throw std::invalid_argument("low_degree_set: universe mismatch");
    if (x.empty())
        throw std::invalid_argument("low_degree_set: empty reference set");
    const long long size = x.count();
    VertexSet out(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
        long long d = g.neighbors(v).intersection_count(x);
        if ((__int128)d * frac.den() < (__int128)frac.num() * size)
            out.insert(v);
    }
    return out;
}

struct ExtractionParams {
    int r = 3;
    Rational eps;
    std::optional<long long> m_override;
    int max_retries = 1;
    std::uint64_t seed = 0;
    bool auto_complete = false;
    bool minimize = false;
};

// Both sample-quality inequalities, checked exactly: |U_X| <= eps n / 4 and
// |X cap U_X| < eps m / 4.
inline bool good_sample(const Graph& g, const VertexSet& x, const ExtractionParams& p) {
    ThresholdParams tp(p.r, p.eps);
    VertexSet ux = low_degree_set(g, x, tp.threshold_fraction() + p.eps / Rational(2));
    long long m = x.count();
    bool small_ux = (__int128)ux.count() * 4 * p.eps.den() <=
                    (__int128)p.eps.num() * g.vertex_count();
    bool small_overlap =
        (__int128)(x & ux).count() * 4 * p.eps.den() < (__int128)p.eps.num() * m;
    return small_ux && small_overlap;
}

struct EquivalenceClasses {
    Partition partition;
    std::vector<VertexSet> signatures; // per class: its neighborhood inside y
};

// Partition `ground` by the exact signature N(v) cap y; classes are ordered
// by their first vertex.  Vertices of y itself are treated like any others.
inline EquivalenceClasses equivalence_classes(const Graph& g, const VertexSet& y,
                                              const VertexSet& ground) {
    if (y.universe() != g.vertex_count() || ground.universe() != g.vertex_count())
        throw std::invalid_argument("equivalence_classes: universe mismatch");
    std::map<std::vector<std::uint64_t>, int> index;
    std::vector<VertexSet> classes;
    std::vector<VertexSet> signatures;
    ground.for_each([&](int v) {
        VertexSet sig = g.neighbors(v) & y;
        auto [it, fresh] = index.emplace(sig.words(), (int)classes.size());
        if (fresh) {
            classes.emplace_back(g.vertex_count());
            signatures.push_back(sig);
        }
        classes[it->second].insert(v);
    });
    return {Partition::from_classes(g.vertex_count(), std::move(classes)),
            std::move(signatures)};
}

struct RemainderViolation {
    int vertex;      // the offending remainder vertex
    int class_index; // base class it sees partially
    int seen;        // a neighbor inside that class
    int unseen;      // a non-neighbor inside that class
};

class StructureViolationError : public std::runtime_error {
public:
    StructureViolationError(RemainderViolation v)
        : std::runtime_error("vertex " + std::to_string(v.vertex) +
                             " sees base class " + std::to_string(v.class_index) +
                             " partially (neighbor " + std::to_string(v.seen) +
                             ", non-neighbor " + std::to_string(v.unseen) +
                             "); the graph is not maximal K_r-free or the "
                             "hypotheses fail"),
          info(v) {}
    RemainderViolation info;
};

struct RemainderClasses {
    Partition partition;
    std::vector<std::vector<int>> sees; // per class: sorted base-class indices
};

// Partition u_y by which base classes its vertices see in full.  Every
// vertex must see each base class completely or not at all; a partial view
// throws with the witness triple.
inline RemainderClasses classify_remainder(const Graph& g, const VertexSet& u_y,
                                           const Partition& base) {
    if (u_y.universe() != g.vertex_count())
        throw std::invalid_argument("classify_remainder: universe mismatch");
    if (u_y.intersects(base.ground()))
        throw std::invalid_argument("classify_remainder: u_y overlaps the base ground set");
    std::map<std::vector<int>, int> index;
    std::vector<VertexSet> classes;
    std::vector<std::vector<int>> sees;
    std::optional<StructureViolationError> pending;
    u_y.for_each([&](int u) {
        if (pending)
            return;
        std::vector<int> s;
        for (int i = 0; i < base.size(); ++i) {
            const VertexSet& cls = base.classes()[i];
            int cnt = g.neighbors(u).intersection_count(cls);
            if (cnt == cls.count()) {
                s.push_back(i);
            } else if (cnt > 0) {
                int seen = (g.neighbors(u) & cls).first();
                int unseen = (cls - g.neighbors(u)).first();
                pending = StructureViolationError({u, i, seen, unseen});
                return;
            }
        }
        auto [it, fresh] = index.emplace(std::move(s), (int)classes.size());
        if (fresh) {
            classes.emplace_back(g.vertex_count());
            sees.push_back(it->first);
        }
        classes[it->second].insert(u);
    });
    if (pending)
        throw *pending;
    return {Partition::from_classes(g.vertex_count(), std::move(classes)), std::move(sees)};
}

struct ValidationItem {
    std::string equation; // "class-independent" | "cross-pair-uniform" |
                          // "quotient-clique-free"
    std::vector<int> classes;
    bool pass = true;
    std::optional<std::pair<int, int>> witness_edge;
    std::optional<std::pair<int, int>> witness_nonedge;
    std::vector<int> witness_clique;
    long long edge_count = -1; // cross-pair diagnostics
    long long expected_full = -1;
};

struct ValidationReport {
    std::vector<ValidationItem> items;

    bool all_pass() const {
        for (const auto& it : items)
            if (!it.pass)
                return false;
        return true;
    }
    long long failures() const {
        long long f = 0;
        for (const auto& it : items)
            if (!it.pass)
                ++f;
        return f;
    }
};

// Per-class independence and per-pair complete-or-empty checks over a full
// partition; failures carry explicit edge / non-edge witnesses.  When all
// classes are independent the quotient is built and re-checked for K_r with
// the exact clique search.
inline ValidationReport validate_structure(const Graph& g, int r, const Partition& partition) {
    if (!partition.covers(g))
        throw std::invalid_argument("validate_structure: partition does not cover the graph");
    ValidationReport report;
    bool independent = true;
    for (int i = 0; i < partition.size(); ++i) {
        const VertexSet& c = partition.classes()[i];
        ValidationItem item;
        item.equation = "class-independent";
        item.classes = {i};
        c.for_each([&](int u) {
            if (!item.pass)
                return;
            VertexSet inside = g.neighbors(u) & c;
            if (!inside.empty()) {
                item.pass = false;
                item.witness_edge = {u, inside.first()};
            }
        });
        independent = independent && item.pass;
        report.items.push_back(std::move(item));
    }
    for (int i = 0; i < partition.size(); ++i)
        for (int j = i + 1; j < partition.size(); ++j) {
            const VertexSet& a = partition.classes()[i];
            const VertexSet& b = partition.classes()[j];
            ValidationItem item;
            item.equation = "cross-pair-uniform";
            item.classes = {i, j};
            item.edge_count = edges_between(g, a, b);
            item.expected_full = (long long)a.count() * b.count();
            if (item.edge_count != 0 && item.edge_count != item.expected_full) {
                item.pass = false;
                a.for_each([&](int u) {
                    if (item.witness_edge && item.witness_nonedge)
                        return;
                    VertexSet hit = g.neighbors(u) & b;
                    if (!item.witness_edge && !hit.empty())
                        item.witness_edge = {u, hit.first()};
                    VertexSet miss = b - g.neighbors(u);
                    if (!item.witness_nonedge && !miss.empty())
                        item.witness_nonedge = {u, miss.first()};
                });
            }
            report.items.push_back(std::move(item));
        }
    if (independent) {
        ValidationItem item;
        item.equation = "quotient-clique-free";
        item.pass = true;
        auto qr = quotient(g, partition);
        if (auto clique = find_clique(qr.quotient, r)) {
            item.pass = false;
            item.witness_clique = clique->to_vector();
        }
        report.items.push_back(std::move(item));
    }
    return report;
}

struct ExtractionReport {
    int n = 0;
    ExtractionParams params;
    long long m_effective = 0;
    bool m_overridden = false;

    bool completion_applied = false;
    std::vector<std::pair<int, int>> completion_added;

    VertexSet sample_x, u_x, y, u_y;

    int base_class_count = 0;                    // t, before any merging
    std::vector<VertexSet> base_signatures;      // per base class, inside Y
    std::vector<std::vector<int>> remainder_sees; // per remainder class

    Partition classes; // final output partition (merged when minimized)
    // final class -> the pre-merge class indices it absorbs (identity when
    // minimize is off)
    std::vector<std::vector<int>> class_origins;
    long long premerge_class_count = 0;

    Graph quotient;
    std::vector<int> hom_map;
    ValidationReport validations; // over the final partition

    bool size_bound_holds = false; // pre-merge class count <= t + 2^t
    bool quotient_kr_free = false; // re-checked with the exact clique search
    int retries_used = 0;
};

struct AttemptFailure {
    int attempt = 0;
    std::string stage; // "sampling" | "remainder" | "structure"
    std::string detail;
    VertexSet x, u_x, y, u_y;
    std::optional<RemainderViolation> violation;
    std::optional<ValidationReport> validations;
    std::optional<Partition> classes;
    int base_class_count = 0;

    int rank() const { return stage == "sampling" ? 0 : stage == "remainder" ? 1 : 2; }
};

class ExtractionError : public std::runtime_error {
public:
    ExtractionError(const std::string& msg, int attempts_, std::optional<AttemptFailure> best_)
        : std::runtime_error(msg), attempts(attempts_), best(std::move(best_)) {}
    int attempts;
    std::optional<AttemptFailure> best;
};

namespace detail {

// Repeatedly merge quotient vertices with identical neighborhoods (such
// classes carry no cross edges, so the merged classes stay independent and
// the blow-up structure survives).  Runs to a fixpoint.
inline void merge_twin_classes(const Graph& g, Partition& partition, Graph& h,
                               std::vector<int>& map, std::vector<std::vector<int>>& origins) {
    while (true) {
        std::map<std::vector<std::uint64_t>, std::vector<int>> by_row;
        for (int i = 0; i < h.vertex_count(); ++i)
            by_row[h.neighbors(i).words()].push_back(i);
        if (by_row.size() == (size_t)h.vertex_count())
            return;
        std::vector<std::vector<int>> groups;
        for (auto& [row, members] : by_row)
            groups.push_back(members); // members ascend by construction
        std::sort(groups.begin(), groups.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        std::vector<VertexSet> merged;
        std::vector<std::vector<int>> new_origins;
        for (const auto& grp : groups) {
            VertexSet u(g.vertex_count());
            std::vector<int> orig;
            for (int c : grp) {
                u |= partition.classes()[c];
                orig.insert(orig.end(), origins[c].begin(), origins[c].end());
            }
            merged.push_back(std::move(u));
            new_origins.push_back(std::move(orig));
        }
        partition = Partition::from_classes(g.vertex_count(), std::move(merged));
        auto qr = quotient(g, partition);
        h = qr.quotient;
        map = qr.hom.map;
        origins = std::move(new_origins);
    }
}

} // namespace detail

inline ExtractionReport extract(const Graph& input, const ExtractionParams& p) {
    ThresholdParams tp(p.r, p.eps);
    if (p.max_retries < 1)
        throw std::invalid_argument("extract: max_retries must be >= 1");
    if (input.vertex_count() == 0)
        throw std::invalid_argument("extract: empty graph");

    Graph g = input;
    bool completed = false;
    std::vector<std::pair<int, int>> added;
    if (!is_maximal_krfree(input, p.r)) {
        if (!p.auto_complete)
            throw std::invalid_argument(
                "extract: graph is not maximal K_" + std::to_string(p.r) +
                "-free (pass auto_complete to saturate it first)");
        auto cr = maximal_krfree_completion(input, p.r); // throws when K_r present
        g = std::move(cr.graph);
        added = std::move(cr.added);
        completed = true;
    }
    if (!in_class_F(g, tp))
        throw std::invalid_argument("extract: graph is not in F(r, eps): minimum degree " +
                                    std::to_string(min_degree(g)) + " is below (" +
                                    tp.degree_fraction().str() + ") * " +
                                    std::to_string(g.vertex_count()));

    const int n = g.vertex_count();
    long long m;
    if (p.m_override) {
        m = *p.m_override;
        if (m < 1 || m > n)
            throw std::invalid_argument("extract: m_override must be in [1, n]");
    } else {
        m = compute_params(p.r, p.eps).m;
        if (m >= n)
            throw std::invalid_argument(
                "extract: sample size m=" + std::to_string(m) + " exceeds n=" +
                std::to_string(n) +
                "; pass m_override (m_override=n selects the deterministic X=V path)");
    }

    const Rational frac_x = tp.threshold_fraction() + p.eps / Rational(2);
    const Rational frac_y = tp.threshold_fraction() + p.eps / Rational(4);

    std::optional<AttemptFailure> best;
    auto remember = [&](AttemptFailure f) {
        if (!best || f.rank() > best->rank())
            best = std::move(f);
    };

    // The X = V attempt is deterministic; retrying it cannot change anything.
    const int attempts_allowed = (m == n) ? 1 : p.max_retries;
    for (int attempt = 0; attempt < attempts_allowed; ++attempt) {
        VertexSet x;
        if (m == n) {
            x = g.vertices();
        } else {
            Rng rng(derive_seed(p.seed, (std::uint64_t)attempt));
            x = sample_subset(n, (int)m, rng);
        }
        VertexSet ux = low_degree_set(g, x, frac_x);
        bool small_ux =
            (__int128)ux.count() * 4 * p.eps.den() <= (__int128)p.eps.num() * n;
        bool small_overlap =
            (__int128)(x & ux).count() * 4 * p.eps.den() < (__int128)p.eps.num() * m;
        if (!small_ux || !small_overlap) {
            AttemptFailure f;
            f.attempt = attempt;
            f.stage = "sampling";
            f.detail = !small_ux ? "low-degree set larger than eps*n/4"
                                 : "sample overlaps its low-degree set by at least eps*m/4";
            f.x = x;
            f.u_x = ux;
            remember(std::move(f));
            continue;
        }
        VertexSet y = x - ux;
        VertexSet uy = low_degree_set(g, y, frac_y);
        VertexSet ground = uy.complement();
        auto eq = equivalence_classes(g, y, ground);

        RemainderClasses rem;
        try {
            rem = classify_remainder(g, uy, eq.partition);
        } catch (const StructureViolationError& e) {
            AttemptFailure f;
            f.attempt = attempt;
            f.stage = "remainder";
            f.detail = e.what();
            f.x = x;
            f.u_x = ux;
            f.y = y;
            f.u_y = uy;
            f.violation = e.info;
            f.classes = eq.partition;
            f.base_class_count = eq.partition.size();
            remember(std::move(f));
            continue;
        }

        std::vector<VertexSet> all_classes = eq.partition.classes();
        for (const VertexSet& c : rem.partition.classes())
            all_classes.push_back(c);
        Partition full = Partition::from_classes(n, std::move(all_classes));

        ValidationReport val = validate_structure(g, p.r, full);
        if (!val.all_pass()) {
            AttemptFailure f;
            f.attempt = attempt;
            f.stage = "structure";
            f.detail = std::to_string(val.failures()) + " structure checks failed";
            f.x = x;
            f.u_x = ux;
            f.y = y;
            f.u_y = uy;
            f.validations = val;
            f.classes = full;
            f.base_class_count = eq.partition.size();
            remember(std::move(f));
            continue;
        }

        auto qr = quotient(g, full);
        Partition out = full;
        Graph h = std::move(qr.quotient);
        std::vector<int> hom_map = std::move(qr.hom.map);
        std::vector<std::vector<int>> origins(out.size());
        for (int i = 0; i < out.size(); ++i)
            origins[i] = {i};
        const long long premerge = full.size();
        if (p.minimize) {
            detail::merge_twin_classes(g, out, h, hom_map, origins);
            val = validate_structure(g, p.r, out);
            if (!val.all_pass())
                throw std::logic_error("extract: merged partition failed validation");
        }

        if (!verify_homomorphism(g, HomMap{h, hom_map}))
            throw std::logic_error("extract: constructed map is not a homomorphism");

        ExtractionReport rep;
        rep.n = n;
        rep.params = p;
        rep.m_effective = m;
        rep.m_overridden = p.m_override.has_value();
        rep.completion_applied = completed;
        rep.completion_added = added;
        rep.sample_x = x;
        rep.u_x = ux;
        rep.y = y;
        rep.u_y = uy;
        rep.base_class_count = eq.partition.size();
        rep.base_signatures = eq.signatures;
        rep.remainder_sees = rem.sees;
        rep.classes = std::move(out);
        rep.class_origins = std::move(origins);
        rep.premerge_class_count = premerge;
        rep.quotient = std::move(h);
        rep.hom_map = std::move(hom_map);
        rep.validations = std::move(val);
        const long long t = eq.partition.size();
        rep.size_bound_holds = t >= 62 || premerge <= t + (1LL << t);
        rep.quotient_kr_free = is_kr_free(rep.quotient, p.r);
        if (!rep.quotient_kr_free)
            throw std::logic_error("extract: validated quotient contains a K_r");
        rep.retries_used = attempt;
        return rep;
    }

    throw ExtractionError("extract: no good attempt within " +
                              std::to_string(attempts_allowed) +
                              " tries; best failure stage: " +
                              (best ? best->stage : "none"),
                          attempts_allowed, std::move(best));
}

} // namespace krf
