#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "diaglab/caps.hpp"
#include "diaglab/chromatic.hpp"
#include "diaglab/diaggraph.hpp"
#include "diaglab/error.hpp"
#include "diaglab/groups.hpp"
#include "diaglab/semilattice.hpp"
#include "diaglab/spectral.hpp"
#include "diaglab/symmetry.hpp"

namespace diaglab {

using json = nlohmann::json;

enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_usage = 2, exit_cap = 3 };

inline json integer_json(const Integer& x) {
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
        return static_cast<long long>(x);
    return x.str();
}

inline json graph_property_json(const DiagGraph& g, const DiameterReport& d, const CliqueReport& c,
                                const DistanceRegularity& dr) {
    json j{{"q", g.q()},
           {"m", g.m()},
           {"N", g.size()},
           {"valency", g.valency()},
           {"edges", g.graph().edge_count()},
           {"diameter", d.bfs},
           {"diameter_formula", d.formula},
           {"clique_number", c.clique_number},
           {"dr", dr.distance_regular}};
    if (dr.distance_regular) j["intersection_array"] = {{"b", dr.b}, {"c", dr.c}};
    return j;
}

inline json mobius_json(const DiagonalSemilattice& sl, const MobiusReport& r) {
    json mm = json::array();
    for (auto& x : r.mismatches)
        mm.push_back({{"lower", sl.name(x.lower)},
                      {"upper", sl.name(x.upper)},
                      {"expected", x.expected},
                      {"actual", integer_json(x.actual)}});
    return {{"elements", r.element_count},
            {"ranks", r.ranks},
            {"mu_bottom_top", integer_json(r.mu_bottom_top)},
            {"zeta_inverse_ok", r.zeta_inverse_ok},
            {"mismatches", mm}};
}

inline json spectrum_json(const SpectrumReport& r) {
    json entries = json::array();
    for (auto& [l, mult] : r.entries) entries.push_back({{"eigenvalue", l}, {"multiplicity", integer_json(mult)}});
    return {{"q", r.q}, {"m", r.m}, {"entries", entries}, {"source", source_name(r.source)}};
}

inline json chromatic_json(const ChromaticVerdict& v) {
    return {{"q", v.q},
            {"m", v.m},
            {"chi", v.chi ? json(*v.chi) : json(nullptr)},
            {"lower", v.lower},
            {"upper", v.upper},
            {"reason", v.reason},
            {"conjecture", v.conjecture ? json(*v.conjecture) : json(nullptr)}};
}

inline json symmetry_json(const SymmetryReport& r) {
    json j{{"order", integer_json(r.order)},
           {"order_formula", integer_json(r.order_formula)},
           {"generators", r.generator_count},
           {"generators_are_automorphisms", r.generators_are_automorphisms},
           {"vertex_orbits", r.vertex_orbits},
           {"edge_orbits", r.edge_orbits},
           {"clique_orbits", r.clique_orbits},
           {"primitive", r.primitivity.primitive},
           {"criterion", r.primitivity.criterion ? json(*r.primitivity.criterion) : json("unsupported")},
           {"classification", r.primitivity.classification},
           {"criterion_agrees", r.primitivity.criterion_agrees()},
           {"partition_action_full", r.partition_action_full}};
    if (r.about_diagonal_group_only) j["scope"] = "D(G,m) action, not the full automorphism group";
    return j;
}

// ---- claims ledger -------------------------------------------------------

enum class ClaimStatus { pass, fail, skipped, info };

inline const char* status_name(ClaimStatus s) {
    switch (s) {
    case ClaimStatus::pass: return "pass";
    case ClaimStatus::fail: return "fail";
    case ClaimStatus::skipped: return "skipped";
    case ClaimStatus::info: return "info";
    }
    return "?";
}

struct Claim {
    std::string id;
    std::string statement;
    ClaimStatus status = ClaimStatus::info;
    std::string detail;
};

struct Ledger {
    std::string group;
    std::size_t m = 0;
    std::vector<Claim> claims;
    std::optional<std::string> error;
    int error_code = exit_ok;

    bool ok() const {
        if (error) return false;
        return std::none_of(claims.begin(), claims.end(), [](auto& c) { return c.status == ClaimStatus::fail; });
    }

    int exit_code() const {
        if (error) return error_code;
        return ok() ? exit_ok : exit_check_failed;
    }

    json to_json() const {
        json cl = json::array();
        for (auto& c : claims)
            cl.push_back({{"id", c.id}, {"statement", c.statement}, {"status", status_name(c.status)}, {"detail", c.detail}});
        json j{{"group", group}, {"m", m}, {"ok", ok()}, {"claims", cl}};
        if (error) j["error"] = *error;
        return j;
    }
};

struct RunOptions {
    bool paranoid = false;
    bool exact = false;
    Caps caps;
};

namespace detail {

inline void record(Ledger& ledger, std::string id, std::string statement, const std::function<ClaimStatus(std::string&)>& body) {
    Claim c{std::move(id), std::move(statement), ClaimStatus::info, {}};
    try {
        c.status = body(c.detail);
    } catch (const CapExceeded& e) {
        c.status = ClaimStatus::skipped;
        c.detail = e.what();
    } catch (const std::exception& e) {
        c.status = ClaimStatus::fail;
        c.detail = e.what();
    }
    ledger.claims.push_back(std::move(c));
}

inline ClaimStatus verdict(bool ok) { return ok ? ClaimStatus::pass : ClaimStatus::fail; }

} // namespace detail

inline std::vector<std::size_t> expected_rank_counts(std::size_t m) {
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i < m; ++i) c.push_back(static_cast<std::size_t>(binomial(m + 1, i)));
    c.push_back(1);
    return c;
}

inline Ledger check_all(const std::string& group_spec, std::size_t m, const RunOptions& opt = {}) {
    using detail::record;
    using detail::verdict;
    Ledger L;
    L.group = group_spec;
    L.m = m;
    const Caps& caps = opt.caps;
    std::optional<GroupTable> group;
    std::optional<DiagGraph> graph;
    try {
        if (m < 1) throw ValidationError("dimension must be >= 1");
        group = parse_group_spec(group_spec, caps);
        graph = build_graph(*group, m, caps);
    } catch (const CapExceeded& e) {
        L.error = e.what();
        L.error_code = exit_cap;
        return L;
    } catch (const std::exception& e) {
        L.error = e.what();
        L.error_code = exit_usage;
        return L;
    }
    const GroupTable& G = *group;
    const DiagGraph& g = *graph;
    std::size_t q = G.order();

    std::optional<DiagonalSemilattice> sl;
    record(L, "semilattice.hypothesis", "every m of the m+1 minimal partitions generate a Cartesian lattice",
           [&](std::string&) { return verdict(verify_semilattice_hypothesis(G, m, caps)); });
    record(L, "semilattice.ranks", "rank i holds C(m+1,i) elements for i < m, and the top is U", [&](std::string& d) {
        sl = build_semilattice(G, m, caps);
        auto counts = sl->rank_counts();
        d = json(counts).dump();
        return verdict(counts == expected_rank_counts(m) && sl->top_is_universal() && part_sizes_match_ranks(*sl));
    });
    if (sl) {
        record(L, "mobius.closed_form",
               "mu(S,T) = (-1)^(rT-rS) for T != U and mu(S,U) = (-1)^(m-rS) (m-rS)", [&](std::string& d) {
                   auto r = verify_mobius(*sl);
                   d = std::to_string(r.mismatches.size()) + " mismatches over " + std::to_string(r.element_count) +
                       " elements";
                   return verdict(r.mismatches.empty() && r.zeta_inverse_ok);
               });
        record(L, "mobius.bottom_top", "mu(E,U) = (-1)^m m", [&](std::string& d) {
            auto r = verify_mobius(*sl);
            Integer expected = (m % 2 ? -1 : 1) * static_cast<long long>(m);
            d = "mu(E,U) = " + r.mu_bottom_top.str();
            return verdict(r.mu_bottom_top == expected);
        });
        record(L, "stratum.identity", "q^corank(S) is the sum of stratum dimensions over [S,U]",
               [&](std::string&) { return verdict(verify_stratum_identity(*sl) && verify_stratum_identity(q, m).ok()); });
    }

    record(L, "graph.cayley", "the graph is the Cayley graph of G^m for the coordinate and diagonal connection set",
           [&](std::string&) {
               auto s = connection_set(G, m, caps);
               return verdict(connection_set_is_valid(G, s) && cayley_graph(G, m, s, caps) == g.graph());
           });
    record(L, "graph.valency", "regular of valency (m+1)(q-1)", [&](std::string& d) {
        auto deg = g.graph().regular_degree();
        d = deg ? std::to_string(*deg) : "irregular";
        return verdict(deg && *deg == g.valency());
    });

    if (m >= 2) {
        record(L, "spectrum.closed_form", "eigenvalue -(m+1)+kq has multiplicity C(m+1,k) n(q,m-k); (m+1)(q-1) is simple",
               [&](std::string& d) {
                   auto closed = spectrum_closed_form(q, m);
                   auto traced = spectrum_trace_moments(g, opt.paranoid);
                   d = spectrum_json(traced)["entries"].dump();
                   return verdict(closed.same_spectrum(traced) && moment_identities_hold(closed));
               });
    }
    record(L, "diameter.formula", "diameter is m+1-ceil((m+1)/q)", [&](std::string& d) {
        auto r = diameter(g, opt.paranoid);
        d = "bfs " + std::to_string(r.bfs) + ", formula " + std::to_string(r.formula);
        return verdict(r.matches());
    });

    std::optional<CliqueReport> cliques;
    record(L, "cliques.structure",
           m > 2 ? "maximal cliques are exactly the parts of Q_0..Q_m"
                 : "maximum cliques are the parts of Q_0..Q_m, or the graph is one of the four small exceptions",
           [&](std::string& d) {
               cliques = analyse_cliques(g, caps);
               d = std::to_string(cliques->maximal.size()) + " maximal, clique number " +
                   std::to_string(cliques->clique_number);
               if (cliques->exception != Exception::none) {
                   d += ", exception " + std::string(exception_name(cliques->exception));
                   return verdict(cliques->exception_description_ok);
               }
               if (m > 2) {
                   Integer expected = Integer(m + 1) * ipow(Integer(q), m - 1);
                   return verdict(cliques->all_maximal_are_parts && Integer(cliques->maximal.size()) == expected &&
                                  cliques->clique_number == q);
               }
               return verdict(cliques->maximum_are_parts && cliques->clique_number == q);
           });
    record(L, "cliques.cover", "the q^(m-1) parts of one minimal partition cover the vertices by cliques",
           [&](std::string&) {
               auto cover = clique_cover(g, caps);
               return verdict(cover.size() * q == g.size() && validate_clique_cover(g.graph(), cover));
           });

    if (m >= 2) {
        record(L, "dr.verdict", "distance-regular if and only if m = 2 or q = 2", [&](std::string& d) {
            auto dr = is_distance_regular(g.graph(), 0, opt.paranoid);
            d = dr.distance_regular ? "distance-regular" : "not distance-regular";
            return verdict(dr.distance_regular == (m == 2 || q == 2));
        });
    }

    record(L, "chromatic.value", "chromatic number q when m is odd or G satisfies the Hall-Paige condition",
           [&](std::string& d) {
               ChromaticOptions co;
               co.exact = opt.exact;
               auto v = chromatic_verdict(G, m, co, caps);
               d = chromatic_json(v).dump();
               bool proven = m % 2 == 1 || hall_paige_predicate(G);
               if (!proven) return verdict(v.witness_valid && v.lower <= v.upper && v.lower >= q);
               return verdict(v.witness_valid && v.chi && *v.chi == q);
           });

    if (m >= 2) {
        std::optional<SymmetryReport> sym;
        record(L, "symmetry.order", "D(G,m) has order |G|^m |Aut(G)| (m+1)!", [&](std::string& d) {
            if (!cliques) cliques = analyse_cliques(g, caps);
            sym = symmetry_report(g, cliques->maximal, caps);
            d = sym->order.str() + " vs " + sym->order_formula.str();
            return verdict(sym->order == sym->order_formula && sym->generators_are_automorphisms);
        });
        if (sym) {
            bool ea = is_elementary_abelian(G).has_value();
            record(L, "symmetry.vertex_transitive", "D(G,m) is transitive on vertices",
                   [&](std::string&) { return verdict(sym->vertex_orbits == 1); });
            record(L, "symmetry.edge_transitive", "D(G,m) is transitive on edges if and only if G is elementary abelian",
                   [&](std::string& d) {
                       d = std::to_string(sym->edge_orbits) + " edge orbits";
                       return verdict((sym->edge_orbits == 1) == ea);
                   });
            record(L, "symmetry.clique_transitive", "D(G,m) is transitive on maximum cliques when m > 2 or q > 4",
                   [&](std::string& d) {
                       d = std::to_string(sym->clique_orbits) + " clique orbits";
                       if (m == 2 && q <= 4) return ClaimStatus::info;
                       return verdict(sym->clique_orbits == 1);
                   });
            record(L, "symmetry.primitive",
                   "primitive if and only if G is characteristically simple and p does not divide m+1 for elementary abelian p-groups",
                   [&](std::string& d) {
                       d = std::string(sym->primitivity.primitive ? "primitive" : "imprimitive") + "; " +
                           sym->primitivity.classification;
                       if (!sym->primitivity.criterion) return ClaimStatus::info;
                       return verdict(sym->primitivity.criterion_agrees());
                   });
            record(L, "symmetry.partition_action", "D(G,m) induces Sym(m+1) on Q_0..Q_m",
                   [&](std::string&) { return verdict(sym->partition_action_full); });
        }
    }
    return L;
}

// ---- grid ----------------------------------------------------------------

struct GridOptions {
    std::vector<std::string> groups;
    std::vector<std::size_t> dims;
    std::size_t max_vertices = 4096;
    std::size_t threads = 1;
    RunOptions run;
};

struct GridResult {
    std::vector<Ledger> ledgers;  // input order: groups outer, dims inner
    std::vector<std::pair<std::string, std::size_t>> skipped;

    int exit_code() const {
        int code = exit_ok;
        for (auto& l : ledgers) code = std::max(code, l.exit_code());
        return code;
    }

    json to_json() const {
        json inst = json::array(), sk = json::array();
        std::size_t failures = 0;
        for (auto& l : ledgers) {
            inst.push_back(l.to_json());
            if (!l.ok()) ++failures;
        }
        for (auto& [gname, m] : skipped) sk.push_back({{"group", gname}, {"m", m}, {"reason", "exceeds vertex limit"}});
        return {{"instances", inst}, {"skipped", sk}, {"failures", failures}};
    }
};

inline GridResult run_grid(const GridOptions& opt) {
    struct Job {
        std::string group;
        std::size_t m;
    };
    std::vector<Job> jobs;
    GridResult out;
    for (auto& gs : opt.groups)
        for (auto m : opt.dims) {
            std::size_t q = 0;
            try {
                q = parse_group_spec(gs, opt.run.caps).order();
            } catch (const std::exception&) {
                jobs.push_back({gs, m});  // check_all reports the error
                continue;
            }
            Integer n = ipow(Integer(q), m);
            if (n > opt.max_vertices) out.skipped.emplace_back(gs, m);
            else jobs.push_back({gs, m});
        }
    out.ledgers.resize(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();)
            out.ledgers[i] = check_all(jobs[i].group, jobs[i].m, opt.run);
    };
    std::size_t t = std::max<std::size_t>(1, std::min(opt.threads, jobs.size()));
    std::vector<std::thread> pool;
    for (std::size_t k = 1; k < t; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return out;
}

} // namespace diaglab
