// Acceptance run: one PASS/FAIL line per criterion, tolerance exact unless
// noted. Usage: acceptance [--criterion N]

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "diaglab/diaglab.hpp"

using namespace diaglab;

namespace {

struct Instance {
    std::string name;
    GroupTable group;
    std::size_t m;
};

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> notes;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail = what;
            pass = false;
        }
    }
};

std::vector<Instance> acceptance_grid() {
    std::vector<Instance> out;
    for (auto g : {"C2", "C3", "C4", "C5", "C6", "V4", "S3", "D4", "Q8"}) {
        auto G = parse_group_spec(g);
        for (std::size_t m = 2; m <= 5; ++m)
            if (ipow(Integer(G.order()), m) <= 4096) out.push_back({g, G, m});
    }
    return out;
}

std::string label(const Instance& in) { return in.name + " m=" + std::to_string(in.m); }

GroupTable load_dic3() {
    std::ifstream f(std::string(DIAGLAB_DATA_DIR) + "/dic3.txt");
    return load_group_table(f, "Dic3");
}

Outcome criterion_mobius(const std::vector<Instance>& grid) {
    Outcome o;
    std::size_t pairs = 0;
    for (auto& in : grid) {
        auto sl = build_semilattice(in.group, in.m);
        auto r = verify_mobius(sl);
        pairs += r.element_count * r.element_count;
        o.require(r.mismatches.empty() && r.zeta_inverse_ok, label(in) + ": closed form mismatch");
        Integer expected = (in.m % 2 ? -1 : 1) * static_cast<long long>(in.m);
        o.require(r.mu_bottom_top == expected, label(in) + ": mu(E,U) = " + r.mu_bottom_top.str());
    }
    if (o.pass) o.detail = std::to_string(grid.size()) + " instances, " + std::to_string(pairs) + " pairs, mu(E,U) = (-1)^m m";
    return o;
}

Outcome criterion_spectrum(const std::vector<Instance>& grid) {
    Outcome o;
    for (auto& in : grid) {
        auto d = build_graph(in.group, in.m);
        auto t = spectrum_trace_moments(d);
        o.require(t.same_spectrum(spectrum_closed_form(d.q(), in.m)), label(in) + ": trace moments differ");
        if (d.q() == 2) {
            auto lambda = candidate_eigenvalues(2, in.m);
            for (std::size_t k = 0; k <= in.m; ++k)
                if ((in.m - k) % 2 == 0)
                    o.require(t.multiplicity(lambda[k]) == 0, label(in) + ": nonzero multiplicity at m-k even");
        }
    }
    auto q3 = spectrum_trace_moments(build_graph(cyclic_group(3), 2));
    std::vector<std::pair<long long, Integer>> expected{{-3, 2}, {0, 6}, {6, 1}};
    o.require(q3.entries == expected, "q=3 m=2 report differs from {6:1, 0:6, -3:2}");
    if (o.pass) o.detail = std::to_string(grid.size()) + " instances; q=3 m=2 gives {6:1, 0:6, -3:2}";
    return o;
}

Outcome criterion_valency(const std::vector<Instance>& grid) {
    Outcome o;
    double worst = 0;
    for (auto& in : grid) {
        auto t0 = std::chrono::steady_clock::now();
        auto d = build_graph(in.group, in.m);
        std::size_t k = (in.m + 1) * (in.group.order() - 1);
        bool ok = true;
        for (Vertex v = 0; v < d.size(); ++v) ok = ok && d.graph().degree(v) == k;
        ok = ok && d.graph().edge_count() * 2 == d.size() * k;
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        worst = std::max(worst, secs);
        o.require(ok, label(in) + ": degree differs from (m+1)(q-1)");
        o.require(secs < 1.0, label(in) + ": took " + std::to_string(secs) + " s");
    }
    std::ostringstream s;
    s << grid.size() << " instances, slowest " << worst << " s (limit 1 s)";
    if (o.pass) o.detail = s.str();
    return o;
}

Outcome criterion_diameter(const std::vector<Instance>& grid) {
    Outcome o;
    std::vector<std::string> counter;
    bool corrected = true;
    for (auto& in : grid) {
        auto d = build_graph(in.group, in.m);
        auto r = diameter(d, false);
        o.require(r.matches(), label(in) + ": bfs " + std::to_string(r.bfs) + " vs formula " + std::to_string(r.formula));
        std::size_t q = d.q();
        if ((r.bfs == in.m) != (q > in.m + 1)) counter.push_back(label(in));
        corrected = corrected && (r.bfs == in.m) == (q >= in.m + 1);
    }
    auto c5 = build_graph(cyclic_group(5), 2);
    o.require(diameter(c5, false).bfs == 2, "C5 m=2 diameter is not 2");
    if (!counter.empty()) {
        std::string list;
        for (auto& c : counter) list += (list.empty() ? "" : ", ") + c;
        o.require(false, "diameter = m also when q = m+1: " + list);
    }
    o.notes.push_back(std::string("formula m+1-ceil((m+1)/q) matches BFS on every instance; ") +
                      "diameter = m iff q >= m+1: " + (corrected ? "holds" : "fails"));
    if (o.pass) o.detail = std::to_string(grid.size()) + " instances";
    return o;
}

Outcome criterion_c3_cubed() {
    Outcome o;
    auto d = build_graph(cyclic_group(3), 3);
    auto& codec = d.codec();
    Vertex one = 0, ab = codec.encode(Tuple{1, 1, 0}), a2b = codec.encode(Tuple{2, 1, 0});
    auto c1 = common_neighbours(d.graph(), one, ab), c2 = common_neighbours(d.graph(), one, a2b);
    o.require(c1.size() == 4, "|common(1, ab)| = " + std::to_string(c1.size()));
    o.require(c2.size() == 2, "|common(1, a^2 b)| = " + std::to_string(c2.size()));
    o.require(!is_distance_regular(d.graph()).distance_regular, "reported distance-regular");
    if (o.pass) o.detail = "|common(1,ab)| = 4, |common(1,a^2 b)| = 2, not distance-regular";
    return o;
}

Outcome criterion_cliques(const std::vector<Instance>& grid) {
    Outcome o;
    std::size_t checked = 0;
    for (auto& in : grid) {
        if (in.m <= 2) continue;
        ++checked;
        auto d = build_graph(in.group, in.m);
        auto c = analyse_cliques(d);
        Integer expected = Integer(in.m + 1) * ipow(Integer(d.q()), in.m - 1);
        o.require(Integer(c.maximal.size()) == expected, label(in) + ": " + std::to_string(c.maximal.size()) + " maximal cliques");
        bool sizes = std::all_of(c.maximal.begin(), c.maximal.end(), [&](auto& k) { return k.size() == d.q(); });
        o.require(sizes && c.all_maximal_are_parts, label(in) + ": a maximal clique is not a part");
        auto cover = clique_cover(d);
        o.require(Integer(cover.size()) == ipow(Integer(d.q()), in.m - 1) && validate_clique_cover(d.graph(), cover),
                  label(in) + ": clique cover invalid");
    }
    struct Ex {
        const char* group;
        Exception kind;
    };
    for (auto [g, kind] : {Ex{"C2", Exception::complete_k4}, Ex{"C3", Exception::multipartite_k333},
                           Ex{"V4", Exception::complement_rook}, Ex{"C4", Exception::complement_shrikhande}}) {
        auto c = analyse_cliques(build_graph(parse_group_spec(g), 2));
        o.require(c.exception == kind && c.exception_description_ok, std::string(g) + " m=2: exception description mismatch");
    }
    auto rook = build_graph(parse_group_spec("V4"), 2), shri = build_graph(cyclic_group(4), 2);
    auto rc = analyse_cliques(rook), sc = analyse_cliques(shri);
    bool cospectral = spectrum_trace_moments(rook).same_spectrum(spectrum_trace_moments(shri));
    o.require(cospectral && rc.maximum_count != sc.maximum_count, "V4 and C4 squares not told apart by 4-clique counts");
    if (o.pass)
        o.detail = std::to_string(checked) + " instances with m > 2; four exceptions matched; 4-cliques V4 " +
                   std::to_string(rc.maximum_count) + " vs C4 " + std::to_string(sc.maximum_count) + ", same spectrum";
    return o;
}

Outcome criterion_chromatic(const std::vector<Instance>& grid) {
    Outcome o;
    std::vector<std::pair<std::string, GroupTable>> small;
    for (auto s : {"C2", "C3", "C4", "V4", "C5", "C6", "S3", "C7", "C8", "C2xC4", "C2xC2xC2", "D4", "Q8", "C9", "C3xC3",
                   "C10", "D5", "C11", "C12", "C2xC6", "D6", "A4"})
        small.emplace_back(s, parse_group_spec(s));
    small.emplace_back("Dic3", load_dic3());
    for (auto& [name, G] : small) {
        auto phi = find_complete_mapping(G);
        o.require(phi.has_value() == hall_paige_predicate(G), name + ": complete mapping disagrees with Hall-Paige");
        if (phi) o.require(is_complete_mapping(G, *phi), name + ": invalid complete mapping");
    }
    std::size_t coloured = 0;
    for (auto& in : grid) {
        if (in.m % 2 == 0 && !hall_paige_predicate(in.group)) continue;
        auto v = chromatic_verdict(in.group, in.m);
        auto d = build_graph(in.group, in.m);
        bool ok = v.chi == in.group.order() && validate_coloring(d.graph(), v.witness) &&
                  colours_used(v.witness) == in.group.order();
        o.require(ok, label(in) + ": no validated q-colouring");
        ++coloured;
    }
    auto folded = chromatic_number_exact(build_graph(cyclic_group(2), 4).graph());
    o.require(folded.exact && folded.upper == 4, "folded 4-cube chromatic number " + std::to_string(folded.upper));
    auto c4 = chromatic_number_exact(build_graph(cyclic_group(4), 2).graph());
    o.require(c4.exact && validate_coloring(build_graph(cyclic_group(4), 2).graph(), c4.best), "C4 m=2 exact search incomplete");
    o.notes.push_back("chi(C4, m=2) = " + std::to_string(c4.upper) + " by exact search; conjectured q+2 = 6 (" +
                      (c4.upper == 6 ? "equal" : "different") + ", not asserted)");
    if (o.pass)
        o.detail = std::to_string(small.size()) + " groups of order <= 12; " + std::to_string(coloured) +
                   " grid instances q-coloured; folded 4-cube chi = 4";
    return o;
}

Outcome criterion_homomorphism() {
    Outcome o;
    std::size_t edges = 0;
    for (auto [G, m] : {std::pair{cyclic_group(3), std::size_t{4}}, std::pair{cyclic_group(2), std::size_t{5}}}) {
        auto big = build_graph(G, m), small = build_graph(G, m - 2);
        for (auto [a, b] : big.graph().edges()) {
            ++edges;
            auto ra = small.codec().encode(reduce_hom(big.codec().decode(a), G));
            auto rb = small.codec().encode(reduce_hom(big.codec().decode(b), G));
            o.require(small.graph().adjacent(ra, rb), G.label() + " m=" + std::to_string(m) + ": edge not preserved");
        }
    }
    if (o.pass) o.detail = std::to_string(edges) + " edges mapped to edges";
    return o;
}

Outcome criterion_symmetry(const std::vector<Instance>& grid) {
    Outcome o;
    std::size_t ordered = 0, classified = 0;
    for (auto& in : grid) {
        auto d = build_graph(in.group, in.m);
        auto gens = diagonal_group_generators(in.group, in.m);
        Integer formula = diagonal_group_order_formula(in.group, in.m);
        if (formula <= Integer(1'000'000'000)) {
            ++ordered;
            Integer bsgs = group_order_bsgs(d.size(), gens);
            o.require(bsgs == formula, label(in) + ": order " + bsgs.str() + " vs " + formula.str());
        }
        o.require(vertex_orbit_count(d.size(), gens) == 1, label(in) + ": not vertex-transitive");
        bool ea = is_elementary_abelian(in.group).has_value();
        o.require((edge_orbit_count(d.graph(), gens) == 1) == ea, label(in) + ": edge-transitivity disagrees");
        auto p = is_vertex_primitive(in.group, in.m);
        if (p.criterion) {
            ++classified;
            o.require(p.criterion_agrees(), label(in) + ": primitivity disagrees with criterion");
        }
    }
    o.require(!is_vertex_primitive(cyclic_group(3), 2).primitive, "C3 m=2 reported primitive");
    o.require(is_vertex_primitive(cyclic_group(3), 3).primitive, "C3 m=3 reported imprimitive");
    o.require(group_order_bsgs(27, diagonal_group_generators(cyclic_group(3), 3)) == 1296, "C3 m=3 order is not 1296");
    if (o.pass)
        o.detail = std::to_string(ordered) + " orders, " + std::to_string(grid.size()) + " orbit checks, " +
                   std::to_string(classified) + " primitivity verdicts";
    return o;
}

Outcome criterion_semilattice(const std::vector<Instance>& grid) {
    Outcome o;
    for (auto& in : grid) {
        o.require(verify_semilattice_hypothesis(in.group, in.m), label(in) + ": hypothesis fails");
        auto sl = build_semilattice(in.group, in.m);
        auto counts = sl.rank_counts();
        bool ok = counts.size() == in.m + 1 && counts[in.m] == 1;
        for (std::size_t i = 0; ok && i < in.m; ++i) ok = Integer(counts[i]) == binomial(in.m + 1, i);
        o.require(ok, label(in) + ": rank counts differ from C(m+1,i)");
    }
    if (o.pass) o.detail = std::to_string(grid.size()) + " instances";
    return o;
}

Outcome criterion_strata(const std::vector<Instance>& grid) {
    Outcome o;
    for (std::size_t q = 2; q <= 10; ++q) {
        auto r = verify_stratum_identity(q, 8);
        o.require(r.interval_sums, "q=" + std::to_string(q) + ": interval sums fail");
        for (std::size_t m = 2; m <= 8; ++m)
            o.require(verify_stratum_identity(q, m).multiplicities, "q=" + std::to_string(q) + " m=" + std::to_string(m) +
                                                                        ": multiplicities fail");
    }
    for (auto& in : grid)
        o.require(verify_stratum_identity(build_semilattice(in.group, in.m)), label(in) + ": semilattice strata fail");
    std::string stated_fail, corrected_fail;
    std::size_t stated_bad = 0;
    for (std::size_t q = 2; q <= 10; ++q)
        for (std::size_t s = 0; s <= 8; ++s) {
            Integer lhs = Integer(q) * stratum_dimension(q, s);
            if (lhs != cycle_chromatic_polynomial(s + 2, q)) {
                if (stated_bad++ == 0)
                    stated_fail = "q=" + std::to_string(q) + " s=" + std::to_string(s) + ": q n = " + lhs.str() +
                                  ", (q-1)^(s+2) + (-1)^(s+2)(q-1) = " + cycle_chromatic_polynomial(s + 2, q).str();
            }
            if (lhs != cycle_chromatic_polynomial(s + 1, q) && corrected_fail.empty())
                corrected_fail = "q=" + std::to_string(q) + " s=" + std::to_string(s);
        }
    o.require(stated_bad == 0, "(s+2)-cycle identity fails on " + std::to_string(stated_bad) + " of 81 (q,s); first " + stated_fail);
    o.notes.push_back("q n(q,s) = (q-1)^(s+1) + (-1)^(s+1)(q-1), the (s+1)-cycle polynomial: " +
                      (corrected_fail.empty() ? std::string("holds on all 81 (q,s)") : "fails at " + corrected_fail));
    if (o.pass) o.detail = "all identities hold";
    return o;
}

struct Criterion {
    int id;
    std::string title;
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "run one criterion (1-11)")->check(CLI::Range(1, 11));
    CLI11_PARSE(app, argc, argv);

    auto grid = acceptance_grid();
    std::vector<Criterion> all{
        {1, "Moebius closed form and mu(E,U)", [&] { return criterion_mobius(grid); }},
        {2, "spectrum", [&] { return criterion_spectrum(grid); }},
        {3, "valency, edge count, runtime", [&] { return criterion_valency(grid); }},
        {4, "diameter", [&] { return criterion_diameter(grid); }},
        {5, "C3 m=3 regression", [] { return criterion_c3_cubed(); }},
        {6, "cliques and exceptions", [&] { return criterion_cliques(grid); }},
        {7, "chromatic number", [&] { return criterion_chromatic(grid); }},
        {8, "reduction homomorphism", [] { return criterion_homomorphism(); }},
        {9, "symmetry", [&] { return criterion_symmetry(grid); }},
        {10, "semilattice hypothesis", [&] { return criterion_semilattice(grid); }},
        {11, "stratum identities", [&] { return criterion_strata(grid); }},
    };
    bool ok = true;
    for (auto& c : all) {
        if (only && c.id != only) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream t;
        t.setf(std::ios::fixed);
        t.precision(2);
        t << secs;
        std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.title
                  << "  tolerance exact  " << t.str() << " s  " << o.detail << "\n";
        for (auto& n : o.notes) std::cout << "  note: " << n << "\n";
        ok = ok && o.pass;
    }
    return ok ? 0 : 1;
}
