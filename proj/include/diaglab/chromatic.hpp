#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diaglab/caps.hpp"
#include "diaglab/diaggraph.hpp"
#include "diaglab/error.hpp"
#include "diaglab/graph.hpp"
#include "diaglab/groups.hpp"

namespace diaglab {

// phi with both phi and g -> g*phi(g) bijective.
inline bool is_complete_mapping(const GroupTable& G, const ElementMap& phi) {
    if (phi.size() != G.order()) return false;
    std::vector<char> seen_phi(G.order(), 0), seen_psi(G.order(), 0);
    for (Element g = 0; g < G.order(); ++g) {
        if (phi[g] >= G.order()) return false;
        Element psi = G.mul(g, phi[g]);
        if (seen_phi[phi[g]] || seen_psi[psi]) return false;
        seen_phi[phi[g]] = seen_psi[psi] = 1;
    }
    return true;
}

// Backtracking search. phi(1) = 1 is imposed without loss of generality:
// if phi is complete then so is g -> phi(g) phi(1)^{-1}.
inline std::optional<ElementMap> find_complete_mapping(const GroupTable& G, const Caps& caps = {}) {
    std::size_t n = G.order();
    if (n > caps.complete_mapping) throw CapExceeded("complete mapping search |G|", n, caps.complete_mapping);
    ElementMap phi(n, 0);
    std::vector<char> used(n, 0), used_psi(n, 0);
    used[0] = used_psi[0] = 1;
    auto search = [&](auto&& self, Element g) -> bool {
        if (g == n) return true;
        for (Element h = 0; h < n; ++h) {
            if (used[h]) continue;
            Element p = G.mul(g, h);
            if (used_psi[p]) continue;
            used[h] = used_psi[p] = 1;
            phi[g] = h;
            if (self(self, g + 1)) return true;
            used[h] = used_psi[p] = 0;
        }
        return false;
    };
    if (!search(search, 1)) return std::nullopt;
    return phi;
}

// Odd order, or Sylow 2-subgroups not nontrivial cyclic.
inline bool hall_paige_predicate(const GroupTable& G) {
    return G.order() % 2 == 1 || !sylow2_nontrivial_cyclic(G);
}

// (g1, g2, g3, g4, ..., gm) -> (g1 g2^{-1} g3, g4, ..., gm)
inline Tuple reduce_hom(const Tuple& v, const GroupTable& G) {
    if (v.size() < 3) throw ValidationError("reduction needs m >= 3");
    Tuple out;
    out.reserve(v.size() - 2);
    out.push_back(G.mul(G.mul(v[0], G.inv(v[1])), v[2]));
    out.insert(out.end(), v.begin() + 3, v.end());
    return out;
}

struct Coloring {
    std::vector<std::uint32_t> colour;
    std::size_t count = 0;
};

inline bool validate_coloring(const Graph& g, const Coloring& c) {
    if (c.colour.size() != g.size()) return false;
    for (auto x : c.colour)
        if (x >= c.count) return false;
    for (auto [a, b] : g.edges())
        if (c.colour[a] == c.colour[b]) return false;
    return true;
}

inline std::size_t colours_used(const Coloring& c) {
    std::vector<char> seen(c.count, 0);
    for (auto x : c.colour) seen[x] = 1;
    return static_cast<std::size_t>(std::count(seen.begin(), seen.end(), 1));
}

// q-colouring of the dimension-2 graph: cells (a, b) with
// phi^{-1}(a^{-1} b) = g and a = c g get colour c, so each colour class is a
// left translate of the transversal {(g, g phi(g))}.
inline Coloring complete_mapping_colouring(const GroupTable& G, const ElementMap& phi, const Caps& caps = {}) {
    VertexCodec codec(G.order(), 2, caps);
    ElementMap phi_inv(G.order());
    for (Element g = 0; g < G.order(); ++g) phi_inv[phi[g]] = g;
    Coloring c{std::vector<std::uint32_t>(codec.size()), G.order()};
    for (Vertex v = 0; v < codec.size(); ++v) {
        Element a = codec.coordinate(v, 0), b = codec.coordinate(v, 1);
        Element g = phi_inv[G.mul(G.inv(a), b)];
        c.colour[v] = G.mul(a, G.inv(g));
    }
    return c;
}

// Pulls a colouring of the graph of dimension base_m back to dimension m by
// repeated reduce_hom (m - base_m must be even).
inline Coloring pull_back_colouring(const GroupTable& G, std::size_t m, std::size_t base_m, const Coloring& base,
                                    const Caps& caps = {}) {
    if (m < base_m || (m - base_m) % 2) throw ValidationError("dimension gap must be even and nonnegative");
    VertexCodec codec(G.order(), m, caps), base_codec(G.order(), base_m, caps);
    Coloring c{std::vector<std::uint32_t>(codec.size()), base.count};
    for (Vertex v = 0; v < codec.size(); ++v) {
        Tuple t = codec.decode(v);
        while (t.size() > base_m) t = reduce_hom(t, G);
        c.colour[v] = base.colour[base_codec.encode(t)];
    }
    return c;
}

// ---- exact colouring ------------------------------------------------------

namespace detail {

inline Coloring dsatur_greedy(const Graph& g) {
    std::size_t n = g.size();
    Coloring c{std::vector<std::uint32_t>(n, 0), 0};
    std::vector<int> col(n, -1);
    std::vector<std::vector<char>> seen(n, std::vector<char>(n + 1, 0));
    std::vector<std::size_t> sat(n, 0);
    for (std::size_t step = 0; step < n; ++step) {
        int best = -1;
        for (Vertex v = 0; v < n; ++v) {
            if (col[v] >= 0) continue;
            if (best < 0 || sat[v] > sat[best] || (sat[v] == sat[best] && g.degree(v) > g.degree(best))) best = v;
        }
        std::size_t k = 0;
        while (seen[best][k]) ++k;
        col[best] = static_cast<int>(k);
        c.count = std::max(c.count, k + 1);
        for (Vertex u : g.neighbours(best))
            if (!seen[u][k]) {
                seen[u][k] = 1;
                ++sat[u];
            }
    }
    for (Vertex v = 0; v < n; ++v) c.colour[v] = static_cast<std::uint32_t>(col[v]);
    return c;
}

} // namespace detail

struct ChromaticResult {
    std::size_t lower = 0;
    std::size_t upper = 0;
    bool exact = false;           // bounds met or the search completed
    Coloring best;                // a proper colouring with `upper` colours
    std::uint64_t nodes = 0;
    std::optional<std::size_t> value() const { return exact ? std::optional<std::size_t>(upper) : std::nullopt; }
};

// DSATUR branch and bound seeded with a maximum clique. Ties in the
// saturation order go to higher degree, then the lowest index.
inline ChromaticResult chromatic_number_exact(const Graph& g, std::uint64_t node_budget = 50'000'000,
                                              const Caps& caps = {}) {
    std::size_t n = g.size();
    if (n > caps.exact_colouring) throw CapExceeded("exact colouring vertices", n, caps.exact_colouring);
    ChromaticResult r;
    if (n == 0) {
        r.exact = true;
        return r;
    }
    r.best = detail::dsatur_greedy(g);
    r.upper = r.best.count;
    std::vector<Vertex> clique;
    for (auto& c : maximal_cliques(g, caps))
        if (c.size() > clique.size()) clique = c;
    r.lower = clique.size();

    std::vector<int> col(n, -1);
    std::vector<std::vector<int>> nb_count(n, std::vector<int>(n + 1, 0));
    std::vector<std::size_t> sat(n, 0);
    auto assign = [&](Vertex v, int k) {
        col[v] = k;
        for (Vertex u : g.neighbours(v))
            if (nb_count[u][k]++ == 0) ++sat[u];
    };
    auto unassign = [&](Vertex v) {
        int k = col[v];
        col[v] = -1;
        for (Vertex u : g.neighbours(v))
            if (--nb_count[u][k] == 0) --sat[u];
    };
    std::size_t used = 0;
    for (Vertex v : clique) assign(v, static_cast<int>(used++));
    std::size_t coloured = clique.size();
    bool aborted = false;

    auto search = [&](auto&& self, std::size_t coloured_now, std::size_t used_now) -> void {
        if (r.upper == r.lower || aborted) return;
        if (++r.nodes > node_budget) {
            aborted = true;
            return;
        }
        if (coloured_now == n) {
            r.upper = used_now;
            r.best.count = used_now;
            for (Vertex v = 0; v < n; ++v) r.best.colour[v] = static_cast<std::uint32_t>(col[v]);
            return;
        }
        int pick = -1;
        for (Vertex v = 0; v < n; ++v) {
            if (col[v] >= 0) continue;
            if (pick < 0 || sat[v] > sat[pick] || (sat[v] == sat[pick] && g.degree(v) > g.degree(pick))) pick = v;
        }
        Vertex v = static_cast<Vertex>(pick);
        for (std::size_t k = 0; k <= used_now && k + 1 < r.upper; ++k) {
            if (nb_count[v][k]) continue;
            assign(v, static_cast<int>(k));
            self(self, coloured_now + 1, std::max(used_now, k + 1));
            unassign(v);
            if (r.upper == r.lower || aborted) return;
        }
    };
    search(search, coloured, used);
    r.exact = !aborted || r.upper == r.lower;
    return r;
}

struct ChromaticVerdict {
    std::size_t q = 0, m = 0;
    std::optional<std::size_t> chi;
    std::size_t lower = 0, upper = 0;
    std::vector<std::string> reason;
    std::optional<std::size_t> conjecture;  // never asserted
    Coloring witness;                       // proper colouring with `upper` colours
    bool witness_valid = false;
};

struct ChromaticOptions {
    bool exact = false;  // also run branch and bound on the graph itself when small enough
    std::uint64_t node_budget = 50'000'000;
};

inline ChromaticVerdict chromatic_verdict(const GroupTable& G, std::size_t m, const ChromaticOptions& opt = {},
                                          const Caps& caps = {}) {
    std::size_t q = G.order();
    if (q < 2) throw ValidationError("group order must be >= 2");
    if (m < 1) throw ValidationError("dimension must be >= 1");
    ChromaticVerdict v;
    v.q = q;
    v.m = m;
    v.lower = q;
    v.reason.push_back("lower bound " + std::to_string(q) + ": every part of Q_i is a clique");
    DiagGraph graph = build_graph(G, m, caps);

    Coloring identity{std::vector<std::uint32_t>(q), q};
    for (Element g = 0; g < q; ++g) identity.colour[g] = g;

    if (m % 2 == 1) {
        v.witness = pull_back_colouring(G, m, 1, identity, caps);
        v.reason.push_back("m odd: reduction maps onto the dimension-1 graph K_" + std::to_string(q));
        v.upper = q;
    } else if (hall_paige_predicate(G) && q <= caps.complete_mapping) {
        auto phi = find_complete_mapping(G, caps);
        if (!phi) throw ConsistencyError("Hall-Paige condition holds but no complete mapping was found");
        v.witness = pull_back_colouring(G, m, 2, complete_mapping_colouring(G, *phi, caps), caps);
        v.reason.push_back("complete mapping found: transversal colouring of the dimension-2 graph");
        if (m > 2) v.reason.push_back("pulled back through " + std::to_string((m - 2) / 2) + " reduction(s)");
        v.upper = q;
    } else {
        if (hall_paige_predicate(G)) {
            v.reason.push_back("Hall-Paige condition holds but |G| exceeds the complete mapping cap");
            v.chi = q;
            v.reason.push_back("chromatic number " + std::to_string(q) + " by the Hall-Paige theorem (no certificate)");
        } else {
            v.conjecture = q + 2;
        }
        if (q <= caps.complete_mapping && !find_complete_mapping(G, caps)) {
            if (m == 2) {
                v.lower = q + 1;
                v.reason.push_back("no complete mapping (exhaustive search): dimension-2 graph needs > " +
                                   std::to_string(q) + " colours");
            }
        }
        Graph square = build_graph(G, 2, caps).graph();
        Coloring base;
        if (square.size() <= caps.exact_colouring) {
            auto ex = chromatic_number_exact(square, opt.node_budget, caps);
            base = ex.best;
            v.reason.push_back(std::string("dimension-2 graph coloured with ") + std::to_string(ex.upper) +
                               (ex.exact ? " colours (optimal by branch and bound)" : " colours (search budget hit)"));
            if (m == 2 && ex.exact) v.lower = std::max(v.lower, ex.upper);
        } else {
            base = detail::dsatur_greedy(square);
            v.reason.push_back("dimension-2 graph coloured greedily with " + std::to_string(base.count) + " colours");
        }
        v.witness = pull_back_colouring(G, m, 2, base, caps);
        v.upper = base.count;
        if (m > 2) v.reason.push_back("upper bound pulled back through the reduction homomorphism");
    }
    v.witness_valid = validate_coloring(graph.graph(), v.witness) && colours_used(v.witness) <= v.upper;
    if (!v.witness_valid) throw ConsistencyError("constructed colouring is not proper");

    if (opt.exact && graph.size() <= caps.exact_colouring && !(v.lower == v.upper)) {
        auto ex = chromatic_number_exact(graph.graph(), opt.node_budget, caps);
        if (ex.exact) {
            v.lower = v.upper = ex.upper;
            v.witness = ex.best;
            v.reason.push_back("exact search on the graph itself: " + std::to_string(ex.upper));
        } else {
            v.lower = std::max(v.lower, ex.lower);
            v.upper = std::min(v.upper, ex.upper);
        }
    }
    if (v.lower == v.upper) v.chi = v.upper;
    return v;
}

} // namespace diaglab
