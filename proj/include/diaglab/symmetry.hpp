#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "diaglab/caps.hpp"
#include "diaglab/diaggraph.hpp"
#include "diaglab/error.hpp"
#include "diaglab/groups.hpp"
#include "diaglab/partitions.hpp"
#include "diaglab/semilattice.hpp"

namespace diaglab {

enum class GeneratorKind { right_mult, diag_left_mult, automorphism, coordinate_perm, inversion_map };

inline const char* generator_kind_name(GeneratorKind k) {
    switch (k) {
    case GeneratorKind::right_mult: return "right-mult";
    case GeneratorKind::diag_left_mult: return "diag-left-mult";
    case GeneratorKind::automorphism: return "aut";
    case GeneratorKind::coordinate_perm: return "coord-perm";
    case GeneratorKind::inversion_map: return "inversion-map";
    }
    return "?";
}

struct PermutationOnOmega {
    std::vector<Vertex> image;
    GeneratorKind kind;
};

inline bool is_bijection(const std::vector<Vertex>& p) {
    std::vector<char> hit(p.size(), 0);
    for (Vertex x : p) {
        if (x >= p.size() || hit[x]) return false;
        hit[x] = 1;
    }
    return true;
}

inline std::vector<Vertex> compose(const std::vector<Vertex>& first, const std::vector<Vertex>& then) {
    std::vector<Vertex> r(first.size());
    for (std::size_t x = 0; x < first.size(); ++x) r[x] = then[first[x]];
    return r;
}

// Generators of D(G,m) acting on G^m, as explicit image arrays: right
// multiplication by each generator of G in each coordinate, diagonal left
// multiplication, generators of Aut(G) coordinatewise, a transposition and
// an m-cycle of coordinates, and
// (g1, g2, ..., gm) -> (g1^{-1}, g1^{-1} g2, ..., g1^{-1} gm).
// Identity maps and repeats are dropped.
inline std::vector<PermutationOnOmega> diagonal_group_generators(const GroupTable& G, std::size_t m,
                                                                  const Caps& caps = {}) {
    if (m < 1) throw ValidationError("dimension must be >= 1");
    VertexCodec codec(G.order(), m, caps);
    std::size_t n = codec.size();
    std::vector<PermutationOnOmega> out;
    auto emit = [&](GeneratorKind kind, auto&& map_tuple) {
        std::vector<Vertex> img(n);
        for (Vertex v = 0; v < n; ++v) img[v] = codec.encode(map_tuple(codec.decode(v)));
        bool identity = true;
        for (Vertex v = 0; v < n && identity; ++v) identity = img[v] == v;
        if (identity) return;
        for (const auto& p : out)
            if (p.image == img) return;
        out.push_back({std::move(img), kind});
    };
    auto gens = generating_sequence(G);
    for (Element x : gens)
        for (std::size_t i = 0; i < m; ++i)
            emit(GeneratorKind::right_mult, [&](Tuple t) {
                t[i] = G.mul(t[i], x);
                return t;
            });
    for (Element x : gens)
        emit(GeneratorKind::diag_left_mult, [&](Tuple t) {
            for (auto& e : t) e = G.mul(G.inv(x), e);
            return t;
        });
    for (const auto& a : generating_subset(automorphism_group(G, caps)))
        emit(GeneratorKind::automorphism, [&](Tuple t) {
            for (auto& e : t) e = a[e];
            return t;
        });
    if (m >= 2) {
        emit(GeneratorKind::coordinate_perm, [&](Tuple t) {
            std::swap(t[0], t[1]);
            return t;
        });
        emit(GeneratorKind::coordinate_perm, [&](Tuple t) {
            std::rotate(t.begin(), t.begin() + 1, t.end());
            return t;
        });
    }
    emit(GeneratorKind::inversion_map, [&](Tuple t) {
        Element g1inv = G.inv(t[0]);
        Tuple r(t.size());
        r[0] = g1inv;
        for (std::size_t i = 1; i < t.size(); ++i) r[i] = G.mul(g1inv, t[i]);
        return r;
    });
    return out;
}

// Base and strong generating set built by deterministic Schreier-Sims.
// New base points are the smallest point moved by the offending element.
class StabilizerChain {
public:
    using Point = std::uint16_t;
    using Perm = std::vector<Point>;

    StabilizerChain(std::size_t degree, const std::vector<std::vector<Vertex>>& generators,
                    const std::vector<Vertex>& base_prefix = {}, const Caps& caps = {})
        : n_(degree) {
        if (n_ > caps.permutation_points || n_ > 65535)
            throw CapExceeded("permutation degree", n_, std::min<std::size_t>(caps.permutation_points, 65535));
        for (Vertex b : base_prefix) add_level(static_cast<Point>(b));
        for (const auto& g : generators) {
            if (g.size() != n_ || !is_bijection(g)) throw ValidationError("generator is not a permutation of the points");
            Perm p(g.begin(), g.end());
            if (is_identity(p)) continue;
            std::size_t lvl = 0;
            while (lvl < levels_.size() && p[levels_[lvl].base] == levels_[lvl].base) ++lvl;
            if (lvl == levels_.size()) add_level(smallest_moved(p));
            add_strong(std::move(p));
        }
        for (std::size_t l = 0; l < levels_.size(); ++l) rebuild_orbit(l);
        run();
    }

    std::size_t degree() const noexcept { return n_; }
    std::size_t base_length() const noexcept { return levels_.size(); }
    std::vector<Vertex> base() const {
        std::vector<Vertex> b;
        for (auto& l : levels_) b.push_back(l.base);
        return b;
    }

    Integer order() const {
        Integer o = 1;
        for (auto& l : levels_) o *= l.orbit.size();
        return o;
    }

    std::vector<std::size_t> orbit_lengths() const {
        std::vector<std::size_t> r;
        for (auto& l : levels_) r.push_back(l.orbit.size());
        return r;
    }

    // Strong generators fixing the first `depth` base points.
    std::vector<std::vector<Vertex>> stabilizer_generators(std::size_t depth) const {
        std::vector<std::vector<Vertex>> out;
        for (std::size_t i = 0; i < strong_.size(); ++i)
            if (fix_depth_[i] >= depth) out.emplace_back(strong_[i].begin(), strong_[i].end());
        return out;
    }

    bool contains(const std::vector<Vertex>& g) const {
        Perm p(g.begin(), g.end());
        auto [res, lvl] = strip(std::move(p), 0);
        return lvl == levels_.size() && is_identity(res);
    }

private:
    struct Level {
        Point base;
        std::vector<Point> orbit;
        std::vector<std::int32_t> position;    // index in orbit or -1
        std::vector<Perm> to_base;             // maps orbit[k] to base
        std::vector<std::vector<char>> checked;  // [orbit index][generator slot]
        std::vector<std::size_t> gens;           // strong generator indices
    };

    static bool is_identity(const Perm& p) {
        for (std::size_t x = 0; x < p.size(); ++x)
            if (p[x] != x) return false;
        return true;
    }

    static Point smallest_moved(const Perm& p) {
        for (std::size_t x = 0; x < p.size(); ++x)
            if (p[x] != x) return static_cast<Point>(x);
        return 0;
    }

    Perm identity() const {
        Perm p(n_);
        std::iota(p.begin(), p.end(), Point{0});
        return p;
    }

    void add_level(Point b) {
        Level l;
        l.base = b;
        l.position.assign(n_, -1);
        levels_.push_back(std::move(l));
    }

    void add_strong(Perm p) {
        std::size_t idx = strong_.size();
        strong_.push_back(std::move(p));
        std::size_t fix = 0;
        while (fix < levels_.size() && strong_[idx][levels_[fix].base] == levels_[fix].base) ++fix;
        fix_depth_.push_back(fix);
        for (std::size_t l = 0; l <= fix && l < levels_.size(); ++l) levels_[l].gens.push_back(idx);
    }

    void rebuild_orbit(std::size_t li) {
        Level& l = levels_[li];
        if (l.orbit.empty()) {
            l.orbit.push_back(l.base);
            l.position[l.base] = 0;
            l.to_base.push_back(identity());
        }
        for (auto& row : l.checked) row.resize(l.gens.size(), 0);
        // extend: every orbit point against every generator
        for (std::size_t k = 0; k < l.orbit.size(); ++k) {
            for (std::size_t gi : l.gens) {
                const Perm& s = strong_[gi];
                Point y = s[l.orbit[k]];
                if (l.position[y] >= 0) continue;
                // to_base[y] = s^{-1} then to_base[k]
                Perm t(n_);
                const Perm& tk = l.to_base[k];
                for (std::size_t x = 0; x < n_; ++x) t[s[x]] = tk[x];
                l.position[y] = static_cast<std::int32_t>(l.orbit.size());
                l.orbit.push_back(y);
                l.to_base.push_back(std::move(t));
            }
        }
        l.checked.resize(l.orbit.size(), std::vector<char>(l.gens.size(), 0));
    }

    // Sifts h through levels from `start`; returns the residue and the level where it left the chain.
    std::pair<Perm, std::size_t> strip(Perm h, std::size_t start) const {
        Perm tmp(n_);
        for (std::size_t li = start; li < levels_.size(); ++li) {
            const Level& l = levels_[li];
            Point beta = h[l.base];
            if (l.position[beta] < 0) return {std::move(h), li};
            const Perm& u = l.to_base[static_cast<std::size_t>(l.position[beta])];
            for (std::size_t x = 0; x < n_; ++x) tmp[x] = u[h[x]];
            std::swap(h, tmp);
        }
        return {std::move(h), levels_.size()};
    }

    void run() {
        if (levels_.empty()) return;
        std::size_t i = levels_.size();
        while (i-- > 0) {
            if (!process_level(i)) {
                // a new generator was added at a deeper level; restart from the bottom
                i = levels_.size();
            }
        }
    }

    // Returns false when a new strong generator was added.
    bool process_level(std::size_t li) {
        Perm from_base(n_), h(n_);
        for (std::size_t k = 0; k < levels_[li].orbit.size(); ++k) {
            bool inverted = false;
            for (std::size_t slot = 0; slot < levels_[li].gens.size(); ++slot) {
                Level& l = levels_[li];
                if (l.checked[k][slot]) continue;
                l.checked[k][slot] = 1;
                if (!inverted) {
                    const Perm& tk = l.to_base[k];
                    for (std::size_t x = 0; x < n_; ++x) from_base[tk[x]] = static_cast<Point>(x);
                    inverted = true;
                }
                const Perm& s = strong_[l.gens[slot]];
                Point img = s[l.orbit[k]];
                const Perm& back = l.to_base[static_cast<std::size_t>(l.position[img])];
                for (std::size_t x = 0; x < n_; ++x) h[x] = back[s[from_base[x]]];
                auto [res, lvl] = strip(h, li + 1);
                if (lvl == levels_.size() && is_identity(res)) continue;
                if (lvl == levels_.size()) add_level(smallest_moved(res));
                add_strong(std::move(res));
                for (std::size_t d = 0; d < levels_.size(); ++d) rebuild_orbit(d);
                return false;
            }
        }
        return true;
    }

    std::size_t n_;
    std::vector<Level> levels_;
    std::vector<Perm> strong_;
    std::vector<std::size_t> fix_depth_;
};

inline Integer group_order_bsgs(std::size_t points, const std::vector<PermutationOnOmega>& gens, const Caps& caps = {}) {
    std::vector<std::vector<Vertex>> raw;
    for (auto& g : gens) raw.push_back(g.image);
    return StabilizerChain(points, raw, {}, caps).order();
}

inline Integer diagonal_group_order_formula(const GroupTable& G, std::size_t m, const Caps& caps = {}) {
    Integer o = 1;
    for (std::size_t i = 0; i < m; ++i) o *= G.order();
    o *= automorphism_group(G, caps).size();
    for (std::size_t k = 2; k <= m + 1; ++k) o *= k;
    return o;
}

// ---- orbits ------------------------------------------------------------

inline std::size_t count_components(DisjointSets& dsu) {
    std::size_t c = 0;
    for (std::uint32_t x = 0; x < dsu.size(); ++x)
        if (dsu.find(x) == x) ++c;
    return c;
}

inline std::size_t vertex_orbit_count(std::size_t n, const std::vector<PermutationOnOmega>& gens) {
    DisjointSets dsu(n);
    for (auto& g : gens)
        for (Vertex v = 0; v < n; ++v) dsu.unite(v, g.image[v]);
    return count_components(dsu);
}

// Orbits on unordered edges; throws if a generator is not an automorphism.
inline std::size_t edge_orbit_count(const Graph& graph, const std::vector<PermutationOnOmega>& gens) {
    DisjointSets dsu(graph.arc_count());
    for (Vertex v = 0; v < graph.size(); ++v)
        for (Vertex u : graph.neighbours(v)) {
            auto a = static_cast<std::uint32_t>(*graph.arc_index(v, u));
            dsu.unite(a, static_cast<std::uint32_t>(*graph.arc_index(u, v)));
            for (auto& g : gens) {
                auto b = graph.arc_index(g.image[v], g.image[u]);
                if (!b) throw ConsistencyError("generator does not preserve adjacency");
                dsu.unite(a, static_cast<std::uint32_t>(*b));
            }
        }
    return count_components(dsu);
}

inline std::size_t clique_orbit_count(const std::vector<std::vector<Vertex>>& cliques,
                                      const std::vector<PermutationOnOmega>& gens) {
    std::map<std::vector<Vertex>, std::uint32_t> index;
    for (std::size_t i = 0; i < cliques.size(); ++i) index.emplace(cliques[i], static_cast<std::uint32_t>(i));
    DisjointSets dsu(cliques.size());
    for (std::size_t i = 0; i < cliques.size(); ++i)
        for (auto& g : gens) {
            std::vector<Vertex> img;
            for (Vertex v : cliques[i]) img.push_back(g.image[v]);
            std::sort(img.begin(), img.end());
            auto it = index.find(img);
            if (it == index.end()) throw ConsistencyError("generator maps a clique outside the clique set");
            dsu.unite(static_cast<std::uint32_t>(i), it->second);
        }
    return count_components(dsu);
}

inline bool generators_preserve_edges(const Graph& graph, const std::vector<PermutationOnOmega>& gens) {
    for (auto& g : gens)
        for (auto [a, b] : graph.edges())
            if (!graph.adjacent(g.image[a], g.image[b])) return false;
    return true;
}

// Smallest block containing {a, b} under the group generated by gens.
inline std::vector<Vertex> minimal_block(std::size_t n, const std::vector<std::vector<Vertex>>& gens, Vertex a, Vertex b) {
    DisjointSets dsu(n);
    std::vector<std::pair<Vertex, Vertex>> queue;
    if (dsu.unite(a, b)) queue.emplace_back(a, b);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        auto [x, y] = queue[head];
        for (auto& g : gens)
            if (dsu.unite(g[x], g[y])) queue.emplace_back(g[x], g[y]);
    }
    std::vector<Vertex> block;
    auto root = dsu.find(a);
    for (Vertex v = 0; v < n; ++v)
        if (dsu.find(v) == root) block.push_back(v);
    return block;
}

struct PrimitivityReport {
    bool primitive = true;
    std::optional<std::vector<Vertex>> block;  // a nontrivial block when imprimitive
    std::optional<bool> criterion;              // nullopt when G cannot be classified
    std::string classification;
    bool criterion_agrees() const { return !criterion || *criterion == primitive; }
};

// Criterion: G characteristically simple, and p does not divide m+1 when G
// is elementary abelian of exponent p.
inline std::pair<std::optional<bool>, std::string> primitivity_criterion(const GroupTable& G, std::size_t m,
                                                                         const Caps& caps = {}) {
    if (auto p = is_elementary_abelian(G))
        return {(m + 1) % *p != 0, "elementary abelian p=" + std::to_string(*p)};
    if (G.order() <= caps.automorphisms) {
        bool cs = is_characteristically_simple(G, automorphism_group(G, caps));
        return {cs, cs ? "characteristically simple" : "has a proper nontrivial characteristic subgroup"};
    }
    if (G.order() <= caps.simplicity && is_simple_nonabelian(G, caps)) return {true, "simple nonabelian"};
    return {std::nullopt, "unsupported classification"};
}

inline PrimitivityReport is_vertex_primitive(const GroupTable& G, std::size_t m, const Caps& caps = {}) {
    auto gens = diagonal_group_generators(G, m, caps);
    std::size_t n = VertexCodec(G.order(), m, caps).size();
    std::vector<std::vector<Vertex>> raw;
    for (auto& g : gens) raw.push_back(g.image);
    PrimitivityReport r;
    std::tie(r.criterion, r.classification) = primitivity_criterion(G, m, caps);
    if (n <= 2) return r;
    StabilizerChain chain(n, raw, {0}, caps);
    // one candidate partner per orbit of the point stabilizer
    DisjointSets sub(n);
    for (auto& s : chain.stabilizer_generators(1))
        for (Vertex v = 0; v < n; ++v) sub.unite(v, s[v]);
    for (Vertex v = 1; v < n; ++v) {
        if (sub.find(v) != v) continue;
        auto block = minimal_block(n, raw, 0, v);
        if (block.size() < n) {
            r.primitive = false;
            r.block = std::move(block);
            break;
        }
    }
    return r;
}

// Permutation of {Q_0..Q_m} induced by each generator.
inline std::vector<std::vector<std::size_t>> sym_action_on_partitions(const GroupTable& G, std::size_t m,
                                                                       const std::vector<PermutationOnOmega>& gens,
                                                                       const Caps& caps = {}) {
    if (m < 2) throw ValidationError("partition action needs m >= 2");
    auto qs = minimal_partitions(G, m, caps);
    std::vector<std::vector<std::size_t>> out;
    for (auto& g : gens) {
        std::vector<std::size_t> act;
        for (auto& p : qs) {
            std::vector<std::uint32_t> labels(p.size());
            for (Vertex v = 0; v < p.size(); ++v) labels[g.image[v]] = p.block_of(v);
            auto img = Partition::from_labels(labels);
            auto it = std::find(qs.begin(), qs.end(), img);
            if (it == qs.end()) throw ConsistencyError("generator does not permute the minimal partitions");
            act.push_back(static_cast<std::size_t>(it - qs.begin()));
        }
        out.push_back(std::move(act));
    }
    return out;
}

// Order of the permutation group on a few points generated by perms.
inline std::size_t small_group_order(const std::vector<std::vector<std::size_t>>& perms, std::size_t points) {
    std::vector<std::size_t> id(points);
    std::iota(id.begin(), id.end(), std::size_t{0});
    std::set<std::vector<std::size_t>> seen{id};
    std::vector<std::vector<std::size_t>> queue{id};
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (auto& p : perms) {
            std::vector<std::size_t> c(points);
            for (std::size_t x = 0; x < points; ++x) c[x] = p[queue[head][x]];
            if (seen.insert(c).second) queue.push_back(std::move(c));
        }
    return seen.size();
}

struct SymmetryReport {
    Integer order = 0;
    Integer order_formula = 0;
    std::size_t generator_count = 0;
    bool generators_are_automorphisms = false;
    std::size_t vertex_orbits = 0;
    std::size_t edge_orbits = 0;
    std::size_t clique_orbits = 0;
    PrimitivityReport primitivity;
    bool partition_action_full = false;  // induces Sym(m+1) on Q_0..Q_m
    // For m = 2 and |G| <= 4 the graph has more automorphisms than D(G,m);
    // all verdicts here concern the D(G,m) action.
    bool about_diagonal_group_only = false;
};

// clique_orbits counts orbits on the cliques of largest size among `max_cliques`.
inline SymmetryReport symmetry_report(const DiagGraph& g, const std::vector<std::vector<Vertex>>& max_cliques,
                                      const Caps& caps = {}) {
    const GroupTable& G = g.group();
    std::size_t m = g.m();
    if (m < 2) throw ValidationError("symmetry report needs m >= 2");
    SymmetryReport r;
    auto gens = diagonal_group_generators(G, m, caps);
    r.generator_count = gens.size();
    r.generators_are_automorphisms = generators_preserve_edges(g.graph(), gens);
    std::vector<std::vector<Vertex>> raw;
    for (auto& p : gens) raw.push_back(p.image);
    StabilizerChain chain(g.size(), raw, {0}, caps);
    r.order = chain.order();
    r.order_formula = diagonal_group_order_formula(G, m, caps);
    r.vertex_orbits = vertex_orbit_count(g.size(), gens);
    r.edge_orbits = edge_orbit_count(g.graph(), gens);
    std::size_t omega = 0;
    for (auto& c : max_cliques) omega = std::max(omega, c.size());
    std::vector<std::vector<Vertex>> maximum;
    for (auto& c : max_cliques)
        if (c.size() == omega) maximum.push_back(c);
    r.clique_orbits = clique_orbit_count(maximum, gens);
    r.primitivity = is_vertex_primitive(G, m, caps);
    auto action = sym_action_on_partitions(G, m, gens, caps);
    std::size_t fact = 1;
    for (std::size_t k = 2; k <= m + 1; ++k) fact *= k;
    r.partition_action_full = small_group_order(action, m + 1) == fact;
    r.about_diagonal_group_only = exceptional_case(G, m) != Exception::none;
    return r;
}

} // namespace diaglab
