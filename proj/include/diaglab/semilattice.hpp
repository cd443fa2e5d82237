#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "diaglab/caps.hpp"
#include "diaglab/error.hpp"
#include "diaglab/groups.hpp"
#include "diaglab/partitions.hpp"

namespace diaglab {

using Vertex = std::uint32_t;
using Tuple = std::vector<Element>;

// Bijection between m-tuples over a q-element alphabet and 0..q^m-1.
// Coordinate 1 (array position 0) is least significant.
class VertexCodec {
public:
    VertexCodec(std::size_t q, std::size_t m, const Caps& caps = {}) : q_(q), m_(m) {
        if (q == 0) throw ValidationError("alphabet must be nonempty");
        if (m == 0) throw ValidationError("dimension must be >= 1");
        std::size_t n = 1;
        for (std::size_t i = 0; i < m; ++i) {
            if (n > caps.vertices / q) throw CapExceeded("vertex count q^m", saturating_power(q, m), caps.vertices);
            n *= q;
        }
        n_ = n;
        place_.resize(m);
        std::size_t p = 1;
        for (std::size_t i = 0; i < m; ++i, p *= q) place_[i] = p;
    }

    std::size_t q() const noexcept { return q_; }
    std::size_t m() const noexcept { return m_; }
    std::size_t size() const noexcept { return n_; }
    // Weight of coordinate i (0-based).
    std::size_t place(std::size_t i) const { return place_[i]; }

    Vertex encode(std::span<const Element> t) const {
        if (t.size() != m_) throw ValidationError("tuple has wrong length");
        std::size_t v = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (t[i] >= q_) throw ValidationError("tuple entry out of range");
            v += t[i] * place_[i];
        }
        return static_cast<Vertex>(v);
    }

    Tuple decode(Vertex v) const {
        if (v >= n_) throw ValidationError("vertex index out of range");
        Tuple t(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            t[i] = static_cast<Element>(v % q_);
            v = static_cast<Vertex>(v / q_);
        }
        return t;
    }

    Element coordinate(Vertex v, std::size_t i) const { return static_cast<Element>((v / place_[i]) % q_); }

private:
    static std::size_t saturating_power(std::size_t q, std::size_t m) {
        std::size_t r = 1;
        for (std::size_t i = 0; i < m; ++i) {
            if (r > SIZE_MAX / q) return SIZE_MAX;
            r *= q;
        }
        return r;
    }

    std::size_t q_, m_, n_ = 0;
    std::vector<std::size_t> place_;
};

// Q_i for i >= 1: tuples agreeing off coordinate i.
// Q_0: diagonal left-translation classes {(x g_1, ..., x g_m) : x in G}.
inline Partition minimal_partition(const GroupTable& G, std::size_t m, std::size_t i, const Caps& caps = {}) {
    if (i > m) throw ValidationError("partition index must be in 0..m");
    VertexCodec codec(G.order(), m, caps);
    std::vector<std::uint32_t> labels(codec.size());
    for (Vertex v = 0; v < codec.size(); ++v) {
        if (i >= 1) {
            labels[v] = static_cast<std::uint32_t>(v - codec.coordinate(v, i - 1) * codec.place(i - 1));
        } else {
            // normalize the class representative to have first coordinate 1
            Tuple t = codec.decode(v);
            Element shift = G.inv(t[0]);
            for (auto& e : t) e = G.mul(shift, e);
            labels[v] = codec.encode(t);
        }
    }
    return Partition::from_labels(labels);
}

inline std::vector<Partition> minimal_partitions(const GroupTable& G, std::size_t m, const Caps& caps = {}) {
    std::vector<Partition> out;
    for (std::size_t i = 0; i <= m; ++i) out.push_back(minimal_partition(G, m, i, caps));
    return out;
}

// The closure of a family of minimal partitions under supremum, together
// with E, ordered by refinement.
struct DiagonalSemilattice {
    std::size_t m = 0;
    std::size_t q = 0;
    std::size_t n = 0;
    std::vector<Partition> elements;  // sorted finest first
    std::vector<std::size_t> rank;    // longest chain from E
    std::vector<std::vector<char>> leq;
    std::vector<std::pair<std::size_t, std::size_t>> hasse;  // (lower, upper) covers
    std::size_t e_index = 0;
    std::size_t top_index = 0;
    std::vector<std::size_t> minimal_index;  // position of generator i
    std::vector<std::vector<std::size_t>> below;  // generators under each element

    bool top_is_universal() const { return elements[top_index].block_count() == 1; }

    std::vector<std::size_t> rank_counts() const {
        std::vector<std::size_t> c;
        for (auto r : rank) {
            if (r >= c.size()) c.resize(r + 1, 0);
            ++c[r];
        }
        return c;
    }

    std::string name(std::size_t idx) const {
        if (idx == e_index) return "E";
        if (idx == top_index && top_is_universal()) return "U";
        std::string s = "Q";
        if (below[idx].size() == 1) return s + std::to_string(below[idx][0]);
        s += "{";
        for (std::size_t k = 0; k < below[idx].size(); ++k) s += (k ? "," : "") + std::to_string(below[idx][k]);
        return s + "}";
    }
};

inline DiagonalSemilattice join_closure(const std::vector<Partition>& minimals) {
    if (minimals.empty()) throw ValidationError("join closure needs at least one partition");
    for (const auto& p : minimals) require_same_ground_set(minimals[0], p);
    std::size_t n = minimals[0].size();

    std::vector<Partition> elems;
    auto add = [&](const Partition& p) {
        if (std::find(elems.begin(), elems.end(), p) == elems.end()) {
            elems.push_back(p);
            return true;
        }
        return false;
    };
    for (const auto& p : minimals) add(p);
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) add(supremum(elems[i], elems[j]));
    add(Partition::discrete(n));
    sort_by_refinement(elems);

    DiagonalSemilattice sl;
    sl.n = n;
    sl.m = minimals.size() - 1;
    sl.q = minimals[0].uniform_block_size();
    std::size_t k = elems.size();
    sl.leq.assign(k, std::vector<char>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) sl.leq[i][j] = finer_or_equal(elems[i], elems[j]);
    sl.e_index = 0;
    sl.top_index = k - 1;
    for (std::size_t j = 0; j < k; ++j)
        if (!sl.leq[j][k - 1]) throw ConsistencyError("join closure has no greatest element");
    sl.rank.assign(k, 0);
    for (std::size_t j = 1; j < k; ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (sl.leq[i][j]) sl.rank[j] = std::max(sl.rank[j], sl.rank[i] + 1);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            if (!sl.leq[i][j]) continue;
            bool cover = true;
            for (std::size_t t = i + 1; t < j && cover; ++t)
                if (sl.leq[i][t] && sl.leq[t][j]) cover = false;
            if (cover) sl.hasse.emplace_back(i, j);
        }
    for (const auto& p : minimals)
        sl.minimal_index.push_back(static_cast<std::size_t>(std::find(elems.begin(), elems.end(), p) - elems.begin()));
    sl.below.resize(k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t g = 0; g < minimals.size(); ++g)
            if (sl.leq[sl.minimal_index[g]][j]) sl.below[j].push_back(g);
    sl.elements = std::move(elems);
    return sl;
}

inline DiagonalSemilattice build_semilattice(const GroupTable& G, std::size_t m, const Caps& caps = {}) {
    auto sl = join_closure(minimal_partitions(G, m, caps));
    sl.q = G.order();
    return sl;
}

// Every element of rank r has all parts of size q^r.
inline bool part_sizes_match_ranks(const DiagonalSemilattice& sl) {
    for (std::size_t i = 0; i < sl.elements.size(); ++i) {
        std::size_t expect = 1;
        for (std::size_t r = 0; r < sl.rank[i]; ++r) expect *= sl.q;
        if (sl.elements[i].uniform_block_size() != expect) return false;
    }
    return true;
}

// True iff the suprema over all subsets of parts are pairwise distinct and
// the supremum over a k-subset has all parts of size q^k.
inline bool check_cartesian(const std::vector<Partition>& parts, std::size_t q) {
    if (parts.empty() || parts.size() >= 8 * sizeof(std::size_t)) return false;
    std::size_t n = parts[0].size();
    for (const auto& p : parts)
        if (p.size() != n) return false;
    std::vector<Partition> sups;
    std::size_t subsets = std::size_t{1} << parts.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        Partition s = Partition::discrete(n);
        std::size_t expect = 1;
        for (std::size_t i = 0; i < parts.size(); ++i)
            if (mask >> i & 1) {
                s = supremum(s, parts[i]);
                expect *= q;
            }
        if (s.uniform_block_size() != expect) return false;
        sups.push_back(std::move(s));
    }
    std::sort(sups.begin(), sups.end());
    return std::adjacent_find(sups.begin(), sups.end()) == sups.end();
}

// Every m-subset of Q_0..Q_m generates a Cartesian lattice.
inline bool verify_semilattice_hypothesis(const GroupTable& G, std::size_t m, const Caps& caps = {}) {
    auto qs = minimal_partitions(G, m, caps);
    for (std::size_t skip = 0; skip <= m; ++skip) {
        std::vector<Partition> subset;
        for (std::size_t i = 0; i <= m; ++i)
            if (i != skip) subset.push_back(qs[i]);
        if (!check_cartesian(subset, G.order())) return false;
    }
    return true;
}

// mu(S,T) for S <= T: (-1)^(rT-rS) below the top, (-1)^(m-rS)(m-rS) at U
// for S != U, and mu(U,U) = 1.
inline long long mobius_closed_form(std::size_t rank_s, std::size_t rank_t, bool t_is_top, std::size_t m) {
    if (rank_s > rank_t || rank_t > m || (t_is_top && rank_t != m) || (!t_is_top && rank_t == m))
        throw ValidationError("rank violation in Moebius closed form");
    auto sign = [](std::size_t e) { return e % 2 ? -1LL : 1LL; };
    if (!t_is_top) return sign(rank_t - rank_s);
    std::size_t d = m - rank_s;
    if (d == 0) return 1;
    return sign(d) * static_cast<long long>(d);
}

struct MobiusMismatch {
    std::size_t lower, upper;
    long long expected;
    Integer actual;
};

struct MobiusReport {
    std::size_t element_count = 0;
    std::vector<std::size_t> ranks;
    std::vector<MobiusMismatch> mismatches;
    Integer mu_bottom_top = 0;
    bool zeta_inverse_ok = false;
    PosetMatrices matrices;
};

// Exact zeta inversion compared entrywise with the closed form; pairs with
// S not below T must have mu = 0.
inline MobiusReport verify_mobius(const DiagonalSemilattice& sl) {
    MobiusReport rep;
    rep.matrices = poset_matrices(sl.elements);
    rep.zeta_inverse_ok = zeta_mobius_identity(rep.matrices);
    rep.element_count = sl.elements.size();
    rep.ranks = sl.rank;
    // poset_matrices sorts exactly as join_closure does, so indices agree.
    std::size_t k = sl.elements.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const Integer& actual = rep.matrices.mobius[i][j];
            long long expected = 0;
            if (sl.leq[i][j] && i <= j) {
                bool top = j == sl.top_index;
                expected = mobius_closed_form(sl.rank[i], sl.rank[j], top, sl.m);
            }
            if (actual != expected) rep.mismatches.push_back({i, j, expected, actual});
        }
    rep.mu_bottom_top = rep.matrices.mobius[sl.e_index][sl.top_index];
    return rep;
}

// Number of elements of the interval [S, top] at each relative rank.
inline std::vector<std::size_t> interval_rank_profile(const DiagonalSemilattice& sl, std::size_t s) {
    std::vector<std::size_t> c;
    for (std::size_t t = 0; t < sl.elements.size(); ++t) {
        if (t < s || !sl.leq[s][t]) continue;
        std::size_t r = sl.rank[t] - sl.rank[s];
        if (r >= c.size()) c.resize(r + 1, 0);
        ++c[r];
    }
    return c;
}

inline std::string hasse_dot(const DiagonalSemilattice& sl) {
    std::ostringstream out;
    out << "digraph semilattice {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < sl.elements.size(); ++i)
        out << "  n" << i << " [label=\"" << sl.name(i) << "\"];  // rank " << sl.rank[i] << "\n";
    for (auto [a, b] : sl.hasse) out << "  n" << a << " -> n" << b << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace diaglab
