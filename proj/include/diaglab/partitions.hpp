#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "diaglab/error.hpp"

namespace diaglab {

using Integer = boost::multiprecision::cpp_int;

// Disjoint-set forest with path halving and union by size.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Returns false when a and b were already together.
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    std::size_t set_size(std::uint32_t x) { return size_[find(x)]; }
    std::size_t size() const noexcept { return parent_.size(); }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::size_t> size_;
};

// A partition of {0..N-1}. Block ids are assigned in order of first
// occurrence, so two partitions are equal iff their arrays are equal.
class Partition {
public:
    Partition() = default;

    // Canonicalizes arbitrary labels.
    template <typename Label>
    static Partition from_labels(const std::vector<Label>& labels) {
        Partition p;
        p.block_of_.resize(labels.size());
        std::unordered_map<Label, std::uint32_t> ids;
        for (std::size_t v = 0; v < labels.size(); ++v) {
            auto [it, inserted] = ids.emplace(labels[v], static_cast<std::uint32_t>(ids.size()));
            p.block_of_[v] = it->second;
        }
        p.block_count_ = ids.size();
        return p;
    }

    static Partition discrete(std::size_t n) {
        std::vector<std::uint32_t> l(n);
        std::iota(l.begin(), l.end(), std::uint32_t{0});
        return from_labels(l);
    }

    static Partition universal(std::size_t n) { return from_labels(std::vector<std::uint32_t>(n, 0)); }

    std::size_t size() const noexcept { return block_of_.size(); }
    std::size_t block_count() const noexcept { return block_count_; }
    std::uint32_t block_of(std::size_t v) const { return block_of_[v]; }
    const std::vector<std::uint32_t>& labels() const noexcept { return block_of_; }

    std::vector<std::vector<std::uint32_t>> blocks() const {
        std::vector<std::vector<std::uint32_t>> out(block_count_);
        for (std::size_t v = 0; v < block_of_.size(); ++v) out[block_of_[v]].push_back(static_cast<std::uint32_t>(v));
        return out;
    }

    // Size shared by all blocks, or 0 when sizes differ.
    std::size_t uniform_block_size() const {
        if (block_count_ == 0) return 0;
        std::vector<std::size_t> sizes(block_count_, 0);
        for (auto b : block_of_) ++sizes[b];
        for (auto s : sizes)
            if (s != sizes[0]) return 0;
        return sizes[0];
    }

    bool operator==(const Partition& o) const { return block_of_ == o.block_of_; }
    bool operator!=(const Partition& o) const { return !(*this == o); }
    bool operator<(const Partition& o) const { return block_of_ < o.block_of_; }

private:
    std::vector<std::uint32_t> block_of_;
    std::size_t block_count_ = 0;
};

inline void require_same_ground_set(const Partition& p, const Partition& q) {
    if (p.size() != q.size())
        throw ValidationError("partitions on different ground sets (" + std::to_string(p.size()) + " vs " +
                              std::to_string(q.size()) + ")");
}

// P is finer than or equal to Q: every block of P sits inside one block of Q.
inline bool finer_or_equal(const Partition& p, const Partition& q) {
    require_same_ground_set(p, q);
    std::vector<std::int64_t> image(p.block_count(), -1);
    for (std::size_t v = 0; v < p.size(); ++v) {
        auto& img = image[p.block_of(v)];
        if (img < 0)
            img = q.block_of(v);
        else if (img != q.block_of(v))
            return false;
    }
    return true;
}

// Greatest common refinement: blocks are the nonempty intersections.
// Note the naming: this is the meet of the refinement order (lower bound).
inline Partition infimum(const Partition& p, const Partition& q) {
    require_same_ground_set(p, q);
    std::vector<std::uint64_t> labels(p.size());
    for (std::size_t v = 0; v < p.size(); ++v)
        labels[v] = (static_cast<std::uint64_t>(p.block_of(v)) << 32) | q.block_of(v);
    return Partition::from_labels(labels);
}

// Least common coarsening: connected components of "same block of P or of Q".
// This is the operation that generates the diagonal semilattice upward.
inline Partition supremum(const Partition& p, const Partition& q) {
    require_same_ground_set(p, q);
    DisjointSets dsu(p.size());
    std::vector<std::int64_t> first_p(p.block_count(), -1), first_q(q.block_count(), -1);
    for (std::size_t v = 0; v < p.size(); ++v) {
        auto x = static_cast<std::uint32_t>(v);
        auto& fp = first_p[p.block_of(v)];
        if (fp < 0) fp = v; else dsu.unite(static_cast<std::uint32_t>(fp), x);
        auto& fq = first_q[q.block_of(v)];
        if (fq < 0) fq = v; else dsu.unite(static_cast<std::uint32_t>(fq), x);
    }
    std::vector<std::uint32_t> roots(p.size());
    for (std::size_t v = 0; v < p.size(); ++v) roots[v] = dsu.find(static_cast<std::uint32_t>(v));
    return Partition::from_labels(roots);
}

// One line of N comma-separated block ids; canonicalized on load.
inline Partition parse_partition(std::string_view text) {
    std::vector<long long> labels;
    std::string token;
    std::istringstream in{std::string(text)};
    while (std::getline(in, token, ',')) {
        auto b = token.find_first_not_of(" \t\r\n");
        auto e = token.find_last_not_of(" \t\r\n");
        if (b == std::string::npos) throw ParseError("empty block id in partition text");
        token = token.substr(b, e - b + 1);
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(token, &used);
        } catch (const std::exception&) {
            throw ParseError("bad block id '" + token + "'");
        }
        if (used != token.size() || v < 0) throw ParseError("bad block id '" + token + "'");
        labels.push_back(v);
    }
    if (labels.empty()) throw ParseError("empty partition text");
    return Partition::from_labels(labels);
}

inline std::string format_partition(const Partition& p) {
    std::string out;
    for (std::size_t v = 0; v < p.size(); ++v) {
        if (v) out += ',';
        out += std::to_string(p.block_of(v));
    }
    return out;
}

// Zeta and Moebius matrices of a finite family of partitions under refinement.
struct PosetMatrices {
    std::vector<Partition> elements;           // sorted: more blocks first
    std::vector<std::vector<int>> zeta;        // zeta[i][j] = 1 iff elements[i] <= elements[j]
    std::vector<std::vector<Integer>> mobius;  // exact inverse of zeta

    std::size_t index_of(const Partition& p) const {
        auto it = std::find(elements.begin(), elements.end(), p);
        if (it == elements.end()) throw ValidationError("partition not in poset");
        return static_cast<std::size_t>(it - elements.begin());
    }
};

// Topological order compatible with refinement: finer partitions have more blocks.
inline void sort_by_refinement(std::vector<Partition>& elems) {
    std::sort(elems.begin(), elems.end(), [](const Partition& a, const Partition& b) {
        if (a.block_count() != b.block_count()) return a.block_count() > b.block_count();
        return a < b;
    });
}

inline PosetMatrices poset_matrices(std::vector<Partition> elems) {
    for (std::size_t i = 1; i < elems.size(); ++i) require_same_ground_set(elems[0], elems[i]);
    sort_by_refinement(elems);
    for (std::size_t i = 1; i < elems.size(); ++i)
        if (elems[i] == elems[i - 1]) throw ValidationError("duplicate partition in poset");
    std::size_t n = elems.size();
    PosetMatrices pm;
    pm.zeta.assign(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) pm.zeta[i][j] = finer_or_equal(elems[i], elems[j]) ? 1 : 0;
    // zeta is upper unitriangular; invert row by row with
    // mu(i,j) = -sum_{i <= k < j} mu(i,k) zeta(k,j).
    pm.mobius.assign(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        pm.mobius[i][i] = 1;
        for (std::size_t j = i + 1; j < n; ++j) {
            Integer s = 0;
            for (std::size_t k = i; k < j; ++k)
                if (pm.zeta[k][j]) s += pm.mobius[i][k];
            pm.mobius[i][j] = -s;
        }
    }
    pm.elements = std::move(elems);
    return pm;
}

// Exact check that zeta * mobius is the identity.
inline bool zeta_mobius_identity(const PosetMatrices& pm) {
    std::size_t n = pm.elements.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Integer s = 0;
            for (std::size_t k = 0; k < n; ++k)
                if (pm.zeta[i][k]) s += pm.mobius[k][j];
            if (s != (i == j ? 1 : 0)) return false;
        }
    return true;
}

} // namespace diaglab
