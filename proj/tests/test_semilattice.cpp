#include <gtest/gtest.h>

#include "diaglab/semilattice.hpp"
#include "diaglab/spectral.hpp"
#include "oracles.hpp"

using namespace diaglab;

namespace {

struct Instance {
    std::string group;
    std::size_t m;
};

// Groups of order 2..6 with q^m <= 4096 and m <= 8.
std::vector<Instance> grid() {
    std::vector<Instance> out;
    for (auto g : {"C2", "C3", "C4", "V4", "C5", "C6", "S3"})
        for (std::size_t m = 1; m <= 8; ++m) {
            std::size_t q = parse_group_spec(g).order(), n = 1;
            for (std::size_t i = 0; i < m; ++i) n *= q;
            if (n <= 4096) out.push_back({g, m});
        }
    return out;
}

// Moebius value by Hall's theorem: alternating count of chains from s to t.
Integer mobius_by_chains(const DiagonalSemilattice& sl, std::size_t s, std::size_t t) {
    std::size_t k = sl.elements.size();
    // chains[x][len] = chains s = x0 < ... < x_len = x
    std::vector<std::vector<Integer>> chains(k, std::vector<Integer>(k + 1, 0));
    chains[s][0] = 1;
    for (std::size_t x = 0; x < k; ++x)
        for (std::size_t len = 0; len < k; ++len) {
            if (chains[x][len] == 0) continue;
            for (std::size_t y = 0; y < k; ++y)
                if (y != x && finer_or_equal(sl.elements[x], sl.elements[y])) chains[y][len + 1] += chains[x][len];
        }
    Integer mu = 0;
    for (std::size_t len = 0; len <= k; ++len) mu += (len % 2 ? -1 : 1) * chains[t][len];
    return mu;
}

} // namespace

TEST(Codec, Examples) {
    VertexCodec c(3, 3);
    EXPECT_EQ(c.encode(Tuple{1, 0, 0}), 1u);
    EXPECT_EQ(c.decode(26), (Tuple{2, 2, 2}));
    EXPECT_EQ(VertexCodec(2, 4).encode(Tuple{1, 1, 0, 0}), 3u);
    for (Vertex v = 0; v < c.size(); ++v) EXPECT_EQ(c.encode(c.decode(v)), v);
    EXPECT_EQ(c.coordinate(5, 0), 2u);
    EXPECT_EQ(c.coordinate(5, 1), 1u);
    Caps caps;
    caps.vertices = 100;
    EXPECT_THROW(VertexCodec(5, 3, caps), CapExceeded);
}

TEST(MinimalPartitions, Examples) {
    auto c2 = cyclic_group(2);
    EXPECT_EQ(minimal_partition(c2, 2, 1), Partition::from_labels(std::vector<int>{0, 0, 1, 1}));
    EXPECT_EQ(minimal_partition(c2, 2, 2), Partition::from_labels(std::vector<int>{0, 1, 0, 1}));
    EXPECT_EQ(minimal_partition(c2, 2, 0), Partition::from_labels(std::vector<int>{0, 1, 1, 0}));

    auto q0 = minimal_partition(cyclic_group(3), 3, 0);
    EXPECT_EQ(q0.block_count(), 9u);
    EXPECT_EQ(q0.uniform_block_size(), 3u);
    EXPECT_EQ(q0.block_of(0), q0.block_of(13));  // (1,1,1)
    EXPECT_EQ(q0.block_of(0), q0.block_of(26));  // (2,2,2)
}

TEST(MinimalPartitions, LeftTranslationClasses) {
    for (auto g : {"S3", "D4", "Q8"}) {
        auto G = parse_group_spec(g);
        VertexCodec codec(G.order(), 2);
        auto q0 = minimal_partition(G, 2, 0);
        for (Vertex v = 0; v < codec.size(); ++v) {
            auto t = codec.decode(v);
            for (Element x = 0; x < G.order(); ++x) {
                Tuple s{G.mul(x, t[0]), G.mul(x, t[1])};
                EXPECT_EQ(q0.block_of(v), q0.block_of(codec.encode(s))) << g;
            }
        }
        EXPECT_EQ(q0.block_count(), G.order());
    }
}

TEST(Semilattice, FigureCounts) {
    auto a = build_semilattice(cyclic_group(2), 2);
    EXPECT_EQ(a.elements.size(), 5u);
    EXPECT_EQ(a.rank_counts(), (std::vector<std::size_t>{1, 3, 1}));
    auto b = build_semilattice(cyclic_group(2), 3);
    EXPECT_EQ(b.elements.size(), 12u);
    EXPECT_EQ(b.rank_counts(), (std::vector<std::size_t>{1, 4, 6, 1}));
    auto c = build_semilattice(cyclic_group(3), 2);
    EXPECT_EQ(c.elements.size(), 5u);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            EXPECT_EQ(supremum(c.elements[c.minimal_index[i]], c.elements[c.minimal_index[j]]), Partition::universal(9));
}

TEST(Semilattice, HasseDiagramOfLatinSquare) {
    auto sl = build_semilattice(cyclic_group(2), 2);
    EXPECT_EQ(sl.hasse.size(), 6u);
    auto dot = hasse_dot(sl);
    EXPECT_NE(dot.find("digraph"), std::string::npos);
    EXPECT_NE(dot.find("\"U\""), std::string::npos);
    EXPECT_NE(dot.find("\"Q0\""), std::string::npos);
}

TEST(Semilattice, RankCountsAndClosureOnGrid) {
    for (auto& [g, m] : grid()) {
        if (m < 2) continue;
        auto G = parse_group_spec(g);
        auto sl = build_semilattice(G, m);
        std::vector<std::size_t> expected;
        for (std::size_t i = 0; i < m; ++i) expected.push_back(static_cast<std::size_t>(binomial(m + 1, i)));
        expected.push_back(1);
        EXPECT_EQ(sl.rank_counts(), expected) << g << " m=" << m;
        EXPECT_TRUE(sl.top_is_universal());
        EXPECT_TRUE(part_sizes_match_ranks(sl));
        if (sl.elements.size() <= 64) {
            for (auto& a : sl.elements)
                for (auto& b : sl.elements)
                    EXPECT_NE(std::find(sl.elements.begin(), sl.elements.end(), supremum(a, b)), sl.elements.end());
        }
        // every rank-2 element sits over a Boolean interval of 4 elements
        for (std::size_t t = 0; t < sl.elements.size(); ++t) {
            if (sl.rank[t] != 2 || t == sl.top_index) continue;
            std::size_t below = 0;
            for (std::size_t s = 0; s < sl.elements.size(); ++s) below += sl.leq[s][t] ? 1 : 0;
            EXPECT_EQ(below, 4u);
        }
    }
}

TEST(Semilattice, SubsetSupremaHaveRankAndPartSize) {
    for (auto& [g, m] : grid()) {
        if (m < 2 || m > 5) continue;
        auto G = parse_group_spec(g);
        auto qs = minimal_partitions(G, m);
        std::size_t q = G.order();
        for (std::size_t mask = 1; mask < (std::size_t{1} << (m + 1)); ++mask) {
            std::size_t bits = static_cast<std::size_t>(__builtin_popcountll(mask));
            if (bits > m - 1) continue;
            Partition s = Partition::discrete(qs[0].size());
            for (std::size_t i = 0; i <= m; ++i)
                if (mask >> i & 1) s = supremum(s, qs[i]);
            std::size_t part = 1;
            for (std::size_t k = 0; k < bits; ++k) part *= q;
            EXPECT_EQ(s.uniform_block_size(), part) << g << " m=" << m << " mask=" << mask;
        }
    }
}

TEST(Semilattice, CartesianCheck) {
    auto G = cyclic_group(3);
    auto qs = minimal_partitions(G, 2);
    EXPECT_TRUE(check_cartesian({qs[1], qs[2]}, 3));
    EXPECT_TRUE(check_cartesian({qs[0], qs[2]}, 3));
    EXPECT_FALSE(check_cartesian({qs[1], qs[1]}, 3));
    EXPECT_FALSE(check_cartesian({qs[1], qs[2]}, 2));
}

TEST(Semilattice, Hypothesis) {
    EXPECT_TRUE(verify_semilattice_hypothesis(cyclic_group(3), 3));
    EXPECT_TRUE(verify_semilattice_hypothesis(cyclic_group(2), 2));
    EXPECT_TRUE(verify_semilattice_hypothesis(cyclic_group(4), 2));
    EXPECT_TRUE(verify_semilattice_hypothesis(parse_group_spec("S3"), 3));
}

TEST(Mobius, ClosedFormExamples) {
    EXPECT_EQ(mobius_closed_form(0, 3, true, 3), -3);
    EXPECT_EQ(mobius_closed_form(0, 2, true, 2), 2);
    for (std::size_t r = 0; r < 4; ++r) EXPECT_EQ(mobius_closed_form(r, r, false, 4), 1);
    EXPECT_EQ(mobius_closed_form(4, 4, true, 4), 1);
    EXPECT_EQ(mobius_closed_form(1, 3, false, 4), 1);
    EXPECT_EQ(mobius_closed_form(1, 4, true, 4), -3);
    EXPECT_THROW(mobius_closed_form(2, 1, false, 3), ValidationError);
    EXPECT_THROW(mobius_closed_form(0, 3, false, 3), ValidationError);
}

TEST(Mobius, MatchesInversion) {
    auto a = verify_mobius(build_semilattice(cyclic_group(2), 2));
    EXPECT_TRUE(a.mismatches.empty());
    EXPECT_EQ(a.mu_bottom_top, 2);
    EXPECT_EQ(a.element_count * a.element_count, 25u);

    auto sl = build_semilattice(cyclic_group(3), 3);
    auto b = verify_mobius(sl);
    EXPECT_TRUE(b.mismatches.empty());
    EXPECT_EQ(b.mu_bottom_top, -3);
    for (auto i : sl.minimal_index) EXPECT_EQ(b.matrices.mobius[i][sl.top_index], 2);

    auto c = verify_mobius(build_semilattice(cyclic_group(2), 4));
    EXPECT_TRUE(c.mismatches.empty());
    EXPECT_EQ(c.mu_bottom_top, 4);
}

TEST(Mobius, AgreesWithChainCounting) {
    for (auto [g, m] : std::vector<Instance>{{"C2", 2}, {"C3", 3}, {"C2", 4}, {"S3", 2}, {"C2", 5}}) {
        auto sl = build_semilattice(parse_group_spec(g), m);
        auto r = verify_mobius(sl);
        for (std::size_t s = 0; s < sl.elements.size(); ++s)
            for (std::size_t t = s; t < sl.elements.size(); ++t)
                if (sl.leq[s][t]) {
                    EXPECT_EQ(r.matrices.mobius[s][t], mobius_by_chains(sl, s, t)) << g << " m=" << m;
                }
    }
}

TEST(Mobius, ZeroMismatchesOnGrid) {
    for (auto& [g, m] : grid()) {
        if (m < 2) continue;
        auto r = verify_mobius(build_semilattice(parse_group_spec(g), m));
        EXPECT_TRUE(r.mismatches.empty()) << g << " m=" << m;
        EXPECT_TRUE(r.zeta_inverse_ok);
        EXPECT_EQ(r.mu_bottom_top, (m % 2 ? -1 : 1) * static_cast<long long>(m));
    }
}

TEST(Mobius, IntervalSelfSimilarity) {
    for (auto [g, m] : std::vector<Instance>{{"C2", 4}, {"C3", 3}, {"C4", 3}, {"C2", 6}}) {
        auto G = parse_group_spec(g);
        auto sl = build_semilattice(G, m);
        auto smaller = build_semilattice(G, m - 1);
        auto r = verify_mobius(sl);
        for (std::size_t s = 0; s < sl.elements.size(); ++s) {
            if (sl.rank[s] != 1) continue;
            EXPECT_EQ(interval_rank_profile(sl, s), smaller.rank_counts()) << g << " m=" << m;
            for (std::size_t t = s; t < sl.elements.size(); ++t) {
                if (!sl.leq[s][t]) continue;
                bool top = t == sl.top_index;
                EXPECT_EQ(r.matrices.mobius[s][t], mobius_closed_form(0, sl.rank[t] - 1, top, m - 1));
            }
        }
    }
}
