#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diaglab/caps.hpp"
#include "diaglab/error.hpp"

namespace diaglab {

using Vertex = std::uint32_t;

// Simple undirected graph in compressed sparse row form with sorted
// neighbour lists.
class Graph {
public:
    Graph() : offsets_{0} {}

    // adjacency[v] may be unsorted; must be symmetric, loop-free and duplicate-free.
    explicit Graph(std::vector<std::vector<Vertex>> adjacency) {
        std::size_t n = adjacency.size();
        offsets_.assign(n + 1, 0);
        for (std::size_t v = 0; v < n; ++v) {
            auto& nb = adjacency[v];
            std::sort(nb.begin(), nb.end());
            if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
                throw ValidationError("duplicate edge at vertex " + std::to_string(v));
            for (Vertex u : nb) {
                if (u >= n) throw ValidationError("neighbour out of range");
                if (u == v) throw ValidationError("loop at vertex " + std::to_string(v));
            }
            offsets_[v + 1] = offsets_[v] + nb.size();
        }
        neighbours_.reserve(offsets_[n]);
        for (auto& nb : adjacency) neighbours_.insert(neighbours_.end(), nb.begin(), nb.end());
        for (Vertex v = 0; v < n; ++v)
            for (Vertex u : neighbours(v))
                if (!adjacent(u, v)) throw ValidationError("adjacency is not symmetric");
    }

    static Graph from_edges(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
        std::vector<std::vector<Vertex>> adj(n);
        for (auto [a, b] : edges) {
            if (a >= n || b >= n) throw ValidationError("edge endpoint out of range");
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        return Graph(std::move(adj));
    }

    static Graph complete(std::size_t n) {
        std::vector<std::vector<Vertex>> adj(n);
        for (Vertex v = 0; v < n; ++v)
            for (Vertex u = 0; u < n; ++u)
                if (u != v) adj[v].push_back(u);
        return Graph(std::move(adj));
    }

    std::size_t size() const noexcept { return offsets_.size() - 1; }
    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
    std::size_t edge_count() const noexcept { return neighbours_.size() / 2; }

    std::span<const Vertex> neighbours(Vertex v) const {
        return {neighbours_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }

    // Position of the arc v->u in the flat neighbour array.
    std::optional<std::size_t> arc_index(Vertex v, Vertex u) const {
        auto nb = neighbours(v);
        auto it = std::lower_bound(nb.begin(), nb.end(), u);
        if (it == nb.end() || *it != u) return std::nullopt;
        return offsets_[v] + static_cast<std::size_t>(it - nb.begin());
    }

    bool adjacent(Vertex v, Vertex u) const { return arc_index(v, u).has_value(); }

    std::size_t arc_count() const noexcept { return neighbours_.size(); }

    std::vector<std::pair<Vertex, Vertex>> edges() const {
        std::vector<std::pair<Vertex, Vertex>> out;
        out.reserve(edge_count());
        for (Vertex v = 0; v < size(); ++v)
            for (Vertex u : neighbours(v))
                if (v < u) out.emplace_back(v, u);
        return out;
    }

    std::optional<std::size_t> regular_degree() const {
        if (size() == 0) return 0;
        for (Vertex v = 1; v < size(); ++v)
            if (degree(v) != degree(0)) return std::nullopt;
        return degree(0);
    }

    Graph complement() const {
        std::vector<std::vector<Vertex>> adj(size());
        for (Vertex v = 0; v < size(); ++v)
            for (Vertex u = 0; u < size(); ++u)
                if (u != v && !adjacent(v, u)) adj[v].push_back(u);
        return Graph(std::move(adj));
    }

    bool operator==(const Graph& o) const { return offsets_ == o.offsets_ && neighbours_ == o.neighbours_; }

private:
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> neighbours_;
};

inline constexpr std::uint32_t unreachable = std::numeric_limits<std::uint32_t>::max();

inline std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex source) {
    if (source >= g.size()) throw ValidationError("BFS source out of range");
    std::vector<std::uint32_t> dist(g.size(), unreachable);
    std::vector<Vertex> queue{source};
    queue.reserve(g.size());
    dist[source] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex v = queue[head];
        for (Vertex u : g.neighbours(v))
            if (dist[u] == unreachable) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
    }
    return dist;
}

inline std::uint32_t eccentricity(const Graph& g, Vertex v) {
    auto d = bfs_distances(g, v);
    auto e = *std::max_element(d.begin(), d.end());
    if (e == unreachable) throw ConsistencyError("graph is disconnected");
    return e;
}

// Maximum eccentricity over all vertices, or over vertex 0 only when the
// caller knows the graph is vertex-transitive.
inline std::uint32_t graph_diameter(const Graph& g, bool all_pairs = true) {
    if (g.size() == 0) return 0;
    if (!all_pairs) return eccentricity(g, 0);
    std::uint32_t d = 0;
    for (Vertex v = 0; v < g.size(); ++v) d = std::max(d, eccentricity(g, v));
    return d;
}

inline std::vector<Vertex> common_neighbours(const Graph& g, Vertex u, Vertex v) {
    if (u == v) throw ValidationError("common neighbours need distinct vertices");
    auto a = g.neighbours(u), b = g.neighbours(v);
    std::vector<Vertex> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

namespace detail {

struct CliqueSearch {
    const Graph& g;
    std::vector<std::vector<Vertex>>& out;
    std::vector<Vertex> current;

    std::vector<Vertex> restrict_to(const std::vector<Vertex>& set, Vertex v) const {
        std::vector<Vertex> r;
        auto nb = g.neighbours(v);
        std::set_intersection(set.begin(), set.end(), nb.begin(), nb.end(), std::back_inserter(r));
        return r;
    }

    // Tomita pivoting: pivot maximizes |P n N(u)| over u in P u X.
    void expand(std::vector<Vertex> p, std::vector<Vertex> x) {
        if (p.empty()) {
            if (x.empty()) {
                auto c = current;
                std::sort(c.begin(), c.end());
                out.push_back(std::move(c));
            }
            return;
        }
        Vertex pivot = p.front();
        std::size_t best = 0;
        bool first = true;
        for (const auto* set : {&p, &x})
            for (Vertex u : *set) {
                std::size_t k = restrict_to(p, u).size();
                if (first || k > best) {
                    pivot = u;
                    best = k;
                    first = false;
                }
            }
        std::vector<Vertex> candidates;
        auto pn = g.neighbours(pivot);
        std::set_difference(p.begin(), p.end(), pn.begin(), pn.end(), std::back_inserter(candidates));
        for (Vertex v : candidates) {
            current.push_back(v);
            expand(restrict_to(p, v), restrict_to(x, v));
            current.pop_back();
            p.erase(std::lower_bound(p.begin(), p.end(), v));
            x.insert(std::lower_bound(x.begin(), x.end(), v), v);
        }
    }
};

} // namespace detail

// All maximal cliques, each sorted, in lexicographic order.
inline std::vector<std::vector<Vertex>> maximal_cliques(const Graph& g, const Caps& caps = {}) {
    if (g.size() > caps.cliques) throw CapExceeded("clique enumeration vertices", g.size(), caps.cliques);
    std::vector<std::vector<Vertex>> out;
    detail::CliqueSearch search{g, out, {}};
    for (Vertex v = 0; v < g.size(); ++v) {
        std::vector<Vertex> p, x;
        for (Vertex u : g.neighbours(v)) (u > v ? p : x).push_back(u);
        search.current = {v};
        search.expand(std::move(p), std::move(x));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_clique(const Graph& g, std::span<const Vertex> vs) {
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (!g.adjacent(vs[i], vs[j])) return false;
    return true;
}

// Intersection array {b_0..b_{d-1}; c_1..c_d} of a distance-regular graph.
struct DistanceRegularity {
    bool distance_regular = false;
    std::vector<std::size_t> b;
    std::vector<std::size_t> c;
    // First vertex whose counts disagree with an earlier vertex at the same distance.
    std::optional<std::pair<Vertex, Vertex>> witness;
};

namespace detail {

inline DistanceRegularity distance_profile_from(const Graph& g, Vertex base) {
    auto dist = bfs_distances(g, base);
    std::uint32_t diam = *std::max_element(dist.begin(), dist.end());
    if (diam == unreachable) throw ConsistencyError("graph is disconnected");
    DistanceRegularity r;
    r.distance_regular = true;
    std::vector<std::optional<std::size_t>> bs(diam + 1), cs(diam + 1), as(diam + 1);
    std::vector<std::optional<Vertex>> first(diam + 1);
    for (Vertex v = 0; v < g.size(); ++v) {
        std::size_t i = dist[v], a = 0, b = 0, c = 0;
        for (Vertex u : g.neighbours(v)) {
            if (dist[u] + 1 == i) ++c;
            else if (dist[u] == i) ++a;
            else ++b;
        }
        if (!first[i]) {
            first[i] = v;
            bs[i] = b;
            cs[i] = c;
            as[i] = a;
        } else if (bs[i] != b || cs[i] != c || as[i] != a) {
            if (!r.witness) r.witness = std::make_pair(*first[i], v);
            r.distance_regular = false;
        }
    }
    if (r.distance_regular) {
        for (std::size_t i = 0; i < diam; ++i) r.b.push_back(*bs[i]);
        for (std::size_t i = 1; i <= diam; ++i) r.c.push_back(*cs[i]);
    }
    return r;
}

} // namespace detail

// Sphere counts from one base vertex; with exhaustive, every vertex must
// produce the same intersection array.
inline DistanceRegularity is_distance_regular(const Graph& g, Vertex base = 0, bool exhaustive = false) {
    auto r = detail::distance_profile_from(g, base);
    if (!r.distance_regular || !exhaustive) return r;
    for (Vertex v = 0; v < g.size(); ++v) {
        auto s = detail::distance_profile_from(g, v);
        if (!s.distance_regular || s.b != r.b || s.c != r.c) {
            s.distance_regular = false;
            if (!s.witness) s.witness = std::make_pair(base, v);
            return s;
        }
    }
    return r;
}

struct SrgParameters {
    std::size_t n, k, lambda, mu;
    bool operator==(const SrgParameters&) const = default;
};

inline std::optional<SrgParameters> strongly_regular_parameters(const Graph& g) {
    auto k = g.regular_degree();
    if (!k || g.size() < 2) return std::nullopt;
    std::optional<std::size_t> lambda, mu;
    for (Vertex v = 0; v < g.size(); ++v)
        for (Vertex u = v + 1; u < g.size(); ++u) {
            auto a = g.neighbours(v), b = g.neighbours(u);
            std::size_t common = 0;
            for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
                if (a[i] < b[j]) ++i;
                else if (b[j] < a[i]) ++j;
                else { ++common; ++i; ++j; }
            }
            auto& slot = g.adjacent(v, u) ? lambda : mu;
            if (!slot) slot = common;
            else if (*slot != common) return std::nullopt;
        }
    return SrgParameters{g.size(), *k, lambda.value_or(0), mu.value_or(0)};
}

// ---- graph6 -------------------------------------------------------------

namespace detail {

inline void graph6_size(std::string& out, std::size_t n) {
    if (n <= 62) {
        out += static_cast<char>(63 + n);
    } else if (n <= 258047) {
        out += '~';
        for (int shift = 12; shift >= 0; shift -= 6) out += static_cast<char>(63 + ((n >> shift) & 63));
    } else {
        out += "~~";
        for (int shift = 30; shift >= 0; shift -= 6) out += static_cast<char>(63 + ((n >> shift) & 63));
    }
}

} // namespace detail

// Standard graph6: size header, then the upper triangle column by column
// (x(0,1), x(0,2), x(1,2), ...) packed six bits per byte, offset by 63.
inline std::string to_graph6(const Graph& g) {
    if (g.edge_count() == 0) throw ValidationError("refusing to export an edgeless graph");
    std::string out;
    detail::graph6_size(out, g.size());
    int acc = 0, bits = 0;
    for (Vertex j = 1; j < g.size(); ++j)
        for (Vertex i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++bits == 6) {
                out += static_cast<char>(63 + acc);
                acc = bits = 0;
            }
        }
    if (bits) out += static_cast<char>(63 + (acc << (6 - bits)));
    return out;
}

inline Graph from_graph6(std::string_view s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
    if (s.substr(0, 10) == ">>graph6<<") s.remove_prefix(10);
    std::size_t pos = 0;
    auto take = [&]() -> int {
        if (pos >= s.size()) throw ParseError("graph6 string truncated");
        int c = static_cast<unsigned char>(s[pos++]) - 63;
        if (c < 0 || c > 63) throw ParseError("graph6 byte out of range");
        return c;
    };
    std::size_t n = 0;
    if (s.empty()) throw ParseError("empty graph6 string");
    if (s[0] != '~') {
        n = static_cast<std::size_t>(take());
    } else if (s.size() > 1 && s[1] == '~') {
        pos = 2;
        for (int k = 0; k < 6; ++k) n = (n << 6) | static_cast<std::size_t>(take());
    } else {
        pos = 1;
        for (int k = 0; k < 3; ++k) n = (n << 6) | static_cast<std::size_t>(take());
    }
    std::size_t total_bits = n * (n - (n ? 1 : 0)) / 2;
    std::size_t expected_bytes = (total_bits + 5) / 6;
    if (s.size() - pos != expected_bytes) throw ParseError("graph6 body has wrong length");
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::size_t bit = 0;
    int current = 0;
    for (Vertex j = 1; j < n; ++j)
        for (Vertex i = 0; i < j; ++i, ++bit) {
            if (bit % 6 == 0) current = take();
            if (current >> (5 - bit % 6) & 1) edges.emplace_back(i, j);
        }
    return Graph::from_edges(n, edges);
}

inline std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    for (auto [a, b] : g.edges()) out << a << ' ' << b << '\n';
    return out.str();
}

} // namespace diaglab
