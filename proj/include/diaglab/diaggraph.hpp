#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "diaglab/caps.hpp"
#include "diaglab/error.hpp"
#include "diaglab/graph.hpp"
#include "diaglab/groups.hpp"
#include "diaglab/semilattice.hpp"

namespace diaglab {

// The diagonal graph on G^m: two tuples are adjacent when they share a part
// of one of Q_0..Q_m. Each arc carries the index of that partition.
class DiagGraph {
public:
    DiagGraph(GroupTable group, VertexCodec codec, Graph graph, std::vector<std::uint8_t> arc_tags)
        : group_(std::move(group)), codec_(std::move(codec)), graph_(std::move(graph)), tags_(std::move(arc_tags)) {}

    const GroupTable& group() const noexcept { return group_; }
    const VertexCodec& codec() const noexcept { return codec_; }
    const Graph& graph() const noexcept { return graph_; }
    std::size_t q() const noexcept { return codec_.q(); }
    std::size_t m() const noexcept { return codec_.m(); }
    std::size_t size() const noexcept { return graph_.size(); }
    // Q_0 and Q_1 coincide when m = 1, giving K_q.
    std::size_t valency() const noexcept { return (m() == 1 ? 1 : m() + 1) * (q() - 1); }

    // Which Q_i contains the edge {v, u}.
    std::uint8_t tag(Vertex v, Vertex u) const {
        auto arc = graph_.arc_index(v, u);
        if (!arc) throw ValidationError("not an edge");
        return tags_[*arc];
    }

    std::string tuple_label(Vertex v) const {
        auto t = codec_.decode(v);
        std::string s = "(";
        for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
        return s + ")";
    }

private:
    GroupTable group_;
    VertexCodec codec_;
    Graph graph_;
    std::vector<std::uint8_t> tags_;
};

namespace detail {

inline void require_nontrivial(const GroupTable& G, std::size_t m) {
    if (G.order() < 2) throw ValidationError("group order must be >= 2");
    if (m < 1) throw ValidationError("dimension must be >= 1");
}

} // namespace detail

// Partition-based construction. For m = 1 both partitions are U and the
// result is the complete graph K_q (all arcs tagged 0).
inline DiagGraph build_graph(const GroupTable& G, std::size_t m, const Caps& caps = {}) {
    detail::require_nontrivial(G, m);
    VertexCodec codec(G.order(), m, caps);
    std::size_t n = codec.size();
    if (m == 1) {
        Graph k = Graph::complete(n);
        std::vector<std::uint8_t> tags(k.arc_count(), 0);
        return DiagGraph(G, std::move(codec), std::move(k), std::move(tags));
    }
    std::vector<std::vector<std::pair<Vertex, std::uint8_t>>> arcs(n);
    for (std::size_t i = 0; i <= m; ++i) {
        for (const auto& block : minimal_partition(G, m, i, caps).blocks())
            for (Vertex a : block)
                for (Vertex b : block)
                    if (a != b) arcs[a].emplace_back(b, static_cast<std::uint8_t>(i));
    }
    std::vector<std::vector<Vertex>> adj(n);
    for (Vertex v = 0; v < n; ++v) {
        std::sort(arcs[v].begin(), arcs[v].end());
        for (std::size_t k = 1; k < arcs[v].size(); ++k)
            if (arcs[v][k].first == arcs[v][k - 1].first)
                throw ConsistencyError("two minimal partitions share an edge at vertex " + std::to_string(v));
        for (auto [u, t] : arcs[v]) adj[v].push_back(u);
    }
    Graph graph(std::move(adj));
    std::vector<std::uint8_t> tags;
    tags.reserve(graph.arc_count());
    for (Vertex v = 0; v < n; ++v)
        for (auto [u, t] : arcs[v]) tags.push_back(t);
    return DiagGraph(G, std::move(codec), std::move(graph), std::move(tags));
}

// Identity-free, inverse-closed subset S of G^m with u ~ v iff v u^{-1} in S.
struct ConnectionSet {
    std::vector<Tuple> elements;
};

inline ConnectionSet connection_set(const GroupTable& G, std::size_t m, const Caps& caps = {}) {
    detail::require_nontrivial(G, m);
    VertexCodec codec(G.order(), m, caps);  // cap check only
    ConnectionSet s;
    for (std::size_t i = 0; i < m; ++i)
        for (Element x = 1; x < G.order(); ++x) {
            Tuple t(m, 0);
            t[i] = x;
            s.elements.push_back(std::move(t));
        }
    for (Element x = 1; x < G.order(); ++x) s.elements.emplace_back(m, x);
    std::sort(s.elements.begin(), s.elements.end());
    s.elements.erase(std::unique(s.elements.begin(), s.elements.end()), s.elements.end());
    return s;
}

inline bool connection_set_is_valid(const GroupTable& G, const ConnectionSet& s) {
    std::set<Tuple> set(s.elements.begin(), s.elements.end());
    for (const auto& t : s.elements) {
        if (std::all_of(t.begin(), t.end(), [](Element e) { return e == 0; })) return false;
        Tuple inv(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) inv[i] = G.inv(t[i]);
        if (!set.count(inv)) return false;
    }
    return true;
}

// Cayley graph of G^m: v is joined to s*v (componentwise) for every s in S.
inline Graph cayley_graph(const GroupTable& G, std::size_t m, const ConnectionSet& s, const Caps& caps = {}) {
    VertexCodec codec(G.order(), m, caps);
    std::vector<std::vector<Vertex>> adj(codec.size());
    Tuple w(m);
    for (Vertex v = 0; v < codec.size(); ++v) {
        Tuple t = codec.decode(v);
        for (const auto& c : s.elements) {
            for (std::size_t i = 0; i < m; ++i) w[i] = G.mul(c[i], t[i]);
            adj[v].push_back(codec.encode(w));
        }
    }
    return Graph(std::move(adj));
}

inline std::size_t diameter_formula(std::size_t q, std::size_t m) {
    return m + 1 - (m + 1 + q - 1) / q;
}

struct DiameterReport {
    std::size_t bfs = 0;
    std::size_t formula = 0;
    bool all_pairs = false;
    bool matches() const { return bfs == formula; }
};

// all_pairs=false uses vertex 0 only (the graph is a Cayley graph).
inline DiameterReport diameter(const DiagGraph& g, bool all_pairs = false) {
    return {graph_diameter(g.graph(), all_pairs), diameter_formula(g.q(), g.m()), all_pairs};
}

// ---- cliques ------------------------------------------------------------

enum class Exception { none, complete_k4, multipartite_k333, complement_rook, complement_shrikhande };

inline const char* exception_name(Exception e) {
    switch (e) {
    case Exception::complete_k4: return "K4";
    case Exception::multipartite_k333: return "K3,3,3";
    case Exception::complement_rook: return "complement of L2(4)";
    case Exception::complement_shrikhande: return "complement of Shrikhande graph";
    default: return "none";
    }
}

// The four small dimension-2 cases whose clique structure is special.
inline Exception exceptional_case(const GroupTable& G, std::size_t m) {
    if (m != 2) return Exception::none;
    switch (G.order()) {
    case 2: return Exception::complete_k4;
    case 3: return Exception::multipartite_k333;
    case 4: return is_elementary_abelian(G) ? Exception::complement_rook : Exception::complement_shrikhande;
    default: return Exception::none;
    }
}

// Structural description check for an exceptional graph.
inline bool matches_exception_description(const Graph& g, Exception e, const Caps& caps = {}) {
    switch (e) {
    case Exception::complete_k4:
        return g.size() == 4 && g.edge_count() == 6;
    case Exception::multipartite_k333: {
        if (g.size() != 9) return false;
        auto c = maximal_cliques(g.complement(), caps);
        if (c.size() != 3) return false;
        std::vector<Vertex> all;
        for (auto& k : c) {
            if (k.size() != 3) return false;
            all.insert(all.end(), k.begin(), k.end());
        }
        std::sort(all.begin(), all.end());
        return std::adjacent_find(all.begin(), all.end()) == all.end() && all.size() == 9;
    }
    case Exception::complement_rook: {
        // complement must be the 4x4 rook's graph: 8 maximal 4-cliques in two
        // parallel classes, cliques from different classes meeting once
        Graph c = g.complement();
        if (c.size() != 16 || c.regular_degree() != std::optional<std::size_t>{6}) return false;
        auto cl = maximal_cliques(c, caps);
        if (cl.size() != 8) return false;
        std::vector<int> cls(8, -1);
        cls[0] = 0;
        for (std::size_t i = 0; i < 8; ++i) {
            if (cl[i].size() != 4) return false;
            for (std::size_t j = 0; j < 8; ++j) {
                if (i == j) continue;
                std::vector<Vertex> meet;
                std::set_intersection(cl[i].begin(), cl[i].end(), cl[j].begin(), cl[j].end(), std::back_inserter(meet));
                if (meet.size() > 1) return false;
                if (cls[i] >= 0 && cls[j] < 0) cls[j] = meet.empty() ? cls[i] : 1 - cls[i];
            }
        }
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = i + 1; j < 8; ++j) {
                std::vector<Vertex> meet;
                std::set_intersection(cl[i].begin(), cl[i].end(), cl[j].begin(), cl[j].end(), std::back_inserter(meet));
                if ((cls[i] == cls[j]) != meet.empty()) return false;
            }
        return std::count(cls.begin(), cls.end(), 0) == 4;
    }
    case Exception::complement_shrikhande: {
        // SRG(16,6,2,2) graphs are L2(4) and the Shrikhande graph; the latter has clique number 3
        Graph c = g.complement();
        auto p = strongly_regular_parameters(c);
        if (!p || !(*p == SrgParameters{16, 6, 2, 2})) return false;
        std::size_t omega = 0;
        for (auto& k : maximal_cliques(c, caps)) omega = std::max(omega, k.size());
        return omega == 3;
    }
    default:
        return false;
    }
}

struct CliqueReport {
    std::vector<std::vector<Vertex>> maximal;
    std::size_t clique_number = 0;
    std::size_t maximum_count = 0;
    Exception exception = Exception::none;
    bool exception_description_ok = true;
    // Maximum cliques are exactly the parts of Q_0..Q_m.
    bool maximum_are_parts = false;
    // Every maximal clique is a part of some Q_i.
    bool all_maximal_are_parts = false;
};

inline std::vector<std::vector<Vertex>> minimal_partition_parts(const DiagGraph& g, const Caps& caps = {}) {
    std::vector<std::vector<Vertex>> parts;
    for (std::size_t i = 0; i <= g.m(); ++i)
        for (auto& b : minimal_partition(g.group(), g.m(), i, caps).blocks()) parts.push_back(std::move(b));
    std::sort(parts.begin(), parts.end());
    parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
    return parts;
}

inline CliqueReport analyse_cliques(const DiagGraph& g, const Caps& caps = {}) {
    CliqueReport r;
    r.maximal = maximal_cliques(g.graph(), caps);
    for (auto& c : r.maximal) r.clique_number = std::max(r.clique_number, c.size());
    std::vector<std::vector<Vertex>> maximum;
    for (auto& c : r.maximal)
        if (c.size() == r.clique_number) maximum.push_back(c);
    r.maximum_count = maximum.size();
    auto parts = minimal_partition_parts(g, caps);
    r.maximum_are_parts = maximum == parts;
    r.all_maximal_are_parts = r.maximal == parts;
    r.exception = exceptional_case(g.group(), g.m());
    if (r.exception != Exception::none) r.exception_description_ok = matches_exception_description(g.graph(), r.exception, caps);
    return r;
}

// The parts of Q_1: q^{m-1} disjoint q-cliques covering every vertex.
inline std::vector<std::vector<Vertex>> clique_cover(const DiagGraph& g, const Caps& caps = {}) {
    return minimal_partition(g.group(), g.m(), 1, caps).blocks();
}

inline bool validate_clique_cover(const Graph& g, const std::vector<std::vector<Vertex>>& cover) {
    std::vector<char> seen(g.size(), 0);
    for (const auto& c : cover) {
        if (!is_clique(g, c)) return false;
        for (Vertex v : c) {
            if (v >= g.size() || seen[v]) return false;
            seen[v] = 1;
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](char s) { return s; });
}

// ---- export ------------------------------------------------------------

inline std::string to_dot(const DiagGraph& g) {
    std::ostringstream out;
    out << "graph diagonal {\n";
    for (Vertex v = 0; v < g.size(); ++v) out << "  " << v << " [label=\"" << g.tuple_label(v) << "\"];\n";
    for (auto [a, b] : g.graph().edges()) out << "  " << a << " -- " << b << " [partition=" << int(g.tag(a, b)) << "];\n";
    out << "}\n";
    return out.str();
}

enum class ExportFormat { graph6, dot, edgelist };

inline ExportFormat parse_export_format(const std::string& s) {
    if (s == "graph6") return ExportFormat::graph6;
    if (s == "dot") return ExportFormat::dot;
    if (s == "edgelist") return ExportFormat::edgelist;
    throw ParseError("unknown graph format '" + s + "' (graph6, dot, edgelist)");
}

inline std::string export_graph(const DiagGraph& g, ExportFormat f) {
    switch (f) {
    case ExportFormat::graph6: return to_graph6(g.graph()) + "\n";
    case ExportFormat::dot: return to_dot(g);
    case ExportFormat::edgelist: return to_edge_list(g.graph());
    }
    return {};
}

} // namespace diaglab
