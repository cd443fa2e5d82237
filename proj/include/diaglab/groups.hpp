#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "diaglab/caps.hpp"
#include "diaglab/error.hpp"

namespace diaglab {

using Element = std::uint32_t;

// A permutation of 0..n-1 stored as its image array.
using ElementMap = std::vector<Element>;

// A finite group given by its full multiplication table. Element 0 is the
// identity; every other index is an opaque label.
class GroupTable {
public:
    // Validates closure, identity, Latin rows/columns and (up to
    // caps.associativity) exhaustive associativity.
    static GroupTable from_table(std::size_t n, std::vector<Element> mul, std::string label,
                                 const Caps& caps = {}) {
        if (n == 0) throw ValidationError("group table must have at least one element");
        if (n > caps.group_order) throw CapExceeded("group order", n, caps.group_order);
        if (mul.size() != n * n) throw ValidationError("group table has wrong number of entries");
        for (Element e : mul)
            if (e >= n) throw ValidationError("group table entry out of range: " + std::to_string(e));
        for (Element g = 0; g < n; ++g) {
            if (mul[g] != g || mul[g * n] != g)
                throw ValidationError("element 0 is not the identity (row/column " +
                                      std::to_string(g) + ")");
        }
        std::vector<Element> inv(n, n);
        std::vector<char> seen(n);
        for (Element g = 0; g < n; ++g) {
            std::fill(seen.begin(), seen.end(), 0);
            for (Element h = 0; h < n; ++h) {
                Element p = mul[g * n + h];
                if (seen[p]) throw ValidationError("row " + std::to_string(g) + " repeats an entry");
                seen[p] = 1;
                if (p == 0) inv[g] = h;
            }
            std::fill(seen.begin(), seen.end(), 0);
            for (Element h = 0; h < n; ++h) {
                Element p = mul[h * n + g];
                if (seen[p]) throw ValidationError("column " + std::to_string(g) + " repeats an entry");
                seen[p] = 1;
            }
        }
        bool checked = n <= caps.associativity;
        if (checked) {
            for (Element a = 0; a < n; ++a)
                for (Element b = 0; b < n; ++b) {
                    Element ab = mul[a * n + b];
                    for (Element c = 0; c < n; ++c)
                        if (mul[ab * n + c] != mul[a * n + mul[b * n + c]])
                            throw ValidationError("table is not associative at (" + std::to_string(a) +
                                                  "," + std::to_string(b) + "," + std::to_string(c) + ")");
                }
        }
        for (Element g = 0; g < n; ++g)
            if (mul[inv[g] * n + g] != 0) throw ValidationError("left and right inverses differ");
        GroupTable G;
        G.n_ = n;
        G.mul_ = std::move(mul);
        G.inv_ = std::move(inv);
        G.label_ = std::move(label);
        G.associativity_checked_ = checked;
        return G;
    }

    std::size_t order() const noexcept { return n_; }
    static constexpr Element identity() noexcept { return 0; }
    Element mul(Element a, Element b) const { return mul_[a * n_ + b]; }
    Element inv(Element a) const { return inv_[a]; }
    const std::string& label() const noexcept { return label_; }
    // False when the table was too large for the exhaustive O(n^3) scan.
    bool associativity_checked() const noexcept { return associativity_checked_; }
    const std::vector<Element>& table() const noexcept { return mul_; }

    Element power(Element g, std::size_t k) const {
        Element r = 0;
        for (std::size_t i = 0; i < k; ++i) r = mul(r, g);
        return r;
    }

    bool operator==(const GroupTable& o) const { return n_ == o.n_ && mul_ == o.mul_; }

private:
    GroupTable() = default;

    std::size_t n_ = 0;
    std::vector<Element> mul_;
    std::vector<Element> inv_;
    std::string label_;
    bool associativity_checked_ = true;
};

namespace detail {

// Builds a group from a set of permutations closed under composition, with
// (g*h)[i] = g[h[i]]. The identity must be the first entry.
inline GroupTable from_permutations(const std::vector<std::vector<int>>& perms, std::string label) {
    std::size_t n = perms.size();
    std::map<std::vector<int>, Element> index;
    for (std::size_t i = 0; i < n; ++i) index.emplace(perms[i], static_cast<Element>(i));
    std::vector<Element> mul(n * n);
    std::vector<int> comp(perms.empty() ? 0 : perms[0].size());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = perms[a][perms[b][i]];
            mul[a * n + b] = index.at(comp);
        }
    return GroupTable::from_table(n, std::move(mul), std::move(label));
}

inline bool is_even(const std::vector<int>& p) {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inversions;
    return inversions % 2 == 0;
}

inline std::vector<std::vector<int>> all_permutations(int n, bool even_only) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        if (!even_only || is_even(p)) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

} // namespace detail

inline GroupTable cyclic_group(std::size_t n) {
    if (n == 0) throw ValidationError("cyclic group order must be >= 1");
    std::vector<Element> mul(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) mul[a * n + b] = static_cast<Element>((a + b) % n);
    return GroupTable::from_table(n, std::move(mul), "C" + std::to_string(n));
}

// Order 2n; element r^k s^e has index k + n*e.
inline GroupTable dihedral_group(std::size_t n) {
    if (n < 3) throw ValidationError("dihedral group needs n >= 3");
    std::size_t order = 2 * n;
    std::vector<Element> mul(order * order);
    for (std::size_t x = 0; x < order; ++x)
        for (std::size_t y = 0; y < order; ++y) {
            std::size_t a = x % n, e = x / n, b = y % n, f = y / n;
            std::size_t k = e == 0 ? (a + b) % n : (a + n - b) % n;
            mul[x * order + y] = static_cast<Element>(k + n * ((e + f) % 2));
        }
    return GroupTable::from_table(order, std::move(mul), "D" + std::to_string(n));
}

inline GroupTable symmetric_group(int n) {
    if (n < 1 || n > 5) throw ValidationError("symmetric group supported for 1 <= n <= 5");
    return detail::from_permutations(detail::all_permutations(n, false), "S" + std::to_string(n));
}

inline GroupTable alternating_group(int n) {
    if (n < 1 || n > 5) throw ValidationError("alternating group supported for 1 <= n <= 5");
    return detail::from_permutations(detail::all_permutations(n, true), "A" + std::to_string(n));
}

// Indices: 0=1, 1=-1, 2=i, 3=-i, 4=j, 5=-j, 6=k, 7=-k.
inline GroupTable quaternion_group() {
    // unit products among {1,i,j,k}: sign and result unit
    static constexpr int unit_sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    static constexpr int unit_prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    std::vector<Element> mul(64);
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            int ux = x / 2, uy = y / 2;
            int sign = (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1) * unit_sign[ux][uy];
            mul[static_cast<std::size_t>(x * 8 + y)] =
                static_cast<Element>(2 * unit_prod[ux][uy] + (sign < 0 ? 1 : 0));
        }
    return GroupTable::from_table(8, std::move(mul), "Q8");
}

// Pair (a, b) has index a + |A|*b, so (0,0) stays the identity.
inline GroupTable direct_product(const GroupTable& A, const GroupTable& B, const Caps& caps = {}) {
    std::size_t na = A.order(), nb = B.order(), n = na * nb;
    if (n > caps.group_order) throw CapExceeded("direct product order", n, caps.group_order);
    std::vector<Element> mul(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            Element a = A.mul(static_cast<Element>(x % na), static_cast<Element>(y % na));
            Element b = B.mul(static_cast<Element>(x / na), static_cast<Element>(y / na));
            mul[x * n + y] = static_cast<Element>(a + na * b);
        }
    return GroupTable::from_table(n, std::move(mul), A.label() + "x" + B.label(), caps);
}

// Format: first token n, then n*n indices row by row (row g, column h = g*h).
inline GroupTable load_group_table(std::istream& in, std::string label, const Caps& caps = {}) {
    long long n = 0;
    if (!(in >> n) || n <= 0) throw ParseError("table file: expected a positive order on line 1");
    if (static_cast<std::size_t>(n) > caps.group_order)
        throw CapExceeded("group order", static_cast<std::size_t>(n), caps.group_order);
    std::size_t order = static_cast<std::size_t>(n);
    std::vector<Element> mul(order * order);
    for (auto& e : mul) {
        long long v = 0;
        if (!(in >> v)) throw ParseError("table file: expected " + std::to_string(order * order) + " entries");
        if (v < 0 || v >= n) throw ValidationError("table file: entry out of range: " + std::to_string(v));
        e = static_cast<Element>(v);
    }
    std::string extra;
    if (in >> extra) throw ParseError("table file: trailing data '" + extra + "'");
    return GroupTable::from_table(order, std::move(mul), std::move(label), caps);
}

inline void write_group_table(std::ostream& out, const GroupTable& G) {
    std::size_t n = G.order();
    out << n << '\n';
    for (Element g = 0; g < n; ++g) {
        for (Element h = 0; h < n; ++h) out << (h ? " " : "") << G.mul(g, h);
        out << '\n';
    }
}

namespace detail {

inline std::size_t parse_count(std::string_view digits, std::string_view whole) {
    if (digits.empty() || digits.size() > 6 ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ParseError("bad group factor '" + std::string(whole) + "'");
    return static_cast<std::size_t>(std::stoul(std::string(digits)));
}

inline GroupTable parse_factor(std::string_view f, const Caps& caps) {
    if (f.empty()) throw ParseError("empty group factor");
    if (f == "Q8") return quaternion_group();
    if (f == "V4") {
        GroupTable v = direct_product(cyclic_group(2), cyclic_group(2), caps);
        return GroupTable::from_table(4, v.table(), "V4", caps);
    }
    char kind = f[0];
    std::size_t n = parse_count(f.substr(1), f);
    if (n > caps.group_order) throw CapExceeded("group order", n, caps.group_order);
    switch (kind) {
    case 'C':
        if (n < 1) throw ParseError("Cn needs n >= 1");
        return cyclic_group(n);
    case 'D':
        if (n < 3) throw ParseError("Dn needs n >= 3");
        return dihedral_group(n);
    case 'S':
        if (n < 1 || n > 5) throw ParseError("Sn needs 1 <= n <= 5");
        return symmetric_group(static_cast<int>(n));
    case 'A':
        if (n < 1 || n > 5) throw ParseError("An needs 1 <= n <= 5");
        return alternating_group(static_cast<int>(n));
    default:
        throw ParseError("unknown group factor '" + std::string(f) + "'");
    }
}

} // namespace detail

// Group DSL: factors Cn, Dn, Sn, An, Q8, V4 joined by a left-associative
// infix 'x'; or a whole spec "file:<path>" naming a table file.
inline GroupTable parse_group_spec(std::string_view spec, const Caps& caps = {}) {
    constexpr std::string_view file_prefix = "file:";
    if (spec.substr(0, file_prefix.size()) == file_prefix) {
        std::string path(spec.substr(file_prefix.size()));
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open group table file '" + path + "'");
        return load_group_table(in, std::string(spec), caps);
    }
    if (spec.empty()) throw ParseError("empty group spec");
    std::optional<GroupTable> acc;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = spec.find('x', start);
        std::string_view factor = spec.substr(start, pos == std::string_view::npos ? spec.npos : pos - start);
        GroupTable g = detail::parse_factor(factor, caps);
        acc = acc ? direct_product(*acc, g, caps) : std::move(g);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return GroupTable::from_table(acc->order(), acc->table(), std::string(spec), caps);
}

inline std::vector<std::size_t> element_orders(const GroupTable& G) {
    std::vector<std::size_t> orders(G.order());
    for (Element g = 0; g < G.order(); ++g) {
        std::size_t k = 1;
        for (Element x = g; x != 0; x = G.mul(x, g)) ++k;
        orders[g] = k;
    }
    return orders;
}

inline bool is_abelian(const GroupTable& G) {
    for (Element a = 0; a < G.order(); ++a)
        for (Element b = a + 1; b < G.order(); ++b)
            if (G.mul(a, b) != G.mul(b, a)) return false;
    return true;
}

// The prime p when G is a nontrivial elementary abelian p-group.
inline std::optional<std::size_t> is_elementary_abelian(const GroupTable& G) {
    if (G.order() < 2 || !is_abelian(G)) return std::nullopt;
    auto orders = element_orders(G);
    std::size_t p = orders[1];
    for (std::size_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return std::nullopt;
    for (Element g = 1; g < G.order(); ++g)
        if (orders[g] != p) return std::nullopt;
    return p;
}

// True iff the Sylow 2-subgroup is cyclic and nontrivial.
inline bool sylow2_nontrivial_cyclic(const GroupTable& G) {
    std::size_t two_part = 1, n = G.order();
    while (n % 2 == 0) {
        n /= 2;
        two_part *= 2;
    }
    if (two_part == 1) return false;
    auto orders = element_orders(G);
    return std::any_of(orders.begin(), orders.end(), [&](std::size_t o) { return o == two_part; });
}

// Membership mask of the subgroup generated by gens.
inline std::vector<char> generated_subgroup(const GroupTable& G, const std::vector<Element>& gens) {
    std::vector<char> in(G.order(), 0);
    std::vector<Element> queue{0};
    in[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (Element s : gens) {
            Element y = G.mul(queue[head], s);
            if (!in[y]) {
                in[y] = 1;
                queue.push_back(y);
            }
        }
    return in;
}

// Greedy generating sequence: repeatedly add an element of largest order
// outside the current subgroup (lowest index on ties).
inline std::vector<Element> generating_sequence(const GroupTable& G) {
    auto orders = element_orders(G);
    std::vector<Element> gens;
    auto in = generated_subgroup(G, gens);
    while (true) {
        std::optional<Element> best;
        for (Element g = 1; g < G.order(); ++g)
            if (!in[g] && (!best || orders[g] > orders[*best])) best = g;
        if (!best) break;
        gens.push_back(*best);
        in = generated_subgroup(G, gens);
    }
    return gens;
}

// All automorphisms as element maps. Candidate images of the greedy
// generators are restricted to elements of equal order; each candidate is
// extended along right multiplication by generators and kept when
// consistent and bijective.
inline std::vector<ElementMap> automorphism_group(const GroupTable& G, const Caps& caps = {}) {
    std::size_t n = G.order();
    if (n > caps.automorphisms) throw CapExceeded("automorphism search |G|", n, caps.automorphisms);
    auto gens = generating_sequence(G);
    auto orders = element_orders(G);
    std::vector<std::vector<Element>> candidates;
    for (Element g : gens) {
        std::vector<Element> c;
        for (Element h = 1; h < n; ++h)
            if (orders[h] == orders[g]) c.push_back(h);
        candidates.push_back(std::move(c));
    }

    std::vector<ElementMap> result;
    std::vector<Element> images(gens.size());
    constexpr Element unset = ~Element{0};
    auto try_extend = [&]() {
        ElementMap phi(n, unset);
        phi[0] = 0;
        std::vector<Element> queue{0};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            Element x = queue[head];
            for (std::size_t i = 0; i < gens.size(); ++i) {
                Element y = G.mul(x, gens[i]);
                Element img = G.mul(phi[x], images[i]);
                if (phi[y] == unset) {
                    phi[y] = img;
                    queue.push_back(y);
                } else if (phi[y] != img) {
                    return;
                }
            }
        }
        std::vector<char> hit(n, 0);
        for (Element v : phi) {
            if (hit[v]) return;
            hit[v] = 1;
        }
        result.push_back(std::move(phi));
    };
    auto recurse = [&](auto&& self, std::size_t depth) -> void {
        if (depth == gens.size()) {
            try_extend();
            return;
        }
        for (Element h : candidates[depth]) {
            images[depth] = h;
            self(self, depth + 1);
        }
    };
    recurse(recurse, 0);
    std::sort(result.begin(), result.end());
    return result;
}

// Greedy generating set of a finite permutation group given by all its elements.
inline std::vector<ElementMap> generating_subset(const std::vector<ElementMap>& elements) {
    std::vector<ElementMap> gens;
    if (elements.empty()) return gens;
    std::size_t n = elements.front().size();
    ElementMap id(n);
    std::iota(id.begin(), id.end(), Element{0});
    std::set<ElementMap> closure{id};
    for (const auto& g : elements) {
        if (closure.count(g)) continue;
        gens.push_back(g);
        std::vector<ElementMap> queue(closure.begin(), closure.end());
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (const auto& s : gens) {
                ElementMap y(n);
                for (std::size_t i = 0; i < n; ++i) y[i] = s[queue[head][i]];
                if (closure.insert(y).second) queue.push_back(std::move(y));
            }
    }
    return gens;
}

inline std::vector<char> normal_closure(const GroupTable& G, Element g) {
    std::vector<Element> conj;
    for (Element x = 0; x < G.order(); ++x) conj.push_back(G.mul(G.mul(G.inv(x), g), x));
    return generated_subgroup(G, conj);
}

inline bool is_simple_nonabelian(const GroupTable& G, const Caps& caps = {}) {
    if (G.order() > caps.simplicity) throw CapExceeded("simplicity check |G|", G.order(), caps.simplicity);
    if (is_abelian(G)) return false;
    for (Element g = 1; g < G.order(); ++g) {
        auto c = normal_closure(G, g);
        if (std::find(c.begin(), c.end(), 0) != c.end()) return false;
    }
    return true;
}

// Smallest characteristic subgroup containing g: generated by the Aut(G)-orbit of g.
inline std::vector<char> characteristic_closure(const GroupTable& G, const std::vector<ElementMap>& aut,
                                                Element g) {
    std::vector<Element> orbit;
    for (const auto& a : aut) orbit.push_back(a[g]);
    return generated_subgroup(G, orbit);
}

// Characteristically simple: no characteristic subgroups besides 1 and G.
inline bool is_characteristically_simple(const GroupTable& G, const std::vector<ElementMap>& aut) {
    if (G.order() < 2) return false;
    for (Element g = 1; g < G.order(); ++g) {
        auto c = characteristic_closure(G, aut, g);
        if (std::find(c.begin(), c.end(), 0) != c.end()) return false;
    }
    return true;
}

} // namespace diaglab
