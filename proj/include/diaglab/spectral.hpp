#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "diaglab/diaggraph.hpp"
#include "diaglab/error.hpp"
#include "diaglab/partitions.hpp"
#include "diaglab/semilattice.hpp"

namespace diaglab {

using Rational = boost::multiprecision::cpp_rational;

inline Integer binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    Integer r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline Integer ipow(const Integer& base, std::size_t e) {
    Integer r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= base;
    return r;
}

enum class SpectrumSource { closed_form, trace_moments };

inline const char* source_name(SpectrumSource s) {
    return s == SpectrumSource::closed_form ? "closed_form" : "trace_moments";
}

struct SpectrumReport {
    std::size_t q = 0, m = 0;
    std::vector<std::pair<long long, Integer>> entries;  // ascending eigenvalue, multiplicity > 0
    SpectrumSource source = SpectrumSource::closed_form;

    Integer multiplicity(long long eigenvalue) const {
        for (auto& [l, mult] : entries)
            if (l == eigenvalue) return mult;
        return 0;
    }

    bool same_spectrum(const SpectrumReport& o) const { return q == o.q && m == o.m && entries == o.entries; }
};

// Candidate eigenvalues -(m+1) + kq for k = 0..m+1.
inline std::vector<long long> candidate_eigenvalues(std::size_t q, std::size_t m) {
    std::vector<long long> c;
    for (std::size_t k = 0; k <= m + 1; ++k)
        c.push_back(-static_cast<long long>(m + 1) + static_cast<long long>(k * q));
    return c;
}

// Dimension of the stratum belonging exactly to a partition of corank s:
// (q-1)((q-1)^s - (-1)^s) / q.
inline Integer stratum_dimension(std::size_t q, std::size_t s) {
    if (q < 2) throw ValidationError("stratum dimension needs q >= 2");
    Integer qm1 = q - 1;
    Integer sign = s % 2 ? -1 : 1;
    Integer num = qm1 * (ipow(qm1, s) - sign);
    if (num % q != 0) throw ConsistencyError("stratum dimension is not an integer");
    return num / q;
}

inline SpectrumReport spectrum_closed_form(std::size_t q, std::size_t m) {
    if (q < 2) throw ValidationError("spectrum needs q >= 2");
    if (m < 2) throw ValidationError("spectrum formula needs m >= 2");
    SpectrumReport r{q, m, {}, SpectrumSource::closed_form};
    auto lambda = candidate_eigenvalues(q, m);
    for (std::size_t k = 0; k < m; ++k) {
        Integer mult = binomial(m + 1, k) * stratum_dimension(q, m - k);
        if (mult != 0) r.entries.emplace_back(lambda[k], mult);
    }
    r.entries.emplace_back(lambda[m + 1], 1);
    std::sort(r.entries.begin(), r.entries.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return r;
}

// Closed walks of length 0..max_len: N * (A^j)_{00}, or the full trace when paranoid.
inline std::vector<Integer> trace_moments(const Graph& g, std::size_t max_len, bool paranoid = false) {
    std::vector<Integer> traces(max_len + 1, 0);
    std::size_t n = g.size();
    std::vector<Integer> x(n), y(n);
    std::size_t sources = paranoid ? n : 1;
    for (Vertex s = 0; s < sources; ++s) {
        std::fill(x.begin(), x.end(), 0);
        x[s] = 1;
        for (std::size_t j = 0; j <= max_len; ++j) {
            traces[j] += x[s];
            if (j == max_len) break;
            for (Vertex v = 0; v < n; ++v) {
                Integer acc = 0;
                for (Vertex u : g.neighbours(v)) acc += x[u];
                y[v] = std::move(acc);
            }
            std::swap(x, y);
        }
    }
    if (!paranoid)
        for (auto& t : traces) t *= n;
    return traces;
}

// Solves sum_k mult_k * lambda_k^j = tr(A^j), j = 0..m+1, exactly over the
// m+2 candidates. Throws ConsistencyError when a multiplicity is negative
// or fractional.
inline SpectrumReport spectrum_trace_moments(const DiagGraph& g, bool paranoid = false) {
    std::size_t q = g.q(), m = g.m();
    if (m < 2) throw ValidationError("spectrum verification needs m >= 2");
    auto lambda = candidate_eigenvalues(q, m);
    std::size_t k = lambda.size();
    auto traces = trace_moments(g.graph(), k - 1, paranoid);

    std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k + 1));
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t c = 0; c < k; ++c) a[j][c] = Rational(ipow(Integer(lambda[c]), j));
        a[j][k] = Rational(traces[j]);
    }
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        while (piv < k && a[piv][col] == 0) ++piv;
        if (piv == k) throw ConsistencyError("singular Vandermonde system");
        std::swap(a[col], a[piv]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col] / a[col][col];
            for (std::size_t c = col; c <= k; ++c) a[r][c] -= f * a[col][c];
        }
    }
    SpectrumReport r{q, m, {}, SpectrumSource::trace_moments};
    for (std::size_t c = 0; c < k; ++c) {
        Rational mult = a[c][k] / a[c][c];
        if (denominator(mult) != 1)
            throw ConsistencyError("non-integral multiplicity for eigenvalue " + std::to_string(lambda[c]));
        if (mult < 0) throw ConsistencyError("negative multiplicity for eigenvalue " + std::to_string(lambda[c]));
        if (mult != 0) r.entries.emplace_back(lambda[c], numerator(mult));
    }
    return r;
}

// Sum of multiplicities is N, trace 0, and tr(A^2) = N * valency.
inline bool moment_identities_hold(const SpectrumReport& r) {
    Integer n = ipow(Integer(r.q), r.m), s0 = 0, s1 = 0, s2 = 0;
    for (auto& [l, mult] : r.entries) {
        s0 += mult;
        s1 += mult * l;
        s2 += mult * l * l;
    }
    return s0 == n && s1 == 0 && s2 == n * (r.m + 1) * (r.q - 1);
}

struct StratumDimensions {
    std::size_t q = 0, m = 0;
    std::vector<Integer> by_corank;  // formula value for corank 0..m; the top's own stratum is 1
};

inline StratumDimensions stratum_dimensions(std::size_t q, std::size_t m) {
    StratumDimensions d{q, m, {}};
    for (std::size_t s = 0; s <= m; ++s) d.by_corank.push_back(stratum_dimension(q, s));
    return d;
}

// Chromatic polynomial of the cycle C_len at q: (q-1)^len + (-1)^len (q-1).
inline Integer cycle_chromatic_polynomial(std::size_t len, std::size_t q) {
    Integer qm1 = Integer(q) - 1;
    return ipow(qm1, len) + (len % 2 ? -qm1 : qm1);
}

struct StratumIdentityReport {
    bool interval_sums = true;   // q^s = 1 + sum_i C(s+1,i) n(s-i)
    bool multiplicities = true;  // closed-form multiplicity(k) = C(m+1,k) n(m-k)
    bool ok() const { return interval_sums && multiplicities; }
};

inline StratumIdentityReport verify_stratum_identity(std::size_t q, std::size_t m) {
    StratumIdentityReport r;
    for (std::size_t s = 0; s <= m; ++s) {
        Integer sum = 1;
        for (std::size_t i = 0; i < s; ++i) sum += binomial(s + 1, i) * stratum_dimension(q, s - i);
        if (sum != ipow(Integer(q), s)) r.interval_sums = false;
    }
    if (m >= 2) {
        auto spec = spectrum_closed_form(q, m);
        auto lambda = candidate_eigenvalues(q, m);
        for (std::size_t k = 0; k < m; ++k)
            if (spec.multiplicity(lambda[k]) != binomial(m + 1, k) * stratum_dimension(q, m - k))
                r.multiplicities = false;
        if (spec.multiplicity(lambda[m]) != 0 && lambda[m] != lambda[m + 1]) r.multiplicities = false;
    }
    return r;
}

// Same identities over an explicitly built semilattice: for every S,
// q^{corank S} equals the stratum dimensions summed over [S, U], and
// Moebius inversion of q^{corank} reproduces the formula below the top.
inline bool verify_stratum_identity(const DiagonalSemilattice& sl) {
    std::size_t k = sl.elements.size();
    auto pm = poset_matrices(sl.elements);
    for (std::size_t s = 0; s < k; ++s) {
        std::size_t corank = sl.m - sl.rank[s];
        Integer sum = 0;
        for (std::size_t t = s; t < k; ++t) {
            if (!sl.leq[s][t]) continue;
            sum += t == sl.top_index ? Integer(1) : stratum_dimension(sl.q, sl.m - sl.rank[t]);
        }
        if (sum != ipow(Integer(sl.q), corank)) return false;
        if (s == sl.top_index) continue;
        Integer inverted = 0;
        for (std::size_t t = s; t < k; ++t)
            if (sl.leq[s][t]) inverted += pm.mobius[s][t] * ipow(Integer(sl.q), sl.m - sl.rank[t]);
        if (inverted != stratum_dimension(sl.q, corank)) return false;
    }
    return true;
}

} // namespace diaglab
