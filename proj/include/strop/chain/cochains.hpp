#pragma once

// Cellular cochains and chains on a simplicial complex, the front/back-face
// cup and cap products with optional twisting, and the fundamental class.

#include <cstddef>
#include <deque>
#include <numeric>
#include <string>
#include <vector>

#include "strop/chain/complex.hpp"
#include "strop/errors.hpp"

namespace strop {

/// Values on the k-simplices of a complex (in its sorted order).  A twisted
/// cochain takes values in the orientation local system: each value is
/// expressed in the chart of its own simplex.
struct Cochain {
    int degree = 0;
    bool twisted = false;
    IntVector values;
};

/// Coefficients on the k-simplices; twisted chains use per-simplex charts.
struct Chain {
    int degree = 0;
    bool twisted = false;
    IntVector coeffs;
};

namespace detail {

inline std::vector<std::size_t> range_positions(std::size_t from, std::size_t to) {
    std::vector<std::size_t> v(to - from + 1);
    std::iota(v.begin(), v.end(), from);
    return v;
}

inline Simplex pick(const Simplex& s, std::size_t from, std::size_t to) {
    return Simplex(s.begin() + static_cast<long>(from), s.begin() + static_cast<long>(to) + 1);
}

} // namespace detail

inline Cochain unit_cochain(const SimplicialComplex& K) {
    return {0, false, IntVector(K.count(0), Integer(1))};
}

/// Coboundary (the transpose of the appropriate boundary matrix).
inline Cochain coboundary(const SimplicialComplex& K, const OrientationCharacter& w, const Cochain& a) {
    IntMatrix d = twisted_boundary_matrix(K, a.twisted ? w : OrientationCharacter::trivial(), a.degree + 1);
    return {a.degree + 1, a.twisted, d.transpose() * a.values};
}

inline Chain chain_boundary(const SimplicialComplex& K, const OrientationCharacter& w, const Chain& c) {
    IntMatrix d = twisted_boundary_matrix(K, c.twisted ? w : OrientationCharacter::trivial(), c.degree);
    return {c.degree - 1, c.twisted, d * c.coeffs};
}

/// (a u b)(s) = a(front_p s) b(back_q s), each factor transported to the
/// chart of s when it is twisted.  Two twisted factors give an untwisted
/// product.
inline Cochain cup_product(const SimplicialComplex& K, const OrientationCharacter& w, const Cochain& a,
                           const Cochain& b) {
    const int p = a.degree, q = b.degree;
    if (p < 0 || q < 0 || p + q > K.dim())
        throw DegreeError("cup product of degrees " + std::to_string(p) + " and " + std::to_string(q) +
                          " exceeds dimension " + std::to_string(K.dim()));
    if (a.values.size() != K.count(p) || b.values.size() != K.count(q))
        throw StructureError("cochain length does not match the complex");
    Cochain out{p + q, a.twisted != b.twisted, IntVector(K.count(p + q), Integer(0))};
    const auto& cells = K.simplices(p + q);
    const auto sp = static_cast<std::size_t>(p), sq = static_cast<std::size_t>(q);
    for (std::size_t j = 0; j < cells.size(); ++j) {
        const Simplex& s = cells[j];
        const Integer& av = a.values[*K.index_of(detail::pick(s, 0, sp))];
        if (is_zero(av)) continue;
        const Integer& bv = b.values[*K.index_of(detail::pick(s, sp, sp + sq))];
        if (is_zero(bv)) continue;
        int sign = 1;
        if (a.twisted) sign *= w.transport(s, detail::range_positions(0, sp));
        if (b.twisted) sign *= w.transport(s, detail::range_positions(sp, sp + sq));
        out.values[j] = sign * av * bv;
    }
    return out;
}

/// z n a = sum_s z(s) a(back_k s) front_{m-k} s, with the same chart
/// transport rules as the cup product.
inline Chain cap_product(const SimplicialComplex& K, const OrientationCharacter& w, const Chain& z, const Cochain& a) {
    const int m = z.degree, k = a.degree;
    if (k < 0 || k > m) throw DegreeError("cap product of a degree " + std::to_string(m) + " chain with a degree " +
                                          std::to_string(k) + " cochain");
    Chain out{m - k, z.twisted != a.twisted, IntVector(K.count(m - k), Integer(0))};
    const auto& cells = K.simplices(m);
    const auto sm = static_cast<std::size_t>(m), sk = static_cast<std::size_t>(k);
    for (std::size_t j = 0; j < cells.size(); ++j) {
        if (is_zero(z.coeffs[j])) continue;
        const Simplex& s = cells[j];
        const Integer& av = a.values[*K.index_of(detail::pick(s, sm - sk, sm))];
        if (is_zero(av)) continue;
        int sign = 1;
        if (a.twisted) sign *= w.transport(s, detail::range_positions(sm - sk, sm));
        if (out.twisted) sign *= w.transport(s, detail::range_positions(0, sm - sk));
        out.coeffs[*K.index_of(detail::pick(s, 0, sm - sk))] += sign * z.coeffs[j] * av;
    }
    return out;
}

struct FundamentalClass {
    Chain cycle;           // zero chain when no compatible sign system exists
    bool generates = false;  // the cycle generates H_n(K; w) = Z
};

/// Propagates +-1 coefficients across ridges, starting from +1 on the first
/// top simplex of every connected component.
inline FundamentalClass fundamental_class(const SimplicialComplex& K, const OrientationCharacter& w) {
    K.check_closed();
    const int n = K.dim();
    FundamentalClass out;
    out.cycle = {n, !w.is_trivial(), IntVector(K.count(n), Integer(0))};
    if (n < 1) {
        if (K.count(0) == 1) {
            out.cycle.coeffs[0] = 1;
            out.generates = true;
        }
        return out;
    }
    const auto& tops = K.simplices(n);
    auto ridges = detail::ridge_cofaces(K);
    std::vector<std::vector<std::size_t>> ridges_of(tops.size());
    for (std::size_t r = 0; r < ridges.size(); ++r) {
        if (ridges[r].size() != 2)
            throw NotManifoldError("simplex " + to_string(K.simplices(n - 1)[r]) + " has " +
                                   std::to_string(ridges[r].size()) + " cofaces, expected 2");
        ridges_of[ridges[r][0].first].push_back(r);
        ridges_of[ridges[r][1].first].push_back(r);
    }
    std::vector<int> c(tops.size(), 0);
    bool consistent = true;
    std::size_t components = 0;
    auto incidence = [&](std::size_t t, std::size_t i) { return ((i % 2 == 0) ? 1 : -1) * w.sign(tops[t], i); };
    for (std::size_t start = 0; start < tops.size(); ++start) {
        if (c[start] != 0) continue;
        ++components;
        c[start] = 1;
        std::deque<std::size_t> queue{start};
        while (!queue.empty()) {
            std::size_t t = queue.front();
            queue.pop_front();
            for (std::size_t r : ridges_of[t]) {
                auto [t1, i1] = ridges[r][0];
                auto [t2, i2] = ridges[r][1];
                if (t1 != t) {
                    std::swap(t1, t2);
                    std::swap(i1, i2);
                }
                // c[t1] e1 + c[t2] e2 = 0 on the shared ridge
                int want = -c[t1] * incidence(t1, i1) * incidence(t2, i2);
                if (c[t2] == 0) {
                    c[t2] = want;
                    queue.push_back(t2);
                } else if (c[t2] != want) {
                    consistent = false;
                }
            }
        }
    }
    if (!consistent) return out;
    for (std::size_t t = 0; t < tops.size(); ++t) out.cycle.coeffs[t] = c[t];
    out.generates = components == 1;
    return out;
}

} // namespace strop
