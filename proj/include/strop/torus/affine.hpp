#pragma once

// Affine simplices and affine loop families on the flat torus R^n / Z^n, the
// chains they span and their integer periods.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strop/arith.hpp"
#include "strop/errors.hpp"
#include "strop/matrix.hpp"

namespace strop::torus {

using RatVec = std::vector<Rational>;

inline RatVec add(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline RatVec sub(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline std::string to_string(const RatVec& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + strop::to_string(v[i]);
    return out + ")";
}

/// An affine simplex given by lifted vertex positions in R^n, together with a
/// winding w in Z^n.  With w = 0 it is a simplex of the torus; otherwise it
/// is the family of straight loops  theta -> base(x) + theta * w.
struct Cell {
    std::vector<RatVec> verts;
    IntVector winding;

    int dim() const { return static_cast<int>(verts.size()) - 1; }
    std::size_t ambient() const { return winding.size(); }

    Cell face(std::size_t i) const {
        Cell f{{}, winding};
        for (std::size_t j = 0; j < verts.size(); ++j)
            if (j != i) f.verts.push_back(verts[j]);
        return f;
    }

    Cell translated(const RatVec& s) const {
        Cell c{{}, winding};
        for (const auto& v : verts) c.verts.push_back(add(v, s));
        return c;
    }

    friend auto operator<=>(const Cell&, const Cell&) = default;
};

inline Cell make_cell(std::vector<RatVec> verts, std::size_t n) {
    for (const auto& v : verts)
        if (v.size() != n) throw InputFormatError("vertex of dimension " + std::to_string(v.size()) + " on T^" +
                                                  std::to_string(n));
    return {std::move(verts), IntVector(n, Integer(0))};
}

inline Cell make_loop(std::vector<RatVec> verts, IntVector winding) {
    const std::size_t n = winding.size();
    Cell c = make_cell(std::move(verts), n);
    c.winding = std::move(winding);
    return c;
}

inline std::string to_string(const Cell& c) {
    std::string out = "[";
    for (std::size_t i = 0; i < c.verts.size(); ++i) out += (i ? " " : "") + to_string(c.verts[i]);
    out += "]";
    bool loop = std::any_of(c.winding.begin(), c.winding.end(), [](const Integer& x) { return x != 0; });
    if (loop) {
        out += " w=(";
        for (std::size_t i = 0; i < c.winding.size(); ++i) out += (i ? "," : "") + c.winding[i].str();
        out += ")";
    }
    return out;
}

/// The representative of c modulo Z^n translation and vertex reordering:
/// vertices sorted lexicographically, the first one moved into [0,1)^n.
/// Returns the permutation sign, or nullopt for a degenerate cell (two
/// coincident lifted vertices).
inline std::optional<std::pair<Cell, int>> canonical(const Cell& c) {
    std::vector<std::size_t> order(c.verts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return c.verts[a] < c.verts[b]; });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (c.verts[order[i - 1]] == c.verts[order[i]]) return std::nullopt;
    int sign = 1;
    std::vector<bool> seen(order.size(), false);
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = order[j]) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    Cell out{{}, c.winding};
    RatVec shift(c.ambient());
    for (std::size_t k = 0; k < shift.size(); ++k) shift[k] = Rational(-floor_of(c.verts[order[0]][k]));
    for (std::size_t i : order) out.verts.push_back(add(c.verts[i], shift));
    return std::make_pair(std::move(out), sign);
}

/// Integer combination of cells, stored in canonical form.
class Chain {
public:
    Chain() = default;
    explicit Chain(std::size_t n) : n_(n) {}

    std::size_t ambient() const { return n_; }

    void add(const Cell& c, const Integer& coef) {
        if (is_zero(coef)) return;
        if (c.ambient() != n_) throw StructureError("cell ambient dimension does not match the chain");
        auto canon = canonical(c);
        if (!canon) return;
        auto& slot = terms_[canon->first];
        slot += canon->second * coef;
        if (is_zero(slot)) terms_.erase(canon->first);
    }

    void add(const Chain& other, const Integer& coef = 1) {
        for (const auto& [c, k] : other.terms_) add(c, coef * k);
    }

    Chain boundary() const {
        Chain out(n_);
        for (const auto& [c, k] : terms_) {
            if (c.dim() == 0) continue;
            for (std::size_t i = 0; i < c.verts.size(); ++i) out.add(c.face(i), (i % 2 == 0) ? k : Integer(-k));
        }
        return out;
    }

    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::map<Cell, Integer>& terms() const { return terms_; }

    /// Degree of the cells, or -1 for the empty chain.
    int degree() const { return terms_.empty() ? -1 : terms_.begin()->first.dim(); }

    friend bool operator==(const Chain& a, const Chain& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

private:
    std::size_t n_ = 0;
    std::map<Cell, Integer> terms_;
};

/// The k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> coordinate_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

/// Integral of dx_I over one affine simplex: det(edge vectors on I) / k!.
inline Rational period(const Cell& c, const std::vector<std::size_t>& I) {
    const std::size_t k = I.size();
    Matrix<Rational> m(k, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t r = 0; r < k; ++r) m(r, j) = c.verts[j + 1][I[r]] - c.verts[0][I[r]];
    Rational det = determinant(m);
    for (std::size_t j = 2; j <= k; ++j) det /= static_cast<long>(j);
    return det;
}

/// Periods of a degree-k cycle against dx_I for the k-subsets I in
/// lexicographic order: its class in H_k(T^n) = Z^(n choose k).  The empty
/// chain is treated as a cycle of the degree `k`.
inline IntVector homology_class_torus(const Chain& c, int k) {
    if (!c.empty() && c.degree() != k)
        throw DegreeError("chain of degree " + std::to_string(c.degree()) + " asked for degree " + std::to_string(k));
    if (!c.boundary().empty()) throw NotACycleError("affine chain has non-zero boundary");
    auto subsets = coordinate_subsets(c.ambient(), static_cast<std::size_t>(k));
    IntVector out;
    for (const auto& I : subsets) {
        Rational sum = 0;
        for (const auto& [cell, coef] : c.terms()) sum += Rational(coef) * period(cell, I);
        if (!is_integral(sum)) throw NotACycleError("non-integral period " + strop::to_string(sum));
        out.push_back(boost::multiprecision::numerator(sum));
    }
    return out;
}

inline IntVector homology_class_torus(const Chain& c) { return homology_class_torus(c, std::max(c.degree(), 0)); }

/// The chain with every winding set to zero (evaluation at the base point).
inline Chain base_points(const Chain& c) {
    Chain out(c.ambient());
    for (const auto& [cell, k] : c.terms()) out.add(Cell{cell.verts, IntVector(c.ambient(), Integer(0))}, k);
    return out;
}

/// Splits a loop chain by winding.
inline std::map<IntVector, Chain> by_winding(const Chain& c) {
    std::map<IntVector, Chain> out;
    for (const auto& [cell, k] : c.terms()) {
        auto it = out.try_emplace(cell.winding, c.ambient()).first;
        it->second.add(cell, k);
    }
    return out;
}

} // namespace strop::torus
