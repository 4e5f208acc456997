#pragma once

// Bi-chains on T^n x T^n: integer combinations of products u x v of affine
// cells, with the partial boundaries and the total boundary
// D(u x v) = du x v + (-1)^p u x dv.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "strop/torus/affine.hpp"

namespace strop::torus {

struct BiTerm {
    Integer coef;
    Cell left, right;
};

/// Terms are kept in input order; exactly repeated products are merged.
/// Bidegrees may be mixed (as in a total boundary).
/// Cells are not canonicalized because the intersection construction
/// depends on the given vertex order of each factor.
class BiChain {
public:
    BiChain() = default;
    explicit BiChain(std::size_t n) : n_(n) {}

    std::size_t ambient() const { return n_; }
    const std::vector<BiTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    void add(const Integer& coef, const Cell& left, const Cell& right) {
        if (is_zero(coef)) return;
        if (left.ambient() != n_ || right.ambient() != n_)
            throw StructureError("bi-chain factor lives on a torus of the wrong dimension");
        auto key = std::make_pair(left, right);
        auto it = index_.find(key);
        if (it == index_.end()) {
            index_.emplace(key, terms_.size());
            terms_.push_back({coef, left, right});
            return;
        }
        terms_[it->second].coef += coef;
        if (is_zero(terms_[it->second].coef)) rebuild_without(it->second);
    }

    void add(const BiChain& other, const Integer& scale = 1) {
        for (const auto& t : other.terms_) add(scale * t.coef, t.left, t.right);
    }

    /// du x v.
    BiChain boundary_left() const {
        BiChain out(n_);
        for (const auto& t : terms_) {
            if (t.left.dim() == 0) continue;
            for (std::size_t i = 0; i < t.left.verts.size(); ++i)
                out.add((i % 2 == 0) ? t.coef : Integer(-t.coef), t.left.face(i), t.right);
        }
        return out;
    }

    /// u x dv (no sign).
    BiChain boundary_right() const {
        BiChain out(n_);
        for (const auto& t : terms_) {
            if (t.right.dim() == 0) continue;
            for (std::size_t j = 0; j < t.right.verts.size(); ++j)
                out.add((j % 2 == 0) ? t.coef : Integer(-t.coef), t.left, t.right.face(j));
        }
        return out;
    }

    /// Translates every left factor by s.
    BiChain translate_left(const RatVec& s) const {
        BiChain out(n_);
        for (const auto& t : terms_) out.add(t.coef, t.left.translated(s), t.right);
        return out;
    }

    friend bool operator==(const BiChain& a, const BiChain& b) {
        if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
        for (const auto& t : a.terms_) {
            auto it = b.index_.find({t.left, t.right});
            if (it == b.index_.end() || b.terms_[it->second].coef != t.coef) return false;
        }
        return true;
    }

private:
    std::size_t n_ = 0;
    std::vector<BiTerm> terms_;
    std::map<std::pair<Cell, Cell>, std::size_t> index_;

    void rebuild_without(std::size_t drop) {
        terms_.erase(terms_.begin() + static_cast<long>(drop));
        index_.clear();
        for (std::size_t i = 0; i < terms_.size(); ++i) index_.emplace(std::make_pair(terms_[i].left, terms_[i].right), i);
    }
};

/// Product of two chains, term by term in their canonical orders.
inline BiChain cross(const Chain& a, const Chain& b) {
    BiChain out(a.ambient());
    for (const auto& [u, s] : a.terms())
        for (const auto& [v, t] : b.terms()) out.add(s * t, u, v);
    return out;
}

/// D(u x v) = du x v + (-1)^p u x dv, p the left degree of each term.
inline BiChain total_boundary(const BiChain& b) {
    BiChain out = b.boundary_left();
    for (const auto& t : b.terms()) {
        if (t.right.dim() == 0) continue;
        const Integer c = (t.left.dim() % 2 == 0) ? t.coef : Integer(-t.coef);
        for (std::size_t j = 0; j < t.right.verts.size(); ++j)
            out.add((j % 2 == 0) ? c : Integer(-c), t.left, t.right.face(j));
    }
    return out;
}

/// b with each factor reduced modulo Z^n translation and vertex order, so
/// that products of torus cells are compared as cells of T^n x T^n.
inline std::map<std::pair<Cell, Cell>, Integer> reduced_terms(const BiChain& b) {
    std::map<std::pair<Cell, Cell>, Integer> out;
    for (const auto& t : b.terms()) {
        auto l = canonical(t.left), r = canonical(t.right);
        if (!l || !r) continue;
        auto key = std::make_pair(l->first, r->first);
        out[key] += t.coef * (l->second * r->second);
        if (is_zero(out[key])) out.erase(key);
    }
    return out;
}

inline bool is_bicycle(const BiChain& b) { return reduced_terms(total_boundary(b)).empty(); }

} // namespace strop::torus
