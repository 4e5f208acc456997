#pragma once

// Transversality to the diagonal, the diagonal preimage W of a bi-chain with
// its triangulation and orientation, and translation perturbation.
//
// For a term u x v (dimensions p, q) write F(x, y) = u(x) - v(y) on
// Delta^p x Delta^q.  A face of the product is a pair (A, B) of non-empty
// vertex subsets; it has dimension |A| + |B| - 2.  The term is transverse
// when no point of F^{-1}(Z^n) lies in a face of dimension < n.  This
// forces every face of dimension >= n that meets F^{-1}(Z^n) to do so
// transversally, so W = F^{-1}(Z^n) is a polytope complex of dimension
// p + q - n whose vertices sit in the interiors of n-dimensional faces.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "strop/errors.hpp"
#include "strop/matrix.hpp"
#include "strop/torus/affine.hpp"
#include "strop/torus/bichain.hpp"

namespace strop::torus {

namespace detail {

using Mask = unsigned;

inline std::vector<std::size_t> bits(Mask m) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; m; ++i, m >>= 1)
        if (m & 1u) out.push_back(i);
    return out;
}

/// F restricted to the face (A, B) in the affine coordinates
/// t = (lambda_a for a in A minus its first element, mu_b likewise):
/// F = c + M t.
struct FaceMap {
    Mask am = 0, bm = 0;
    std::vector<std::size_t> A, B;
    RatVec c;
    Matrix<Rational> M;
    std::size_t rank = 0;

    std::size_t dim() const { return A.size() + B.size() - 2; }
};

inline FaceMap face_map(const Cell& u, const Cell& v, Mask am, Mask bm) {
    FaceMap f;
    f.am = am;
    f.bm = bm;
    f.A = bits(am);
    f.B = bits(bm);
    const std::size_t n = u.ambient();
    const RatVec& p0 = u.verts[f.A[0]];
    const RatVec& q0 = v.verts[f.B[0]];
    f.c = sub(p0, q0);
    f.M = Matrix<Rational>(n, f.dim());
    std::size_t col = 0;
    for (std::size_t i = 1; i < f.A.size(); ++i, ++col)
        for (std::size_t r = 0; r < n; ++r) f.M(r, col) = u.verts[f.A[i]][r] - p0[r];
    for (std::size_t j = 1; j < f.B.size(); ++j, ++col)
        for (std::size_t r = 0; r < n; ++r) f.M(r, col) = q0[r] - v.verts[f.B[j]][r];
    f.rank = rank_of(f.M);
    return f;
}

/// Integer vectors k with a chance of lying in F(face): the lattice points of
/// the bounding box of the vertex differences.
inline std::vector<IntVector> lattice_box(const Cell& u, const Cell& v, const FaceMap& f) {
    const std::size_t n = u.ambient();
    std::vector<Integer> lo(n), hi(n);
    for (std::size_t r = 0; r < n; ++r) {
        bool first = true;
        Rational mn, mx;
        for (std::size_t a : f.A)
            for (std::size_t b : f.B) {
                Rational d = u.verts[a][r] - v.verts[b][r];
                if (first || d < mn) mn = d;
                if (first || d > mx) mx = d;
                first = false;
            }
        lo[r] = ceil_of(mn);
        hi[r] = floor_of(mx);
        if (lo[r] > hi[r]) return {};
    }
    std::vector<IntVector> out;
    IntVector k = lo;
    for (;;) {
        out.push_back(k);
        std::size_t r = 0;
        while (r < n && k[r] == hi[r]) {
            k[r] = lo[r];
            ++r;
        }
        if (r == n) break;
        ++k[r];
    }
    return out;
}

/// The unique solution of M t = rhs for M of full column rank, if any.
inline std::optional<RatVec> solve_exact(Matrix<Rational> M, RatVec rhs) {
    const std::size_t rows = M.rows(), cols = M.cols();
    std::size_t r = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && M(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        for (std::size_t j = 0; j < cols; ++j) std::swap(M(r, j), M(piv, j));
        std::swap(rhs[r], rhs[piv]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || M(i, c) == 0) continue;
            Rational f = M(i, c) / M(r, c);
            for (std::size_t j = c; j < cols; ++j) M(i, j) -= f * M(r, j);
            rhs[i] -= f * rhs[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (rhs[i] != 0) return std::nullopt;
    RatVec t(cols);
    for (std::size_t i = 0; i < r; ++i) t[pivot_col[i]] = rhs[i] / M(i, pivot_col[i]);
    return t;
}

/// Barycentric coordinates (x_0..x_p, y_0..y_q) of the face point with
/// affine coordinates t, or nullopt if it lies outside the closed face.
inline std::optional<RatVec> barycentric(const FaceMap& f, const RatVec& t, std::size_t p, std::size_t q) {
    RatVec z(p + q + 2);
    Rational sa = 1, sb = 1;
    std::size_t col = 0;
    for (std::size_t i = 1; i < f.A.size(); ++i, ++col) {
        if (t[col] < 0) return std::nullopt;
        z[f.A[i]] = t[col];
        sa -= t[col];
    }
    for (std::size_t j = 1; j < f.B.size(); ++j, ++col) {
        if (t[col] < 0) return std::nullopt;
        z[p + 1 + f.B[j]] = t[col];
        sb -= t[col];
    }
    if (sa < 0 || sb < 0) return std::nullopt;
    z[f.A[0]] = sa;
    z[p + 1 + f.B[0]] = sb;
    return z;
}

inline RatVec minus(const RatVec& k, const RatVec& c) { return sub(k, c); }

inline RatVec to_rational(const IntVector& k) {
    RatVec out;
    for (const auto& x : k) out.emplace_back(x);
    return out;
}

/// Faces of Delta^p x Delta^q in a fixed order: by dimension, then masks.
inline std::vector<std::pair<Mask, Mask>> product_faces(std::size_t p, std::size_t q) {
    std::vector<std::pair<Mask, Mask>> out;
    for (Mask am = 1; am < (1u << (p + 1)); ++am)
        for (Mask bm = 1; bm < (1u << (q + 1)); ++bm) out.emplace_back(am, bm);
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::popcount(a.first) + std::popcount(a.second) < std::popcount(b.first) + std::popcount(b.second);
    });
    return out;
}

} // namespace detail

struct TransversalityWitness {
    std::size_t term = 0;
    std::vector<std::size_t> left_face, right_face;
    IntVector translate;

    std::string describe() const {
        auto list = [](const std::vector<std::size_t>& v) {
            std::string s = "{";
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
            return s + "}";
        };
        std::string k;
        for (std::size_t i = 0; i < translate.size(); ++i) k += (i ? "," : "") + translate[i].str();
        return "term " + std::to_string(term) + ", face " + list(left_face) + "x" + list(right_face) +
               ", translate (" + k + ")";
    }
};

struct TransversalityReport {
    bool transverse = true;
    std::optional<TransversalityWitness> witness;
};

inline std::optional<TransversalityWitness> term_witness(const BiTerm& t, std::size_t index) {
    const std::size_t n = t.left.ambient();
    const auto p = static_cast<std::size_t>(t.left.dim()), q = static_cast<std::size_t>(t.right.dim());
    for (auto [am, bm] : detail::product_faces(p, q)) {
        if (static_cast<std::size_t>(std::popcount(am) + std::popcount(bm)) - 2 >= n) continue;
        detail::FaceMap f = detail::face_map(t.left, t.right, am, bm);
        if (f.rank < f.dim()) continue;  // a preimage point here also lies in a smaller injective face
        for (const auto& k : detail::lattice_box(t.left, t.right, f)) {
            auto sol = detail::solve_exact(f.M, detail::minus(detail::to_rational(k), f.c));
            if (!sol) continue;
            if (detail::barycentric(f, *sol, p, q)) return TransversalityWitness{index, f.A, f.B, k};
        }
    }
    return std::nullopt;
}

inline TransversalityReport is_transverse(const BiChain& b) {
    for (std::size_t i = 0; i < b.terms().size(); ++i)
        if (auto w = term_witness(b.terms()[i], i)) return {false, w};
    return {true, std::nullopt};
}

/// One oriented simplex of W.  `points` are barycentric coordinates
/// (x_0..x_p, y_0..y_q) in Delta^p x Delta^q.
struct Piece {
    std::size_t term = 0;
    IntVector translate;
    std::vector<RatVec> points;
    int orientation = 1;  // includes the Dold sign when enabled
    Integer coef;         // term coefficient times orientation
    Cell image;           // left factor applied to the points, winding summed
};

struct TransverseIntersection {
    std::size_t ambient = 0;
    std::vector<Piece> pieces;

    /// The composed chain: images of the pieces carrying the summed windings.
    Chain composed() const {
        Chain c(ambient);
        for (const auto& pc : pieces) c.add(pc.image, pc.coef);
        return c;
    }

    /// Images of the pieces at the base point (windings dropped).
    Chain image() const { return base_points(composed()); }
};

namespace detail {

struct WVertex {
    RatVec z;  // barycentric coordinates
    Mask am, bm;
};

/// Lexicographic pulling triangulation of the polytope W_k n (A x B).
/// `verts` holds the W_k vertices sorted lexicographically.
inline void pull(const std::vector<WVertex>& verts, Mask am, Mask bm, int dim,
                 std::vector<std::vector<std::size_t>>& out) {
    auto in_face = [&](std::size_t i, Mask a, Mask b) {
        return (verts[i].am & ~a) == 0 && (verts[i].bm & ~b) == 0;
    };
    std::size_t apex = verts.size();
    for (std::size_t i = 0; i < verts.size(); ++i)
        if (in_face(i, am, bm)) {
            apex = i;
            break;
        }
    if (apex == verts.size()) return;
    if (dim == 0) {
        out.push_back({apex});
        return;
    }
    auto recurse = [&](Mask a, Mask b) {
        if (in_face(apex, a, b)) return;
        std::vector<std::vector<std::size_t>> sub;
        pull(verts, a, b, dim - 1, sub);
        for (auto& s : sub) {
            s.insert(s.begin(), apex);
            out.push_back(std::move(s));
        }
    };
    for (std::size_t a : bits(am))
        if (std::popcount(am) > 1) recurse(am & ~(1u << a), bm);
    for (std::size_t b : bits(bm))
        if (std::popcount(bm) > 1) recurse(am, bm & ~(1u << b));
}

/// Sign of det[w_1 - w_0, ..., w_e - w_0, N_1, ..., N_n] in the local
/// coordinates (x_1..x_p, y_1..y_q), where N_r is the r-th row of the
/// differential of (x, y) -> v(y) - u(x).
inline int piece_orientation(const Cell& u, const Cell& v, const std::vector<RatVec>& pts) {
    const std::size_t p = static_cast<std::size_t>(u.dim()), q = static_cast<std::size_t>(v.dim());
    const std::size_t n = u.ambient(), e = pts.size() - 1, m = p + q;
    Matrix<Rational> D(m, m);
    auto local = [&](const RatVec& z, std::size_t row) {
        return row < p ? z[1 + row] : z[p + 2 + (row - p)];
    };
    for (std::size_t j = 0; j < e; ++j)
        for (std::size_t r = 0; r < m; ++r) D(r, j) = local(pts[j + 1], r) - local(pts[0], r);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t i = 0; i < p; ++i) D(i, e + s) = -(u.verts[i + 1][s] - u.verts[0][s]);
        for (std::size_t j = 0; j < q; ++j) D(p + j, e + s) = v.verts[j + 1][s] - v.verts[0][s];
    }
    int sgn = sign_of(determinant(D));
    if (sgn == 0) throw StructureError("degenerate piece in the triangulation of W");
    return sgn;
}

inline RatVec apply_left(const Cell& u, const RatVec& z) {
    RatVec out(u.ambient(), Rational(0));
    for (std::size_t a = 0; a < u.verts.size(); ++a)
        if (z[a] != 0)
            for (std::size_t r = 0; r < out.size(); ++r) out[r] += z[a] * u.verts[a][r];
    return out;
}

} // namespace detail

/// (-1)^{n(n-q)} for a right factor of dimension q.
inline int dold_factor(std::size_t n, int q) {
    long e = static_cast<long>(n) * (static_cast<long>(n) - q);
    return (e % 2 == 0) ? 1 : -1;
}

/// Triangulates and orients W term by term.  With `dold_sign` false the
/// pieces carry the bare orientation (a test hook).
inline TransverseIntersection chain_intersection(const BiChain& b, bool dold_sign = true) {
    TransversalityReport rep = is_transverse(b);
    if (!rep.transverse) throw NotTransverseError("bi-chain is not transverse: " + rep.witness->describe());
    const std::size_t n = b.ambient();
    TransverseIntersection out{n, {}};
    for (std::size_t ti = 0; ti < b.terms().size(); ++ti) {
        const BiTerm& t = b.terms()[ti];
        const std::size_t p = static_cast<std::size_t>(t.left.dim()), q = static_cast<std::size_t>(t.right.dim());
        if (p + q < n) continue;
        const int dim = static_cast<int>(p + q - n);
        const int dold = dold_sign ? dold_factor(n, t.right.dim()) : 1;
        std::map<IntVector, std::vector<detail::WVertex>> by_k;
        for (auto [am, bm] : detail::product_faces(p, q)) {
            if (static_cast<std::size_t>(std::popcount(am) + std::popcount(bm)) - 2 != n) continue;
            detail::FaceMap f = detail::face_map(t.left, t.right, am, bm);
            if (f.rank < n) continue;  // cannot meet F^{-1}(Z^n) on a transverse term
            for (const auto& k : detail::lattice_box(t.left, t.right, f)) {
                auto sol = detail::solve_exact(f.M, detail::minus(detail::to_rational(k), f.c));
                if (!sol) continue;
                if (auto z = detail::barycentric(f, *sol, p, q)) by_k[k].push_back({*z, am, bm});
            }
        }
        IntVector winding(n);
        for (std::size_t r = 0; r < n; ++r) winding[r] = t.left.winding[r] + t.right.winding[r];
        const detail::Mask full_a = (1u << (p + 1)) - 1, full_b = (1u << (q + 1)) - 1;
        for (auto& [k, verts] : by_k) {
            std::sort(verts.begin(), verts.end(), [](const auto& x, const auto& y) { return x.z < y.z; });
            std::vector<std::vector<std::size_t>> simplices;
            detail::pull(verts, full_a, full_b, dim, simplices);
            for (const auto& s : simplices) {
                Piece pc;
                pc.term = ti;
                pc.translate = k;
                for (std::size_t i : s) pc.points.push_back(verts[i].z);
                pc.orientation = detail::piece_orientation(t.left, t.right, pc.points) * dold;
                pc.coef = pc.orientation * t.coef;
                pc.image.winding = winding;
                for (const auto& z : pc.points) pc.image.verts.push_back(detail::apply_left(t.left, z));
                out.pieces.push_back(std::move(pc));
            }
        }
    }
    return out;
}

/// Loop composition on the pieces of W: each piece becomes the family of
/// loops based on the left image with winding w_left + w_right.
inline Chain compose_loops(const TransverseIntersection& t) { return t.composed(); }

struct Perturbation {
    BiChain chain;
    RatVec shift;
    int attempts = 0;  // 0 when the input was already transverse
};

constexpr int kPerturbationAttempts = 32;

/// Translates all left factors by one vector s with |s_i| <= radius, drawn
/// from a seeded mt19937_64.  s = 0 is tried first.
inline Perturbation perturb_translate(const BiChain& b, std::uint64_t seed, const Rational& radius) {
    const std::size_t n = b.ambient();
    if (radius < 0) throw InputFormatError("negative perturbation radius");
    if (is_transverse(b).transverse) return {b, RatVec(n, Rational(0)), 0};
    constexpr long denom = 1L << 16;
    std::mt19937_64 rng(seed);
    TransversalityReport last;
    for (int attempt = 1; attempt <= kPerturbationAttempts; ++attempt) {
        RatVec s(n);
        for (std::size_t r = 0; r < n; ++r) {
            long m = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * denom + 1)) - denom;
            s[r] = radius * Rational(m, denom);
        }
        BiChain moved = b.translate_left(s);
        last = is_transverse(moved);
        if (last.transverse) return {std::move(moved), std::move(s), attempt};
    }
    throw PerturbationFailure("no transverse translate within radius " + strop::to_string(radius) + " after " +
                              std::to_string(kPerturbationAttempts) + " attempts (last failure: " +
                              last.witness->describe() + ")");
}

} // namespace strop::torus
