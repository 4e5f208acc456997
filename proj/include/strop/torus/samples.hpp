#pragma once

// Seeded random affine cycles on T^n with known classes.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "strop/matrix.hpp"
#include "strop/torus/affine.hpp"
#include "strop/torus/bichain.hpp"

namespace strop::torus {

/// The unit cube on the coordinates I, cut into its |I|! monotone simplices
/// with permutation signs: a cycle whose only non-zero period is dx_I = 1.
inline Chain cube_cycle(std::size_t n, const std::vector<std::size_t>& I) {
    Chain c(n);
    std::vector<std::size_t> perm(I.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    do {
        int sign = 1;
        for (std::size_t i = 0; i < perm.size(); ++i)
            for (std::size_t j = i + 1; j < perm.size(); ++j)
                if (perm[i] > perm[j]) sign = -sign;
        std::vector<RatVec> verts{RatVec(n, Rational(0))};
        for (std::size_t axis : perm) {
            RatVec next = verts.back();
            next[I[axis]] += 1;
            verts.push_back(next);
        }
        c.add(make_cell(verts, n), sign);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return c;
}

/// x -> M x + t applied to every vertex (M integral, so cycles stay cycles).
inline Chain affine_image(const Chain& c, const IntMatrix& M, const RatVec& t) {
    Chain out(c.ambient());
    for (const auto& [cell, k] : c.terms()) {
        Cell img{{}, cell.winding};
        for (const auto& v : cell.verts) {
            RatVec w = t;
            for (std::size_t r = 0; r < w.size(); ++r)
                for (std::size_t s = 0; s < v.size(); ++s)
                    if (M(r, s) != 0) w[r] += Rational(M(r, s)) * v[s];
            img.verts.push_back(std::move(w));
        }
        out.add(img, k);
    }
    return out;
}

struct SampledCycle {
    Chain chain;
    IntVector periods;  // expected class, computed from minors
};

/// A random degree-k cycle: c * M(cube_I) + t plus the boundary of a random
/// (k+1)-simplex.  Entries of M lie in [-bound, bound]; translations have
/// denominator 97.
inline SampledCycle random_cycle(std::mt19937_64& rng, std::size_t n, std::size_t k, long bound = 1) {
    auto uniform = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
    auto subsets = coordinate_subsets(n, k);
    const auto& I = subsets[static_cast<std::size_t>(uniform(0, static_cast<long>(subsets.size()) - 1))];
    IntMatrix M(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) M(r, s) = uniform(-bound, bound);
    RatVec t(n);
    for (auto& x : t) x = Rational(uniform(0, 96), 97);
    long coef = uniform(1, 2) * (uniform(0, 1) ? 1 : -1);

    SampledCycle out{Chain(n), {}};
    out.chain.add(affine_image(cube_cycle(n, I), M, t), coef);
    for (const auto& J : subsets) {
        IntMatrix minor(k, k);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) minor(a, b) = M(J[a], I[b]);
        out.periods.push_back(coef * determinant(minor));
    }
    if (k < n) {
        std::vector<RatVec> verts;
        for (std::size_t i = 0; i <= k + 1; ++i) {
            RatVec v(n);
            for (auto& x : v) x = Rational(uniform(-97, 97), 97);
            verts.push_back(v);
        }
        Chain extra(n);
        extra.add(make_cell(verts, n), 1);
        out.chain.add(extra.boundary());
    }
    return out;
}

/// A k-simplex with vertices in [-1, 1]^n on the grid of step 1/den.
inline Cell random_simplex(std::mt19937_64& rng, std::size_t n, std::size_t k, long den = 97) {
    std::vector<RatVec> verts;
    for (std::size_t i = 0; i <= k; ++i) {
        RatVec v(n);
        for (auto& x : v) x = Rational(static_cast<long>(rng() % static_cast<std::uint64_t>(2 * den + 1)) - den, den);
        verts.push_back(std::move(v));
    }
    return make_cell(std::move(verts), n);
}

/// Sum of `terms` random (p, q) bi-simplices with coefficients in {-2..2}\{0}.
inline BiChain random_bichain(std::mt19937_64& rng, std::size_t n, std::size_t p, std::size_t q, std::size_t terms) {
    BiChain b(n);
    for (std::size_t t = 0; t < terms; ++t) {
        long c = static_cast<long>(rng() % 4);
        b.add(Integer(c < 2 ? c - 2 : c - 1), random_simplex(rng, n, p), random_simplex(rng, n, q));
    }
    return b;
}

} // namespace strop::torus
