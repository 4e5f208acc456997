#pragma once

// The Freudenthal grid triangulation of T^n seen from both sides: its
// simplicial intersection ring and the period coordinates of the affine
// engine, with the change of basis between them.

#include <cstddef>
#include <vector>

#include "strop/chain/catalog.hpp"
#include "strop/chain/ring.hpp"
#include "strop/smith.hpp"
#include "strop/torus/affine.hpp"

namespace strop::torus {

class GridTorus {
public:
    explicit GridTorus(int n, int m = 3)
        : n_(n), m_(m), ring_(oriented_ring(n, m)) {
        for (int k = 0; k <= n; ++k) phi_.push_back(period_matrix(k));
    }

    int dim() const { return n_; }
    const IntersectionRing& ring() const { return ring_; }

    /// Affine realization of a k-chain of the grid complex: each simplex is
    /// lifted with its vertices inside one grid cube.
    Chain realize(int k, const IntVector& coeffs) const {
        const auto& cells = ring_.complex().simplices(k);
        Chain out(static_cast<std::size_t>(n_));
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (coeffs[j] == 0) continue;
            std::vector<int> g0 = catalog::grid_point(cells[j][0], n_, m_);
            std::vector<RatVec> verts;
            for (int v : cells[j]) {
                std::vector<int> g = catalog::grid_point(v, n_, m_);
                RatVec x(static_cast<std::size_t>(n_));
                for (std::size_t r = 0; r < x.size(); ++r) {
                    int d = ((g[r] - g0[r]) % m_ + m_) % m_;
                    if (d > m_ / 2) d -= m_;
                    x[r] = Rational(g0[r] + d, m_);
                }
                verts.push_back(std::move(x));
            }
            out.add(make_cell(std::move(verts), static_cast<std::size_t>(n_)), coeffs[j]);
        }
        return out;
    }

    /// Periods of a class of HH_{k-n} given in ring coordinates.
    IntVector to_periods(const GradedClass& x) const {
        const int k = x.degree + n_;
        return phi_.at(static_cast<std::size_t>(k)) * x.coords;
    }

    /// Ring coordinates of the class with the given periods.
    GradedClass from_periods(int k, const IntVector& periods) const {
        auto sol = solve_integer(phi_.at(static_cast<std::size_t>(k)), periods);
        if (!sol) throw StructureError("period vector is not realized by the grid homology basis");
        return {k - n_, *sol};
    }

    /// The intersection product of two period classes of degrees p and q,
    /// computed by the simplicial ring.
    IntVector product(int p, const IntVector& x, int q, const IntVector& y, bool with_dold_sign = true) const {
        GradedClass r = ring_.product(from_periods(p, x), from_periods(q, y), with_dold_sign);
        return to_periods(r);
    }

private:
    int n_, m_;
    IntersectionRing ring_;
    std::vector<IntMatrix> phi_;  // phi_[k] : ring coordinates -> periods

    static IntersectionRing oriented_ring(int n, int m) {
        IntersectionRing r(catalog::torus_grid(n, m), OrientationCharacter::trivial());
        GridTorus probe_dims{n, m, r};
        Chain top = probe_dims.realize(n, r.fundamental_cycle().coeffs);
        if (homology_class_torus(top, n).at(0) < 0)
            return IntersectionRing(catalog::torus_grid(n, m), OrientationCharacter::trivial(), -1);
        return r;
    }

    GridTorus(int n, int m, IntersectionRing r) : n_(n), m_(m), ring_(std::move(r)) {}

    IntMatrix period_matrix(int k) const {
        const HomologyBasis& b = ring_.homology(k - n_);
        std::size_t rows = coordinate_subsets(static_cast<std::size_t>(n_), static_cast<std::size_t>(k)).size();
        IntMatrix phi(rows, b.size());
        for (std::size_t j = 0; j < b.size(); ++j) {
            IntVector per = homology_class_torus(realize(k, b.generators()[j]), k);
            for (std::size_t i = 0; i < rows; ++i) phi(i, j) = per[i];
        }
        return phi;
    }
};

} // namespace strop::torus
