#pragma once

// Small triangulations of closed manifolds used by the catalog, the tests and
// the verifier.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <vector>

#include "strop/chain/complex.hpp"

namespace strop::catalog {

/// Boundary of the 3-simplex (a 2-sphere).
inline SimplicialComplex tetrahedron_boundary() {
    return SimplicialComplex::from_facets({{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}});
}

/// Vertex id of the grid point g in (Z/m)^n.
inline int grid_id(const std::vector<int>& g, int m) {
    int id = 0;
    for (std::size_t i = g.size(); i-- > 0;) id = id * m + (((g[i] % m) + m) % m);
    return id;
}

/// Freudenthal (Kuhn) triangulation of the n-torus from an m^n grid: every
/// unit cube is cut into the n! monotone paths from its lower corner.
/// Vertex grid_id(g) sits at g/m.  Needs m >= 3 to be simplicial.
inline SimplicialComplex torus_grid(int n, int m = 3) {
    std::vector<Simplex> facets;
    std::vector<int> perm(static_cast<std::size_t>(n));
    int cells = 1;
    for (int i = 0; i < n; ++i) cells *= m;
    for (int c = 0; c < cells; ++c) {
        std::vector<int> base(static_cast<std::size_t>(n));
        for (int i = 0, r = c; i < n; ++i, r /= m) base[static_cast<std::size_t>(i)] = r % m;
        for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        do {
            Simplex s{grid_id(base, m)};
            std::vector<int> g = base;
            for (int axis : perm) {
                ++g[static_cast<std::size_t>(axis)];
                s.push_back(grid_id(g, m));
            }
            facets.push_back(s);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return SimplicialComplex::from_facets(facets);
}

/// Grid position of a torus_grid vertex.
inline std::vector<int> grid_point(int id, int n, int m = 3) {
    std::vector<int> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i, id /= m) g[static_cast<std::size_t>(i)] = id % m;
    return g;
}

/// The icosahedron with vertices v and v+6 antipodal, and the projection
/// v, v+6 -> v onto the projective plane.
struct Icosahedron {
    SimplicialComplex complex;
    std::map<int, int> projection;
};

inline Icosahedron icosahedron() {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::array<std::array<double, 3>, 12> p{};
    const std::array<std::array<double, 3>, 6> half{{{0, 1, phi}, {0, -1, phi}, {1, phi, 0},
                                                     {-1, phi, 0}, {phi, 0, 1}, {-phi, 0, 1}}};
    for (std::size_t i = 0; i < 6; ++i) {
        p[i] = half[i];
        for (std::size_t k = 0; k < 3; ++k) p[i + 6][k] = -half[i][k];
    }
    auto adjacent = [&](std::size_t a, std::size_t b) {
        double d = 0;
        for (std::size_t k = 0; k < 3; ++k) d += (p[a][k] - p[b][k]) * (p[a][k] - p[b][k]);
        return std::abs(d - 4.0) < 1e-9;
    };
    std::vector<Simplex> faces;
    for (std::size_t a = 0; a < 12; ++a)
        for (std::size_t b = a + 1; b < 12; ++b)
            for (std::size_t c = b + 1; c < 12; ++c)
                if (adjacent(a, b) && adjacent(b, c) && adjacent(a, c))
                    faces.push_back({static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)});
    Icosahedron out{SimplicialComplex::from_facets(faces), {}};
    for (int v = 0; v < 12; ++v) out.projection[v] = v % 6;
    return out;
}

/// The 6-vertex projective plane: the antipodal quotient of icosahedron().
inline SimplicialComplex rp2() {
    Icosahedron ico = icosahedron();
    std::vector<Simplex> facets;
    for (const auto& f : ico.complex.simplices(2)) {
        Simplex s;
        for (int v : f) s.push_back(ico.projection.at(v));
        std::sort(s.begin(), s.end());
        facets.push_back(s);
    }
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    return SimplicialComplex::from_facets(facets);
}

/// Klein bottle from an m x m grid: (i, j) ~ (i, j + m) and (i + m, j) ~ (i, -j).
inline SimplicialComplex klein_bottle(int m = 4) {
    auto id = [m](int i, int j) {
        int flips = 0;
        while (i >= m) {
            i -= m;
            ++flips;
        }
        if (flips % 2) j = -j;
        j = ((j % m) + m) % m;
        return i + m * j;
    };
    std::vector<Simplex> facets;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            facets.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            facets.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
        }
    return SimplicialComplex::from_facets(facets);
}

/// Projective 3-space: the boundary of [-1,1]^4 with its Freudenthal
/// triangulation, modulo x ~ -x.  Vertices are the points of {-1,0,1}^4 on
/// the boundary whose first non-zero coordinate is positive.
inline SimplicialComplex rp3() {
    std::vector<std::array<int, 4>> reps;
    std::map<std::array<int, 4>, int> ids;
    auto canonical = [](std::array<int, 4> x) {
        for (int c : x) {
            if (c > 0) return x;
            if (c < 0) {
                for (auto& y : x) y = -y;
                return x;
            }
        }
        return x;
    };
    for (int c = 0; c < 81; ++c) {
        std::array<int, 4> x{};
        for (int i = 0, r = c; i < 4; ++i, r /= 3) x[static_cast<std::size_t>(i)] = r % 3 - 1;
        bool boundary = false;
        for (int v : x) boundary = boundary || v != 0;
        if (!boundary || canonical(x) != x) continue;
        ids[x] = static_cast<int>(reps.size());
        reps.push_back(x);
    }
    std::vector<Simplex> facets;
    // unit cubes [a, a+1]^4 meeting the boundary in a 3-face x_k = +-1
    for (int c = 0; c < 16; ++c) {
        std::array<int, 4> a{};
        for (int i = 0; i < 4; ++i) a[static_cast<std::size_t>(i)] = ((c >> i) & 1) ? 0 : -1;
        for (int k = 0; k < 4; ++k)
            for (int side : {-1, 1}) {
                // the face of the cube lying in x_k = side
                if (side == 1 && a[static_cast<std::size_t>(k)] != 0) continue;
                if (side == -1 && a[static_cast<std::size_t>(k)] != -1) continue;
                std::array<int, 3> free_axes{};
                for (int i = 0, j = 0; i < 4; ++i)
                    if (i != k) free_axes[static_cast<std::size_t>(j++)] = i;
                std::array<int, 3> perm{0, 1, 2};
                do {
                    std::array<int, 4> x = a;
                    x[static_cast<std::size_t>(k)] = side;
                    Simplex s{ids.at(canonical(x))};
                    for (int t : perm) {
                        ++x[static_cast<std::size_t>(free_axes[static_cast<std::size_t>(t)])];
                        s.push_back(ids.at(canonical(x)));
                    }
                    std::sort(s.begin(), s.end());
                    facets.push_back(s);
                } while (std::next_permutation(perm.begin(), perm.end()));
            }
    }
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    return SimplicialComplex::from_facets(facets);
}

} // namespace strop::catalog
