#pragma once

// Finite simplicial complexes, orientation characters (the sign data of a
// rank-one local system such as Z_or) and the twisted chain complex they
// determine.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "strop/errors.hpp"
#include "strop/matrix.hpp"

namespace strop {

/// Strictly increasing list of vertex identifiers.
using Simplex = std::vector<int>;

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (int v : s) {
            h ^= static_cast<std::size_t>(static_cast<unsigned>(v));
            h *= 1099511628211ull;
        }
        return h;
    }
};

inline std::string to_string(const Simplex& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "]";
}

/// The i-th face: s with its i-th vertex removed.
inline Simplex face(const Simplex& s, std::size_t i) {
    Simplex f;
    f.reserve(s.size() - 1);
    for (std::size_t j = 0; j < s.size(); ++j)
        if (j != i) f.push_back(s[j]);
    return f;
}

class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Builds a complex from per-dimension simplex lists.  Every tuple must be
    /// strictly increasing and no simplex may repeat; the lists are sorted
    /// lexicographically so that results never depend on input order.  Face
    /// closure is not required here (see validate_complex).
    static SimplicialComplex from_simplices(std::vector<std::vector<Simplex>> per_dim) {
        SimplicialComplex k;
        while (!per_dim.empty() && per_dim.back().empty()) per_dim.pop_back();
        for (std::size_t d = 0; d < per_dim.size(); ++d) {
            for (const auto& s : per_dim[d]) {
                if (s.size() != d + 1)
                    throw StructureError("simplex " + to_string(s) + " listed in dimension " + std::to_string(d));
                for (std::size_t i = 1; i < s.size(); ++i)
                    if (s[i - 1] >= s[i])
                        throw StructureError("simplex " + to_string(s) + " is not strictly increasing");
            }
            std::sort(per_dim[d].begin(), per_dim[d].end());
            auto dup = std::adjacent_find(per_dim[d].begin(), per_dim[d].end());
            if (dup != per_dim[d].end()) throw StructureError("duplicate simplex " + to_string(*dup));
        }
        k.simplices_ = std::move(per_dim);
        k.reindex();
        return k;
    }

    /// Closes a list of (maximal) simplices under taking faces.
    static SimplicialComplex from_facets(const std::vector<Simplex>& facets) {
        std::vector<std::set<Simplex>> acc;
        for (Simplex f : facets) {
            std::sort(f.begin(), f.end());
            if (std::adjacent_find(f.begin(), f.end()) != f.end())
                throw StructureError("facet " + to_string(f) + " repeats a vertex");
            const std::size_t m = f.size();
            if (m == 0) continue;
            if (acc.size() < m) acc.resize(m);
            for (unsigned long mask = 1; mask < (1ul << m); ++mask) {
                Simplex s;
                for (std::size_t i = 0; i < m; ++i)
                    if (mask & (1ul << i)) s.push_back(f[i]);
                acc[s.size() - 1].insert(s);
            }
        }
        std::vector<std::vector<Simplex>> per_dim;
        for (auto& layer : acc) per_dim.emplace_back(layer.begin(), layer.end());
        return from_simplices(std::move(per_dim));
    }

    int dim() const { return static_cast<int>(simplices_.size()) - 1; }

    std::size_t count(int k) const {
        return (k < 0 || k > dim()) ? 0 : simplices_[static_cast<std::size_t>(k)].size();
    }

    const std::vector<Simplex>& simplices(int k) const {
        static const std::vector<Simplex> empty;
        return (k < 0 || k > dim()) ? empty : simplices_[static_cast<std::size_t>(k)];
    }

    std::optional<std::size_t> index_of(const Simplex& s) const {
        if (s.empty() || static_cast<int>(s.size()) - 1 > dim()) return std::nullopt;
        const auto& idx = index_[s.size() - 1];
        auto it = idx.find(s);
        if (it == idx.end()) return std::nullopt;
        return it->second;
    }

    bool contains(const Simplex& s) const { return index_of(s).has_value(); }

    std::vector<int> vertices() const {
        std::vector<int> v;
        for (const auto& s : simplices(0)) v.push_back(s[0]);
        return v;
    }

    /// Throws StructureError naming the first missing face.
    void check_closed() const {
        for (int k = 1; k <= dim(); ++k)
            for (const auto& s : simplices(k))
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (!contains(face(s, i)))
                        throw StructureError("face " + to_string(face(s, i)) + " of " + to_string(s) + " is missing");
    }

    long euler_characteristic() const {
        long chi = 0;
        for (int k = 0; k <= dim(); ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(count(k));
        return chi;
    }

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.simplices_ == b.simplices_;
    }

private:
    std::vector<std::vector<Simplex>> simplices_;
    std::vector<std::unordered_map<Simplex, std::size_t, SimplexHash>> index_;

    void reindex() {
        index_.assign(simplices_.size(), {});
        for (std::size_t d = 0; d < simplices_.size(); ++d)
            for (std::size_t i = 0; i < simplices_[d].size(); ++i) index_[d].emplace(simplices_[d][i], i);
    }
};

/// Per-incidence signs: sign(s, i) is the chart-comparison sign between the
/// i-th face of s and s.  Unset incidences default to +1.
class OrientationCharacter {
public:
    static OrientationCharacter trivial() { return {}; }

    void set(const Simplex& s, std::size_t face_index, int sign) {
        if (sign != 1 && sign != -1) throw StructureError("orientation sign must be +1 or -1");
        if (face_index >= s.size()) throw StructureError("face index out of range for " + to_string(s));
        auto& row = signs_[s];
        if (row.empty()) row.assign(s.size(), 1);
        row[face_index] = sign;
        if (std::all_of(row.begin(), row.end(), [](int x) { return x == 1; })) signs_.erase(s);
    }

    int sign(const Simplex& s, std::size_t face_index) const {
        auto it = signs_.find(s);
        return it == signs_.end() ? 1 : it->second[face_index];
    }

    bool is_trivial() const { return signs_.empty(); }

    /// Sign converting coefficients between the charts of s and its face
    /// spanned by the positions `keep` (increasing).  Vertices are removed
    /// from the highest position down; the result is path independent
    /// whenever the twisted boundary squares to zero.
    int transport(const Simplex& s, const std::vector<std::size_t>& keep) const {
        if (is_trivial()) return 1;
        int sign_acc = 1;
        Simplex cur = s;
        std::vector<bool> kept(s.size(), false);
        for (auto k : keep) kept[k] = true;
        for (std::size_t pos = s.size(); pos-- > 0;) {
            if (kept[pos]) continue;
            // everything before `pos` is still present, so its index in cur is pos
            sign_acc *= sign(cur, pos);
            cur = face(cur, pos);
        }
        return sign_acc;
    }

    const std::map<Simplex, std::vector<int>>& entries() const { return signs_; }

    friend bool operator==(const OrientationCharacter& a, const OrientationCharacter& b) {
        return a.signs_ == b.signs_;
    }

private:
    std::map<Simplex, std::vector<int>> signs_;
};

/// Graded free Z-modules with integer boundary matrices.  boundaries[k] maps
/// degree-k chains to degree-(k-1) chains (ranks[k-1] x ranks[k]);
/// boundaries[0] is the 0 x ranks[0] matrix.
struct ChainComplexZ {
    std::vector<std::size_t> ranks;
    std::vector<IntMatrix> boundaries;

    int top_degree() const { return static_cast<int>(ranks.size()) - 1; }

    /// Boundary out of degree k; empty matrices outside the stored range.
    IntMatrix boundary(int k) const {
        if (k >= 0 && k <= top_degree()) return boundaries[static_cast<std::size_t>(k)];
        return IntMatrix(rank(k - 1), rank(k));
    }

    std::size_t rank(int k) const {
        return (k < 0 || k > top_degree()) ? 0 : ranks[static_cast<std::size_t>(k)];
    }
};

/// Twisted boundary of one simplex as (face index in the complex, coefficient) pairs.
inline IntMatrix twisted_boundary_matrix(const SimplicialComplex& K, const OrientationCharacter& w, int k) {
    IntMatrix m(K.count(k - 1), K.count(k));
    if (k == 0) return m;
    const auto& cells = K.simplices(k);
    for (std::size_t j = 0; j < cells.size(); ++j) {
        const Simplex& s = cells[j];
        for (std::size_t i = 0; i < s.size(); ++i) {
            auto row = K.index_of(face(s, i));
            if (!row) throw StructureError("face " + to_string(face(s, i)) + " of " + to_string(s) + " is missing");
            int sgn = ((i % 2 == 0) ? 1 : -1) * w.sign(s, i);
            m(*row, j) += sgn;
        }
    }
    return m;
}

/// Builds the chain complex with boundary  d(s) = sum_i w(s,i) (-1)^i F_i s
/// and checks that it squares to zero.
inline ChainComplexZ validate_complex(const SimplicialComplex& K, const OrientationCharacter& w) {
    K.check_closed();
    for (const auto& [s, row] : w.entries())
        if (!K.contains(s)) throw StructureError("orientation sign given for unknown simplex " + to_string(s));
    ChainComplexZ c;
    for (int k = 0; k <= K.dim(); ++k) {
        c.ranks.push_back(K.count(k));
        c.boundaries.push_back(twisted_boundary_matrix(K, w, k));
    }
    for (int k = 2; k <= K.dim(); ++k) {
        IntMatrix sq = c.boundaries[static_cast<std::size_t>(k - 1)] * c.boundaries[static_cast<std::size_t>(k)];
        if (!sq.is_zero()) {
            for (std::size_t j = 0; j < sq.cols(); ++j)
                for (std::size_t i = 0; i < sq.rows(); ++i)
                    if (sq(i, j) != 0)
                        throw SignCocycleError("twisted boundary does not square to zero on " +
                                               to_string(K.simplices(k)[j]));
        }
    }
    return c;
}

namespace detail {

struct UnionFind {
    std::vector<std::size_t> parent;
    std::size_t add() {
        parent.push_back(parent.size());
        return parent.size() - 1;
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

inline std::size_t position_of(const Simplex& s, int v) {
    return static_cast<std::size_t>(std::lower_bound(s.begin(), s.end(), v) - s.begin());
}

/// Cofaces of each codimension-one simplex of a pure complex, with the face
/// index it occupies in each coface.
inline std::vector<std::vector<std::pair<std::size_t, std::size_t>>> ridge_cofaces(const SimplicialComplex& K) {
    const int n = K.dim();
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out(K.count(n - 1));
    const auto& tops = K.simplices(n);
    for (std::size_t t = 0; t < tops.size(); ++t)
        for (std::size_t i = 0; i < tops[t].size(); ++i) out[*K.index_of(face(tops[t], i))].emplace_back(t, i);
    return out;
}

} // namespace detail

/// The orientation character of a closed pseudomanifold, read off from its
/// combinatorial orientation double cover.  Each simplex is assigned a sheet
/// through its first top-dimensional coface; signs record whether faces
/// inherit the chosen sheet.  Orientable complexes get the trivial character.
inline OrientationCharacter orientation_character(const SimplicialComplex& K) {
    K.check_closed();
    const int n = K.dim();
    if (n < 1) return OrientationCharacter::trivial();
    const auto& tops = K.simplices(n);
    auto ridges = detail::ridge_cofaces(K);
    for (std::size_t r = 0; r < ridges.size(); ++r)
        if (ridges[r].size() != 2)
            throw NotManifoldError("simplex " + to_string(K.simplices(n - 1)[r]) + " has " +
                                   std::to_string(ridges[r].size()) + " cofaces, expected 2");

    // node (sheet, subface) where sheet = 2*top + (orientation negative)
    const std::size_t sub_count = (1ul << (n + 1)) - 1;
    detail::UnionFind uf;
    uf.parent.reserve(tops.size() * 2 * sub_count);
    for (std::size_t i = 0; i < tops.size() * 2 * sub_count; ++i) uf.add();
    auto node = [&](std::size_t sheet, unsigned long mask) { return sheet * sub_count + (mask - 1); };
    auto mask_in = [&](const Simplex& top, const Simplex& sub) {
        unsigned long m = 0;
        for (int v : sub) m |= 1ul << detail::position_of(top, v);
        return m;
    };

    for (std::size_t r = 0; r < ridges.size(); ++r) {
        auto [t1, i1] = ridges[r][0];
        auto [t2, i2] = ridges[r][1];
        const Simplex& ridge = K.simplices(n - 1)[r];
        unsigned long ridge_mask1 = mask_in(tops[t1], ridge);
        for (int o1 : {1, -1}) {
            // glued sheets induce opposite orientations on the shared ridge
            int o2 = -o1 * (((i1 + i2) % 2 == 0) ? 1 : -1);
            std::size_t s1 = 2 * t1 + (o1 < 0 ? 1 : 0);
            std::size_t s2 = 2 * t2 + (o2 < 0 ? 1 : 0);
            uf.unite(node(s1, sub_count), node(s2, sub_count));
            for (unsigned long sub = ridge_mask1; sub; sub = (sub - 1) & ridge_mask1) {
                Simplex rho;
                for (std::size_t b = 0; b < tops[t1].size(); ++b)
                    if (sub & (1ul << b)) rho.push_back(tops[t1][b]);
                uf.unite(node(s1, sub), node(s2, mask_in(tops[t2], rho)));
            }
        }
    }

    // first top coface of every simplex
    std::unordered_map<Simplex, std::size_t, SimplexHash> first_top;
    for (std::size_t t = 0; t < tops.size(); ++t)
        for (unsigned long mask = 1; mask <= sub_count; ++mask) {
            Simplex rho;
            for (std::size_t b = 0; b < tops[t].size(); ++b)
                if (mask & (1ul << b)) rho.push_back(tops[t][b]);
            first_top.emplace(rho, t);
        }
    for (int k = 0; k <= n; ++k)
        for (const auto& s : K.simplices(k))
            if (!first_top.count(s)) throw NotManifoldError("simplex " + to_string(s) + " is not a face of a top simplex");

    // On an orientable complex the cover splits; choosing every sheet from
    // the component of the first one makes the character trivial.
    const unsigned long full = sub_count;
    const bool orientable = uf.find(node(0, full)) != uf.find(node(1, full));
    std::vector<std::size_t> sheet(tops.size());
    for (std::size_t t = 0; t < tops.size(); ++t)
        sheet[t] = (orientable && uf.find(node(2 * t, full)) != uf.find(node(0, full))) ? 2 * t + 1 : 2 * t;
    auto lift = [&](const Simplex& rho) {
        std::size_t t = first_top.at(rho);
        return uf.find(node(sheet[t], mask_in(tops[t], rho)));
    };

    OrientationCharacter w;
    for (int k = 1; k <= n; ++k)
        for (const auto& s : K.simplices(k)) {
            std::size_t t = first_top.at(s);
            for (std::size_t i = 0; i < s.size(); ++i) {
                Simplex f = face(s, i);
                if (uf.find(node(sheet[t], mask_in(tops[t], f))) != lift(f)) w.set(s, i, -1);
            }
        }
    return w;
}

/// The character of the double cover `cover` -> K given by the vertex map
/// `projection` (cover vertex id -> K vertex id).  Each simplex of K uses
/// its lexicographically first lift.
inline OrientationCharacter character_from_double_cover(const SimplicialComplex& K, const SimplicialComplex& cover,
                                                        const std::map<int, int>& projection) {
    std::unordered_map<Simplex, Simplex, SimplexHash> chosen;  // K simplex -> lift with K-ordered vertices
    for (int k = 0; k <= cover.dim(); ++k)
        for (const auto& tau : cover.simplices(k)) {
            std::vector<std::pair<int, int>> img;
            for (int v : tau) {
                auto it = projection.find(v);
                if (it == projection.end()) throw StructureError("cover vertex " + std::to_string(v) + " has no image");
                img.emplace_back(it->second, v);
            }
            std::sort(img.begin(), img.end());
            Simplex base, lifted;
            for (auto [b, v] : img) {
                base.push_back(b);
                lifted.push_back(v);
            }
            if (std::adjacent_find(base.begin(), base.end()) != base.end()) continue;
            auto it = chosen.find(base);
            if (it == chosen.end() || lifted < it->second) chosen[base] = lifted;
        }
    OrientationCharacter w;
    for (int k = 1; k <= K.dim(); ++k)
        for (const auto& s : K.simplices(k)) {
            auto it = chosen.find(s);
            if (it == chosen.end()) throw StructureError("simplex " + to_string(s) + " has no lift in the cover");
            for (std::size_t i = 0; i < s.size(); ++i) {
                Simplex lifted_face = face(it->second, i);
                auto jt = chosen.find(face(s, i));
                if (jt == chosen.end()) throw StructureError("face of " + to_string(s) + " has no lift");
                if (jt->second != lifted_face) w.set(s, i, -1);
            }
        }
    return w;
}

} // namespace strop
