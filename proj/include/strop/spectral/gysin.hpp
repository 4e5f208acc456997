#pragma once

// Homology of the unit tangent bundle UM from the Gysin sequence of the
// sphere bundle S^{n-1} -> UM -> M:
//
//   ... -> H_{k+1}(M) -e-> H_{k+1-n}(M) -> H_k(UM) -> H_k(M) -e-> H_{k-n}(M) -> ...
//
// For a connected closed orientable M the cap with the Euler class is zero
// except on H_n = Z -> H_0 = Z, where it is multiplication by chi.  So
// 0 -> A_k -> H_k(UM) -> B_k -> 0 with A_k = coker e and B_k = ker e, and
// the third map H_j(M) -> H_{j+n-1}(UM) is the Gysin (preimage) map.

#include <cstddef>
#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "strop/spectral/cross_spec.hpp"

namespace strop::spectral {

struct UnitTangentHomology {
    std::vector<CyclicGroup> groups;             // H_k(UM), k = 0..2n-1
    std::optional<std::vector<IntMatrix>> gysin; // gysin[j] : H_j(M) -> H_{j+n-1}(UM)
    bool derived = false;                        // solved from the Euler number

    HomologySummary summary() const {
        HomologySummary h;
        for (const auto& g : groups) h.groups.push_back(g.summary());
        return h;
    }
};

namespace detail {

struct Summand {
    Integer order;
    bool from_kernel;     // B part (else A part)
    std::size_t source;   // generator index in H(M)
};

inline CyclicGroup cyclic(const std::vector<Summand>& s) {
    CyclicGroup g;
    for (const auto& x : s) g.orders.push_back(x.order);
    return g;
}

inline bool ext_vanishes(const std::vector<Summand>& a, const std::vector<Summand>& b) {
    for (const auto& y : b) {
        if (y.order == 0) continue;
        for (const auto& x : a) {
            if (x.order == 0) return false;  // Ext(Z/m, Z) = Z/m
            Integer g = boost::multiprecision::gcd(x.order, y.order);
            if (g > 1) return false;
        }
    }
    return true;
}

inline std::vector<IntMatrix> module_from_entries(const CrossSpec& spec, const std::vector<CyclicGroup>& um,
                                                  const std::vector<ModuleEntry>& entries) {
    std::vector<IntMatrix> g;
    for (int j = 0; j <= spec.n; ++j)
        g.emplace_back(um[static_cast<std::size_t>(j + spec.n - 1)].size(), spec.hm.at(j).generator_count());
    // the pullback of [M] is [UM] whether or not the entries say so
    g.back()(0, 0) = 1;
    for (const auto& e : entries) {
        const int j = e.degree + spec.n;
        if (j < 0 || j > spec.n) throw StructureError(spec.name + ": gysin_module degree out of range");
        IntMatrix& m = g[static_cast<std::size_t>(j)];
        if (e.index >= m.cols() || e.value.size() != m.rows())
            throw StructureError(spec.name + ": gysin_module entry has the wrong shape in degree " +
                                 std::to_string(e.degree));
        IntVector v = um[static_cast<std::size_t>(j + spec.n - 1)].reduce(e.value);
        for (std::size_t r = 0; r < m.rows(); ++r) m(r, e.index) = v[r];
    }
    return g;
}

} // namespace detail

/// Solves the Gysin sequence when M is orientable and chi is known;
/// otherwise validates and returns the supplied hum.
inline UnitTangentHomology gysin_unit_tangent_homology(const CrossSpec& spec) {
    spec.validate();
    const int n = spec.n;
    UnitTangentHomology out;

    if (!spec.orientable || !spec.euler) {
        if (!spec.hum)
            throw MissingData(spec.name + (spec.orientable ? ": neither euler nor hum is given"
                                                           : ": non-orientable entries must supply hum"));
        for (int k = 0; k <= spec.um_dim(); ++k) out.groups.push_back(CyclicGroup::from_summary(spec.hum->at(k)));
        if (out.groups.back().orders != IntVector{0}) throw StructureError(spec.name + ": H_top(UM) must be Z");
        if (spec.gysin_module) out.gysin = detail::module_from_entries(spec, out.groups, *spec.gysin_module);
        return out;
    }

    if (!(spec.hm.at(0) == GroupSummary{1, {}})) throw StructureError(spec.name + ": M must be connected");
    const Integer chi = abs(*spec.euler);
    std::vector<IntMatrix> gysin;
    for (int j = 0; j <= n; ++j)
        gysin.emplace_back(0, spec.hm.at(j).generator_count());

    for (int k = 0; k <= spec.um_dim(); ++k) {
        std::vector<detail::Summand> a, b;
        const int j = k + 1 - n;  // A_k is a quotient of H_j(M)
        if (j >= 0 && j <= n) {
            CyclicGroup src = CyclicGroup::from_summary(spec.hm.at(j));
            if (j == 0) {
                if (chi != 1) a.push_back({chi, false, 0});
            } else {
                for (std::size_t i = 0; i < src.size(); ++i) a.push_back({src.orders[i], false, i});
            }
        }
        if (k <= n) {
            CyclicGroup src = CyclicGroup::from_summary(spec.hm.at(k));
            if (k == n) {
                if (chi == 0) b.push_back({0, true, 0});
            } else {
                for (std::size_t i = 0; i < src.size(); ++i) b.push_back({src.orders[i], true, i});
            }
        }
        if (!detail::ext_vanishes(a, b))
            throw ExtensionAmbiguity(spec.name + ": H_" + std::to_string(k) + "(UM) is an extension of " +
                                     detail::cyclic(b).summary().to_string() + " by " +
                                     detail::cyclic(a).summary().to_string() + " that the sequence does not determine");
        std::vector<detail::Summand> all = a;
        all.insert(all.end(), b.begin(), b.end());
        std::stable_partition(all.begin(), all.end(), [](const detail::Summand& s) { return s.order == 0; });
        out.groups.push_back(detail::cyclic(all));

        if (j >= 0 && j <= n) {
            IntMatrix& g = gysin[static_cast<std::size_t>(j)];
            g = IntMatrix(all.size(), spec.hm.at(j).generator_count());
            for (std::size_t r = 0; r < all.size(); ++r)
                if (!all[r].from_kernel) g(r, all[r].source) = 1;
        }
    }
    out.gysin = std::move(gysin);
    out.derived = true;

    if (spec.hum && !(out.summary() == *spec.hum))
        throw StructureError(spec.name + ": supplied hum " + spec.hum->to_string() + " disagrees with the Gysin solution " +
                             out.summary().to_string());
    if (spec.gysin_module) {
        auto given = detail::module_from_entries(spec, out.groups, *spec.gysin_module);
        for (std::size_t j = 0; j < given.size(); ++j)
            if (!(given[j] == (*out.gysin)[j]))
                throw StructureError(spec.name + ": supplied gysin_module disagrees with the solved Gysin map in degree " +
                                     std::to_string(static_cast<int>(j) - n));
    }
    return out;
}

/// Rational rank bookkeeping of the long exact sequence:
/// rank H_k(UM) = rank coker e + rank ker e at every k.  Needs chi.
inline bool gysin_ranks_consistent(const CrossSpec& spec, const HomologySummary& hum) {
    if (!spec.euler) throw MissingData(spec.name + ": the rank check needs the Euler number");
    const int n = spec.n;
    auto rank = [&](int k) -> long { return static_cast<long>(spec.hm.at(k).free_rank); };
    // rank of e : H_k(M) -> H_{k-n}(M) over Q
    auto rank_e = [&](int k) -> long { return (k == n && *spec.euler != 0) ? 1 : 0; };
    for (int k = 0; k <= spec.um_dim(); ++k) {
        long a = (k + 1 - n >= 0 ? rank(k + 1 - n) : 0) - rank_e(k + 1);
        long b = rank(k) - rank_e(k);
        if (static_cast<long>(hum.at(k).free_rank) != a + b) return false;
    }
    return true;
}

/// HH_*(UM) as a ring given by the CrossSpec generator table.
inline TableRing unit_tangent_ring(const CrossSpec& spec, const UnitTangentHomology& um) {
    return TableRing(um.groups, spec.hum_products, spec.name + " HH(UM)");
}

} // namespace strop::spectral
