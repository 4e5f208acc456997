#pragma once

// The loop product on the free loop space of T^n, restricted to families of
// straight loops: intersect the base points, then concatenate loops, which
// adds windings.  Each component of LT^n (one per winding) retracts onto
// T^n through evaluation at the base point, so a class is a map
// winding -> periods of the base chain.

#include <cstdint>
#include <map>
#include <string>

#include "strop/torus/affine.hpp"
#include "strop/torus/bichain.hpp"
#include "strop/torus/transverse.hpp"

namespace strop::torus {

using LoopClass = std::map<IntVector, IntVector>;

/// Every cell of `base` as a loop family with the given winding.
inline Chain loop_family(const Chain& base, const IntVector& winding) {
    Chain out(base.ambient());
    for (const auto& [cell, k] : base.terms()) out.add(Cell{cell.verts, winding}, k);
    return out;
}

/// Class of a degree-k loop cycle; components with zero class are omitted.
inline LoopClass loop_class(const Chain& c, int k) {
    LoopClass out;
    for (const auto& [w, part] : by_winding(c)) {
        IntVector per = homology_class_torus(base_points(part), k);
        bool zero = true;
        for (const auto& x : per) zero = zero && x == 0;
        if (!zero) out.emplace(w, std::move(per));
    }
    return out;
}

inline std::string to_string(const LoopClass& c) {
    std::string out;
    for (const auto& [w, per] : c) {
        out += out.empty() ? "" : " ";
        out += "w=(";
        for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + w[i].str();
        out += "):[";
        for (std::size_t i = 0; i < per.size(); ++i) out += (i ? "," : "") + per[i].str();
        out += "]";
    }
    return out.empty() ? "0" : out;
}

struct LoopProduct {
    Chain composed;
    Perturbation perturbation;
};

/// a * b for loop cycles: perturb a by a seeded translation until a x b is
/// transverse, intersect, compose.
inline LoopProduct loop_product(const Chain& a, const Chain& b, std::uint64_t seed, const Rational& radius) {
    Perturbation pert = perturb_translate(cross(a, b), seed, radius);
    return {compose_loops(chain_intersection(pert.chain)), std::move(pert)};
}

} // namespace strop::torus
