#pragma once

// Chain-level check of  d(u.v) = (du).v + (-1)^{n-p} u.(dv)  for transverse
// bi-chains, term by term.

#include <optional>
#include <string>

#include "strop/torus/bichain.hpp"
#include "strop/torus/transverse.hpp"

namespace strop::torus {

struct DerivationReport {
    bool holds = true;
    Chain lhs, rhs;                     // totals over all terms
    std::optional<std::size_t> failing_term;
};

inline DerivationReport derivation_check(const BiChain& b) {
    const std::size_t n = b.ambient();
    DerivationReport rep{true, Chain(n), Chain(n), std::nullopt};
    for (std::size_t i = 0; i < b.terms().size(); ++i) {
        const BiTerm& t = b.terms()[i];
        BiChain single(n);
        single.add(t.coef, t.left, t.right);
        Chain lhs = chain_intersection(single).image().boundary();
        Chain rhs = chain_intersection(single.boundary_left()).image();
        const long e = static_cast<long>(n) - t.left.dim();
        rhs.add(chain_intersection(single.boundary_right()).image(), (e % 2 == 0) ? 1 : -1);
        if (!(lhs == rhs) && !rep.failing_term) {
            rep.holds = false;
            rep.failing_term = i;
        }
        rep.lhs.add(lhs);
        rep.rhs.add(rhs);
    }
    return rep;
}

} // namespace strop::torus
