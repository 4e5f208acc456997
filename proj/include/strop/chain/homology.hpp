#pragma once

// Homology and cohomology of integer chain complexes: summaries (free rank
// and invariant factors per degree) and explicit bases with coordinate maps.

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "strop/chain/complex.hpp"
#include "strop/errors.hpp"
#include "strop/smith.hpp"

namespace strop {

/// Z^free_rank + Z/t1 + Z/t2 + ... with t1 | t2 | ... and every ti >= 2.
struct GroupSummary {
    std::size_t free_rank = 0;
    IntVector torsion;

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    std::size_t generator_count() const { return free_rank + torsion.size(); }

    friend bool operator==(const GroupSummary&, const GroupSummary&) = default;

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        if (free_rank == 1) {
            os << "Z";
            first = false;
        } else if (free_rank > 1) {
            os << "Z^" << free_rank;
            first = false;
        }
        for (const auto& t : torsion) {
            os << (first ? "" : "+") << "Z/" << t;
            first = false;
        }
        return os.str();
    }
};

/// Canonical form of Z^free + (+)_i Z/d_i for arbitrary d_i >= 0 (d_i = 0
/// contributes a free summand, d_i = 1 nothing).
inline GroupSummary canonical_group(std::size_t free_rank, const IntVector& cyclic_orders) {
    GroupSummary g;
    g.free_rank = free_rank;
    IntMatrix rel(cyclic_orders.size(), cyclic_orders.size());
    for (std::size_t i = 0; i < cyclic_orders.size(); ++i) rel(i, i) = cyclic_orders[i];
    IntVector inv = invariant_factors(rel);
    g.free_rank += cyclic_orders.size() - inv.size();
    for (const auto& d : inv)
        if (d > 1) g.torsion.push_back(d);
    return g;
}

/// Per-degree groups, indexed from degree 0.
struct HomologySummary {
    std::vector<GroupSummary> groups;

    const GroupSummary& at(int k) const {
        static const GroupSummary zero;
        return (k < 0 || k >= static_cast<int>(groups.size())) ? zero : groups[static_cast<std::size_t>(k)];
    }

    int top_degree() const { return static_cast<int>(groups.size()) - 1; }

    friend bool operator==(const HomologySummary& a, const HomologySummary& b) {
        std::size_t n = std::max(a.groups.size(), b.groups.size());
        for (std::size_t k = 0; k < n; ++k)
            if (!(a.at(static_cast<int>(k)) == b.at(static_cast<int>(k)))) return false;
        return true;
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t k = 0; k < groups.size(); ++k)
            out += (k ? ", " : "") + std::string("H") + std::to_string(k) + "=" + groups[k].to_string();
        return out;
    }
};

namespace detail {

inline GroupSummary group_from_ranks(std::size_t n_k, std::size_t rank_out, const IntVector& in_factors) {
    GroupSummary g;
    g.free_rank = n_k - rank_out - in_factors.size();
    for (const auto& d : in_factors)
        if (d > 1) g.torsion.push_back(d);
    return g;
}

} // namespace detail

/// Free ranks and invariant factors of H_k for every k.
inline HomologySummary homology(const ChainComplexZ& c) {
    HomologySummary h;
    std::vector<IntVector> factors;
    for (int k = 0; k <= c.top_degree() + 1; ++k) factors.push_back(invariant_factors(c.boundary(k)));
    for (int k = 0; k <= c.top_degree(); ++k)
        h.groups.push_back(detail::group_from_ranks(c.rank(k), factors[static_cast<std::size_t>(k)].size(),
                                                    factors[static_cast<std::size_t>(k + 1)]));
    return h;
}

/// Cohomology computed from the transposed (coboundary) matrices.
inline HomologySummary cohomology(const ChainComplexZ& c) {
    HomologySummary h;
    std::vector<IntVector> factors;  // factors[k] : invariant factors of delta^{k-1} = d_k^T
    for (int k = 0; k <= c.top_degree() + 1; ++k) factors.push_back(invariant_factors(c.boundary(k).transpose()));
    for (int k = 0; k <= c.top_degree(); ++k)
        h.groups.push_back(detail::group_from_ranks(c.rank(k), factors[static_cast<std::size_t>(k + 1)].size(),
                                                    factors[static_cast<std::size_t>(k)]));
    return h;
}

/// An explicit presentation of ker(outgoing) / im(incoming).  Coordinates
/// list the free generators first, then the torsion generators in
/// invariant-factor order.  The basis is the canonical one produced by the
/// Smith forms of the two maps, so it is reproducible.
class HomologyBasis {
public:
    HomologyBasis() = default;

    /// outgoing: C_k -> C_{k-1} (rows x n_k); incoming: C_{k+1} -> C_k (n_k x cols).
    static HomologyBasis compute(const IntMatrix& outgoing, const IntMatrix& incoming) {
        HomologyBasis b;
        b.outgoing_ = outgoing;
        const std::size_t n = incoming.rows();
        SmithForm out = smith_normal_form(outgoing);
        const std::size_t r1 = out.rank;
        const std::size_t z = n - r1;
        IntMatrix kernel = out.V.block(0, n, r1, n);        // n x z
        IntMatrix kernel_inv = out.Vinv.block(r1, n, 0, n);  // z x n
        IntMatrix image = kernel_inv * incoming;            // z x cols
        SmithForm img = smith_normal_form(image);
        const std::size_t r2 = img.rank;
        b.projection_ = img.U * kernel_inv;  // z x n
        std::vector<std::size_t> torsion_rows;
        for (std::size_t i = 0; i < r2; ++i)
            if (img.diagonal[i] > 1) torsion_rows.push_back(i);
        b.group_.free_rank = z - r2;
        auto generator = [&](std::size_t i) {
            IntVector col = img.Uinv.column(i);
            return kernel * col;
        };
        for (std::size_t i = r2; i < z; ++i) {
            b.rows_.push_back(i);
            b.modulus_.push_back(0);
            b.generators_.push_back(generator(i));
        }
        for (std::size_t i : torsion_rows) {
            b.rows_.push_back(i);
            b.modulus_.push_back(img.diagonal[i]);
            b.group_.torsion.push_back(img.diagonal[i]);
            b.generators_.push_back(generator(i));
        }
        return b;
    }

    const GroupSummary& group() const { return group_; }
    std::size_t size() const { return generators_.size(); }
    const std::vector<IntVector>& generators() const { return generators_; }
    /// 0 for a free coordinate, the order for a torsion coordinate.
    const IntVector& modulus() const { return modulus_; }
    std::size_t chain_rank() const { return projection_.cols(); }

    bool is_cycle(const IntVector& chain) const {
        IntVector d = outgoing_ * chain;
        for (const auto& x : d)
            if (x != 0) return false;
        return true;
    }

    /// Coordinates of the class of a cycle.
    IntVector coordinates(const IntVector& chain) const {
        if (!is_cycle(chain)) throw NotACycleError("chain is not a cycle");
        IntVector t = projection_ * chain;
        IntVector c;
        for (std::size_t i = 0; i < rows_.size(); ++i) c.push_back(t[rows_[i]]);
        return reduce(std::move(c));
    }

    IntVector reduce(IntVector coords) const {
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (modulus_[i] != 0) coords[i] = mod_floor(coords[i], modulus_[i]);
        return coords;
    }

    /// A cycle representing the class with the given coordinates.
    IntVector representative(const IntVector& coords) const {
        IntVector chain(chain_rank(), Integer(0));
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (coords[i] == 0) continue;
            for (std::size_t j = 0; j < chain.size(); ++j) chain[j] += coords[i] * generators_[i][j];
        }
        return chain;
    }

    IntVector zero() const { return IntVector(size(), Integer(0)); }

private:
    IntMatrix outgoing_;
    IntMatrix projection_;
    std::vector<std::size_t> rows_;
    IntVector modulus_;
    std::vector<IntVector> generators_;
    GroupSummary group_;
};

inline HomologyBasis homology_basis(const ChainComplexZ& c, int k) {
    return HomologyBasis::compute(c.boundary(k), c.boundary(k + 1));
}

/// Basis of H^k from the coboundaries delta^k = d_{k+1}^T and delta^{k-1} = d_k^T.
inline HomologyBasis cohomology_basis(const ChainComplexZ& c, int k) {
    return HomologyBasis::compute(c.boundary(k + 1).transpose(), c.boundary(k).transpose());
}

} // namespace strop
