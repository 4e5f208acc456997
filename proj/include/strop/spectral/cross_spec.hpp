#pragma once

// Input data for a closed manifold all of whose primitive geodesics are
// simple closed loops of one common length, and the small graded rings
// (given by generator tables) that the page-1 computation multiplies in.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "strop/chain/homology.hpp"
#include "strop/chain/ring.hpp"
#include "strop/errors.hpp"

namespace strop::spectral {

/// Direct sum of cyclic groups with one chosen generator each; order 0 is Z.
struct CyclicGroup {
    IntVector orders;

    std::size_t size() const { return orders.size(); }
    bool empty() const { return orders.empty(); }

    GroupSummary summary() const {
        std::size_t free = 0;
        IntVector finite;
        for (const auto& o : orders) {
            if (o == 0)
                ++free;
            else
                finite.push_back(o);
        }
        return canonical_group(free, finite);
    }

    IntVector zero() const { return IntVector(orders.size(), Integer(0)); }

    IntVector reduce(IntVector c) const {
        for (std::size_t i = 0; i < c.size(); ++i)
            if (orders[i] != 0) c[i] = mod_floor(c[i], orders[i]);
        return c;
    }

    /// Free generators first, then one per invariant factor.
    static CyclicGroup from_summary(const GroupSummary& g) {
        CyclicGroup c;
        c.orders.assign(g.free_rank, Integer(0));
        for (const auto& t : g.torsion) c.orders.push_back(t);
        return c;
    }

    friend bool operator==(const CyclicGroup&, const CyclicGroup&) = default;
};

/// x_i . y_j = value, degrees regraded (in [-dim, 0]).
struct ProductEntry {
    int left_degree = 0;
    std::size_t left = 0;
    int right_degree = 0;
    std::size_t right = 0;
    IntVector value;
};

/// Image of generator `index` of degree `degree` under the regraded Gysin map.
struct ModuleEntry {
    int degree = 0;
    std::size_t index = 0;
    IntVector value;
};

/// A regraded intersection ring known only through its groups and a table
/// of generator products.  Products forced by the unit or by degree are
/// filled in; any other product missing from the table is undetermined.
class TableRing {
public:
    TableRing() = default;

    /// groups[k] is the unregraded degree-k group, k = 0..dim.
    TableRing(std::vector<CyclicGroup> groups, const std::vector<ProductEntry>& table, const std::string& label)
        : groups_(std::move(groups)), label_(label) {
        dim_ = static_cast<int>(groups_.size()) - 1;
        if (dim_ < 0 || groups_.back().orders != IntVector{0})
            throw StructureError(label + ": the top group must be Z (the fundamental class)");
        for (const auto& e : table) {
            const CyclicGroup& a = group(e.left_degree);
            const CyclicGroup& b = group(e.right_degree);
            const int target = e.left_degree + e.right_degree;
            if (e.left >= a.size() || e.right >= b.size())
                throw StructureError(label + ": product table names a missing generator");
            if (e.value.size() != group(target).size())
                throw StructureError(label + ": product value has the wrong length in degree " + std::to_string(target));
            table_[{e.left_degree, e.left, e.right_degree, e.right}] = group(target).reduce(e.value);
        }
    }

    int dim() const { return dim_; }
    const std::string& label() const { return label_; }

    /// HH_d; the empty group outside [-dim, 0].
    const CyclicGroup& group(int d) const {
        static const CyclicGroup none;
        if (d > 0 || d < -dim_) return none;
        return groups_[static_cast<std::size_t>(d + dim_)];
    }

    GradedClass unit() const { return {0, IntVector{1}}; }

    /// Product of two generators, or nullopt when the table does not say.
    std::optional<IntVector> generator_product(int da, std::size_t i, int db, std::size_t j) const {
        const CyclicGroup& target = group(da + db);
        if (target.empty()) return target.zero();
        if (da == 0) {
            IntVector out = target.zero();
            out[j] = 1;
            return target.reduce(out);
        }
        if (db == 0) {
            IntVector out = target.zero();
            out[i] = 1;
            return target.reduce(out);
        }
        auto it = table_.find({da, i, db, j});
        if (it == table_.end()) return std::nullopt;
        return it->second;
    }

    /// Bilinear extension; MissingData when a needed generator product is
    /// undetermined.
    GradedClass product(const GradedClass& x, const GradedClass& y) const {
        const int d = x.degree + y.degree;
        IntVector out = group(d).zero();
        for (std::size_t i = 0; i < x.coords.size(); ++i) {
            if (x.coords[i] == 0) continue;
            for (std::size_t j = 0; j < y.coords.size(); ++j) {
                if (y.coords[j] == 0) continue;
                auto v = generator_product(x.degree, i, y.degree, j);
                if (!v)
                    throw MissingData(label_ + ": no product given for generators (" + std::to_string(x.degree) + "," +
                                      std::to_string(i) + ") and (" + std::to_string(y.degree) + "," +
                                      std::to_string(j) + ")");
                for (std::size_t t = 0; t < out.size(); ++t) out[t] += x.coords[i] * y.coords[j] * (*v)[t];
            }
        }
        return {d, group(d).reduce(std::move(out))};
    }

private:
    std::vector<CyclicGroup> groups_;
    int dim_ = -1;
    std::string label_;
    std::map<std::tuple<int, std::size_t, int, std::size_t>, IntVector> table_;
};

struct CrossSpec {
    std::string name;
    int n = 0;
    bool orientable = true;
    int alpha1 = 0;
    HomologySummary hm;                 // H_k(M; Z_or), k = 0..n
    std::optional<Integer> euler;
    std::optional<HomologySummary> hum; // H_k(UM; Z), k = 0..2n-1
    std::vector<ProductEntry> hm_products;
    std::vector<ProductEntry> hum_products;
    std::optional<std::vector<ModuleEntry>> gysin_module;

    int um_dim() const { return 2 * n - 1; }

    void validate() const {
        if (n < 2) throw StructureError(name + ": dimension must be at least 2 (got " + std::to_string(n) + ")");
        if (alpha1 < 0) throw StructureError(name + ": alpha1 must be non-negative");
        if (hm.top_degree() != n) throw StructureError(name + ": hm must list degrees 0.." + std::to_string(n));
        if (!(hm.at(n) == GroupSummary{1, {}})) throw StructureError(name + ": H_n(M; Z_or) must be Z");
        if (hum && hum->top_degree() != um_dim())
            throw StructureError(name + ": hum must list degrees 0.." + std::to_string(um_dim()));
        if (orientable) {
            for (int k = 0; k <= n; ++k) {
                bool ok = hm.at(k).free_rank == hm.at(n - k).free_rank &&
                          hm.at(k).torsion == hm.at(n - k - 1).torsion;
                if (!ok) throw StructureError(name + ": hm violates Poincare duality in degree " + std::to_string(k));
            }
        }
    }
};

/// alpha_p = p alpha_1 + (p-1)(n-1), alpha_0 = 0.
inline int bott_index(int n, int alpha1, int p) {
    if (p < 0) throw DegreeError("Bott index of a negative iterate");
    return p == 0 ? 0 : p * alpha1 + (p - 1) * (n - 1);
}

inline int bott_index(const CrossSpec& spec, int p) { return bott_index(spec.n, spec.alpha1, p); }

inline TableRing base_ring(const CrossSpec& spec) {
    std::vector<CyclicGroup> g;
    for (int k = 0; k <= spec.n; ++k) g.push_back(CyclicGroup::from_summary(spec.hm.at(k)));
    return TableRing(std::move(g), spec.hm_products, spec.name + " HH(M)");
}

} // namespace strop::spectral
