#pragma once

// Pages of the length-filtration spectral sequence, regraded so that
// EE_{p,q} = H_{p+q+n}(L_p, L_{p-1}).  Page 1 is assembled from HH_*(M) in
// column 0 and, through the Thom isomorphism, HH_*(UM) T^p in column p.

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "strop/spectral/cross_spec.hpp"
#include "strop/spectral/gysin.hpp"

namespace strop::spectral {

struct Bidegree {
    int p = 0;
    int q = 0;
    auto operator<=>(const Bidegree&) const = default;
    int total() const { return p + q; }
};

inline std::string to_string(Bidegree b) { return "(" + std::to_string(b.p) + "," + std::to_string(b.q) + ")"; }

struct PageElement {
    Bidegree at;
    IntVector coords;
    friend bool operator==(const PageElement&, const PageElement&) = default;
};

struct PageWindow {
    int pmax = 0;
    int qmin = 0;
    int qmax = -1;
    bool contains(Bidegree b) const { return b.p >= 0 && b.p <= pmax && b.q >= qmin && b.q <= qmax; }
};

/// A bigraded ring restricted to a window: the groups, and the products of
/// generators that land in the window.  Products the input data does not
/// determine are recorded as such.
class SpectralPage {
public:
    static constexpr int kInfinity = std::numeric_limits<int>::max();

    int r = 1;
    PageWindow window;
    std::map<Bidegree, CyclicGroup> entries;  // non-zero entries only
    std::map<Bidegree, int> source_degree;    // unregraded degree in M (p = 0) or UM (p >= 1)
    std::optional<PageElement> t;             // the class T, when known

    const CyclicGroup& entry(Bidegree b) const {
        static const CyclicGroup none;
        auto it = entries.find(b);
        return it == entries.end() ? none : it->second;
    }

    bool empty() const { return entries.empty(); }

    PageElement zero(Bidegree b) const { return {b, entry(b).zero()}; }

    PageElement generator(Bidegree b, std::size_t i) const {
        PageElement x = zero(b);
        x.coords.at(i) = 1;
        return x;
    }

    PageElement unit() const { return generator({0, 0}, 0); }

    void set_product(Bidegree a, std::size_t i, Bidegree b, std::size_t j, IntVector value) {
        Bidegree c{a.p + b.p, a.q + b.q};
        table_[{a, i, b, j}] = entry(c).reduce(std::move(value));
        undetermined_.erase({a, i, b, j});
    }

    void mark_undetermined(Bidegree a, std::size_t i, Bidegree b, std::size_t j) { undetermined_.insert({a, i, b, j}); }

    /// nullopt when undetermined; DegreeError when the product leaves the window.
    std::optional<IntVector> generator_product(Bidegree a, std::size_t i, Bidegree b, std::size_t j) const {
        Bidegree c{a.p + b.p, a.q + b.q};
        if (!window.contains(c)) throw DegreeError("product lands at " + to_string(c) + ", outside the computed window");
        if (entry(c).empty()) return IntVector{};
        auto it = table_.find({a, i, b, j});
        if (it != table_.end()) return it->second;
        return std::nullopt;
    }

    bool determined(Bidegree a, std::size_t i, Bidegree b, std::size_t j) const {
        Bidegree c{a.p + b.p, a.q + b.q};
        if (!window.contains(c)) return false;
        return entry(c).empty() || table_.count({a, i, b, j}) > 0;
    }

    PageElement product(const PageElement& x, const PageElement& y) const {
        Bidegree c{x.at.p + y.at.p, x.at.q + y.at.q};
        if (!window.contains(c)) throw DegreeError("product lands at " + to_string(c) + ", outside the computed window");
        PageElement out = zero(c);
        for (std::size_t i = 0; i < x.coords.size(); ++i) {
            if (x.coords[i] == 0) continue;
            for (std::size_t j = 0; j < y.coords.size(); ++j) {
                if (y.coords[j] == 0) continue;
                auto v = generator_product(x.at, i, y.at, j);
                if (!v)
                    throw MissingData("page product of generators " + to_string(x.at) + "#" + std::to_string(i) +
                                      " and " + to_string(y.at) + "#" + std::to_string(j) + " is not determined");
                for (std::size_t t2 = 0; t2 < out.coords.size(); ++t2) out.coords[t2] += x.coords[i] * y.coords[j] * (*v)[t2];
            }
        }
        out.coords = entry(c).reduce(std::move(out.coords));
        return out;
    }

    std::size_t determined_products() const { return table_.size(); }
    std::size_t undetermined_products() const { return undetermined_.size(); }

    /// Same entries and the same products.
    bool same_ring(const SpectralPage& o) const {
        return entries == o.entries && table_ == o.table_ && undetermined_ == o.undetermined_;
    }

private:
    using Key = std::tuple<Bidegree, std::size_t, Bidegree, std::size_t>;
    std::map<Key, IntVector> table_;
    std::set<Key> undetermined_;
};

/// Window holding every non-zero entry of columns 0..pmax.
inline PageWindow default_window(const CrossSpec& spec, int pmax) {
    const int n = spec.n;
    PageWindow w{pmax, -n, 0};
    for (int p = 1; p <= pmax; ++p) {
        const int a = bott_index(spec, p);
        w.qmin = std::min(w.qmin, a - p - n);
        w.qmax = std::max(w.qmax, a - p + n - 1);
    }
    return w;
}

/// Page 1 over the given window.
inline SpectralPage build_page1(const CrossSpec& spec, const PageWindow& window) {
    if (window.pmax < 1) throw DegreeError("page 1 needs at least one positive column");
    const UnitTangentHomology um = gysin_unit_tangent_homology(spec);
    const TableRing hm = base_ring(spec);
    const TableRing hu = unit_tangent_ring(spec, um);
    const int n = spec.n, top = spec.um_dim();

    SpectralPage page;
    page.window = window;
    // regraded degree inside the ring that column p is built from
    auto ring_degree = [&](Bidegree b) {
        if (b.p == 0) return b.q;
        return b.p + b.q + n - bott_index(spec, b.p) - top;
    };
    for (int p = 0; p <= window.pmax; ++p)
        for (int q = window.qmin; q <= window.qmax; ++q) {
            Bidegree b{p, q};
            const int d = ring_degree(b);
            const CyclicGroup& g = p == 0 ? hm.group(d) : hu.group(d);
            if (g.empty()) continue;
            page.entries[b] = g;
            page.source_degree[b] = d + (p == 0 ? n : top);
        }

    const int c = spec.alpha1 + n - 2;
    if (window.contains({1, c})) page.t = page.generator({1, c}, 0);

    auto gysin_image = [&](int d, std::size_t i) -> std::optional<GradedClass> {
        if (!um.gysin) return std::nullopt;
        const IntMatrix& m = (*um.gysin)[static_cast<std::size_t>(d + n)];
        IntVector v(m.rows());
        for (std::size_t r2 = 0; r2 < m.rows(); ++r2) v[r2] = m(r2, i);
        return GradedClass{d, std::move(v)};
    };
    auto basis = [](const CyclicGroup& g, int d, std::size_t i) {
        GradedClass x{d, g.zero()};
        x.coords[i] = 1;
        return x;
    };

    for (const auto& [a, ga] : page.entries)
        for (const auto& [b, gb] : page.entries) {
            Bidegree target{a.p + b.p, a.q + b.q};
            if (!window.contains(target)) continue;
            const int da = ring_degree(a), db = ring_degree(b);
            for (std::size_t i = 0; i < ga.size(); ++i)
                for (std::size_t j = 0; j < gb.size(); ++j) {
                    std::optional<GradedClass> v;
                    try {
                        if (a.p == 0 && b.p == 0) {
                            auto w = hm.generator_product(da, i, db, j);
                            if (w) v = GradedClass{da + db, *w};
                        } else if (a.p == 0) {
                            if (auto m = gysin_image(da, i)) v = hu.product(*m, basis(gb, db, j));
                        } else if (b.p == 0) {
                            if (auto m = gysin_image(db, j)) v = hu.product(basis(ga, da, i), *m);
                        } else {
                            auto w = hu.generator_product(da, i, db, j);
                            if (w) v = GradedClass{da + db, *w};
                        }
                    } catch (const MissingData&) {
                        v.reset();
                    }
                    if (!v) {
                        page.mark_undetermined(a, i, b, j);
                        continue;
                    }
                    const CyclicGroup& gt = page.entry(target);
                    if (!gt.empty() && v->degree != ring_degree(target))
                        throw StructureError("T-power bidegree " + to_string(target) +
                                             " disagrees with the Thom-shift placement of degree " +
                                             std::to_string(v->degree));
                    page.set_product(a, i, b, j, gt.empty() ? IntVector{} : v->coords);
                }
        }
    return page;
}

inline SpectralPage build_page1(const CrossSpec& spec, int pmax) { return build_page1(spec, default_window(spec, pmax)); }

/// d^r : EE_{p,q} -> EE_{p-r, q+r-1}; absent entries are zero maps.
struct Differential {
    int r = 1;
    std::map<Bidegree, IntMatrix> maps;

    Bidegree target(Bidegree b) const { return {b.p - r, b.q + r - 1}; }

    PageElement apply(const SpectralPage& page, const PageElement& x) const {
        Bidegree t = target(x.at);
        PageElement out = page.zero(t);
        auto it = maps.find(x.at);
        if (it == maps.end()) return out;
        out.coords = page.entry(t).reduce(it->second * x.coords);
        return out;
    }

    bool is_zero() const {
        for (const auto& [b, m] : maps)
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j)
                    if (m(i, j) != 0) return false;
        return true;
    }
};

struct LawReport {
    bool holds = true;
    std::size_t checked = 0;
    std::string failure;
};

namespace detail {

inline bool is_zero_vec(const IntVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline IntVector add(IntVector a, const IntVector& b, int sign = 1) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += sign * b[i];
    return a;
}

} // namespace detail

/// d(xy) = d(x) y + (-1)^{|x|} x d(y) on every pair of generators whose
/// products are all determined inside the window.
inline LawReport check_derivation(const SpectralPage& page, const Differential& d) {
    LawReport rep;
    for (const auto& [a, ga] : page.entries)
        for (const auto& [b, gb] : page.entries)
            for (std::size_t i = 0; i < ga.size(); ++i)
                for (std::size_t j = 0; j < gb.size(); ++j) {
                    PageElement x = page.generator(a, i), y = page.generator(b, j);
                    PageElement dx = d.apply(page, x), dy = d.apply(page, y);
                    try {
                        if (!page.determined(a, i, b, j)) continue;
                        PageElement lhs = d.apply(page, page.product(x, y));
                        PageElement r1 = detail::is_zero_vec(dx.coords) ? page.zero(lhs.at) : page.product(dx, y);
                        PageElement r2 = detail::is_zero_vec(dy.coords) ? page.zero(lhs.at) : page.product(x, dy);
                        const int s = (a.total() % 2 == 0) ? 1 : -1;
                        IntVector rhs = page.entry(lhs.at).reduce(detail::add(r1.coords, r2.coords, s));
                        ++rep.checked;
                        if (lhs.coords != rhs) {
                            rep.holds = false;
                            rep.failure = "derivation law fails on " + to_string(a) + "#" + std::to_string(i) + " * " +
                                          to_string(b) + "#" + std::to_string(j);
                            return rep;
                        }
                    } catch (const DegreeError&) {
                    } catch (const MissingData&) {
                    }
                }
    return rep;
}

inline bool squares_to_zero(const SpectralPage& page, const Differential& d) {
    for (const auto& [b, g] : page.entries)
        for (std::size_t i = 0; i < g.size(); ++i)
            if (!detail::is_zero_vec(d.apply(page, d.apply(page, page.generator(b, i))).coords)) return false;
    return true;
}

/// Unit law on every generator, associativity on every determined triple
/// with all factors in columns <= pcap.
inline LawReport check_ring_axioms(const SpectralPage& page, int pcap) {
    LawReport rep;
    const PageElement one = page.unit();
    std::vector<PageElement> gens;
    for (const auto& [b, g] : page.entries)
        for (std::size_t i = 0; i < g.size(); ++i) gens.push_back(page.generator(b, i));
    auto fail = [&](const std::string& what) {
        rep.holds = false;
        rep.failure = what;
        return rep;
    };
    for (const auto& x : gens) {
        ++rep.checked;
        if (page.product(one, x) != x || page.product(x, one) != x) return fail("unit law fails at " + to_string(x.at));
    }
    for (const auto& x : gens)
        for (const auto& y : gens)
            for (const auto& z : gens) {
                if (x.at.p > pcap || y.at.p > pcap || z.at.p > pcap) continue;
                if (!page.window.contains({x.at.p + y.at.p + z.at.p, x.at.q + y.at.q + z.at.q})) continue;
                try {
                    PageElement l = page.product(page.product(x, y), z);
                    PageElement r2 = page.product(x, page.product(y, z));
                    ++rep.checked;
                    if (l != r2) return fail("associativity fails at " + to_string(x.at) + "," + to_string(y.at) + "," +
                                             to_string(z.at));
                } catch (const MissingData&) {
                } catch (const DegreeError&) {
                }
            }
    return rep;
}

/// The shape of the vanishing argument for d^r, r >= 1: d^r is zero on
/// columns 0 and 1 (column 0 maps to a negative column; column 1 maps into
/// HH_*(L_0), which is a direct factor when r = 1 and a negative column when
/// r >= 2), and every generator in a column p >= 2 is a column-1 generator
/// times T^{p-1}.  The derivation law then forces d^r = 0 everywhere.
struct VanishingArgument {
    bool t_is_cycle = false;
    bool generated = true;
    std::string gap;
    LawReport derivation;
    bool holds() const { return t_is_cycle && generated && derivation.holds; }
};

inline VanishingArgument vanishing_argument(const SpectralPage& page, const Differential& d) {
    VanishingArgument out;
    if (page.t) out.t_is_cycle = detail::is_zero_vec(d.apply(page, *page.t).coords);
    if (!page.t) out.gap = "T lies outside the window";
    std::vector<PageElement> powers;  // powers[k] = T^k
    if (page.t) {
        powers.push_back(page.unit());
        for (int k = 1; k < page.window.pmax && out.generated; ++k) {
            try {
                powers.push_back(page.product(powers.back(), *page.t));
            } catch (const Error&) {
                break;
            }
        }
    }
    for (const auto& [b, g] : page.entries) {
        if (b.p < 2) continue;
        const std::size_t k = static_cast<std::size_t>(b.p - 1);
        Bidegree low{1, b.q - (b.p - 1) * (page.t ? page.t->at.q : 0)};
        if (k >= powers.size() || page.entry(low).size() != g.size()) {
            out.generated = false;
            out.gap = "entry " + to_string(b) + " is not reached from column 1";
            break;
        }
        for (std::size_t i = 0; i < g.size() && out.generated; ++i) {
            try {
                if (page.product(page.generator(low, i), powers[k]) != page.generator(b, i)) {
                    out.generated = false;
                    out.gap = "generator " + to_string(b) + "#" + std::to_string(i) + " is not y T^" + std::to_string(k);
                }
            } catch (const Error& e) {
                out.generated = false;
                out.gap = e.what();
            }
        }
        if (!out.generated) break;
    }
    out.derivation = check_derivation(page, d);
    return out;
}

inline Differential zero_differential(const SpectralPage& page, int r) {
    Differential d;
    d.r = r;
    for (const auto& [b, g] : page.entries) {
        Bidegree t = d.target(b);
        d.maps.emplace(b, IntMatrix(page.entry(t).size(), g.size()));
    }
    return d;
}

/// d^1 on page 1: the zero map, after checking that the vanishing argument
/// applies to this page.
inline Differential differential_d1(const SpectralPage& page) {
    Differential d = zero_differential(page, 1);
    if (page.empty()) return d;
    VanishingArgument arg = vanishing_argument(page, d);
    if (!arg.holds())
        throw StructureError("d1 vanishing argument does not apply: " +
                             (arg.gap.empty() ? arg.derivation.failure : arg.gap));
    return d;
}

/// E^infinity: every d^r vanishes by the same argument, so the page is
/// unchanged as a bigraded ring.
inline SpectralPage collapse_to_infinity(const SpectralPage& page1) {
    SpectralPage out = page1;
    out.r = SpectralPage::kInfinity;
    if (page1.empty()) return out;
    differential_d1(page1);
    // pages r >= 2 equal page 1; d^r moves r >= 2 columns left, so columns 0
    // and 1 map to negative columns and generation does the rest
    for (int r = 2; r <= page1.window.pmax; ++r) {
        VanishingArgument arg = vanishing_argument(out, zero_differential(out, r));
        if (!arg.holds()) throw StructureError("d" + std::to_string(r) + " vanishing argument does not apply: " + arg.gap);
    }
    return out;
}

} // namespace strop::spectral
