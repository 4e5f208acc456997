#pragma once

// The intersection ring on regraded twisted homology HH_i = H_{i+n}(M; Z_or)
// of a closed triangulated n-manifold, computed through Poincare duality
// ([M] n -) and the cup product on untwisted cochains.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "strop/chain/cochains.hpp"
#include "strop/chain/complex.hpp"
#include "strop/chain/homology.hpp"
#include "strop/errors.hpp"
#include "strop/smith.hpp"

namespace strop {

/// An element of HH_degree, in the coordinates of the ring's homology basis.
struct GradedClass {
    int degree = 0;
    IntVector coords;

    friend bool operator==(const GradedClass&, const GradedClass&) = default;
};

inline std::string to_string(const GradedClass& x) {
    std::string out = "HH" + std::to_string(x.degree) + "(";
    for (std::size_t i = 0; i < x.coords.size(); ++i) out += (i ? "," : "") + x.coords[i].str();
    return out + ")";
}

/// (-1)^{n(n-q)}, q the unregraded degree of the right factor.
inline int dold_sign(int n, int q) { return ((n * (n - q)) % 2 == 0) ? 1 : -1; }

class IntersectionRing {
public:
    /// w is the orientation character of K; `orientation` (+1 or -1) flips the
    /// sign convention of the fundamental class.
    IntersectionRing(SimplicialComplex K, OrientationCharacter w, int orientation = 1)
        : K_(std::move(K)), w_(std::move(w)) {
        n_ = K_.dim();
        twisted_ = validate_complex(K_, w_);
        plain_ = validate_complex(K_, OrientationCharacter::trivial());
        FundamentalClass f = fundamental_class(K_, w_);
        if (!f.generates) throw NotManifoldError("no fundamental class generating H_n with the given character");
        fundamental_ = f.cycle;
        for (auto& c : fundamental_.coeffs) c *= orientation;
        for (int k = 0; k <= n_; ++k) {
            hom_.push_back(homology_basis(twisted_, k));
            coh_.push_back(cohomology_basis(plain_, k));
        }
        for (int k = 0; k <= n_; ++k) duality_.push_back(duality_matrix(k));
    }

    int dim() const { return n_; }
    const SimplicialComplex& complex() const { return K_; }
    const OrientationCharacter& character() const { return w_; }
    const Chain& fundamental_cycle() const { return fundamental_; }

    /// Basis of HH_i = H_{i+n}(M; Z_or).
    const HomologyBasis& homology(int i) const { return hom_.at(static_cast<std::size_t>(check_degree(i) + n_)); }
    /// Basis of H^k(M; Z).
    const HomologyBasis& cohomology(int k) const { return coh_.at(static_cast<std::size_t>(k)); }

    GradedClass unit() const { return classify(0, fundamental_.coeffs); }

    GradedClass zero(int i) const { return {i, homology(i).zero()}; }

    GradedClass generator(int i, std::size_t j) const {
        GradedClass x = zero(i);
        x.coords.at(j) = 1;
        return x;
    }

    /// Class of a twisted cycle of unregraded degree i+n.
    GradedClass classify(int i, const IntVector& cycle) const { return {i, homology(i).coordinates(cycle)}; }

    /// (-1)^{k(k-1)/2} [M] n a for a cohomology class of degree k, as a
    /// class of HH_{-k}.  The sign makes products agree with transverse
    /// intersection oriented by "W, then the normal of the diagonal".
    GradedClass dual(int k, const IntVector& coh_coords) const {
        IntVector cochain = coh_.at(static_cast<std::size_t>(k)).representative(coh_coords);
        Chain c = cap_product(K_, w_, fundamental_, Cochain{k, false, cochain});
        if ((k * (k - 1) / 2) % 2 != 0)
            for (auto& x : c.coeffs) x = -x;
        return classify(-k, c.coeffs);
    }

    /// Inverse of `dual`: cohomology coordinates in degree -x.degree.
    IntVector dual_inverse(const GradedClass& x) const {
        const int k = -x.degree;
        const IntMatrix& m = duality_.at(static_cast<std::size_t>(k));
        const HomologyBasis& hb = homology(x.degree);
        IntMatrix sys(m.rows(), m.cols() + m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) sys(i, j) = m(i, j);
            sys(i, m.cols() + i) = hb.modulus()[i];
        }
        auto sol = solve_integer(sys, x.coords);
        if (!sol) throw StructureError("Poincare duality is not surjective in degree " + std::to_string(k));
        IntVector a(sol->begin(), sol->begin() + static_cast<long>(m.cols()));
        return coh_.at(static_cast<std::size_t>(k)).reduce(a);
    }

    /// x . y in HH_{i+j}.  With `with_dold_sign` false the transverse
    /// product is returned without its (-1)^{n(n-q)} correction; this is a
    /// test hook showing the correction is needed.
    GradedClass product(const GradedClass& x, const GradedClass& y, bool with_dold_sign = true) const {
        check_degree(x.degree);
        check_degree(y.degree);
        const int deg = x.degree + y.degree;
        if (deg < -n_)
            throw DegreeError("product of degrees " + std::to_string(x.degree) + " and " + std::to_string(y.degree) +
                              " falls below " + std::to_string(-n_));
        const int ka = -x.degree, kb = -y.degree;
        Cochain a{ka, false, coh_.at(static_cast<std::size_t>(ka)).representative(dual_inverse(x))};
        Cochain b{kb, false, coh_.at(static_cast<std::size_t>(kb)).representative(dual_inverse(y))};
        IntVector ab = cup_product(K_, w_, a, b).values;
        GradedClass out = dual(ka + kb, coh_.at(static_cast<std::size_t>(ka + kb)).coordinates(ab));
        // the transverse construction carries the Dold sign; the corrected
        // product multiplies it in once more, which cancels it
        if (!with_dold_sign) {
            int s = dold_sign(n_, y.degree + n_);
            if (s < 0)
                for (auto& v : out.coords) v = -v;
            out.coords = homology(deg).reduce(out.coords);
        }
        return out;
    }

private:
    SimplicialComplex K_;
    OrientationCharacter w_;
    int n_ = 0;
    ChainComplexZ twisted_, plain_;
    Chain fundamental_;
    std::vector<HomologyBasis> hom_, coh_;
    std::vector<IntMatrix> duality_;  // duality_[k] : H^k -> HH_{-k} in coordinates

    int check_degree(int i) const {
        if (i < -n_ || i > 0)
            throw DegreeError("regraded degree " + std::to_string(i) + " outside [" + std::to_string(-n_) + ", 0]");
        return i;
    }

    IntMatrix duality_matrix(int k) const {
        const HomologyBasis& cb = coh_.at(static_cast<std::size_t>(k));
        const HomologyBasis& hb = hom_.at(static_cast<std::size_t>(n_ - k));
        IntMatrix m(hb.size(), cb.size());
        for (std::size_t j = 0; j < cb.size(); ++j) {
            IntVector e(cb.size(), Integer(0));
            e[j] = 1;
            GradedClass d = dual(k, e);
            for (std::size_t i = 0; i < hb.size(); ++i) m(i, j) = d.coords[i];
        }
        return m;
    }
};

} // namespace strop
