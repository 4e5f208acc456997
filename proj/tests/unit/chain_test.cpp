#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "strop/chain/catalog.hpp"
#include "strop/chain/cochains.hpp"
#include "strop/chain/homology.hpp"
#include "strop/chain/ring.hpp"
#include "strop/smith.hpp"

using namespace strop;

namespace {

IntMatrix mat(std::vector<std::vector<long>> rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

HomologySummary groups(std::vector<GroupSummary> g) { return {std::move(g)}; }

GroupSummary Z(std::size_t r = 1) { return {r, {}}; }
GroupSummary Zmod(long d) { return {0, {Integer(d)}}; }
GroupSummary Z0() { return {}; }

} // namespace

TEST(Smith, ExampleMatrices) {
    EXPECT_EQ(invariant_factors(IntMatrix::identity(3)), (IntVector{1, 1, 1}));
    auto f = smith_normal_form(mat({{2, 4}, {6, 8}}));
    EXPECT_EQ(f.diagonal, (IntVector{2, 4}));
    EXPECT_EQ(f.U * mat({{2, 4}, {6, 8}}) * f.V, f.D);
    EXPECT_TRUE(invariant_factors(IntMatrix(3, 4)).empty());
}

TEST(Smith, RandomAgainstDeterminantalDivisors) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        IntMatrix a(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) a(i, j) = static_cast<long>(rng() % 13) - 6;
        auto f = smith_normal_form(a);
        EXPECT_EQ(f.U * a * f.V, f.D);
        EXPECT_EQ(f.U * f.Uinv, IntMatrix::identity(r));
        EXPECT_EQ(f.V * f.Vinv, IntMatrix::identity(c));
        EXPECT_EQ(f.diagonal, oracle::invariant_factors_by_minors(a));
    }
}

TEST(Smith, OverflowFallsBackToBigIntegers) {
    IntMatrix a = mat({{1, 0}, {0, 1}});
    a(0, 0) = Integer("100000000000000000000");
    a(0, 1) = Integer("99999999999999999999");
    a(1, 0) = Integer("3");
    a(1, 1) = Integer("7");
    auto f = smith_normal_form(a);
    EXPECT_EQ(f.U * a * f.V, f.D);
    EXPECT_EQ(f.diagonal, oracle::invariant_factors_by_minors(a));
}

TEST(Smith, SolveInteger) {
    IntMatrix a = mat({{2, 0}, {0, 3}});
    EXPECT_EQ(*solve_integer(a, {4, 9}), (IntVector{2, 3}));
    EXPECT_FALSE(solve_integer(a, {1, 0}).has_value());
}

TEST(Complex, BoundarySquaresToZero) {
    for (const auto& K : {catalog::tetrahedron_boundary(), catalog::torus_grid(2), catalog::torus_grid(3),
                          catalog::rp2(), catalog::klein_bottle(), catalog::rp3()}) {
        auto w = orientation_character(K);
        EXPECT_NO_THROW(validate_complex(K, w));
        EXPECT_NO_THROW(validate_complex(K, OrientationCharacter::trivial()));
    }
}

TEST(Complex, MissingFaceIsStructureError) {
    auto K = SimplicialComplex::from_simplices({{{0}, {1}, {2}}, {{0, 1}, {1, 2}}, {{0, 1, 2}}});
    EXPECT_THROW(validate_complex(K, OrientationCharacter::trivial()), StructureError);
}

TEST(Complex, InconsistentSignsAreRejected) {
    auto K = catalog::tetrahedron_boundary();
    OrientationCharacter w;
    w.set({0, 1, 2}, 0, -1);
    EXPECT_THROW(validate_complex(K, w), SignCocycleError);
}

TEST(Complex, CatalogSizes) {
    EXPECT_EQ(catalog::torus_grid(3).count(0), 27u);
    EXPECT_EQ(catalog::torus_grid(3).count(3), 162u);
    EXPECT_EQ(catalog::rp2().count(0), 6u);
    EXPECT_EQ(catalog::rp2().count(2), 10u);
    EXPECT_EQ(catalog::rp3().count(0), 40u);
    EXPECT_EQ(catalog::rp3().count(3), 192u);
    EXPECT_EQ(catalog::klein_bottle().euler_characteristic(), 0);
}

TEST(Complex, CharacterAgreesWithDoubleCover) {
    auto ico = catalog::icosahedron();
    auto K = catalog::rp2();
    auto from_cover = character_from_double_cover(K, ico.complex, ico.projection);
    EXPECT_NO_THROW(validate_complex(K, from_cover));
    EXPECT_EQ(homology(validate_complex(K, from_cover)), homology(validate_complex(K, orientation_character(K))));
}

TEST(Homology, UntwistedCatalog) {
    auto h = [](const SimplicialComplex& K) { return homology(validate_complex(K, OrientationCharacter::trivial())); };
    EXPECT_EQ(h(catalog::tetrahedron_boundary()), groups({Z(), Z0(), Z()}));
    EXPECT_EQ(h(catalog::torus_grid(2)), groups({Z(), Z(2), Z()}));
    EXPECT_EQ(h(catalog::torus_grid(3)), groups({Z(), Z(3), Z(3), Z()}));
    EXPECT_EQ(h(catalog::rp2()), groups({Z(), Zmod(2), Z0()}));
    EXPECT_EQ(h(catalog::klein_bottle()), groups({Z(), {1, {Integer(2)}}, Z0()}));
    EXPECT_EQ(h(catalog::rp3()), groups({Z(), Zmod(2), Z0(), Z()}));
}

TEST(Homology, TwistedCatalog) {
    auto h = [](const SimplicialComplex& K) { return homology(validate_complex(K, orientation_character(K))); };
    EXPECT_EQ(h(catalog::rp2()), groups({Zmod(2), Z0(), Z()}));
    EXPECT_EQ(h(catalog::klein_bottle()), groups({Zmod(2), Z(), Z()}));
    EXPECT_TRUE(orientation_character(catalog::rp3()).is_trivial());
    EXPECT_TRUE(orientation_character(catalog::torus_grid(2)).is_trivial());
}

TEST(Homology, InputOrderDoesNotMatter) {
    auto K = catalog::klein_bottle();
    std::vector<Simplex> facets = K.simplices(2);
    std::reverse(facets.begin(), facets.end());
    auto L = SimplicialComplex::from_facets(facets);
    EXPECT_EQ(homology(validate_complex(L, orientation_character(L))),
              homology(validate_complex(K, orientation_character(K))));
}

TEST(Homology, BasisCoordinatesRoundTrip) {
    auto K = catalog::klein_bottle();
    auto C = validate_complex(K, OrientationCharacter::trivial());
    auto b = homology_basis(C, 1);
    EXPECT_EQ(b.group(), (GroupSummary{1, {Integer(2)}}));
    for (std::size_t i = 0; i < b.size(); ++i) {
        IntVector e = b.zero();
        e[i] = 1;
        EXPECT_EQ(b.coordinates(b.representative(e)), e);
    }
    IntVector two_torsion = b.zero();
    two_torsion[1] = 2;
    EXPECT_EQ(b.coordinates(b.representative(two_torsion)), b.zero());
}

TEST(Cochains, CupLeibniz) {
    for (const auto& K : {catalog::torus_grid(2), catalog::klein_bottle(), catalog::rp2()}) {
        auto w = orientation_character(K);
        std::mt19937_64 rng(11);
        for (int t = 0; t < 20; ++t)
            for (int p = 0; p <= 1; ++p)
                for (bool ta : {false, true})
                    for (bool tb : {false, true}) {
                        Cochain a{p, ta, {}}, b{1 - p, tb, {}};
                        for (std::size_t i = 0; i < K.count(p); ++i) a.values.push_back(long(rng() % 5) - 2);
                        for (std::size_t i = 0; i < K.count(1 - p); ++i) b.values.push_back(long(rng() % 5) - 2);
                        auto lhs = coboundary(K, w, cup_product(K, w, a, b));
                        auto r1 = cup_product(K, w, coboundary(K, w, a), b);
                        auto r2 = cup_product(K, w, a, coboundary(K, w, b));
                        IntVector rhs(lhs.values.size());
                        for (std::size_t i = 0; i < rhs.size(); ++i)
                            rhs[i] = r1.values[i] + (p % 2 == 0 ? 1 : -1) * r2.values[i];
                        EXPECT_EQ(lhs.values, rhs);
                    }
    }
}

TEST(Cochains, CupWithUnitAndDegreeError) {
    auto K = catalog::torus_grid(2);
    auto w = OrientationCharacter::trivial();
    Cochain a{1, false, IntVector(K.count(1), Integer(0))};
    a.values[3] = 5;
    EXPECT_EQ(cup_product(K, w, a, unit_cochain(K)).values, a.values);
    EXPECT_EQ(cup_product(K, w, unit_cochain(K), a).values, a.values);
    Cochain top{2, false, IntVector(K.count(2), Integer(1))};
    EXPECT_THROW(cup_product(K, w, top, a), DegreeError);
}

TEST(Cochains, FundamentalClass) {
    auto S = catalog::tetrahedron_boundary();
    auto f = fundamental_class(S, OrientationCharacter::trivial());
    EXPECT_TRUE(f.generates);
    EXPECT_EQ(f.cycle.coeffs, (IntVector{1, -1, 1, -1}));

    auto P = catalog::rp2();
    auto w = orientation_character(P);
    auto g = fundamental_class(P, w);
    EXPECT_TRUE(g.generates);
    EXPECT_TRUE(chain_boundary(P, w, g.cycle).coeffs == IntVector(P.count(1), Integer(0)));
    auto basis = homology_basis(validate_complex(P, w), 2);
    auto c = basis.coordinates(g.cycle.coeffs);
    EXPECT_EQ(abs(c.at(0)), 1);

    auto h = fundamental_class(P, OrientationCharacter::trivial());
    EXPECT_FALSE(h.generates);

    auto broken = SimplicialComplex::from_facets({{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
    EXPECT_THROW(fundamental_class(broken, OrientationCharacter::trivial()), NotManifoldError);
}

TEST(Cochains, TwistedCapIsACycle) {
    for (const auto& K : {catalog::rp2(), catalog::klein_bottle()}) {
        auto w = orientation_character(K);
        auto z = fundamental_class(K, w).cycle;
        auto C = validate_complex(K, OrientationCharacter::trivial());
        for (int k = 0; k <= 2; ++k) {
            auto cb = cohomology_basis(C, k);
            for (std::size_t i = 0; i < cb.size(); ++i) {
                IntVector e = cb.zero();
                e[i] = 1;
                Chain c = cap_product(K, w, z, Cochain{k, false, cb.representative(e)});
                EXPECT_TRUE(c.twisted);
                if (c.degree > 0) {
                    auto d = chain_boundary(K, w, c);
                    EXPECT_TRUE(std::all_of(d.coeffs.begin(), d.coeffs.end(), [](const Integer& x) { return x == 0; }));
                }
            }
        }
    }
}

TEST(Ring, TorusTwo) {
    IntersectionRing R(catalog::torus_grid(2), OrientationCharacter::trivial());
    GradedClass one = R.unit();
    GradedClass a = R.generator(-1, 0), b = R.generator(-1, 1);
    EXPECT_EQ(R.product(one, a), a);
    EXPECT_EQ(R.product(a, one), a);
    GradedClass ab = R.product(a, b), ba = R.product(b, a);
    EXPECT_EQ(abs(ab.coords.at(0)), 1);
    EXPECT_EQ(ab.coords[0], -ba.coords[0]);
    EXPECT_EQ(R.product(a, a), R.zero(-2));
    EXPECT_EQ(R.product(b, b), R.zero(-2));
}

TEST(Ring, SphereDegreeError) {
    IntersectionRing R(catalog::tetrahedron_boundary(), OrientationCharacter::trivial());
    GradedClass pt = R.generator(-2, 0);
    EXPECT_THROW(R.product(pt, pt), DegreeError);
    EXPECT_EQ(R.product(R.unit(), pt), pt);
}

TEST(Ring, ProjectivePlaneTwisted) {
    auto K = catalog::rp2();
    IntersectionRing R(K, orientation_character(K));
    EXPECT_EQ(R.homology(0).group(), Z());
    EXPECT_EQ(R.homology(-2).group(), Zmod(2));
    GradedClass pt = R.generator(-2, 0);
    EXPECT_EQ(R.product(R.unit(), pt), pt);
}

TEST(Homology, TwistedMatchesDualCohomologyOracle) {
    for (const SimplicialComplex& K : {catalog::tetrahedron_boundary(), catalog::torus_grid(2), catalog::torus_grid(3),
                                       catalog::rp2(), catalog::klein_bottle(), catalog::rp3()}) {
        std::vector<std::vector<int>> top;
        for (const auto& s : K.simplices(K.dim())) top.emplace_back(s.begin(), s.end());
        auto dual = oracle::duality_transcription(oracle::cohomology(top));
        HomologySummary h = homology(validate_complex(K, orientation_character(K)));
        ASSERT_EQ(h.groups.size(), dual.size());
        for (std::size_t k = 0; k < dual.size(); ++k) {
            EXPECT_EQ(h.groups[k].free_rank, dual[k].free) << k;
            EXPECT_EQ(h.groups[k].torsion, dual[k].torsion) << k;
        }
    }
}
