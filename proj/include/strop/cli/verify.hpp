#pragma once

// The invariant suite behind `strop verify`: every catalog complex and
// CROSS spec, plus seeded random bi-chains on tori.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "strop/chain/homology.hpp"
#include "strop/chain/ring.hpp"
#include "strop/io/json_io.hpp"
#include "strop/spectral/table.hpp"
#include "strop/torus/derivation.hpp"
#include "strop/torus/loops.hpp"
#include "strop/torus/samples.hpp"

namespace strop::cli {

struct CheckResult {
    std::string check;
    std::string subject;
    bool ok = true;
    std::string detail;
};

/// H_k(K; Z_or) against H^{n-k}(K; Z), group by group.
inline bool duality_holds(const SimplicialComplex& K, const OrientationCharacter& w) {
    HomologySummary tw = homology(validate_complex(K, w));
    HomologySummary co = cohomology(validate_complex(K, OrientationCharacter::trivial()));
    const int n = K.dim();
    for (int k = 0; k <= n; ++k)
        if (!(tw.at(k) == co.at(n - k))) return false;
    return true;
}

/// Unit, associativity and the sign (-1)^{(p-n)(q-n)} on generators.
inline std::string ring_law_failure(const IntersectionRing& ring) {
    const int n = ring.dim();
    std::vector<GradedClass> gens;
    for (int d = -n; d <= 0; ++d)
        for (std::size_t i = 0; i < ring.homology(d).size(); ++i) gens.push_back(ring.generator(d, i));
    const GradedClass one = ring.unit();
    for (const auto& x : gens)
        if (ring.product(one, x) != x || ring.product(x, one) != x) return "unit law at " + to_string(x);
    for (const auto& x : gens)
        for (const auto& y : gens) {
            if (x.degree + y.degree < -n) continue;
            GradedClass xy = ring.product(x, y), yx = ring.product(y, x);
            const int p = x.degree + n, q = y.degree + n;
            if (((p - n) * (q - n)) % 2 != 0)
                for (auto& c : yx.coords) c = -c;
            if (ring.homology(xy.degree).reduce(yx.coords) != xy.coords)
                return "commutativity sign at " + to_string(x) + ", " + to_string(y);
            for (const auto& z : gens) {
                if (x.degree + y.degree + z.degree < -n) continue;
                if (ring.product(xy, z) != ring.product(x, ring.product(y, z)))
                    return "associativity at " + to_string(x) + ", " + to_string(y) + ", " + to_string(z);
            }
        }
    return "";
}

inline std::vector<std::filesystem::path> catalog_files(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> out;
    if (!std::filesystem::is_directory(dir)) return out;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".json") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<CheckResult> run_invariant_suite(const std::filesystem::path& catalog, std::uint64_t seed) {
    std::vector<CheckResult> out;
    auto record = [&](const std::string& check, const std::string& subject, auto&& body) {
        CheckResult r{check, subject, true, ""};
        try {
            r.detail = body();
            r.ok = r.detail.empty();
            if (r.ok) r.detail = "ok";
        } catch (const std::exception& e) {
            r.ok = false;
            r.detail = e.what();
        }
        out.push_back(std::move(r));
    };

    for (const auto& path : catalog_files(catalog / "complexes")) {
        const std::string name = path.stem().string();
        io::ComplexFile f = io::read_complex(io::parse_json(io::read_text(path.string()), name), name);
        const OrientationCharacter w = f.signs ? *f.signs : orientation_character(f.complex);
        record("boundary squares to zero", name, [&] {
            validate_complex(f.complex, w);
            validate_complex(f.complex, OrientationCharacter::trivial());
            return std::string();
        });
        record("file signs match the orientation cover", name, [&] {
            return validate_complex(f.complex, w).boundaries ==
                           validate_complex(f.complex, orientation_character(f.complex)).boundaries
                       ? std::string()
                       : std::string("stored signs differ from the derived character");
        });
        record("Poincare duality", name, [&] {
            return duality_holds(f.complex, w) ? std::string() : std::string("twisted homology differs from dual cohomology");
        });
        record("intersection ring laws", name, [&] { return ring_law_failure(IntersectionRing(f.complex, w)); });
    }

    std::mt19937_64 rng(seed);
    record("total boundary squares to zero", "random bi-chains", [&] {
        for (int i = 0; i < 20; ++i) {
            const std::size_t n = 1 + rng() % 3;
            torus::BiChain b = torus::random_bichain(rng, n, rng() % (n + 1), rng() % (n + 1), 3);
            if (!torus::total_boundary(torus::total_boundary(b)).empty()) return "sample " + std::to_string(i);
        }
        return std::string();
    });
    record("derivation identity", "random transverse bi-chains", [&] {
        int done = 0;
        for (int i = 0; done < 20 && i < 200; ++i) {
            const std::size_t n = 1 + static_cast<std::size_t>(i % 3);
            const std::size_t p = 1 + rng() % n, q = n + 1 - p;
            torus::BiChain b = torus::random_bichain(rng, n, p, std::min(q, n), 2);
            if (!torus::is_transverse(b).transverse) continue;
            ++done;
            if (!torus::derivation_check(b).holds) return "sample " + std::to_string(i);
        }
        return done == 20 ? std::string() : std::string("too few transverse samples");
    });
    record("seed independence", "random bi-cycles on T^2 and T^3", [&] {
        for (int i = 0; i < 4; ++i) {
            const std::size_t n = 2 + static_cast<std::size_t>(i % 2);
            auto a = torus::random_cycle(rng, n, n - 1), b = torus::random_cycle(rng, n, 1 + static_cast<std::size_t>(i) % (n - 1));
            torus::BiChain ab = torus::cross(a.chain, b.chain);
            std::optional<IntVector> first;
            for (std::uint64_t s = 0; s < 5; ++s) {
                auto pert = torus::perturb_translate(ab, seed * 1000 + s + 1, Rational(1, 50));
                torus::Chain img = torus::chain_intersection(pert.chain).image();
                IntVector cls = torus::homology_class_torus(img, std::max(img.degree(), 0));
                if (!first) first = cls;
                if (cls != *first) return "bi-cycle " + std::to_string(i) + " changes class with the seed";
            }
        }
        return std::string();
    });

    for (const auto& path : catalog_files(catalog / "cross")) {
        const std::string name = path.stem().string();
        spectral::CrossSpec spec = io::read_cross_spec(io::parse_json(io::read_text(path.string()), name), name);
        record("page consistency", name, [&] {
            spec.validate();
            auto page = spectral::build_page1(spec, 6);
            if (!page.t || page.t->at != spectral::Bidegree{1, spec.alpha1 + spec.n - 2}) return std::string("T bidegree");
            if (!spectral::differential_d1(page).is_zero()) return std::string("d1 is not zero");
            if (!spectral::collapse_to_infinity(page).same_ring(page)) return std::string("E-infinity differs from E1");
            auto rep = spectral::check_ring_axioms(page, 3);
            if (!rep.holds) return rep.failure;
            auto um = spectral::gysin_unit_tangent_homology(spec);
            if (spectral::loop_homology_table(spec, 20) != spectral::series_table(spec, um.summary(), 20))
                return std::string("table differs from the Poincare series");
            if (spec.orientable && spec.euler && !spectral::gysin_ranks_consistent(spec, um.summary()))
                return std::string("Gysin ranks");
            return std::string();
        });
    }
    return out;
}

} // namespace strop::cli
