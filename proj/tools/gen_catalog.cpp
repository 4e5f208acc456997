// Writes the bundled catalog: complexes/*.json and cross/*.json.
// Usage: gen_catalog <catalog-dir>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "strop/chain/catalog.hpp"
#include "strop/chain/ring.hpp"
#include "strop/io/json_io.hpp"
#include "strop/torus/loops.hpp"
#include "strop/torus/samples.hpp"

using namespace strop;
namespace fs = std::filesystem;

namespace {

void write(const fs::path& path, const io::Json& j) {
    std::ofstream out(path, std::ios::binary);
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

HomologySummary twisted_homology(const SimplicialComplex& K, const OrientationCharacter& w) {
    return homology(validate_complex(K, w));
}

/// Every generator product of the complex's intersection ring.
std::vector<spectral::ProductEntry> ring_table(const IntersectionRing& ring) {
    std::vector<spectral::ProductEntry> out;
    const int n = ring.dim();
    for (int a = -n; a < 0; ++a)
        for (int b = -n; b < 0; ++b) {
            if (a + b < -n) continue;
            for (std::size_t i = 0; i < ring.homology(a).size(); ++i)
                for (std::size_t j = 0; j < ring.homology(b).size(); ++j) {
                    GradedClass x = ring.product(ring.generator(a, i), ring.generator(b, j));
                    if (x.coords.empty()) continue;
                    out.push_back({a, i, b, j, x.coords});
                }
        }
    return out;
}

HomologySummary sphere(int n) {
    HomologySummary h;
    h.groups.assign(static_cast<std::size_t>(n + 1), GroupSummary{});
    h.groups.front() = GroupSummary{1, {}};
    h.groups.back() = GroupSummary{1, {}};
    return h;
}

io::Json cross_json(const spectral::CrossSpec& s, const std::string& note) {
    io::Json j = io::cross_spec_to_json(s);
    j["notes"] = note;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: gen_catalog <catalog-dir>\n";
        return 2;
    }
    const fs::path root = argv[1];
    fs::create_directories(root / "complexes");
    fs::create_directories(root / "cross");
    fs::create_directories(root / "chains");
    fs::create_directories(root / "bichains");

    const SimplicialComplex rp2 = catalog::rp2(), rp3 = catalog::rp3(), klein = catalog::klein_bottle();
    const OrientationCharacter w_rp2 = orientation_character(rp2), w_klein = orientation_character(klein);

    write(root / "complexes/s2.json", io::complex_to_json("s2", catalog::tetrahedron_boundary(), std::nullopt));
    write(root / "complexes/t2.json", io::complex_to_json("t2", catalog::torus_grid(2), std::nullopt));
    write(root / "complexes/t3.json", io::complex_to_json("t3", catalog::torus_grid(3), std::nullopt));
    write(root / "complexes/rp2.json", io::complex_to_json("rp2", rp2, w_rp2));
    write(root / "complexes/klein.json", io::complex_to_json("klein", klein, w_klein));
    write(root / "complexes/rp3.json", io::complex_to_json("rp3", rp3, std::nullopt));

    const std::string alpha_note =
        "alpha1 is the Morse index of a primitive closed geodesic of the round metric; it is supplied "
        "configuration, not derived here";

    spectral::CrossSpec s2{"S2", 2, true, 1, sphere(2), Integer(2), std::nullopt, {}, {}, std::nullopt};
    write(root / "cross/S2.json", cross_json(s2, alpha_note));

    spectral::CrossSpec s3{"S3", 3, true, 2, sphere(3), Integer(0), std::nullopt, {}, {}, std::nullopt};
    // UM = S3 x S2: the section class (H_3, regraded -2) meets the fibre
    // (H_2, regraded -3) once; the sign is the orientation convention
    s3.hum_products = {{-2, 0, -3, 0, {1}}, {-3, 0, -2, 0, {1}}};
    write(root / "cross/S3.json", cross_json(s3, alpha_note));

    spectral::CrossSpec s4{"S4", 4, true, 3, sphere(4), Integer(2), std::nullopt, {}, {}, std::nullopt};
    write(root / "cross/S4.json", cross_json(s4, alpha_note));

    IntersectionRing ring_rp2(rp2, w_rp2);
    spectral::CrossSpec p2{"RP2", 2, false, 0, twisted_homology(rp2, w_rp2), std::nullopt, std::nullopt,
                           ring_table(ring_rp2), {}, std::nullopt};
    // U(RP2) is the lens space L(4,1); the fibre circle is twice a generator
    p2.hum = HomologySummary{{GroupSummary{1, {}}, GroupSummary{0, {Integer(4)}}, GroupSummary{}, GroupSummary{1, {}}}};
    p2.gysin_module = std::vector<spectral::ModuleEntry>{{-2, 0, {2}}};
    write(root / "cross/RP2.json",
          cross_json(p2, alpha_note + "; hm and hm_products are computed from complexes/rp2.json; hum and the "
                                      "Gysin image of the point are supplied because M is not orientable"));

    IntersectionRing ring_rp3(rp3, OrientationCharacter::trivial());
    spectral::CrossSpec p3{"RP3", 3, true, 0, twisted_homology(rp3, OrientationCharacter::trivial()), Integer(0),
                           std::nullopt, ring_table(ring_rp3), {}, std::nullopt};
    write(root / "cross/RP3.json",
          cross_json(p3, alpha_note + "; hm and hm_products are computed from complexes/rp3.json (an empty "
                                      "table: unit and degree force every product); no product table for HH(UM) "
                                      "is supplied"));

    // straight-loop cycles and bi-chains on flat tori
    using torus::cube_cycle;
    using torus::loop_family;
    const torus::Chain meridian = cube_cycle(2, {0}), longitude = cube_cycle(2, {1});
    write(root / "chains/t2_meridian.json", io::torus_chain_to_json(loop_family(meridian, {0, 1})));
    write(root / "chains/t2_longitude.json", io::torus_chain_to_json(loop_family(longitude, {1, 0})));
    write(root / "chains/t2_point.json", io::torus_chain_to_json(loop_family(cube_cycle(2, {}), {1, 1})));
    write(root / "chains/t3_plane.json", io::torus_chain_to_json(loop_family(cube_cycle(3, {0, 1}), {0, 0, 1})));
    write(root / "chains/t3_line.json", io::torus_chain_to_json(loop_family(cube_cycle(3, {2}), {1, 0, 0})));
    write(root / "bichains/t2_cross.json", io::bichain_to_json(torus::cross(meridian, longitude)));
    // both factors through the origin: not transverse until perturbed
    write(root / "bichains/t2_diagonal.json",
          io::bichain_to_json(torus::cross(meridian, torus::affine_image(meridian, IntMatrix(2, 2, {1, 0, 1, 1}),
                                                                         {Rational(0), Rational(0)}))));
    write(root / "bichains/t3_plane_line.json", io::bichain_to_json(torus::cross(cube_cycle(3, {0, 1}), cube_cycle(3, {2}))));
    return 0;
}
