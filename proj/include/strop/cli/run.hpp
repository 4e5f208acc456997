#pragma once

// The `strop` command line.  run() is the whole program, so tests can drive
// it in-process; exit codes are 0 (ok), 1 (domain error) and 2 (bad input).

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "strop/cli/report.hpp"
#include "strop/cli/verify.hpp"

#ifndef STROP_CATALOG_DIR
#define STROP_CATALOG_DIR "catalog"
#endif

namespace strop::cli {

namespace fs = std::filesystem;

struct Input {
    std::string label;  // as given on the command line
    std::string path;
    std::string bytes;
};

inline fs::path catalog_dir() {
    const char* env = std::getenv("STROP_CATALOG");
    return (env && *env) ? fs::path(env) : fs::path(STROP_CATALOG_DIR);
}

/// A path if the file exists, else a catalog entry name under `kind`.
inline Input resolve_input(const std::string& arg, const std::string& kind) {
    std::vector<fs::path> tries{fs::path(arg)};
    if (arg.find('/') == std::string::npos && fs::path(arg).extension() != ".json") {
        std::string lower = arg, upper = arg;
        for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        for (const auto& nm : {arg, lower, upper}) tries.push_back(catalog_dir() / kind / (nm + ".json"));
    }
    for (const auto& p : tries)
        if (fs::is_regular_file(p)) return {arg, p.string(), io::read_text(p.string())};
    throw InputFormatError("no such file or catalog entry: " + arg);
}

inline std::string join(const IntVector& v, const char* sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i].str();
    return out;
}

inline std::string vec(const IntVector& v) { return "(" + join(v) + ")"; }

inline std::string torsion(const GroupSummary& g) { return g.torsion.empty() ? "-" : join(g.torsion); }

struct Options {
    std::uint64_t seed = 0;
    std::string radius = "1/100";
    int max_degree = 10;
    std::string format = "tsv";
    bool twisted = false;
    std::vector<std::string> inputs;
};

inline void common_meta(Report& r, const std::string& verb, const Options& o, const std::vector<Input>& in) {
    r.set({"tool", "strop", kToolVersion});
    r.set({"verb", verb});
    for (const auto& i : in) r.set({"input", i.label, "sha256:" + sha256_hex(i.bytes)});
    r.set({"seed", std::to_string(o.seed)});
}

inline OrientationCharacter pick_character(const io::ComplexFile& f, bool twisted, std::string& source) {
    if (!twisted) {
        source = "trivial";
        return OrientationCharacter::trivial();
    }
    source = f.signs ? "file" : "orientation cover";
    return f.signs ? *f.signs : orientation_character(f.complex);
}

inline io::ComplexFile load_complex(const Input& in) { return io::read_complex(io::parse_json(in.bytes, in.label), in.label); }

inline Report cmd_homology(const Options& o) {
    Input in = resolve_input(o.inputs.at(0), "complexes");
    io::ComplexFile f = load_complex(in);
    Report r;
    common_meta(r, "homology", o, {in});
    std::string source;
    OrientationCharacter w = pick_character(f, o.twisted, source);
    r.set({"complex", f.name, "dim", std::to_string(f.complex.dim())});
    r.set({"coefficients", o.twisted ? "twisted" : "integer", source});
    HomologySummary h = homology(validate_complex(f.complex, w));
    Section& s = r.section("homology", {"degree", "free_rank", "torsion", "group"});
    for (int k = 0; k <= h.top_degree(); ++k)
        s.add({std::to_string(k), std::to_string(h.at(k).free_rank), torsion(h.at(k)), h.at(k).to_string()});
    return r;
}

inline Report cmd_ring(const Options& o) {
    Input in = resolve_input(o.inputs.at(0), "complexes");
    io::ComplexFile f = load_complex(in);
    Report r;
    common_meta(r, "ring", o, {in});
    std::string source;
    OrientationCharacter w = pick_character(f, o.twisted, source);
    r.set({"complex", f.name, "dim", std::to_string(f.complex.dim())});
    r.set({"coefficients", o.twisted ? "twisted" : "integer", source});
    IntersectionRing ring(f.complex, w);
    const int n = ring.dim();

    Section& g = r.section("groups", {"degree", "unregraded", "group", "generators"});
    for (int d = 0; d >= -n; --d)
        g.add({std::to_string(d), std::to_string(d + n), ring.homology(d).group().to_string(),
               std::to_string(ring.homology(d).size())});
    Section& u = r.section("unit", {"class"});
    u.add({to_string(ring.unit())});
    Section& p = r.section("products", {"left", "right", "product"});
    for (int a = 0; a >= -n; --a)
        for (int b = 0; b >= -n; --b) {
            if (a + b < -n) continue;
            for (std::size_t i = 0; i < ring.homology(a).size(); ++i)
                for (std::size_t j = 0; j < ring.homology(b).size(); ++j)
                    p.add({to_string(ring.generator(a, i)), to_string(ring.generator(b, j)),
                           to_string(ring.product(ring.generator(a, i), ring.generator(b, j)))});
        }
    std::string fail = ring_law_failure(ring);
    r.section("laws", {"law", "status"}).add({"unital associative graded commutative", fail.empty() ? "holds" : fail});
    return r;
}

inline Rational radius_of(const Options& o) {
    Rational rad = parse_rational(o.radius);
    if (rad < 0) throw InputFormatError("--radius must be non-negative");
    return rad;
}

inline void loop_class_rows(Section& s, const std::string& label, const torus::Chain& c) {
    const int k = std::max(c.degree(), 0);
    torus::LoopClass cls = torus::loop_class(c, k);
    if (cls.empty()) s.add({label, std::to_string(k), "-", "0"});
    for (const auto& [w, per] : cls) s.add({label, std::to_string(k), vec(w), vec(per)});
}

inline Report cmd_torus_intersect(const Options& o) {
    Input in = resolve_input(o.inputs.at(0), "bichains");
    torus::BiChain b = io::read_bichain(io::parse_json(in.bytes, in.label), in.label);
    const Rational rad = radius_of(o);
    Report r;
    common_meta(r, "torus-intersect", o, {in});
    r.set({"radius", strop::to_string(rad)});
    r.set({"ambient", std::to_string(b.ambient())});

    torus::TransversalityReport tr = torus::is_transverse(b);
    torus::Perturbation pert = torus::perturb_translate(b, o.seed, rad);
    Section& t = r.section("transversality", {"input_transverse", "witness", "attempts", "shift"});
    t.add({tr.transverse ? "yes" : "no", tr.witness ? tr.witness->describe() : "-", std::to_string(pert.attempts),
           torus::to_string(pert.shift)});

    torus::TransverseIntersection x = torus::chain_intersection(pert.chain);
    Section& p = r.section("pieces", {"term", "translate", "orientation", "coef", "image"});
    for (const auto& pc : x.pieces)
        p.add({std::to_string(pc.term), vec(pc.translate), std::to_string(pc.orientation), pc.coef.str(),
               torus::to_string(pc.image)});

    const bool cycle = torus::is_bicycle(b);
    Section& c = r.section("class", {"bicycle", "degree", "winding", "periods"});
    if (!cycle) {
        c.add({"no", "-", "-", "-"});
    } else {
        Section tmp;
        loop_class_rows(tmp, "", torus::compose_loops(x));
        for (auto& row : tmp.rows) c.add({"yes", row[1], row[2], row[3]});
    }
    return r;
}

inline torus::Chain load_loop_cycle(const Input& in) {
    torus::Chain c = io::read_torus_chain(io::parse_json(in.bytes, in.label), in.label);
    if (!c.boundary().empty()) throw NotACycleError(in.label + " is not a cycle");
    return c;
}

inline Report cmd_torus_loop(const Options& o) {
    if (o.inputs.size() != 2) throw InputFormatError("torus-loop needs two chain files");
    Input ia = resolve_input(o.inputs[0], "chains"), ib = resolve_input(o.inputs[1], "chains");
    torus::Chain a = load_loop_cycle(ia), b = load_loop_cycle(ib);
    if (a.ambient() != b.ambient()) throw InputFormatError("factors live on tori of different dimension");
    const Rational rad = radius_of(o);
    Report r;
    common_meta(r, "torus-loop", o, {ia, ib});
    r.set({"radius", strop::to_string(rad)});
    r.set({"ambient", std::to_string(a.ambient())});
    Section& f = r.section("factors", {"factor", "degree", "winding", "periods"});
    loop_class_rows(f, "a", a);
    loop_class_rows(f, "b", b);
    torus::LoopProduct prod = torus::loop_product(a, b, o.seed, rad);
    r.section("perturbation", {"attempts", "shift"})
        .add({std::to_string(prod.perturbation.attempts), torus::to_string(prod.perturbation.shift)});
    loop_class_rows(r.section("product", {"factor", "degree", "winding", "periods"}), "a*b", prod.composed);
    return r;
}

inline Report cmd_cross(const Options& o) {
    Input in = resolve_input(o.inputs.at(0), "cross");
    spectral::CrossSpec spec = io::read_cross_spec(io::parse_json(in.bytes, in.label), in.label);
    if (o.max_degree < 0) throw InputFormatError("--max-degree must be non-negative");
    spec.validate();
    Report r;
    common_meta(r, "cross", o, {in});
    r.set({"manifold", spec.name, "dim", std::to_string(spec.n), "alpha1", std::to_string(spec.alpha1)});
    r.set({"max_degree", std::to_string(o.max_degree)});

    auto um = spectral::gysin_unit_tangent_homology(spec);
    Section& g = r.section("unit_tangent", {"degree", "group", "source"});
    for (std::size_t k = 0; k < um.groups.size(); ++k)
        g.add({std::to_string(k), um.groups[k].summary().to_string(), um.derived ? "gysin" : "supplied"});

    const int pmax = std::max(1, spectral::columns_needed(spec, o.max_degree));
    auto page = spectral::build_page1(spec, pmax);
    auto d1 = spectral::differential_d1(page);
    auto inf = spectral::collapse_to_infinity(page);
    auto table = spectral::loop_homology_table(spec, o.max_degree);
    auto series = spectral::series_table(spec, um.summary(), o.max_degree);

    Section& t = r.section("table", {"degree", "free_rank", "torsion", "group", "columns"});
    for (const auto& row : table.rows) {
        std::string cols;
        for (const auto& [p, grp] : row.columns) cols += (cols.empty() ? "" : " ") + ("p" + std::to_string(p) + ":" + grp.to_string());
        t.add({std::to_string(row.degree), std::to_string(row.group.free_rank), torsion(row.group), row.group.to_string(),
               cols.empty() ? "-" : cols});
    }
    Section& s = r.section("series", {"kind", "polynomial"});
    s.add({"table", spectral::series_string(table.free_series())});
    s.add({"closed form", spectral::series_string(series.free_series())});

    Section& c = r.section("checks", {"check", "value", "status"});
    const std::string t_at = page.t ? spectral::to_string(page.t->at) : "-";
    const spectral::Bidegree want{1, spec.alpha1 + spec.n - 2};
    c.add({"T bidegree", t_at, page.t && page.t->at == want ? "ok" : "fail"});
    for (int p = 1; p <= std::min(pmax, 8); ++p)
        c.add({"Bott index alpha_" + std::to_string(p), std::to_string(spectral::bott_index(spec, p)), "ok"});
    c.add({"d1", d1.is_zero() ? "zero" : "nonzero", d1.is_zero() ? "ok" : "fail"});
    c.add({"collapse", inf.r == spectral::SpectralPage::kInfinity && inf.same_ring(page) ? "E1 = Einf" : "differs",
           inf.same_ring(page) ? "ok" : "fail"});
    c.add({"table vs series", table == series ? "equal" : "differ", table == series ? "ok" : "fail"});
    c.add({"undetermined products", std::to_string(page.undetermined_products()), "ok"});
    return r;
}

inline Report cmd_verify(const Options& o, bool& failed) {
    Report r;
    common_meta(r, "verify", o, {});
    r.set({"catalog", catalog_dir().string()});
    Section& s = r.section("checks", {"invariant", "subject", "status", "detail"});
    failed = false;
    for (const auto& c : run_invariant_suite(catalog_dir(), o.seed)) {
        s.add({c.check, c.subject, c.ok ? "ok" : "FAIL", c.detail});
        failed = failed || !c.ok;
    }
    return r;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"strop: string topology on simplicial manifolds, flat tori and CROSS spaces", "strop"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", o.seed, "seed for perturbations and random samples");
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"tsv", "json"}));
    };
    auto* homology_cmd = app.add_subcommand("homology", "integral or twisted homology of a complex");
    homology_cmd->add_option("complex", o.inputs, "complex file or catalog name")->required()->expected(1);
    homology_cmd->add_flag("--twisted", o.twisted, "use orientation-twisted coefficients");
    add_common(homology_cmd);

    auto* ring_cmd = app.add_subcommand("ring", "intersection ring of a closed manifold");
    ring_cmd->add_option("complex", o.inputs, "complex file or catalog name")->required()->expected(1);
    ring_cmd->add_flag("--twisted", o.twisted, "use the orientation character");
    add_common(ring_cmd);

    auto* ti_cmd = app.add_subcommand("torus-intersect", "transverse intersection of a bi-chain on a flat torus");
    ti_cmd->add_option("bichain", o.inputs, "bi-chain file")->required()->expected(1);
    ti_cmd->add_option("--radius", o.radius, "perturbation radius (rational)");
    add_common(ti_cmd);

    auto* tl_cmd = app.add_subcommand("torus-loop", "loop product of two straight-loop cycles");
    tl_cmd->add_option("chains", o.inputs, "two chain files")->required()->expected(2);
    tl_cmd->add_option("--radius", o.radius, "perturbation radius (rational)");
    add_common(tl_cmd);

    auto* cross_cmd = app.add_subcommand("cross", "loop homology of a compact rank one symmetric space");
    cross_cmd->add_option("spec", o.inputs, "CROSS spec file or catalog name")->required()->expected(1);
    cross_cmd->add_option("--max-degree", o.max_degree, "largest total degree in the table");
    add_common(cross_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite over the catalog");
    add_common(verify_cmd);

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o_out, o_err;
        int code = app.exit(e, o_out, o_err);
        out << o_out.str();
        err << o_err.str();
        return code == 0 ? 0 : 2;
    }

    try {
        Report r;
        bool failed = false;
        if (*homology_cmd) r = cmd_homology(o);
        else if (*ring_cmd) r = cmd_ring(o);
        else if (*ti_cmd) r = cmd_torus_intersect(o);
        else if (*tl_cmd) r = cmd_torus_loop(o);
        else if (*cross_cmd) r = cmd_cross(o);
        else r = cmd_verify(o, failed);
        if (o.twisted) r.meta.insert(r.meta.begin() + 2, {"flag", "--twisted"});
        if (o.format == "json") r.write_json(out);
        else r.write_tsv(out);
        if (failed) {
            for (const auto& row : r.sections.front().rows)
                if (row[2] != "ok") err << "strop: invariant failed: " << row[0] << " (" << row[1] << "): " << row[3] << "\n";
            return 1;
        }
        return 0;
    } catch (const InputFormatError& e) {
        err << "strop: input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "strop: " << e.kind() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "strop: internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace strop::cli
