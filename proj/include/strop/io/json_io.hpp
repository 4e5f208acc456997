#pragma once

// JSON readers and writers for complexes, torus chains and bi-chains, and
// CROSS specs.  Every structural problem in a file becomes InputFormatError.

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "strop/chain/complex.hpp"
#include "strop/spectral/cross_spec.hpp"
#include "strop/torus/bichain.hpp"

namespace strop::io {

using Json = nlohmann::json;

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputFormatError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline Json parse_json(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw InputFormatError(origin + ": " + e.what());
    }
}

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& ctx) {
    if (!j.is_object() || !j.contains(key)) throw InputFormatError(ctx + ": missing field '" + key + "'");
    return j.at(key);
}

inline long as_int(const Json& j, const std::string& ctx) {
    if (!j.is_number_integer()) throw InputFormatError(ctx + ": expected an integer");
    return j.get<long>();
}

inline Integer as_integer(const Json& j, const std::string& ctx) {
    if (j.is_number_integer()) return Integer(j.get<long long>());
    if (j.is_string()) {
        Rational r = parse_rational(j.get<std::string>());
        if (!is_integral(r)) throw InputFormatError(ctx + ": expected an integer, got " + j.get<std::string>());
        return boost::multiprecision::numerator(r);
    }
    throw InputFormatError(ctx + ": expected an integer");
}

inline Rational as_rational(const Json& j, const std::string& ctx) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw InputFormatError(ctx + ": expected a rational as an integer or a \"num/den\" string");
}

inline const Json& array(const Json& j, const std::string& ctx) {
    if (!j.is_array()) throw InputFormatError(ctx + ": expected an array");
    return j;
}

inline IntVector int_vector(const Json& j, const std::string& ctx) {
    IntVector v;
    for (const auto& x : array(j, ctx)) v.push_back(as_integer(x, ctx));
    return v;
}

inline Json to_json(const Integer& x) {
    if (fits_int64(x)) return Json(static_cast<long long>(x));
    return Json(x.str());
}

inline Json to_json(const IntVector& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}

} // namespace detail

// ---- complexes ----------------------------------------------------------

struct ComplexFile {
    std::string name;
    SimplicialComplex complex;
    std::optional<OrientationCharacter> signs;  // present iff the file lists signs
};

/// `signs` entries are [simplex-index, face-index, sign], the simplex index
/// counting through the `simplices` arrays in file order, dimension 0 first.
inline ComplexFile read_complex(const Json& j, const std::string& origin) {
    ComplexFile out;
    try {
        if (j.contains("name")) out.name = j.at("name").get<std::string>();
        std::vector<std::vector<Simplex>> per_dim;
        std::vector<Simplex> flat;
        for (const auto& layer : detail::array(detail::field(j, "simplices", origin), origin + ": simplices")) {
            per_dim.emplace_back();
            for (const auto& s : detail::array(layer, origin + ": simplices")) {
                Simplex simplex;
                for (const auto& v : detail::array(s, origin + ": simplex")) simplex.push_back(static_cast<int>(detail::as_int(v, origin + ": vertex")));
                per_dim.back().push_back(simplex);
                flat.push_back(simplex);
            }
        }
        std::vector<int> listed;
        for (const auto& v : detail::array(detail::field(j, "vertices", origin), origin + ": vertices"))
            listed.push_back(static_cast<int>(detail::as_int(v, origin + ": vertex")));
        std::sort(listed.begin(), listed.end());
        out.complex = SimplicialComplex::from_simplices(per_dim);
        if (listed != out.complex.vertices())
            throw InputFormatError(origin + ": 'vertices' does not match the 0-simplices");
        if (j.contains("signs")) {
            OrientationCharacter w;
            for (const auto& e : detail::array(j.at("signs"), origin + ": signs")) {
                if (!e.is_array() || e.size() != 3) throw InputFormatError(origin + ": a sign entry is [simplex, face, sign]");
                long s = detail::as_int(e[0], origin + ": sign simplex"), f = detail::as_int(e[1], origin + ": sign face");
                long v = detail::as_int(e[2], origin + ": sign value");
                if (s < 0 || static_cast<std::size_t>(s) >= flat.size())
                    throw InputFormatError(origin + ": sign names simplex " + std::to_string(s) + ", which does not exist");
                const Simplex& simplex = flat[static_cast<std::size_t>(s)];
                if (f < 0 || static_cast<std::size_t>(f) >= simplex.size() || simplex.size() < 2 || (v != 1 && v != -1))
                    throw InputFormatError(origin + ": bad sign entry for simplex " + to_string(simplex));
                w.set(simplex, static_cast<std::size_t>(f), static_cast<int>(v));
            }
            out.signs = std::move(w);
        }
    } catch (const StructureError& e) {
        throw InputFormatError(origin + ": " + e.what());
    } catch (const Json::exception& e) {
        throw InputFormatError(origin + ": " + e.what());
    }
    return out;
}

inline Json complex_to_json(const std::string& name, const SimplicialComplex& K,
                            const std::optional<OrientationCharacter>& w) {
    Json j;
    j["name"] = name;
    j["vertices"] = K.vertices();
    Json layers = Json::array();
    std::map<Simplex, std::size_t> index;
    for (int k = 0; k <= K.dim(); ++k) {
        Json layer = Json::array();
        for (const auto& s : K.simplices(k)) {
            index.emplace(s, index.size());
            layer.push_back(s);
        }
        layers.push_back(layer);
    }
    j["simplices"] = layers;
    if (w) {
        Json signs = Json::array();
        for (const auto& [s, row] : w->entries())
            for (std::size_t i = 0; i < row.size(); ++i)
                if (row[i] != 1) signs.push_back({index.at(s), i, row[i]});
        j["signs"] = signs;
    }
    return j;
}

// ---- torus chains ---------------------------------------------------------

inline torus::Cell read_cell(const Json& j, std::size_t n, const std::string& ctx) {
    std::vector<torus::RatVec> verts;
    for (const auto& v : detail::array(detail::field(j, "verts", ctx), ctx + ": verts")) {
        torus::RatVec x;
        for (const auto& c : detail::array(v, ctx + ": vertex")) x.push_back(detail::as_rational(c, ctx));
        if (x.size() != n) throw InputFormatError(ctx + ": vertex has " + std::to_string(x.size()) + " coordinates on T^" + std::to_string(n));
        verts.push_back(std::move(x));
    }
    if (verts.empty()) throw InputFormatError(ctx + ": a cell needs at least one vertex");
    IntVector winding(n, Integer(0));
    if (j.contains("winding")) {
        winding = detail::int_vector(j.at("winding"), ctx + ": winding");
        if (winding.size() != n) throw InputFormatError(ctx + ": winding has the wrong length");
    }
    return torus::make_loop(std::move(verts), std::move(winding));
}

inline std::size_t read_ambient(const Json& j, const std::string& origin) {
    long n = detail::as_int(detail::field(j, "n", origin), origin + ": n");
    if (n < 1 || n > 8) throw InputFormatError(origin + ": torus dimension must be between 1 and 8");
    return static_cast<std::size_t>(n);
}

inline torus::Chain read_torus_chain(const Json& j, const std::string& origin) {
    const std::size_t n = read_ambient(j, origin);
    torus::Chain c(n);
    std::size_t i = 0;
    for (const auto& t : detail::array(detail::field(j, "terms", origin), origin + ": terms")) {
        std::string ctx = origin + ": term " + std::to_string(i++);
        Integer coef = t.contains("coef") ? detail::as_integer(t.at("coef"), ctx) : Integer(1);
        c.add(read_cell(t, n, ctx), coef);
    }
    return c;
}

inline torus::BiChain read_bichain(const Json& j, const std::string& origin) {
    const std::size_t n = read_ambient(j, origin);
    torus::BiChain b(n);
    std::size_t i = 0;
    for (const auto& t : detail::array(detail::field(j, "terms", origin), origin + ": terms")) {
        std::string ctx = origin + ": term " + std::to_string(i++);
        Integer coef = t.contains("coef") ? detail::as_integer(t.at("coef"), ctx) : Integer(1);
        b.add(coef, read_cell(detail::field(t, "left", ctx), n, ctx + " left"),
              read_cell(detail::field(t, "right", ctx), n, ctx + " right"));
    }
    return b;
}

inline Json cell_to_json(const torus::Cell& c) {
    Json j;
    Json verts = Json::array();
    for (const auto& v : c.verts) {
        Json x = Json::array();
        for (const auto& r : v) x.push_back(to_string(r));
        verts.push_back(x);
    }
    j["verts"] = verts;
    j["winding"] = detail::to_json(c.winding);
    return j;
}

inline Json torus_chain_to_json(const torus::Chain& c) {
    Json j;
    j["n"] = c.ambient();
    Json terms = Json::array();
    for (const auto& [cell, k] : c.terms()) {
        Json t = cell_to_json(cell);
        t["coef"] = detail::to_json(k);
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j;
}

inline Json bichain_to_json(const torus::BiChain& b) {
    Json j;
    j["n"] = b.ambient();
    Json terms = Json::array();
    for (const auto& t : b.terms())
        terms.push_back({{"coef", detail::to_json(t.coef)}, {"left", cell_to_json(t.left)}, {"right", cell_to_json(t.right)}});
    j["terms"] = terms;
    return j;
}

// ---- CROSS specs ------------------------------------------------------------

/// A group is written "0", "Z", "Z^2", "Z/2", "Z+Z/2", ... or as
/// {"free": r, "torsion": [d, ...]}.
inline GroupSummary parse_group(const Json& j, const std::string& ctx) {
    if (j.is_object()) {
        GroupSummary g;
        long f = j.contains("free") ? detail::as_int(j.at("free"), ctx) : 0;
        if (f < 0) throw InputFormatError(ctx + ": negative free rank");
        IntVector t = j.contains("torsion") ? detail::int_vector(j.at("torsion"), ctx) : IntVector{};
        for (const auto& d : t)
            if (d < 2) throw InputFormatError(ctx + ": torsion orders must be at least 2");
        return canonical_group(static_cast<std::size_t>(f), t);
    }
    if (!j.is_string()) throw InputFormatError(ctx + ": a group is a string like \"Z+Z/2\" or an object");
    std::string s = j.get<std::string>();
    if (s == "0") return {};
    std::size_t free = 0;
    IntVector tors;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, '+')) {
        if (part == "Z") {
            ++free;
        } else if (part.rfind("Z^", 0) == 0) {
            Integer r = detail::as_integer(Json(part.substr(2)), ctx);
            if (r < 1) throw InputFormatError(ctx + ": bad group '" + s + "'");
            free += static_cast<std::size_t>(r);
        } else if (part.rfind("Z/", 0) == 0) {
            Integer d = detail::as_integer(Json(part.substr(2)), ctx);
            if (d < 2) throw InputFormatError(ctx + ": bad group '" + s + "'");
            tors.push_back(d);
        } else {
            throw InputFormatError(ctx + ": bad group '" + s + "'");
        }
    }
    return canonical_group(free, tors);
}

inline HomologySummary parse_summary(const Json& j, const std::string& ctx) {
    HomologySummary h;
    std::size_t k = 0;
    for (const auto& g : detail::array(j, ctx)) h.groups.push_back(parse_group(g, ctx + "[" + std::to_string(k++) + "]"));
    return h;
}

inline Json summary_to_json(const HomologySummary& h) {
    Json out = Json::array();
    for (const auto& g : h.groups) out.push_back(g.to_string());
    return out;
}

inline std::vector<spectral::ProductEntry> parse_products(const Json& j, const std::string& ctx) {
    std::vector<spectral::ProductEntry> out;
    for (const auto& e : detail::array(j, ctx)) {
        const Json& l = detail::field(e, "left", ctx);
        const Json& r = detail::field(e, "right", ctx);
        if (!l.is_array() || l.size() != 2 || !r.is_array() || r.size() != 2)
            throw InputFormatError(ctx + ": left and right are [degree, generator]");
        long li = detail::as_int(l[1], ctx), ri = detail::as_int(r[1], ctx);
        if (li < 0 || ri < 0) throw InputFormatError(ctx + ": negative generator index");
        out.push_back({static_cast<int>(detail::as_int(l[0], ctx)), static_cast<std::size_t>(li),
                       static_cast<int>(detail::as_int(r[0], ctx)), static_cast<std::size_t>(ri),
                       detail::int_vector(detail::field(e, "value", ctx), ctx)});
    }
    return out;
}

inline Json products_to_json(const std::vector<spectral::ProductEntry>& es) {
    Json out = Json::array();
    for (const auto& e : es)
        out.push_back({{"left", {e.left_degree, e.left}}, {"right", {e.right_degree, e.right}}, {"value", detail::to_json(e.value)}});
    return out;
}

inline spectral::CrossSpec read_cross_spec(const Json& j, const std::string& origin) {
    spectral::CrossSpec s;
    try {
        s.name = j.contains("name") ? j.at("name").get<std::string>() : origin;
        s.n = static_cast<int>(detail::as_int(detail::field(j, "n", origin), origin + ": n"));
        const Json& o = detail::field(j, "orientable", origin);
        if (!o.is_boolean()) throw InputFormatError(origin + ": orientable must be true or false");
        s.orientable = o.get<bool>();
        s.alpha1 = static_cast<int>(detail::as_int(detail::field(j, "alpha1", origin), origin + ": alpha1"));
        s.hm = parse_summary(detail::field(j, "hm", origin), origin + ": hm");
        if (j.contains("euler")) s.euler = detail::as_integer(j.at("euler"), origin + ": euler");
        if (j.contains("hum")) s.hum = parse_summary(j.at("hum"), origin + ": hum");
        if (j.contains("hm_products")) s.hm_products = parse_products(j.at("hm_products"), origin + ": hm_products");
        if (j.contains("hum_products")) s.hum_products = parse_products(j.at("hum_products"), origin + ": hum_products");
        if (j.contains("gysin_module")) {
            std::vector<spectral::ModuleEntry> m;
            for (const auto& e : detail::array(j.at("gysin_module"), origin + ": gysin_module")) {
                long g = detail::as_int(detail::field(e, "generator", origin), origin + ": gysin_module");
                if (g < 0) throw InputFormatError(origin + ": negative generator index");
                m.push_back({static_cast<int>(detail::as_int(detail::field(e, "degree", origin), origin)),
                             static_cast<std::size_t>(g), detail::int_vector(detail::field(e, "value", origin), origin)});
            }
            s.gysin_module = std::move(m);
        }
    } catch (const Json::exception& e) {
        throw InputFormatError(origin + ": " + e.what());
    }
    return s;
}

inline Json cross_spec_to_json(const spectral::CrossSpec& s) {
    Json j;
    j["name"] = s.name;
    j["n"] = s.n;
    j["orientable"] = s.orientable;
    j["alpha1"] = s.alpha1;
    j["hm"] = summary_to_json(s.hm);
    if (s.euler) j["euler"] = detail::to_json(*s.euler);
    if (s.hum) j["hum"] = summary_to_json(*s.hum);
    if (!s.hm_products.empty()) j["hm_products"] = products_to_json(s.hm_products);
    if (!s.hum_products.empty()) j["hum_products"] = products_to_json(s.hum_products);
    if (s.gysin_module) {
        Json m = Json::array();
        for (const auto& e : *s.gysin_module)
            m.push_back({{"degree", e.degree}, {"generator", e.index}, {"value", detail::to_json(e.value)}});
        j["gysin_module"] = m;
    }
    return j;
}

} // namespace strop::io
