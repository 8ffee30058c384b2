#pragma once

#include <json.hpp>

#include <fstream>
#include <string>

#include "beckdiff/beck_module.hpp"
#include "beckdiff/group_beck.hpp"
#include "beckdiff/kahler.hpp"

namespace beckdiff {

using json = nlohmann::json;

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InvalidInput, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(ErrorCode::InvalidInput, path + ": " + e.what());
    }
    return j;
}

/* ------------------------------------------------------------- scalar kind */

inline ScalarKind scalar_kind_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        fail(ErrorCode::InvalidInput, "base must be an object with a \"kind\" string");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "Q") return ScalarKind::rationals();
    if (kind == "Z") return ScalarKind::integers();
    if (kind == "Fp") {
        if (!j.contains("p") || !j["p"].is_number_unsigned())
            fail(ErrorCode::InvalidInput, "Fp base needs an unsigned \"p\"");
        return ScalarKind::prime_field(j["p"].get<std::uint32_t>());
    }
    fail(ErrorCode::InvalidInput, "unknown base kind \"" + kind + "\"");
}

inline json scalar_kind_to_json(const ScalarKind& k) {
    switch (k.kind) {
        case BaseKind::Rat: return json{{"kind", "Q"}};
        case BaseKind::Int: return json{{"kind", "Z"}};
        case BaseKind::Fp: return json{{"kind", "Fp"}, {"p", k.p}};
    }
    fail(ErrorCode::InvalidInput, "bad scalar kind");
}

/* Scalar literals: integers as JSON integers, rationals as "n/d" strings,
 * F_p elements as integers reduced mod p. */
inline Scalar scalar_from_json(const json& j, const ScalarKind& kind) {
    if (j.is_number_integer())
        return Scalar::of_int(kind, mpz_class(std::to_string(j.get<long long>()), 10));
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        std::size_t slash = s.find('/');
        try {
            if (slash == std::string::npos) return Scalar::of_int(kind, mpz_class(s, 10));
            if (kind.kind != BaseKind::Rat)
                fail(ErrorCode::InvalidInput, "fractional literal over " + kind.str());
            return rat_normalize(mpz_class(s.substr(0, slash), 10),
                                 mpz_class(s.substr(slash + 1), 10));
        } catch (const std::invalid_argument&) {
            fail(ErrorCode::InvalidInput, "bad scalar literal \"" + s + "\"");
        }
    }
    fail(ErrorCode::InvalidInput, "scalar literal must be an integer or an \"n/d\" string");
}

inline json scalar_to_json(const Scalar& s) {
    if (s.kind().kind == BaseKind::Rat && s.den() != 1) return json(s.str());
    if (s.num().fits_slong_p()) return json(s.num().get_si());
    return json(s.num().get_str());
}

/* ---------------------------------------------------- algebra presentation */

inline AlgebraPtr algebra_from_json(const json& j, const Limits& lim = Limits{}) {
    if (!j.is_object() || !j.contains("base") || !j.contains("generators"))
        fail(ErrorCode::InvalidInput, "algebra needs \"base\" and \"generators\"");
    AlgebraPresentation p;
    p.base = scalar_kind_from_json(j["base"]);
    for (const auto& g : j["generators"]) {
        if (!g.is_string()) fail(ErrorCode::InvalidInput, "generators must be strings");
        p.generators.push_back(g.get<std::string>());
    }
    VarListPtr vars = make_vars(p.generators);
    if (j.contains("relations"))
        for (const auto& r : j["relations"]) {
            if (!r.is_string()) fail(ErrorCode::InvalidInput, "relations must be strings");
            p.relations.push_back(parse_poly(r.get<std::string>(), vars, p.base));
        }
    return validate_presentation(std::move(p), lim);
}

inline json algebra_to_json(const ValidatedAlgebra& B) {
    json rels = json::array();
    for (const auto& r : B.relations()) rels.push_back(r.str());
    return json{{"base", scalar_kind_to_json(B.base())},
                {"generators", B.generators()},
                {"relations", rels}};
}

/* --------------------------------------------------------------- ring table */

inline std::vector<std::size_t> index_row(const json& j, const char* what) {
    if (!j.is_array()) fail(ErrorCode::InvalidInput, std::string(what) + " must be an array");
    std::vector<std::size_t> out;
    for (const auto& v : j) {
        if (!v.is_number_unsigned()) fail(ErrorCode::InvalidInput, std::string(what) + " entries must be unsigned");
        out.push_back(v.get<std::size_t>());
    }
    return out;
}

inline std::vector<std::size_t> flatten_matrix(const json& j, std::size_t n, const char* what) {
    if (!j.is_array() || j.size() != n)
        fail(ErrorCode::InvalidInput, std::string(what) + " must be an n x n matrix");
    std::vector<std::size_t> out;
    out.reserve(n * n);
    for (const auto& row : j) {
        std::vector<std::size_t> r = index_row(row, what);
        if (r.size() != n) fail(ErrorCode::InvalidInput, std::string(what) + " row length mismatch");
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

inline RingTablePtr ring_table_from_json(const json& j) {
    for (const char* key : {"size", "add", "mul", "zero", "one", "base"})
        if (!j.contains(key)) fail(ErrorCode::InvalidInput, std::string("table needs \"") + key + "\"");
    std::size_t n = j["size"].get<std::size_t>();
    std::vector<std::size_t> scalar_map;
    if (j.contains("scalar_map")) scalar_map = index_row(j["scalar_map"], "scalar_map");
    std::vector<std::string> labels;
    if (j.contains("labels"))
        for (const auto& l : j["labels"]) labels.push_back(l.get<std::string>());
    return FiniteRingTable::create(n, flatten_matrix(j["add"], n, "add"),
                                   flatten_matrix(j["mul"], n, "mul"), j["zero"].get<std::size_t>(),
                                   j["one"].get<std::size_t>(), scalar_kind_from_json(j["base"]),
                                   std::move(scalar_map), std::move(labels));
}

inline json ring_table_to_json(const FiniteRingTable& t) {
    std::size_t n = t.size();
    json add = json::array(), mul = json::array();
    for (std::size_t a = 0; a < n; ++a) {
        json ra = json::array(), rm = json::array();
        for (std::size_t b = 0; b < n; ++b) {
            ra.push_back(t.add(a, b));
            rm.push_back(t.mul(a, b));
        }
        add.push_back(std::move(ra));
        mul.push_back(std::move(rm));
    }
    json out{{"size", n},         {"add", std::move(add)}, {"mul", std::move(mul)},
             {"zero", t.zero()},  {"one", t.one()},        {"base", scalar_kind_to_json(t.base())}};
    if (!t.scalar_images().empty()) out["scalar_map"] = t.scalar_images();
    if (!t.labels().empty()) out["labels"] = t.labels();
    return out;
}

/* A table field may be given directly or as a zero-dimensional Fp algebra
 * presentation, which is then converted. */
inline RingTablePtr table_or_algebra_from_json(const json& j, const Limits& lim = Limits{}) {
    if (j.is_object() && j.contains("generators")) return to_finite_table(algebra_from_json(j, lim), lim);
    return ring_table_from_json(j);
}

/* ------------------------------------------------------ surjections & homs */

inline TableHom surjection_from_json(const json& j, const Limits& lim = Limits{}) {
    if (!j.contains("total") || !j.contains("base") || !j.contains("map"))
        fail(ErrorCode::InvalidInput, "surjection needs \"total\", \"base\" and \"map\"");
    RingTablePtr total = table_or_algebra_from_json(j["total"], lim);
    RingTablePtr base = table_or_algebra_from_json(j["base"], lim);
    return verify_table_hom(std::move(total), std::move(base), index_row(j["map"], "map"));
}

inline TableHom hom_from_json(const json& j, const Limits& lim = Limits{}) {
    if (!j.contains("domain") || !j.contains("codomain"))
        fail(ErrorCode::InvalidInput, "hom needs \"domain\" and \"codomain\"");
    RingTablePtr codomain = table_or_algebra_from_json(j["codomain"], lim);
    if (j.contains("map")) {
        RingTablePtr domain = table_or_algebra_from_json(j["domain"], lim);
        return verify_table_hom(std::move(domain), std::move(codomain), index_row(j["map"], "map"));
    }
    if (j.contains("images")) {
        if (!j["domain"].is_object() || !j["domain"].contains("generators"))
            fail(ErrorCode::InvalidInput, "\"images\" requires a presented domain");
        AlgebraPtr B = algebra_from_json(j["domain"], lim);
        AlgebraHom h = make_algebra_hom(B, std::move(codomain), index_row(j["images"], "images"));
        return induced_table_hom(h, to_finite_table(B, lim), lim);
    }
    fail(ErrorCode::InvalidInput, "hom needs either \"map\" or \"images\"");
}

/* -------------------------------------------------------------- C-modules */

inline CModuleTable cmodule_from_json(const json& j, RingTablePtr ring) {
    for (const char* key : {"size", "add", "zero", "action"})
        if (!j.contains(key)) fail(ErrorCode::InvalidInput, std::string("module needs \"") + key + "\"");
    std::size_t m = j["size"].get<std::size_t>();
    std::vector<std::size_t> act;
    {
        const json& a = j["action"];
        if (!a.is_array() || a.size() != ring->size())
            fail(ErrorCode::InvalidInput, "action must have one row per ring element");
        for (const auto& row : a) {
            std::vector<std::size_t> r = index_row(row, "action");
            if (r.size() != m) fail(ErrorCode::InvalidInput, "action row length mismatch");
            act.insert(act.end(), r.begin(), r.end());
        }
    }
    std::vector<std::string> labels;
    if (j.contains("labels"))
        for (const auto& l : j["labels"]) labels.push_back(l.get<std::string>());
    return CModuleTable::create(std::move(ring), m, flatten_matrix(j["add"], m, "add"),
                                j["zero"].get<std::size_t>(), std::move(act), std::move(labels));
}

/* Beck module file: a base (table or presentation) plus module data, either
 * explicit tables or a module presentation over the base algebra. */
inline BeckModule beck_module_from_json(const json& j, const Limits& lim = Limits{}) {
    if (!j.contains("base") || !j.contains("module"))
        fail(ErrorCode::InvalidInput, "module file needs \"base\" and \"module\"");
    const json& mj = j["module"];
    if (mj.contains("relations") || mj.contains("generators")) {
        if (!j["base"].is_object() || !j["base"].contains("generators"))
            fail(ErrorCode::InvalidInput, "a presented module needs a presented base");
        AlgebraPtr B = algebra_from_json(j["base"], lim);
        RingTablePtr Bt = to_finite_table(B, lim);
        std::vector<std::string> gens;
        for (const auto& g : mj["generators"]) gens.push_back(g.get<std::string>());
        std::vector<FreeModuleElement> rels;
        if (mj.contains("relations"))
            for (const auto& row : mj["relations"]) {
                std::vector<Polynomial> coords;
                for (const auto& entry : row)
                    coords.push_back(parse_poly(entry.get<std::string>(), B->vars_ptr(), B->base()));
                rels.push_back(FreeModuleElement(std::move(coords)));
            }
        FpModulePresentation P = make_module_presentation(B, std::move(gens), std::move(rels));
        return trivial_extension(Bt, PresentedModuleTable(P, Bt, lim).table());
    }
    RingTablePtr base = table_or_algebra_from_json(j["base"], lim);
    return trivial_extension(base, cmodule_from_json(mj, base));
}

/* module presentation JSON per the external interface: generators plus rows
 * of polynomial strings, over a supplied ambient algebra */
inline FpModulePresentation module_presentation_from_json(const json& j, AlgebraPtr ambient) {
    std::vector<std::string> gens;
    if (j.contains("generators"))
        for (const auto& g : j["generators"]) gens.push_back(g.get<std::string>());
    std::vector<FreeModuleElement> rels;
    if (j.contains("relations"))
        for (const auto& row : j["relations"]) {
            std::vector<Polynomial> coords;
            for (const auto& entry : row)
                coords.push_back(
                    parse_poly(entry.get<std::string>(), ambient->vars_ptr(), ambient->base()));
            rels.push_back(FreeModuleElement(std::move(coords)));
        }
    return make_module_presentation(std::move(ambient), std::move(gens), std::move(rels));
}

inline json module_presentation_to_json(const FpModulePresentation& P) {
    json rels = json::array();
    for (const auto& r : P.relations) {
        json row = json::array();
        for (std::size_t i = 0; i < r.rank(); ++i) row.push_back(r.coord(i).str());
        rels.push_back(std::move(row));
    }
    return json{{"generators", P.generators}, {"relations", rels}};
}

/* ------------------------------------------------------------------ groups */

inline GroupTablePtr group_table_from_json(const json& j) {
    for (const char* key : {"size", "mul", "identity"})
        if (!j.contains(key)) fail(ErrorCode::InvalidInput, std::string("group needs \"") + key + "\"");
    std::size_t n = j["size"].get<std::size_t>();
    std::vector<std::string> labels;
    if (j.contains("labels"))
        for (const auto& l : j["labels"]) labels.push_back(l.get<std::string>());
    return FiniteGroupTable::create(n, flatten_matrix(j["mul"], n, "mul"),
                                    j["identity"].get<std::size_t>(), std::move(labels));
}

inline json group_table_to_json(const FiniteGroupTable& g) {
    json mul = json::array();
    for (std::size_t a = 0; a < g.size(); ++a) {
        json row = json::array();
        for (std::size_t b = 0; b < g.size(); ++b) row.push_back(g.mul(a, b));
        mul.push_back(std::move(row));
    }
    json out{{"size", g.size()}, {"mul", std::move(mul)}, {"identity", g.identity()}};
    if (!g.labels().empty()) out["labels"] = g.labels();
    return out;
}

inline GroupHom group_surjection_from_json(const json& j) {
    if (!j.contains("total") || !j.contains("base") || !j.contains("map"))
        fail(ErrorCode::InvalidInput, "group surjection needs \"total\", \"base\" and \"map\"");
    return verify_group_hom(group_table_from_json(j["total"]), group_table_from_json(j["base"]),
                            index_row(j["map"], "map"));
}

inline GModuleTable gmodule_from_json(const json& j) {
    if (!j.contains("group") || !j.contains("module") || !j.contains("action"))
        fail(ErrorCode::InvalidInput, "G-module needs \"group\", \"module\" and \"action\"");
    GroupTablePtr G = group_table_from_json(j["group"]);
    GroupTablePtr M = group_table_from_json(j["module"]);
    std::vector<std::size_t> action;
    const json& a = j["action"];
    if (!a.is_array() || a.size() != G->size())
        fail(ErrorCode::InvalidInput, "action must have one row per group element");
    for (const auto& row : a) {
        std::vector<std::size_t> r = index_row(row, "action");
        if (r.size() != M->size()) fail(ErrorCode::InvalidInput, "action row length mismatch");
        action.insert(action.end(), r.begin(), r.end());
    }
    return make_gmodule(std::move(G), std::move(M), std::move(action));
}

}  // namespace beckdiff
