#pragma once

// Scenario documents: JSON parsing with located diagnostics, normalization, and construction of
// the algebra, modules, context and surjection they describe.

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frobenius.hpp"
#include "quiver.hpp"

namespace sphertwist {

using Json = nlohmann::ordered_json;

struct ArrowDoc {
    std::string name, from, to;
};

struct TermDoc {
    std::string coeff;
    std::vector<std::string> path;
};

struct AlgebraDoc {
    std::string name;
    std::string form; // "field", "quiver" or "structure"
    std::vector<std::string> vertices;
    std::vector<ArrowDoc> arrows;
    std::vector<std::vector<TermDoc>> relations;
    std::size_t zero_length = 0;
    std::vector<std::string> basis;
    std::vector<std::vector<std::vector<std::string>>> mult; // mult[i][j] = coordinates of b_i b_j
    std::vector<std::string> unit;
};

struct ModuleDoc {
    std::string name;
    std::string kind; // regular, simple, projective, omega, actions
    std::string vertex;
    std::string of;
    std::size_t power = 1;
    std::size_t dim = 0;
    std::vector<std::vector<std::vector<std::string>>> actions; // one matrix per algebra basis element
};

struct SummandDoc {
    std::string module;
    std::size_t multiplicity = 1;
    bool projective_part = false;
};

struct SurjectionDoc {
    std::string ideal; // "", "radical", "zero", "rows"
    std::vector<std::vector<std::string>> rows;
};

struct ScenarioSection {
    std::string name;
    std::vector<SummandDoc> X;
    std::vector<std::size_t> t;
    std::optional<std::size_t> cap;
    std::optional<std::pair<int, int>> window;
    std::vector<std::string> audits;
    SurjectionDoc surjection;
};

struct ScenarioDoc {
    std::uint64_t prime = 0;
    AlgebraDoc algebra;
    std::vector<ModuleDoc> modules;
    ScenarioSection scenario;
};

inline const std::vector<std::string>& audit_names() {
    static const std::vector<std::string> names{"resolve", "ext", "tor", "spherical", "twist", "tilting"};
    return names;
}

namespace detail {

[[noreturn]] inline void schema_fail(const std::string& where, const std::string& rule) {
    fail(ErrorKind::SchemaError, (where.empty() ? std::string("/") : where) + ": " + rule);
}

inline const Json& member(const Json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) schema_fail(where, "missing required key \"" + key + "\"");
    return j.at(key);
}

inline void only_keys(const Json& j, const std::vector<std::string>& keys, const std::string& where) {
    if (!j.is_object()) schema_fail(where, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) schema_fail(where, "unknown key \"" + it.key() + "\"");
}

inline std::string as_string(const Json& j, const std::string& where) {
    if (!j.is_string()) schema_fail(where, "expected a string");
    return j.get<std::string>();
}

inline std::size_t as_size(const Json& j, const std::string& where, std::size_t min = 0) {
    if (!j.is_number_integer() || j.get<long long>() < static_cast<long long>(min))
        schema_fail(where, "expected an integer >= " + std::to_string(min));
    return j.get<std::size_t>();
}

// Exact scalars: strings "3", "-3/7", or JSON integers.
inline std::string as_scalar_text(const Json& j, const std::string& where, Field f) {
    std::string s;
    if (j.is_number_integer()) s = std::to_string(j.get<long long>());
    else if (j.is_string()) s = j.get<std::string>();
    else schema_fail(where, "expected an exact scalar (integer or \"p/q\" string)");
    try {
        (void)Scalar::parse(s, f);
    } catch (const Error&) {
        schema_fail(where, "not an exact scalar over " + f.name() + ": \"" + s + "\"");
    }
    return s;
}

inline std::vector<std::string> scalar_list(const Json& j, const std::string& where, Field f) {
    if (!j.is_array()) schema_fail(where, "expected an array of scalars");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_scalar_text(j[i], where + "/" + std::to_string(i), f));
    return out;
}

inline std::vector<std::vector<std::string>> scalar_matrix(const Json& j, const std::string& where, Field f) {
    if (!j.is_array()) schema_fail(where, "expected an array of rows");
    std::vector<std::vector<std::string>> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(scalar_list(j[i], where + "/" + std::to_string(i), f));
    for (const auto& r : out)
        if (r.size() != (out.empty() ? 0 : out[0].size())) schema_fail(where, "rows of unequal length");
    return out;
}

inline std::vector<std::string> string_list(const Json& j, const std::string& where) {
    if (!j.is_array()) schema_fail(where, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], where + "/" + std::to_string(i)));
    return out;
}

inline std::string located(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

} // namespace detail

inline ScenarioDoc scenario_from_json(const Json& j) {
    using namespace detail;
    ScenarioDoc d;
    only_keys(j, {"field", "algebra", "modules", "scenario"}, "");
    const Json& f = member(j, "field", "");
    if (f.is_string() && (f == "rational" || f == "Q")) {
        d.prime = 0;
    } else if (f.is_object()) {
        only_keys(f, {"prime"}, "/field");
        d.prime = as_size(member(f, "prime", "/field"), "/field/prime", 2);
        try {
            (void)Field::prime(d.prime);
        } catch (const Error& e) {
            schema_fail("/field/prime", e.what());
        }
    } else {
        schema_fail("/field", "expected \"rational\" or {\"prime\": p}");
    }
    const Field fld = d.prime ? Field::prime(d.prime) : Field::rational();

    d.algebra.form = "field";
    d.algebra.name = "k";
    if (j.contains("algebra")) {
        const Json& a = j.at("algebra");
        only_keys(a, {"name", "quiver", "structure"}, "/algebra");
        if (a.contains("name")) d.algebra.name = as_string(a.at("name"), "/algebra/name");
        if (a.contains("quiver") == a.contains("structure")) schema_fail("/algebra", "exactly one of \"quiver\" or \"structure\" is required");
        if (a.contains("quiver")) {
            const Json& q = a.at("quiver");
            std::string w = "/algebra/quiver";
            only_keys(q, {"vertices", "arrows", "relations", "zero_length"}, w);
            d.algebra.form = "quiver";
            d.algebra.vertices = string_list(member(q, "vertices", w), w + "/vertices");
            if (d.algebra.vertices.empty()) schema_fail(w + "/vertices", "at least one vertex required");
            if (q.contains("arrows")) {
                const Json& arr = q.at("arrows");
                if (!arr.is_array()) schema_fail(w + "/arrows", "expected an array");
                for (std::size_t i = 0; i < arr.size(); ++i) {
                    std::string wi = w + "/arrows/" + std::to_string(i);
                    only_keys(arr[i], {"name", "from", "to"}, wi);
                    ArrowDoc ad{as_string(member(arr[i], "name", wi), wi + "/name"), as_string(member(arr[i], "from", wi), wi + "/from"),
                                as_string(member(arr[i], "to", wi), wi + "/to")};
                    for (const auto& v : {ad.from, ad.to})
                        if (std::find(d.algebra.vertices.begin(), d.algebra.vertices.end(), v) == d.algebra.vertices.end())
                            schema_fail(wi, "unknown vertex \"" + v + "\"");
                    d.algebra.arrows.push_back(ad);
                }
            }
            if (q.contains("relations")) {
                const Json& rels = q.at("relations");
                if (!rels.is_array()) schema_fail(w + "/relations", "expected an array");
                for (std::size_t i = 0; i < rels.size(); ++i) {
                    std::string wi = w + "/relations/" + std::to_string(i);
                    if (!rels[i].is_array() || rels[i].empty()) schema_fail(wi, "expected a nonempty array of terms");
                    std::vector<TermDoc> rel;
                    for (std::size_t k = 0; k < rels[i].size(); ++k) {
                        std::string wk = wi + "/" + std::to_string(k);
                        only_keys(rels[i][k], {"coeff", "path"}, wk);
                        TermDoc t{rels[i][k].contains("coeff") ? as_scalar_text(rels[i][k].at("coeff"), wk + "/coeff", fld) : "1",
                                  string_list(member(rels[i][k], "path", wk), wk + "/path")};
                        for (const auto& p : t.path) {
                            bool known = false;
                            for (const auto& ar : d.algebra.arrows) known = known || ar.name == p;
                            if (!known) schema_fail(wk + "/path", "unknown arrow \"" + p + "\"");
                        }
                        rel.push_back(t);
                    }
                    d.algebra.relations.push_back(rel);
                }
            }
            if (q.contains("zero_length")) d.algebra.zero_length = as_size(q.at("zero_length"), w + "/zero_length", 1);
        } else {
            const Json& s = a.at("structure");
            std::string w = "/algebra/structure";
            only_keys(s, {"basis", "mult", "unit"}, w);
            d.algebra.form = "structure";
            d.algebra.basis = string_list(member(s, "basis", w), w + "/basis");
            std::size_t n = d.algebra.basis.size();
            if (n == 0) schema_fail(w + "/basis", "at least one basis element required");
            const Json& m = member(s, "mult", w);
            if (!m.is_array() || m.size() != n) schema_fail(w + "/mult", "expected " + std::to_string(n) + " rows");
            for (std::size_t i = 0; i < n; ++i) {
                if (!m[i].is_array() || m[i].size() != n) schema_fail(w + "/mult/" + std::to_string(i), "expected " + std::to_string(n) + " entries");
                std::vector<std::vector<std::string>> row;
                for (std::size_t k = 0; k < n; ++k) {
                    auto v = scalar_list(m[i][k], w + "/mult/" + std::to_string(i) + "/" + std::to_string(k), fld);
                    if (v.size() != n) schema_fail(w + "/mult/" + std::to_string(i) + "/" + std::to_string(k), "expected " + std::to_string(n) + " coordinates");
                    row.push_back(v);
                }
                d.algebra.mult.push_back(row);
            }
            d.algebra.unit = scalar_list(member(s, "unit", w), w + "/unit", fld);
            if (d.algebra.unit.size() != n) schema_fail(w + "/unit", "expected " + std::to_string(n) + " coordinates");
        }
    }

    std::map<std::string, std::size_t> names;
    if (j.contains("modules")) {
        const Json& ms = j.at("modules");
        if (!ms.is_array()) schema_fail("/modules", "expected an array");
        for (std::size_t i = 0; i < ms.size(); ++i) {
            std::string w = "/modules/" + std::to_string(i);
            only_keys(ms[i], {"name", "kind", "vertex", "of", "power", "dim", "actions"}, w);
            ModuleDoc m;
            m.name = as_string(member(ms[i], "name", w), w + "/name");
            if (names.count(m.name)) schema_fail(w + "/name", "duplicate module name \"" + m.name + "\"");
            m.kind = as_string(member(ms[i], "kind", w), w + "/kind");
            if (m.kind == "simple" || m.kind == "projective") {
                const Json& v = member(ms[i], "vertex", w);
                m.vertex = v.is_number_integer() ? std::to_string(v.get<long long>()) : as_string(v, w + "/vertex");
            } else if (m.kind == "omega") {
                m.of = as_string(member(ms[i], "of", w), w + "/of");
                if (!names.count(m.of)) schema_fail(w + "/of", "\"" + m.of + "\" is not an earlier module");
                if (ms[i].contains("power")) m.power = as_size(ms[i].at("power"), w + "/power", 0);
            } else if (m.kind == "actions") {
                m.dim = as_size(member(ms[i], "dim", w), w + "/dim");
                const Json& acts = member(ms[i], "actions", w);
                if (!acts.is_array()) schema_fail(w + "/actions", "expected an array of matrices");
                for (std::size_t k = 0; k < acts.size(); ++k) {
                    auto M = scalar_matrix(acts[k], w + "/actions/" + std::to_string(k), fld);
                    if (M.size() != m.dim || (m.dim && M[0].size() != m.dim))
                        schema_fail(w + "/actions/" + std::to_string(k), "expected a " + std::to_string(m.dim) + "x" + std::to_string(m.dim) + " matrix");
                    m.actions.push_back(M);
                }
            } else if (m.kind != "regular") {
                schema_fail(w + "/kind", "unknown module kind \"" + m.kind + "\" (regular, simple, projective, omega, actions)");
            }
            names[m.name] = i;
            d.modules.push_back(m);
        }
    }

    if (j.contains("scenario")) {
        const Json& s = j.at("scenario");
        std::string w = "/scenario";
        only_keys(s, {"name", "X", "t", "cap", "window", "audits", "surjection"}, w);
        if (s.contains("name")) d.scenario.name = as_string(s.at("name"), w + "/name");
        if (s.contains("X")) {
            const Json& X = s.at("X");
            if (!X.is_array()) schema_fail(w + "/X", "expected an array of summands");
            for (std::size_t i = 0; i < X.size(); ++i) {
                std::string wi = w + "/X/" + std::to_string(i);
                only_keys(X[i], {"module", "multiplicity", "projective_part"}, wi);
                SummandDoc sd;
                sd.module = as_string(member(X[i], "module", wi), wi + "/module");
                if (!names.count(sd.module)) schema_fail(wi + "/module", "unknown module \"" + sd.module + "\"");
                if (X[i].contains("multiplicity")) sd.multiplicity = as_size(X[i].at("multiplicity"), wi + "/multiplicity", 1);
                if (X[i].contains("projective_part")) {
                    if (!X[i].at("projective_part").is_boolean()) schema_fail(wi + "/projective_part", "expected a boolean");
                    sd.projective_part = X[i].at("projective_part").get<bool>();
                }
                d.scenario.X.push_back(sd);
            }
        }
        if (s.contains("t")) {
            const Json& t = s.at("t");
            if (t.is_number_integer()) d.scenario.t.push_back(as_size(t, w + "/t", 2));
            else if (t.is_array())
                for (std::size_t i = 0; i < t.size(); ++i) d.scenario.t.push_back(as_size(t[i], w + "/t/" + std::to_string(i), 2));
            else schema_fail(w + "/t", "expected an integer >= 2 or an array of them");
        }
        if (s.contains("cap")) d.scenario.cap = as_size(s.at("cap"), w + "/cap", 1);
        if (s.contains("window")) {
            const Json& win = s.at("window");
            if (!win.is_array() || win.size() != 2 || !win[0].is_number_integer() || !win[1].is_number_integer() || win[0].get<int>() > win[1].get<int>())
                schema_fail(w + "/window", "expected [lo, hi] with lo <= hi");
            d.scenario.window = std::make_pair(win[0].get<int>(), win[1].get<int>());
        }
        if (s.contains("audits")) {
            auto list = string_list(s.at("audits"), w + "/audits");
            for (std::size_t i = 0; i < list.size(); ++i) {
                const auto& a = list[i];
                if (a == "all") {
                    for (const auto& n : audit_names())
                        if (std::find(d.scenario.audits.begin(), d.scenario.audits.end(), n) == d.scenario.audits.end()) d.scenario.audits.push_back(n);
                } else if (std::find(audit_names().begin(), audit_names().end(), a) != audit_names().end()) {
                    if (std::find(d.scenario.audits.begin(), d.scenario.audits.end(), a) == d.scenario.audits.end()) d.scenario.audits.push_back(a);
                } else {
                    schema_fail(w + "/audits/" + std::to_string(i), "unknown audit \"" + a + "\"");
                }
            }
            // canonical order
            std::vector<std::string> ordered;
            for (const auto& n : audit_names())
                if (std::find(d.scenario.audits.begin(), d.scenario.audits.end(), n) != d.scenario.audits.end()) ordered.push_back(n);
            d.scenario.audits = ordered;
        }
        if (s.contains("surjection")) {
            const Json& p = s.at("surjection");
            std::string wp = w + "/surjection";
            only_keys(p, {"ideal", "rows"}, wp);
            d.scenario.surjection.ideal = as_string(member(p, "ideal", wp), wp + "/ideal");
            const auto& id = d.scenario.surjection.ideal;
            if (id == "rows") d.scenario.surjection.rows = scalar_matrix(member(p, "rows", wp), wp + "/rows", fld);
            else if (id != "radical" && id != "zero") schema_fail(wp + "/ideal", "expected \"radical\", \"zero\" or \"rows\"");
        }
        bool needs_x = false;
        for (const auto& a : d.scenario.audits) needs_x = needs_x || a == "resolve" || a == "ext" || a == "spherical" || a == "tilting";
        if (needs_x && d.scenario.X.empty()) schema_fail(w + "/X", "the requested audits need X");
        bool needs_t = std::find(d.scenario.audits.begin(), d.scenario.audits.end(), "spherical") != d.scenario.audits.end();
        if (needs_t && d.scenario.t.empty()) schema_fail(w + "/t", "the spherical audit needs t");
    }
    return d;
}

inline ScenarioDoc parse_scenario(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorKind::ParseError, detail::located(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
    }
    return scenario_from_json(j);
}

// Normalized serialization; parse(serialize(parse(x))) == parse(x).
inline Json scenario_to_json(const ScenarioDoc& d) {
    Json j;
    if (d.prime) j["field"] = Json{{"prime", d.prime}};
    else j["field"] = "rational";
    if (d.algebra.form != "field") {
        Json a;
        a["name"] = d.algebra.name;
        if (d.algebra.form == "quiver") {
            Json q;
            q["vertices"] = d.algebra.vertices;
            Json arr = Json::array();
            for (const auto& ad : d.algebra.arrows) arr.push_back(Json{{"name", ad.name}, {"from", ad.from}, {"to", ad.to}});
            q["arrows"] = arr;
            Json rels = Json::array();
            for (const auto& r : d.algebra.relations) {
                Json rr = Json::array();
                for (const auto& t : r) rr.push_back(Json{{"coeff", t.coeff}, {"path", t.path}});
                rels.push_back(rr);
            }
            q["relations"] = rels;
            if (d.algebra.zero_length) q["zero_length"] = d.algebra.zero_length;
            a["quiver"] = q;
        } else {
            a["structure"] = Json{{"basis", d.algebra.basis}, {"mult", d.algebra.mult}, {"unit", d.algebra.unit}};
        }
        j["algebra"] = a;
    }
    Json ms = Json::array();
    for (const auto& m : d.modules) {
        Json jm{{"name", m.name}, {"kind", m.kind}};
        if (m.kind == "simple" || m.kind == "projective") jm["vertex"] = m.vertex;
        if (m.kind == "omega") {
            jm["of"] = m.of;
            jm["power"] = m.power;
        }
        if (m.kind == "actions") {
            jm["dim"] = m.dim;
            jm["actions"] = m.actions;
        }
        ms.push_back(jm);
    }
    j["modules"] = ms;
    Json s;
    if (!d.scenario.name.empty()) s["name"] = d.scenario.name;
    Json X = Json::array();
    for (const auto& x : d.scenario.X) X.push_back(Json{{"module", x.module}, {"multiplicity", x.multiplicity}, {"projective_part", x.projective_part}});
    s["X"] = X;
    s["t"] = d.scenario.t;
    if (d.scenario.cap) s["cap"] = *d.scenario.cap;
    if (d.scenario.window) s["window"] = Json::array({d.scenario.window->first, d.scenario.window->second});
    s["audits"] = d.scenario.audits;
    if (!d.scenario.surjection.ideal.empty()) {
        Json p{{"ideal", d.scenario.surjection.ideal}};
        if (d.scenario.surjection.ideal == "rows") p["rows"] = d.scenario.surjection.rows;
        s["surjection"] = p;
    }
    j["scenario"] = s;
    return j;
}

inline bool operator==(const ScenarioDoc& a, const ScenarioDoc& b) { return scenario_to_json(a) == scenario_to_json(b); }

// ---- construction ----

namespace detail {

// Construction failures caused by the document become schema errors located at `where`.
template <class F>
auto located_build(const std::string& where, F&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SchemaError) throw;
        schema_fail(where, e.what());
    }
}

} // namespace detail

struct Built {
    Field field;
    AlgebraPtr algebra;
    std::map<std::string, ModulePtr> modules;
    std::vector<std::string> module_order;
};

inline AlgebraPtr build_algebra(const AlgebraDoc& a, Field f) {
    if (a.form == "field") {
        Algebra k(f, {"1"}, {{Vec{Scalar(1, f)}}}, Vec{Scalar(1, f)});
        k.set_name(a.name);
        return with_structure(std::move(k));
    }
    if (a.form == "quiver") {
        QuiverSpec q;
        q.vertices = a.vertices;
        auto vid = [&](const std::string& v) { return static_cast<std::size_t>(std::find(a.vertices.begin(), a.vertices.end(), v) - a.vertices.begin()); };
        for (const auto& ar : a.arrows) q.arrows.push_back({ar.name, vid(ar.from), vid(ar.to)});
        for (const auto& r : a.relations) {
            Relation rel;
            for (const auto& t : r) {
                RelationTerm term{Scalar::parse(t.coeff, f), {}};
                for (const auto& p : t.path)
                    for (std::size_t k = 0; k < a.arrows.size(); ++k)
                        if (a.arrows[k].name == p) term.path.push_back(k);
                rel.push_back(term);
            }
            q.relations.push_back(rel);
        }
        q.zero_length = a.zero_length;
        return from_quiver(q, f);
    }
    std::size_t n = a.basis.size();
    std::vector<std::vector<Vec>> mult(n, std::vector<Vec>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& s : a.mult[i][j]) mult[i][j].push_back(Scalar::parse(s, f));
    Vec unit;
    for (const auto& s : a.unit) unit.push_back(Scalar::parse(s, f));
    Algebra A(f, a.basis, mult, unit, true);
    A.set_name(a.name);
    return with_structure(std::move(A));
}

// Vertex by name (quiver algebras) or by primitive idempotent index.
inline std::size_t resolve_vertex(const AlgebraDoc& a, const AlgebraPtr& A, const std::string& v, const std::string& where) {
    if (a.form == "quiver") {
        auto it = std::find(a.vertices.begin(), a.vertices.end(), v);
        if (it == a.vertices.end()) detail::schema_fail(where, "unknown vertex \"" + v + "\"");
        return static_cast<std::size_t>(it - a.vertices.begin());
    }
    std::size_t k = 0;
    try {
        k = std::stoul(v);
    } catch (...) {
        detail::schema_fail(where, "vertex must be a primitive idempotent index");
    }
    if (k >= A->idempotents().prim.size()) detail::schema_fail(where, "primitive idempotent index out of range");
    return k;
}

inline Built build(const ScenarioDoc& d) {
    Built b;
    b.field = d.prime ? Field::prime(d.prime) : Field::rational();
    b.algebra = detail::located_build("/algebra", [&] { return build_algebra(d.algebra, b.field); });
    const auto& A = b.algebra;
    for (std::size_t i = 0; i < d.modules.size(); ++i) {
        const auto& m = d.modules[i];
        std::string w = "/modules/" + std::to_string(i);
        ModulePtr M;
        if (m.kind == "regular") {
            M = regular_module(A);
        } else if (m.kind == "projective") {
            M = right_ideal(A, A->idempotents().prim[resolve_vertex(d.algebra, A, m.vertex, w + "/vertex")]).module;
        } else if (m.kind == "simple") {
            std::size_t v = resolve_vertex(d.algebra, A, m.vertex, w + "/vertex");
            std::size_t c = A->idempotents().cls[v];
            for (auto& s : simple_modules(A))
                if (s.idempotent_class == c) M = s.module;
        } else if (m.kind == "omega") {
            M = b.modules.at(m.of);
            for (std::size_t k = 0; k < m.power; ++k) M = strip(syzygy(M));
        } else {
            if (m.actions.size() != A->dim()) detail::schema_fail(w + "/actions", "expected one matrix per algebra basis element (" + std::to_string(A->dim()) + ")");
            std::vector<Matrix> acts;
            for (const auto& Mt : m.actions) {
                Matrix X(m.dim, m.dim, b.field);
                for (std::size_t r = 0; r < m.dim; ++r)
                    for (std::size_t c = 0; c < m.dim; ++c) X(r, c) = Scalar::parse(Mt[r][c], b.field);
                acts.push_back(X);
            }
            M = detail::located_build(w + "/actions", [&] { return make_module(Module(A, m.dim, acts, true)); });
        }
        b.modules[m.name] = M;
        b.module_order.push_back(m.name);
    }
    return b;
}

inline FrobeniusContext build_scenario_context(const ScenarioDoc& d, const Built& b) {
    std::vector<SummandSpec> specs;
    for (const auto& x : d.scenario.X) specs.push_back({b.modules.at(x.module), x.multiplicity, x.projective_part, x.module});
    return detail::located_build("/scenario/X", [&] { return build_context(b.algebra, specs); });
}

inline SurjectionData build_surjection(const ScenarioDoc& d, const Built& b) {
    const auto& A = b.algebra;
    const auto& s = d.scenario.surjection;
    const std::string w = "/scenario/surjection";
    if (s.ideal == "radical") return detail::located_build(w, [&] { return quotient_surjection(A, radical(*A)); });
    if (s.ideal == "zero") return detail::located_build(w, [&] { return quotient_surjection(A, Matrix(0, A->dim(), b.field)); });
    std::vector<Vec> rows;
    for (std::size_t r = 0; r < s.rows.size(); ++r) {
        if (s.rows[r].size() != A->dim()) detail::schema_fail(w + "/rows/" + std::to_string(r), "expected " + std::to_string(A->dim()) + " coordinates");
        Vec v;
        for (const auto& x : s.rows[r]) v.push_back(Scalar::parse(x, b.field));
        rows.push_back(v);
    }
    return detail::located_build(w + "/rows", [&] { return quotient_surjection(A, Matrix::from_rows(rows, A->dim(), b.field)); });
}

} // namespace sphertwist
