#pragma once

// Runs the audits requested by a scenario and assembles a deterministic report.

#include <atomic>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <thread>

#include "io.hpp"
#include "spherical.hpp"
#include "twist.hpp"

namespace sphertwist {

// Worker count from SPHERTWIST_THREADS (positive integer), default 1.
inline std::size_t thread_count() {
    const char* s = std::getenv("SPHERTWIST_THREADS");
    if (!s || !*s) return 1;
    char* end = nullptr;
    long n = std::strtol(s, &end, 10);
    require(end && *end == '\0' && n >= 1, ErrorKind::InvalidArgument, "SPHERTWIST_THREADS must be a positive integer");
    return static_cast<std::size_t>(n);
}

// Runs tasks on up to `threads` workers; results keep task order.
inline std::vector<Json> run_ordered(const std::vector<std::function<Json()>>& tasks, std::size_t threads) {
    std::vector<Json> out(tasks.size());
    auto guarded = [&](std::size_t i) {
        try {
            out[i] = tasks[i]();
        } catch (const Error& e) {
            out[i] = Json{{"error", error_kind_name(e.kind())}, {"message", e.what()}};
        }
    };
    threads = std::max<std::size_t>(1, std::min(threads, tasks.size()));
    if (threads == 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) guarded(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < tasks.size(); i = next++) guarded(i);
        });
    for (auto& th : pool) th.join();
    return out;
}

struct RunOptions {
    std::optional<std::size_t> cap;
    std::optional<std::pair<int, int>> window;
    std::optional<std::vector<std::string>> audits; // overrides the document's list
    std::size_t threads = 1;
};

struct Report {
    Json body;
    bool failed = false;    // an audit failed or two computations disagree
    bool truncated = false; // some output was cut at the cap
    int exit_code() const { return failed ? 4 : truncated ? 3 : 0; }
};

namespace detail {

inline Json perm_json(const std::optional<Permutation>& p) {
    if (!p) return nullptr;
    Json a = Json::array();
    for (auto x : *p) a.push_back(x + 1);
    return a;
}

// Cohomology table restricted to the requested window.
inline Json dims_json(int lo, const std::vector<std::size_t>& dims, const std::optional<std::pair<int, int>>& window) {
    Json out = Json::object();
    int a = lo, b = lo + static_cast<int>(dims.size()) - 1;
    if (window) {
        a = std::max(a, window->first);
        b = std::min(b, window->second);
    }
    out["lo"] = a;
    Json d = Json::array();
    for (int n = a; n <= b; ++n) d.push_back(dims[static_cast<std::size_t>(n - lo)]);
    out["dims"] = d;
    return out;
}

inline Json resolution_json(const Resolution& r) {
    auto a = audit_resolution(r);
    return Json{{"dims", r.dims()},
                {"length", r.truncated ? Json(nullptr) : Json(r.length())},
                {"truncated", r.truncated},
                {"partially_minimal", r.partially_minimal},
                {"exact", a.exact},
                {"projective_terms", a.projective},
                {"euler", a.euler}};
}

inline Json side_json(const SideAudit& s) {
    auto opt = [](const std::optional<std::size_t>& x) { return x ? Json(*x) : Json(nullptr); };
    return Json{{"pdim_right", opt(s.pdim_right)}, {"pdim_left", opt(s.pdim_left)}, {"rho", s.rho},
                {"lambda", s.lambda}, {"ext_right", s.ext_right}, {"ext_left", s.ext_left}, {"ok", s.ok()}};
}

inline std::string module_label(const Module& m, const std::string& name) { return name + " (dim " + std::to_string(m.dim()) + ")"; }

} // namespace detail

inline Json echo_json(const ScenarioDoc& d, const Built& b, const FrobeniusContext* ctx, std::size_t cap) {
    Json e;
    if (!d.scenario.name.empty()) e["name"] = d.scenario.name;
    e["field"] = b.field.name();
    e["algebra"] = Json{{"name", d.algebra.name}, {"form", d.algebra.form}, {"dim", b.algebra->dim()}};
    Json ms = Json::array();
    for (const auto& n : b.module_order) ms.push_back(Json{{"name", n}, {"dim", b.modules.at(n)->dim()}});
    e["modules"] = ms;
    Json X = Json::array();
    for (const auto& x : d.scenario.X)
        X.push_back(Json{{"module", x.module}, {"multiplicity", x.multiplicity}, {"projective_part", x.projective_part}});
    e["X"] = X;
    e["t"] = d.scenario.t;
    e["cap"] = cap;
    if (ctx) e["Lambda"] = Json{{"dim", ctx->Lambda->dim()}, {"con_dim", ctx->Lambda_con()->dim()}, {"n", ctx->n()}};
    if (!d.scenario.surjection.ideal.empty()) e["surjection"] = d.scenario.surjection.ideal;
    return e;
}

inline Report run(const ScenarioDoc& doc, const RunOptions& opt = {}) {
    Report rep;
    auto built = build(doc);
    auto audits = opt.audits ? *opt.audits : doc.scenario.audits;
    auto has = [&](const std::string& a) { return std::find(audits.begin(), audits.end(), a) != audits.end(); };
    bool needs_ctx = has("resolve") || has("ext") || has("spherical") || has("tilting") ||
                     ((has("tor") || has("twist")) && doc.scenario.surjection.ideal.empty());
    if (needs_ctx && doc.scenario.X.empty()) fail(ErrorKind::SchemaError, "/scenario/X: the requested audits need X");
    if (has("spherical") && doc.scenario.t.empty()) fail(ErrorKind::SchemaError, "/scenario/t: the spherical audit needs t");

    std::optional<FrobeniusContext> ctx;
    if (!doc.scenario.X.empty()) ctx = build_scenario_context(doc, built);
    std::optional<SurjectionData> p;
    if (!doc.scenario.surjection.ideal.empty()) p = build_surjection(doc, built);
    else if (ctx) p = ctx->pi;

    const AlgebraPtr& base = ctx ? ctx->Lambda : built.algebra;
    std::size_t cap = opt.cap ? *opt.cap : doc.scenario.cap ? *doc.scenario.cap : default_cap(p ? p->source : base);
    auto window = opt.window ? opt.window : doc.scenario.window;

    rep.body["scenario"] = echo_json(doc, built, ctx ? &*ctx : nullptr, cap);
    rep.body["audits"] = audits;

    std::vector<std::function<Json()>> tasks;
    std::vector<std::string> keys;
    auto add = [&](std::string key, std::function<Json()> fn) {
        keys.push_back(std::move(key));
        tasks.push_back(std::move(fn));
    };

    if (has("resolve"))
        add("resolve", [&] {
            Json j;
            auto con = lambda_con_module(*ctx);
            j["Lambda_con"] = detail::resolution_json(partially_minimal_resolution(*ctx, con, cap));
            Json per = Json::array();
            for (std::size_t i = 0; i < ctx->n(); ++i) {
                auto r = detail::resolution_json(partially_minimal_resolution(*ctx, corner_con_module(*ctx, i), cap));
                r["X"] = i + 1;
                per.push_back(r);
            }
            j["corners"] = per;
            return j;
        });

    if (has("ext"))
        add("ext", [&] {
            Json j = Json::array();
            auto con = lambda_con_module(*ctx);
            auto S = con_simples(*ctx);
            for (std::size_t k = 0; k < S.size(); ++k) {
                auto prof = ext_dims(con, S[k], cap + 1);
                if (prof.complete)
                    while (prof.dims.size() > 1 && prof.dims.back() == 0) prof.dims.pop_back();
                j.push_back(Json{{"simple", k + 1}, {"dims", prof.dims}, {"complete", prof.complete}});
            }
            return j;
        });

    if (has("tor"))
        add("tor", [&] {
            auto cd = cotwist_data(*p, cap);
            Json j{{"dims", cd.tor_dims}, {"complete", cd.complete}, {"t", cd.t ? Json(*cd.t) : Json(nullptr)},
                   {"right_projective", cd.right_projective}, {"left_projective", cd.left_projective}};
            if (ctx && doc.scenario.surjection.ideal.empty()) {
                j["permutation"] = detail::perm_json(cotwist_permutation(*ctx, cd));
                auto right = lambda_con_module(*ctx);
                auto left = lambda_con_left(*ctx);
                std::size_t count = cd.tor_dims.size();
                auto a = tor_dims(right, left, count, true), b = tor_dims(right, left, count, false);
                j["balanced"] = a.dims == b.dims;
            }
            j["cone"] = Json{{"lo", cd.cone_lo}, {"dims", cd.cone_dims}};
            j["cone_degree"] = cd.cone_degree ? Json(*cd.cone_degree) : Json(nullptr);
            j["shift"] = cd.shift ? Json(*cd.shift) : Json(nullptr);
            return j;
        });

    if (has("spherical"))
        for (auto t : doc.scenario.t)
            add("spherical", [&, t] {
                auto r = syz_audit(*ctx, t, cap);
                Json s1{{"perfect", r.side1.perfect},
                        {"pdim", r.side1.pdim ? Json(*r.side1.pdim) : Json(nullptr)},
                        {"resolution_dims", r.side1.resolution_dims},
                        {"ext_profile", r.side1.ext_profile},
                        {"relatively_spherical", r.side1.relatively_spherical},
                        {"verdict", r.side1.verdict()}};
                Json s2{{"rigid", r.side2.rigid}, {"add_periodic", r.side2.add_periodic}, {"tau", detail::perm_json(r.side2.tau)},
                        {"verdict", r.side2.verdict()}};
                Json j{{"t", t}, {"side1", s1}, {"side2", s2}, {"agreement", r.agreement}, {"verdict", r.verdict()}};
                if (r.verdict()) {
                    j["shape_tau"] = detail::perm_json(r.shape_tau);
                    j["tau_consistent"] = r.tau_consistent;
                    j["left_perfect"] = r.left_perfect;
                    j["positive_rigid"] = r.positive_rigid;
                    if (r.nakayama)
                        j["nakayama"] = Json{{"Lambda_con_self_injective", r.nakayama->self_injective},
                                             {"sigma", detail::perm_json(r.nakayama->sigma)},
                                             {"tau_equals_sigma", r.nakayama->tau_eq_sigma}};
                }
                j["violations"] = r.violations();
                j["note"] = "dimension bound t <= d is not binding over a zero-dimensional base";
                return j;
            });

    if (has("twist")) {
        add("twist", [&] {
            auto c = equivalence_certificate(*p, cap);
            Json imgs = Json::array();
            for (std::size_t i = 0; i < c.images.size(); ++i) imgs.push_back(detail::dims_json(c.image_lo[i], c.images[i], window));
            return Json{{"perfect", c.perfect},
                        {"kernel_resolution_length", c.perfect ? Json(c.resolution_length) : Json(nullptr)},
                        {"images", imgs},
                        {"hom_table", Json{{"lo", c.hom_lo}, {"dims", c.hom_table}}},
                        {"endo_dim", c.endo_dim},
                        {"algebra_dim", p->source->dim()},
                        {"off_shift_zero", c.off_shift_zero},
                        {"unit_map_bijective", c.unit_map_bijective},
                        {"verdict", c.verdict},
                        {"strength", "tilting-complex criteria on T(A) plus bijectivity of A -> End(T(A)) up to homotopy"}};
        });
        // battery: simples, indecomposable projectives, the regular module
        std::vector<std::pair<std::string, ModulePtr>> battery;
        const auto& A = p->source;
        auto simples = simple_modules(A);
        for (std::size_t k = 0; k < simples.size(); ++k) battery.push_back({"S" + std::to_string(k + 1), simples[k].module});
        const auto& prim = A->idempotents().prim;
        for (std::size_t k = 0; k < prim.size(); ++k) battery.push_back({"e" + std::to_string(k + 1) + "A", right_ideal(A, prim[k]).module});
        battery.push_back({"A", regular_module(A)});
        for (const auto& [name, M] : battery)
            add("triangle", [&, name, M] {
                auto t = twist_triangle_check(*p, stalk(M), cap);
                return Json{{"module", detail::module_label(*M, name)}, {"cone", detail::dims_json(t.lo, t.cone_dims, window)},
                            {"twist", detail::dims_json(t.lo, t.twist_dims, window)}, {"truncated", t.truncated}, {"match", t.ok()}};
            });
    }

    if (has("tilting"))
        add("tilting", [&] {
            auto a = tilting_audit(*ctx, cap);
            return Json{{"Lambda_minus_dim", a.lambda_minus_dim},
                        {"I0_dim", a.I0_dim},
                        {"D0_dim", a.D0_dim},
                        {"I0", detail::side_json(a.I0)},
                        {"D0", detail::side_json(a.D0)},
                        {"tor_dims", a.tor_dims},
                        {"tor_concentrated", a.tor_concentrated},
                        {"tensor_dim", a.tensor_dim},
                        {"proj_dim", a.proj_dim},
                        {"Lambda_dim", ctx->Lambda->dim()},
                        {"Lambda_con_dim", ctx->Lambda_con()->dim()},
                        {"composite_iso_to_projE", a.composite_iso_to_projE},
                        {"ok", a.ok()}};
        });

    auto results = run_ordered(tasks, opt.threads);

    // ordered reduction
    Json out = Json::object();
    Json errors = Json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        if (r.is_object() && r.contains("error")) {
            errors.push_back(Json{{"audit", keys[i]}, {"error", r["error"]}, {"message", r["message"]}});
            if (r["error"] == "CapExceeded") rep.truncated = true;
            else rep.failed = true;
            continue;
        }
        if (keys[i] == "spherical" || keys[i] == "triangle") {
            std::string k = keys[i] == "spherical" ? "spherical" : "triangles";
            if (!out.contains(k)) out[k] = Json::array();
            out[k].push_back(r);
        } else {
            out[keys[i]] = r;
        }
    }

    // cross-checks between audits
    Json checks = Json::array();
    auto check = [&](const std::string& what, bool ok) {
        checks.push_back(Json{{"check", what}, {"ok", ok}});
        if (!ok) rep.failed = true;
    };
    std::vector<std::size_t> passing;
    if (out.contains("spherical"))
        for (const auto& s : out["spherical"]) {
            check("t=" + std::to_string(s["t"].get<std::size_t>()) + ": side verdicts agree", s["violations"].empty());
            if (s["verdict"].get<bool>()) passing.push_back(s["t"].get<std::size_t>());
        }
    if (out.contains("resolve")) {
        auto good = [](const Json& r) { return r["exact"].get<bool>() && r["projective_terms"].get<bool>() && r["euler"].get<bool>() && r["partially_minimal"].get<bool>(); };
        bool ok = good(out["resolve"]["Lambda_con"]);
        for (const auto& r : out["resolve"]["corners"]) ok = ok && good(r);
        check("resolutions are exact, partially minimal and satisfy the Euler identity", ok);
        if (out["resolve"]["Lambda_con"]["truncated"].get<bool>()) rep.truncated = true;
    }
    if (out.contains("tor")) {
        const auto& t = out["tor"];
        if (t.contains("balanced")) check("Tor balance", t["balanced"].get<bool>());
        if (!t["complete"].get<bool>()) rep.truncated = true;
        for (auto tt : passing) {
            std::string tag = "t=" + std::to_string(tt) + ": ";
            check(tag + "Tor concentrated in degrees 0 and t", t["t"] == tt);
            check(tag + "Tor_t projective on both sides", t["right_projective"].get<bool>() && t["left_projective"].get<bool>());
            check(tag + "cotwist shift is -t-1", t["shift"] == -static_cast<int>(tt) - 1);
            for (const auto& s : out["spherical"])
                if (s["t"] == tt && t.contains("permutation")) check(tag + "Tor_t permutation equals tau", t["permutation"] == s["side2"]["tau"]);
        }
    }
    if (out.contains("twist")) {
        if (!out["twist"]["perfect"].get<bool>()) rep.truncated = true;
        if (!passing.empty()) {
            const auto& c = out["twist"];
            check("twist certificate holds for a spherical scenario",
                  c["verdict"].get<bool>() && c["endo_dim"] == c["algebra_dim"] && c["off_shift_zero"].get<bool>());
        }
    }
    if (out.contains("triangles"))
        for (const auto& tr : out["triangles"]) {
            if (tr["truncated"].get<bool>()) rep.truncated = true;
            check("counit triangle on " + tr["module"].get<std::string>(), tr["match"].get<bool>());
        }
    if (out.contains("tilting") && !passing.empty()) {
        const auto& a = out["tilting"];
        check("tilting criteria and composite iso onto [proj E]",
              a["ok"].get<bool>() && a["tensor_dim"].get<std::size_t>() == a["Lambda_dim"].get<std::size_t>() - a["Lambda_con_dim"].get<std::size_t>());
    }

    for (auto it = out.begin(); it != out.end(); ++it) rep.body[it.key()] = it.value();
    rep.body["checks"] = checks;
    rep.body["errors"] = errors;
    rep.body["truncated"] = rep.truncated;
    rep.body["status"] = rep.failed ? "audit-failure" : rep.truncated ? "truncated" : "ok";
    return rep;
}

// ---- rendering ----

namespace detail {

inline bool is_flat(const Json& j) {
    if (!j.is_array()) return !j.is_object();
    for (const auto& x : j)
        if (x.is_object() || (x.is_array() && !is_flat(x))) return false;
    return true;
}

inline std::string scalar_text(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_null()) return "-";
    if (j.is_array()) {
        std::string s = "(";
        for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + scalar_text(j[i]);
        return s + ")";
    }
    return j.dump();
}

inline void render(std::ostream& os, const Json& j, int indent) {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (is_flat(it.value())) {
                os << pad << it.key() << ": " << scalar_text(it.value()) << "\n";
            } else {
                os << pad << it.key() << ":\n";
                render(os, it.value(), indent + 2);
            }
        }
    } else if (j.is_array()) {
        for (const auto& x : j) {
            if (is_flat(x)) {
                os << pad << "- " << scalar_text(x) << "\n";
            } else {
                os << pad << "-\n";
                render(os, x, indent + 2);
            }
        }
    } else {
        os << pad << scalar_text(j) << "\n";
    }
}

} // namespace detail

inline std::string serialize_report(const Json& body, const std::string& format) {
    if (format == "json") return body.dump(2) + "\n";
    std::ostringstream os;
    detail::render(os, body, 0);
    return os.str();
}

} // namespace sphertwist
