#pragma once

// Projective resolutions over Lambda: radd0, partial covers, partially minimal and minimal
// resolutions, projective dimension, and the shape of the resolution of e_i Lambda_con.

#include <optional>
#include <string>
#include <vector>

#include "frobenius.hpp"

namespace sphertwist {

// A module over B viewed over A through a surjection p: A -> B.
inline ModulePtr restrict_scalars(const ModulePtr& m, const SurjectionData& p) {
    require(same_algebra(*m->algebra(), *p.target), ErrorKind::AlgebraMismatch, "module is not over the quotient");
    std::vector<Matrix> act;
    for (std::size_t i = 0; i < p.source->dim(); ++i) act.push_back(m->act(p.matrix.row(i)));
    return make_module(Module(p.source, m->dim(), act));
}

// Lambda_con and e_i Lambda_con as Lambda-modules.
inline ModulePtr lambda_con_module(const FrobeniusContext& ctx) { return restrict_scalars(regular_module(ctx.Lambda_con()), ctx.pi); }

inline ModulePtr corner_con_module(const FrobeniusContext& ctx, std::size_t i) {
    return restrict_scalars(right_ideal(ctx.Lambda_con(), ctx.pi.apply(ctx.e(i))).module, ctx.pi);
}

// Simple Lambda-modules killed by e0, one per X_i.
inline std::vector<ModulePtr> con_simples(const FrobeniusContext& ctx) {
    std::vector<ModulePtr> out;
    for (std::size_t i = 0; i < ctx.n(); ++i) out.push_back(top(right_ideal(ctx.Lambda, ctx.e(i)).module).module);
    return out;
}

// Submodule generated by the rows of m.act(e): m e Lambda.
inline Matrix generated_by_corner(const Module& m, const Vec& e) {
    const Algebra& L = *m.algebra();
    std::vector<Vec> rows;
    for (std::size_t j = 0; j < L.dim(); ++j) {
        Matrix a = m.act(L.mul(e, L.basis(j)));
        for (std::size_t r = 0; r < a.rows(); ++r) rows.push_back(a.row(r));
    }
    return row_basis_of(rows, m.dim(), m.field());
}

// Preimage in m of rad(m / m e0 Lambda).
inline Matrix radd0(const FrobeniusContext& ctx, const ModulePtr& m) {
    Matrix sub = generated_by_corner(*m, ctx.e0);
    auto q = quotient(m, sub, false);
    Matrix r = module_radical(*q.module);
    std::vector<Vec> rows = sub.row_list();
    for (std::size_t k = 0; k < r.rows(); ++k) {
        Vec x = zero_vec(m->dim(), m->field());
        for (std::size_t c = 0; c < q.lift.size(); ++c) x[q.lift[c]] = r(k, c);
        rows.push_back(x);
    }
    return row_basis_of(rows, m->dim(), m->field());
}

inline bool is_partially_essential(const FrobeniusContext& ctx, const ModuleHom& epi) {
    require(rank(epi.matrix) == epi.target->dim(), ErrorKind::NotSurjective, "map is not an epimorphism");
    RowSpace ker(left_kernel(epi.matrix));
    RowSpace r(radd0(ctx, epi.source));
    return r.contains(ker);
}

// Lambda_con-simples in the top covered by e_i Lambda, every other simple by its summand of e0 Lambda.
inline ProjectiveCover partial_cover(const FrobeniusContext& ctx, const ModulePtr& m) {
    const auto& L = ctx.Lambda;
    const auto& d = L->idempotents();
    Field f = m->field();
    auto t = top(m);
    std::vector<std::size_t> order; // Lambda primitive indices: X_i in summand order, then the projective part
    for (std::size_t i = 0; i < ctx.n(); ++i) order.push_back(ctx.x_prim[i]);
    for (auto k : ctx.e0_prims) order.push_back(k);
    std::vector<bool> done_class(d.classes(), false);
    std::vector<std::size_t> idem;
    std::vector<Vec> gens;
    std::vector<Vec> chosen_top;
    std::size_t rk = 0;
    for (auto k : order) {
        if (done_class[d.cls[k]]) continue;
        done_class[d.cls[k]] = true;
        Matrix E = m->act(d.prim[k]);
        for (std::size_t r = 0; r < E.rows(); ++r) {
            Vec x = E.row(r);
            if (is_zero_vec(x)) continue;
            chosen_top.push_back(x * t.projection);
            std::size_t nr = row_basis_of(chosen_top, t.module->dim(), f).rows();
            if (nr == rk) {
                chosen_top.pop_back();
                continue;
            }
            rk = nr;
            idem.push_back(k);
            gens.push_back(x);
        }
    }
    auto cov = cover_from_generators(m, idem, gens);
    require(rank(cov.map) == m->dim(), ErrorKind::AuditFailed, "partial cover is not surjective");
    return cov;
}

struct Resolution {
    ModulePtr target;
    std::vector<ProjectiveModule> terms;    // P_0, P_1, ...
    std::vector<Matrix> maps;               // maps[k]: P_{k+1} -> P_k
    std::vector<std::vector<Vec>> images;   // images[k]: generator images of P_{k+1} in P_k
    Matrix augmentation;                    // P_0 -> target
    std::vector<Vec> aug_images;
    bool minimal = false, partially_minimal = false, truncated = false;

    std::size_t length() const { return terms.empty() ? 0 : terms.size() - 1; }
    std::vector<std::size_t> dims() const {
        std::vector<std::size_t> out;
        for (const auto& p : terms) out.push_back(p.module->dim());
        return out;
    }
    // Matrix of the differential out of P_k (k >= 1) or the augmentation (k = 0).
    const Matrix& differential(std::size_t k) const { return k == 0 ? augmentation : maps[k - 1]; }
};

namespace detail {

template <class Cover>
Resolution build_resolution(const ModulePtr& m, std::size_t cap, Cover cover) {
    Resolution res;
    res.target = m;
    Field f = m->field();
    if (m->dim() == 0) {
        res.terms.push_back(projective_module(m->algebra(), {}));
        res.augmentation = Matrix(0, 0, f);
        return res;
    }
    auto c0 = cover(m);
    res.terms.push_back(c0.P);
    res.augmentation = c0.map;
    res.aug_images = c0.gens;
    Matrix prev = c0.map;
    ModulePtr prev_target = m;
    while (true) {
        auto K = kernel_of({res.terms.back().module, prev_target, prev});
        if (K.module->dim() == 0) break;
        if (res.terms.size() > cap) {
            res.truncated = true;
            break;
        }
        auto c = cover(K.module);
        std::vector<Vec> imgs;
        for (const auto& g : c.gens) imgs.push_back(g * K.inclusion);
        res.terms.push_back(c.P);
        res.maps.push_back(c.map * K.inclusion);
        res.images.push_back(imgs);
        prev = res.maps.back();
        prev_target = res.terms[res.terms.size() - 2].module;
    }
    return res;
}

} // namespace detail

inline std::size_t default_cap(const AlgebraPtr& L) { return 2 * L->dim() + 2; }

inline Resolution minimal_resolution(const ModulePtr& m, std::size_t cap) {
    auto r = detail::build_resolution(m, cap, [](const ModulePtr& k) { return projective_cover(k); });
    r.minimal = true;
    return r;
}

// Hom(f_i, S) = 0 for i > 0 and every Lambda_con-simple S.
inline bool check_partially_minimal(const FrobeniusContext& ctx, const Resolution& r) {
    auto simples = con_simples(ctx);
    for (std::size_t i = 0; i < r.maps.size(); ++i)
        for (const auto& S : simples)
            for (const auto& phi : hom_space(*r.terms[i].module, *S))
                if (!(r.maps[i] * phi).is_zero()) return false;
    return true;
}

inline Resolution partially_minimal_resolution(const FrobeniusContext& ctx, const ModulePtr& m, std::size_t cap) {
    require(cap >= 1, ErrorKind::InvalidArgument, "cap must be at least 1");
    auto r = detail::build_resolution(m, cap, [&](const ModulePtr& k) { return partial_cover(ctx, k); });
    r.partially_minimal = check_partially_minimal(ctx, r);
    require(r.partially_minimal, ErrorKind::AuditFailed, "resolution is not partially minimal");
    return r;
}

struct ResolutionAudit {
    bool exact = true, projective = true, euler = true;
    bool ok() const { return exact && projective && euler; }
};

// Checks exactness by rank bookkeeping, projectivity of the terms, and the Euler identity.
inline ResolutionAudit audit_resolution(const Resolution& r) {
    ResolutionAudit a;
    const auto& m = r.target;
    if (m->dim() == 0) return a;
    auto R = regular_module(m->algebra());
    if (rank(r.augmentation) != m->dim()) a.exact = false;
    for (std::size_t k = 0; k < r.terms.size(); ++k) {
        const auto& P = r.terms[k].module;
        if (!in_add(*P, *R)) a.projective = false;
        std::size_t out_rank = rank(r.differential(k));
        std::size_t in_rank = k < r.maps.size() ? rank(r.maps[k]) : 0;
        if (k < r.maps.size() && !(r.maps[k] * r.differential(k)).is_zero()) a.exact = false;
        bool last = k + 1 == r.terms.size();
        if (!(last && r.truncated) && out_rank + in_rank != P->dim()) a.exact = false;
        for (std::size_t i = 0; i < r.terms[k].summands(); ++i) {
            const auto& x = k == 0 ? r.aug_images[i] : r.images[k - 1][i];
            const auto& tgt = k == 0 ? *m : *r.terms[k - 1].module;
            if (tgt.apply(x, m->algebra()->idempotents().prim[r.terms[k].idem[i]]) != x) a.exact = false;
        }
    }
    if (!r.truncated) {
        long s = 0;
        for (std::size_t k = 0; k < r.terms.size(); ++k)
            s += (k % 2 ? -1 : 1) * static_cast<long>(r.terms[k].module->dim());
        a.euler = s == static_cast<long>(m->dim());
    }
    return a;
}

// Length of a minimal resolution, or nothing when it exceeds the cap.
inline std::optional<std::size_t> projective_dimension(const ModulePtr& m, std::size_t cap) {
    auto r = minimal_resolution(m, cap);
    if (r.truncated) return std::nullopt;
    return r.length();
}

inline bool is_perfect(const ModulePtr& m, std::size_t cap) { return projective_dimension(m, cap).has_value(); }

struct ShapeReport {
    std::size_t i = 0, t = 0;
    std::size_t tau = 0;                  // index j of X_j in the tail
    std::vector<std::size_t> tail_e0;     // Lambda primitive indices of the projective-part summands of the tail
    std::vector<std::size_t> dims;
};

// Reads off tau(i) from a resolution of e_i Lambda_con of length t.
inline ShapeReport extract_shape(const FrobeniusContext& ctx, const Resolution& r, std::size_t i, std::size_t t) {
    require(t >= 2, ErrorKind::InvalidArgument, "t must be at least 2");
    const auto& d = ctx.Lambda->idempotents();
    if (r.truncated || r.length() != t)
        fail(ErrorKind::ShapeMismatch, "resolution of e_" + std::to_string(i + 1) + " Lambda_con has length " +
                                           (r.truncated ? std::string(">= cap") : std::to_string(r.length())) + ", expected " +
                                           std::to_string(t));
    std::vector<bool> e0_class(d.classes(), false);
    for (auto k : ctx.e0_prims) e0_class[d.cls[k]] = true;
    for (std::size_t k = 1; k < t; ++k)
        for (auto idx : r.terms[k].idem)
            if (!e0_class[d.cls[idx]])
                fail(ErrorKind::ShapeMismatch, "term " + std::to_string(k) + " is not in add e0 Lambda");
    ShapeReport s;
    s.i = i;
    s.t = t;
    s.dims = r.dims();
    std::vector<std::size_t> xs;
    for (auto idx : r.terms[t].idem) {
        if (e0_class[d.cls[idx]]) {
            s.tail_e0.push_back(idx);
            continue;
        }
        for (std::size_t j = 0; j < ctx.n(); ++j)
            if (d.cls[ctx.x_prim[j]] == d.cls[idx]) xs.push_back(j);
    }
    if (xs.size() != 1) fail(ErrorKind::ShapeMismatch, "tail does not contain exactly one E(X, X_j)");
    s.tau = xs[0];
    return s;
}

} // namespace sphertwist
