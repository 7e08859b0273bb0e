#pragma once

// The two sides of the syzygy theorem for a context (ambient, X) and an integer t >= 2, the
// permutation tau, the Nakayama comparison, and the tilting bimodules I0, D0.

#include <optional>
#include <string>
#include <vector>

#include "homology.hpp"

namespace sphertwist {

using Permutation = std::vector<std::size_t>;

// ---- side 1: Lambda_con perfect and t-relatively spherical ----

struct Side1 {
    bool perfect = false;
    std::optional<std::size_t> pdim;
    std::vector<std::size_t> resolution_dims;
    std::vector<std::vector<std::size_t>> ext_profile; // per X_i: dim Ext^k(Lambda_con, S_i), k = 0 .. pdim
    bool relatively_spherical = false;
    bool verdict() const { return perfect && relatively_spherical; }
};

inline Side1 relatively_spherical_check(const FrobeniusContext& ctx, std::size_t t, std::size_t cap) {
    require(t >= 2, ErrorKind::InvalidArgument, "t must be at least 2");
    Side1 s;
    auto r = partially_minimal_resolution(ctx, lambda_con_module(ctx), cap);
    s.resolution_dims = r.dims();
    if (r.truncated) return s;
    s.perfect = true;
    s.pdim = r.length();
    s.relatively_spherical = true;
    for (const auto& S : con_simples(ctx)) {
        auto c = hom_complex(r, *S);
        std::vector<std::size_t> prof;
        for (std::size_t k = 0; k <= r.length(); ++k) {
            prof.push_back(c.cohomology_dim(static_cast<int>(k)));
            if (k != 0 && k != t && prof.back() != 0) s.relatively_spherical = false;
        }
        s.ext_profile.push_back(prof);
    }
    return s;
}

// ---- side 2: rigidity and add-periodicity in the stable category ----

namespace detail {

inline ModulePtr nonprojective_part(const FrobeniusContext& ctx) {
    std::vector<ModulePtr> xs;
    for (std::size_t i = 0; i < ctx.n(); ++i) xs.push_back(ctx.Xi(i));
    return xs.empty() ? zero_module(ctx.ambient) : direct_sum(xs);
}

inline ModulePtr projective_part(const FrobeniusContext& ctx) {
    std::vector<ModulePtr> ps;
    for (const auto& s : ctx.summands)
        if (s.projective_part) ps.push_back(s.module);
    return direct_sum(ps);
}

inline ModulePtr omega_power(const ModulePtr& m, std::size_t k) {
    ModulePtr cur = strip(m);
    for (std::size_t i = 0; i < k; ++i) cur = strip(syzygy(cur));
    return cur;
}

} // namespace detail

// Stable Hom(Omega^i X, X) = 0 for 1 <= i <= t-2.
inline bool rigidity_check(const FrobeniusContext& ctx, std::size_t t) {
    require(t >= 2, ErrorKind::InvalidArgument, "t must be at least 2");
    auto X = detail::nonprojective_part(ctx);
    ModulePtr cur = strip(X);
    for (std::size_t i = 1; i + 2 <= t; ++i) {
        cur = strip(syzygy(cur));
        if (stable_hom(cur, X, ctx.ambient_op).stable_dim() != 0) return false;
    }
    return true;
}

// Stable Hom(X, Sigma^i X) = 0 for 1 <= i <= t-2, through cosyzygies.
inline bool positive_rigidity_check(const FrobeniusContext& ctx, std::size_t t) {
    auto X = detail::nonprojective_part(ctx);
    ModulePtr cur = strip(X);
    for (std::size_t i = 1; i + 2 <= t; ++i) {
        cur = strip(cosyzygy(cur, ctx.ambient_op));
        if (stable_hom(X, cur, ctx.ambient_op).stable_dim() != 0) return false;
    }
    return true;
}

// add(Omega^k X + P) = add(X + P).
inline bool add_periodicity_check(const FrobeniusContext& ctx, std::size_t k) {
    auto X = detail::nonprojective_part(ctx);
    auto P = detail::projective_part(ctx);
    auto a = direct_sum({detail::omega_power(X, k), P});
    auto b = direct_sum({X, P});
    return in_add(*a, *b) && in_add(*b, *a);
}

// tau(i) = the unique j with Omega^{t-1} X_i and X_j in each other's add-closure.
inline std::optional<Permutation> permutation_tau(const FrobeniusContext& ctx, std::size_t t) {
    require(t >= 2, ErrorKind::InvalidArgument, "t must be at least 2");
    Permutation tau;
    std::vector<bool> hit(ctx.n(), false);
    for (std::size_t i = 0; i < ctx.n(); ++i) {
        auto Y = detail::omega_power(ctx.Xi(i), t - 1);
        std::optional<std::size_t> found;
        for (std::size_t j = 0; j < ctx.n(); ++j) {
            auto Xj = strip(ctx.Xi(j));
            if (in_add(*Y, *Xj) && in_add(*Xj, *Y)) {
                if (found) return std::nullopt;
                found = j;
            }
        }
        if (!found || hit[*found]) return std::nullopt;
        hit[*found] = true;
        tau.push_back(*found);
    }
    return tau;
}

struct Side2 {
    bool rigid = false;
    bool add_periodic = false;
    std::optional<Permutation> tau;
    bool verdict() const { return rigid && add_periodic; }
};

inline Side2 side2_check(const FrobeniusContext& ctx, std::size_t t) {
    Side2 s;
    s.rigid = rigidity_check(ctx, t);
    s.add_periodic = add_periodicity_check(ctx, t - 1);
    s.tau = permutation_tau(ctx, t);
    return s;
}

// ---- the audit ----

struct NakayamaComparison {
    bool self_injective = false;
    Permutation sigma;
    bool tau_eq_sigma = false;
};

struct SphericalReport {
    std::size_t t = 0;
    Side1 side1;
    Side2 side2;
    bool agreement = false;
    std::optional<Permutation> shape_tau;  // tau read off the resolutions of e_i Lambda_con
    bool tau_consistent = true;            // shape_tau equals side2 tau when both exist
    bool left_perfect = false;             // Lambda_con perfect over Lambda^op
    bool positive_rigid = false;
    std::optional<NakayamaComparison> nakayama;
    bool verdict() const { return side1.verdict() && side2.verdict(); }
    // Failures of assertions that hold whenever both sides are true.
    std::vector<std::string> violations() const {
        std::vector<std::string> v;
        if (!agreement) v.push_back("side verdicts disagree");
        if (verdict()) {
            if (!side2.tau) v.push_back("no permutation tau");
            if (!tau_consistent) v.push_back("tau from resolutions differs from tau from syzygies");
            if (!left_perfect) v.push_back("Lambda_con is not perfect on the left");
            if (!positive_rigid) v.push_back("X is not rigid in the positive direction");
        }
        return v;
    }
};

// Lambda_con as a right module over Lambda^op.
inline ModulePtr lambda_con_left(const FrobeniusContext& ctx) {
    const auto& L = ctx.Lambda;
    auto Lop = opposite(L);
    const auto& B = ctx.Lambda_con();
    std::vector<Matrix> act;
    for (std::size_t i = 0; i < L->dim(); ++i) act.push_back(B->left_mult(ctx.pi.matrix.row(i)));
    return make_module(Module(Lop, B->dim(), act));
}

// Lambda_con primitive index carrying X_i.
inline std::size_t con_index(const FrobeniusContext& ctx, std::size_t i) {
    Vec img = ctx.pi.apply(ctx.e(i));
    const auto& prim = ctx.Lambda_con()->idempotents().prim;
    for (std::size_t k = 0; k < prim.size(); ++k)
        if (prim[k] == img) return k;
    fail(ErrorKind::AuditFailed, "X_" + std::to_string(i + 1) + " has no idempotent in Lambda_con");
}

inline NakayamaComparison nakayama_comparison(const FrobeniusContext& ctx, const Permutation& tau) {
    NakayamaComparison nc;
    const auto& B = ctx.Lambda_con();
    nc.self_injective = is_self_injective(B);
    if (!nc.self_injective) return nc;
    auto by_class = nakayama_permutation(B);
    auto simples = simple_modules(B);
    const auto& d = B->idempotents();
    for (std::size_t i = 0; i < ctx.n(); ++i) {
        std::size_t c = d.cls[con_index(ctx, i)];
        std::size_t target = simples[by_class[c]].idempotent_class;
        std::size_t j = ctx.n();
        for (std::size_t k = 0; k < ctx.n(); ++k)
            if (d.cls[con_index(ctx, k)] == target) j = k;
        nc.sigma.push_back(j);
    }
    nc.tau_eq_sigma = nc.sigma == tau;
    return nc;
}

// The permutation of a Tor_t bimodule over Lambda_con, moved to X indices.
inline std::optional<Permutation> cotwist_permutation(const FrobeniusContext& ctx, const CotwistData& d) {
    if (!d.t) return std::nullopt;
    const auto& cls = ctx.Lambda_con()->idempotents().cls;
    Permutation out;
    for (std::size_t i = 0; i < ctx.n(); ++i) {
        std::size_t k = d.permutation[con_index(ctx, i)];
        if (k >= cls.size()) return std::nullopt;
        std::optional<std::size_t> j;
        for (std::size_t x = 0; x < ctx.n(); ++x)
            if (cls[con_index(ctx, x)] == cls[k]) j = x;
        if (!j) return std::nullopt;
        out.push_back(*j);
    }
    return out;
}

inline SphericalReport syz_audit(const FrobeniusContext& ctx, std::size_t t, std::size_t cap) {
    SphericalReport r;
    r.t = t;
    r.side1 = relatively_spherical_check(ctx, t, cap);
    r.side2 = side2_check(ctx, t);
    r.agreement = r.side1.verdict() == r.side2.verdict();
    if (r.verdict()) {
        Permutation shape;
        for (std::size_t i = 0; i < ctx.n(); ++i) {
            auto res = partially_minimal_resolution(ctx, corner_con_module(ctx, i), cap);
            shape.push_back(extract_shape(ctx, res, i, t).tau);
        }
        r.shape_tau = shape;
        r.tau_consistent = r.side2.tau && *r.side2.tau == shape;
        r.left_perfect = is_perfect(lambda_con_left(ctx), cap);
        r.positive_rigid = positive_rigidity_check(ctx, t);
        if (r.side2.tau) r.nakayama = nakayama_comparison(ctx, *r.side2.tau);
    }
    return r;
}

// ---- tilting bimodules over Lambda_-1 = End(Y), Y = P + Omega X ----
// I0 = [proj](Y, X), the image of Hom(Y, Q0) -> Hom(Y, X) for the conflation Omega X -> Q0 -> X; it is all of
// Hom(Y, X) when stable Hom(Omega X, X) = 0. D0 = Hom(X, Y).

struct HomBimodule {
    BimodulePtr module;
    std::vector<Matrix> basis;
};

// Hom(S, T) over (End T, End S): l . f . m = m f l in diagram order. With projective_only, the
// sub-bimodule of maps factoring through a projective.
inline HomBimodule hom_bimodule(const FrobeniusContext& cT, const FrobeniusContext& cS, bool projective_only = false) {
    HomBimodule h;
    Field f = cT.X->field();
    if (projective_only) {
        auto sh = stable_hom(cS.X, cT.X, cT.ambient_op);
        for (std::size_t r = 0; r < sh.projective.rows(); ++r) {
            Matrix M(cS.X->dim(), cT.X->dim(), f);
            M.raw() = sh.projective.row(r);
            h.basis.push_back(M);
        }
    } else {
        h.basis = hom_space(*cS.X, *cT.X);
    }
    std::vector<Vec> flat;
    for (const auto& B : h.basis) flat.push_back(B.raw());
    RowSpace sp(flat, cS.X->dim() * cT.X->dim(), f);
    std::size_t d = h.basis.size();
    std::vector<Matrix> l, r;
    for (const auto& L : cT.basis) {
        Matrix a(d, d, f);
        for (std::size_t k = 0; k < d; ++k) a.set_row(k, *sp.coords((h.basis[k] * L).raw()));
        l.push_back(a);
    }
    for (const auto& R : cS.basis) {
        Matrix a(d, d, f);
        for (std::size_t k = 0; k < d; ++k) a.set_row(k, *sp.coords((R * h.basis[k]).raw()));
        r.push_back(a);
    }
    h.module = make_bimodule(Bimodule(cT.Lambda, cS.Lambda, d, l, r));
    return h;
}

struct SideAudit {
    std::optional<std::size_t> pdim_right, pdim_left;
    bool rho = false;   // right algebra -> End over the left algebra, bijective
    bool lambda = false; // left algebra -> End over the right algebra, bijective
    bool ext_left = false, ext_right = false; // Ext^{>0} self-vanishing on each side
    bool ok() const { return pdim_right && pdim_left && rho && lambda && ext_left && ext_right; }
};

namespace detail {

// The action matrices `acts` span exactly End(m) and are independent.
inline bool acts_are_endomorphisms(const Module& m, const std::vector<Matrix>& acts) {
    auto E = hom_space(m, m);
    if (E.size() != acts.size()) return false;
    std::vector<Vec> flat;
    for (const auto& a : acts) flat.push_back(a.raw());
    RowSpace S(flat, m.dim() * m.dim(), m.field());
    if (S.dim() != acts.size()) return false;
    for (const auto& e : E)
        if (!S.contains(e.raw())) return false;
    return true;
}

inline bool self_ext_vanishes(const ModulePtr& m, std::size_t pdim) {
    if (pdim == 0) return true;
    auto p = ext_dims(m, m, pdim + 1);
    for (std::size_t i = 1; i < p.dims.size(); ++i)
        if (p.dims[i] != 0) return false;
    return true;
}

} // namespace detail

inline SideAudit audit_tilting_side(const Bimodule& M, std::size_t cap) {
    SideAudit a;
    auto right = M.as_right_module();
    auto left = M.as_left_module(opposite(M.left_algebra()));
    auto rr = minimal_resolution(right, cap);
    auto rl = minimal_resolution(left, cap);
    if (!rr.truncated) a.pdim_right = rr.length();
    if (!rl.truncated) a.pdim_left = rl.length();
    std::vector<Matrix> ra, la;
    for (std::size_t i = 0; i < M.right_algebra()->dim(); ++i) ra.push_back(M.right(i));
    for (std::size_t i = 0; i < M.left_algebra()->dim(); ++i) la.push_back(M.left(i));
    a.rho = detail::acts_are_endomorphisms(*left, ra);
    a.lambda = detail::acts_are_endomorphisms(*right, la);
    a.ext_right = a.pdim_right && detail::self_ext_vanishes(right, *a.pdim_right);
    a.ext_left = a.pdim_left && detail::self_ext_vanishes(left, *a.pdim_left);
    return a;
}

struct TiltingAudit {
    std::size_t lambda_minus_dim = 0;
    std::size_t I0_dim = 0, D0_dim = 0;
    SideAudit I0, D0;
    std::vector<std::size_t> tor_dims;     // Tor^{Lambda_-1}_k(I0, D0)
    bool tor_concentrated = false;
    std::size_t tensor_dim = 0;
    std::size_t proj_dim = 0;              // dim [proj E]
    bool composite_iso_to_projE = false;
    Matrix composite;                      // I0 (x) D0 -> Lambda, rows in tensor coordinates
    bool biperfect() const { return I0.pdim_left && I0.pdim_right && D0.pdim_left && D0.pdim_right; }
    bool rho_iso() const { return I0.rho && D0.rho && I0.ext_left && D0.ext_left; }
    bool lambda_iso() const { return I0.lambda && D0.lambda && I0.ext_right && D0.ext_right; }
    bool ok() const { return biperfect() && rho_iso() && lambda_iso() && tor_concentrated && composite_iso_to_projE; }
};

// Context for Y = P + Omega X_1 + ... + Omega X_n.
inline FrobeniusContext omega_context(const FrobeniusContext& ctx) {
    std::vector<SummandSpec> ys;
    for (const auto& s : ctx.summands)
        if (s.projective_part) ys.push_back(s);
    for (std::size_t i = 0; i < ctx.n(); ++i) {
        auto Y = detail::omega_power(ctx.Xi(i), 1);
        require(Y->dim() > 0, ErrorKind::AuditFailed, "Omega X_" + std::to_string(i + 1) + " is zero");
        ys.push_back({Y, 1, false, "Omega " + ctx.summands[ctx.x_summands[i]].name});
    }
    return build_context(ctx.ambient, ys);
}

inline TiltingAudit tilting_audit(const FrobeniusContext& ctx, std::size_t cap) {
    TiltingAudit a;
    Field f = ctx.X->field();
    auto cy = omega_context(ctx);
    a.lambda_minus_dim = cy.Lambda->dim();
    auto I = hom_bimodule(ctx, cy, true); // [proj](Y, X): Lambda - Lambda_-1
    auto D = hom_bimodule(cy, ctx); // Hom(X, Y): Lambda_-1 - Lambda
    I.module->check();
    D.module->check();
    a.I0_dim = I.module->dim();
    a.D0_dim = D.module->dim();
    a.I0 = audit_tilting_side(*I.module, cap);
    a.D0 = audit_tilting_side(*D.module, cap);

    const auto& R = cy.Lambda;
    auto Dl = D.module->as_left_module(opposite(R));
    auto tor = tor_dims(I.module->as_right_module(), Dl, std::max<std::size_t>(a.I0.pdim_right.value_or(cap), 1) + 1);
    a.tor_dims = tor.dims;
    a.tor_concentrated = tor.complete;
    for (std::size_t k = 1; k < tor.dims.size(); ++k)
        if (tor.dims[k] != 0) a.tor_concentrated = false;

    // I0 (x)_R D0 as (sum_v I e_v (x) e_v D) / (f r (x) g - f (x) r g), mapped by composition
    const auto& prim = R->idempotents().prim;
    std::vector<RowSpace> Ie, eD;
    std::vector<std::size_t> off;
    std::size_t total = 0;
    for (const auto& e : prim) {
        Ie.emplace_back(I.module->right_act(e));
        eD.emplace_back(D.module->left_act(e));
        off.push_back(total);
        total += Ie.back().dim() * eD.back().dim();
    }
    auto coord_of = [&](std::size_t v, const Vec& x, const Vec& y, const Scalar& s, Vec& out) {
        auto cx = Ie[v].coords_unchecked(x), cy2 = eD[v].coords_unchecked(y);
        for (std::size_t p = 0; p < cx.size(); ++p)
            if (!cx[p].is_zero())
                for (std::size_t q = 0; q < cy2.size(); ++q)
                    if (!cy2[q].is_zero()) out[off[v] + p * eD[v].dim() + q] += s * cx[p] * cy2[q];
    };
    std::vector<Vec> rel;
    for (std::size_t v = 0; v < prim.size(); ++v)
        for (std::size_t w = 0; w < prim.size(); ++w) {
            RowSpace corner(R->left_mult(prim[v]) * R->right_mult(prim[w]));
            for (std::size_t c = 0; c < corner.dim(); ++c) {
                Vec r = corner.basis().row(c);
                Matrix ri = I.module->right_act(r), rd = D.module->left_act(r);
                for (std::size_t p = 0; p < Ie[v].dim(); ++p)
                    for (std::size_t q = 0; q < eD[w].dim(); ++q) {
                        Vec x = zero_vec(total, f);
                        coord_of(w, Ie[v].basis().row(p) * ri, eD[w].basis().row(q), Scalar(1, f), x);
                        coord_of(v, Ie[v].basis().row(p), eD[w].basis().row(q) * rd, Scalar(-1, f), x);
                        if (!is_zero_vec(x)) rel.push_back(x);
                    }
            }
        }
    Matrix relm = row_basis_of(rel, total, f);
    // composition on the free space, in Lambda coordinates
    Matrix mu(total, ctx.Lambda->dim(), f);
    for (std::size_t v = 0; v < prim.size(); ++v)
        for (std::size_t p = 0; p < Ie[v].dim(); ++p)
            for (std::size_t q = 0; q < eD[v].dim(); ++q) {
                Matrix F = combine_homs(I.basis, Ie[v].basis().row(p), cy.X->dim(), ctx.X->dim(), f);
                Matrix G = combine_homs(D.basis, eD[v].basis().row(q), ctx.X->dim(), cy.X->dim(), f);
                mu.set_row(off[v] + p * eD[v].dim() + q, ctx.to_lambda(G * F));
            }
    require((relm * mu).is_zero(), ErrorKind::AuditFailed, "composition does not factor through the tensor product");
    a.tensor_dim = total - relm.rows();
    a.proj_dim = ctx.proj_ideal.rows();
    Matrix comp = row_basis(mu);
    a.composite = mu;
    RowSpace img(comp.rows() ? comp : Matrix(0, ctx.Lambda->dim(), f)), proj(ctx.proj_ideal);
    a.composite_iso_to_projE = comp.rows() == a.tensor_dim && img.contains(proj) && proj.contains(img);
    return a;
}

} // namespace sphertwist
