#pragma once

// Modules over a self-injective algebra as a Frobenius exact category: stable homs,
// syzygies, and the endomorphism algebra of a chosen object X with its contraction quotient.

#include <string>
#include <vector>

#include "modules.hpp"

namespace sphertwist {

// D(A) as a right A-module: (phi . b)(x) = phi(b x).
inline ModulePtr dual_regular(const AlgebraPtr& A) {
    std::vector<Matrix> act;
    for (std::size_t i = 0; i < A->dim(); ++i) act.push_back(A->left(i).transpose());
    return make_module(Module(A, A->dim(), act));
}

inline bool is_self_injective(const AlgebraPtr& A) {
    auto R = regular_module(A);
    auto D = dual_regular(A);
    return in_add(*R, *D) && in_add(*D, *R);
}

// sigma(i) = class of the socle of e_i A, for each idempotent class i.
inline std::vector<std::size_t> nakayama_permutation(const AlgebraPtr& A) {
    require(is_self_injective(A), ErrorKind::NotSelfInjective, "Nakayama permutation needs a self-injective algebra");
    const auto& d = A->idempotents();
    auto simples = simple_modules(A);
    std::vector<std::size_t> sigma;
    for (std::size_t c = 0; c < d.classes(); ++c) {
        auto P = right_ideal(A, d.prim[d.rep[c]]).module;
        auto soc = submodule(P, socle(*P), false).module;
        std::size_t found = simples.size();
        for (std::size_t j = 0; j < simples.size(); ++j)
            if (isomorphic_indecomposables(*soc, *simples[j].module)) found = j;
        require(found < simples.size(), ErrorKind::NotSelfInjective, "socle of an indecomposable projective is not simple");
        sigma.push_back(found);
    }
    return sigma;
}

// A is symmetric iff some phi in D(A) with phi(xa) = phi(ax) gives a nondegenerate form (x, y) -> phi(xy);
// these phi are exactly the images of 1 under bimodule maps A -> D(A).
inline bool is_symmetric(const AlgebraPtr& A) {
    std::size_t n = A->dim();
    Field f = A->field();
    // phi as a row of values on the basis; conditions phi(b_i b_j) = phi(b_j b_i)
    std::vector<Vec> eqs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec r = vec_sub(A->mult_table()[i][j], A->mult_table()[j][i]);
            if (!is_zero_vec(r)) eqs.push_back(r);
        }
    Matrix K = eqs.empty() ? Matrix::identity(n, f) : kernel_basis(Matrix::from_rows(eqs, n, f)).transpose();
    if (K.rows() == 0) return false;
    auto gram = [&](const Vec& phi) {
        Matrix G(n, n, f);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Scalar s(0, f);
                const Vec& c = A->mult_table()[i][j];
                for (std::size_t k = 0; k < n; ++k)
                    if (!c[k].is_zero()) s += c[k] * phi[k];
                G(i, j) = s;
            }
        return G;
    };
    for (std::size_t r = 0; r < K.rows(); ++r)
        if (rank(gram(K.row(r))) == n) return true;
    detail::Lcg rng{0x5e};
    for (int t = 0; t < 64; ++t) {
        Vec phi = zero_vec(n, f);
        for (std::size_t r = 0; r < K.rows(); ++r) axpy(phi, Scalar(rng.small() + (r == 0 ? 3 : 0), f), K.row(r));
        if (rank(gram(phi)) == n) return true;
    }
    return false;
}

// ---- injective envelopes, stable homs, syzygies ----

struct InjectiveEnvelope {
    ModulePtr I;
    Matrix map; // m.dim x I.dim, injective
};

// D of a projective cover of D(m) over the opposite algebra.
inline InjectiveEnvelope injective_envelope(const ModulePtr& m, const AlgebraPtr& op) {
    const auto& A = m->algebra();
    auto Dm = dual_module(*m, op);
    auto c = projective_cover(Dm);
    std::vector<Matrix> act;
    for (std::size_t i = 0; i < A->dim(); ++i) act.push_back(c.P.module->action(i).transpose());
    auto I = make_module(Module(A, c.P.module->dim(), act));
    return {I, c.map.transpose()};
}

struct StableHom {
    std::vector<Matrix> hom;  // rref basis of Hom(m, n)
    Matrix projective;        // rows: flattened maps factoring through a projective
    std::size_t stable_dim() const { return hom.size() - projective.rows(); }
};

inline StableHom stable_hom(const ModulePtr& m, const ModulePtr& n, const AlgebraPtr& op) {
    StableHom s;
    s.hom = hom_space(*m, *n);
    Field f = m->field();
    auto env = injective_envelope(m, op);
    std::vector<Vec> rows;
    for (const auto& g : hom_space(*env.I, *n)) rows.push_back((env.map * g).raw());
    s.projective = row_basis_of(rows, m->dim() * n->dim(), f);
    return s;
}

inline ModulePtr syzygy(const ModulePtr& m) {
    auto c = projective_cover(m);
    return kernel_of({c.P.module, m, c.map}).module;
}

inline ModulePtr cosyzygy(const ModulePtr& m, const AlgebraPtr& op) {
    auto e = injective_envelope(m, op);
    return cokernel_of({m, e.I, e.map}).module;
}

inline ModulePtr strip(const ModulePtr& m) { return strip_projectives(m).complement.module; }

// Sigma^k m for k >= 0, Omega^{-k} m for k < 0, with projective summands removed at each step.
inline ModulePtr suspension_power(const ModulePtr& m, int k, const AlgebraPtr& op) {
    ModulePtr cur = strip(m);
    for (int i = 0; i < k; ++i) cur = strip(cosyzygy(cur, op));
    for (int i = 0; i > k; --i) cur = strip(syzygy(cur));
    return cur;
}

// ---- the context (Lambda = End X, Lambda_con) ----

struct SummandSpec {
    ModulePtr module;
    std::size_t multiplicity = 1;
    bool projective_part = false;
    std::string name;
};

struct FrobeniusContext {
    AlgebraPtr ambient, ambient_op;
    std::vector<SummandSpec> summands;
    ModulePtr X;
    std::vector<std::size_t> copy_offset;   // offset in X of each copy, in summand order
    std::vector<std::size_t> copy_summand;  // summand index of each copy
    std::vector<Matrix> basis;              // Lambda basis as endomorphisms of X (diagram order)
    RowSpace basis_space;
    AlgebraPtr Lambda;
    Matrix proj_ideal;                      // [proj E] in Lambda coordinates
    SurjectionData pi;                      // Lambda -> Lambda_con
    Vec e0;                                 // sum of the projective-part idempotents
    std::vector<std::size_t> e0_prims;      // Lambda primitive indices summing to e0
    std::vector<std::size_t> x_summands;    // summand indices of X_1..X_n
    std::vector<std::size_t> x_prim;        // Lambda primitive index of the first copy of X_i
    std::vector<Vec> e_block;               // sum over the copies of X_i

    const AlgebraPtr& Lambda_con() const { return pi.target; }
    std::size_t n() const { return x_summands.size(); }
    Vec e(std::size_t i) const { return Lambda->idempotents().prim[x_prim[i]]; }
    ModulePtr Xi(std::size_t i) const { return summands[x_summands[i]].module; }

    Vec to_lambda(const Matrix& F) const {
        auto c = basis_space.coords(F.raw());
        require(c.has_value(), ErrorKind::InvalidArgument, "map is not an endomorphism of X");
        return *c;
    }
    Matrix to_endo(const Vec& l) const {
        Matrix F(X->dim(), X->dim(), X->field());
        for (std::size_t i = 0; i < l.size(); ++i)
            if (!l[i].is_zero()) F = F + l[i] * basis[i];
        return F;
    }
};

namespace detail {

// Projections onto the indecomposable summands of a projective module, with ambient idempotent indices.
inline std::vector<std::pair<std::size_t, Matrix>> projective_projections(const ModulePtr& Q) {
    auto c = projective_cover(Q);
    require(c.P.module->dim() == Q->dim(), ErrorKind::NotProgenerator, "projective part is not projective");
    Matrix inv = inverse(c.map);
    std::vector<std::pair<std::size_t, Matrix>> out;
    for (std::size_t k = 0; k < c.P.summands(); ++k) {
        Matrix block(c.P.module->dim(), c.P.module->dim(), Q->field());
        for (std::size_t r = 0; r < c.P.blocks[k].dim(); ++r) block(c.P.offset[k] + r, c.P.offset[k] + r) = Scalar(1, Q->field());
        out.push_back({c.P.idem[k], inv * block * c.map});
    }
    return out;
}

} // namespace detail

inline FrobeniusContext build_context(const AlgebraPtr& ambient, const std::vector<SummandSpec>& summands) {
    require(is_self_injective(ambient), ErrorKind::NotSelfInjective, "ambient algebra is not self-injective");
    FrobeniusContext ctx;
    ctx.ambient = ambient;
    ctx.ambient_op = opposite(ambient);
    ctx.summands = summands;
    Field f = ambient->field();

    std::vector<ModulePtr> parts;
    std::size_t off = 0;
    for (std::size_t s = 0; s < summands.size(); ++s) {
        require(summands[s].multiplicity >= 1, ErrorKind::InvalidArgument, "summand multiplicity must be positive");
        require(same_algebra(*summands[s].module->algebra(), *ambient), ErrorKind::AlgebraMismatch, "summand over another algebra");
        for (std::size_t c = 0; c < summands[s].multiplicity; ++c) {
            parts.push_back(summands[s].module);
            ctx.copy_offset.push_back(off);
            ctx.copy_summand.push_back(s);
            off += summands[s].module->dim();
        }
        if (!summands[s].projective_part) ctx.x_summands.push_back(s);
    }
    require(!parts.empty(), ErrorKind::InvalidArgument, "X has no summands");
    ctx.X = direct_sum(parts);
    std::size_t N = ctx.X->dim();

    // progenerator: every indecomposable projective occurs in the projective part
    {
        std::vector<bool> seen(ambient->idempotents().classes(), false);
        for (const auto& s : summands)
            if (s.projective_part)
                for (auto& [k, E] : detail::projective_projections(s.module)) seen[ambient->idempotents().cls[k]] = true;
        for (bool b : seen) require(b, ErrorKind::NotProgenerator, "projective part misses an indecomposable projective");
    }

    // Lambda = End(X), a.b = a o b, i.e. matrix B*A in diagram order
    ctx.basis = hom_space(*ctx.X, *ctx.X);
    std::vector<Vec> flat;
    for (const auto& B : ctx.basis) flat.push_back(B.raw());
    ctx.basis_space = RowSpace(flat, N * N, f);
    std::size_t n = ctx.basis.size();
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("l" + std::to_string(i));
    std::vector<std::vector<Vec>> mult(n, std::vector<Vec>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) mult[i][j] = *ctx.basis_space.coords((ctx.basis[j] * ctx.basis[i]).raw());
    Vec unit = ctx.to_lambda(Matrix::identity(N, f));

    // primitive idempotents: projective part split by ambient idempotents, then one per copy of X_i
    std::vector<Vec> prims;
    std::vector<std::size_t> first_copy(summands.size(), SIZE_MAX);
    for (std::size_t c = 0; c < ctx.copy_offset.size(); ++c) {
        std::size_t s = ctx.copy_summand[c];
        std::size_t o = ctx.copy_offset[c], d = summands[s].module->dim();
        auto embed = [&](const Matrix& E) {
            Matrix F(N, N, f);
            F.set_block(o, o, E);
            return F;
        };
        if (summands[s].projective_part) {
            for (auto& [k, E] : detail::projective_projections(summands[s].module)) {
                ctx.e0_prims.push_back(prims.size());
                prims.push_back(ctx.to_lambda(embed(E)));
            }
        } else {
            if (first_copy[s] == SIZE_MAX) first_copy[s] = prims.size();
            prims.push_back(ctx.to_lambda(embed(Matrix::identity(d, f))));
        }
    }
    Algebra L(f, labels, mult, unit, false);
    L.set_name("Lambda");
    ctx.Lambda = with_structure(std::move(L), prims);

    ctx.e0 = zero_vec(n, f);
    for (auto k : ctx.e0_prims) ctx.e0 = vec_add(ctx.e0, prims[k]);
    for (auto s : ctx.x_summands) {
        ctx.x_prim.push_back(first_copy[s]);
        Vec blk = zero_vec(n, f);
        for (std::size_t c = 0; c < ctx.copy_offset.size(); ++c)
            if (ctx.copy_summand[c] == s) {
                Matrix F(N, N, f);
                F.set_block(ctx.copy_offset[c], ctx.copy_offset[c], Matrix::identity(summands[s].module->dim(), f));
                blk = vec_add(blk, ctx.to_lambda(F));
            }
        ctx.e_block.push_back(blk);
    }

    // [proj E]: maps X -> X factoring through the injective envelope of X
    auto sh = stable_hom(ctx.X, ctx.X, ctx.ambient_op);
    std::vector<Vec> ideal;
    for (std::size_t r = 0; r < sh.projective.rows(); ++r) ideal.push_back(*ctx.basis_space.coords(sh.projective.row(r)));
    ctx.proj_ideal = row_basis_of(ideal, n, f);
    ctx.pi = quotient_surjection(ctx.Lambda, ctx.proj_ideal);
    return ctx;
}

// E(X, Y) = Hom(X, Y) as a right Lambda-module: f . l = f o l.
struct HomFunctorModule {
    ModulePtr module;
    std::vector<Matrix> basis; // Hom(X, Y) basis, matching module coordinates
};

inline HomFunctorModule hom_functor(const FrobeniusContext& ctx, const ModulePtr& Y) {
    HomFunctorModule out;
    out.basis = hom_space(*ctx.X, *Y);
    Field f = ctx.X->field();
    std::size_t d = out.basis.size();
    std::vector<Vec> flat;
    for (const auto& B : out.basis) flat.push_back(B.raw());
    RowSpace S(flat, ctx.X->dim() * Y->dim(), f);
    std::vector<Matrix> act;
    for (std::size_t l = 0; l < ctx.Lambda->dim(); ++l) {
        Matrix a(d, d, f);
        for (std::size_t r = 0; r < d; ++r) a.set_row(r, *S.coords((ctx.basis[l] * out.basis[r]).raw()));
        act.push_back(a);
    }
    out.module = make_module(Module(ctx.Lambda, d, act));
    return out;
}

} // namespace sphertwist
