#pragma once

// Right modules as representations: v ↦ v·action(b). Homs are matrices in diagram order.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "structure.hpp"

namespace sphertwist {

class Module;
using ModulePtr = std::shared_ptr<const Module>;

class Module {
public:
    Module(AlgebraPtr alg, std::size_t dim, std::vector<Matrix> action, bool validate = false)
        : alg_(std::move(alg)), dim_(dim), action_(std::move(action)) {
        require(action_.size() == alg_->dim(), ErrorKind::ShapeError, "one action matrix per basis element required");
        for (const auto& m : action_)
            require(m.rows() == dim_ && m.cols() == dim_, ErrorKind::ShapeError, "action matrix shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
        if (validate) check_action();
    }

    const AlgebraPtr& algebra() const { return alg_; }
    Field field() const { return alg_->field(); }
    std::size_t dim() const { return dim_; }
    const Matrix& action(std::size_t i) const { return action_[i]; }
    const std::vector<Matrix>& actions() const { return action_; }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    Matrix act(const Vec& a) const {
        Matrix r(dim_, dim_, field());
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!a[i].is_zero()) r = r + a[i] * action_[i];
        return r;
    }
    Vec apply(const Vec& m, const Vec& a) const { return m * act(a); }

    void check_action() const {
        const Algebra& A = *alg_;
        if (act(A.unit()) != Matrix::identity(dim_, field()))
            fail(ErrorKind::BadUnit, "unit does not act as identity");
        for (std::size_t i = 0; i < A.dim(); ++i)
            for (std::size_t j = 0; j < A.dim(); ++j)
                if (action_[i] * action_[j] != act(A.mult_table()[i][j]))
                    fail(ErrorKind::InvalidArgument,
                         "action is not a right module structure at (" + A.labels()[i] + ", " + A.labels()[j] + ")");
    }

private:
    AlgebraPtr alg_;
    std::size_t dim_;
    std::vector<Matrix> action_;
    std::string name_;
};

inline ModulePtr make_module(Module m) { return std::make_shared<const Module>(std::move(m)); }

struct ModuleHom {
    ModulePtr source, target;
    Matrix matrix; // source.dim x target.dim

    Vec operator()(const Vec& v) const { return v * matrix; }
    bool is_intertwiner() const {
        for (std::size_t i = 0; i < source->algebra()->dim(); ++i)
            if (source->action(i) * matrix != matrix * target->action(i)) return false;
        return true;
    }
};

inline void require_same_algebra(const Module& m, const Module& n) {
    if (!same_algebra(*m.algebra(), *n.algebra())) fail(ErrorKind::AlgebraMismatch, "modules over different algebras");
}

// ---- constructions ----

inline ModulePtr regular_module(const AlgebraPtr& A) {
    std::vector<Matrix> act;
    for (std::size_t j = 0; j < A->dim(); ++j) act.push_back(A->right(j));
    Module m(A, A->dim(), act);
    m.set_name("A");
    return make_module(std::move(m));
}

inline ModulePtr zero_module(const AlgebraPtr& A) {
    return make_module(Module(A, 0, std::vector<Matrix>(A->dim(), Matrix(0, 0, A->field()))));
}

// Actions of generating_set() elements determine the module; basis actions follow by words.
inline ModulePtr module_from_generator_actions(const AlgebraPtr& A, std::size_t dim, const std::vector<Matrix>& gen_act, bool validate = true) {
    auto gens = A->generating_set();
    require(gens.size() == gen_act.size(), ErrorKind::ShapeError, "one matrix per generator required");
    Field f = A->field();
    // words: element vector and its action
    std::vector<Vec> elems{A->unit()};
    std::vector<Matrix> acts{Matrix::identity(dim, f)};
    RowSpace span(elems, A->dim(), f);
    std::vector<std::size_t> frontier{0};
    while (!frontier.empty() && span.dim() < A->dim()) {
        std::vector<std::size_t> next;
        for (auto w : frontier)
            for (std::size_t g = 0; g < gens.size(); ++g) {
                Vec e = A->mul(elems[w], gens[g]);
                if (span.contains(e)) continue;
                elems.push_back(e);
                acts.push_back(acts[w] * gen_act[g]);
                span = RowSpace(elems, A->dim(), f);
                next.push_back(elems.size() - 1);
            }
        frontier = std::move(next);
    }
    require(span.dim() == A->dim(), ErrorKind::AuditFailed, "generators do not span the algebra");
    // basis element b_i = sum c_w * word_w
    Matrix W = Matrix::from_rows(elems, A->dim(), f);
    std::vector<Matrix> act;
    for (std::size_t i = 0; i < A->dim(); ++i) {
        auto c = solve(W.transpose(), Matrix::column(A->basis(i), f));
        Matrix m(dim, dim, f);
        for (std::size_t w = 0; w < elems.size(); ++w)
            if (!(*c)(w, 0).is_zero()) m = m + (*c)(w, 0) * acts[w];
        act.push_back(m);
    }
    return make_module(Module(A, dim, act, validate));
}

// Submodule spanned by the rows of `basis` (ambient coordinates), with restricted action.
struct Submodule {
    ModulePtr module;   // the submodule as a module
    Matrix inclusion;   // sub.dim x ambient.dim (rref rows)
};

inline Submodule submodule(const ModulePtr& m, const Matrix& spanning, bool check = true) {
    Field f = m->field();
    RowSpace S(spanning.rows() ? spanning : Matrix(0, m->dim(), f));
    const Matrix& B = S.basis();
    std::vector<Matrix> act;
    for (std::size_t i = 0; i < m->algebra()->dim(); ++i) {
        Matrix img = B * m->action(i);
        Matrix r(S.dim(), S.dim(), f);
        for (std::size_t k = 0; k < S.dim(); ++k) {
            Vec row = img.row(k);
            if (check) {
                auto c = S.coords(row);
                if (!c) fail(ErrorKind::NotASubmodule, "span not closed under " + m->algebra()->labels()[i]);
                r.set_row(k, *c);
            } else {
                r.set_row(k, S.coords_unchecked(row));
            }
        }
        act.push_back(r);
    }
    return {make_module(Module(m->algebra(), S.dim(), act)), B};
}

struct Quotient {
    ModulePtr module;
    Matrix projection;              // ambient.dim x quotient.dim
    std::vector<std::size_t> lift;  // ambient basis indices forming the complement
};

inline Quotient quotient(const ModulePtr& m, const Matrix& sub_spanning, bool check = true) {
    Field f = m->field();
    std::size_t n = m->dim();
    RowSpace S(sub_spanning.rows() ? sub_spanning : Matrix(0, n, f));
    if (check)
        for (std::size_t k = 0; k < S.dim(); ++k)
            for (std::size_t i = 0; i < m->algebra()->dim(); ++i)
                if (!S.contains(S.basis().row(k) * m->action(i)))
                    fail(ErrorKind::NotASubmodule, "quotient by a non-submodule");
    std::vector<bool> piv(n, false);
    for (auto p : S.pivots()) piv[p] = true;
    std::vector<std::size_t> comp;
    for (std::size_t j = 0; j < n; ++j)
        if (!piv[j]) comp.push_back(j);
    auto reduce = [&](Vec x) {
        for (std::size_t r = 0; r < S.dim(); ++r) {
            Scalar c = x[S.pivots()[r]];
            if (!c.is_zero()) axpy(x, -c, S.basis().row(r));
        }
        Vec y;
        for (auto j : comp) y.push_back(x[j]);
        return y;
    };
    Matrix P(n, comp.size(), f);
    for (std::size_t i = 0; i < n; ++i) P.set_row(i, reduce(unit_vec(n, i, f)));
    std::vector<Matrix> act;
    for (std::size_t i = 0; i < m->algebra()->dim(); ++i) act.push_back(m->action(i).select_rows(comp) * P);
    return {make_module(Module(m->algebra(), comp.size(), act)), P, comp};
}

inline ModulePtr direct_sum(const std::vector<ModulePtr>& ms) {
    require(!ms.empty(), ErrorKind::InvalidArgument, "empty direct sum");
    for (const auto& m : ms) require_same_algebra(*ms[0], *m);
    const auto& A = ms[0]->algebra();
    std::size_t n = 0;
    for (const auto& m : ms) n += m->dim();
    std::vector<Matrix> act;
    for (std::size_t i = 0; i < A->dim(); ++i) {
        Matrix r(n, n, A->field());
        std::size_t off = 0;
        for (const auto& m : ms) {
            r.set_block(off, off, m->action(i));
            off += m->dim();
        }
        act.push_back(r);
    }
    return make_module(Module(A, n, act));
}

inline ModulePtr direct_power(const ModulePtr& m, std::size_t k) { return direct_sum(std::vector<ModulePtr>(k, m)); }

inline Submodule kernel_of(const ModuleHom& h) { return submodule(h.source, left_kernel(h.matrix), false); }
inline Submodule image_of(const ModuleHom& h) { return submodule(h.target, row_basis(h.matrix), false); }
inline Quotient cokernel_of(const ModuleHom& h) { return quotient(h.target, h.matrix, false); }

// Rows spanning m·rad(A).
inline Matrix module_radical(const Module& m) {
    std::vector<Vec> rows;
    for (const auto& g : m.algebra()->radical_generators()) {
        Matrix a = m.act(g);
        for (std::size_t r = 0; r < a.rows(); ++r) rows.push_back(a.row(r));
    }
    return row_basis_of(rows, m.dim(), m.field());
}

// Rows spanning { x : x·rad(A) = 0 }.
inline Matrix socle(const Module& m) {
    Field f = m.field();
    const auto& rg = m.algebra()->radical_generators();
    if (rg.empty()) return Matrix::identity(m.dim(), f);
    Matrix stacked(m.dim(), 0, f);
    for (const auto& g : rg) stacked = Matrix::hstack(stacked, m.act(g));
    return left_kernel(stacked);
}

inline Quotient top(const ModulePtr& m) { return quotient(m, module_radical(*m), false); }

// Rows spanning m·e.
inline Matrix corner_space(const Module& m, const Vec& e) { return row_basis(m.act(e)); }

// The right ideal e·A as a submodule of the regular module.
inline Submodule right_ideal(const AlgebraPtr& A, const Vec& e) {
    return submodule(regular_module(A), row_basis(A->left_mult(e)), false);
}

// ---- hom spaces ----

namespace detail {

struct BlockData {
    std::vector<RowSpace> blocks; // M e_v
    std::vector<Matrix> proj;     // dim M x dim(M e_v): coordinates of x e_v
};

inline BlockData blocks_of(const Module& m) {
    BlockData d;
    for (const auto& e : m.algebra()->idempotents().prim) {
        Matrix E = m.act(e);
        RowSpace S(E);
        d.blocks.push_back(S);
        d.proj.push_back(E.select_cols(S.pivots()));
    }
    return d;
}

// index of the idempotent block containing a generator on each side: g = e_v g e_w
inline std::pair<std::size_t, std::size_t> corner_of(const Algebra& A, const Vec& g) {
    const auto& prim = A.idempotents().prim;
    for (std::size_t v = 0; v < prim.size(); ++v) {
        if (A.mul(prim[v], g) != g) continue;
        for (std::size_t w = 0; w < prim.size(); ++w)
            if (A.mul(g, prim[w]) == g) return {v, w};
    }
    fail(ErrorKind::AuditFailed, "generator is not in an idempotent corner");
}

} // namespace detail

// Basis of Hom(m, n), rref-canonical on flattened matrices.
inline std::vector<Matrix> hom_space(const Module& m, const Module& n) {
    require_same_algebra(m, n);
    const Algebra& A = *m.algebra();
    Field f = A.field();
    if (m.dim() == 0 || n.dim() == 0) return {};
    auto bm = detail::blocks_of(m), bn = detail::blocks_of(n);
    std::size_t nb = bm.blocks.size();
    std::vector<std::size_t> off(nb + 1, 0);
    for (std::size_t v = 0; v < nb; ++v) off[v + 1] = off[v] + bm.blocks[v].dim() * bn.blocks[v].dim();
    std::size_t nunk = off[nb];
    if (nunk == 0) return {};
    // K: columns spanning the solution space so far (start: everything)
    std::vector<Vec> K; // each a parameter vector
    for (std::size_t i = 0; i < nunk; ++i) K.push_back(unit_vec(nunk, i, f));
    for (const auto& g : A.generators()) {
        if (K.empty()) break;
        auto [v, w] = detail::corner_of(A, g);
        std::size_t mv = bm.blocks[v].dim(), mw = bm.blocks[w].dim();
        std::size_t nv = bn.blocks[v].dim(), nw = bn.blocks[w].dim();
        if (mv == 0 || nw == 0) continue;
        // g on M: M e_v -> M e_w; on N: N e_v -> N e_w
        Matrix gm = (bm.blocks[v].basis() * m.act(g)).select_cols(bm.blocks[w].pivots());
        Matrix gn = (bn.blocks[v].basis() * n.act(g)).select_cols(bn.blocks[w].pivots());
        // residual G_m X_w - X_v G_n, an (mv x nw) block
        Matrix R(K.size(), mv * nw, f);
        for (std::size_t c = 0; c < K.size(); ++c) {
            const Vec& x = K[c];
            Matrix Xv(mv, nv, f), Xw(mw, nw, f);
            for (std::size_t i = 0; i < mv * nv; ++i) Xv(i / nv, i % nv) = x[off[v] + i];
            for (std::size_t i = 0; i < mw * nw; ++i) Xw(i / nw, i % nw) = x[off[w] + i];
            Matrix res = gm * Xw - Xv * gn;
            for (std::size_t i = 0; i < mv * nw; ++i) R(c, i) = res(i / nw, i % nw);
        }
        Matrix ker = left_kernel(R); // combinations of current columns with zero residual
        std::vector<Vec> nk;
        for (std::size_t r = 0; r < ker.rows(); ++r) {
            Vec comb = zero_vec(nunk, f);
            for (std::size_t c = 0; c < K.size(); ++c) axpy(comb, ker(r, c), K[c]);
            nk.push_back(comb);
        }
        K = std::move(nk);
    }
    // assemble F = sum_v proj_M_v X_v basis_N_v
    std::vector<Vec> flat;
    for (const auto& x : K) {
        Matrix F(m.dim(), n.dim(), f);
        for (std::size_t v = 0; v < nb; ++v) {
            std::size_t mv = bm.blocks[v].dim(), nv = bn.blocks[v].dim();
            if (!mv || !nv) continue;
            Matrix X(mv, nv, f);
            for (std::size_t i = 0; i < mv * nv; ++i) X(i / nv, i % nv) = x[off[v] + i];
            F = F + bm.proj[v] * X * bn.blocks[v].basis();
        }
        flat.push_back(F.raw());
    }
    Matrix canon = row_basis_of(flat, m.dim() * n.dim(), f);
    std::vector<Matrix> out;
    for (std::size_t r = 0; r < canon.rows(); ++r) {
        Matrix F(m.dim(), n.dim(), f);
        F.raw() = canon.row(r);
        out.push_back(F);
    }
    return out;
}

inline std::vector<ModuleHom> hom_basis(const ModulePtr& m, const ModulePtr& n) {
    std::vector<ModuleHom> out;
    for (auto& F : hom_space(*m, *n)) out.push_back({m, n, F});
    return out;
}

// Matrix of a flattened-hom combination.
inline Matrix combine_homs(const std::vector<Matrix>& basis, const Vec& c, std::size_t rows, std::size_t cols, Field f) {
    Matrix F(rows, cols, f);
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (!c[i].is_zero()) F = F + c[i] * basis[i];
    return F;
}

// ---- add-membership ----

// id_m lies in the span of composites m -> n -> m.
inline bool in_add(const Module& m, const Module& n) {
    require_same_algebra(m, n);
    if (m.dim() == 0) return true;
    if (n.dim() == 0) return false;
    auto g = hom_space(m, n), fb = hom_space(n, m);
    Field f = m.field();
    std::vector<Vec> comps;
    RowSpace span(std::vector<Vec>{}, m.dim() * m.dim(), f);
    Matrix I = Matrix::identity(m.dim(), f);
    for (const auto& G : g)
        for (const auto& F : fb) {
            Matrix c = G * F;
            if (c.is_zero()) continue;
            comps.push_back(c.raw());
        }
    if (comps.empty()) return false;
    RowSpace S(comps, m.dim() * m.dim(), f);
    return S.contains(I.raw());
}

// For indecomposable modules: isomorphic iff each lies in the add-closure of the other.
inline bool isomorphic_indecomposables(const Module& a, const Module& b) {
    return a.dim() == b.dim() && in_add(a, b) && in_add(b, a);
}

// Some invertible hom a -> b, searched over small integer combinations of a hom basis.
inline std::optional<Matrix> find_isomorphism(const Module& a, const Module& b) {
    if (a.dim() != b.dim()) return std::nullopt;
    if (a.dim() == 0) return Matrix(0, 0, a.field());
    auto H = hom_space(a, b);
    if (H.empty()) return std::nullopt;
    for (const auto& F : H)
        if (rank(F) == a.dim()) return F;
    detail::Lcg rng{0x150};
    for (int t = 0; t < 40; ++t) {
        Vec c;
        for (std::size_t i = 0; i < H.size(); ++i) c.push_back(Scalar(rng.small() + (i == 0 ? 3 : 0), a.field()));
        Matrix F = combine_homs(H, c, a.dim(), b.dim(), a.field());
        if (rank(F) == a.dim()) return F;
    }
    return std::nullopt;
}

// ---- simples and covers ----

struct SimpleModule {
    ModulePtr module;
    std::size_t idempotent_class;
};

inline std::vector<SimpleModule> simple_modules(const AlgebraPtr& A) {
    const auto& d = A->idempotents();
    std::vector<SimpleModule> out;
    for (std::size_t c = 0; c < d.classes(); ++c) {
        auto P = right_ideal(A, d.prim[d.rep[c]]).module;
        auto t = top(P).module;
        out.push_back({t, c});
    }
    return out;
}

// Multiplicity of the simple of class c in the top of m.
inline std::size_t top_multiplicity(const ModulePtr& m, std::size_t c) {
    const auto& d = m->algebra()->idempotents();
    auto t = top(m);
    return rank(t.module->act(d.prim[d.rep[c]]));
}


// ---- projectives ----

// P = e_{k_1}A + ... + e_{k_r}A; elements are tuples of algebra elements.
struct ProjectiveModule {
    ModulePtr module;
    std::vector<std::size_t> idem;
    std::vector<std::size_t> offset;
    std::vector<RowSpace> blocks; // e_k A inside A

    std::size_t summands() const { return idem.size(); }
    Vec pack(const std::vector<Vec>& parts) const {
        Vec out;
        for (std::size_t k = 0; k < idem.size(); ++k) {
            auto c = blocks[k].coords(parts[k]);
            require(c.has_value(), ErrorKind::InvalidArgument, "component not in e_k A");
            out.insert(out.end(), c->begin(), c->end());
        }
        return out;
    }
    std::vector<Vec> unpack(const Vec& x) const {
        std::vector<Vec> out;
        for (std::size_t k = 0; k < idem.size(); ++k) {
            Vec c(x.begin() + static_cast<long>(offset[k]), x.begin() + static_cast<long>(offset[k] + blocks[k].dim()));
            out.push_back(blocks[k].vector(c));
        }
        return out;
    }
    // The hom P -> n sending the k-th generator e_k to images[k] (which must lie in n e_k).
    Matrix map_to(const Module& n, const std::vector<Vec>& images) const {
        Matrix F(module->dim(), n.dim(), module->field());
        for (std::size_t k = 0; k < idem.size(); ++k)
            for (std::size_t r = 0; r < blocks[k].dim(); ++r)
                F.set_row(offset[k] + r, images[k] * n.act(blocks[k].basis().row(r)));
        return F;
    }
};

inline ProjectiveModule projective_module(const AlgebraPtr& A, const std::vector<std::size_t>& idem) {
    const auto& prim = A->idempotents().prim;
    ProjectiveModule P;
    P.idem = idem;
    std::vector<ModulePtr> parts;
    std::size_t off = 0;
    for (auto k : idem) {
        auto sub = right_ideal(A, prim[k]);
        P.blocks.emplace_back(sub.inclusion);
        P.offset.push_back(off);
        off += sub.module->dim();
        parts.push_back(sub.module);
    }
    P.module = parts.empty() ? zero_module(A) : direct_sum(parts);
    return P;
}

struct ProjectiveCover {
    ProjectiveModule P;
    std::vector<Vec> gens; // generator images in the covered module
    Matrix map;            // P.dim x M.dim
};

// Cover from chosen generators x_k in m e_k.
inline ProjectiveCover cover_from_generators(const ModulePtr& m, const std::vector<std::size_t>& idem, const std::vector<Vec>& gens) {
    ProjectiveCover c{projective_module(m->algebra(), idem), gens, Matrix()};
    c.map = c.P.map_to(*m, gens);
    return c;
}

// Minimal projective cover: lifts of a basis of the top, idempotent by idempotent.
inline ProjectiveCover projective_cover(const ModulePtr& m) {
    const auto& A = m->algebra();
    const auto& d = A->idempotents();
    Field f = m->field();
    auto t = top(m);
    std::vector<std::size_t> idem;
    std::vector<Vec> gens;
    for (std::size_t c = 0; c < d.classes(); ++c) {
        std::size_t k = d.rep[c];
        Matrix E = m->act(d.prim[k]);
        std::vector<Vec> chosen_top;
        std::size_t rk = 0;
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
    require(rank(cov.map) == m->dim(), ErrorKind::AuditFailed, "projective cover is not surjective");
    return cov;
}

inline bool is_projective(const ModulePtr& m) {
    return m->dim() == 0 || projective_cover(m).P.module->dim() == m->dim();
}

// Splits off projective summands: m = complement + (sum of e_k A over `idem`).
struct ProjectiveSplit {
    std::vector<std::size_t> idem;
    Submodule complement;
};

inline ProjectiveSplit strip_projectives(const ModulePtr& m) {
    const auto& A = m->algebra();
    const auto& d = A->idempotents();
    ProjectiveSplit out;
    Matrix incl = Matrix::identity(m->dim(), m->field());
    ModulePtr cur = m;
    bool found = true;
    while (found && cur->dim() > 0) {
        found = false;
        for (std::size_t c = 0; c < d.classes() && !found; ++c) {
            std::size_t k = d.rep[c];
            auto Pe = right_ideal(A, d.prim[k]).module;
            if (Pe->dim() > cur->dim()) continue;
            auto F = hom_space(*Pe, *cur), G = hom_space(*cur, *Pe);
            for (std::size_t i = 0; i < F.size() && !found; ++i)
                for (std::size_t j = 0; j < G.size() && !found; ++j) {
                    if (rank(F[i] * G[j]) != Pe->dim()) continue;
                    auto ker = kernel_of({cur, Pe, G[j]});
                    incl = ker.inclusion * incl;
                    cur = ker.module;
                    out.idem.push_back(k);
                    found = true;
                }
        }
    }
    out.complement = {cur, incl};
    return out;
}

// ---- duality ----

// D(m) = Hom_k(m, k) as a module over the opposite algebra `op` (same basis).
inline ModulePtr dual_module(const Module& m, const AlgebraPtr& op) {
    require(op->dim() == m.algebra()->dim(), ErrorKind::AlgebraMismatch, "opposite algebra dimension");
    std::vector<Matrix> act;
    for (const auto& a : m.actions()) act.push_back(a.transpose());
    return make_module(Module(op, m.dim(), act));
}

} // namespace sphertwist
