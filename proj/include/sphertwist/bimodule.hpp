#pragma once

// L-R bimodules with explicit left and right actions, projective bimodules L e (x) f R,
// and minimal projective bimodule resolutions.

#include <string>
#include <vector>

#include "modules.hpp"

namespace sphertwist {

// l . v = v * left(l), v . r = v * right(r).
class Bimodule {
public:
    Bimodule(AlgebraPtr L, AlgebraPtr R, std::size_t dim, std::vector<Matrix> left, std::vector<Matrix> right)
        : L_(std::move(L)), R_(std::move(R)), dim_(dim), left_(std::move(left)), right_(std::move(right)) {
        require(left_.size() == L_->dim() && right_.size() == R_->dim(), ErrorKind::ShapeError, "bimodule action count");
    }
    const AlgebraPtr& left_algebra() const { return L_; }
    const AlgebraPtr& right_algebra() const { return R_; }
    std::size_t dim() const { return dim_; }
    Field field() const { return L_->field(); }
    const Matrix& left(std::size_t i) const { return left_[i]; }
    const Matrix& right(std::size_t i) const { return right_[i]; }
    Matrix left_act(const Vec& l) const { return combine(left_, l); }
    Matrix right_act(const Vec& r) const { return combine(right_, r); }

    // Laws: both actions unital and associative, and they commute.
    void check() const {
        Matrix I = Matrix::identity(dim_, field());
        require(left_act(L_->unit()) == I && right_act(R_->unit()) == I, ErrorKind::BadUnit, "bimodule unit");
        for (std::size_t i = 0; i < L_->dim(); ++i)
            for (std::size_t j = 0; j < L_->dim(); ++j)
                require(left_[j] * left_[i] == left_act(L_->mult_table()[i][j]), ErrorKind::InvalidArgument, "left action law");
        for (std::size_t i = 0; i < R_->dim(); ++i)
            for (std::size_t j = 0; j < R_->dim(); ++j)
                require(right_[i] * right_[j] == right_act(R_->mult_table()[i][j]), ErrorKind::InvalidArgument, "right action law");
        for (std::size_t i = 0; i < L_->dim(); ++i)
            for (std::size_t j = 0; j < R_->dim(); ++j)
                require(left_[i] * right_[j] == right_[j] * left_[i], ErrorKind::InvalidArgument, "actions do not commute");
    }

    ModulePtr as_right_module() const { return make_module(Module(R_, dim_, right_)); }
    // The left structure as a right module over `Lop`, the opposite of L.
    ModulePtr as_left_module(const AlgebraPtr& Lop) const { return make_module(Module(Lop, dim_, left_)); }

private:
    static Matrix combine(const std::vector<Matrix>& ms, const Vec& c) {
        Matrix out(ms.empty() ? 0 : ms[0].rows(), ms.empty() ? 0 : ms[0].cols(), c.empty() ? Field::rational() : c[0].field());
        for (std::size_t i = 0; i < c.size(); ++i)
            if (!c[i].is_zero()) out = out + c[i] * ms[i];
        return out;
    }
    AlgebraPtr L_, R_;
    std::size_t dim_;
    std::vector<Matrix> left_, right_;
};

using BimodulePtr = std::shared_ptr<const Bimodule>;
inline BimodulePtr make_bimodule(Bimodule b) { return std::make_shared<const Bimodule>(std::move(b)); }

// A as an A-A bimodule.
inline BimodulePtr regular_bimodule(const AlgebraPtr& A) {
    std::vector<Matrix> l, r;
    for (std::size_t i = 0; i < A->dim(); ++i) {
        l.push_back(A->left(i));
        r.push_back(A->right(i));
    }
    return make_bimodule(Bimodule(A, A, A->dim(), l, r));
}

// Change of rings along surjections on either side: the actions pulled back.
inline BimodulePtr restrict_bimodule(const BimodulePtr& M, const SurjectionData* pl, const SurjectionData* pr) {
    std::vector<Matrix> l, r;
    AlgebraPtr L = pl ? pl->source : M->left_algebra();
    AlgebraPtr R = pr ? pr->source : M->right_algebra();
    for (std::size_t i = 0; i < L->dim(); ++i) l.push_back(pl ? M->left_act(pl->matrix.row(i)) : M->left(i));
    for (std::size_t i = 0; i < R->dim(); ++i) r.push_back(pr ? M->right_act(pr->matrix.row(i)) : M->right(i));
    return make_bimodule(Bimodule(L, R, M->dim(), l, r));
}

// Sub-bimodule spanned by rows (assumed closed), with restricted actions.
inline BimodulePtr sub_bimodule(const Bimodule& M, const Matrix& rows) {
    RowSpace S(rows.rows() ? rows : Matrix(0, M.dim(), M.field()));
    auto restrict = [&](const Matrix& a) {
        Matrix img = S.basis() * a;
        Matrix r(S.dim(), S.dim(), M.field());
        for (std::size_t k = 0; k < S.dim(); ++k) {
            auto c = S.coords(img.row(k));
            require(c.has_value(), ErrorKind::NotASubmodule, "span is not a sub-bimodule");
            r.set_row(k, *c);
        }
        return r;
    };
    std::vector<Matrix> l, r;
    for (std::size_t i = 0; i < M.left_algebra()->dim(); ++i) l.push_back(restrict(M.left(i)));
    for (std::size_t i = 0; i < M.right_algebra()->dim(); ++i) r.push_back(restrict(M.right(i)));
    return make_bimodule(Bimodule(M.left_algebra(), M.right_algebra(), S.dim(), l, r));
}

// Quotient by a sub-bimodule; projection columns follow the non-pivot coordinates.
struct BimoduleQuotient {
    BimodulePtr module;
    Matrix projection;
};

inline BimoduleQuotient quotient_bimodule(const Bimodule& M, const Matrix& sub) {
    Field f = M.field();
    std::size_t n = M.dim();
    RowSpace S(sub.rows() ? sub : Matrix(0, n, f));
    std::vector<bool> piv(n, false);
    for (auto p : S.pivots()) piv[p] = true;
    std::vector<std::size_t> comp;
    for (std::size_t j = 0; j < n; ++j)
        if (!piv[j]) comp.push_back(j);
    Matrix P(n, comp.size(), f);
    for (std::size_t i = 0; i < n; ++i) {
        Vec x = unit_vec(n, i, f);
        for (std::size_t r = 0; r < S.dim(); ++r) {
            Scalar c = x[S.pivots()[r]];
            if (!c.is_zero()) axpy(x, -c, S.basis().row(r));
        }
        for (std::size_t k = 0; k < comp.size(); ++k) P(i, k) = x[comp[k]];
    }
    std::vector<Matrix> l, r;
    for (std::size_t i = 0; i < M.left_algebra()->dim(); ++i) l.push_back(M.left(i).select_rows(comp) * P);
    for (std::size_t i = 0; i < M.right_algebra()->dim(); ++i) r.push_back(M.right(i).select_rows(comp) * P);
    return {make_bimodule(Bimodule(M.left_algebra(), M.right_algebra(), comp.size(), l, r)), P};
}

// Bimodule maps M -> N: the null space of both intertwiner systems.
inline std::vector<Matrix> bimodule_hom_space(const Bimodule& M, const Bimodule& N) {
    std::size_t a = M.dim(), b = N.dim();
    Field f = M.field();
    if (a == 0 || b == 0) return {};
    std::vector<Vec> eqs;
    auto add = [&](const Matrix& X, const Matrix& Y) {
        for (std::size_t i = 0; i < a; ++i)
            for (std::size_t j = 0; j < b; ++j) {
                Vec row = zero_vec(a * b, f);
                for (std::size_t k = 0; k < a; ++k)
                    if (!X(i, k).is_zero()) row[k * b + j] += X(i, k);
                for (std::size_t k = 0; k < b; ++k)
                    if (!Y(k, j).is_zero()) row[i * b + k] -= Y(k, j);
                if (!is_zero_vec(row)) eqs.push_back(row);
            }
    };
    for (const auto& g : M.left_algebra()->generating_set()) add(M.left_act(g), N.left_act(g));
    for (const auto& g : M.right_algebra()->generating_set()) add(M.right_act(g), N.right_act(g));
    Matrix K = eqs.empty() ? Matrix::identity(a * b, f) : kernel_basis(Matrix::from_rows(eqs, a * b, f)).transpose();
    std::vector<Matrix> out;
    for (std::size_t r = 0; r < K.rows(); ++r) {
        Matrix F(a, b, f);
        F.raw() = K.row(r);
        out.push_back(F);
    }
    return out;
}

// An invertible bimodule map, searched over small combinations of a hom basis.
inline std::optional<Matrix> find_bimodule_isomorphism(const Bimodule& M, const Bimodule& N) {
    if (M.dim() != N.dim()) return std::nullopt;
    if (M.dim() == 0) return Matrix(0, 0, M.field());
    auto H = bimodule_hom_space(M, N);
    for (const auto& F : H)
        if (rank(F) == M.dim()) return F;
    detail::Lcg rng{0xb1};
    for (int t = 0; t < 40 && !H.empty(); ++t) {
        Matrix F(M.dim(), N.dim(), M.field());
        for (std::size_t i = 0; i < H.size(); ++i) F = F + Scalar(rng.small() + (i == 0 ? 3 : 0), M.field()) * H[i];
        if (rank(F) == M.dim()) return F;
    }
    return std::nullopt;
}

// ---- projective bimodules ----

// Q = sum over generators g of L e_{v_g} (x) f_{w_g} R; coordinates (a, b) -> offset + a*dim(W) + b.
struct BiProjective {
    AlgebraPtr L, R;
    std::vector<std::pair<std::size_t, std::size_t>> gens; // (L primitive index, R primitive index)
    std::vector<RowSpace> U, W;                            // bases of L e_v and f_w R
    std::vector<std::size_t> offset;
    BimodulePtr module;

    std::size_t size() const { return gens.size(); }
    std::size_t block_dim(std::size_t g) const { return U[g].dim() * W[g].dim(); }
};

namespace detail {

// Coordinates of l*u over the basis U, for all u in U: a (dim U x dim U) matrix.
inline Matrix left_mult_on(const Algebra& A, const RowSpace& U, const Vec& l) {
    Matrix img = U.basis() * A.left_mult(l);
    Matrix out(U.dim(), U.dim(), A.field());
    for (std::size_t k = 0; k < U.dim(); ++k) out.set_row(k, *U.coords(img.row(k)));
    return out;
}

inline Matrix right_mult_on(const Algebra& A, const RowSpace& W, const Vec& r) {
    Matrix img = W.basis() * A.right_mult(r);
    Matrix out(W.dim(), W.dim(), A.field());
    for (std::size_t k = 0; k < W.dim(); ++k) out.set_row(k, *W.coords(img.row(k)));
    return out;
}

} // namespace detail

inline BiProjective bi_projective(const AlgebraPtr& L, const AlgebraPtr& R, const std::vector<std::pair<std::size_t, std::size_t>>& gens) {
    BiProjective Q{L, R, gens, {}, {}, {}, nullptr};
    Field f = L->field();
    std::size_t off = 0;
    for (auto [v, w] : gens) {
        Q.U.emplace_back(L->right_mult(L->idempotents().prim[v]));
        Q.W.emplace_back(R->left_mult(R->idempotents().prim[w]));
        Q.offset.push_back(off);
        off += Q.U.back().dim() * Q.W.back().dim();
    }
    std::vector<Matrix> l, r;
    for (std::size_t i = 0; i < L->dim(); ++i) {
        Matrix M(off, off, f);
        for (std::size_t g = 0; g < gens.size(); ++g)
            M.set_block(Q.offset[g], Q.offset[g], kronecker(detail::left_mult_on(*L, Q.U[g], L->basis(i)), Matrix::identity(Q.W[g].dim(), f)));
        l.push_back(M);
    }
    for (std::size_t i = 0; i < R->dim(); ++i) {
        Matrix M(off, off, f);
        for (std::size_t g = 0; g < gens.size(); ++g)
            M.set_block(Q.offset[g], Q.offset[g], kronecker(Matrix::identity(Q.U[g].dim(), f), detail::right_mult_on(*R, Q.W[g], R->basis(i))));
        r.push_back(M);
    }
    Q.module = make_bimodule(Bimodule(L, R, off, l, r));
    return Q;
}

// The map Q -> M sending generator g to images[g] in e_v M f_w.
inline Matrix bi_map_to(const BiProjective& Q, const Bimodule& M, const std::vector<Vec>& images) {
    Matrix F(Q.module->dim(), M.dim(), M.field());
    for (std::size_t g = 0; g < Q.size(); ++g)
        for (std::size_t a = 0; a < Q.U[g].dim(); ++a) {
            Vec ux = images[g] * M.left_act(Q.U[g].basis().row(a));
            for (std::size_t b = 0; b < Q.W[g].dim(); ++b)
                F.set_row(Q.offset[g] + a * Q.W[g].dim() + b, ux * M.right_act(Q.W[g].basis().row(b)));
        }
    return F;
}

struct BiCover {
    BiProjective Q;
    std::vector<Vec> images;
    Matrix map;
};

// Minimal projective cover: generators lift a basis of M / (J_L M + M J_R).
inline BiCover bimodule_cover(const BimodulePtr& M) {
    const auto& L = M->left_algebra();
    const auto& R = M->right_algebra();
    Field f = M->field();
    std::vector<Vec> rad;
    for (const auto& j : L->radical_generators()) {
        Matrix a = M->left_act(j);
        for (std::size_t r = 0; r < a.rows(); ++r) rad.push_back(a.row(r));
    }
    for (const auto& j : R->radical_generators()) {
        Matrix a = M->right_act(j);
        for (std::size_t r = 0; r < a.rows(); ++r) rad.push_back(a.row(r));
    }
    Matrix radM = row_basis_of(rad, M->dim(), f);
    auto top = quotient_bimodule(*M, radM);
    const auto& dl = L->idempotents();
    const auto& dr = R->idempotents();
    std::vector<std::pair<std::size_t, std::size_t>> gens;
    std::vector<Vec> images, chosen;
    std::size_t rk = 0;
    for (std::size_t cl = 0; cl < dl.classes(); ++cl)
        for (std::size_t cr = 0; cr < dr.classes(); ++cr) {
            std::size_t v = dl.rep[cl], w = dr.rep[cr];
            Matrix E = M->left_act(dl.prim[v]) * M->right_act(dr.prim[w]);
            for (std::size_t r = 0; r < E.rows() && rk < top.module->dim(); ++r) {
                Vec x = E.row(r);
                if (is_zero_vec(x)) continue;
                chosen.push_back(x * top.projection);
                std::size_t nr = row_basis_of(chosen, top.module->dim(), f).rows();
                if (nr == rk) {
                    chosen.pop_back();
                    continue;
                }
                rk = nr;
                gens.push_back({v, w});
                images.push_back(x);
            }
        }
    BiCover c{bi_projective(L, R, gens), images, Matrix()};
    c.map = bi_map_to(c.Q, *M, images);
    require(rank(c.map) == M->dim(), ErrorKind::AuditFailed, "bimodule cover is not surjective");
    return c;
}

struct BiResolution {
    BimodulePtr target;
    std::vector<BiProjective> terms;
    std::vector<Matrix> maps;               // maps[k]: Q_{k+1} -> Q_k
    std::vector<std::vector<Vec>> images;   // generator images of Q_{k+1} in Q_k
    Matrix augmentation;
    std::vector<Vec> aug_images;
    bool truncated = false;
    std::size_t length() const { return terms.empty() ? 0 : terms.size() - 1; }
    std::vector<std::size_t> dims() const {
        std::vector<std::size_t> out;
        for (const auto& q : terms) out.push_back(q.module->dim());
        return out;
    }
};

inline BiResolution bimodule_resolution(const BimodulePtr& M, std::size_t cap) {
    BiResolution res;
    res.target = M;
    Field f = M->field();
    if (M->dim() == 0) {
        res.terms.push_back(bi_projective(M->left_algebra(), M->right_algebra(), {}));
        res.augmentation = Matrix(0, 0, f);
        return res;
    }
    auto c0 = bimodule_cover(M);
    res.terms.push_back(c0.Q);
    res.augmentation = c0.map;
    res.aug_images = c0.images;
    Matrix prev = c0.map;
    while (true) {
        Matrix ker = left_kernel(prev);
        if (ker.rows() == 0) break;
        if (res.terms.size() > cap) {
            res.truncated = true;
            break;
        }
        auto K = sub_bimodule(*res.terms.back().module, ker);
        auto c = bimodule_cover(K);
        Matrix incl = RowSpace(ker).basis();
        std::vector<Vec> imgs;
        for (const auto& g : c.images) imgs.push_back(g * incl);
        res.terms.push_back(c.Q);
        res.maps.push_back(c.map * incl);
        res.images.push_back(imgs);
        prev = res.maps.back();
    }
    return res;
}

// Exactness and bimodule-map audit of a bimodule resolution.
inline bool audit_bimodule_resolution(const BiResolution& r) {
    const auto& M = r.target;
    if (M->dim() == 0) return true;
    if (rank(r.augmentation) != M->dim()) return false;
    for (std::size_t k = 0; k < r.terms.size(); ++k) {
        const Matrix& out = k == 0 ? r.augmentation : r.maps[k - 1];
        std::size_t in_rank = k < r.maps.size() ? rank(r.maps[k]) : 0;
        if (k < r.maps.size() && !(r.maps[k] * out).is_zero()) return false;
        bool last = k + 1 == r.terms.size();
        if (!(last && r.truncated) && rank(out) + in_rank != r.terms[k].module->dim()) return false;
        const Bimodule& tgt = k == 0 ? *M : *r.terms[k - 1].module;
        const Bimodule& src = *r.terms[k].module;
        for (std::size_t i = 0; i < src.left_algebra()->dim(); ++i)
            if (src.left(i) * out != out * tgt.left(i)) return false;
        for (std::size_t i = 0; i < src.right_algebra()->dim(); ++i)
            if (src.right(i) * out != out * tgt.right(i)) return false;
    }
    return true;
}

} // namespace sphertwist
