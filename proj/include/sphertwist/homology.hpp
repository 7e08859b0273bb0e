#pragma once

// Ext and Tor from projective resolutions, derived tensor and hom against bimodule resolutions,
// Tor_t(B, B) as a bimodule, and the cotwist data of a surjection p: A -> B.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bimodule.hpp"
#include "complex.hpp"
#include "resolutions.hpp"

namespace sphertwist {

namespace detail {

inline std::vector<RowSpace> corner_spaces(const Module& V, const std::vector<std::size_t>& idem) {
    std::vector<RowSpace> out;
    for (auto k : idem) out.emplace_back(V.act(V.algebra()->idempotents().prim[k]));
    return out;
}

inline std::vector<std::size_t> offsets_of(const std::vector<RowSpace>& sp) {
    std::vector<std::size_t> off;
    std::size_t o = 0;
    for (const auto& s : sp) {
        off.push_back(o);
        o += s.dim();
    }
    off.push_back(o);
    return off;
}

} // namespace detail

// Hom(P_., N) for a resolution of m: degree i holds the sum of N e_k over the summands of P_i.
inline VecComplex hom_complex(const Resolution& r, const Module& N) {
    Field f = N.field();
    VecComplex c{f, 0, {}, {}};
    std::vector<std::vector<RowSpace>> sp;
    for (const auto& P : r.terms) {
        sp.push_back(detail::corner_spaces(N, P.idem));
        c.dims.push_back(detail::offsets_of(sp.back()).back());
    }
    for (std::size_t i = 0; i + 1 < r.terms.size(); ++i) {
        auto oi = detail::offsets_of(sp[i]), oj = detail::offsets_of(sp[i + 1]);
        Matrix D(c.dims[i], c.dims[i + 1], f);
        for (std::size_t j = 0; j < r.terms[i + 1].summands(); ++j) {
            auto parts = r.terms[i].unpack(r.images[i][j]);
            for (std::size_t k = 0; k < r.terms[i].summands(); ++k) {
                if (is_zero_vec(parts[k])) continue;
                Matrix act = N.act(parts[k]);
                for (std::size_t s = 0; s < sp[i][k].dim(); ++s) {
                    Vec img = sp[i][k].basis().row(s) * act;
                    Vec co = sp[i + 1][j].coords_unchecked(img);
                    for (std::size_t t = 0; t < co.size(); ++t) D(oi[k] + s, oj[j] + t) += co[t];
                }
            }
        }
        c.d.push_back(D);
    }
    c.check();
    return c;
}

// P_. (x) V for a resolution over A and V a module over A^op (a left A-module): degree -i holds
// the sum of e_k V.
inline VecComplex tensor_complex(const Resolution& r, const Module& V) {
    Field f = V.field();
    std::size_t L = r.terms.size();
    VecComplex c{f, -static_cast<int>(L) + 1, std::vector<std::size_t>(L), {}};
    std::vector<std::vector<RowSpace>> sp;
    for (const auto& P : r.terms) {
        std::vector<RowSpace> s;
        for (auto k : P.idem) s.emplace_back(V.act(r.target->algebra()->idempotents().prim[k]));
        sp.push_back(s);
    }
    for (std::size_t i = 0; i < L; ++i) c.dims[L - 1 - i] = detail::offsets_of(sp[i]).back();
    // d from degree -(i+1) to -i
    for (std::size_t i = L - 1; i-- > 0;) {
        auto oi = detail::offsets_of(sp[i]), oj = detail::offsets_of(sp[i + 1]);
        Matrix D(oj.back(), oi.back(), f);
        for (std::size_t j = 0; j < r.terms[i + 1].summands(); ++j) {
            auto parts = r.terms[i].unpack(r.images[i][j]);
            for (std::size_t k = 0; k < r.terms[i].summands(); ++k) {
                if (is_zero_vec(parts[k])) continue;
                Matrix act = V.act(parts[k]);
                for (std::size_t s = 0; s < sp[i + 1][j].dim(); ++s) {
                    Vec img = sp[i + 1][j].basis().row(s) * act;
                    Vec co = sp[i][k].coords_unchecked(img);
                    for (std::size_t t = 0; t < co.size(); ++t) D(oj[j] + s, oi[k] + t) += co[t];
                }
            }
        }
        c.d.push_back(D);
    }
    c.check();
    return c;
}

struct DimProfile {
    std::vector<std::size_t> dims; // degree 0, 1, ...
    bool complete = true;          // false when the resolution was cut at the cap
};

// dim Ext^i(m, n) for i < count.
inline DimProfile ext_dims(const ModulePtr& m, const ModulePtr& n, std::size_t count) {
    require_same_algebra(*m, *n);
    auto r = minimal_resolution(m, count);
    auto c = hom_complex(r, *n);
    DimProfile p;
    for (std::size_t i = 0; i < count; ++i) p.dims.push_back(c.cohomology_dim(static_cast<int>(i)));
    if (r.truncated) {
        // the last computed term has an unknown outgoing differential
        p.complete = r.length() >= count;
    }
    return p;
}

// dim Tor_i(m, n) for i < count; n is a left module given over the opposite algebra `op`.
// resolve_left = true resolves m, otherwise n.
inline DimProfile tor_dims(const ModulePtr& m, const ModulePtr& n, std::size_t count, bool resolve_left = true) {
    require(m->algebra()->dim() == n->algebra()->dim(), ErrorKind::AlgebraMismatch, "tor over different algebras");
    auto r = resolve_left ? minimal_resolution(m, count) : minimal_resolution(n, count);
    auto c = tensor_complex(r, resolve_left ? *n : *m);
    DimProfile p;
    for (std::size_t i = 0; i < count; ++i) p.dims.push_back(c.cohomology_dim(-static_cast<int>(i)));
    p.complete = !r.truncated || r.length() >= count;
    return p;
}

// ---- complexes against bimodule resolutions ----

// Complex of bimodules with its differentials.
struct BiComplex {
    int lo = 0;
    std::vector<BimodulePtr> terms;
    std::vector<Matrix> d;
    VecComplex vec() const {
        VecComplex v{terms.empty() ? Field::rational() : terms[0]->field(), lo, {}, d};
        for (const auto& t : terms) v.dims.push_back(t->dim());
        return v;
    }
};

// Cohomology at degree n of a bimodule complex, as a bimodule.
inline BimodulePtr cohomology_bimodule(const BiComplex& c, int n) {
    auto v = c.vec();
    std::size_t k = static_cast<std::size_t>(n - c.lo);
    const auto& T = c.terms[k];
    Matrix Z = left_kernel(v.diff(n));
    auto Zb = sub_bimodule(*T, Z);
    Matrix B = row_basis(v.diff(n - 1));
    RowSpace Zs(Z);
    std::vector<Vec> inside;
    for (std::size_t r = 0; r < B.rows(); ++r) inside.push_back(*Zs.coords(B.row(r)));
    return quotient_bimodule(*Zb, row_basis_of(inside, Zb->dim(), T->field())).module;
}

namespace detail {

// Coefficients of a Q-vector: per generator block, the (a, b) entries.
struct Tensor {
    std::size_t g, a, b;
    Scalar c;
};

inline std::vector<Tensor> tensor_terms(const BiProjective& Q, const Vec& y) {
    std::vector<Tensor> out;
    for (std::size_t g = 0; g < Q.size(); ++g) {
        std::size_t dw = Q.W[g].dim();
        for (std::size_t a = 0; a < Q.U[g].dim(); ++a)
            for (std::size_t b = 0; b < dw; ++b) {
                const Scalar& s = y[Q.offset[g] + a * dw + b];
                if (!s.is_zero()) out.push_back({g, a, b, s});
            }
    }
    return out;
}

} // namespace detail

// V (x)_L Q_. for an X-L bimodule V and an L-R bimodule resolution Q: degree -i holds the sum of
// V e_v (x) f_w R; terms are X-R bimodules.
inline BiComplex tensor_left(const Bimodule& V, const BiResolution& Q) {
    const auto& L = Q.target->left_algebra();
    const auto& R = Q.target->right_algebra();
    const auto& X = V.left_algebra();
    Field f = V.field();
    std::size_t n = Q.terms.size();
    std::vector<std::vector<RowSpace>> Z(n);
    std::vector<std::vector<std::size_t>> off(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t o = 0;
        for (std::size_t g = 0; g < Q.terms[i].size(); ++g) {
            Z[i].emplace_back(V.right_act(L->idempotents().prim[Q.terms[i].gens[g].first]));
            off[i].push_back(o);
            o += Z[i][g].dim() * Q.terms[i].W[g].dim();
        }
        off[i].push_back(o);
    }
    BiComplex c;
    c.lo = -static_cast<int>(n) + 1;
    c.terms.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& Qi = Q.terms[i];
        std::size_t dim = off[i].back();
        std::vector<Matrix> la, ra;
        for (std::size_t x = 0; x < X->dim(); ++x) {
            Matrix M(dim, dim, f);
            for (std::size_t g = 0; g < Qi.size(); ++g) {
                Matrix img = Z[i][g].basis() * V.left(x);
                Matrix co(Z[i][g].dim(), Z[i][g].dim(), f);
                for (std::size_t s = 0; s < Z[i][g].dim(); ++s) co.set_row(s, *Z[i][g].coords(img.row(s)));
                M.set_block(off[i][g], off[i][g], kronecker(co, Matrix::identity(Qi.W[g].dim(), f)));
            }
            la.push_back(M);
        }
        for (std::size_t r = 0; r < R->dim(); ++r) {
            Matrix M(dim, dim, f);
            for (std::size_t g = 0; g < Qi.size(); ++g)
                M.set_block(off[i][g], off[i][g],
                            kronecker(Matrix::identity(Z[i][g].dim(), f), detail::right_mult_on(*R, Qi.W[g], R->basis(r))));
            ra.push_back(M);
        }
        c.terms[n - 1 - i] = make_bimodule(Bimodule(X, R, dim, la, ra));
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        const auto& src = Q.terms[i + 1];
        const auto& tgt = Q.terms[i];
        Matrix D(off[i + 1].back(), off[i].back(), f);
        for (std::size_t g2 = 0; g2 < src.size(); ++g2) {
            auto terms = detail::tensor_terms(tgt, Q.images[i][g2]);
            std::size_t dz = Z[i + 1][g2].dim(), dw2 = src.W[g2].dim();
            for (const auto& t : terms) {
                Matrix ua = V.right_act(tgt.U[t.g].basis().row(t.a));
                const Vec wb = tgt.W[t.g].basis().row(t.b);
                std::size_t dwg = tgt.W[t.g].dim();
                for (std::size_t al = 0; al < dz; ++al) {
                    Vec zu = Z[i + 1][g2].basis().row(al) * ua;
                    if (is_zero_vec(zu)) continue;
                    Vec zc = Z[i][t.g].coords_unchecked(zu);
                    for (std::size_t be = 0; be < dw2; ++be) {
                        Vec wr = R->mul(wb, src.W[g2].basis().row(be));
                        if (is_zero_vec(wr)) continue;
                        Vec wc = tgt.W[t.g].coords_unchecked(wr);
                        std::size_t row = off[i + 1][g2] + al * dw2 + be;
                        for (std::size_t p = 0; p < zc.size(); ++p) {
                            if (zc[p].is_zero()) continue;
                            for (std::size_t q = 0; q < wc.size(); ++q)
                                if (!wc[q].is_zero()) D(row, off[i][t.g] + p * dwg + q) += t.c * zc[p] * wc[q];
                        }
                    }
                }
            }
        }
        c.d.push_back(D);
    }
    c.vec().check();
    return c;
}

// Hom_R(Q_., c) for an L-R bimodule resolution Q and a right R-module c: degree i holds the sum of
// Hom_k(L e_v, c f_w); terms are right L-modules via (phi . l)(x) = phi(l x).
struct HomAgainst {
    ChainComplex complex;
    std::vector<std::vector<RowSpace>> C;           // bases of c f_w per term and generator
    std::vector<std::vector<std::size_t>> offset;
};

inline HomAgainst hom_against(const BiResolution& Q, const ModulePtr& c) {
    const auto& L = Q.target->left_algebra();
    const auto& R = Q.target->right_algebra();
    require(same_algebra(*c->algebra(), *R), ErrorKind::AlgebraMismatch, "module is not over the right algebra of the resolution");
    Field f = c->field();
    std::size_t n = Q.terms.size();
    HomAgainst h;
    h.C.resize(n);
    h.offset.resize(n);
    h.complex.algebra = L;
    h.complex.lo = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& Qi = Q.terms[i];
        std::size_t o = 0;
        for (std::size_t g = 0; g < Qi.size(); ++g) {
            h.C[i].emplace_back(c->act(R->idempotents().prim[Qi.gens[g].second]));
            h.offset[i].push_back(o);
            o += Qi.U[g].dim() * h.C[i][g].dim();
        }
        h.offset[i].push_back(o);
        std::vector<Matrix> act;
        for (std::size_t l = 0; l < L->dim(); ++l) {
            Matrix M(o, o, f);
            for (std::size_t g = 0; g < Qi.size(); ++g)
                M.set_block(h.offset[i][g], h.offset[i][g],
                            kronecker(detail::left_mult_on(*L, Qi.U[g], L->basis(l)).transpose(), Matrix::identity(h.C[i][g].dim(), f)));
            act.push_back(M);
        }
        h.complex.terms.push_back(make_module(Module(L, o, act)));
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto& src = Q.terms[i];     // Hom(Q_i, c)
        const auto& tgt = Q.terms[i + 1]; // Hom(Q_{i+1}, c)
        Matrix D(h.offset[i].back(), h.offset[i + 1].back(), f);
        std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Matrix> cache;
        for (std::size_t g2 = 0; g2 < tgt.size(); ++g2) {
            Matrix fw = c->act(R->idempotents().prim[tgt.gens[g2].second]);
            auto terms = detail::tensor_terms(src, Q.images[i][g2]);
            std::size_t dc2 = h.C[i + 1][g2].dim();
            for (const auto& t : terms) {
                auto key = std::make_tuple(t.g, t.b, g2);
                auto it = cache.find(key);
                if (it == cache.end()) {
                    Matrix act = c->act(src.W[t.g].basis().row(t.b)) * fw;
                    const auto& Cg = h.C[i][t.g];
                    Matrix T(Cg.dim(), dc2, f);
                    for (std::size_t s = 0; s < Cg.dim(); ++s) T.set_row(s, h.C[i + 1][g2].coords_unchecked(Cg.basis().row(s) * act));
                    it = cache.emplace(key, T).first;
                }
                const Matrix& T = it->second;
                if (T.is_zero()) continue;
                std::size_t dcg = h.C[i][t.g].dim();
                Vec ua = src.U[t.g].basis().row(t.a);
                for (std::size_t a2 = 0; a2 < tgt.U[g2].dim(); ++a2) {
                    Vec y = L->mul(tgt.U[g2].basis().row(a2), ua);
                    if (is_zero_vec(y)) continue;
                    Vec kappa = src.U[t.g].coords_unchecked(y);
                    for (std::size_t s = 0; s < kappa.size(); ++s) {
                        if (kappa[s].is_zero()) continue;
                        Scalar coef = t.c * kappa[s];
                        for (std::size_t p = 0; p < dcg; ++p)
                            for (std::size_t q = 0; q < dc2; ++q)
                                if (!T(p, q).is_zero())
                                    D(h.offset[i][t.g] + s * dcg + p, h.offset[i + 1][g2] + a2 * dc2 + q) += coef * T(p, q);
                    }
                }
            }
        }
        h.complex.d.push_back(D);
    }
    h.complex.check();
    return h;
}

// ---- cotwist ----

// B as an A-B bimodule and as a B-A bimodule through p.
inline BimodulePtr quotient_as_AB(const SurjectionData& p) {
    return restrict_bimodule(regular_bimodule(p.target), &p, nullptr);
}
inline BimodulePtr quotient_as_BA(const SurjectionData& p) {
    return restrict_bimodule(regular_bimodule(p.target), nullptr, &p);
}

struct CotwistData {
    std::vector<std::size_t> tor_dims;       // dim Tor_k^A(B, B), k = 0 .. computed
    bool complete = true;
    std::optional<std::size_t> t;            // when Tor is nonzero exactly in degrees 0 and t
    BimodulePtr tor_t;                       // Tor_t as a B-B bimodule
    bool right_projective = false, left_projective = false;
    std::vector<std::size_t> permutation;    // i -> j with e_i Tor_t e_j != 0
    int cone_lo = 0;
    std::vector<std::size_t> cone_dims;      // cohomology of cone(beta) in degrees cone_lo .. 0
    std::optional<int> cone_degree;          // the single degree carrying cone cohomology
    std::optional<int> shift;                // -t-1
};

inline CotwistData cotwist_data(const SurjectionData& p, std::size_t cap) {
    const auto& A = p.source;
    const auto& B = p.target;
    Field f = A->field();
    CotwistData out;
    auto Q = bimodule_resolution(quotient_as_AB(p), cap);
    auto V = quotient_as_BA(p);
    auto X = tensor_left(*V, Q);
    auto XV = X.vec();
    std::size_t n = Q.terms.size();
    out.complete = !Q.truncated;
    std::size_t valid = Q.truncated ? n - 1 : n; // Tor_k valid for k < valid
    for (std::size_t k = 0; k < valid; ++k) out.tor_dims.push_back(XV.cohomology_dim(-static_cast<int>(k)));
    require(out.tor_dims.empty() || out.tor_dims[0] == B->dim(), ErrorKind::AuditFailed, "Tor_0(B, B) is not B");

    // beta: V (x) Q_0 -> B, z (x) r -> z x_g r
    const auto& Q0 = Q.terms[0];
    VecComplex Bc{f, 0, {B->dim()}, {}};
    Matrix beta(XV.dim_at(0), B->dim(), f);
    {
        std::size_t o = 0;
        for (std::size_t g = 0; g < Q0.size(); ++g) {
            RowSpace Zg(V->right_act(A->idempotents().prim[Q0.gens[g].first]));
            for (std::size_t al = 0; al < Zg.dim(); ++al)
                for (std::size_t be = 0; be < Q0.W[g].dim(); ++be)
                    beta.set_row(o + al * Q0.W[g].dim() + be, B->mul(B->mul(Zg.basis().row(al), Q.aug_images[g]), Q0.W[g].basis().row(be)));
            o += Zg.dim() * Q0.W[g].dim();
        }
    }
    VecChainMap bm{0, {beta}};
    auto C = cone(bm, XV, Bc);
    out.cone_lo = Q.truncated ? XV.lo : C.lo;
    for (int d = out.cone_lo; d <= 0; ++d) out.cone_dims.push_back(C.cohomology_dim(d));
    {
        std::vector<int> nz;
        for (std::size_t k = 0; k < out.cone_dims.size(); ++k)
            if (out.cone_dims[k]) nz.push_back(out.cone_lo + static_cast<int>(k));
        if (nz.size() == 1 && out.complete) out.cone_degree = nz[0];
    }

    std::vector<std::size_t> nonzero;
    for (std::size_t k = 1; k < out.tor_dims.size(); ++k)
        if (out.tor_dims[k]) nonzero.push_back(k);
    if (out.complete && nonzero.size() == 1) {
        std::size_t t = nonzero[0];
        out.t = t;
        out.shift = -static_cast<int>(t) - 1;
        out.tor_t = cohomology_bimodule(X, -static_cast<int>(t));
        auto Bop = opposite(B);
        out.right_projective = in_add(*out.tor_t->as_right_module(), *regular_module(B));
        out.left_projective = in_add(*out.tor_t->as_left_module(Bop), *regular_module(Bop));
        const auto& prim = B->idempotents().prim;
        for (std::size_t i = 0; i < prim.size(); ++i) {
            std::size_t found = prim.size();
            for (std::size_t j = 0; j < prim.size(); ++j)
                if (!(out.tor_t->left_act(prim[i]) * out.tor_t->right_act(prim[j])).is_zero()) found = found == prim.size() ? j : prim.size() + 1;
            out.permutation.push_back(found);
        }
    }
    return out;
}

// Tor_t(B, B) as a bimodule; requires concentration in degrees 0 and t.
inline BimodulePtr tor_bimodule(const SurjectionData& p, std::size_t t, std::size_t cap) {
    auto c = cotwist_data(p, cap);
    if (!c.t || *c.t != t) fail(ErrorKind::NotConcentrated, "Tor^A(B, B) is not concentrated in degrees 0 and " + std::to_string(t));
    return c.tor_t;
}

} // namespace sphertwist
