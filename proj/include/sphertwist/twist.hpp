#pragma once

// The twist T = RHom_A(ker p, -) around a surjection p: A -> B, the counit triangle, and the
// tilting-complex certificate for T(A).

#include <optional>
#include <vector>

#include "homology.hpp"

namespace sphertwist {

// Total complex Hom^n = sum_i Hom_R(Q_i, c^{n-i}) with D(phi) = d_c o phi - (-1)^n phi o d_Q.
struct HomTotal {
    ChainComplex complex;          // right modules over the left algebra of Q
    std::vector<HomAgainst> parts; // one per degree of c
    struct Block {
        std::size_t i;   // resolution index
        int j;           // degree in c
        std::size_t offset;
    };
    std::vector<std::vector<Block>> blocks; // per total degree
    bool truncated = false;
    int valid_hi = 0;                       // cohomology is exact up to this degree
};

inline HomTotal hom_total(const BiResolution& Q, const ChainComplex& c) {
    const auto& L = Q.target->left_algebra();
    Field f = L->field();
    HomTotal h;
    std::size_t nq = Q.terms.size();
    for (const auto& t : c.terms) h.parts.push_back(hom_against(Q, t));
    int lo = c.lo, hi = c.hi() + static_cast<int>(nq) - 1;
    h.complex.algebra = L;
    h.complex.lo = lo;
    h.truncated = Q.truncated;
    h.valid_hi = Q.truncated ? static_cast<int>(nq) - 2 + c.lo : hi;
    auto term_dim = [&](std::size_t i, int j) { return h.parts[static_cast<std::size_t>(j - c.lo)].complex.terms[i]->dim(); };
    for (int n = lo; n <= hi; ++n) {
        std::vector<HomTotal::Block> bl;
        std::size_t off = 0;
        std::vector<ModulePtr> pieces;
        for (std::size_t i = 0; i < nq; ++i) {
            int j = n - static_cast<int>(i);
            if (j < c.lo || j > c.hi()) continue;
            bl.push_back({i, j, off});
            off += term_dim(i, j);
            pieces.push_back(h.parts[static_cast<std::size_t>(j - c.lo)].complex.terms[i]);
        }
        h.blocks.push_back(bl);
        h.complex.terms.push_back(pieces.empty() ? zero_module(L) : direct_sum(pieces));
    }
    for (int n = lo; n < hi; ++n) {
        const auto& src = h.blocks[static_cast<std::size_t>(n - lo)];
        const auto& tgt = h.blocks[static_cast<std::size_t>(n + 1 - lo)];
        Matrix D(h.complex.terms[static_cast<std::size_t>(n - lo)]->dim(), h.complex.terms[static_cast<std::size_t>(n + 1 - lo)]->dim(), f);
        Scalar sign((n % 2 == 0) ? -1 : 1, f);
        for (const auto& s : src) {
            const auto& part = h.parts[static_cast<std::size_t>(s.j - c.lo)];
            for (const auto& t : tgt) {
                if (t.i == s.i + 1 && t.j == s.j) {
                    D.set_block(s.offset, t.offset, sign * part.complex.d[s.i]);
                } else if (t.i == s.i && t.j == s.j + 1) {
                    // post-composition with d_c, generator block by generator block
                    const auto& nxt = h.parts[static_cast<std::size_t>(t.j - c.lo)];
                    Matrix dc = c.diff(s.j);
                    const auto& Qi = Q.terms[s.i];
                    for (std::size_t g = 0; g < Qi.size(); ++g) {
                        const auto& Cs = part.C[s.i][g];
                        const auto& Ct = nxt.C[s.i][g];
                        Matrix M(Cs.dim(), Ct.dim(), f);
                        for (std::size_t r = 0; r < Cs.dim(); ++r) M.set_row(r, *Ct.coords(Cs.basis().row(r) * dc));
                        D.set_block(s.offset + part.offset[s.i][g], t.offset + nxt.offset[s.i][g],
                                    kronecker(Matrix::identity(Qi.U[g].dim(), f), M));
                    }
                }
            }
        }
        h.complex.d.push_back(D);
    }
    h.complex.check();
    return h;
}

// ---- the twist ----

struct TwistOutput {
    ChainComplex complex;
    bool truncated = false;
    int window_lo = 0, window_hi = 0;     // degrees whose cohomology is certified
    std::vector<std::size_t> cohomology;  // dims over the window
};

inline BimodulePtr kernel_bimodule(const SurjectionData& p) { return sub_bimodule(*regular_bimodule(p.source), p.kernel); }

inline TwistOutput twist_from(const BiResolution& QK, const ChainComplex& c) {
    TwistOutput out;
    if (QK.target->dim() == 0) {
        out.complex = ChainComplex{c.algebra, 0, {}, {}};
        out.window_lo = c.lo;
        out.window_hi = c.hi();
        out.cohomology.assign(static_cast<std::size_t>(c.hi() - c.lo + 1), 0);
        return out;
    }
    auto h = hom_total(QK, c);
    out.complex = h.complex;
    out.truncated = h.truncated;
    out.window_lo = h.complex.lo;
    out.window_hi = h.valid_hi;
    out.cohomology = h.complex.vec().cohomology_dims(out.window_lo, out.window_hi);
    return out;
}

inline TwistOutput twist_apply(const SurjectionData& p, const ChainComplex& c, std::size_t cap) {
    return twist_from(bimodule_resolution(kernel_bimodule(p), cap), c);
}

// ---- the counit triangle ----

struct TriangleReport {
    int lo = 0, hi = 0;
    std::vector<std::size_t> cone_dims, twist_dims;
    bool truncated = false;
    bool ok() const { return cone_dims == twist_dims; }
};

// cone(gamma) for gamma: RHom_A(B, c) -> c, phi -> phi(q) with q a lift of 1_B (over B the derived tensor
// with B is the identity), compared degree-wise with T(c).
inline TriangleReport twist_triangle_check(const SurjectionData& p, const ChainComplex& c, std::size_t cap, const BiResolution* QK = nullptr,
                                           const BiResolution* QB = nullptr) {
    Field f = p.source->field();
    std::optional<BiResolution> ownK, ownB;
    if (!QK) QK = &ownK.emplace(bimodule_resolution(kernel_bimodule(p), cap));
    if (!QB) QB = &ownB.emplace(bimodule_resolution(restrict_bimodule(regular_bimodule(p.target), nullptr, &p), cap));
    auto T = twist_from(*QK, c);
    auto H = hom_total(*QB, c);

    auto q = solve(QB->augmentation.transpose(), Matrix::row_matrix(p.target->unit(), f).transpose());
    require(q.has_value(), ErrorKind::AuditFailed, "augmentation does not reach 1");
    Vec qt = q->transpose().row(0);
    const auto& Q0 = QB->terms[0];

    auto hv = H.complex.vec();
    auto cv = c.vec();
    VecChainMap gamma{hv.lo, {}};
    for (int n = hv.lo; n <= hv.hi(); ++n) {
        Matrix G(hv.dim_at(n), cv.dim_at(n), f);
        for (const auto& b : H.blocks[static_cast<std::size_t>(n - hv.lo)]) {
            if (b.i != 0) continue;
            const auto& part = H.parts[static_cast<std::size_t>(b.j - c.lo)];
            const auto& cm = c.term(b.j);
            for (std::size_t g = 0; g < Q0.size(); ++g) {
                const auto& Cg = part.C[0][g];
                std::size_t dw = Q0.W[g].dim();
                for (std::size_t a = 0; a < Q0.U[g].dim(); ++a)
                    for (std::size_t bb = 0; bb < dw; ++bb) {
                        const Scalar& s = qt[Q0.offset[g] + a * dw + bb];
                        if (s.is_zero()) continue;
                        Matrix img = Cg.basis() * cm->act(Q0.W[g].basis().row(bb));
                        for (std::size_t t = 0; t < Cg.dim(); ++t) {
                            std::size_t row = b.offset + part.offset[0][g] + a * Cg.dim() + t;
                            for (std::size_t col = 0; col < img.cols(); ++col) G(row, col) += s * img(t, col);
                        }
                    }
            }
        }
        gamma.comp.push_back(G);
    }
    auto C = cone(gamma, hv, cv);
    TriangleReport r;
    r.truncated = QK->truncated || QB->truncated;
    r.lo = std::min(C.lo, T.window_lo);
    r.hi = std::max(C.hi(), T.window_hi);
    if (QB->truncated) r.hi = std::min(r.hi, H.valid_hi - 1);
    if (QK->truncated) r.hi = std::min(r.hi, T.window_hi);
    for (int n = r.lo; n <= r.hi; ++n) {
        r.cone_dims.push_back(C.cohomology_dim(n));
        r.twist_dims.push_back(n >= T.window_lo && n <= T.complex.hi() ? T.complex.vec().cohomology_dim(n) : 0);
    }
    return r;
}

// ---- Hom in the derived category between bounded complexes of injectives ----

// Hom^n(X, Y) = sum_p Hom(X^p, Y^{p+n}) with D(phi) = phi d_Y - (-1)^n d_X phi (diagram order).
struct HomComplex {
    VecComplex complex;
    std::vector<std::vector<std::tuple<int, std::size_t, std::size_t>>> blocks; // per degree: (p, offset, hom index)
    std::vector<std::vector<Matrix>> homs;                                       // hom bases for each (p, q) pair used
    std::vector<RowSpace> spaces;
    std::map<std::pair<int, int>, std::size_t> index;
};

inline HomComplex hom_complex(const ChainComplex& X, const ChainComplex& Y) {
    Field f = X.algebra->field();
    HomComplex h;
    int lo = Y.lo - X.hi(), hi = Y.hi() - X.lo;
    auto hom_index = [&](int p, int q) {
        auto key = std::make_pair(p, q);
        auto it = h.index.find(key);
        if (it != h.index.end()) return it->second;
        auto basis = hom_space(*X.term(p), *Y.term(q));
        std::vector<Vec> rows;
        for (const auto& b : basis) rows.push_back(b.raw());
        h.homs.push_back(basis);
        h.spaces.emplace_back(rows, X.term(p)->dim() * Y.term(q)->dim(), f);
        h.index[key] = h.homs.size() - 1;
        return h.homs.size() - 1;
    };
    h.complex = VecComplex{f, lo, {}, {}};
    for (int n = lo; n <= hi; ++n) {
        std::vector<std::tuple<int, std::size_t, std::size_t>> bl;
        std::size_t off = 0;
        for (int p = X.lo; p <= X.hi(); ++p) {
            if (p + n < Y.lo || p + n > Y.hi()) continue;
            std::size_t k = hom_index(p, p + n);
            if (h.homs[k].empty()) continue;
            bl.emplace_back(p, off, k);
            off += h.homs[k].size();
        }
        h.blocks.push_back(bl);
        h.complex.dims.push_back(off);
    }
    for (int n = lo; n < hi; ++n) {
        const auto& src = h.blocks[static_cast<std::size_t>(n - lo)];
        const auto& tgt = h.blocks[static_cast<std::size_t>(n + 1 - lo)];
        Matrix D(h.complex.dims[static_cast<std::size_t>(n - lo)], h.complex.dims[static_cast<std::size_t>(n + 1 - lo)], f);
        Scalar sgn((n % 2 == 0) ? -1 : 1, f);
        auto place = [&](std::size_t row, int p2, const Matrix& m, const Scalar& s) {
            if (m.is_zero()) return;
            for (const auto& [p, off, k] : tgt) {
                if (p != p2) continue;
                auto co = h.spaces[k].coords(m.raw());
                require(co.has_value(), ErrorKind::AuditFailed, "composite is not a module map");
                for (std::size_t t = 0; t < co->size(); ++t) D(row, off + t) += s * (*co)[t];
                return;
            }
            fail(ErrorKind::AuditFailed, "nonzero composite outside the hom complex");
        };
        for (const auto& [p, off, k] : src) {
            for (std::size_t b = 0; b < h.homs[k].size(); ++b) {
                const Matrix& phi = h.homs[k][b];
                if (p + n < Y.hi()) place(off + b, p, phi * Y.diff(p + n), Scalar(1, f));
                if (p - 1 >= X.lo) place(off + b, p - 1, X.diff(p - 1) * phi, sgn);
            }
        }
        h.complex.d.push_back(D);
    }
    h.complex.check();
    return h;
}

struct TwistCertificate {
    bool perfect = false;                 // the kernel has a finite bimodule resolution within the cap
    std::size_t resolution_length = 0;
    std::vector<std::vector<std::size_t>> images; // cohomology of T(e_i A) over each window
    std::vector<int> image_lo;
    int hom_lo = 0;
    std::vector<std::size_t> hom_table;   // dim Hom(T(A), T(A)[n]) for n from hom_lo
    std::size_t endo_dim = 0;
    bool off_shift_zero = false;
    bool unit_map_bijective = false;
    bool verdict = false;
};

// Certificate that T(A) is a tilting complex with End(T(A)) = A via the unit a -> T(l_a). Terms of
// T(A) are Hom_A(Q_i, A), injective right modules, so chain maps modulo homotopy compute derived homs.
inline TwistCertificate equivalence_certificate(const SurjectionData& p, std::size_t cap, const BiResolution* QK = nullptr) {
    const auto& A = p.source;
    Field f = A->field();
    TwistCertificate cert;
    std::optional<BiResolution> own;
    if (!QK) QK = &own.emplace(bimodule_resolution(kernel_bimodule(p), cap));
    cert.perfect = !QK->truncated;
    cert.resolution_length = QK->length();
    if (!cert.perfect) return cert;
    if (QK->target->dim() == 0) return cert; // T = 0

    for (const auto& e : A->idempotents().prim) {
        auto T = twist_from(*QK, stalk(right_ideal(A, e).module));
        cert.images.push_back(T.cohomology);
        cert.image_lo.push_back(T.window_lo);
    }
    auto H = hom_total(*QK, stalk(regular_module(A)));
    const auto& TA = H.complex;
    auto hc = hom_complex(TA, TA);
    cert.hom_lo = hc.complex.lo;
    cert.off_shift_zero = true;
    for (int n = hc.complex.lo; n <= hc.complex.hi(); ++n) {
        std::size_t d = hc.complex.cohomology_dim(n);
        cert.hom_table.push_back(d);
        if (n == 0) cert.endo_dim = d;
        else if (d != 0) cert.off_shift_zero = false;
    }

    // unit: a -> post-composition with left multiplication by a, as a degree-0 cocycle
    const auto& part = H.parts[0];
    std::vector<Vec> units;
    for (std::size_t x = 0; x < A->dim(); ++x) {
        Vec cyc = zero_vec(hc.complex.dim_at(0), f);
        Matrix la = A->left(x);
        for (const auto& [pdeg, off, k] : hc.blocks[static_cast<std::size_t>(-hc.complex.lo)]) {
            std::size_t i = static_cast<std::size_t>(pdeg);
            const auto& Qi = QK->terms[i];
            Matrix F(TA.term(pdeg)->dim(), TA.term(pdeg)->dim(), f);
            for (std::size_t g = 0; g < Qi.size(); ++g) {
                const auto& Cg = part.C[i][g];
                Matrix M(Cg.dim(), Cg.dim(), f);
                for (std::size_t r = 0; r < Cg.dim(); ++r) M.set_row(r, *Cg.coords(Cg.basis().row(r) * la));
                F.set_block(part.offset[i][g], part.offset[i][g], kronecker(Matrix::identity(Qi.U[g].dim(), f), M));
            }
            auto co = hc.spaces[k].coords(F.raw());
            require(co.has_value(), ErrorKind::AuditFailed, "unit component is not a module map");
            for (std::size_t t = 0; t < co->size(); ++t) cyc[off + t] = (*co)[t];
        }
        units.push_back(cyc);
    }
    Matrix U = Matrix::from_rows(units, hc.complex.dim_at(0), f);
    bool cocycles = (U * hc.complex.diff(0)).is_zero();
    Matrix B = hc.complex.diff(-1);
    std::size_t rb = rank(B);
    std::size_t joint = rank(B.rows() ? Matrix::vstack(B, U) : U);
    cert.unit_map_bijective = cocycles && joint - rb == A->dim() && cert.endo_dim == A->dim();
    cert.verdict = cert.perfect && cert.off_shift_zero && cert.endo_dim == A->dim() && cert.unit_map_bijective;
    return cert;
}

} // namespace sphertwist
