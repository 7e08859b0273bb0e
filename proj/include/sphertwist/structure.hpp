#pragma once

// Primitive idempotents, their isomorphism classes, and generating sets.

#include <cstdint>
#include <optional>
#include <vector>

#include "algebra.hpp"

namespace sphertwist {

// Span of the subalgebra generated by the unit and the given elements (rows, canonical).
inline RowSpace generated_subalgebra(const Algebra& A, const std::vector<Vec>& gens) {
    std::vector<Vec> span{A.unit()};
    RowSpace S(span, A.dim(), A.field());
    std::vector<Vec> frontier{A.unit()};
    std::vector<Matrix> rmats;
    for (const auto& g : gens) rmats.push_back(A.right_mult(g));
    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (const auto& v : frontier)
            for (const auto& R : rmats) {
                Vec w = v * R;
                if (!S.contains(w)) {
                    span.push_back(w);
                    S = RowSpace(span, A.dim(), A.field());
                    next.push_back(w);
                }
            }
        frontier = std::move(next);
    }
    return S;
}

namespace detail {

// Coefficients c_0..c_d of the minimal polynomial of x inside a corner with identity e.
inline std::vector<Scalar> corner_min_poly(const Algebra& A, const Vec& e, const Vec& x) {
    std::vector<Vec> powers{e};
    while (true) {
        Vec next = A.mul(powers.back(), x);
        RowSpace S(powers, A.dim(), A.field());
        auto c = S.coords(next);
        if (c) {
            // next = sum_k c_k' * powers_k expressed through rref basis; solve for power coefficients directly
            Matrix P = Matrix::from_rows(powers, A.dim(), A.field()).transpose();
            auto sol = solve(P, Matrix::column(next, A.field()));
            std::vector<Scalar> poly;
            for (std::size_t k = 0; k < powers.size(); ++k) poly.push_back(-(*sol)(k, 0));
            poly.push_back(Scalar(1, A.field()));
            return poly;
        }
        powers.push_back(next);
    }
}

inline Scalar eval_poly(const std::vector<Scalar>& c, const Scalar& x) {
    Scalar r(0, x.field());
    for (std::size_t k = c.size(); k-- > 0;) r = r * x + c[k];
    return r;
}

inline std::vector<mpz_class> small_divisors(mpz_class n) {
    if (n < 0) n = -n;
    std::vector<mpz_class> out;
    if (n == 0 || n > mpz_class("1000000000000")) return {mpz_class(1)};
    std::uint64_t v = n.get_ui();
    for (std::uint64_t d = 1; d * d <= v; ++d)
        if (v % d == 0) {
            out.emplace_back(static_cast<unsigned long>(d));
            if (d * d != v) out.emplace_back(static_cast<unsigned long>(v / d));
        }
    return out;
}

inline std::optional<Scalar> find_root(const std::vector<Scalar>& poly, Field f) {
    if (poly[0].is_zero()) return Scalar(0, f);
    if (!f.is_rational()) {
        if (f.p > 100000) return std::nullopt;
        for (std::uint64_t a = 0; a < f.p; ++a)
            if (eval_poly(poly, Scalar(static_cast<std::int64_t>(a), f)).is_zero()) return Scalar(static_cast<std::int64_t>(a), f);
        return std::nullopt;
    }
    mpz_class l = 1;
    for (const auto& c : poly) l = lcm(l, c.to_mpq().get_den());
    mpq_class a0q = poly.front().to_mpq() * l;
    mpz_class a0 = a0q.get_num();
    mpq_class adq = poly.back().to_mpq() * l;
    mpz_class ad = adq.get_num();
    for (const auto& p : small_divisors(a0))
        for (const auto& q : small_divisors(ad))
            for (int s : {1, -1}) {
                mpq_class r(s * p, q);
                r.canonicalize();
                Scalar x = Scalar::from_mpq(r);
                if (eval_poly(poly, x).is_zero()) return x;
            }
    return std::nullopt;
}

struct Lcg {
    std::uint64_t s;
    std::int64_t small() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<std::int64_t>((s >> 33) % 5) - 2;
    }
};

// Splits an idempotent e of a semisimple algebra into primitive ones.
inline void split_corner(const Algebra& S, const Vec& e, std::vector<Vec>& out) {
    Field f = S.field();
    std::vector<Vec> cb;
    for (std::size_t i = 0; i < S.dim(); ++i) cb.push_back(S.mul(e, S.basis(i), e));
    RowSpace C(cb, S.dim(), f);
    if (C.dim() == 1) {
        out.push_back(e);
        return;
    }
    std::vector<Vec> cands;
    for (std::size_t i = 0; i < C.dim(); ++i) cands.push_back(C.basis().row(i));
    for (std::size_t i = 0; i < C.dim(); ++i)
        for (std::size_t j = i + 1; j < C.dim(); ++j) cands.push_back(vec_add(C.basis().row(i), C.basis().row(j)));
    Lcg rng{0x5eed};
    for (int t = 0; t < 64; ++t) {
        Vec v = zero_vec(S.dim(), f);
        for (std::size_t i = 0; i < C.dim(); ++i) axpy(v, Scalar(rng.small(), f), C.basis().row(i));
        cands.push_back(v);
    }
    for (const auto& x : cands) {
        auto poly = corner_min_poly(S, e, x);
        if (poly.size() <= 2) continue;
        auto root = find_root(poly, f);
        if (!root) continue;
        Vec y = vec_sub(x, scaled(e, *root));
        // right ideal yC and its left identity f = y c
        std::vector<Vec> rv;
        for (std::size_t i = 0; i < C.dim(); ++i) rv.push_back(S.mul(y, C.basis().row(i)));
        RowSpace R(rv, S.dim(), f);
        if (R.dim() == 0 || R.dim() == C.dim()) continue;
        // unknown c in C (coords over C basis): (y c) r_k = r_k for all basis r_k of R
        std::size_t n = C.dim();
        Matrix M(n, S.dim() * R.dim(), f);
        Vec rhs;
        for (std::size_t k = 0; k < R.dim(); ++k) {
            Vec rk = R.basis().row(k);
            for (std::size_t i = 0; i < n; ++i) {
                Vec img = S.mul(S.mul(y, C.basis().row(i)), rk);
                for (std::size_t j = 0; j < S.dim(); ++j) M(i, k * S.dim() + j) = img[j];
            }
            rhs.insert(rhs.end(), rk.begin(), rk.end());
        }
        auto sol = solve(M.transpose(), Matrix::column(rhs, f));
        if (!sol) continue;
        Vec cvec = zero_vec(S.dim(), f);
        for (std::size_t i = 0; i < n; ++i) axpy(cvec, (*sol)(i, 0), C.basis().row(i));
        Vec fe = S.mul(y, cvec);
        if (S.mul(fe, fe) != fe) continue;
        split_corner(S, fe, out);
        split_corner(S, vec_sub(e, fe), out);
        return;
    }
    fail(ErrorKind::NotSplit, "no splitting element found in a corner of dimension " + std::to_string(C.dim()));
}

inline Vec lift_one(const Algebra& A, Vec u) {
    for (int it = 0; it < 64; ++it) {
        Vec u2 = A.mul(u, u);
        if (u2 == u) return u;
        Vec u3 = A.mul(u2, u);
        u = vec_sub(scaled(u2, Scalar(3, A.field())), scaled(u3, Scalar(2, A.field())));
    }
    fail(ErrorKind::AuditFailed, "idempotent lifting did not converge");
}

} // namespace detail

// Complete orthogonal primitive idempotents lifting a matrix-unit diagonal of A/rad A.
inline std::vector<Vec> lift_idempotents(const AlgebraPtr& A) {
    Matrix J = radical(*A);
    auto q = quotient_surjection_raw(A, J);
    const Algebra& S = *q.target;
    std::vector<Vec> bar;
    if (S.dim() > 0) detail::split_corner(S, S.unit(), bar);
    std::vector<Vec> lifted;
    Vec E = A->zero();
    for (std::size_t k = 0; k < bar.size(); ++k) {
        Vec one_minus = vec_sub(A->unit(), E);
        Vec e;
        if (k + 1 == bar.size()) {
            e = one_minus;
        } else {
            Vec u = A->mul(one_minus, q.section(bar[k]), one_minus);
            e = detail::lift_one(*A, u);
        }
        lifted.push_back(e);
        E = vec_add(E, e);
    }
    return lifted;
}

// Radical from a complete set of primitive orthogonal idempotents with split local corners.
// Works in any characteristic: x in e_v A e_w lies in rad iff x*y is nilpotent in e_v A e_v for all y.
inline Matrix radical_from_idempotents(const Algebra& A, const std::vector<Vec>& prim) {
    Field f = A.field();
    std::size_t n = A.dim();
    auto corner = [&](std::size_t v, std::size_t w) {
        std::vector<Vec> xs;
        for (std::size_t i = 0; i < n; ++i) xs.push_back(A.mul(prim[v], A.basis(i), prim[w]));
        return row_basis_of(xs, n, f);
    };
    // residue functional on each e_v A e_v: z - alpha(z) e_v is nilpotent
    std::vector<Matrix> cb(prim.size());
    std::vector<Vec> alpha(prim.size());
    for (std::size_t v = 0; v < prim.size(); ++v) {
        cb[v] = corner(v, v);
        for (std::size_t k = 0; k < cb[v].rows(); ++k) {
            Vec z = cb[v].row(k);
            auto root = detail::find_root(detail::corner_min_poly(A, prim[v], z), f);
            if (!root) fail(ErrorKind::NotSplit, "corner ring is not split local");
            Vec nz = vec_sub(z, scaled(prim[v], *root));
            Vec p = nz;
            for (std::size_t it = 0; it <= n && !is_zero_vec(p); ++it) p = A.mul(p, nz);
            if (!is_zero_vec(p)) fail(ErrorKind::NotSplit, "idempotent is not primitive");
            alpha[v].push_back(*root);
        }
    }
    auto residue = [&](std::size_t v, const Vec& z) {
        auto c = solve(cb[v].transpose(), Matrix::column(z, f));
        Scalar s(0, f);
        for (std::size_t k = 0; k < cb[v].rows(); ++k) s += (*c)(k, 0) * alpha[v][k];
        return s;
    };
    std::vector<Vec> rows;
    for (std::size_t v = 0; v < prim.size(); ++v)
        for (std::size_t w = 0; w < prim.size(); ++w) {
            Matrix X = corner(v, w), Y = corner(w, v);
            if (X.rows() == 0) continue;
            Matrix M(X.rows(), Y.rows(), f);
            for (std::size_t k = 0; k < X.rows(); ++k)
                for (std::size_t l = 0; l < Y.rows(); ++l) M(k, l) = residue(v, A.mul(X.row(k), Y.row(l)));
            Matrix K = Y.rows() ? left_kernel(M) : Matrix::identity(X.rows(), f);
            Matrix R = K * X;
            for (std::size_t r = 0; r < R.rows(); ++r) rows.push_back(R.row(r));
        }
    Matrix J = row_basis_of(rows, n, f);
    Matrix P = J;
    for (std::size_t k = 1; P.rows() > 0; ++k) {
        require(k <= n, ErrorKind::AuditFailed, "radical from idempotents is not nilpotent");
        P = product_span(A, P, J);
    }
    return J;
}

// Groups primitive idempotents: e ~ f iff eAf is not inside the radical.
inline IdempotentData classify_idempotents(const Algebra& A, const std::vector<Vec>& prim, const Matrix& J) {
    RowSpace rad(J.rows() ? J : Matrix(0, A.dim(), A.field()));
    IdempotentData d;
    d.prim = prim;
    d.cls.assign(prim.size(), 0);
    for (std::size_t v = 0; v < prim.size(); ++v) {
        bool found = false;
        for (std::size_t c = 0; c < d.rep.size() && !found; ++c) {
            const Vec& r = prim[d.rep[c]];
            for (std::size_t i = 0; i < A.dim(); ++i)
                if (!rad.contains(A.mul(prim[v], A.basis(i), r))) {
                    d.cls[v] = c;
                    found = true;
                    break;
                }
        }
        if (!found) {
            d.cls[v] = d.rep.size();
            d.rep.push_back(v);
        }
    }
    return d;
}

// Generators in corners e_v A e_w: connectors between isomorphic idempotents, radical generators
// modulo rad^2, then any corner pieces still missing.
struct GeneratorSet {
    std::vector<Vec> all;
    std::vector<Vec> radical;
};

inline GeneratorSet corner_generators(const Algebra& A, const IdempotentData& d, const Matrix& J) {
    Field f = A.field();
    RowSpace rad(J.rows() ? J : Matrix(0, A.dim(), A.field()));
    std::vector<Vec> gens;
    for (std::size_t v = 0; v < d.prim.size(); ++v) {
        std::size_t r = d.rep[d.cls[v]];
        if (r == v) continue;
        for (auto [a, b] : {std::pair{v, r}, std::pair{r, v}})
            for (std::size_t i = 0; i < A.dim(); ++i) {
                Vec x = A.mul(d.prim[a], A.basis(i), d.prim[b]);
                if (!rad.contains(x)) {
                    gens.push_back(x);
                    break;
                }
            }
    }
    Matrix J2 = product_span(A, J, J);
    std::vector<Vec> rad_gens;
    for (std::size_t v = 0; v < d.prim.size(); ++v)
        for (std::size_t w = 0; w < d.prim.size(); ++w) {
            std::vector<Vec> acc = J2.row_list();
            RowSpace cur(acc, A.dim(), f);
            for (std::size_t i = 0; i < J.rows(); ++i) {
                Vec x = A.mul(d.prim[v], J.row(i), d.prim[w]);
                if (is_zero_vec(x) || cur.contains(x)) continue;
                gens.push_back(x);
                rad_gens.push_back(x);
                acc.push_back(x);
                cur = RowSpace(acc, A.dim(), f);
            }
        }
    std::vector<Vec> all = d.prim;
    all.insert(all.end(), gens.begin(), gens.end());
    RowSpace sub = generated_subalgebra(A, all);
    for (std::size_t i = 0; i < A.dim() && sub.dim() < A.dim(); ++i)
        for (std::size_t v = 0; v < d.prim.size(); ++v)
            for (std::size_t w = 0; w < d.prim.size(); ++w) {
                Vec x = A.mul(d.prim[v], A.basis(i), d.prim[w]);
                if (is_zero_vec(x) || sub.contains(x)) continue;
                gens.push_back(x);
                all.push_back(x);
                sub = generated_subalgebra(A, all);
            }
    require(sub.dim() == A.dim(), ErrorKind::AuditFailed, "generating set does not generate");
    return {gens, rad_gens};
}

// Attaches idempotent and generator data. Known primitive idempotents may be supplied.
inline AlgebraPtr with_structure(Algebra a, std::optional<std::vector<Vec>> prims = std::nullopt) {
    auto tmp = make_algebra(a);
    Matrix J;
    std::vector<Vec> prim;
    if (prims) {
        prim = *prims;
        J = radical_from_idempotents(*tmp, prim);
    } else {
        J = radical(*tmp);
        try {
            prim = lift_idempotents(tmp);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotSplit) throw;
        }
    }
    if (prim.empty() && a.dim() > 0) {
        // no split data: the unit alone, all basis elements as generators
        IdempotentData d{{a.unit()}, {0}, {0}};
        std::vector<Vec> gens;
        for (std::size_t i = 0; i < a.dim(); ++i) gens.push_back(a.basis(i));
        a.set_structure(d, gens, J.row_list());
        return make_algebra(std::move(a));
    }
    IdempotentData d = classify_idempotents(*tmp, prim, J);
    auto g = corner_generators(*tmp, d, J);
    a.set_structure(d, g.all, J.row_list());
    return make_algebra(std::move(a));
}

inline AlgebraPtr opposite(const AlgebraPtr& A) {
    Algebra op = opposite_raw(*A);
    if (A->has_idempotents()) return make_algebra(std::move(op));
    return with_structure(std::move(op));
}

inline AlgebraPtr enveloping(const AlgebraPtr& a, const AlgebraPtr& b) {
    Algebra env = enveloping_raw(*a, *b);
    if (a->has_idempotents() && b->has_idempotents()) {
        std::vector<Vec> prim;
        for (const auto& eb : b->idempotents().prim)
            for (const auto& ea : a->idempotents().prim) prim.push_back(tensor_element(eb, ea));
        return with_structure(std::move(env), prim);
    }
    return with_structure(std::move(env));
}

// Quotient with idempotent data carried over from the source where available.
inline SurjectionData quotient_surjection(const AlgebraPtr& A, const Matrix& ideal_rows) {
    auto q = quotient_surjection_raw(A, ideal_rows);
    Algebra B = *q.target;
    std::optional<std::vector<Vec>> prims;
    if (A->has_idempotents()) {
        std::vector<Vec> p;
        for (const auto& e : A->idempotents().prim) {
            Vec img = q.apply(e);
            if (!is_zero_vec(img)) p.push_back(img);
        }
        prims = p;
    }
    q.target = with_structure(std::move(B), prims);
    return q;
}

} // namespace sphertwist
