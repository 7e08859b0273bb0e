#pragma once

// Test-only reference implementations. They avoid the idempotent-block machinery of the library.

#include <random>

#include <sphertwist/resolutions.hpp>

namespace oracle {

using namespace sphertwist;

// Hom(m, n) as the null space of the full intertwiner system over every basis element.
inline std::vector<Matrix> naive_hom(const Module& m, const Module& n) {
    std::size_t a = m.dim(), b = n.dim();
    Field f = m.field();
    if (a == 0 || b == 0) return {};
    std::vector<Vec> eqs;
    for (std::size_t t = 0; t < m.algebra()->dim(); ++t) {
        const Matrix& M = m.action(t);
        const Matrix& N = n.action(t);
        // (M F - F N)_{ij} = sum_k M_ik F_kj - sum_k F_ik N_kj; unknown F_kj at index k*b+j
        for (std::size_t i = 0; i < a; ++i)
            for (std::size_t j = 0; j < b; ++j) {
                Vec row = zero_vec(a * b, f);
                for (std::size_t k = 0; k < a; ++k) row[k * b + j] += M(i, k);
                for (std::size_t k = 0; k < b; ++k) row[i * b + k] -= N(k, j);
                if (!is_zero_vec(row)) eqs.push_back(row);
            }
    }
    Matrix K = eqs.empty() ? Matrix::identity(a * b, f) : kernel_basis(Matrix::from_rows(eqs, a * b, f)).transpose();
    std::vector<Matrix> out;
    for (std::size_t r = 0; r < K.rows(); ++r) {
        Matrix F(a, b, f);
        F.raw() = K.row(r);
        out.push_back(F);
    }
    return out;
}

// Is m a summand of n^k for some k <= dim m?  Searches random split monomorphisms m -> n^k and
// solves the linear system for a retraction.
inline bool add_by_search(const ModulePtr& m, const ModulePtr& n, int tries = 24) {
    if (m->dim() == 0) return true;
    if (n->dim() == 0) return false;
    Field f = m->field();
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (std::size_t k = 1; k <= m->dim(); ++k) {
        auto nk = direct_power(n, k);
        auto F = naive_hom(*m, *nk);
        auto G = naive_hom(*nk, *m);
        if (F.empty() || G.empty()) continue;
        for (int t = 0; t < tries; ++t) {
            Matrix f0(m->dim(), nk->dim(), f);
            for (const auto& B : F) f0 = f0 + Scalar(coef(rng), f) * B;
            // unknown coefficients c_j with f0 * (sum c_j G_j) = I
            std::vector<Vec> cols;
            for (const auto& B : G) cols.push_back((f0 * B).raw());
            Matrix A = Matrix::from_rows(cols, m->dim() * m->dim(), f).transpose();
            Matrix I = Matrix::identity(m->dim(), f);
            if (solve(A, Matrix::column(I.raw(), f))) return true;
        }
    }
    return false;
}

// radd0 as the intersection of all maximal submodules containing m e0 Lambda: kernels of every map
// to a simple Lambda_con-module, the simples taken as tops over Lambda_con itself.
inline Matrix radd0_by_maximal_submodules(const FrobeniusContext& ctx, const ModulePtr& m) {
    const auto& C = ctx.Lambda_con();
    Field f = m->field();
    Matrix J = radical(*C);
    std::vector<Vec> rows;
    if (m->dim() == 0) return Matrix(0, 0, f);
    Matrix stacked(m->dim(), 0, f);
    for (const auto& e : C->idempotents().prim) {
        auto P = regular_module(C);
        // e C / e J
        Matrix eC = row_basis(C->left_mult(e));
        Matrix eJ = row_basis(product_span(*C, Matrix::row_matrix(e, f), J));
        auto sub = submodule(P, eC).module;
        std::vector<Vec> inside;
        RowSpace eCs(eC);
        for (std::size_t r = 0; r < eJ.rows(); ++r) inside.push_back(*eCs.coords(eJ.row(r)));
        auto S = quotient(sub, row_basis_of(inside, sub->dim(), f)).module;
        auto SL = restrict_scalars(S, ctx.pi);
        for (const auto& F : naive_hom(*m, *SL)) stacked = Matrix::hstack(stacked, F);
    }
    if (stacked.cols() == 0) return Matrix::identity(m->dim(), f);
    return left_kernel(stacked);
}

} // namespace oracle
