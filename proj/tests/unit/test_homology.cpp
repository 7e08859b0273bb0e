#include <gtest/gtest.h>

#include <sphertwist/homology.hpp>

#include "fixtures.hpp"

using namespace sphertwist;

namespace {

VecComplex two_term(const Matrix& d) { return VecComplex{d.field(), 0, {d.rows(), d.cols()}, {d}}; }

ModulePtr left_regular_quotient(const SurjectionData& p) { return quotient_as_AB(p)->as_left_module(opposite(p.source)); }

} // namespace

TEST(Complex, ConeOfIdentityIsAcyclic) {
    Field f = Field::rational();
    auto c = two_term(Matrix::from_ints({{1, 2}, {0, 0}}, f));
    VecChainMap id{0, {Matrix::identity(2, f), Matrix::identity(2, f)}};
    EXPECT_EQ(cone(id, c, c).total_cohomology(), 0u);
}

TEST(Complex, ShiftByZeroAndTwo) {
    auto c = two_term(Matrix::from_ints({{1, 0}}, Field::rational()));
    auto s = shift(c, 0);
    EXPECT_EQ(s.lo, c.lo);
    EXPECT_EQ(s.d[0], c.d[0]);
    auto s2 = shift(c, 2);
    EXPECT_EQ(s2.lo, -2);
    EXPECT_EQ(s2.cohomology_dims(-2, -1), c.cohomology_dims(0, 1));
}

TEST(Complex, ConeOfMultiplicationByX) {
    auto A = fx::dual_numbers();
    Field f = A->field();
    VecComplex a{f, 0, {2}, {}};
    VecChainMap x{0, {A->right(1)}};
    auto c = cone(x, a, a);
    EXPECT_EQ(c.cohomology_dims(-1, 0), (std::vector<std::size_t>{1, 1}));
}

TEST(Complex, BadDifferentialRejected) {
    Field f = Field::rational();
    VecComplex c{f, 0, {1, 1, 1}, {Matrix::from_ints({{1}}, f), Matrix::from_ints({{1}}, f)}};
    EXPECT_THROW(c.check(), Error);
}

TEST(Ext, DualNumbersSimple) {
    auto A = fx::dual_numbers();
    auto S = fx::simple(A, 0);
    auto p = ext_dims(S, S, 4);
    EXPECT_EQ(p.dims, (std::vector<std::size_t>{1, 1, 1, 1}));
    EXPECT_TRUE(p.complete);
}

TEST(Ext, AgreesWithStableHomOfSyzygies) {
    for (auto A : {fx::dual_numbers(), fx::cyclic_nakayama(3), fx::cyclic_nakayama(3, 3)}) {
        auto op = opposite(A);
        auto simples = simple_modules(A);
        for (auto& m : simples)
            for (auto& n : simples) {
                auto p = ext_dims(m.module, n.module, 4);
                ModulePtr om = m.module;
                for (std::size_t i = 1; i < 4; ++i) {
                    om = strip(syzygy(om));
                    EXPECT_EQ(p.dims[i], stable_hom(om, n.module, op).stable_dim());
                }
                EXPECT_EQ(p.dims[0], hom_space(*m.module, *n.module).size());
            }
    }
}

TEST(Tor, BalancedOnLambdaCon) {
    for (auto c : {fx::ctx1(), fx::ctx3(), fx::ctx3b()}) {
        auto R = lambda_con_module(c);
        auto L = left_regular_quotient(c.pi);
        auto a = tor_dims(R, L, 5, true);
        auto b = tor_dims(R, L, 5, false);
        EXPECT_EQ(a.dims, b.dims);
        EXPECT_EQ(a.dims[0], c.Lambda_con()->dim());
    }
}

TEST(Bimodule, ResolutionOfQuotientAudits) {
    for (auto c : {fx::ctx1(), fx::ctx3b()}) {
        auto Q = bimodule_resolution(quotient_as_AB(c.pi), 12);
        EXPECT_FALSE(Q.truncated);
        EXPECT_TRUE(audit_bimodule_resolution(Q));
        for (auto& q : Q.terms) EXPECT_NO_THROW(q.module->check());
    }
}

TEST(Cotwist, Ctx1) {
    auto c = fx::ctx1();
    auto d = cotwist_data(c.pi, 12);
    EXPECT_EQ(d.tor_dims, (std::vector<std::size_t>{1, 0, 1}));
    ASSERT_TRUE(d.t.has_value());
    EXPECT_EQ(*d.t, 2u);
    EXPECT_EQ(*d.shift, -3);
    ASSERT_TRUE(d.cone_degree.has_value());
    EXPECT_EQ(*d.cone_degree, -3);
    EXPECT_TRUE(d.right_projective);
    EXPECT_TRUE(d.left_projective);
}

TEST(Cotwist, Ctx3Permutation) {
    auto c = fx::ctx3();
    auto d = cotwist_data(c.pi, 12);
    ASSERT_TRUE(d.t.has_value());
    EXPECT_EQ(*d.t, 2u);
    EXPECT_EQ(d.tor_dims, (std::vector<std::size_t>{3, 0, 3}));
    EXPECT_TRUE(d.right_projective && d.left_projective);
    std::vector<std::size_t> sorted = d.permutation;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, (std::vector<std::size_t>{0, 1, 2}));
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NE(d.permutation[i], i);
}

TEST(Cotwist, Ctx3bAtFour) {
    auto c = fx::ctx3b();
    auto d = cotwist_data(c.pi, 12);
    ASSERT_TRUE(d.t.has_value());
    EXPECT_EQ(*d.t, 4u);
    EXPECT_EQ(*d.cone_degree, -5);
    EXPECT_THROW(tor_bimodule(c.pi, 2, 12), Error);
}
