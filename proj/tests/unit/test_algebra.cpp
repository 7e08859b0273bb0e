#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace sphertwist;
using fx::v;

TEST(Algebra, BaseField) {
    auto k = with_structure(from_structure_constants(Field::rational(), {"1"}, {{v({1})}}, v({1})));
    EXPECT_EQ(k->dim(), 1u);
    EXPECT_EQ(radical(*k).rows(), 0u);
    EXPECT_EQ(lift_idempotents(k).size(), 1u);
}

TEST(Algebra, DualNumbers) {
    auto a = fx::dual_numbers();
    EXPECT_EQ(a->dim(), 2u);
    Matrix J = radical(*a);
    ASSERT_EQ(J.rows(), 1u);
    EXPECT_EQ(J.row(0), v({0, 1}));
    auto e = lift_idempotents(a);
    ASSERT_EQ(e.size(), 1u);
    EXPECT_EQ(e[0], a->unit());
}

TEST(Algebra, NonAssociativeRejected) {
    // basis (1, x, y) with x*y = x, y*x = 0, y*y = y, x*x = 0 is associative; break it
    std::vector<std::vector<Vec>> m(3, std::vector<Vec>(3, v({0, 0, 0})));
    m[0] = {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1})};
    m[1][0] = v({0, 1, 0});
    m[2][0] = v({0, 0, 1});
    m[1][1] = v({0, 0, 1});
    m[1][2] = v({0, 1, 0});
    try {
        from_structure_constants(Field::rational(), {"1", "x", "y"}, m, v({1, 0, 0}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonAssociative);
    }
}

TEST(Algebra, BadUnitRejected) {
    std::vector<std::vector<Vec>> m = {{v({1, 0}), v({0, 1})}, {v({0, 1}), v({0, 0})}};
    try {
        from_structure_constants(Field::rational(), {"1", "x"}, m, v({0, 1}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BadUnit);
    }
}

TEST(Quiver, SingleVertex) {
    QuiverSpec q;
    q.vertices = {"1"};
    auto a = from_quiver(q, Field::rational());
    EXPECT_EQ(a->dim(), 1u);
}

TEST(Quiver, CyclicNakayama) {
    auto a = fx::cyclic_nakayama(3);
    EXPECT_EQ(a->dim(), 6u);
    EXPECT_EQ(a->idempotents().prim.size(), 3u);
    EXPECT_EQ(a->idempotents().classes(), 3u);
    EXPECT_EQ(radical(*a).rows(), 3u);
    EXPECT_EQ(nilpotency_index(*a, radical(*a)), 2u);
}

TEST(Quiver, UpperTriangular) {
    auto a = fx::a2_path();
    EXPECT_EQ(a->dim(), 3u);
    Matrix J = radical(*a);
    ASSERT_EQ(J.rows(), 1u);
    EXPECT_EQ(a->labels()[2], "a");
    EXPECT_EQ(J.row(0), v({0, 0, 1}));
}

TEST(Quiver, InfiniteDimensionalDetected) {
    QuiverSpec q;
    q.vertices = {"1"};
    q.arrows = {{"x", 0, 0}};
    q.length_cap = 10;
    try {
        from_quiver(q, Field::rational());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InfiniteDimensional);
    }
}

TEST(Quiver, CommutativityRelation) {
    // square 1->2->4, 1->3->4 with ab = cd: dim 4 + 4 + 1
    QuiverSpec q;
    q.vertices = {"1", "2", "3", "4"};
    q.arrows = {{"a", 0, 1}, {"b", 1, 3}, {"c", 0, 2}, {"d", 2, 3}};
    q.relations = {{{Scalar(1), {0, 1}}, {Scalar(-1), {2, 3}}}};
    auto a = from_quiver(q, Field::rational());
    EXPECT_EQ(a->dim(), 9u);
}

TEST(Quiver, MalformedRelationRejected) {
    QuiverSpec q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}, {"b", 1, 0}};
    q.relations = {{{Scalar(1), {0, 1}}, {Scalar(1), {1, 0}}}};
    try {
        from_quiver(q, Field::rational());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MalformedRelation);
    }
}

// The hand-written 6-dimensional table for the cyclic Nakayama algebra on 3 vertices,
// basis (e1, e2, e3, a1, a2, a3), a_i: i -> i+1.
static AlgebraPtr n3_by_hand() {
    auto u = [](std::size_t i) { return fx::v({i == 0, i == 1, i == 2, i == 3, i == 4, i == 5}); };
    std::vector<std::vector<Vec>> m(6, std::vector<Vec>(6, fx::v({0, 0, 0, 0, 0, 0})));
    for (std::size_t i = 0; i < 3; ++i) {
        m[i][i] = u(i);
        m[i][3 + i] = u(3 + i);                 // e_i a_i = a_i
        m[3 + i][(i + 1) % 3] = u(3 + i);       // a_i e_{i+1} = a_i
    }
    return with_structure(from_structure_constants(Field::rational(), {"e1", "e2", "e3", "a1", "a2", "a3"}, m, fx::v({1, 1, 1, 0, 0, 0})));
}

TEST(Quiver, AgreesWithHandTable) {
    auto q = fx::cyclic_nakayama(3);
    auto h = n3_by_hand();
    // the quiver basis is (e1,e2,e3,a1,a2,a3) in the same order
    EXPECT_EQ(q->mult_table(), h->mult_table());
}

TEST(Radical, ElementsAreNilpotentAndIdealAudited) {
    for (auto a : {fx::dual_numbers(), fx::cyclic_nakayama(3), fx::a2_path(), fx::cyclic_nakayama(4, 3)}) {
        Matrix J = radical(*a);
        EXPECT_LE(nilpotency_index(*a, J), a->dim());
        EXPECT_NO_THROW(quotient_surjection(a, J));
    }
}

TEST(Quotient, Examples) {
    auto a = fx::dual_numbers();
    auto id = quotient_surjection(a, Matrix(0, 2));
    EXPECT_EQ(id.target->dim(), 2u);
    EXPECT_EQ(id.kernel.rows(), 0u);
    auto q = quotient_surjection(a, radical(*a));
    EXPECT_EQ(q.target->dim(), 1u);
    EXPECT_EQ(q.kernel.rows(), 1u);
    auto u = fx::a2_path();
    auto d = quotient_surjection(u, radical(*u));
    EXPECT_EQ(d.target->dim(), 2u);
    EXPECT_EQ(d.target->idempotents().prim.size(), 2u);
    EXPECT_EQ(radical(*d.target).rows(), 0u);
}

TEST(Quotient, NotAnIdealRejected) {
    auto u = fx::a2_path();
    try {
        quotient_surjection(u, Matrix::row_matrix(fx::v({1, 0, 0}), Field::rational()));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotAnIdeal);
    }
}

TEST(Quotient, DimensionBookkeeping) {
    auto a = fx::cyclic_nakayama(3);
    Matrix J = radical(*a);
    auto q = quotient_surjection(a, J);
    EXPECT_EQ(a->dim(), q.target->dim() + rank(q.kernel));
    // p is an algebra map
    for (std::size_t i = 0; i < a->dim(); ++i)
        for (std::size_t j = 0; j < a->dim(); ++j)
            EXPECT_EQ(q.apply(a->mul(a->basis(i), a->basis(j))), q.target->mul(q.apply(a->basis(i)), q.apply(a->basis(j))));
    EXPECT_EQ(q.apply(a->unit()), q.target->unit());
}

TEST(Opposite, CommutativeIsIdentical) {
    auto a = fx::dual_numbers();
    EXPECT_EQ(opposite(a)->mult_table(), a->mult_table());
}

TEST(Enveloping, Examples) {
    auto k = with_structure(from_structure_constants(Field::rational(), {"1"}, {{v({1})}}, v({1})));
    EXPECT_EQ(enveloping(k, k)->dim(), 1u);
    auto a = fx::dual_numbers();
    auto e = enveloping(a, a);
    EXPECT_EQ(e->dim(), 4u);
}

TEST(LiftIdempotents, Examples) {
    auto n3 = fx::cyclic_nakayama(3);
    // forget the quiver idempotents and recover them
    Algebra bare(n3->field(), n3->labels(), n3->mult_table(), n3->unit());
    auto lifted = lift_idempotents(make_algebra(bare));
    ASSERT_EQ(lifted.size(), 3u);
    Vec sum = n3->zero();
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(n3->mul(lifted[i], lifted[i]), lifted[i]);
        for (std::size_t j = 0; j < 3; ++j)
            if (i != j) EXPECT_TRUE(is_zero_vec(n3->mul(lifted[i], lifted[j])));
        sum = vec_add(sum, lifted[i]);
    }
    EXPECT_EQ(sum, n3->unit());
}

TEST(LiftIdempotents, MatrixAlgebra) {
    // M_2(k): basis E11, E12, E21, E22
    auto u = [](int i) { return fx::v({i == 0, i == 1, i == 2, i == 3}); };
    auto z = fx::v({0, 0, 0, 0});
    std::vector<std::vector<Vec>> m(4, std::vector<Vec>(4, z));
    // E_ab E_cd = delta_bc E_ad ; index(a,b) = 2a+b
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int d = 0; d < 2; ++d) m[2 * a + b][2 * b + d] = u(2 * a + d);
    auto M = with_structure(from_structure_constants(Field::rational(), {"E11", "E12", "E21", "E22"}, m, fx::v({1, 0, 0, 1})));
    EXPECT_EQ(M->idempotents().prim.size(), 2u);
    EXPECT_EQ(M->idempotents().classes(), 1u);
    EXPECT_EQ(generated_subalgebra(*M, M->generating_set()).dim(), 4u);
}

TEST(LiftIdempotents, NotSplitOverRationals) {
    // Q(i) = Q[x]/(x^2+1) is a field that is not split
    std::vector<std::vector<Vec>> m = {{v({1, 0}), v({0, 1})}, {v({0, 1}), v({-1, 0})}};
    auto a = make_algebra(from_structure_constants(Field::rational(), {"1", "i"}, m, v({1, 0})));
    try {
        lift_idempotents(a);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotSplit);
    }
}

TEST(Radical, UnsupportedCharacteristic) {
    auto a = fx::cyclic_nakayama(3, 2, Field::prime(5));
    try {
        radical(*a);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnsupportedCharacteristic);
    }
}
