#include <gtest/gtest.h>

#include "../oracles/naive.hpp"
#include "fixtures.hpp"

using namespace sphertwist;
using fx::v;

namespace {

ModulePtr simple_of(const AlgebraPtr& A, std::size_t c) { return simple_modules(A).at(c).module; }

bool all_intertwine(const ModulePtr& m, const ModulePtr& n) {
    for (const auto& F : hom_space(*m, *n))
        if (!ModuleHom{m, n, F}.is_intertwiner()) return false;
    return true;
}

std::vector<ModulePtr> battery(const AlgebraPtr& A) {
    std::vector<ModulePtr> out{regular_module(A)};
    for (auto& s : simple_modules(A)) out.push_back(s.module);
    for (auto& e : A->idempotents().prim) out.push_back(right_ideal(A, e).module);
    auto R = regular_module(A);
    out.push_back(top(R).module);
    out.push_back(submodule(R, module_radical(*R)).module);
    return out;
}

} // namespace

TEST(Modules, RegularActionValid) {
    for (auto A : {fx::dual_numbers(), fx::cyclic_nakayama(3), fx::a2_path()}) {
        auto R = regular_module(A);
        EXPECT_NO_THROW(R->check_action());
    }
}

TEST(Modules, BadActionRejected) {
    auto A = fx::dual_numbers();
    // x acting as identity violates x*x = 0
    std::vector<Matrix> act{Matrix::identity(1), Matrix::identity(1)};
    EXPECT_THROW(Module(A, 1, act, true), Error);
}

TEST(Modules, HomContainsIdentity) {
    auto A = fx::cyclic_nakayama(3);
    for (auto& m : battery(A)) {
        auto H = hom_space(*m, *m);
        std::vector<Vec> rows;
        for (auto& F : H) rows.push_back(F.raw());
        RowSpace S(rows, m->dim() * m->dim(), m->field());
        EXPECT_TRUE(S.contains(Matrix::identity(m->dim()).raw()));
    }
}

TEST(Modules, HomSimpleIntoDualNumbers) {
    auto A = fx::dual_numbers();
    auto H = hom_space(*simple_of(A, 0), *regular_module(A));
    ASSERT_EQ(H.size(), 1u);
    EXPECT_EQ(H[0], Matrix::from_ints({{0, 1}}));
}

TEST(Modules, SimplesOrthogonal) {
    auto A = fx::cyclic_nakayama(3);
    auto S = simple_modules(A);
    ASSERT_EQ(S.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(S[i].module->dim(), 1u);
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(hom_space(*S[i].module, *S[j].module).size(), i == j ? 1u : 0u);
    }
}

TEST(Modules, SimplesOfSmallAlgebras) {
    EXPECT_EQ(simple_modules(fx::dual_numbers()).size(), 1u);
    auto S = simple_modules(fx::a2_path());
    ASSERT_EQ(S.size(), 2u);
    EXPECT_EQ(S[0].module->dim(), 1u);
    EXPECT_EQ(S[1].module->dim(), 1u);
}

TEST(Modules, HomAgreesWithNaiveSolver) {
    for (auto A : {fx::dual_numbers(), fx::cyclic_nakayama(3), fx::a2_path(), fx::cyclic_nakayama(2, 3)}) {
        auto B = battery(A);
        for (auto& m : B)
            for (auto& n : B) {
                auto H = hom_space(*m, *n);
                auto N = oracle::naive_hom(*m, *n);
                EXPECT_EQ(H.size(), N.size());
                std::vector<Vec> a, b;
                for (auto& F : H) a.push_back(F.raw());
                for (auto& F : N) b.push_back(F.raw());
                RowSpace SA(a, m->dim() * n->dim(), m->field()), SB(b, m->dim() * n->dim(), m->field());
                EXPECT_TRUE(SA.contains(SB) && SB.contains(SA));
                EXPECT_TRUE(all_intertwine(m, n));
            }
    }
}

TEST(Modules, SocleAndRadicalOfDualNumbers) {
    auto A = fx::dual_numbers();
    auto R = regular_module(A);
    EXPECT_EQ(socle(*R), Matrix::from_ints({{0, 1}}));
    EXPECT_EQ(module_radical(*R), Matrix::from_ints({{0, 1}}));
    ModuleHom incl{submodule(R, socle(*R)).module, R, socle(*R)};
    auto c = cokernel_of(incl);
    EXPECT_EQ(c.module->dim(), 1u);
    EXPECT_TRUE(isomorphic_indecomposables(*c.module, *simple_of(A, 0)));
}

TEST(Modules, KernelOfIdentityIsZero) {
    auto R = regular_module(fx::cyclic_nakayama(3));
    EXPECT_EQ(kernel_of({R, R, Matrix::identity(R->dim())}).module->dim(), 0u);
}

TEST(Modules, RankNullity) {
    auto A = fx::cyclic_nakayama(3);
    auto B = battery(A);
    for (auto& m : B)
        for (auto& n : B)
            for (auto& F : hom_space(*m, *n)) {
                ModuleHom h{m, n, F};
                EXPECT_EQ(kernel_of(h).module->dim() + rank(F), m->dim());
                EXPECT_EQ(image_of(h).module->dim(), rank(F));
                EXPECT_EQ(cokernel_of(h).module->dim() + rank(F), n->dim());
            }
}

TEST(Modules, NotASubmodule) {
    auto R = regular_module(fx::dual_numbers());
    try {
        submodule(R, Matrix::from_ints({{1, 0}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotASubmodule);
    }
}

TEST(Modules, AlgebraMismatch) {
    auto a = regular_module(fx::dual_numbers());
    auto b = regular_module(fx::a2_path());
    try {
        hom_space(*a, *b);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::AlgebraMismatch);
    }
}

TEST(Modules, ProjectiveCovers) {
    auto A = fx::dual_numbers();
    auto c = projective_cover(simple_of(A, 0));
    EXPECT_EQ(c.P.module->dim(), 2u);
    auto K = kernel_of({c.P.module, simple_of(A, 0), c.map});
    EXPECT_EQ(K.inclusion, Matrix::from_ints({{0, 1}}));

    auto N = fx::cyclic_nakayama(3);
    auto c1 = projective_cover(simple_of(N, 0));
    EXPECT_EQ(c1.P.module->dim(), 2u);
    auto R = regular_module(N);
    EXPECT_EQ(projective_cover(R).P.module->dim(), R->dim());
    EXPECT_TRUE(is_projective(R));
    EXPECT_FALSE(is_projective(simple_of(N, 1)));
}

TEST(Modules, CoverKernelInRadical) {
    for (auto A : {fx::cyclic_nakayama(3), fx::a2_path(), fx::cyclic_nakayama(2, 3)})
        for (auto& m : battery(A)) {
            auto c = projective_cover(m);
            auto K = kernel_of({c.P.module, m, c.map});
            RowSpace rad(module_radical(*c.P.module));
            EXPECT_TRUE(rad.contains(RowSpace(K.inclusion)));
            auto s = top(m).module->dim();
            EXPECT_EQ(c.P.summands(), s);
        }
}

TEST(Modules, InAddExamples) {
    auto A = fx::dual_numbers();
    auto R = regular_module(A);
    auto S = simple_of(A, 0);
    EXPECT_TRUE(in_add(*S, *S));
    EXPECT_FALSE(in_add(*S, *R));
    EXPECT_TRUE(in_add(*direct_sum({R, R}), *R));
    EXPECT_TRUE(in_add(*S, *direct_sum({R, S})));
}

TEST(Modules, InAddAgreesWithSearch) {
    for (auto A : {fx::dual_numbers(), fx::cyclic_nakayama(3), fx::a2_path()}) {
        auto B = battery(A);
        for (auto& m : B)
            for (auto& n : B) {
                if (m->dim() > 8 || n->dim() > 8) continue;
                EXPECT_EQ(in_add(*m, *n), oracle::add_by_search(m, n));
            }
    }
}

TEST(Modules, StripProjectives) {
    auto N = fx::cyclic_nakayama(3);
    auto m = direct_sum({regular_module(N), simple_of(N, 0), simple_of(N, 2)});
    auto s = strip_projectives(m);
    EXPECT_EQ(s.idem.size(), 3u);
    EXPECT_EQ(s.complement.module->dim(), 2u);
    EXPECT_TRUE(in_add(*s.complement.module, *direct_sum({simple_of(N, 0), simple_of(N, 2)})));
    EXPECT_FALSE(is_projective(s.complement.module));
}

TEST(Modules, GeneratorActions) {
    auto N = fx::cyclic_nakayama(3);
    auto R = regular_module(N);
    std::vector<Matrix> g;
    for (auto& x : N->generating_set()) g.push_back(R->act(x));
    auto M = module_from_generator_actions(N, R->dim(), g);
    EXPECT_EQ(M->actions(), R->actions());
}

TEST(Modules, DualIsOppositeModule) {
    auto N = fx::cyclic_nakayama(3);
    auto op = opposite(N);
    auto D = dual_module(*regular_module(N), op);
    EXPECT_NO_THROW(D->check_action());
}
