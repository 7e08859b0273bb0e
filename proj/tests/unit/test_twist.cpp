#include <gtest/gtest.h>

#include <sphertwist/twist.hpp>

#include "fixtures.hpp"

using namespace sphertwist;

namespace {

SurjectionData identity_of(const AlgebraPtr& A) { return quotient_surjection(A, Matrix(0, A->dim(), A->field())); }

SurjectionData to_top(const AlgebraPtr& A) { return quotient_surjection(A, radical(*A)); }

std::vector<ModulePtr> battery(const AlgebraPtr& L) {
    std::vector<ModulePtr> out{regular_module(L)};
    for (auto& s : simple_modules(L)) out.push_back(s.module);
    for (auto& e : L->idempotents().prim) out.push_back(right_ideal(L, e).module);
    return out;
}

} // namespace

TEST(Twist, IdentityGivesZero) {
    auto A = fx::dual_numbers();
    auto T = twist_apply(identity_of(A), stalk(regular_module(A)), 8);
    for (auto d : T.cohomology) EXPECT_EQ(d, 0u);
    auto tr = twist_triangle_check(identity_of(A), stalk(regular_module(A)), 8);
    EXPECT_TRUE(tr.ok());
    for (auto d : tr.cone_dims) EXPECT_EQ(d, 0u);
}

TEST(Twist, DualNumbersToFieldIsTruncated) {
    auto A = fx::dual_numbers();
    auto T = twist_apply(to_top(A), stalk(regular_module(A)), 6);
    EXPECT_TRUE(T.truncated);
    EXPECT_FALSE(equivalence_certificate(to_top(A), 6).verdict);
}

TEST(Twist, TriangleOnBatteries) {
    for (auto c : {fx::ctx1(), fx::ctx3b()}) {
        for (auto& m : battery(c.Lambda)) {
            auto r = twist_triangle_check(c.pi, stalk(m), 12);
            EXPECT_FALSE(r.truncated);
            EXPECT_TRUE(r.ok());
        }
    }
}

TEST(Twist, TriangleForUpperTriangular) {
    auto A = fx::a2_path();
    auto p = to_top(A);
    for (auto& m : battery(A)) {
        auto r = twist_triangle_check(p, stalk(m), 8);
        EXPECT_FALSE(r.truncated);
        EXPECT_TRUE(r.ok());
    }
}

TEST(Twist, EulerCharacteristic) {
    auto c = fx::ctx1();
    for (auto& m : battery(c.Lambda)) {
        auto T = twist_apply(c.pi, stalk(m), 12);
        long chi_terms = 0, chi_coh = 0;
        auto v = T.complex.vec();
        for (int n = v.lo; n <= v.hi(); ++n) {
            long s = (n % 2 == 0) ? 1 : -1;
            chi_terms += s * static_cast<long>(v.dim_at(n));
            chi_coh += s * static_cast<long>(v.cohomology_dim(n));
        }
        EXPECT_EQ(chi_terms, chi_coh);
    }
}

TEST(Certificate, Ctx1) {
    auto c = fx::ctx1();
    auto cert = equivalence_certificate(c.pi, 12);
    EXPECT_TRUE(cert.perfect);
    EXPECT_EQ(cert.endo_dim, c.Lambda->dim());
    EXPECT_TRUE(cert.off_shift_zero);
    EXPECT_TRUE(cert.unit_map_bijective);
    EXPECT_TRUE(cert.verdict);
}

TEST(Certificate, Ctx3) {
    auto c = fx::ctx3();
    auto cert = equivalence_certificate(c.pi, 12);
    EXPECT_TRUE(cert.verdict);
    EXPECT_EQ(cert.endo_dim, 15u);
}
