#include <gtest/gtest.h>

#include "beckdiff/hom_enumeration.hpp"

using namespace beckdiff;

namespace {

AlgebraPtr algebra(ScalarKind base, VarList gens, const std::vector<std::string>& rels) {
    AlgebraPresentation p;
    p.base = base;
    p.generators = gens;
    VarListPtr vars = make_vars(gens);
    for (const auto& r : rels) p.relations.push_back(parse_poly(r, vars, base));
    return validate_presentation(std::move(p));
}

/* Independent oracle: count unital structure-preserving maps between two
 * tables by exhausting all |D|^|B| functions. Tiny inputs only. */
std::size_t table_hom_count_oracle(const FiniteRingTable& B, const FiniteRingTable& D) {
    std::size_t n = B.size(), m = D.size();
    std::vector<std::size_t> f(n, 0);
    std::size_t count = 0;
    while (true) {
        bool ok = f[B.one()] == D.one();
        for (std::size_t a = 0; a < n && ok; ++a)
            for (std::size_t b = 0; b < n && ok; ++b) {
                if (f[B.add(a, b)] != D.add(f[a], f[b])) ok = false;
                if (f[B.mul(a, b)] != D.mul(f[a], f[b])) ok = false;
            }
        if (ok && B.base().kind == BaseKind::Fp) {
            for (std::size_t r = 0; r < B.base().p && ok; ++r)
                if (f[B.scalar_images()[r]] != D.scalar_images()[r]) ok = false;
        }
        if (ok) ++count;
        std::size_t i = n;
        bool done = true;
        while (i > 0) {
            --i;
            if (++f[i] < m) {
                done = false;
                break;
            }
            f[i] = 0;
        }
        if (done) break;
    }
    return count;
}

}  // namespace

TEST(EnumerateHoms, F2X2IntoF2) {
    ScalarKind f2 = ScalarKind::prime_field(2);
    auto B = algebra(f2, {"x"}, {"x^2"});
    auto D = to_finite_table(algebra(f2, {}, {}));
    HomSet H = enumerate_homs(B, D);
    ASSERT_EQ(H.size(), 1u);                     // x -> 0 only; 1^2 = 1 != 0
    EXPECT_EQ(H.images[0], (std::vector<std::size_t>{D->zero()}));
}

TEST(EnumerateHoms, BaseOnlyDomainIsInitial) {
    ScalarKind f3 = ScalarKind::prime_field(3);
    auto B = algebra(f3, {}, {});
    auto D = to_finite_table(algebra(f3, {"x"}, {"x^2"}));
    HomSet H = enumerate_homs(B, D);
    EXPECT_EQ(H.size(), 1u);
    EXPECT_TRUE(H.images[0].empty());
}

TEST(EnumerateHoms, SplitQuadraticHasTwoPoints) {
    ScalarKind f2 = ScalarKind::prime_field(2);
    auto B = algebra(f2, {"x"}, {"x^2 + x"});
    auto D = to_finite_table(algebra(f2, {}, {}));
    HomSet H = enumerate_homs(B, D);
    ASSERT_EQ(H.size(), 2u);
    EXPECT_EQ(H.images[0], (std::vector<std::size_t>{0}));
    EXPECT_EQ(H.images[1], (std::vector<std::size_t>{1}));
}

TEST(EnumerateHoms, ZDomainIntoAnyTable) {
    auto Z = algebra(ScalarKind::integers(), {}, {});
    for (std::size_t n : {2u, 4u, 6u}) {
        HomSet H = enumerate_homs(Z, make_zmod_table(n));
        EXPECT_EQ(H.size(), 1u);
    }
    // Z[x]/(x^2 - 1) into Z/4: solutions of a^2 = 1
    auto B = algebra(ScalarKind::integers(), {"x"}, {"x^2 - 1"});
    HomSet H = enumerate_homs(B, make_zmod_table(4));
    ASSERT_EQ(H.size(), 2u);
    EXPECT_EQ(H.images[0], (std::vector<std::size_t>{1}));
    EXPECT_EQ(H.images[1], (std::vector<std::size_t>{3}));
}

TEST(EnumerateHoms, CountsMatchTableLevelOracle) {
    ScalarKind f2 = ScalarKind::prime_field(2);
    struct Case {
        std::vector<std::string> rels_dom;
        std::vector<std::string> rels_cod;
    };
    std::vector<Case> cases = {
        {{"x^2"}, {"x^2"}},
        {{"x^2"}, {"x^2 + x"}},
        {{"x^2 + x"}, {"x^2"}},
        {{"x^2 + x + 1"}, {"x^2"}},
        {{"x^2 + x + 1"}, {"x^2 + x + 1"}},
    };
    for (const auto& c : cases) {
        auto B = algebra(f2, {"x"}, c.rels_dom);
        auto Bt = to_finite_table(B);
        auto Dt = to_finite_table(algebra(f2, {"x"}, c.rels_cod));
        HomSet H = enumerate_homs(B, Dt);
        EXPECT_EQ(H.size(), table_hom_count_oracle(*Bt, *Dt))
            << c.rels_dom[0] << " -> " << c.rels_cod[0];
    }
}

TEST(EnumerateHoms, CompositionLandsInHomSet) {
    ScalarKind f2 = ScalarKind::prime_field(2);
    auto B = algebra(f2, {"x"}, {"x^4 + x"});  // separable, several points
    auto E = to_finite_table(algebra(f2, {"t"}, {"t^2"}));
    auto C = to_finite_table(algebra(f2, {}, {}));
    // q : E -> C kills t (reduce mod t); build via generator evaluation
    std::vector<std::size_t> qmap(E->size());
    // E basis [1, t]: index = c0 + 2*c1 -> c0
    for (std::size_t c1 = 0; c1 < 2; ++c1)
        for (std::size_t c0 = 0; c0 < 2; ++c0) qmap[c0 + 2 * c1] = c0;
    TableHom q = verify_table_hom(E, C, qmap);
    HomSet HE = enumerate_homs(B, E);
    HomSet HC = enumerate_homs(B, C);
    for (const auto& img : HE.images) {
        EXPECT_TRUE(HC.find(compose(q, img)).has_value());
    }
}

TEST(EnumerateHoms, ResourceLimitRespected) {
    Limits lim;
    lim.max_homs = 10;
    auto B = algebra(ScalarKind::integers(), {"x", "y"}, {});
    try {
        enumerate_homs(B, make_zmod_table(4), lim);  // 16 assignments > 10
        FAIL() << "expected ResourceLimit";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ResourceLimit);
    }
}

TEST(EnumerateHoms, MixedBasesRejected) {
    auto B = algebra(ScalarKind::prime_field(3), {"x"}, {"x^2"});
    try {
        enumerate_homs(B, make_zmod_table(3));  // table over Z, domain over F3
        FAIL() << "expected MixedContext";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MixedContext);
    }
}
