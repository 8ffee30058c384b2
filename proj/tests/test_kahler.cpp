#include <gtest/gtest.h>

#include <random>

#include "beckdiff/kahler.hpp"
#include "support/builders.hpp"

using namespace beckdiff;
using testkit::algebra;

namespace {
const ScalarKind kQ = ScalarKind::rationals();
const ScalarKind kF2 = ScalarKind::prime_field(2);
const ScalarKind kF3 = ScalarKind::prime_field(3);
const ScalarKind kF5 = ScalarKind::prime_field(5);

Polynomial random_poly(std::mt19937& rng, VarListPtr vars, ScalarKind base) {
    std::uniform_int_distribution<std::uint32_t> de(0, 3);
    std::uniform_int_distribution<long> dc(-4, 4);
    Polynomial p = Polynomial::zero(vars, base);
    for (int t = 0; t < 3; ++t) {
        std::vector<std::uint32_t> exps(vars->size());
        for (auto& e : exps) e = de(rng);
        p = p + Polynomial::term(vars, Monomial(exps), Scalar::of_int(base, dc(rng)));
    }
    return p;
}
}  // namespace

TEST(Kahler, QModXSquaredIsNonzero) {
    KahlerModule omega = kahler(algebra(kQ, {"x"}, {"x^2"}));
    EXPECT_EQ(omega.presentation().generators, (std::vector<std::string>{"dx"}));
    ASSERT_EQ(omega.presentation().relations.size(), 1u);
    EXPECT_EQ(omega.presentation().relations[0].coord(0),
              parse_poly("2*x", omega.algebra()->vars_ptr(), kQ));
    EXPECT_FALSE(omega.is_zero());
}

TEST(Kahler, BaseOnlyIsZero) {
    KahlerModule omega = kahler(algebra(kQ, {}, {}));
    EXPECT_TRUE(omega.presentation().generators.empty());
    EXPECT_TRUE(omega.is_zero());
}

TEST(Kahler, F5SeparableQuadraticIsZero) {
    KahlerModule omega = kahler(algebra(kF5, {"x"}, {"x^2 - 2"}));
    EXPECT_TRUE(omega.is_zero());
    EXPECT_TRUE(verify_zero_certificate(omega.presentation(), omega.zero_certificate()));
}

TEST(Kahler, DerivationKillsScalars) {
    KahlerModule omega = kahler(algebra(kQ, {"x", "y"}, {"x^2", "y^3"}));
    VarListPtr vars = omega.algebra()->vars_ptr();
    for (long c : {-3L, 0L, 7L}) {
        Polynomial a = Polynomial::constant(vars, Scalar::of_int(kQ, c));
        EXPECT_TRUE(omega.derive(a).is_zero());
    }
}

TEST(Kahler, DerivationSatisfiesLeibniz) {
    std::mt19937 rng(67);
    for (auto base : {kQ, kF3}) {
        KahlerModule omega = kahler(algebra(base, {"x", "y"}, {"x^2", "y^2 - 1"}));
        VarListPtr vars = omega.algebra()->vars_ptr();
        for (int i = 0; i < 40; ++i) {
            Polynomial f = random_poly(rng, vars, base);
            Polynomial g = random_poly(rng, vars, base);
            FreeModuleElement lhs = omega.derive(f * g);
            FreeModuleElement rhs =
                omega.reduce(omega.derive(g).mul_poly(f) + omega.derive(f).mul_poly(g));
            EXPECT_EQ(lhs, rhs) << "f = " << f.str() << ", g = " << g.str();
        }
    }
}

TEST(Kahler, DerivationOfGeneratorsAreClasses) {
    KahlerModule omega = kahler(algebra(kQ, {"x"}, {"x^3"}));
    VarListPtr vars = omega.algebra()->vars_ptr();
    FreeModuleElement dx = omega.derive(Polynomial::variable(vars, kQ, 0));
    EXPECT_EQ(dx, FreeModuleElement::basis_vector(1, 0, vars, kQ));
    // d(x^2) = 2x dx, not reducible mod (3x^2 dx, x^3 dx)
    FreeModuleElement dx2 = omega.derive(parse_poly("x^2", vars, kQ));
    EXPECT_EQ(dx2.coord(0), parse_poly("2*x", vars, kQ));
}

TEST(Unramified, QDualNumbersWitness) {
    UnramifiedReport R = unramified_check(algebra(kQ, {"x"}, {"x^2"}));
    EXPECT_FALSE(R.unramified);
    EXPECT_FALSE(R.witness_unavailable);
    ASSERT_TRUE(R.witness.has_value());
    const auto& w = *R.witness;
    ASSERT_EQ(w.unit_images.size(), 1u);
    // s0(x) = (x, 0), s1(x) = (x, dx), distinct in the module part
    EXPECT_EQ(w.unit_images[0].ring_part, w.graph_images[0].ring_part);
    EXPECT_TRUE(w.unit_images[0].module_part.is_zero());
    EXPECT_FALSE(w.graph_images[0].module_part.is_zero());
    EXPECT_EQ(w.distinct_at, 0u);
}

TEST(Unramified, BaseOnlyIsUnramified) {
    UnramifiedReport R = unramified_check(algebra(kQ, {}, {}));
    EXPECT_TRUE(R.unramified);
    EXPECT_FALSE(R.witness.has_value());
}

TEST(Unramified, F2SplitQuadraticIsUnramified) {
    // Jacobian 2x+1 = 1 is a unit
    KahlerModule omega = kahler(algebra(kF2, {"x"}, {"x^2 + x"}));
    UnramifiedReport R = unramified_check(omega);
    EXPECT_TRUE(R.unramified);
    // certificate exhibits 1 = g * (2x+1) mod (x^2+x)
    const auto& cert = omega.zero_certificate();
    ASSERT_TRUE(cert.is_zero);
    Polynomial g = cert.cofactors[0][0];
    Polynomial check = omega.algebra()->reduce(
        g * parse_poly("2*x + 1", omega.algebra()->vars_ptr(), kF2));
    EXPECT_EQ(check, Polynomial::one(omega.algebra()->vars_ptr(), kF2));
}

TEST(Unramified, WitnessUnavailableForPositiveDimension) {
    // Q[x,y]/(x*y): Omega != 0 but the quotient is not finite-dimensional
    UnramifiedReport R = unramified_check(algebra(kQ, {"x", "y"}, {"x*y"}));
    EXPECT_FALSE(R.unramified);
    EXPECT_TRUE(R.witness_unavailable);
    EXPECT_FALSE(R.witness.has_value());
}

TEST(Unramified, WitnessMirrorsTableLevelCollision) {
    // F3[x]/(x^2): the symbolic witness pair corresponds to an actual
    // collision of table homs into B + Omega
    auto B = algebra(kF3, {"x"}, {"x^2"});
    KahlerModule omega = kahler(B);
    UnramifiedReport R = unramified_check(omega);
    ASSERT_TRUE(R.witness.has_value());

    RingTablePtr Bt = to_finite_table(B);
    PresentedModuleTable M(omega.presentation(), Bt);
    BeckModule E = trivial_extension(Bt, M.table());
    LiftReport L = lift_check(B, E);
    EXPECT_FALSE(L.injective);
    ASSERT_TRUE(L.collision.has_value());
    // and the symbolic images really are the unit/graph pair over x
    std::size_t x_index = Bt->size();
    for (std::size_t i = 0; i < Bt->size(); ++i)
        if (Bt->label(i) == "x") x_index = i;
    ASSERT_LT(x_index, Bt->size());
    std::size_t dx = M.generator_image(0);
    std::vector<std::size_t> s0{E.pair_index(x_index, M.table().zero())};
    std::vector<std::size_t> s1{E.pair_index(x_index, dx)};
    HomSet H = enumerate_homs(B, E.total);
    EXPECT_TRUE(H.find(s0).has_value());
    EXPECT_TRUE(H.find(s1).has_value());
    EXPECT_NE(s0, s1);
    EXPECT_EQ(E.projection[s0[0]], E.projection[s1[0]]);
}

TEST(Kahler, NonFieldBaseRejected) {
    try {
        kahler(algebra(ScalarKind::integers(), {"x"}, {"x^2"}));
        FAIL() << "expected NonFieldBase";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonFieldBase);
    }
}

TEST(Kahler, AdjunctionCardinality) {
    // |Hom_B-mod(Omega, M)| = |sections of B+M -> B| on finite instances:
    // module homs out of the Jacobian presentation are counted directly,
    // sections are counted through hom enumeration
    struct Case {
        ScalarKind base;
        std::vector<std::string> rels;
    };
    std::vector<Case> cases = {{kF2, {"x^2"}}, {kF2, {"x^2 + x"}}, {kF2, {"x^3"}},
                               {kF3, {"x^2"}}, {kF3, {"x^2 - 2"}}};
    for (const auto& c : cases) {
        auto B = algebra(c.base, {"x"}, c.rels);
        RingTablePtr Bt = to_finite_table(B);
        KahlerModule omega = kahler(B);
        std::size_t n = omega.presentation().rank();

        std::vector<CModuleTable> mods;
        mods.push_back(CModuleTable::zero_module(Bt));
        if (Bt->size() <= 9) mods.push_back(CModuleTable::regular_module(Bt));
        mods.push_back(testkit::presented_module_table(B, Bt, {"x"}));

        for (const auto& M : mods) {
            // left side: assignments dx_i -> m_i killing every Jacobian column
            std::size_t lhs = 0;
            std::vector<std::size_t> assign(n, 0);
            while (true) {
                bool ok = true;
                for (const auto& rel : omega.presentation().relations) {
                    std::size_t acc = M.zero();
                    for (std::size_t i = 0; i < n; ++i) {
                        std::size_t coeff = table_index_of(B, rel.coord(i));
                        acc = M.add(acc, M.act(coeff, assign[i]));
                    }
                    if (acc != M.zero()) {
                        ok = false;
                        break;
                    }
                }
                if (ok) ++lhs;
                std::size_t i = n;
                bool done = true;
                while (i > 0) {
                    --i;
                    if (++assign[i] < M.size()) {
                        done = false;
                        break;
                    }
                    assign[i] = 0;
                }
                if (done) break;
            }

            // right side: algebra homs B -> B+M lying over the identity
            BeckModule E = trivial_extension(Bt, M);
            HomSet H = enumerate_homs(B, E.total);
            std::size_t rhs = 0;
            std::vector<std::size_t> canonical(n);
            for (std::size_t i = 0; i < n; ++i)
                canonical[i] =
                    table_index_of(B, Polynomial::variable(B->vars_ptr(), B->base(), i));
            for (const auto& img : H.images) {
                bool over_id = true;
                for (std::size_t i = 0; i < n; ++i)
                    if (E.projection[img[i]] != canonical[i]) over_id = false;
                if (over_id) ++rhs;
            }
            EXPECT_EQ(lhs, rhs) << B->str() << " with |M| = " << M.size();
        }
    }
}

TEST(Unramified, SweepAgainstZeroOracle) {
    struct Case {
        ScalarKind base;
        VarList gens;
        std::vector<std::string> rels;
        bool expect_unramified;
    };
    std::vector<Case> cases = {
        {kQ, {"x"}, {"x^2"}, false},
        {kQ, {"x"}, {"x^2 - 1"}, true},
        {kQ, {"x"}, {"x^2 - 2"}, true},
        {kQ, {"x"}, {"x^3"}, false},
        {kQ, {"x"}, {"x"}, true},
        {kQ, {"x", "y"}, {"x^2 - 1", "y^2 - 2"}, true},
        {kQ, {"x", "y"}, {"x^2", "y^2"}, false},
        {kF2, {"x"}, {"x^2"}, false},
        {kF2, {"x"}, {"x^2 + x"}, true},
        {kF2, {"x"}, {"x^2 + x + 1"}, true},
        {kF2, {"x"}, {"x^2 + 1"}, false},   // (x+1)^2, inseparable-like
        {kF2, {"x"}, {"x^3 + x"}, false},   // x(x+1)^2
        {kF2, {"x"}, {"x^4 + x"}, true},    // product of separable factors
        {kF3, {"x"}, {"x^3"}, false},       // d(x^3) = 3x^2 = 0
        {kF3, {"x"}, {"x^3 - x"}, true},
        {kF3, {"x"}, {"x^2 - 2"}, true},
        {kF5, {"x"}, {"x^2"}, false},
        {kF5, {"x"}, {"x^2 - 2"}, true},
        {kF5, {"x"}, {"x^5 - x"}, true},
    };
    for (const auto& c : cases) {
        auto B = algebra(c.base, c.gens, c.rels);
        KahlerModule omega = kahler(B);
        EXPECT_EQ(omega.is_zero(), c.expect_unramified) << B->str();
        EXPECT_EQ(unramified_check(omega).unramified, c.expect_unramified) << B->str();
        if (omega.is_zero())
            EXPECT_TRUE(verify_zero_certificate(omega.presentation(), omega.zero_certificate()))
                << B->str();
    }
}
