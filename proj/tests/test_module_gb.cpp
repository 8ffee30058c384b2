#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "beckdiff/module_presentation.hpp"
#include "support/oracles.hpp"

using namespace beckdiff;

namespace {

const ScalarKind kQ = ScalarKind::rationals();
const MonomialOrder kPot = MonomialOrder::position_over_term();

FreeModuleElement vec(const std::vector<std::string>& coords, VarListPtr vars, ScalarKind base) {
    std::vector<Polynomial> ps;
    for (const auto& s : coords) ps.push_back(parse_poly(s, vars, base));
    return FreeModuleElement(ps);
}

AlgebraPtr algebra(ScalarKind base, VarList gens, const std::vector<std::string>& rels) {
    AlgebraPresentation p;
    p.base = base;
    p.generators = gens;
    VarListPtr vars = make_vars(gens);
    for (const auto& r : rels) p.relations.push_back(parse_poly(r, vars, base));
    return validate_presentation(std::move(p));
}

}  // namespace

TEST(ModuleBuchberger, AlreadyInterreduced) {
    VarListPtr vars = make_vars({"x"});
    auto gens = std::vector<FreeModuleElement>{vec({"x", "0"}, vars, kQ), vec({"0", "x"}, vars, kQ)};
    ModuleGroebnerBasis gb = module_buchberger(gens, kPot, 2, vars, kQ);
    ASSERT_EQ(gb.elements.size(), 2u);
    // canonical element order is ascending leading term; position 1 < position 0
    EXPECT_EQ(gb.elements[0], vec({"0", "x"}, vars, kQ));
    EXPECT_EQ(gb.elements[1], vec({"x", "0"}, vars, kQ));
}

TEST(ModuleBuchberger, MultipleReducesAway) {
    VarListPtr vars = make_vars({"x"});
    auto gens = std::vector<FreeModuleElement>{vec({"x^2", "0"}, vars, kQ), vec({"x", "0"}, vars, kQ)};
    ModuleGroebnerBasis gb = module_buchberger(gens, kPot, 2, vars, kQ);
    ASSERT_EQ(gb.elements.size(), 1u);
    EXPECT_EQ(gb.elements[0], vec({"x", "0"}, vars, kQ));
}

TEST(ModuleBuchberger, EmptyInput) {
    VarListPtr vars = make_vars({"x"});
    ModuleGroebnerBasis gb = module_buchberger({}, kPot, 2, vars, kQ);
    EXPECT_TRUE(gb.elements.empty());
}

TEST(ModuleNormalForm, CoordinatewiseDivision) {
    VarListPtr vars = make_vars({"x"});
    ModuleGroebnerBasis gb =
        module_buchberger({vec({"x", "0"}, vars, kQ)}, kPot, 2, vars, kQ);
    EXPECT_TRUE(module_normal_form(vec({"x^2", "0"}, vars, kQ), gb).is_zero());
    EXPECT_TRUE(module_normal_form(vec({"0", "0"}, vars, kQ), gb).is_zero());
    EXPECT_EQ(module_normal_form(vec({"1", "0"}, vars, kQ), gb), vec({"1", "0"}, vars, kQ));
}

TEST(ModuleNormalForm, RankMismatchRejected) {
    VarListPtr vars = make_vars({"x"});
    ModuleGroebnerBasis gb = module_buchberger({vec({"x", "0"}, vars, kQ)}, kPot, 2, vars, kQ);
    try {
        module_normal_form(vec({"x"}, vars, kQ), gb);
        FAIL() << "expected RankMismatch";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RankMismatch);
    }
}

TEST(ModuleNormalForm, Idempotent) {
    std::mt19937 rng(53);
    VarListPtr vars = make_vars({"x", "y"});
    std::uniform_int_distribution<long> dc(-4, 4);
    std::uniform_int_distribution<std::uint32_t> de(0, 2);
    auto rnd_vec = [&](std::size_t rank) {
        std::vector<Polynomial> ps;
        for (std::size_t i = 0; i < rank; ++i) {
            Polynomial p = Polynomial::zero(vars, kQ);
            for (int t = 0; t < 3; ++t) {
                std::vector<std::uint32_t> exps{de(rng), de(rng)};
                p = p + Polynomial::term(vars, Monomial(exps), Scalar::of_int(kQ, dc(rng)));
            }
            ps.push_back(p);
        }
        return FreeModuleElement(ps);
    };
    for (int i = 0; i < 60; ++i) {
        std::vector<FreeModuleElement> gens{rnd_vec(2), rnd_vec(2)};
        std::vector<FreeModuleElement> nonzero;
        for (auto& g : gens)
            if (!g.is_zero()) nonzero.push_back(g);
        ModuleGroebnerBasis gb = module_buchberger(nonzero, kPot, 2, vars, kQ);
        FreeModuleElement v = rnd_vec(2);
        FreeModuleElement nf = module_normal_form(v, gb);
        EXPECT_EQ(module_normal_form(nf, gb), nf);
    }
}

TEST(CokernelPresentation, RepackagesJacobian) {
    auto B = algebra(kQ, {"x"}, {"x^2"});
    auto J = jacobian(B->relations(), B->vars_ptr(), kQ);
    FpModulePresentation P = cokernel_presentation(J, B);
    ASSERT_EQ(P.generators, (std::vector<std::string>{"dx"}));
    ASSERT_EQ(P.relations.size(), 1u);
    EXPECT_EQ(P.relations[0], vec({"2*x"}, B->vars_ptr(), kQ));
}

TEST(CokernelPresentation, EmptyMatrixGivesFreeModule) {
    auto B = algebra(kQ, {"x"}, {});
    auto J = jacobian(B->relations(), B->vars_ptr(), kQ);
    FpModulePresentation P = cokernel_presentation(J, B);
    EXPECT_EQ(P.generators.size(), 1u);
    EXPECT_TRUE(P.relations.empty());
}

TEST(CokernelPresentation, ColumnsBecomeRelations) {
    auto B = algebra(kQ, {"x", "y"}, {"x^2 + y^2", "x*y"});
    auto J = jacobian(B->relations(), B->vars_ptr(), kQ);
    FpModulePresentation P = cokernel_presentation(J, B);
    ASSERT_EQ(P.generators, (std::vector<std::string>{"dx", "dy"}));
    ASSERT_EQ(P.relations.size(), 2u);
    EXPECT_EQ(P.relations[0], vec({"2*x", "2*y"}, B->vars_ptr(), kQ));
    EXPECT_EQ(P.relations[1], vec({"y", "x"}, B->vars_ptr(), kQ));
}

TEST(IsZeroModule, UnitRelation) {
    auto B = algebra(kQ, {"x"}, {"x^2"});
    FpModulePresentation P = make_module_presentation(
        B, {"e"}, {vec({"1"}, B->vars_ptr(), kQ)});
    ZeroModuleCertificate cert = is_zero_module(P);
    EXPECT_TRUE(cert.is_zero);
    EXPECT_TRUE(verify_zero_certificate(P, cert));
}

TEST(IsZeroModule, KahlerOfQxModX2IsNonzero) {
    auto B = algebra(kQ, {"x"}, {"x^2"});
    FpModulePresentation P =
        make_module_presentation(B, {"dx"}, {vec({"2*x"}, B->vars_ptr(), kQ)});
    ZeroModuleCertificate cert = is_zero_module(P);
    EXPECT_FALSE(cert.is_zero);
    EXPECT_EQ(cert.witness_index, 0u);
    EXPECT_FALSE(cert.witness_normal_form.is_zero());
    EXPECT_FALSE(oracles::zero_module_oracle(P));
}

TEST(IsZeroModule, KahlerOfF5SeparableIsZeroWithInverseCertificate) {
    ScalarKind f5 = ScalarKind::prime_field(5);
    auto B = algebra(f5, {"x"}, {"x^2 - 2"});
    FpModulePresentation P =
        make_module_presentation(B, {"dx"}, {vec({"2*x"}, B->vars_ptr(), f5)});
    ZeroModuleCertificate cert = is_zero_module(P);
    ASSERT_TRUE(cert.is_zero);
    EXPECT_TRUE(verify_zero_certificate(P, cert));
    EXPECT_TRUE(oracles::zero_module_oracle(P));
    // the cofactor on the module relation is an inverse of 2x in B
    ASSERT_EQ(cert.origins[0].kind, CombinedGenOrigin::Kind::Relation);
    Polynomial g = cert.cofactors[0][0];
    Polynomial prod = B->reduce(g * parse_poly("2*x", B->vars_ptr(), f5));
    EXPECT_EQ(prod, Polynomial::one(B->vars_ptr(), f5));
}

TEST(IsZeroModule, StableUnderPermutation) {
    std::mt19937 rng(59);
    auto B = algebra(kQ, {"x", "y"}, {"x^2", "y^2"});
    VarListPtr vars = B->vars_ptr();
    std::vector<FreeModuleElement> rels = {vec({"x", "y"}, vars, kQ), vec({"1", "x*y"}, vars, kQ),
                                           vec({"0", "y"}, vars, kQ)};
    FpModulePresentation P = make_module_presentation(B, {"a", "b"}, rels);
    bool base_verdict = is_zero_module(P).is_zero;
    for (int i = 0; i < 5; ++i) {
        std::shuffle(rels.begin(), rels.end(), rng);
        FpModulePresentation Q = make_module_presentation(B, {"a", "b"}, rels);
        EXPECT_EQ(is_zero_module(Q).is_zero, base_verdict);
    }
}

TEST(IsZeroModule, StableUnderGeneratorPermutation) {
    // swapping the module generators (and the coordinates of every relation)
    // must not change the verdict
    auto B = algebra(kQ, {"x"}, {"x^3"});
    VarListPtr vars = B->vars_ptr();
    std::vector<std::vector<std::string>> rel_sets = {
        {"x", "0"},
        {"0", "1"},
        {"x^2", "x"},
    };
    for (bool make_zero : {false, true}) {
        std::vector<FreeModuleElement> rels, swapped;
        for (const auto& r : rel_sets) {
            rels.push_back(vec({r[0], r[1]}, vars, kQ));
            swapped.push_back(vec({r[1], r[0]}, vars, kQ));
        }
        if (make_zero) {
            rels.push_back(vec({"1", "0"}, vars, kQ));
            swapped.push_back(vec({"0", "1"}, vars, kQ));
        }
        FpModulePresentation P = make_module_presentation(B, {"a", "b"}, rels);
        FpModulePresentation Q = make_module_presentation(B, {"b", "a"}, swapped);
        EXPECT_EQ(is_zero_module(P).is_zero, is_zero_module(Q).is_zero);
    }
}

TEST(IsZeroModule, RedundantRelationDoesNotChangeVerdict) {
    auto B = algebra(kQ, {"x"}, {"x^3"});
    VarListPtr vars = B->vars_ptr();
    std::vector<FreeModuleElement> rels = {vec({"x"}, vars, kQ)};
    FpModulePresentation P = make_module_presentation(B, {"m"}, rels);
    bool verdict = is_zero_module(P).is_zero;
    // x^2 * m is already in the submodule generated by x * m
    rels.push_back(vec({"x^2"}, vars, kQ));
    FpModulePresentation Q = make_module_presentation(B, {"m"}, rels);
    EXPECT_EQ(is_zero_module(Q).is_zero, verdict);
}

TEST(IsZeroModule, AgreesWithLinearAlgebraOracle) {
    // sweep of small presentations over finite-dimensional ambients
    struct Case {
        VarList gens;
        std::vector<std::string> ideal;
        std::vector<std::vector<std::string>> rels;  // each of rank 2
    };
    std::vector<Case> cases = {
        {{"x"}, {"x^2"}, {{"x", "0"}, {"0", "1"}}},
        {{"x"}, {"x^2"}, {{"1", "0"}, {"0", "x"}}},
        {{"x"}, {"x^2 - 1"}, {{"x - 1", "0"}, {"0", "1"}}},
        {{"x"}, {"x^3"}, {{"x", "x"}, {"0", "x"}, {"1", "0"}}},
        {{"x", "y"}, {"x^2", "y^2"}, {{"x", "y"}, {"y", "x"}, {"1", "0"}, {"0", "1"}}},
        {{"x", "y"}, {"x^2", "y^2"}, {{"1", "0"}, {"x*y", "1"}}},
    };
    for (const auto& c : cases) {
        auto B = algebra(kQ, c.gens, c.ideal);
        std::vector<FreeModuleElement> rels;
        for (const auto& r : c.rels) rels.push_back(vec(r, B->vars_ptr(), kQ));
        FpModulePresentation P = make_module_presentation(B, {"a", "b"}, rels);
        ZeroModuleCertificate cert = is_zero_module(P);
        EXPECT_EQ(cert.is_zero, oracles::zero_module_oracle(P));
        if (cert.is_zero) EXPECT_TRUE(verify_zero_certificate(P, cert));
    }
}

TEST(IsZeroModule, NoGeneratorsIsZero) {
    auto B = algebra(kQ, {"x"}, {"x^2"});
    FpModulePresentation P = make_module_presentation(B, {}, {});
    EXPECT_TRUE(is_zero_module(P).is_zero);
}
