#pragma once

#include <optional>
#include <vector>

#include "beckdiff/cmodule.hpp"
#include "beckdiff/hom_enumeration.hpp"

namespace beckdiff {

/* A Beck module over a finite ring C: the split square-zero extension
 * C + M -> C with multiplication (c,m)(c',m') = (cc', cm' + c'm), its
 * projection, its unit section c -> (c, 0), and fiberwise addition. The
 * abelian-group-object laws over C are verified exhaustively at
 * construction, including that fiberwise addition, the unit section and
 * fiberwise negation are all ring homomorphisms over C. */
struct BeckModule {
    RingTablePtr base;    // C
    CModuleTable module;  // M
    RingTablePtr total;   // C + M
    std::vector<std::size_t> projection;    // total -> C
    std::vector<std::size_t> unit_section;  // C -> total

    std::size_t pair_index(std::size_t c, std::size_t m) const { return c * module.size() + m; }
    std::size_t c_part(std::size_t e) const { return e / module.size(); }
    std::size_t m_part(std::size_t e) const { return e % module.size(); }

    /* (c, m) + (c, m') -> (c, m + m'); both arguments must share a fiber. */
    std::size_t fiber_add(std::size_t e1, std::size_t e2) const {
        return pair_index(c_part(e1), module.add(m_part(e1), m_part(e2)));
    }
    std::size_t fiber_neg(std::size_t e) const {
        return pair_index(c_part(e), module.neg(m_part(e)));
    }

    TableHom projection_hom() const { return verify_table_hom(total, base, projection); }
};

namespace detail {

inline void verify_beck_invariants(const BeckModule& B) {
    const auto& C = *B.base;
    const auto& M = B.module;
    const auto& E = *B.total;
    std::size_t nc = C.size(), nm = M.size();

    // square-zero fiber over 0
    for (std::size_t m1 = 0; m1 < nm; ++m1)
        for (std::size_t m2 = 0; m2 < nm; ++m2)
            if (E.mul(B.pair_index(C.zero(), m1), B.pair_index(C.zero(), m2)) !=
                E.zero())
                fail(ErrorCode::NotAModule, "extension fiber is not square-zero");

    // projection and unit section are ring homomorphisms, and a retraction pair
    verify_table_hom(B.total, B.base, B.projection);
    verify_table_hom(B.base, B.total, B.unit_section);
    for (std::size_t c = 0; c < nc; ++c)
        if (B.projection[B.unit_section[c]] != c)
            fail(ErrorCode::NotAModule, "projection does not retract the unit section");

    // abelian group laws fiberwise
    for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t m1 = 0; m1 < nm; ++m1) {
            std::size_t e1 = B.pair_index(c, m1);
            if (B.fiber_add(B.unit_section[c], e1) != e1)
                fail(ErrorCode::NotAModule, "unit section is not a fiberwise unit");
            if (B.fiber_add(e1, B.fiber_neg(e1)) != B.unit_section[c])
                fail(ErrorCode::NotAModule, "fiberwise inverse fails");
            for (std::size_t m2 = 0; m2 < nm; ++m2) {
                std::size_t e2 = B.pair_index(c, m2);
                if (B.fiber_add(e1, e2) != B.fiber_add(e2, e1))
                    fail(ErrorCode::NotAModule, "fiberwise addition not commutative");
                for (std::size_t m3 = 0; m3 < nm; ++m3) {
                    std::size_t e3 = B.pair_index(c, m3);
                    if (B.fiber_add(B.fiber_add(e1, e2), e3) != B.fiber_add(e1, B.fiber_add(e2, e3)))
                        fail(ErrorCode::NotAModule, "fiberwise addition not associative");
                }
            }
        }

    // fiberwise addition E x_C E -> E is a ring homomorphism over C, and so is
    // fiberwise negation; this is the group-object structure in A-Alg/C
    std::vector<std::pair<std::size_t, std::size_t>> fp;
    for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t m1 = 0; m1 < nm; ++m1)
            for (std::size_t m2 = 0; m2 < nm; ++m2)
                fp.emplace_back(B.pair_index(c, m1), B.pair_index(c, m2));
    auto sigma = [&](const std::pair<std::size_t, std::size_t>& uv) {
        return B.fiber_add(uv.first, uv.second);
    };
    for (const auto& uv : fp)
        if (B.projection[sigma(uv)] != B.projection[uv.first])
            fail(ErrorCode::NotAModule, "addition morphism does not live over C");
    for (const auto& uv : fp)
        for (const auto& uv2 : fp) {
            std::pair<std::size_t, std::size_t> sum{E.add(uv.first, uv2.first),
                                                    E.add(uv.second, uv2.second)};
            std::pair<std::size_t, std::size_t> prod{E.mul(uv.first, uv2.first),
                                                     E.mul(uv.second, uv2.second)};
            if (sigma(sum) != E.add(sigma(uv), sigma(uv2)))
                fail(ErrorCode::NotAModule, "addition morphism is not additive");
            if (sigma(prod) != E.mul(sigma(uv), sigma(uv2)))
                fail(ErrorCode::NotAModule, "addition morphism is not multiplicative");
        }
    for (std::size_t e = 0; e < E.size(); ++e)
        for (std::size_t e2 = 0; e2 < E.size(); ++e2) {
            if (B.fiber_neg(E.add(e, e2)) != E.add(B.fiber_neg(e), B.fiber_neg(e2)))
                fail(ErrorCode::NotAModule, "negation morphism is not additive");
            if (B.fiber_neg(E.mul(e, e2)) != E.mul(B.fiber_neg(e), B.fiber_neg(e2)))
                fail(ErrorCode::NotAModule, "negation morphism is not multiplicative");
        }
}

}  // namespace detail

/* The trivial extension C + M with all Beck-module invariants verified. */
inline BeckModule trivial_extension(RingTablePtr C, CModuleTable M) {
    if (M.ring().get() != C.get() && !(M.ring()->size() == C->size() &&
                                       M.ring()->add_table() == C->add_table() &&
                                       M.ring()->mul_table() == C->mul_table()))
        fail(ErrorCode::MixedContext, "module is not a module over the given base ring");
    std::size_t nc = C->size(), nm = M.size();
    std::size_t N = nc * nm;
    std::vector<std::size_t> add(N * N), mul(N * N);
    auto idx = [&](std::size_t c, std::size_t m) { return c * nm + m; };
    for (std::size_t c1 = 0; c1 < nc; ++c1)
        for (std::size_t m1 = 0; m1 < nm; ++m1)
            for (std::size_t c2 = 0; c2 < nc; ++c2)
                for (std::size_t m2 = 0; m2 < nm; ++m2) {
                    std::size_t a = idx(c1, m1), b = idx(c2, m2);
                    add[a * N + b] = idx(C->add(c1, c2), M.add(m1, m2));
                    mul[a * N + b] =
                        idx(C->mul(c1, c2), M.add(M.act(c1, m2), M.act(c2, m1)));
                }
    std::size_t zero = idx(C->zero(), M.zero());
    std::size_t one = idx(C->one(), M.zero());
    std::vector<std::size_t> scalars;
    if (C->base().kind == BaseKind::Fp) {
        scalars.resize(C->base().p);
        for (std::size_t r = 0; r < C->base().p; ++r)
            scalars[r] = idx(C->scalar_images()[r], M.zero());
    }
    std::vector<std::string> labels(N);
    for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t m = 0; m < nm; ++m)
            labels[idx(c, m)] = "(" + C->label(c) + ", " + M.label(m) + ")";

    BeckModule out;
    out.base = C;
    out.module = std::move(M);
    out.total = FiniteRingTable::create(N, std::move(add), std::move(mul), zero, one, C->base(),
                                        std::move(scalars), std::move(labels));
    out.projection.resize(N);
    out.unit_section.resize(nc);
    for (std::size_t c = 0; c < nc; ++c) {
        out.unit_section[c] = idx(c, out.module.zero());
        for (std::size_t m = 0; m < nm; ++m) out.projection[idx(c, m)] = c;
    }
    detail::verify_beck_invariants(out);
    return out;
}

/* Pullback of a Beck module along a table homomorphism psi: X -> Y. The
 * underlying module is M with X acting through psi; the total ring is then
 * X x_Y (Y + M) up to the evident isomorphism. */
inline BeckModule pullback_module(const TableHom& psi, const BeckModule& M) {
    const auto& X = psi.domain;
    std::size_t nm = M.module.size();
    std::vector<std::size_t> act(X->size() * nm);
    for (std::size_t x = 0; x < X->size(); ++x)
        for (std::size_t m = 0; m < nm; ++m) act[x * nm + m] = M.module.act(psi.map[x], m);
    CModuleTable pulled = CModuleTable::create(X, nm, M.module.add_table(), M.module.zero(),
                                               std::move(act), M.module.labels());
    return trivial_extension(X, std::move(pulled));
}

/* Pullback along an algebra hom with a presented, zero-dimensional domain:
 * the domain is converted to its finite table first. */
inline BeckModule pullback_module(const AlgebraHom& psi, const BeckModule& M,
                                  const Limits& lim = Limits{}) {
    if (psi.codomain.get() != M.base.get() &&
        !(psi.codomain->size() == M.base->size() &&
          psi.codomain->add_table() == M.base->add_table() &&
          psi.codomain->mul_table() == M.base->mul_table()))
        fail(ErrorCode::MixedContext, "hom codomain differs from the module base");
    TableHom table_psi = induced_table_hom(psi, to_finite_table(psi.domain, lim), lim);
    return pullback_module(verify_table_hom(table_psi.domain, M.base, table_psi.map), M);
}

/* The canonical projection psi*M -> M-total over psi, elementwise. */
inline std::vector<std::size_t> pullback_to_total_map(const TableHom& psi, const BeckModule& M,
                                                      const BeckModule& P) {
    std::vector<std::size_t> out(P.total->size());
    for (std::size_t e = 0; e < P.total->size(); ++e)
        out[e] = M.pair_index(psi.map[P.c_part(e)], P.m_part(e));
    return out;
}

struct PullbackUniversalityReport {
    std::size_t pairs_checked = 0;
    bool holds = true;
};

/* Spot check of the pullback universal property over a list of test domains:
 * every pair (alpha: W -> X, beta: W -> M-total) agreeing over Y factors
 * through psi*M by exactly one homomorphism. */
inline PullbackUniversalityReport verify_pullback_universal(const BeckModule& P,
                                                            const TableHom& psi,
                                                            const BeckModule& M,
                                                            const std::vector<AlgebraPtr>& tests,
                                                            const Limits& lim = Limits{}) {
    PullbackUniversalityReport report;
    std::vector<std::size_t> to_total = pullback_to_total_map(psi, M, P);
    for (const auto& W : tests) {
        HomSet HX = enumerate_homs(W, psi.domain, lim);
        HomSet HM = enumerate_homs(W, M.total, lim);
        HomSet HP = enumerate_homs(W, P.total, lim);
        for (const auto& alpha : HX.images)
            for (const auto& beta : HM.images) {
                bool agree = true;
                for (std::size_t i = 0; i < alpha.size() && agree; ++i)
                    agree = psi.map[alpha[i]] == M.projection[beta[i]];
                if (!agree) continue;
                ++report.pairs_checked;
                std::size_t count = 0;
                for (const auto& theta : HP.images) {
                    bool matches = true;
                    for (std::size_t i = 0; i < theta.size() && matches; ++i)
                        matches = P.c_part(theta[i]) == alpha[i] && to_total[theta[i]] == beta[i];
                    if (matches) ++count;
                }
                if (count != 1) report.holds = false;
            }
    }
    return report;
}

}  // namespace beckdiff
