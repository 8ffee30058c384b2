#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "beckdiff/finite_ring.hpp"

namespace beckdiff {

/* An A-algebra homomorphism from a presented algebra into a finite table,
 * recorded by its generator images. Scalar compatibility holds by
 * construction since scalars map canonically; make_algebra_hom checks that
 * every relation dies. */
struct AlgebraHom {
    AlgebraPtr domain;
    RingTablePtr codomain;
    std::vector<std::size_t> images;

    std::size_t eval(const Polynomial& f) const { return eval_poly_in_table(f, *codomain, images); }
};

inline AlgebraHom make_algebra_hom(AlgebraPtr domain, RingTablePtr codomain,
                                   std::vector<std::size_t> images) {
    AlgebraHom h{std::move(domain), std::move(codomain), std::move(images)};
    if (h.images.size() != h.domain->generators().size())
        fail(ErrorCode::ShapeMismatch, "one image per generator required");
    for (std::size_t v : h.images)
        if (v >= h.codomain->size()) fail(ErrorCode::InvalidInput, "image index out of range");
    for (const auto& rel : h.domain->relations())
        if (h.eval(rel) != h.codomain->zero())
            fail(ErrorCode::NotARingHom, "relation " + rel.str() + " does not vanish");
    return h;
}

/* All A-algebra homomorphisms from a domain presentation into one finite
 * table, materialized and ordered lexicographically by image vector. */
struct HomSet {
    AlgebraPtr domain;
    RingTablePtr codomain;
    std::vector<std::vector<std::size_t>> images;

    std::size_t size() const { return images.size(); }

    std::optional<std::size_t> find(const std::vector<std::size_t>& img) const {
        auto it = std::lower_bound(images.begin(), images.end(), img);
        if (it == images.end() || *it != img) return std::nullopt;
        return static_cast<std::size_t>(it - images.begin());
    }

    AlgebraHom at(std::size_t i) const { return {domain, codomain, images[i]}; }
};

inline void require_hom_compatible(const ValidatedAlgebra& B, const FiniteRingTable& D) {
    switch (B.base().kind) {
        case BaseKind::Int:
            return;  // unique Z -> D for every finite ring
        case BaseKind::Fp:
            if (!(D.base() == B.base()))
                fail(ErrorCode::MixedContext, "domain over " + B.base().str() +
                                                  " into table over " + D.base().str());
            return;
        case BaseKind::Rat:
            fail(ErrorCode::MixedContext, "no finite tables over Q to map into");
    }
}

/* Brute-force enumeration of Hom(B, D): all |D|^(#generators) assignments,
 * rejecting an assignment at the first relation that evaluates nonzero. */
inline HomSet enumerate_homs(const AlgebraPtr& B, const RingTablePtr& D,
                             const Limits& lim = Limits{}) {
    require_hom_compatible(*B, *D);
    std::size_t g = B->generators().size();
    std::size_t n = D->size();

    double total = 1;
    for (std::size_t i = 0; i < g; ++i) total *= static_cast<double>(n);
    if (total > static_cast<double>(lim.max_homs))
        fail(ErrorCode::ResourceLimit, "assignment space " + std::to_string(total) +
                                           " exceeds --max-homs");

    HomSet out{B, D, {}};
    std::vector<std::size_t> assign(g, 0);
    while (true) {
        bool ok = true;
        for (const auto& rel : B->relations()) {
            if (eval_poly_in_table(rel, *D, assign) != D->zero()) {
                ok = false;
                break;
            }
        }
        if (ok) out.images.push_back(assign);
        // odometer: lexicographic ascending
        std::size_t i = g;
        while (i > 0) {
            --i;
            if (++assign[i] < n) break;
            assign[i] = 0;
            if (i == 0) return out;
        }
        if (g == 0) break;
    }
    return out;
}

/* Post-composition with a table homomorphism q: the generator images map
 * through q. */
inline std::vector<std::size_t> compose(const TableHom& q, const std::vector<std::size_t>& images) {
    std::vector<std::size_t> out;
    out.reserve(images.size());
    for (std::size_t v : images) out.push_back(q.map[v]);
    return out;
}

/* The table-level map induced by an algebra hom out of a zero-dimensional
 * domain: each element is decoded over the standard monomials and evaluated
 * at the generator images. */
inline TableHom induced_table_hom(const AlgebraHom& h, RingTablePtr domain_table,
                                  const Limits& lim = Limits{}) {
    const AlgebraPtr& B = h.domain;
    const auto& qb = B->quotient_basis();
    if (!qb) fail(ErrorCode::InfiniteDimensional, "domain is not finite-dimensional");
    std::size_t p = B->base().p;
    std::vector<std::size_t> map(domain_table->size());
    for (std::size_t idx = 0; idx < domain_table->size(); ++idx) {
        Polynomial f = Polynomial::zero(B->vars_ptr(), B->base());
        std::size_t rest = idx;
        for (std::size_t t = 0; t < qb->size(); ++t) {
            std::size_t c = rest % p;
            rest /= p;
            if (c)
                f = f + Polynomial::term(B->vars_ptr(), (*qb)[t],
                                         Scalar::fp(static_cast<std::uint32_t>(p), mpz_class(c)));
        }
        map[idx] = h.eval(f);
    }
    (void)lim;
    return verify_table_hom(std::move(domain_table), h.codomain, std::move(map));
}

}  // namespace beckdiff
