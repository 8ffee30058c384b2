#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "beckdiff/group.hpp"
#include "beckdiff/limits.hpp"

namespace beckdiff {

/* A G-module: a finite abelian group M with G acting by automorphisms.
 * This is the Beck-module datum over G in the category of groups. */
struct GModuleTable {
    GroupTablePtr group;   // G
    GroupTablePtr module;  // M, abelian
    std::vector<std::size_t> action;  // |G| x |M|

    std::size_t act(std::size_t g, std::size_t m) const { return action[g * module->size() + m]; }
};

inline GModuleTable make_gmodule(GroupTablePtr G, GroupTablePtr M,
                                 std::vector<std::size_t> action) {
    if (!M->is_abelian()) fail(ErrorCode::KernelNonAbelian, "module group must be abelian");
    if (action.size() != G->size() * M->size())
        fail(ErrorCode::ShapeMismatch, "action table shape mismatch");
    GModuleTable out{std::move(G), std::move(M), std::move(action)};
    const auto& g = *out.group;
    const auto& m = *out.module;
    for (std::size_t k = 0; k < m.size(); ++k)
        if (out.act(g.identity(), k) != k)
            fail(ErrorCode::ActionIllDefined, "identity does not act trivially");
    for (std::size_t a = 0; a < g.size(); ++a) {
        for (std::size_t b = 0; b < g.size(); ++b)
            for (std::size_t k = 0; k < m.size(); ++k)
                if (out.act(g.mul(a, b), k) != out.act(a, out.act(b, k)))
                    fail(ErrorCode::ActionIllDefined, "action is not multiplicative in G");
        for (std::size_t k1 = 0; k1 < m.size(); ++k1)
            for (std::size_t k2 = 0; k2 < m.size(); ++k2)
                if (out.act(a, m.mul(k1, k2)) != m.mul(out.act(a, k1), out.act(a, k2)))
                    fail(ErrorCode::ActionIllDefined, "action is not by automorphisms");
    }
    return out;
}

inline GModuleTable trivial_gmodule(GroupTablePtr G, GroupTablePtr M) {
    std::vector<std::size_t> action(G->size() * M->size());
    for (std::size_t g = 0; g < G->size(); ++g)
        for (std::size_t m = 0; m < M->size(); ++m) action[g * M->size() + m] = m;
    return make_gmodule(std::move(G), std::move(M), std::move(action));
}

/* A split extension M x| G -> G together with its section and kernel; the
 * Beck module over G in group form, with fiberwise addition verified as an
 * abelian-group-object structure over G. */
struct GroupExtension {
    GModuleTable module;
    GroupTablePtr total;  // E = M x| G, index (m, g) = m * |G| + g
    GroupTablePtr base;   // G
    std::vector<std::size_t> map;      // projection E -> G
    std::vector<std::size_t> section;  // g -> (0, g)
    std::vector<std::size_t> kernel;   // E-indices of M x {e}

    std::size_t pair_index(std::size_t m, std::size_t g) const { return m * base->size() + g; }
    std::size_t m_part(std::size_t e) const { return e / base->size(); }
    std::size_t g_part(std::size_t e) const { return e % base->size(); }

    std::size_t fiber_add(std::size_t e1, std::size_t e2) const {
        return pair_index(module.module->mul(m_part(e1), m_part(e2)), g_part(e1));
    }
};

namespace detail {

inline void verify_group_beck_invariants(const GroupExtension& E) {
    const auto& G = *E.base;
    const auto& T = *E.total;
    const auto& M = *E.module.module;
    verify_group_hom(E.total, E.base, E.map);
    verify_group_hom(E.base, E.total, E.section);
    for (std::size_t g = 0; g < G.size(); ++g)
        if (E.map[E.section[g]] != g) fail(ErrorCode::NotAGroupHom, "section is not a section");

    // fiberwise addition: unit, inverses, commutativity, and the morphism law
    for (std::size_t e1 = 0; e1 < T.size(); ++e1) {
        std::size_t g = E.g_part(e1);
        if (E.fiber_add(E.section[g], e1) != e1)
            fail(ErrorCode::ActionIllDefined, "section is not a fiberwise unit");
        std::size_t inv = E.pair_index(M.inv(E.m_part(e1)), g);
        if (E.fiber_add(e1, inv) != E.section[g])
            fail(ErrorCode::ActionIllDefined, "fiberwise inverse fails");
        for (std::size_t m2 = 0; m2 < M.size(); ++m2) {
            std::size_t e2 = E.pair_index(m2, g);
            if (E.fiber_add(e1, e2) != E.fiber_add(e2, e1))
                fail(ErrorCode::ActionIllDefined, "fiberwise addition not commutative");
        }
    }
    // sigma: E x_G E -> E is a group homomorphism
    for (std::size_t g1 = 0; g1 < G.size(); ++g1)
        for (std::size_t m1 = 0; m1 < M.size(); ++m1)
            for (std::size_t m1b = 0; m1b < M.size(); ++m1b)
                for (std::size_t g2 = 0; g2 < G.size(); ++g2)
                    for (std::size_t m2 = 0; m2 < M.size(); ++m2)
                        for (std::size_t m2b = 0; m2b < M.size(); ++m2b) {
                            std::size_t u1 = E.pair_index(m1, g1), v1 = E.pair_index(m1b, g1);
                            std::size_t u2 = E.pair_index(m2, g2), v2 = E.pair_index(m2b, g2);
                            if (E.fiber_add(T.mul(u1, u2), T.mul(v1, v2)) !=
                                T.mul(E.fiber_add(u1, v1), E.fiber_add(u2, v2)))
                                fail(ErrorCode::ActionIllDefined,
                                     "fiberwise addition is not a morphism over G");
                        }
}

}  // namespace detail

/* E = M x| G with (m, g)(m', g') = (m + g.m', g g'). */
inline GroupExtension semidirect_product(GModuleTable M) {
    const auto& G = *M.group;
    const auto& A = *M.module;
    std::size_t ng = G.size(), nm = A.size(), n = nm * ng;
    std::vector<std::size_t> mul(n * n);
    std::vector<std::string> labels(n);
    auto idx = [&](std::size_t m, std::size_t g) { return m * ng + g; };
    for (std::size_t m1 = 0; m1 < nm; ++m1)
        for (std::size_t g1 = 0; g1 < ng; ++g1) {
            labels[idx(m1, g1)] = "(" + A.label(m1) + ", " + G.label(g1) + ")";
            for (std::size_t m2 = 0; m2 < nm; ++m2)
                for (std::size_t g2 = 0; g2 < ng; ++g2)
                    mul[idx(m1, g1) * n + idx(m2, g2)] =
                        idx(A.mul(m1, M.act(g1, m2)), G.mul(g1, g2));
        }
    GroupExtension E;
    E.total = FiniteGroupTable::create(n, std::move(mul), idx(A.identity(), G.identity()),
                                       std::move(labels));
    E.base = M.group;
    E.module = std::move(M);
    E.map.resize(n);
    E.section.resize(ng);
    for (std::size_t m = 0; m < nm; ++m)
        for (std::size_t g = 0; g < ng; ++g) E.map[idx(m, g)] = g;
    for (std::size_t g = 0; g < ng; ++g) E.section[g] = idx(A.identity(), g);
    for (std::size_t m = 0; m < nm; ++m) E.kernel.push_back(idx(m, G.identity()));
    detail::verify_group_beck_invariants(E);
    return E;
}

/* All group homomorphisms H -> E, as full element maps in lexicographic
 * order. Enumeration walks image tuples on a generating set of H, pruned by
 * element-order divisibility, then verifies the induced map completely. */
struct GroupHomSet {
    GroupTablePtr domain;
    GroupTablePtr codomain;
    std::vector<std::vector<std::size_t>> maps;

    std::size_t size() const { return maps.size(); }

    std::optional<std::size_t> find(const std::vector<std::size_t>& m) const {
        auto it = std::lower_bound(maps.begin(), maps.end(), m);
        if (it == maps.end() || *it != m) return std::nullopt;
        return static_cast<std::size_t>(it - maps.begin());
    }
};

namespace detail {

struct GroupWords {
    std::vector<std::size_t> gens;
    // expression of each element as (previous element, generator index); the
    // identity is the root
    std::vector<std::pair<std::size_t, std::size_t>> expr;
    std::vector<std::size_t> bfs_order;
};

inline GroupWords generator_words(const FiniteGroupTable& H) {
    GroupWords w;
    std::size_t n = H.size();
    w.expr.assign(n, {n, n});
    std::vector<bool> known(n, false);
    known[H.identity()] = true;
    w.bfs_order.push_back(H.identity());
    std::size_t covered = 1;
    while (covered < n) {
        // greedy: highest-order element not yet generated
        std::size_t best = n, best_ord = 0;
        for (std::size_t a = 0; a < n; ++a)
            if (!known[a] && H.element_order(a) > best_ord) {
                best_ord = H.element_order(a);
                best = a;
            }
        std::size_t gi = w.gens.size();
        w.gens.push_back(best);
        // BFS closure with the enlarged generating set
        std::size_t head = 0;
        std::vector<std::size_t> queue = w.bfs_order;
        while (head < queue.size()) {
            std::size_t a = queue[head++];
            for (std::size_t j = 0; j <= gi; ++j) {
                std::size_t b = H.mul(a, w.gens[j]);
                if (!known[b]) {
                    known[b] = true;
                    w.expr[b] = {a, j};
                    queue.push_back(b);
                    w.bfs_order.push_back(b);
                    ++covered;
                }
            }
        }
    }
    return w;
}

}  // namespace detail

inline GroupHomSet enumerate_group_homs(const GroupTablePtr& H, const GroupTablePtr& E,
                                        const Limits& lim = Limits{}) {
    GroupHomSet out{H, E, {}};
    detail::GroupWords words = detail::generator_words(*H);
    std::size_t k = words.gens.size();

    double total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= static_cast<double>(E->size());
    if (total > static_cast<double>(lim.max_homs))
        fail(ErrorCode::ResourceLimit, "group hom search space exceeds --max-homs");

    // order-divisibility filter per generator
    std::vector<std::vector<std::size_t>> candidates(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t ord = H->element_order(words.gens[i]);
        for (std::size_t v = 0; v < E->size(); ++v)
            if (ord % E->element_order(v) == 0) candidates[i].push_back(v);
    }

    std::vector<std::size_t> choice(k, 0);
    while (true) {
        std::vector<std::size_t> phi(H->size());
        phi[H->identity()] = E->identity();
        for (std::size_t e : words.bfs_order) {
            if (e == H->identity()) continue;
            auto [prev, gi] = words.expr[e];
            phi[e] = E->mul(phi[prev], candidates[gi][choice[gi]]);
        }
        bool hom = true;
        for (std::size_t a = 0; a < H->size() && hom; ++a)
            for (std::size_t b = 0; b < H->size() && hom; ++b)
                if (phi[H->mul(a, b)] != E->mul(phi[a], phi[b])) hom = false;
        if (hom) out.maps.push_back(std::move(phi));

        std::size_t i = k;
        bool done = true;
        while (i > 0) {
            --i;
            if (++choice[i] < candidates[i].size()) {
                done = false;
                break;
            }
            choice[i] = 0;
        }
        if (done) break;
    }
    std::sort(out.maps.begin(), out.maps.end());
    return out;
}

/* A verified group torsor: surjection q: E -> G with abelian kernel, the
 * Beck module it is a torsor for, and the action tau((k, g), e) = k * e. */
struct GroupTorsor {
    GroupHom map;                              // q: E -> G
    GroupExtension beck;                       // M x| G over G
    std::vector<std::size_t> kernel_elements;  // module index -> element of E
    bool split = false;
    std::optional<std::vector<std::size_t>> section;

    const GroupTablePtr& total() const { return map.domain; }
    const GroupTablePtr& base() const { return map.codomain; }

    std::size_t tau(std::size_t m_total, std::size_t e) const {
        return map.domain->mul(kernel_elements[beck.m_part(m_total)], e);
    }
};

struct GroupTorsorReport {
    GroupTorsor candidate;
    std::size_t fiber_product_size = 0;
};

inline GroupTorsorReport verify_group_torsor(const GroupHom& q, const Limits& lim = Limits{}) {
    const auto& E = *q.domain;
    const auto& G = *q.codomain;
    if (!is_surjective(q)) fail(ErrorCode::NotSurjective, "extension map is not onto");

    // kernel and its abelianness
    std::vector<std::size_t> kernel;
    std::vector<std::size_t> kindex(E.size(), static_cast<std::size_t>(-1));
    for (std::size_t e = 0; e < E.size(); ++e)
        if (q.map[e] == G.identity()) {
            kindex[e] = kernel.size();
            kernel.push_back(e);
        }
    for (std::size_t a : kernel)
        for (std::size_t b : kernel)
            if (E.mul(a, b) != E.mul(b, a))
                fail(ErrorCode::KernelNonAbelian,
                     E.label(a) + " and " + E.label(b) + " do not commute");

    // conjugation action of G on K: well-definedness over preimages
    std::size_t m = kernel.size();
    std::vector<std::size_t> action(G.size() * m, static_cast<std::size_t>(-1));
    for (std::size_t e = 0; e < E.size(); ++e) {
        std::size_t g = q.map[e];
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t conj = E.mul(E.mul(e, kernel[i]), E.inv(e));
            if (kindex[conj] == static_cast<std::size_t>(-1))
                fail(ErrorCode::ActionIllDefined, "conjugation leaves the kernel");
            std::size_t v = kindex[conj];
            std::size_t& slot = action[g * m + i];
            if (slot == static_cast<std::size_t>(-1))
                slot = v;
            else if (slot != v)
                fail(ErrorCode::ActionIllDefined,
                     "conjugation action depends on the preimage of " + G.label(g));
        }
    }

    // kernel as an abelian group table
    std::vector<std::size_t> kmul(m * m);
    std::vector<std::string> klabels(m);
    for (std::size_t i = 0; i < m; ++i) {
        klabels[i] = E.label(kernel[i]);
        for (std::size_t j = 0; j < m; ++j) kmul[i * m + j] = kindex[E.mul(kernel[i], kernel[j])];
    }
    GroupTablePtr K = FiniteGroupTable::create(m, std::move(kmul), kindex[E.identity()],
                                               std::move(klabels));

    GroupTorsorReport report;
    report.candidate.map = q;
    report.candidate.beck = semidirect_product(make_gmodule(q.codomain, K, std::move(action)));
    report.candidate.kernel_elements = kernel;
    const GroupTorsor& T = report.candidate;
    const GroupExtension& M = T.beck;

    // fiber products and the torsor laws
    std::vector<std::pair<std::size_t, std::size_t>> mz, zz;
    for (std::size_t u = 0; u < M.total->size(); ++u)
        for (std::size_t e = 0; e < E.size(); ++e)
            if (M.map[u] == q.map[e]) mz.emplace_back(u, e);
    for (std::size_t e1 = 0; e1 < E.size(); ++e1)
        for (std::size_t e2 = 0; e2 < E.size(); ++e2)
            if (q.map[e1] == q.map[e2]) zz.emplace_back(e1, e2);

    for (const auto& [u, e] : mz) {
        if (q.map[T.tau(u, e)] != q.map[e])
            fail(ErrorCode::ActionIllDefined, "torsor action does not live over G");
        std::size_t g = q.map[e];
        if (T.tau(M.section[g], e) != e)
            fail(ErrorCode::ActionIllDefined, "zero section does not act trivially");
        for (std::size_t m2 = 0; m2 < m; ++m2) {
            std::size_t u2 = M.pair_index(m2, g);
            if (T.tau(M.fiber_add(u, u2), e) != T.tau(u, T.tau(u2, e)))
                fail(ErrorCode::ActionIllDefined, "action is not compatible with fiber addition");
        }
    }
    // tau is a morphism on the fiber product
    for (const auto& [u1, e1] : mz)
        for (const auto& [u2, e2] : mz)
            if (T.tau(M.total->mul(u1, u2), E.mul(e1, e2)) !=
                E.mul(T.tau(u1, e1), T.tau(u2, e2)))
                fail(ErrorCode::ActionIllDefined, "torsor action is not a homomorphism");
    // (tau, pi) bijective
    if (mz.size() != zz.size()) fail(ErrorCode::ActionIllDefined, "fiber product sizes differ");
    std::set<std::pair<std::size_t, std::size_t>> image, target(zz.begin(), zz.end());
    for (const auto& [u, e] : mz) {
        auto pr = std::make_pair(T.tau(u, e), e);
        if (!target.count(pr) || !image.insert(pr).second)
            fail(ErrorCode::ActionIllDefined, "(action, projection) is not a bijection");
    }
    report.fiber_product_size = mz.size();

    // split iff a group-hom section exists: search homs G -> E fiber-restricted
    GroupHomSet sections = enumerate_group_homs(q.codomain, q.domain, lim);
    for (const auto& s : sections.maps) {
        bool is_section = true;
        for (std::size_t g = 0; g < G.size() && is_section; ++g)
            if (q.map[s[g]] != g) is_section = false;
        if (is_section) {
            report.candidate.split = true;
            report.candidate.section = s;
            break;
        }
    }
    return report;
}

struct GroupLiftReport {
    std::size_t homs_total = 0;
    std::size_t homs_base = 0;
    bool injective = false;
    std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> collision;
    std::optional<bool> surjective;  // split torsors only (section provides lifts)
    std::optional<bool> bijective;
};

inline GroupLiftReport group_lift_check(const GroupTablePtr& H, const GroupTorsor& T,
                                        const Limits& lim = Limits{}) {
    GroupHomSet HE = enumerate_group_homs(H, T.total(), lim);
    GroupHomSet HG = enumerate_group_homs(H, T.base(), lim);
    GroupLiftReport report;
    report.homs_total = HE.size();
    report.homs_base = HG.size();
    report.injective = true;
    std::map<std::vector<std::size_t>, std::size_t> seen;
    for (std::size_t i = 0; i < HE.size(); ++i) {
        std::vector<std::size_t> composite(H->size());
        for (std::size_t a = 0; a < H->size(); ++a) composite[a] = T.map.map[HE.maps[i][a]];
        auto [it, inserted] = seen.emplace(std::move(composite), i);
        if (!inserted && report.injective) {
            report.injective = false;
            report.collision = std::make_pair(HE.maps[it->second], HE.maps[i]);
        }
    }
    if (T.section.has_value()) {
        bool onto = true;
        for (const auto& beta : HG.maps) {
            std::vector<std::size_t> lift(H->size());
            for (std::size_t a = 0; a < H->size(); ++a) lift[a] = (*T.section)[beta[a]];
            if (!HE.find(lift).has_value()) onto = false;
        }
        report.surjective = onto;
        report.bijective = onto && report.injective;
    }
    return report;
}

/* |G| - 1: the free-abelian rank of the augmentation ideal of Z[G]. */
inline std::size_t group_kahler_rank(const GroupTablePtr& G) { return G->size() - 1; }

}  // namespace beckdiff
