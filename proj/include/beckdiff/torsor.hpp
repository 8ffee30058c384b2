#pragma once

#include <set>

#include "beckdiff/beck_module.hpp"

namespace beckdiff {

/* A verified Beck torsor: a surjection gamma: Z -> Y whose kernel is
 * square-zero, the Beck module M = Y + K it is a torsor for, and the action
 * tau((c,k), z) = z + k. All torsor laws are established by verify_torsor. */
struct TorsorCandidate {
    TableHom map;                              // gamma: Z -> Y, verified surjection
    BeckModule beck;                           // M = Y + K over Y
    std::vector<std::size_t> kernel_elements;  // module index -> element of Z
    bool split = false;
    std::optional<std::vector<std::size_t>> section;  // ring-hom section Y -> Z when split

    const RingTablePtr& total() const { return map.domain; }
    const RingTablePtr& base() const { return map.codomain; }

    /* tau: M x_Y Z -> Z on indices (e in M-total over gamma(z)). */
    std::size_t tau(std::size_t m_total, std::size_t z) const {
        return map.domain->add(z, kernel_elements[beck.m_part(m_total)]);
    }
};

namespace detail {

/* Additive generating sequence by greedy maximal order; the tuple space
 * sum n_i g_i (n_i < ord g_i) then covers the whole group. */
inline std::vector<std::size_t> additive_generators(const FiniteRingTable& C,
                                                    std::vector<std::size_t>& orders) {
    std::size_t n = C.size();
    auto ord = [&](std::size_t a) {
        std::size_t k = 1, acc = a;
        while (acc != C.zero()) {
            acc = C.add(acc, a);
            ++k;
        }
        return k;
    };
    std::vector<bool> covered(n, false);
    covered[C.zero()] = true;
    std::size_t covered_count = 1;
    std::vector<std::size_t> gens;
    while (covered_count < n) {
        std::size_t best = n, best_ord = 0;
        for (std::size_t a = 0; a < n; ++a) {
            if (covered[a]) continue;
            std::size_t o = ord(a);
            if (o > best_ord) {
                best_ord = o;
                best = a;
            }
        }
        gens.push_back(best);
        orders.push_back(best_ord);
        // close the covered set under adding the new generator
        std::vector<std::size_t> snapshot;
        for (std::size_t a = 0; a < n; ++a)
            if (covered[a]) snapshot.push_back(a);
        for (std::size_t a : snapshot) {
            std::size_t acc = a;
            for (std::size_t k = 1; k < best_ord; ++k) {
                acc = C.add(acc, best);
                if (!covered[acc]) {
                    covered[acc] = true;
                    ++covered_count;
                }
            }
        }
    }
    return gens;
}

/* Exhaustive search for a ring-homomorphism section of q, fiber-restricted on
 * an additive generating set and extended additively. */
inline std::optional<std::vector<std::size_t>> find_section(const TableHom& q) {
    const auto& Z = *q.domain;
    const auto& C = *q.codomain;
    std::size_t n = C.size();

    std::vector<std::vector<std::size_t>> fiber(n);
    for (std::size_t z = 0; z < Z.size(); ++z) fiber[q.map[z]].push_back(z);

    std::vector<std::size_t> orders;
    std::vector<std::size_t> gens = additive_generators(C, orders);
    std::size_t k = gens.size();

    std::vector<std::size_t> choice(k, 0);
    while (true) {
        // candidate images of the generators, restricted to their fibers
        std::vector<std::size_t> s(n, Z.size());
        s[C.zero()] = Z.zero();
        bool consistent = true;
        // walk all tuples sum n_i g_i and propagate values
        std::vector<std::size_t> tup(k, 0);
        while (consistent) {
            std::size_t elem = C.zero(), val = Z.zero();
            for (std::size_t i = 0; i < k; ++i) {
                std::size_t g = gens[i], v = fiber[gens[i]][choice[i]];
                for (std::size_t t = 0; t < tup[i]; ++t) {
                    elem = C.add(elem, g);
                    val = Z.add(val, v);
                }
            }
            if (s[elem] == Z.size())
                s[elem] = val;
            else if (s[elem] != val)
                consistent = false;
            // advance tuple odometer
            std::size_t i = k;
            bool done = true;
            while (i > 0) {
                --i;
                if (++tup[i] < orders[i]) {
                    done = false;
                    break;
                }
                tup[i] = 0;
            }
            if (done) break;
        }
        if (consistent) {
            bool hom = s[C.one()] == Z.one();
            for (std::size_t a = 0; a < n && hom; ++a) {
                if (q.map[s[a]] != a) hom = false;
                for (std::size_t b = 0; b < n && hom; ++b) {
                    if (s[C.add(a, b)] != Z.add(s[a], s[b])) hom = false;
                    if (s[C.mul(a, b)] != Z.mul(s[a], s[b])) hom = false;
                }
            }
            if (hom && C.base().kind == BaseKind::Fp) {
                for (std::size_t r = 0; r < C.base().p && hom; ++r)
                    if (s[C.scalar_images()[r]] != Z.scalar_images()[r]) hom = false;
            }
            if (hom) return s;
        }
        // advance the generator-image odometer
        std::size_t i = k;
        bool done = true;
        while (i > 0) {
            --i;
            if (++choice[i] < fiber[gens[i]].size()) {
                done = false;
                break;
            }
            choice[i] = 0;
        }
        if (done || k == 0) break;
    }
    if (k == 0) {
        // C is the zero ring; the unique map is a section iff Z is too
        if (Z.size() == 1) return std::vector<std::size_t>{Z.zero()};
    }
    return std::nullopt;
}

/* Coequalizer spot check: the ideal generated by the differences of
 * kernel-pair components must be exactly ker q. */
inline bool coequalizer_matches_kernel(const TableHom& q, const std::vector<std::size_t>& kernel) {
    const auto& Z = *q.domain;
    std::set<std::size_t> ideal;
    ideal.insert(Z.zero());
    std::vector<std::size_t> work;
    for (std::size_t a = 0; a < Z.size(); ++a)
        for (std::size_t b = 0; b < Z.size(); ++b)
            if (q.map[a] == q.map[b]) {
                std::size_t d = Z.sub(a, b);
                if (ideal.insert(d).second) work.push_back(d);
            }
    while (!work.empty()) {
        std::size_t x = work.back();
        work.pop_back();
        for (std::size_t z = 0; z < Z.size(); ++z) {
            std::size_t m = Z.mul(z, x);
            if (ideal.insert(m).second) work.push_back(m);
        }
        for (std::size_t y : std::vector<std::size_t>(ideal.begin(), ideal.end())) {
            std::size_t s = Z.add(x, y);
            if (ideal.insert(s).second) work.push_back(s);
        }
    }
    std::set<std::size_t> ker(kernel.begin(), kernel.end());
    return ideal == ker;
}

}  // namespace detail

struct TorsorReport {
    TorsorCandidate candidate;
    std::size_t fiber_product_size = 0;  // |M x_Y Z| = |Z x_Y Z|, verified equal
    bool coequalizer_ok = false;
};

/* Establishes that a surjection of tables is a Beck torsor: the kernel must
 * be square-zero (else KernelSquareNonzero); the Beck module is the trivial
 * extension of the kernel module; the action laws, the morphism property of
 * tau over Y, and bijectivity of (tau, pi_Z) are all checked elementwise. */
inline TorsorReport verify_torsor(const TableHom& q) {
    const auto& Z = *q.domain;
    const auto& Y = *q.codomain;

    KernelData K = kernel_of_surjection(q);
    if (!K.square_zero)
        fail(ErrorCode::KernelSquareNonzero,
             "the kernel of " + std::to_string(Z.size()) + " -> " + std::to_string(Y.size()) +
                 " has a nonzero product");

    TorsorReport report;
    report.candidate.map = q;
    report.candidate.beck = trivial_extension(q.codomain, *K.module);
    report.candidate.kernel_elements = K.elements;
    const TorsorCandidate& T = report.candidate;
    const BeckModule& M = T.beck;

    // fiber products as explicit pair lists
    std::vector<std::pair<std::size_t, std::size_t>> mz, zz;
    for (std::size_t e = 0; e < M.total->size(); ++e)
        for (std::size_t z = 0; z < Z.size(); ++z)
            if (M.projection[e] == q.map[z]) mz.emplace_back(e, z);
    for (std::size_t z1 = 0; z1 < Z.size(); ++z1)
        for (std::size_t z2 = 0; z2 < Z.size(); ++z2)
            if (q.map[z1] == q.map[z2]) zz.emplace_back(z1, z2);

    // tau is a morphism over Y
    for (const auto& [e, z] : mz)
        if (q.map[T.tau(e, z)] != q.map[z])
            fail(ErrorCode::NotAModule, "action does not commute with the projection");

    // action laws: unit and additivity along the fibers
    for (const auto& [e, z] : mz) {
        std::size_t c = q.map[z];
        if (T.tau(M.unit_section[c], z) != z)
            fail(ErrorCode::NotAModule, "zero section does not act trivially");
        for (std::size_t m2 = 0; m2 < M.module.size(); ++m2) {
            std::size_t e2 = M.pair_index(c, m2);
            if (T.tau(M.fiber_add(e, e2), z) != T.tau(e, T.tau(e2, z)))
                fail(ErrorCode::NotAModule, "action is not compatible with fiber addition");
        }
    }

    // tau respects the ring structure of the fiber product
    for (const auto& u : mz)
        for (const auto& v : mz) {
            std::size_t sum = T.tau(M.total->add(u.first, v.first), Z.add(u.second, v.second));
            if (sum != Z.add(T.tau(u.first, u.second), T.tau(v.first, v.second)))
                fail(ErrorCode::NotAModule, "action morphism is not additive");
            std::size_t prod = T.tau(M.total->mul(u.first, v.first), Z.mul(u.second, v.second));
            if (prod != Z.mul(T.tau(u.first, u.second), T.tau(v.first, v.second)))
                fail(ErrorCode::NotAModule, "action morphism is not multiplicative");
        }

    // (tau, pi_Z) is a bijection M x_Y Z -> Z x_Y Z
    if (mz.size() != zz.size())
        fail(ErrorCode::NotAModule, "fiber products have different cardinalities");
    std::set<std::pair<std::size_t, std::size_t>> image;
    std::set<std::pair<std::size_t, std::size_t>> target(zz.begin(), zz.end());
    for (const auto& [e, z] : mz) {
        auto pair = std::make_pair(T.tau(e, z), z);
        if (!target.count(pair) || !image.insert(pair).second)
            fail(ErrorCode::NotAModule, "(action, projection) is not a bijection");
    }
    report.fiber_product_size = mz.size();

    report.coequalizer_ok = detail::coequalizer_matches_kernel(q, K.elements);
    if (!report.coequalizer_ok)
        fail(ErrorCode::NotSurjective, "kernel-pair coequalizer does not recover the base");

    report.candidate.section = detail::find_section(q);
    report.candidate.split = report.candidate.section.has_value();
    return report;
}

struct FiberBijectionReport {
    std::size_t lhs_size = 0;  // |Hom(X,M) x_Hom(X,Y) Hom(X,Z)|
    std::size_t rhs_size = 0;  // |Hom(X,Z) x_Hom(X,Y) Hom(X,Z)|
    bool bijective = false;
};

/* Materializes both Hom-set fiber products for a test object X and verifies
 * that (alpha_M, alpha_Z) -> (tau(alpha_M, alpha_Z), alpha_Z) is a bijection. */
inline FiberBijectionReport torsor_fiber_bijection(const AlgebraPtr& X, const TorsorCandidate& T,
                                                   const Limits& lim = Limits{}) {
    HomSet HM = enumerate_homs(X, T.beck.total, lim);
    HomSet HZ = enumerate_homs(X, T.total(), lim);

    auto proj_m = [&](const std::vector<std::size_t>& img) {
        std::vector<std::size_t> out;
        out.reserve(img.size());
        for (std::size_t v : img) out.push_back(T.beck.projection[v]);
        return out;
    };
    auto proj_z = [&](const std::vector<std::size_t>& img) { return compose(T.map, img); };

    FiberBijectionReport report;
    std::set<std::pair<std::size_t, std::size_t>> image;
    std::set<std::pair<std::size_t, std::size_t>> target;
    for (std::size_t i = 0; i < HZ.size(); ++i)
        for (std::size_t j = 0; j < HZ.size(); ++j)
            if (proj_z(HZ.images[i]) == proj_z(HZ.images[j])) {
                target.emplace(i, j);
            }
    report.rhs_size = target.size();

    bool ok = true;
    for (std::size_t i = 0; i < HM.size(); ++i)
        for (std::size_t j = 0; j < HZ.size(); ++j) {
            if (proj_m(HM.images[i]) != proj_z(HZ.images[j])) continue;
            ++report.lhs_size;
            // tau applied generatorwise gives the composite hom
            std::vector<std::size_t> tz(HZ.images[j].size());
            for (std::size_t g = 0; g < tz.size(); ++g)
                tz[g] = T.tau(HM.images[i][g], HZ.images[j][g]);
            auto found = HZ.find(tz);
            if (!found.has_value()) {
                ok = false;
                continue;
            }
            if (!image.emplace(*found, j).second) ok = false;  // injectivity
        }
    report.bijective = ok && report.lhs_size == report.rhs_size && image == target;
    return report;
}

}  // namespace beckdiff
