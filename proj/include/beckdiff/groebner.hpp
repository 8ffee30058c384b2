#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "beckdiff/free_module.hpp"
#include "beckdiff/limits.hpp"

namespace beckdiff {

/* Groebner engine over submodules of k[x]^r. The ring case is r = 1; the
 * public ring API below wraps it. Every basis element carries its expression
 * in the input generators (the "history"), which is what membership
 * certificates are made of. */

struct ModuleGroebnerBasis {
    MonomialOrder order;
    std::size_t rank = 1;
    std::vector<FreeModuleElement> elements;         // monic, interreduced
    std::vector<std::vector<Polynomial>> history;    // elements[k] = sum_j history[k][j] * generators[j]
    std::vector<FreeModuleElement> generators;       // the input
};

struct ModuleReduction {
    FreeModuleElement remainder;
    /* remainder = input - sum_k cofactors[k] * basis.elements[k] */
    std::vector<Polynomial> cofactors;
};

namespace detail {

inline void enforce_limits(const FreeModuleElement& v, const Limits& lim) {
    if (v.total_degree() > lim.max_total_degree)
        fail(ErrorCode::ResourceLimit,
             "intermediate degree " + std::to_string(v.total_degree()) + " exceeds bound " +
                 std::to_string(lim.max_total_degree));
    if (v.term_count() > lim.max_terms)
        fail(ErrorCode::ResourceLimit, "intermediate term count exceeds bound");
}

/* Full reduction: every module term of the result is irreducible modulo the
 * leading terms of the basis. Deterministic: always cancels the greatest
 * reducible term against the first matching basis element. */
inline ModuleReduction reduce_full(const FreeModuleElement& v,
                                   const std::vector<FreeModuleElement>& basis,
                                   const MonomialOrder& ord, const Limits& lim) {
    VarListPtr vars = v.vars_ptr();
    ScalarKind base = v.base();
    FreeModuleElement work = v;
    FreeModuleElement rest(v.rank(), vars, base);  // irreducible part, accumulated
    ModuleReduction out{FreeModuleElement(v.rank(), vars, base),
                        std::vector<Polynomial>(basis.size(), Polynomial::zero(vars, base))};
    while (!work.is_zero()) {
        ModuleTerm t = work.leading_term(ord);
        bool reduced = false;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if (basis[k].is_zero()) continue;
            ModuleTerm lt = basis[k].leading_term(ord);
            if (lt.pos != t.pos || !lt.mono.divides(t.mono)) continue;
            Scalar c = t.coeff / lt.coeff;
            Monomial q = t.mono.quotient(lt.mono);
            work = work - basis[k].mul_term(q, c);
            out.cofactors[k] = out.cofactors[k] + Polynomial::term(vars, q, c);
            enforce_limits(work, lim);
            reduced = true;
            break;
        }
        if (!reduced) {
            // move the irreducible leading term into the remainder
            FreeModuleElement tm(v.rank(), vars, base);
            std::vector<Polynomial> coords = tm.coords();
            coords[t.pos] = Polynomial::term(vars, t.mono, t.coeff);
            tm = FreeModuleElement(coords);
            rest = rest + tm;
            work = work - tm;
        }
    }
    out.remainder = rest;
    return out;
}

struct Pair {
    std::size_t i, j;
    Monomial lcm;
    std::uint64_t sugar;
};

}  // namespace detail

/* Buchberger with sugar-strategy pair selection and the chain criterion; the
 * coprime-lead criterion is applied only at rank 1, where it is valid. The
 * result is the unique reduced basis (elements monic, no head divisible by
 * another head, tails fully reduced), sorted by leading term ascending. */
inline ModuleGroebnerBasis module_buchberger(std::vector<FreeModuleElement> gens,
                                             const MonomialOrder& order, std::size_t rank,
                                             VarListPtr vars, ScalarKind base,
                                             const Limits& lim = Limits{}) {
    if (!base.is_field()) fail(ErrorCode::NonFieldBase, "Groebner bases require a field base");
    for (const auto& g : gens) {
        if (g.rank() != rank) fail(ErrorCode::RankMismatch, "generator rank mismatch");
        if (!(g.base() == base))
            fail(ErrorCode::MixedContext, "generator base differs from ambient base");
    }

    ModuleGroebnerBasis gb;
    gb.order = order;
    gb.rank = rank;
    gb.generators = gens;

    std::vector<FreeModuleElement> basis;
    std::vector<std::vector<Polynomial>> hist;
    std::vector<std::uint64_t> sugar;
    const Polynomial pzero = Polynomial::zero(vars, base);

    auto push_element = [&](const FreeModuleElement& e, std::vector<Polynomial> h, std::uint64_t sug) {
        ModuleTerm lt = e.leading_term(order);
        Scalar c = lt.coeff.inv();
        basis.push_back(e.scaled(c));
        for (auto& p : h) p = p.scaled(c);
        hist.push_back(std::move(h));
        sugar.push_back(sug);
    };

    for (std::size_t j = 0; j < gens.size(); ++j) {
        if (gens[j].is_zero()) continue;
        detail::enforce_limits(gens[j], lim);
        std::vector<Polynomial> h(gens.size(), pzero);
        h[j] = Polynomial::one(vars, base);
        push_element(gens[j], std::move(h), gens[j].total_degree());
    }

    const bool product_criterion = (rank == 1);
    std::deque<detail::Pair> pairs;
    std::set<std::pair<std::size_t, std::size_t>> treated;

    auto add_pairs_for = [&](std::size_t n) {
        ModuleTerm ln = basis[n].leading_term(order);
        for (std::size_t i = 0; i < n; ++i) {
            ModuleTerm li = basis[i].leading_term(order);
            if (li.pos != ln.pos) continue;
            Monomial l = Monomial::lcm(li.mono, ln.mono);
            std::uint64_t s = std::max(sugar[i] + l.total_degree() - li.mono.total_degree(),
                                       sugar[n] + l.total_degree() - ln.mono.total_degree());
            pairs.push_back({i, n, l, s});
        }
    };

    for (std::size_t n = 1; n < basis.size(); ++n) add_pairs_for(n);

    while (!pairs.empty()) {
        // sugar-first selection; ties by lcm order, then by index
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs.size(); ++k) {
            const auto& a = pairs[k];
            const auto& b = pairs[best];
            if (a.sugar != b.sugar) {
                if (a.sugar < b.sugar) best = k;
                continue;
            }
            int c = order.compare(a.lcm, b.lcm);
            if (c != 0) {
                if (c < 0) best = k;
                continue;
            }
            if (std::tie(a.i, a.j) < std::tie(b.i, b.j)) best = k;
        }
        detail::Pair pr = pairs[best];
        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
        treated.insert({pr.i, pr.j});

        ModuleTerm li = basis[pr.i].leading_term(order);
        ModuleTerm lj = basis[pr.j].leading_term(order);

        if (product_criterion && pr.lcm == li.mono * lj.mono) continue;

        // chain criterion: some k with lead dividing the lcm, both side pairs treated
        bool skip = false;
        for (std::size_t k = 0; k < basis.size() && !skip; ++k) {
            if (k == pr.i || k == pr.j) continue;
            ModuleTerm lk = basis[k].leading_term(order);
            if (lk.pos != li.pos || !lk.mono.divides(pr.lcm)) continue;
            auto key = [&](std::size_t a, std::size_t b) {
                return std::make_pair(std::min(a, b), std::max(a, b));
            };
            if (treated.count(key(pr.i, k)) && treated.count(key(pr.j, k))) skip = true;
        }
        if (skip) continue;

        // S-element: both summands are monic multiples cancelling at the lcm
        FreeModuleElement s = basis[pr.i].mul_term(pr.lcm.quotient(li.mono), Scalar::one(base)) -
                              basis[pr.j].mul_term(pr.lcm.quotient(lj.mono), Scalar::one(base));
        detail::enforce_limits(s, lim);
        ModuleReduction red = detail::reduce_full(s, basis, order, lim);
        if (red.remainder.is_zero()) continue;

        std::vector<Polynomial> h(gens.size(), pzero);
        auto accumulate = [&](std::size_t src, const Polynomial& mult) {
            for (std::size_t j = 0; j < gens.size(); ++j) h[j] = h[j] + hist[src][j] * mult;
        };
        accumulate(pr.i, Polynomial::term(vars, pr.lcm.quotient(li.mono), Scalar::one(base)));
        accumulate(pr.j, Polynomial::term(vars, pr.lcm.quotient(lj.mono), Scalar::one(base)).scaled(
                             Scalar::one(base).neg()));
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if (red.cofactors[k].is_zero()) continue;
            accumulate(k, -red.cofactors[k]);
        }
        push_element(red.remainder, std::move(h), std::max(pr.sugar, red.remainder.total_degree()));
        add_pairs_for(basis.size() - 1);
    }

    // interreduce: drop elements whose head divides away, then reduce tails
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        ModuleTerm li = basis[i].leading_term(order);
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            ModuleTerm ljt = basis[j].leading_term(order);
            if (ljt.pos != li.pos || !ljt.mono.divides(li.mono)) continue;
            if (ljt.mono == li.mono && j > i) continue;  // equal heads: keep the earlier one
            redundant = true;
        }
        if (!redundant) keep.push_back(i);
    }

    std::vector<FreeModuleElement> kept;
    std::vector<std::vector<Polynomial>> kept_hist;
    for (std::size_t i : keep) {
        kept.push_back(basis[i]);
        kept_hist.push_back(hist[i]);
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            std::vector<FreeModuleElement> others;
            std::vector<std::size_t> omap;
            for (std::size_t j = 0; j < kept.size(); ++j)
                if (j != i) {
                    others.push_back(kept[j]);
                    omap.push_back(j);
                }
            ModuleReduction red = detail::reduce_full(kept[i], others, order, lim);
            if (red.remainder == kept[i]) continue;
            changed = true;
            std::vector<Polynomial> h = kept_hist[i];
            for (std::size_t k = 0; k < others.size(); ++k) {
                if (red.cofactors[k].is_zero()) continue;
                for (std::size_t j = 0; j < gens.size(); ++j)
                    h[j] = h[j] - kept_hist[omap[k]][j] * red.cofactors[k];
            }
            ModuleTerm lt = red.remainder.leading_term(order);
            Scalar c = lt.coeff.inv();
            kept[i] = red.remainder.scaled(c);
            for (auto& p : h) p = p.scaled(c);
            kept_hist[i] = std::move(h);
        }
    }

    // canonical element order: ascending leading term
    std::vector<std::size_t> perm(kept.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        ModuleTerm la = kept[a].leading_term(order), lb = kept[b].leading_term(order);
        return order.compare(la.pos, la.mono, lb.pos, lb.mono) < 0;
    });
    for (std::size_t i : perm) {
        gb.elements.push_back(kept[i]);
        gb.history.push_back(kept_hist[i]);
    }
    return gb;
}

inline FreeModuleElement module_normal_form(const FreeModuleElement& v,
                                            const ModuleGroebnerBasis& gb,
                                            const Limits& lim = Limits{}) {
    if (v.rank() != gb.rank) fail(ErrorCode::RankMismatch, "element rank differs from basis rank");
    return detail::reduce_full(v, gb.elements, gb.order, lim).remainder;
}

inline ModuleReduction module_normal_form_with_cofactors(const FreeModuleElement& v,
                                                         const ModuleGroebnerBasis& gb,
                                                         const Limits& lim = Limits{}) {
    if (v.rank() != gb.rank) fail(ErrorCode::RankMismatch, "element rank differs from basis rank");
    return detail::reduce_full(v, gb.elements, gb.order, lim);
}

/* Cofactors over the original generators: v - remainder = sum_j out[j] * generators[j]. */
inline std::vector<Polynomial> cofactors_over_generators(const ModuleReduction& red,
                                                         const ModuleGroebnerBasis& gb) {
    VarListPtr vars = red.remainder.vars_ptr();
    ScalarKind base = red.remainder.base();
    std::vector<Polynomial> out(gb.generators.size(), Polynomial::zero(vars, base));
    for (std::size_t k = 0; k < gb.elements.size(); ++k) {
        if (red.cofactors[k].is_zero()) continue;
        for (std::size_t j = 0; j < gb.generators.size(); ++j)
            out[j] = out[j] + gb.history[k][j] * red.cofactors[k];
    }
    return out;
}

/* ---------------------------------------------------------------- ring API */

struct GroebnerBasis {
    MonomialOrder order;
    std::vector<Polynomial> elements;  // monic, reduced
    ModuleGroebnerBasis core;          // rank-1 engine state (history included)
};

namespace detail {
inline FreeModuleElement wrap1(const Polynomial& f) { return FreeModuleElement({f}); }
}  // namespace detail

inline GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                                VarListPtr vars, ScalarKind base, const Limits& lim = Limits{}) {
    std::vector<FreeModuleElement> g;
    for (const auto& f : gens) {
        if (!(f.base() == base) || !(f.vars() == *vars))
            fail(ErrorCode::MixedContext, "generators share no common context");
        g.push_back(detail::wrap1(f));
    }
    GroebnerBasis out;
    out.order = order;
    out.core = module_buchberger(std::move(g), order, 1, vars, base, lim);
    for (const auto& e : out.core.elements) out.elements.push_back(e.coord(0));
    return out;
}

inline GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                                const Limits& lim = Limits{}) {
    if (gens.empty()) fail(ErrorCode::InvalidInput, "cannot infer context from an empty generator list");
    return buchberger(gens, order, gens.front().vars_ptr(), gens.front().base(), lim);
}

inline Polynomial normal_form(const Polynomial& f, const GroebnerBasis& gb,
                              const Limits& lim = Limits{}) {
    return detail::reduce_full(detail::wrap1(f), gb.core.elements, gb.order, lim).remainder.coord(0);
}

inline bool ideal_member(const Polynomial& f, const std::vector<Polynomial>& gens,
                         const MonomialOrder& order, const Limits& lim = Limits{}) {
    if (f.is_zero()) return true;
    GroebnerBasis gb = buchberger(gens, order, f.vars_ptr(), f.base(), lim);
    return normal_form(f, gb, lim).is_zero();
}

/* Standard monomials of a reduced basis: all monomials not divisible by any
 * leading monomial. Returns nullopt when that set is infinite. Listing order:
 * ascending total degree, lexicographically descending exponents within a
 * degree. */
inline std::optional<std::vector<Monomial>> quotient_basis(const GroebnerBasis& gb,
                                                           std::size_t nvars) {
    std::vector<Monomial> leads;
    for (const auto& f : gb.elements) {
        if (f.is_zero()) continue;
        auto [m, c] = f.leading_term(gb.order);
        if (m.is_one()) return std::vector<Monomial>{};  // unit ideal: zero ring
        leads.push_back(m);
    }
    std::vector<std::uint32_t> bound(nvars, 0);
    for (std::size_t i = 0; i < nvars; ++i) {
        bool found = false;
        for (const auto& m : leads) {
            bool pure = m.exp(i) > 0;
            for (std::size_t j = 0; j < nvars && pure; ++j)
                if (j != i && m.exp(j) != 0) pure = false;
            if (pure && (!found || m.exp(i) < bound[i])) {
                bound[i] = m.exp(i);
                found = true;
            }
        }
        if (!found) return std::nullopt;  // variable i unbounded
    }

    std::vector<Monomial> out;
    std::vector<std::uint32_t> exps(nvars, 0);
    auto emit = [&](auto&& self, std::size_t i) -> void {
        if (i == nvars) {
            Monomial m(exps);
            for (const auto& l : leads)
                if (l.divides(m)) return;
            out.push_back(m);
            return;
        }
        for (std::uint32_t e = 0; e < bound[i]; ++e) {
            exps[i] = e;
            self(self, i + 1);
        }
        exps[i] = 0;
    };
    emit(emit, 0);

    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
        return b.exps() < a.exps();  // lex-descending within a degree
    });
    return out;
}

}  // namespace beckdiff
