#pragma once

/* Brute-force reference computations the test suites check the engine
 * against. Everything here is deliberately naive and independent of the
 * Groebner division path: plain row reduction over truncated monomial spans. */

#include <map>
#include <optional>
#include <vector>

#include "beckdiff/algebra.hpp"
#include "beckdiff/module_presentation.hpp"

namespace beckdiff::oracles {

using Row = std::vector<Scalar>;

/* In-place row echelon; returns rank. Field scalars only. */
inline std::size_t row_reduce(std::vector<Row>& rows) {
    if (rows.empty()) return 0;
    std::size_t cols = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        Scalar inv = rows[rank][c].inv();
        for (std::size_t j = c; j < cols; ++j) rows[rank][j] = rows[rank][j] * inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c].is_zero()) continue;
            Scalar f = rows[r][c];
            for (std::size_t j = c; j < cols; ++j)
                rows[r][j] = rows[r][j] - rows[rank][j] * f;
        }
        ++rank;
    }
    return rank;
}

/* True iff v lies in the row span: adjoining v must not raise the rank. */
inline bool in_row_span(const std::vector<Row>& rows, const Row& v) {
    std::vector<Row> a = rows;
    std::size_t without = row_reduce(a);
    std::vector<Row> b = rows;
    b.push_back(v);
    std::size_t with = row_reduce(b);
    return with == without;
}

inline std::vector<Monomial> monomials_up_to(std::size_t nvars, std::uint32_t degree) {
    std::vector<Monomial> out;
    std::vector<std::uint32_t> exps(nvars, 0);
    auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
        if (i == nvars) {
            out.push_back(Monomial(exps));
            return;
        }
        for (std::uint32_t e = 0; e <= left; ++e) {
            exps[i] = e;
            self(self, i + 1, left - e);
        }
        exps[i] = 0;
    };
    rec(rec, 0, degree);
    return out;
}

inline Row poly_to_row(const Polynomial& f, const std::map<Monomial, std::size_t>& index,
                       std::size_t cols) {
    Row r(cols, Scalar::zero(f.base()));
    for (const auto& [m, c] : f.terms()) {
        auto it = index.find(m);
        if (it == index.end()) fail(ErrorCode::InvalidInput, "oracle: monomial beyond truncation");
        r[it->second] = c;
    }
    return r;
}

/* Span of { m * g : g in gens, deg(m*g) <= degree } as echelon rows, together
 * with the monomial indexing used. */
inline std::pair<std::vector<Row>, std::map<Monomial, std::size_t>> truncated_ideal_span(
    const std::vector<Polynomial>& gens, VarListPtr vars, ScalarKind base, std::uint32_t degree) {
    std::vector<Monomial> monos = monomials_up_to(vars->size(), degree);
    std::map<Monomial, std::size_t> index;
    for (std::size_t i = 0; i < monos.size(); ++i) index.emplace(monos[i], i);
    std::vector<Row> rows;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        std::uint32_t dg = static_cast<std::uint32_t>(g.total_degree());
        if (dg > degree) continue;
        for (const auto& m : monomials_up_to(vars->size(), degree - dg)) {
            rows.push_back(poly_to_row(g.mul_term(m, Scalar::one(base)), index, monos.size()));
        }
    }
    row_reduce(rows);
    return {std::move(rows), std::move(index)};
}

/* Ideal membership for a zero-dimensional ideal of known quotient dimension
 * delta, by truncated linear algebra. Finding f inside the span certifies
 * membership at any degree. Non-membership is reported once the span's
 * codimension equals delta at three consecutive degrees >= delta - 1 + deg f:
 * a staircase of size delta lives in degrees < delta, so at that point the
 * truncated span has filled out I up to the working degree. */
inline std::optional<bool> ideal_member_oracle(const Polynomial& f,
                                               const std::vector<Polynomial>& gens,
                                               std::size_t delta, std::uint32_t max_degree = 16) {
    if (f.is_zero()) return true;
    std::uint32_t need = static_cast<std::uint32_t>(f.total_degree()) +
                         static_cast<std::uint32_t>(delta == 0 ? 0 : delta - 1);
    std::uint32_t start = static_cast<std::uint32_t>(f.total_degree());
    for (const auto& g : gens)
        if (!g.is_zero()) start = std::max(start, static_cast<std::uint32_t>(g.total_degree()));
    int at_delta = 0;
    for (std::uint32_t d = start; d <= max_degree; ++d) {
        auto [rows, index] = truncated_ideal_span(gens, f.vars_ptr(), f.base(), d);
        if (in_row_span(rows, poly_to_row(f, index, index.size()))) return true;
        std::size_t rank = 0;
        for (const auto& r : rows)
            for (const auto& s : r)
                if (!s.is_zero()) {
                    ++rank;
                    break;
                }
        std::size_t dim = index.size() - rank;
        at_delta = (dim == delta && d >= need) ? at_delta + 1 : 0;
        if (at_delta >= 3) return false;
    }
    return std::nullopt;
}

/* Dimension of k[x]/I by stabilized truncation; nullopt when it does not
 * stabilize below the cap (ideal likely not zero-dimensional). */
inline std::optional<std::size_t> quotient_dimension_oracle(const std::vector<Polynomial>& gens,
                                                            VarListPtr vars, ScalarKind base,
                                                            std::uint32_t max_degree = 14) {
    std::optional<std::size_t> prev;
    int stable = 0;
    for (std::uint32_t d = 1; d <= max_degree; ++d) {
        auto [rows, index] = truncated_ideal_span(gens, vars, base, d);
        // rows are already echelonized: count nonzero rows
        std::size_t rank = 0;
        for (const auto& r : rows)
            for (const auto& s : r)
                if (!s.is_zero()) {
                    ++rank;
                    break;
                }
        std::size_t dim = index.size() - rank;
        if (prev && *prev == dim)
            ++stable;
        else
            stable = 0;
        prev = dim;
        if (stable >= 3) return dim;
    }
    return std::nullopt;
}

/* Zero test for B^n/(relations) with B = k[x]/I finite-dimensional: assemble
 * the k-linear span of all standard-monomial multiples of the relations and
 * compare ranks. Uses only row reduction on top of the ambient reduction. */
inline bool zero_module_oracle(const FpModulePresentation& P) {
    const auto& qb = P.ambient->quotient_basis();
    if (!qb) fail(ErrorCode::InfiniteDimensional, "oracle needs a finite quotient basis");
    std::size_t n = P.rank();
    if (n == 0) return true;
    std::size_t d = qb->size();
    std::map<Monomial, std::size_t> qindex;
    for (std::size_t i = 0; i < d; ++i) qindex.emplace((*qb)[i], i);
    ScalarKind base = P.ambient->base();

    auto to_row = [&](const FreeModuleElement& v) {
        Row r(n * d, Scalar::zero(base));
        for (std::size_t i = 0; i < n; ++i) {
            Polynomial nf = P.ambient->reduce(v.coord(i));
            for (const auto& [m, c] : nf.terms()) r[i * d + qindex.at(m)] = c;
        }
        return r;
    };

    std::vector<Row> rows;
    for (const auto& rel : P.relations) {
        for (const auto& q : *qb) {
            rows.push_back(to_row(rel.mul_term(q, Scalar::one(base))));
        }
    }
    return row_reduce(rows) == n * d;
}

}  // namespace beckdiff::oracles
