#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "beckdiff/finite_ring.hpp"
#include "beckdiff/module_presentation.hpp"

namespace beckdiff {

/* A finite module over a finite ring table: abelian group table plus an
 * action table, all axioms verified exhaustively at construction. */
class CModuleTable {
  public:
    static CModuleTable create(RingTablePtr ring, std::size_t size, std::vector<std::size_t> add,
                               std::size_t zero, std::vector<std::size_t> act,
                               std::vector<std::string> labels = {}) {
        CModuleTable m;
        m.ring_ = std::move(ring);
        m.size_ = size;
        m.add_ = std::move(add);
        m.zero_ = zero;
        m.act_ = std::move(act);
        m.labels_ = std::move(labels);
        m.verify();
        return m;
    }

    static CModuleTable zero_module(RingTablePtr ring) {
        std::size_t n = ring->size();
        return create(std::move(ring), 1, {0}, 0, std::vector<std::size_t>(n, 0), {"0"});
    }

    /* The ring as a module over itself. */
    static CModuleTable regular_module(RingTablePtr ring) {
        std::size_t n = ring->size();
        std::vector<std::size_t> act(n * n);
        std::vector<std::string> labels(n);
        for (std::size_t c = 0; c < n; ++c) {
            labels[c] = ring->label(c);
            for (std::size_t k = 0; k < n; ++k) act[c * n + k] = ring->mul(c, k);
        }
        return create(ring, n, ring->add_table(), ring->zero(), std::move(act), std::move(labels));
    }

    const RingTablePtr& ring() const { return ring_; }
    std::size_t size() const { return size_; }
    std::size_t zero() const { return zero_; }
    std::size_t add(std::size_t a, std::size_t b) const { return add_[a * size_ + b]; }
    std::size_t neg(std::size_t a) const { return neg_[a]; }
    std::size_t act(std::size_t c, std::size_t k) const { return act_[c * size_ + k]; }
    const std::vector<std::size_t>& add_table() const { return add_; }
    const std::vector<std::size_t>& action_table() const { return act_; }

    std::string label(std::size_t i) const {
        if (i < labels_.size() && !labels_[i].empty()) return labels_[i];
        return "#" + std::to_string(i);
    }
    const std::vector<std::string>& labels() const { return labels_; }

    bool same_tables(const CModuleTable& o) const {
        return size_ == o.size_ && add_ == o.add_ && zero_ == o.zero_ && act_ == o.act_;
    }

  private:
    void verify() const {
        std::size_t m = size_, n = ring_->size();
        if (m == 0) fail(ErrorCode::NotAModule, "empty module table");
        if (add_.size() != m * m || act_.size() != n * m)
            fail(ErrorCode::ShapeMismatch, "module table shape mismatch");
        for (std::size_t v : add_)
            if (v >= m) fail(ErrorCode::InvalidInput, "module addition entry out of range");
        for (std::size_t v : act_)
            if (v >= m) fail(ErrorCode::InvalidInput, "module action entry out of range");
        if (zero_ >= m) fail(ErrorCode::InvalidInput, "module zero out of range");

        neg_.assign(m, m);
        for (std::size_t a = 0; a < m; ++a) {
            if (add(zero_, a) != a) fail(ErrorCode::NotAModule, "module zero is not an identity");
            for (std::size_t b = 0; b < m; ++b) {
                if (add(a, b) != add(b, a)) fail(ErrorCode::NotAModule, "module addition not commutative");
                if (add(a, b) == zero_) neg_[a] = b;
            }
            if (neg_[a] == m) fail(ErrorCode::NotAModule, "module element without inverse");
        }
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                for (std::size_t c = 0; c < m; ++c)
                    if (add(add(a, b), c) != add(a, add(b, c)))
                        fail(ErrorCode::NotAModule, "module addition not associative");

        for (std::size_t k = 0; k < m; ++k)
            if (act(ring_->one(), k) != k)
                fail(ErrorCode::NotAModule, "unit action fails at " + label(k));
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t k = 0; k < m; ++k) {
                for (std::size_t c2 = 0; c2 < n; ++c2) {
                    if (act(ring_->mul(c, c2), k) != act(c, act(c2, k)))
                        fail(ErrorCode::NotAModule, "action not associative at (" +
                                                        ring_->label(c) + "*" + ring_->label(c2) +
                                                        ", " + label(k) + ")");
                    if (act(ring_->add(c, c2), k) != add(act(c, k), act(c2, k)))
                        fail(ErrorCode::NotAModule, "action not additive in the scalar");
                }
                for (std::size_t k2 = 0; k2 < m; ++k2)
                    if (act(c, add(k, k2)) != add(act(c, k), act(c, k2)))
                        fail(ErrorCode::NotAModule, "action not additive in the module");
            }
    }

    RingTablePtr ring_;
    std::size_t size_ = 0;
    std::vector<std::size_t> add_;
    std::size_t zero_ = 0;
    std::vector<std::size_t> act_;
    std::vector<std::string> labels_;
    mutable std::vector<std::size_t> neg_;
};

/* Kernel of a surjective table homomorphism, with the square-zero flag and,
 * when square-zero, the induced module structure over the codomain. */
struct KernelData {
    std::vector<std::size_t> elements;        // indices into the domain table, ascending
    std::vector<std::size_t> index_of;        // domain index -> kernel position (or npos)
    bool square_zero = false;
    std::optional<CModuleTable> module;       // present iff square_zero

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

inline KernelData kernel_of_surjection(const TableHom& q) {
    const auto& D = *q.domain;
    const auto& C = *q.codomain;
    if (!is_surjective(q)) fail(ErrorCode::NotSurjective, "the map misses part of the codomain");

    KernelData K;
    K.index_of.assign(D.size(), KernelData::npos);
    for (std::size_t d = 0; d < D.size(); ++d)
        if (q.map[d] == C.zero()) {
            K.index_of[d] = K.elements.size();
            K.elements.push_back(d);
        }

    K.square_zero = true;
    for (std::size_t a : K.elements)
        for (std::size_t b : K.elements)
            if (D.mul(a, b) != D.zero()) {
                K.square_zero = false;
                return K;
            }

    // induced C-module structure: c.k = d*k for any preimage d of c
    std::size_t m = K.elements.size();
    std::vector<std::size_t> add(m * m), act(C.size() * m, KernelData::npos);
    std::vector<std::string> labels(m);
    for (std::size_t i = 0; i < m; ++i) {
        labels[i] = D.label(K.elements[i]);
        for (std::size_t j = 0; j < m; ++j)
            add[i * m + j] = K.index_of[D.add(K.elements[i], K.elements[j])];
    }
    for (std::size_t d = 0; d < D.size(); ++d) {
        std::size_t c = q.map[d];
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t v = K.index_of[D.mul(d, K.elements[i])];
            std::size_t& slot = act[c * m + i];
            if (slot == KernelData::npos) {
                slot = v;
            } else if (slot != v) {
                // all preimages of c must act the same way
                fail(ErrorCode::NotAModule, "kernel action depends on the chosen preimage of " +
                                                C.label(c));
            }
        }
    }
    std::size_t zero = K.index_of[D.zero()];
    K.module = CModuleTable::create(q.codomain, m, std::move(add), zero, std::move(act),
                                    std::move(labels));
    return K;
}

inline KernelData kernel_of_surjection(RingTablePtr domain, RingTablePtr codomain,
                                       std::vector<std::size_t> map) {
    return kernel_of_surjection(verify_table_hom(std::move(domain), std::move(codomain), std::move(map)));
}

/* Finite realization of a finitely presented module over a zero-dimensional
 * Fp-algebra: the quotient F_p^(n*d) / (relation span), with elements indexed
 * over the free coordinates of the reduced echelon form. Retains the echelon
 * data so presented elements can be located in the table afterwards. The ring
 * argument must be the finite table of the presentation's ambient algebra. */
class PresentedModuleTable {
  public:
    PresentedModuleTable(const FpModulePresentation& P, RingTablePtr ring,
                         const Limits& lim = Limits{})
        : table_(build(P, std::move(ring), lim, *this)) {}

    const CModuleTable& table() const { return table_; }

    /* Index of the class of a free-module element (rank must match). */
    std::size_t index_of(const FreeModuleElement& v) const {
        return encode(reduce_vec(to_vec(v)));
    }

    /* Index of the class of the basis vector e_i. */
    std::size_t generator_image(std::size_t i) const {
        return index_of(FreeModuleElement::basis_vector(n_, i, vars_, base_));
    }

  private:
    static CModuleTable build(const FpModulePresentation& P, RingTablePtr ring, const Limits& lim,
                              PresentedModuleTable& self);

    std::vector<std::size_t> to_vec(const FreeModuleElement& v) const {
        std::vector<std::size_t> row(n_ * d_, 0);
        for (std::size_t i = 0; i < n_; ++i) {
            Polynomial nf = ambient_->reduce(v.coord(i));
            for (const auto& [mono, c] : nf.terms()) {
                bool found = false;
                for (std::size_t t = 0; t < d_; ++t)
                    if (qb_[t] == mono) {
                        row[i * d_ + t] = c.num().get_ui();
                        found = true;
                        break;
                    }
                if (!found) fail(ErrorCode::InvalidInput, "internal: reduction left the basis span");
            }
        }
        return row;
    }

    std::vector<std::size_t> reduce_vec(std::vector<std::size_t> v) const {
        std::size_t N = n_ * d_;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            std::size_t c = pivot_col_[i];
            if (v[c] == 0) continue;
            std::size_t f = v[c];
            for (std::size_t j = 0; j < N; ++j)
                v[j] = modp(static_cast<long>(v[j]) - static_cast<long>(f * rows_[i][j]));
        }
        return v;
    }

    std::size_t encode(const std::vector<std::size_t>& canonical) const {
        std::size_t idx = 0, w = 1;
        for (std::size_t fc : free_cols_) {
            idx += canonical[fc] * w;
            w *= p_;
        }
        return idx;
    }

    std::size_t modp(long v) const {
        long p = static_cast<long>(p_);
        return static_cast<std::size_t>(((v % p) + p) % p);
    }

    AlgebraPtr ambient_;
    VarListPtr vars_;
    ScalarKind base_ = ScalarKind::integers();
    std::vector<Monomial> qb_;
    std::size_t p_ = 0, d_ = 0, n_ = 0;
    std::vector<std::vector<std::size_t>> rows_;
    std::vector<std::size_t> pivot_col_;
    std::vector<std::size_t> free_cols_;
    CModuleTable table_;
};

inline CModuleTable PresentedModuleTable::build(const FpModulePresentation& P, RingTablePtr ring,
                                                const Limits& lim, PresentedModuleTable& self) {
    const AlgebraPtr& B = P.ambient;
    if (B->base().kind != BaseKind::Fp)
        fail(ErrorCode::NonFiniteBase, "finite module tables require base Fp");
    const auto& qb = B->quotient_basis();
    if (!qb) fail(ErrorCode::InfiniteDimensional, "ambient algebra is not finite-dimensional");

    self.ambient_ = B;
    self.vars_ = B->vars_ptr();
    self.base_ = B->base();
    self.qb_ = *qb;
    self.p_ = B->base().p;
    self.d_ = qb->size();
    self.n_ = P.rank();

    std::size_t p = self.p_, d = self.d_, n = self.n_;
    std::size_t N = n * d;
    VarListPtr vars = self.vars_;
    ScalarKind base = self.base_;

    // relation span, reduced row echelon over F_p
    std::vector<std::vector<std::size_t>> rows;
    for (const auto& rel : P.relations)
        for (const auto& q : *qb)
            rows.push_back(self.to_vec(rel.mul_term(q, Scalar::one(base))));

    auto inv_mod = [&](std::size_t a) {
        return Scalar::fp(static_cast<std::uint32_t>(p), mpz_class(a)).inv().num().get_ui();
    };

    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < N && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        std::size_t inv = inv_mod(rows[r][c]);
        for (std::size_t j = c; j < N; ++j) rows[r][j] = (rows[r][j] * inv) % p;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            std::size_t f = rows[i][c];
            for (std::size_t j = c; j < N; ++j)
                rows[i][j] = self.modp(static_cast<long>(rows[i][j]) -
                                       static_cast<long>(f * rows[r][j]));
        }
        pivot_col.push_back(c);
        ++r;
    }
    rows.resize(r);

    std::vector<bool> is_pivot(N, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < N; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    self.rows_ = std::move(rows);
    self.pivot_col_ = std::move(pivot_col);
    self.free_cols_ = std::move(free_cols);

    std::size_t dim = self.free_cols_.size();
    double approx = 1;
    for (std::size_t i = 0; i < dim; ++i) approx *= static_cast<double>(p);
    if (approx > 1e5) fail(ErrorCode::ResourceLimit, "module table too large");
    std::size_t msize = 1;
    for (std::size_t i = 0; i < dim; ++i) msize *= p;

    auto decode = [&](std::size_t idx) {
        std::vector<std::size_t> v(N, 0);
        for (std::size_t fc : self.free_cols_) {
            v[fc] = idx % p;
            idx /= p;
        }
        return v;
    };
    auto block_poly = [&](const std::vector<std::size_t>& v, std::size_t i) {
        Polynomial f = Polynomial::zero(vars, base);
        for (std::size_t t = 0; t < d; ++t)
            if (v[i * d + t])
                f = f + Polynomial::term(vars, (*qb)[t],
                                         Scalar::fp(static_cast<std::uint32_t>(p),
                                                    mpz_class(v[i * d + t])));
        return f;
    };

    std::vector<std::size_t> add(msize * msize);
    for (std::size_t a = 0; a < msize; ++a) {
        std::vector<std::size_t> va = decode(a);
        for (std::size_t b = 0; b < msize; ++b) {
            std::vector<std::size_t> vb = decode(b);
            std::vector<std::size_t> s(N);
            for (std::size_t j = 0; j < N; ++j) s[j] = (va[j] + vb[j]) % p;
            add[a * msize + b] = self.encode(s);  // sum of canonical reps is canonical
        }
    }

    // action of a table element: polynomial multiplication blockwise, then reduce
    std::size_t ringsize = ring->size();
    auto ring_poly = [&](std::size_t c) {
        Polynomial f = Polynomial::zero(vars, base);
        for (std::size_t t = 0; t < d; ++t) {
            std::size_t coef = c % p;
            c /= p;
            if (coef)
                f = f + Polynomial::term(vars, (*qb)[t],
                                         Scalar::fp(static_cast<std::uint32_t>(p), mpz_class(coef)));
        }
        return f;
    };
    std::vector<std::size_t> act(ringsize * msize);
    for (std::size_t c = 0; c < ringsize; ++c) {
        Polynomial bc = ring_poly(c);
        for (std::size_t a = 0; a < msize; ++a) {
            std::vector<std::size_t> va = decode(a);
            std::vector<Polynomial> coords;
            for (std::size_t i = 0; i < n; ++i) coords.push_back(B->reduce(block_poly(va, i) * bc, lim));
            act[c * msize + a] = self.index_of(FreeModuleElement(coords));
        }
    }

    std::vector<std::string> labels(msize);
    for (std::size_t a = 0; a < msize; ++a) {
        std::vector<std::size_t> va = decode(a);
        std::string lbl;
        for (std::size_t i = 0; i < n; ++i) {
            Polynomial f = block_poly(va, i);
            if (f.is_zero()) continue;
            if (!lbl.empty()) lbl += " + ";
            lbl += "(" + f.str() + ")*" + P.generators[i];
        }
        labels[a] = lbl.empty() ? "0" : lbl;
    }

    return CModuleTable::create(std::move(ring), msize, std::move(add), 0, std::move(act),
                                std::move(labels));
}

}  // namespace beckdiff
