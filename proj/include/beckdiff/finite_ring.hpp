#pragma once

#include <memory>
#include <string>
#include <vector>

#include "beckdiff/algebra.hpp"

namespace beckdiff {

/* A finite commutative ring with identity given by explicit addition and
 * multiplication tables, together with its A-algebra structure: for base Fp
 * an explicit residue map, for base Z the canonical map n -> n*1. Every axiom
 * is checked exhaustively at construction; instances are immutable. */
class FiniteRingTable {
  public:
    static std::shared_ptr<const FiniteRingTable> create(std::size_t size,
                                                         std::vector<std::size_t> add,
                                                         std::vector<std::size_t> mul,
                                                         std::size_t zero, std::size_t one,
                                                         ScalarKind base,
                                                         std::vector<std::size_t> scalar_images = {},
                                                         std::vector<std::string> labels = {}) {
        auto t = std::shared_ptr<FiniteRingTable>(new FiniteRingTable());
        t->size_ = size;
        t->add_ = std::move(add);
        t->mul_ = std::move(mul);
        t->zero_ = zero;
        t->one_ = one;
        t->base_ = base;
        t->scalar_images_ = std::move(scalar_images);
        t->labels_ = std::move(labels);
        t->verify();
        return t;
    }

    std::size_t size() const { return size_; }
    std::size_t zero() const { return zero_; }
    std::size_t one() const { return one_; }
    const ScalarKind& base() const { return base_; }

    std::size_t add(std::size_t a, std::size_t b) const { return add_[a * size_ + b]; }
    std::size_t mul(std::size_t a, std::size_t b) const { return mul_[a * size_ + b]; }
    std::size_t neg(std::size_t a) const { return neg_[a]; }
    std::size_t sub(std::size_t a, std::size_t b) const { return add(a, neg(b)); }

    const std::vector<std::size_t>& add_table() const { return add_; }
    const std::vector<std::size_t>& mul_table() const { return mul_; }
    const std::vector<std::size_t>& scalar_images() const { return scalar_images_; }

    std::size_t pow(std::size_t a, std::uint64_t n) const {
        std::size_t r = one_;
        while (n > 0) {
            if (n & 1) r = mul(r, a);
            a = mul(a, a);
            n >>= 1;
        }
        return r;
    }

    /* n * a for an arbitrary-precision integer n. */
    std::size_t int_multiple(const mpz_class& n, std::size_t a) const {
        std::size_t acc = zero_;
        std::size_t base_el = (n < 0) ? neg(a) : a;
        mpz_class m = abs(n);
        // double-and-add over the additive group
        std::size_t doubling = base_el;
        for (std::size_t bit = 0; bit < mpz_sizeinbase(m.get_mpz_t(), 2); ++bit) {
            if (mpz_tstbit(m.get_mpz_t(), bit)) acc = add(acc, doubling);
            doubling = add(doubling, doubling);
        }
        return acc;
    }

    /* The structure map A -> D on an exact scalar of the table's base kind. */
    std::size_t scalar_image(const Scalar& s) const {
        if (!(s.kind() == base_))
            fail(ErrorCode::MixedContext,
                 "scalar of kind " + s.kind().str() + " into table over " + base_.str());
        switch (base_.kind) {
            case BaseKind::Fp:
                return scalar_images_[s.num().get_ui()];
            case BaseKind::Int:
                return int_multiple(s.num(), one_);
            case BaseKind::Rat:
                break;
        }
        fail(ErrorCode::NonFiniteBase, "no scalar map into a finite table over Q");
    }

    std::string label(std::size_t i) const {
        if (i < labels_.size() && !labels_[i].empty()) return labels_[i];
        return "#" + std::to_string(i);
    }
    const std::vector<std::string>& labels() const { return labels_; }

  private:
    FiniteRingTable() = default;

    void verify() const {
        std::size_t n = size_;
        if (n == 0) fail(ErrorCode::InvalidInput, "empty ring table");
        if (base_.kind == BaseKind::Rat)
            fail(ErrorCode::NonFiniteBase, "finite tables over Q are not supported");
        if (add_.size() != n * n || mul_.size() != n * n)
            fail(ErrorCode::ShapeMismatch, "table shape mismatch");
        for (std::size_t v : add_)
            if (v >= n) fail(ErrorCode::InvalidInput, "addition table entry out of range");
        for (std::size_t v : mul_)
            if (v >= n) fail(ErrorCode::InvalidInput, "multiplication table entry out of range");
        if (zero_ >= n || one_ >= n) fail(ErrorCode::InvalidInput, "zero/one out of range");

        auto at = [&](const std::vector<std::size_t>& t, std::size_t a, std::size_t b) {
            return t[a * n + b];
        };

        // additive abelian group
        neg_.assign(n, n);
        for (std::size_t a = 0; a < n; ++a) {
            if (at(add_, zero_, a) != a)
                fail(ErrorCode::NotAModule, "zero is not an additive identity");
            for (std::size_t b = 0; b < n; ++b) {
                if (at(add_, a, b) != at(add_, b, a))
                    fail(ErrorCode::NotAModule, "addition is not commutative");
                if (at(add_, a, b) == zero_) neg_[a] = b;
            }
            if (neg_[a] == n) fail(ErrorCode::NotAModule, "element without additive inverse");
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (at(add_, at(add_, a, b), c) != at(add_, a, at(add_, b, c)))
                        fail(ErrorCode::NotAModule, "addition is not associative");

        // commutative unital multiplication, distributivity
        for (std::size_t a = 0; a < n; ++a) {
            if (at(mul_, one_, a) != a) fail(ErrorCode::NotARingHom, "one is not a unit element");
            for (std::size_t b = 0; b < n; ++b)
                if (at(mul_, a, b) != at(mul_, b, a))
                    fail(ErrorCode::NotARingHom, "multiplication is not commutative");
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) {
                    if (at(mul_, at(mul_, a, b), c) != at(mul_, a, at(mul_, b, c)))
                        fail(ErrorCode::NotARingHom, "multiplication is not associative");
                    if (at(mul_, a, at(add_, b, c)) != at(add_, at(mul_, a, b), at(mul_, a, c)))
                        fail(ErrorCode::NotARingHom, "distributivity fails");
                }

        // scalar structure
        if (base_.kind == BaseKind::Fp) {
            std::size_t p = base_.p;
            if (scalar_images_.size() != p)
                fail(ErrorCode::ShapeMismatch, "scalar map must list all residues mod p");
            for (std::size_t v : scalar_images_)
                if (v >= n) fail(ErrorCode::InvalidInput, "scalar map entry out of range");
            if (scalar_images_[0] != zero_ || scalar_images_[1 % p] != one_)
                fail(ErrorCode::NotARingHom, "scalar map does not preserve 0/1");
            for (std::size_t a = 0; a < p; ++a)
                for (std::size_t b = 0; b < p; ++b) {
                    if (at(add_, scalar_images_[a], scalar_images_[b]) !=
                        scalar_images_[(a + b) % p])
                        fail(ErrorCode::NotARingHom, "scalar map is not additive");
                    if (at(mul_, scalar_images_[a], scalar_images_[b]) !=
                        scalar_images_[(a * b) % p])
                        fail(ErrorCode::NotARingHom, "scalar map is not multiplicative");
                }
        } else if (!scalar_images_.empty()) {
            fail(ErrorCode::InvalidInput, "scalar map only applies to Fp tables");
        }
    }

    std::size_t size_ = 0;
    std::vector<std::size_t> add_, mul_;
    std::size_t zero_ = 0, one_ = 0;
    ScalarKind base_ = ScalarKind::integers();
    std::vector<std::size_t> scalar_images_;
    std::vector<std::string> labels_;
    mutable std::vector<std::size_t> neg_;
};

using RingTablePtr = std::shared_ptr<const FiniteRingTable>;

/* Z/n with the evident tables. */
inline RingTablePtr make_zmod_table(std::size_t n) {
    std::vector<std::size_t> add(n * n), mul(n * n);
    std::vector<std::string> labels(n);
    for (std::size_t a = 0; a < n; ++a) {
        labels[a] = std::to_string(a);
        for (std::size_t b = 0; b < n; ++b) {
            add[a * n + b] = (a + b) % n;
            mul[a * n + b] = (a * b) % n;
        }
    }
    return FiniteRingTable::create(n, std::move(add), std::move(mul), 0, 1 % n,
                                   ScalarKind::integers(), {}, std::move(labels));
}

/* Evaluate a polynomial inside a table under a generator assignment. */
inline std::size_t eval_poly_in_table(const Polynomial& f, const FiniteRingTable& D,
                                      const std::vector<std::size_t>& images) {
    if (f.nvars() != images.size()) fail(ErrorCode::ShapeMismatch, "assignment length mismatch");
    std::size_t acc = D.zero();
    for (const auto& [m, c] : f.terms()) {
        std::size_t term = (f.base().kind == BaseKind::Int) ? D.int_multiple(c.num(), D.one())
                                                            : D.scalar_image(c);
        for (std::size_t i = 0; i < images.size(); ++i)
            if (m.exp(i) > 0) term = D.mul(term, D.pow(images[i], m.exp(i)));
        acc = D.add(acc, term);
    }
    return acc;
}

/* Finite multiplication table of a zero-dimensional quotient over Fp.
 * Elements are coefficient vectors over the standard-monomial basis, indexed
 * little-endian base p in basis listing order. */
inline RingTablePtr to_finite_table(const AlgebraPtr& B, const Limits& lim = Limits{}) {
    if (B->base().kind != BaseKind::Fp)
        fail(ErrorCode::NonFiniteBase, "finite tables require base Fp, got " + B->base().str());
    const auto& qb = B->quotient_basis();
    if (!qb) fail(ErrorCode::InfiniteDimensional, B->str() + " has an infinite quotient basis");

    std::size_t p = B->base().p;
    std::size_t d = qb->size();
    double approx = 1;
    for (std::size_t i = 0; i < d; ++i) approx *= static_cast<double>(p);
    if (approx > 1e6) fail(ErrorCode::ResourceLimit, "table would have more than 10^6 elements");
    std::size_t n = 1;
    for (std::size_t i = 0; i < d; ++i) n *= p;

    VarListPtr vars = B->vars_ptr();
    ScalarKind base = B->base();

    auto decode = [&](std::size_t idx) {
        std::vector<std::size_t> c(d);
        for (std::size_t i = 0; i < d; ++i) {
            c[i] = idx % p;
            idx /= p;
        }
        return c;
    };
    auto encode_poly = [&](const Polynomial& f) {
        std::size_t idx = 0, weight = 1;
        for (std::size_t i = 0; i < d; ++i) {
            Scalar c = f.coeff((*qb)[i]);
            idx += c.num().get_ui() * weight;
            weight *= p;
        }
        return idx;
    };
    auto to_poly = [&](std::size_t idx) {
        Polynomial f = Polynomial::zero(vars, base);
        std::vector<std::size_t> c = decode(idx);
        for (std::size_t i = 0; i < d; ++i)
            if (c[i])
                f = f + Polynomial::term(vars, (*qb)[i],
                                         Scalar::fp(static_cast<std::uint32_t>(p), mpz_class(c[i])));
        return f;
    };

    // products of basis monomials, reduced and re-expanded over the basis
    std::vector<std::vector<std::vector<std::size_t>>> basis_mul(
        d, std::vector<std::vector<std::size_t>>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Polynomial prod =
                B->reduce(Polynomial::term(vars, (*qb)[i] * (*qb)[j], Scalar::one(base)), lim);
            std::vector<std::size_t> c(d, 0);
            for (const auto& [m, s] : prod.terms()) {
                bool found = false;
                for (std::size_t k = 0; k < d; ++k)
                    if ((*qb)[k] == m) {
                        c[k] = s.num().get_ui();
                        found = true;
                        break;
                    }
                if (!found)
                    fail(ErrorCode::InvalidInput, "internal: reduced product left the basis span");
            }
            basis_mul[i][j] = std::move(c);
        }

    std::vector<std::size_t> add(n * n), mul(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<std::size_t> ca = decode(a);
        for (std::size_t b = 0; b < n; ++b) {
            std::vector<std::size_t> cb = decode(b);
            std::size_t idx = 0, weight = 1;
            for (std::size_t i = 0; i < d; ++i) {
                idx += ((ca[i] + cb[i]) % p) * weight;
                weight *= p;
            }
            add[a * n + b] = idx;
            std::vector<std::size_t> cm(d, 0);
            for (std::size_t i = 0; i < d; ++i) {
                if (ca[i] == 0) continue;
                for (std::size_t j = 0; j < d; ++j) {
                    if (cb[j] == 0) continue;
                    std::size_t coef = (ca[i] * cb[j]) % p;
                    for (std::size_t k = 0; k < d; ++k)
                        cm[k] = (cm[k] + coef * basis_mul[i][j][k]) % p;
                }
            }
            std::size_t idxm = 0;
            weight = 1;
            for (std::size_t k = 0; k < d; ++k) {
                idxm += cm[k] * weight;
                weight *= p;
            }
            mul[a * n + b] = idxm;
        }
    }

    std::size_t one = encode_poly(B->reduce(Polynomial::one(vars, base), lim));
    std::vector<std::size_t> scalar_images(p);
    for (std::size_t r = 0; r < p; ++r)
        scalar_images[r] = encode_poly(
            B->reduce(Polynomial::constant(vars, Scalar::fp(static_cast<std::uint32_t>(p),
                                                            mpz_class(r))),
                      lim));
    std::vector<std::string> labels(n);
    for (std::size_t a = 0; a < n; ++a) labels[a] = to_poly(a).str();

    return FiniteRingTable::create(n, std::move(add), std::move(mul), 0, one, base,
                                   std::move(scalar_images), std::move(labels));
}

/* Index of the class of f in the finite table of B: little-endian base-p
 * coefficients over the standard monomials, matching to_finite_table. */
inline std::size_t table_index_of(const AlgebraPtr& B, const Polynomial& f,
                                  const Limits& lim = Limits{}) {
    const auto& qb = B->quotient_basis();
    if (!qb) fail(ErrorCode::InfiniteDimensional, "no finite table for " + B->str());
    std::size_t p = B->base().p;
    Polynomial nf = B->reduce(f, lim);
    std::size_t idx = 0, weight = 1;
    for (const auto& m : *qb) {
        idx += nf.coeff(m).num().get_ui() * weight;
        weight *= p;
    }
    return idx;
}

/* A verified ring homomorphism between tables, stored pointwise. */
struct TableHom {
    RingTablePtr domain;
    RingTablePtr codomain;
    std::vector<std::size_t> map;

    std::size_t operator()(std::size_t a) const { return map[a]; }
};

inline TableHom verify_table_hom(RingTablePtr domain, RingTablePtr codomain,
                                 std::vector<std::size_t> map) {
    const auto& D = *domain;
    const auto& C = *codomain;
    if (map.size() != D.size()) fail(ErrorCode::ShapeMismatch, "map length differs from domain size");
    for (std::size_t v : map)
        if (v >= C.size()) fail(ErrorCode::InvalidInput, "map entry out of range");
    if (!(D.base() == C.base()))
        fail(ErrorCode::MixedContext,
             "tables have different base kinds: " + D.base().str() + " vs " + C.base().str());
    if (map[D.one()] != C.one()) fail(ErrorCode::NotARingHom, "one is not preserved");
    for (std::size_t a = 0; a < D.size(); ++a)
        for (std::size_t b = 0; b < D.size(); ++b) {
            if (map[D.add(a, b)] != C.add(map[a], map[b]))
                fail(ErrorCode::NotARingHom, "addition not preserved at (" + D.label(a) + ", " +
                                                 D.label(b) + ")");
            if (map[D.mul(a, b)] != C.mul(map[a], map[b]))
                fail(ErrorCode::NotARingHom, "multiplication not preserved at (" + D.label(a) +
                                                 ", " + D.label(b) + ")");
        }
    if (D.base().kind == BaseKind::Fp) {
        for (std::size_t r = 0; r < D.base().p; ++r)
            if (map[D.scalar_images()[r]] != C.scalar_images()[r])
                fail(ErrorCode::NotARingHom, "scalar structure not preserved");
    }
    return TableHom{std::move(domain), std::move(codomain), std::move(map)};
}

inline bool is_surjective(const TableHom& q) {
    std::vector<bool> hit(q.codomain->size(), false);
    for (std::size_t v : q.map) hit[v] = true;
    for (bool h : hit)
        if (!h) return false;
    return true;
}

}  // namespace beckdiff
