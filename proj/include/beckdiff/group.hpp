#pragma once

#include <memory>
#include <string>
#include <vector>

#include "beckdiff/error.hpp"

namespace beckdiff {

/* A finite group as a Cayley table. Associativity, identity and inverse laws
 * are verified exhaustively at construction; failures carry a witness. */
class FiniteGroupTable {
  public:
    static std::shared_ptr<const FiniteGroupTable> create(std::size_t size,
                                                          std::vector<std::size_t> mul,
                                                          std::size_t identity,
                                                          std::vector<std::string> labels = {}) {
        auto g = std::shared_ptr<FiniteGroupTable>(new FiniteGroupTable());
        g->size_ = size;
        g->mul_ = std::move(mul);
        g->identity_ = identity;
        g->labels_ = std::move(labels);
        g->verify();
        return g;
    }

    std::size_t size() const { return size_; }
    std::size_t identity() const { return identity_; }
    std::size_t mul(std::size_t a, std::size_t b) const { return mul_[a * size_ + b]; }
    std::size_t inv(std::size_t a) const { return inverse_[a]; }
    const std::vector<std::size_t>& mul_table() const { return mul_; }

    std::size_t element_order(std::size_t a) const {
        std::size_t k = 1, acc = a;
        while (acc != identity_) {
            acc = mul(acc, a);
            ++k;
        }
        return k;
    }

    bool is_abelian() const {
        for (std::size_t a = 0; a < size_; ++a)
            for (std::size_t b = a + 1; b < size_; ++b)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

    std::string label(std::size_t i) const {
        if (i < labels_.size() && !labels_[i].empty()) return labels_[i];
        return "#" + std::to_string(i);
    }
    const std::vector<std::string>& labels() const { return labels_; }

  private:
    FiniteGroupTable() = default;

    void verify() const {
        std::size_t n = size_;
        if (n == 0) fail(ErrorCode::InvalidInput, "empty group table");
        if (mul_.size() != n * n) fail(ErrorCode::ShapeMismatch, "Cayley table shape mismatch");
        for (std::size_t v : mul_)
            if (v >= n) fail(ErrorCode::InvalidInput, "Cayley table entry out of range");
        if (identity_ >= n) fail(ErrorCode::InvalidInput, "identity out of range");
        for (std::size_t a = 0; a < n; ++a)
            if (mul(identity_, a) != a || mul(a, identity_) != a)
                fail(ErrorCode::NoIdentity, "identity law fails at " + label(a));
        inverse_.assign(n, n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b)
                if (mul(a, b) == identity_ && mul(b, a) == identity_) inverse_[a] = b;
            if (inverse_[a] == n) fail(ErrorCode::NoInverse, "no inverse for " + label(a));
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        fail(ErrorCode::NotAssociative,
                             "(" + label(a) + " * " + label(b) + ") * " + label(c) +
                                 " != " + label(a) + " * (" + label(b) + " * " + label(c) + ")");
    }

    std::size_t size_ = 0;
    std::vector<std::size_t> mul_;
    std::size_t identity_ = 0;
    std::vector<std::string> labels_;
    mutable std::vector<std::size_t> inverse_;
};

using GroupTablePtr = std::shared_ptr<const FiniteGroupTable>;

inline GroupTablePtr validate_group(std::size_t size, std::vector<std::size_t> mul,
                                    std::size_t identity, std::vector<std::string> labels = {}) {
    return FiniteGroupTable::create(size, std::move(mul), identity, std::move(labels));
}

inline GroupTablePtr make_cyclic_group(std::size_t n) {
    std::vector<std::size_t> mul(n * n);
    std::vector<std::string> labels(n);
    for (std::size_t a = 0; a < n; ++a) {
        labels[a] = std::to_string(a);
        for (std::size_t b = 0; b < n; ++b) mul[a * n + b] = (a + b) % n;
    }
    return FiniteGroupTable::create(n, std::move(mul), 0, std::move(labels));
}

/* Direct product of two group tables, indexed a * |B| + b. */
inline GroupTablePtr make_product_group(const GroupTablePtr& A, const GroupTablePtr& B) {
    std::size_t na = A->size(), nb = B->size(), n = na * nb;
    std::vector<std::size_t> mul(n * n);
    std::vector<std::string> labels(n);
    auto idx = [&](std::size_t a, std::size_t b) { return a * nb + b; };
    for (std::size_t a1 = 0; a1 < na; ++a1)
        for (std::size_t b1 = 0; b1 < nb; ++b1) {
            labels[idx(a1, b1)] = "(" + A->label(a1) + "," + B->label(b1) + ")";
            for (std::size_t a2 = 0; a2 < na; ++a2)
                for (std::size_t b2 = 0; b2 < nb; ++b2)
                    mul[idx(a1, b1) * n + idx(a2, b2)] = idx(A->mul(a1, a2), B->mul(b1, b2));
        }
    return FiniteGroupTable::create(n, std::move(mul), idx(A->identity(), B->identity()),
                                    std::move(labels));
}

/* A verified group homomorphism between tables. */
struct GroupHom {
    GroupTablePtr domain;
    GroupTablePtr codomain;
    std::vector<std::size_t> map;

    std::size_t operator()(std::size_t a) const { return map[a]; }
};

inline GroupHom verify_group_hom(GroupTablePtr domain, GroupTablePtr codomain,
                                 std::vector<std::size_t> map) {
    const auto& H = *domain;
    const auto& E = *codomain;
    if (map.size() != H.size()) fail(ErrorCode::ShapeMismatch, "map length differs from domain");
    for (std::size_t v : map)
        if (v >= E.size()) fail(ErrorCode::InvalidInput, "map entry out of range");
    for (std::size_t a = 0; a < H.size(); ++a)
        for (std::size_t b = 0; b < H.size(); ++b)
            if (map[H.mul(a, b)] != E.mul(map[a], map[b]))
                fail(ErrorCode::NotAGroupHom,
                     "multiplication not preserved at (" + H.label(a) + ", " + H.label(b) + ")");
    return GroupHom{std::move(domain), std::move(codomain), std::move(map)};
}

inline bool is_surjective(const GroupHom& q) {
    std::vector<bool> hit(q.codomain->size(), false);
    for (std::size_t v : q.map) hit[v] = true;
    for (bool h : hit)
        if (!h) return false;
    return true;
}

}  // namespace beckdiff
